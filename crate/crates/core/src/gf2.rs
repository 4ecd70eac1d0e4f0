//! Dense bit-vector linear algebra over F2.

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct BitVec {
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len_bits: usize) -> Self {
        Self {
            words: vec![0; len_bits.div_ceil(64)],
        }
    }

    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        (self.words[i / 64] >> (i % 64)) & 1 == 1
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.words.len(), other.words.len());
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Index of the highest set bit.
    pub fn highest_set(&self) -> Option<usize> {
        for (w_idx, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(w_idx * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }
}

/// Rank of the span of the given vectors.
pub(crate) fn rank(vectors: impl IntoIterator<Item = BitVec>) -> usize {
    let mut basis: Vec<(usize, BitVec)> = Vec::new();
    for mut v in vectors {
        while let Some(h) = v.highest_set() {
            match basis.iter().find(|(pivot, _)| *pivot == h) {
                Some((_, b)) => v.xor_assign(&b.clone()),
                None => {
                    basis.push((h, v));
                    break;
                }
            }
        }
    }
    basis.len()
}

/// Basis of the kernel of the linear map with the given image columns,
/// expressed as coefficient vectors over the column index space.
pub(crate) fn kernel_basis(images: &[BitVec], image_bits: usize) -> Vec<BitVec> {
    let n = images.len();
    let mut pivot_owner: Vec<Option<usize>> = vec![None; image_bits];
    let mut reduced: Vec<(BitVec, BitVec)> = Vec::new(); // (image, combination)
    let mut kernel = Vec::new();
    for (i, image) in images.iter().enumerate() {
        let mut img = image.clone();
        let mut combo = BitVec::zeros(n);
        combo.set(i);
        while let Some(h) = img.highest_set() {
            match pivot_owner[h] {
                Some(j) => {
                    let (pi, pc) = &reduced[j];
                    img.xor_assign(&pi.clone());
                    combo.xor_assign(&pc.clone());
                }
                None => break,
            }
        }
        match img.highest_set() {
            None => kernel.push(combo),
            Some(h) => {
                pivot_owner[h] = Some(reduced.len());
                reduced.push((img, combo));
            }
        }
    }
    kernel
}
