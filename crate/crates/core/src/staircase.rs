//! Staircase chain complexes of L-space knots.
//!
//! The gap sequence a1, ..., a2n walks a monotone stair path on the lattice:
//! start at (0, g), go right a1, down a2, and so on until (g, 0), where g is
//! the genus (half the gap sum). Generators sit at the turning vertices;
//! vertices at even path positions carry grading 0, odd positions grading 1,
//! and each grading-1 generator has one horizontal and one vertical
//! differential arrow to its two neighbors.
//!
//! A generator at (x, y) carries the filtration line 2x + (y - x) t, a
//! function of the parameter t in [0, 2]. Both coordinate weights t and
//! 2 - t are non-negative there, so arrows never increase the filtration
//! level.

use crate::alexander::GapSequence;
use crate::rational::{rat_int, Rat};
use num_bigint::BigInt;

/// One generator of a staircase complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    /// Position along the stair path, 0..=2n.
    pub index: usize,
    pub x: i64,
    pub y: i64,
    /// 0 or 1; the differential maps grading 1 to grading 0.
    pub grading: u8,
}

/// A differential arrow from a grading-1 generator to a grading-0 one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StaircaseComplex {
    pub generators: Vec<Generator>,
    pub arrows: Vec<Arrow>,
}

/// An affine function of t: value = intercept + slope * t.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineFunction {
    pub slope: Rat,
    pub intercept: Rat,
}

impl AffineFunction {
    pub fn new(slope: Rat, intercept: Rat) -> Self {
        Self { slope, intercept }
    }

    pub fn from_ints(slope: i64, intercept: i64) -> Self {
        Self::new(rat_int(slope), rat_int(intercept))
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        &self.intercept + &self.slope * t
    }

    /// The crossing parameter of two non-parallel lines.
    pub fn intersect(&self, other: &Self) -> Option<Rat> {
        if self.slope == other.slope {
            return None;
        }
        Some((&other.intercept - &self.intercept) / (&self.slope - &other.slope))
    }

    /// Difference self - other, again affine.
    pub fn sub(&self, other: &Self) -> Self {
        Self::new(
            &self.slope - &other.slope,
            &self.intercept - &other.intercept,
        )
    }
}

/// The filtration level of a generator at (x, y) as a function of t:
/// t y + (2 - t) x = 2x + (y - x) t.
pub fn filtration_line(gen: &Generator) -> AffineFunction {
    AffineFunction::from_ints(gen.y - gen.x, 2 * gen.x)
}

impl StaircaseComplex {
    pub fn genus(&self) -> i64 {
        self.generators.first().map_or(0, |g| g.y)
    }

    /// Number of grading-1 generators (= number of finite bars at any t).
    pub fn grading1_count(&self) -> usize {
        self.generators.len() / 2
    }

    /// Targets of each generator's differential, indexed by generator.
    pub(crate) fn targets_by_source(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.generators.len()];
        for a in &self.arrows {
            out[a.source].push(a.target);
        }
        out
    }

    /// The filtration numerator 2 x b + (y - x) a at t = a/b, as a big
    /// integer. All generators share the denominator b, so these order the
    /// generators exactly as their filtration values do.
    pub(crate) fn filtration_numerator(&self, idx: usize, t_num: &BigInt, t_den: &BigInt) -> BigInt {
        let g = &self.generators[idx];
        BigInt::from(2 * g.x) * t_den + BigInt::from(g.y - g.x) * t_num
    }
}

/// Builds the staircase complex of a gap sequence. The empty sequence gives
/// the unknot: a single generator at (0, 0) and no arrows.
pub fn staircase_from_gaps(gaps: &GapSequence) -> StaircaseComplex {
    let g = gaps.genus() as i64;
    let (mut x, mut y) = (0i64, g);
    let mut generators = vec![Generator {
        index: 0,
        x,
        y,
        grading: 0,
    }];
    for (i, &gap) in gaps.as_slice().iter().enumerate() {
        if i.is_multiple_of(2) {
            x += gap as i64;
        } else {
            y -= gap as i64;
        }
        generators.push(Generator {
            index: i + 1,
            x,
            y,
            grading: ((i + 1) % 2) as u8,
        });
    }
    let mut arrows = Vec::new();
    for j in (1..generators.len()).step_by(2) {
        arrows.push(Arrow {
            source: j,
            target: j - 1,
        });
        arrows.push(Arrow {
            source: j,
            target: j + 1,
        });
    }
    StaircaseComplex { generators, arrows }
}

/// Checks every structural invariant of a staircase complex; returns the
/// list of violations (empty means valid).
pub fn validate_staircase(c: &StaircaseComplex) -> Vec<String> {
    let mut violations = Vec::new();
    let n_gens = c.generators.len();
    if n_gens == 0 {
        return vec!["complex has no generators".to_string()];
    }
    if n_gens.is_multiple_of(2) {
        violations.push(format!("expected an odd number of generators, got {n_gens}"));
    }
    for (i, g) in c.generators.iter().enumerate() {
        if g.index != i {
            violations.push(format!("generator {i} stores index {}", g.index));
        }
        if g.grading as usize != i % 2 {
            violations.push(format!("generator {i} has grading {}", g.grading));
        }
    }

    let first = &c.generators[0];
    let last = &c.generators[n_gens - 1];
    let g = first.y;
    if first.x != 0 || last.y != 0 || last.x != g {
        violations.push(format!(
            "endpoints ({}, {}) and ({}, {}) do not span (0, g) to (g, 0)",
            first.x, first.y, last.x, last.y
        ));
    }

    let mut horizontal_total: i64 = 0;
    let mut vertical_total: i64 = 0;
    for w in c.generators.windows(2) {
        let (a, b) = (&w[0], &w[1]);
        let step_right = b.x - a.x;
        let step_down = a.y - b.y;
        if a.index % 2 == 0 {
            // odd step of the walk: strictly right
            if step_right <= 0 || step_down != 0 {
                violations.push(format!(
                    "step {} -> {} is not a rightward move",
                    a.index, b.index
                ));
            }
            horizontal_total += step_right;
        } else {
            if step_down <= 0 || step_right != 0 {
                violations.push(format!(
                    "step {} -> {} is not a downward move",
                    a.index, b.index
                ));
            }
            vertical_total += step_down;
        }
    }
    if horizontal_total != g || vertical_total != g {
        violations.push(format!(
            "horizontal steps sum to {horizontal_total} and vertical to {vertical_total}, expected genus {g}"
        ));
    }

    for gen in &c.generators {
        if gen.x < 0 || gen.x > g || gen.y < 0 || gen.y > g {
            violations.push(format!(
                "generator {} at ({}, {}) leaves the [0, g] box",
                gen.index, gen.x, gen.y
            ));
        }
    }

    // coordinate multiset must be symmetric along y = x
    let mut coords: Vec<(i64, i64)> = c.generators.iter().map(|g| (g.x, g.y)).collect();
    let mut swapped: Vec<(i64, i64)> = coords.iter().map(|&(x, y)| (y, x)).collect();
    coords.sort_unstable();
    swapped.sort_unstable();
    if coords != swapped {
        violations.push("coordinate multiset is not symmetric along y = x".to_string());
    }

    for a in &c.arrows {
        let (Some(src), Some(tgt)) = (c.generators.get(a.source), c.generators.get(a.target))
        else {
            violations.push(format!("arrow {} -> {} is out of range", a.source, a.target));
            continue;
        };
        if src.grading != 1 || tgt.grading != 0 {
            violations.push(format!(
                "arrow {} -> {} does not go from grading 1 to grading 0",
                a.source, a.target
            ));
        }
        let dx = src.x - tgt.x;
        let dy = src.y - tgt.y;
        if dx < 0 || dy < 0 || (dx == 0) == (dy == 0) {
            violations.push(format!(
                "arrow {} -> {} must drop in exactly one coordinate",
                a.source, a.target
            ));
        }
    }
    for j in (1..n_gens).step_by(2) {
        let count = c.arrows.iter().filter(|a| a.source == j).count();
        if count != 2 {
            violations.push(format!("generator {j} has {count} arrows, expected 2"));
        }
    }
    violations
}

/// Validation specialized to the twisted torus family T(p, kp+1; 2, 1):
/// all base invariants plus the filtration differences of the first block,
/// where consecutive grading-0 generators must differ by exactly 2 - p t.
pub fn validate_twisted_staircase(c: &StaircaseComplex, p: u32, k: u32) -> Vec<String> {
    let mut violations = validate_staircase(c);
    let expected = AffineFunction::from_ints(-(p as i64), 2);
    for i in 1..=(k as usize) {
        if 2 * i >= c.generators.len() {
            violations.push(format!(
                "initial block expects at least {} generators",
                2 * k + 1
            ));
            break;
        }
        let diff = filtration_line(&c.generators[2 * i])
            .sub(&filtration_line(&c.generators[2 * i - 2]));
        if diff != expected {
            violations.push(format!(
                "initial-block filtration difference at index {} is not 2 - {}t",
                2 * i,
                p
            ));
        }
    }
    violations
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::expected_gap_pattern;
    use crate::rational::rat;

    fn gaps(v: &[u64]) -> GapSequence {
        GapSequence::new(v.to_vec()).unwrap()
    }

    #[test]
    fn trefoil_staircase() {
        let c = staircase_from_gaps(&gaps(&[1, 1]));
        let coords: Vec<(i64, i64)> = c.generators.iter().map(|g| (g.x, g.y)).collect();
        assert_eq!(coords, vec![(0, 1), (1, 1), (1, 0)]);
        assert_eq!(
            c.arrows,
            vec![
                Arrow {
                    source: 1,
                    target: 0
                },
                Arrow {
                    source: 1,
                    target: 2
                }
            ]
        );
        assert!(validate_staircase(&c).is_empty());
    }

    #[test]
    fn twisted_4_1_staircase() {
        let c = staircase_from_gaps(&expected_gap_pattern(4, 1).unwrap());
        assert_eq!(c.generators.len(), 11);
        assert_eq!((c.generators[0].x, c.generators[0].y), (0, 7));
        assert_eq!((c.generators[10].x, c.generators[10].y), (7, 0));
        assert_eq!((c.generators[1].x, c.generators[1].y), (1, 7));
        assert_eq!((c.generators[2].x, c.generators[2].y), (1, 4));
        assert!(validate_twisted_staircase(&c, 4, 1).is_empty());
    }

    #[test]
    fn unknot_staircase() {
        let c = staircase_from_gaps(&GapSequence::empty());
        assert_eq!(c.generators.len(), 1);
        assert_eq!((c.generators[0].x, c.generators[0].y), (0, 0));
        assert!(c.arrows.is_empty());
        assert!(validate_staircase(&c).is_empty());
    }

    #[test]
    fn filtration_lines() {
        let gen = |x, y| Generator {
            index: 0,
            x,
            y,
            grading: 0,
        };
        assert_eq!(filtration_line(&gen(0, 1)), AffineFunction::from_ints(1, 0));
        assert_eq!(filtration_line(&gen(1, 1)), AffineFunction::from_ints(0, 2));
        assert_eq!(
            filtration_line(&gen(1, 0)),
            AffineFunction::from_ints(-1, 2)
        );
    }

    #[test]
    fn affine_intersection() {
        let f = AffineFunction::from_ints(1, 0);
        let g = AffineFunction::from_ints(-1, 2);
        assert_eq!(f.intersect(&g), Some(rat_int(1)));
        assert_eq!(f.intersect(&f), None);
        assert_eq!(
            AffineFunction::from_ints(3, 0).intersect(&AffineFunction::from_ints(-1, 2)),
            Some(rat(1, 2))
        );
    }

    #[test]
    fn validate_catches_bad_endpoints() {
        let mut c = staircase_from_gaps(&gaps(&[2, 1, 1, 2]));
        assert!(validate_staircase(&c).is_empty());
        // break the last vertex
        c.generators.last_mut().unwrap().x = 2;
        let violations = validate_staircase(&c);
        assert!(violations.iter().any(|v| v.contains("endpoints")));
    }

    #[test]
    fn validate_catches_broken_arrows_and_gradings() {
        let mut c = staircase_from_gaps(&gaps(&[1, 1]));
        c.arrows[1] = Arrow {
            source: 1,
            target: 1,
        };
        let violations = validate_staircase(&c);
        assert!(violations.iter().any(|v| v.contains("grading")));

        let mut c = staircase_from_gaps(&gaps(&[1, 1]));
        c.generators[1].grading = 0;
        assert!(!validate_staircase(&c).is_empty());

        let mut c = staircase_from_gaps(&gaps(&[1, 2, 2, 1]));
        c.arrows.pop();
        let violations = validate_staircase(&c);
        assert!(violations.iter().any(|v| v.contains("expected 2")));

        // losing the symmetry of the coordinate multiset is a violation
        let mut c = staircase_from_gaps(&gaps(&[1, 2, 2, 1]));
        for g in &mut c.generators {
            g.y *= 2;
        }
        let violations = validate_staircase(&c);
        assert!(violations.iter().any(|v| v.contains("symmetric")));
    }

    #[test]
    fn validate_twisted_block_passes_for_family() {
        for (p, k) in [(2, 3), (3, 2), (5, 2), (6, 1)] {
            let c = staircase_from_gaps(&expected_gap_pattern(p, k).unwrap());
            assert!(
                validate_twisted_staircase(&c, p, k).is_empty(),
                "p={p}, k={k}"
            );
        }
    }

    #[test]
    fn arrows_respect_filtration_on_whole_interval() {
        // affine comparison on [0, 2] reduces to both endpoints
        let c = staircase_from_gaps(&expected_gap_pattern(5, 2).unwrap());
        for a in &c.arrows {
            let src = filtration_line(&c.generators[a.source]);
            let tgt = filtration_line(&c.generators[a.target]);
            for t in [rat_int(0), rat_int(2)] {
                assert!(tgt.eval(&t) <= src.eval(&t));
            }
        }
    }

    #[test]
    fn walk_reproduces_gaps() {
        let input = gaps(&[1, 3, 1, 1, 1, 1, 1, 1, 3, 1]);
        let c = staircase_from_gaps(&input);
        let mut recovered = Vec::new();
        for w in c.generators.windows(2) {
            let step = (w[1].x - w[0].x) + (w[0].y - w[1].y);
            recovered.push(step as u64);
        }
        assert_eq!(recovered, input.as_slice());
    }
}
