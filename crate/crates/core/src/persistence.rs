//! Filtered decomposition of a staircase complex at a fixed parameter.
//!
//! At a rational t in [0, 2] the filtration level orders the generators,
//! and column reduction of the boundary matrix over F2 in that order splits
//! the complex into one surviving generator and one (birth, death) pair per
//! grading-1 generator: the barcode of the sublevel filtration.
//!
//! [`barcode_by_ranks`] recomputes the same bar multiset from scratch by
//! brute-force sublevel homology ranks and inclusion-exclusion, without the
//! column reduction or its pairing. It exists solely to cross-check
//! [`barcode_at`] and must always agree with it.

use num_bigint::BigInt;
use num_traits::Signed;
use thiserror::Error;

use crate::gf2::{kernel_basis, rank, BitVec};
use crate::rational::{rat_int, Rat};
use crate::staircase::StaircaseComplex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PersistenceError {
    #[error("parameter t = {0} lies outside [0, 2]")]
    ParameterOutOfRange(Rat),
}

/// A finite persistence bar with the generators that open and close it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteBar {
    pub birth: Rat,
    pub death: Rat,
    pub birth_gen: usize,
    pub death_gen: usize,
}

impl FiniteBar {
    pub fn length(&self) -> Rat {
        &self.death - &self.birth
    }
}

/// The barcode at a fixed t: one finite bar per grading-1 generator plus a
/// single survivor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Barcode {
    pub finite_bars: Vec<FiniteBar>,
    pub survivor_gen: usize,
    pub survivor_birth: Rat,
}

impl Barcode {
    /// The (birth, death) multiset, sorted, for comparisons.
    pub fn value_multiset(&self) -> Vec<(Rat, Rat)> {
        let mut bars: Vec<(Rat, Rat)> = self
            .finite_bars
            .iter()
            .map(|b| (b.birth.clone(), b.death.clone()))
            .collect();
        bars.sort();
        bars
    }
}

/// Bars recovered from sublevel homology ranks alone, with no generator
/// attribution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValueBarcode {
    /// Sorted (birth, death) multiset of the finite bars.
    pub finite: Vec<(Rat, Rat)>,
    pub survivor_birth: Rat,
}

fn check_parameter(t: &Rat) -> Result<(), PersistenceError> {
    if t.is_negative() || *t > rat_int(2) {
        return Err(PersistenceError::ParameterOutOfRange(t.clone()));
    }
    Ok(())
}

/// Filtration numerators over the common denominator of t, so that integer
/// comparison orders generators by filtration level.
fn filtration_numerators(c: &StaircaseComplex, t: &Rat) -> (Vec<BigInt>, BigInt) {
    let t_num = t.numer();
    let t_den = t.denom();
    let nums = (0..c.generators.len())
        .map(|i| c.filtration_numerator(i, t_num, t_den))
        .collect();
    (nums, t_den.clone())
}

/// Computes the barcode at t by filtration-ordered column reduction.
///
/// Generators are ordered by (filtration level, index); equal levels can
/// occur at non-generic t and produce zero-length bars. The reduced lowest
/// entry of each grading-1 column pairs it with a grading-0 generator; the
/// one unpaired grading-0 generator survives.
pub fn barcode_at(c: &StaircaseComplex, t: &Rat) -> Result<Barcode, PersistenceError> {
    check_parameter(t)?;
    let n = c.generators.len();
    let (numerators, denom) = filtration_numerators(c, t);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| numerators[a].cmp(&numerators[b]).then(a.cmp(&b)));
    let mut position = vec![0usize; n];
    for (pos, &gen) in order.iter().enumerate() {
        position[gen] = pos;
    }

    let targets = c.targets_by_source();
    let mut columns: Vec<BitVec> = order
        .iter()
        .map(|&gen| {
            let mut col = BitVec::zeros(n);
            for &tgt in &targets[gen] {
                col.set(position[tgt]);
            }
            col
        })
        .collect();

    let fl_of_pos = |pos: usize| Rat::new(numerators[order[pos]].clone(), denom.clone());

    let mut pivot_col_of_row: Vec<Option<usize>> = vec![None; n];
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..n {
        while let Some(low) = columns[j].highest_set() {
            match pivot_col_of_row[low] {
                Some(j2) => {
                    let other = columns[j2].clone();
                    columns[j].xor_assign(&other);
                }
                None => {
                    pivot_col_of_row[low] = Some(j);
                    pairs.push((low, j));
                    break;
                }
            }
        }
    }

    let mut paired_as_birth = vec![false; n];
    let mut finite_bars = Vec::with_capacity(pairs.len());
    for (row, col) in pairs {
        let birth_gen = order[row];
        let death_gen = order[col];
        debug_assert_eq!(c.generators[birth_gen].grading, 0);
        debug_assert_eq!(c.generators[death_gen].grading, 1);
        paired_as_birth[row] = true;
        finite_bars.push(FiniteBar {
            birth: fl_of_pos(row),
            death: fl_of_pos(col),
            birth_gen,
            death_gen,
        });
    }
    assert_eq!(
        finite_bars.len(),
        c.grading1_count(),
        "every grading-1 generator must close a bar"
    );

    let mut survivors = (0..n)
        .filter(|&pos| c.generators[order[pos]].grading == 0 && !paired_as_birth[pos]);
    let survivor_pos = survivors.next().expect("one survivor");
    assert!(survivors.next().is_none(), "exactly one survivor");

    Ok(Barcode {
        survivor_gen: order[survivor_pos],
        survivor_birth: fl_of_pos(survivor_pos),
        finite_bars,
    })
}

/// Longest finite bar length; zero when there are no finite bars.
pub fn max_finite_bar(barcode: &Barcode) -> Rat {
    barcode
        .finite_bars
        .iter()
        .map(FiniteBar::length)
        .max()
        .unwrap_or_else(|| rat_int(0))
}

/// Recovers the bar multiset from sublevel homology ranks.
///
/// Let v1 < ... < vm be the distinct filtration values at t and F_a the
/// span of the generators with level <= v_a (a subcomplex, since arrows
/// never increase the level). With
/// rank(a, b) = rank of H(F_a) -> H(F_b) and beta_a = dim H(F_a):
///
/// * bars born at v_a dying at v_b > v_a number
///   rank(a, b-1) - rank(a, b) - rank(a-1, b-1) + rank(a-1, b);
/// * the generators entering at v_a split into births and deaths, so the
///   deaths at v_a number (count_a - beta_a + beta_(a-1)) / 2, and those
///   not accounted for by earlier births are zero-length bars at v_a;
/// * the survivor is born at the unique v_a with
///   rank(a, m) - rank(a-1, m) = 1.
pub fn barcode_by_ranks(c: &StaircaseComplex, t: &Rat) -> Result<ValueBarcode, PersistenceError> {
    check_parameter(t)?;
    let n = c.generators.len();
    let (numerators, denom) = filtration_numerators(c, t);

    let mut values: Vec<BigInt> = numerators.clone();
    values.sort();
    values.dedup();
    let m = values.len();
    let level_of = |gen: usize| values.binary_search(&numerators[gen]).expect("present");

    // generators grouped by level, cumulatively
    let mut at_level: Vec<Vec<usize>> = vec![Vec::new(); m];
    for gen in 0..n {
        at_level[level_of(gen)].push(gen);
    }
    let targets = c.targets_by_source();
    let boundary = |gen: usize| {
        let mut v = BitVec::zeros(n);
        for &tgt in &targets[gen] {
            v.set(tgt);
        }
        v
    };

    // cycle-space and boundary-space bases per level
    let mut cycle_bases: Vec<Vec<BitVec>> = Vec::with_capacity(m);
    let mut boundary_bases: Vec<Vec<BitVec>> = Vec::with_capacity(m);
    let mut members: Vec<usize> = Vec::new();
    for level_gens in &at_level {
        members.extend(level_gens.iter().copied());
        let images: Vec<BitVec> = members.iter().map(|&g| boundary(g)).collect();
        let kernel = kernel_basis(&images, n);
        let cycles = kernel
            .into_iter()
            .map(|combo| {
                let mut z = BitVec::zeros(n);
                for (j, &gen) in members.iter().enumerate() {
                    if combo.get(j) {
                        z.set(gen);
                    }
                }
                z
            })
            .collect();
        cycle_bases.push(cycles);
        boundary_bases.push(images.into_iter().filter(|v| !v.is_zero()).collect());
    }

    // rank(a, b) = dim(Z_a + B_b) - dim B_b
    let dim_boundary: Vec<usize> = boundary_bases
        .iter()
        .map(|basis| rank(basis.iter().cloned()))
        .collect();
    let rank_between = |a: usize, b: usize| -> i64 {
        let stacked = cycle_bases[a]
            .iter()
            .chain(boundary_bases[b].iter())
            .cloned();
        rank(stacked) as i64 - dim_boundary[b] as i64
    };
    let mut rank_table = vec![vec![0i64; m]; m];
    for (a, row) in rank_table.iter_mut().enumerate() {
        for (b, entry) in row.iter_mut().enumerate().skip(a) {
            *entry = rank_between(a, b);
        }
    }
    let rk = |a: i64, b: usize| -> i64 {
        if a < 0 {
            0
        } else {
            rank_table[a as usize][b]
        }
    };
    let beta = |a: i64| -> i64 { if a < 0 { 0 } else { rank_table[a as usize][a as usize] } };

    let value_at = |a: usize| Rat::new(values[a].clone(), denom.clone());
    let mut finite: Vec<(Rat, Rat)> = Vec::new();
    for (a, level_gens) in at_level.iter().enumerate() {
        let entering = level_gens.len() as i64;
        let deaths_here = entering - beta(a as i64) + beta(a as i64 - 1);
        assert!(deaths_here >= 0 && deaths_here % 2 == 0);
        let deaths_here = deaths_here / 2;
        let killed_older = beta(a as i64 - 1) - rk(a as i64 - 1, a);
        let zero_bars = deaths_here - killed_older;
        assert!(zero_bars >= 0, "death count below older-class kill count");
        for _ in 0..zero_bars {
            finite.push((value_at(a), value_at(a)));
        }
        for b in (a + 1)..m {
            let mult = rk(a as i64, b - 1) - rk(a as i64, b) - rk(a as i64 - 1, b - 1)
                + rk(a as i64 - 1, b);
            assert!(mult >= 0, "negative bar multiplicity");
            for _ in 0..mult {
                finite.push((value_at(a), value_at(b)));
            }
        }
    }
    finite.sort();

    let mut survivor_birth = None;
    for a in 0..m {
        let infinite_here = rk(a as i64, m - 1) - rk(a as i64 - 1, m - 1);
        if infinite_here > 0 {
            assert!(infinite_here == 1 && survivor_birth.is_none(), "one survivor");
            survivor_birth = Some(value_at(a));
        }
    }

    Ok(ValueBarcode {
        finite,
        survivor_birth: survivor_birth.expect("staircase homology has one generator"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alexander::{expected_gap_pattern, GapSequence, KnotSpec};
    use crate::rational::rat;
    use crate::rng::SplitMix64;
    use crate::staircase::staircase_from_gaps;

    fn staircase(v: &[u64]) -> StaircaseComplex {
        staircase_from_gaps(&GapSequence::new(v.to_vec()).unwrap())
    }

    #[test]
    fn trefoil_generic_parameter() {
        let c = staircase(&[1, 1]);
        let bc = barcode_at(&c, &rat(1, 2)).unwrap();
        assert_eq!(bc.survivor_gen, 0);
        assert_eq!(bc.survivor_birth, rat(1, 2));
        assert_eq!(bc.finite_bars.len(), 1);
        assert_eq!(bc.finite_bars[0].birth, rat(3, 2));
        assert_eq!(bc.finite_bars[0].death, rat_int(2));
        assert_eq!(max_finite_bar(&bc), rat(1, 2));
    }

    #[test]
    fn trefoil_tied_parameter() {
        // at t = 0 both non-minimal generators sit at level 2
        let c = staircase(&[1, 1]);
        let bc = barcode_at(&c, &rat_int(0)).unwrap();
        assert_eq!(bc.finite_bars.len(), 1);
        assert_eq!(bc.finite_bars[0].birth, rat_int(2));
        assert_eq!(bc.finite_bars[0].death, rat_int(2));
        assert_eq!(max_finite_bar(&bc), rat_int(0));
    }

    #[test]
    fn unknot_has_only_the_survivor() {
        let c = staircase_from_gaps(&GapSequence::empty());
        for t in [rat_int(0), rat(1, 3), rat_int(1), rat_int(2)] {
            let bc = barcode_at(&c, &t).unwrap();
            assert!(bc.finite_bars.is_empty());
            assert_eq!(bc.survivor_birth, rat_int(0));
            assert_eq!(max_finite_bar(&bc), rat_int(0));
            let vb = barcode_by_ranks(&c, &t).unwrap();
            assert!(vb.finite.is_empty());
            assert_eq!(vb.survivor_birth, rat_int(0));
        }
    }

    #[test]
    fn parameter_range_is_enforced() {
        let c = staircase(&[1, 1]);
        assert!(matches!(
            barcode_at(&c, &rat(-1, 2)),
            Err(PersistenceError::ParameterOutOfRange(_))
        ));
        assert!(matches!(
            barcode_by_ranks(&c, &rat(5, 2)),
            Err(PersistenceError::ParameterOutOfRange(_))
        ));
    }

    #[test]
    fn rank_oracle_trefoil() {
        let c = staircase(&[1, 1]);
        let vb = barcode_by_ranks(&c, &rat(1, 2)).unwrap();
        assert_eq!(vb.finite, vec![(rat(3, 2), rat_int(2))]);
        assert_eq!(vb.survivor_birth, rat(1, 2));
    }

    #[test]
    fn rank_oracle_matches_reduction_for_torus_3_4() {
        let gaps = KnotSpec::torus(3, 4).unwrap().gaps().unwrap();
        let c = staircase_from_gaps(&gaps);
        let t = rat_int(1);
        let bc = barcode_at(&c, &t).unwrap();
        let vb = barcode_by_ranks(&c, &t).unwrap();
        assert_eq!(bc.value_multiset(), vb.finite);
        assert_eq!(bc.survivor_birth, vb.survivor_birth);
    }

    #[test]
    fn twisted_6_1_longest_bar_at_one() {
        let c = staircase_from_gaps(&expected_gap_pattern(6, 1).unwrap());
        let bc = barcode_at(&c, &rat_int(1)).unwrap();
        assert_eq!(max_finite_bar(&bc), rat_int(2));
    }

    #[test]
    fn oracle_agreement_on_random_staircases() {
        let mut rng = SplitMix64::new(0xba2c0de5);
        for _ in 0..40 {
            let half: Vec<u64> = (0..rng.below(7)).map(|_| 1 + rng.below(5)).collect();
            let mut gaps = half.clone();
            gaps.extend(half.iter().rev());
            let c = staircase_from_gaps(&GapSequence::new(gaps).unwrap());
            for _ in 0..6 {
                let t = rng.rational_in_0_2(24);
                let bc = barcode_at(&c, &t).unwrap();
                let vb = barcode_by_ranks(&c, &t).unwrap();
                assert_eq!(bc.value_multiset(), vb.finite, "t={t}");
                assert_eq!(bc.survivor_birth, vb.survivor_birth, "t={t}");
            }
        }
    }

    #[test]
    fn bars_pair_distinct_generators() {
        let c = staircase_from_gaps(&expected_gap_pattern(5, 2).unwrap());
        let bc = barcode_at(&c, &rat(3, 7)).unwrap();
        let mut births: Vec<usize> = bc.finite_bars.iter().map(|b| b.birth_gen).collect();
        let mut deaths: Vec<usize> = bc.finite_bars.iter().map(|b| b.death_gen).collect();
        births.sort_unstable();
        births.dedup();
        deaths.sort_unstable();
        deaths.dedup();
        assert_eq!(births.len(), bc.finite_bars.len());
        assert_eq!(deaths.len(), bc.finite_bars.len());
        for b in &bc.finite_bars {
            assert_eq!(c.generators[b.birth_gen].grading, 0);
            assert_eq!(c.generators[b.death_gen].grading, 1);
            assert!(b.death >= b.birth);
        }
    }

    #[test]
    fn trefoil_longest_bar_is_min_of_t_and_2_minus_t() {
        let c = staircase(&[1, 1]);
        let mut rng = SplitMix64::new(99);
        for _ in 0..30 {
            let t = rng.rational_in_0_2(50);
            let bc = barcode_at(&c, &t).unwrap();
            let expected = std::cmp::min(t.clone(), rat_int(2) - &t);
            assert_eq!(max_finite_bar(&bc), expected, "t={t}");
        }
    }
}
