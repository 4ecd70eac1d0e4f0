//! The Upsilon torsion function on [0, 2] and the torsion orders.
//!
//! The persistence pairing of a staircase is constant wherever the
//! filtration order of the generators is constant, so the parameter range
//! splits into cells at the finitely many t where two filtration lines
//! cross. On each cell the finite bars have affine lengths; the Upsilon
//! torsion function is their upper envelope, stitched across cells into one
//! exact piecewise linear function.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::alexander::GapSequence;
use crate::persistence::barcode_at;
use crate::rational::{is_integer, rat_int, Rat};
use crate::staircase::{filtration_line, AffineFunction, StaircaseComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum UpsilonError {
    #[error("adjacent cells disagree at t = {0}; the pairing broke continuity")]
    DiscontinuityDetected(Rat),
    #[error("the function does not vanish at t = 0")]
    NonzeroAtOrigin,
    #[error("initial slope {0} is not a non-negative integer")]
    NonIntegralInitialSlope(Rat),
}

/// A continuous piecewise linear function on [0, 2] in minimal form:
/// strictly increasing rational breakpoints from 0 to 2, no three
/// consecutive points collinear.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PiecewiseLinear {
    breakpoints: Vec<Rat>,
    values: Vec<Rat>,
}

impl PiecewiseLinear {
    /// Builds from breakpoint/value pairs, dropping collinear interior
    /// points. The points must have strictly increasing t spanning [0, 2].
    pub fn from_points(points: Vec<(Rat, Rat)>) -> Self {
        assert!(points.len() >= 2, "need at least the two endpoints");
        assert!(points[0].0.is_zero(), "domain must start at 0");
        assert_eq!(points[points.len() - 1].0, rat_int(2), "domain must end at 2");
        let mut kept: Vec<(Rat, Rat)> = Vec::with_capacity(points.len());
        for p in points {
            if let Some(last) = kept.last() {
                assert!(p.0 > last.0, "breakpoints must strictly increase");
            }
            while kept.len() >= 2 {
                let a = &kept[kept.len() - 2];
                let b = &kept[kept.len() - 1];
                // collinear iff (t_b - t_a)(v_p - v_a) == (t_p - t_a)(v_b - v_a)
                let lhs = (&b.0 - &a.0) * (&p.1 - &a.1);
                let rhs = (&p.0 - &a.0) * (&b.1 - &a.1);
                if lhs == rhs {
                    kept.pop();
                } else {
                    break;
                }
            }
            kept.push(p);
        }
        let (breakpoints, values) = kept.into_iter().unzip();
        Self {
            breakpoints,
            values,
        }
    }

    /// The zero function on [0, 2].
    pub fn zero() -> Self {
        Self::from_points(vec![(rat_int(0), rat_int(0)), (rat_int(2), rat_int(0))])
    }

    pub fn breakpoints(&self) -> &[Rat] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    /// Exact evaluation; t must lie in [0, 2].
    pub fn eval(&self, t: &Rat) -> Rat {
        assert!(
            !t.is_negative() && *t <= rat_int(2),
            "evaluation outside [0, 2]"
        );
        let i = match self.breakpoints.binary_search(t) {
            Ok(i) => return self.values[i].clone(),
            Err(i) => i - 1, // t > breakpoints[0] here
        };
        let (t0, t1) = (&self.breakpoints[i], &self.breakpoints[i + 1]);
        let (v0, v1) = (&self.values[i], &self.values[i + 1]);
        v0 + (v1 - v0) * (t - t0) / (t1 - t0)
    }

    /// Slope of the first segment (the right derivative at 0).
    pub fn first_slope(&self) -> Rat {
        (&self.values[1] - &self.values[0]) / (&self.breakpoints[1] - &self.breakpoints[0])
    }

    /// (slope, intercept) of each segment, left to right.
    pub fn segments(&self) -> Vec<(Rat, Rat)> {
        (0..self.breakpoints.len() - 1)
            .map(|i| {
                let slope = (&self.values[i + 1] - &self.values[i])
                    / (&self.breakpoints[i + 1] - &self.breakpoints[i]);
                let intercept = &self.values[i] - &slope * &self.breakpoints[i];
                (slope, intercept)
            })
            .collect()
    }

    /// The reflection t -> 2 - t, again in minimal form.
    pub fn mirrored(&self) -> Self {
        let points = self
            .breakpoints
            .iter()
            .zip(&self.values)
            .rev()
            .map(|(t, v)| (rat_int(2) - t, v.clone()))
            .collect();
        Self::from_points(points)
    }
}

/// The torsion orders read off an Upsilon torsion function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TorsionOrders {
    /// Initial slope of the function.
    pub ord: u64,
    /// Value at t = 1; an integer for genuine knots, but kept exact since
    /// the engine accepts arbitrary formal staircases.
    pub ord_prime: Rat,
}

impl TorsionOrders {
    pub fn ord_prime_is_integral(&self) -> bool {
        is_integer(&self.ord_prime)
    }
}

/// All t in (0, 2) where two distinct generators' filtration lines cross,
/// sorted and deduplicated. The persistence pairing is constant between
/// consecutive critical values.
pub fn critical_values(c: &StaircaseComplex) -> Vec<Rat> {
    let lines: Vec<AffineFunction> = c.generators.iter().map(filtration_line).collect();
    let mut cuts: BTreeSet<Rat> = BTreeSet::new();
    let two = rat_int(2);
    for i in 0..lines.len() {
        for j in (i + 1)..lines.len() {
            if let Some(t) = lines[i].intersect(&lines[j]) {
                if t.is_positive() && t < two {
                    cuts.insert(t);
                }
            }
        }
    }
    cuts.into_iter().collect()
}

/// Exact upper envelope of affine functions over [lo, hi].
///
/// Returns breakpoint/value pairs including both endpoints; interior
/// breakpoints are crossings of the input functions. Collinear points are
/// left for the caller to minimize.
pub fn upper_envelope(fns: &[AffineFunction], lo: &Rat, hi: &Rat) -> Vec<(Rat, Rat)> {
    assert!(!fns.is_empty(), "envelope of an empty family");
    assert!(lo < hi, "degenerate cell");

    // Per slope only the largest intercept can win.
    let mut reduced: Vec<AffineFunction> = Vec::new();
    let mut sorted: Vec<&AffineFunction> = fns.iter().collect();
    sorted.sort_by(|a, b| (&a.slope, &a.intercept).cmp(&(&b.slope, &b.intercept)));
    for f in sorted {
        match reduced.last_mut() {
            Some(last) if last.slope == f.slope => *last = f.clone(),
            _ => reduced.push(f.clone()),
        }
    }

    let mut cuts: BTreeSet<Rat> = BTreeSet::new();
    cuts.insert(lo.clone());
    cuts.insert(hi.clone());
    for i in 0..reduced.len() {
        for j in (i + 1)..reduced.len() {
            if let Some(t) = reduced[i].intersect(&reduced[j]) {
                if t > *lo && t < *hi {
                    cuts.insert(t);
                }
            }
        }
    }
    cuts.into_iter()
        .map(|t| {
            let v = reduced.iter().map(|f| f.eval(&t)).max().expect("nonempty");
            (t, v)
        })
        .collect()
}

/// Computes the Upsilon torsion function of a staircase complex.
///
/// The domain splits at the critical values; on each cell the barcode at
/// the midpoint gives the finite bars, whose affine lengths are enveloped
/// over the closed cell. Adjacent cells must agree at the junction, which
/// is asserted exactly.
pub fn upsilon_torsion(c: &StaircaseComplex) -> Result<PiecewiseLinear, UpsilonError> {
    if c.grading1_count() == 0 {
        return Ok(PiecewiseLinear::zero());
    }
    let lines: Vec<AffineFunction> = c.generators.iter().map(filtration_line).collect();

    let mut boundaries = vec![rat_int(0)];
    boundaries.extend(critical_values(c));
    boundaries.push(rat_int(2));

    let mut points: Vec<(Rat, Rat)> = Vec::new();
    let half = Rat::new(1.into(), 2.into());
    for cell in boundaries.windows(2) {
        let (lo, hi) = (&cell[0], &cell[1]);
        let mid = (lo + hi) * &half;
        let barcode = barcode_at(c, &mid).expect("midpoint lies in [0, 2]");
        let bar_lengths: Vec<AffineFunction> = barcode
            .finite_bars
            .iter()
            .map(|bar| lines[bar.death_gen].sub(&lines[bar.birth_gen]))
            .collect();
        let env = upper_envelope(&bar_lengths, lo, hi);
        match points.last() {
            None => points.extend(env),
            Some(last) => {
                let first = &env[0];
                debug_assert_eq!(first.0, last.0);
                if first.1 != last.1 {
                    return Err(UpsilonError::DiscontinuityDetected(first.0.clone()));
                }
                points.extend(env.into_iter().skip(1));
            }
        }
    }
    Ok(PiecewiseLinear::from_points(points))
}

/// Reads Ord (initial slope) and Ord' (value at 1) off an Upsilon torsion
/// function that vanishes at the origin.
pub fn extract_orders(u: &PiecewiseLinear) -> Result<TorsionOrders, UpsilonError> {
    if !u.eval(&rat_int(0)).is_zero() {
        return Err(UpsilonError::NonzeroAtOrigin);
    }
    let slope = u.first_slope();
    if !is_integer(&slope) || slope.is_negative() {
        return Err(UpsilonError::NonIntegralInitialSlope(slope));
    }
    let ord = u64::try_from(slope.to_integer())
        .map_err(|_| UpsilonError::NonIntegralInitialSlope(slope.clone()))?;
    Ok(TorsionOrders {
        ord,
        ord_prime: u.eval(&rat_int(1)),
    })
}

/// The longest gap of the sequence: an independent route to Ord for
/// L-space knots. Zero for the unknot.
pub fn ord_from_longest_gap(gaps: &GapSequence) -> u64 {
    gaps.max_gap()
}
