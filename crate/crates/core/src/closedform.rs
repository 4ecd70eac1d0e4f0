//! Published closed forms for the twisted torus family T(p, kp+1; 2, 1).
//!
//! These evaluators transcribe the known piecewise formulas literally and
//! independently of the engine; the acceptance suite holds the engine to
//! exact agreement with them. For p = 2 the function is t on [0, 1]; for
//! p >= 4 it is assembled from the published piece list; p = 3 has no
//! closed form here and is handled by the engine alone.

use thiserror::Error;

use crate::rational::{rat_int, Rat};
use crate::staircase::AffineFunction;
use crate::upsilon::PiecewiseLinear;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ClosedFormError {
    #[error("no closed form for p = {0}")]
    UnsupportedP(u32),
    #[error("pieces disagree at t = {at}: {left} vs {right}")]
    PieceMismatch {
        at: Box<Rat>,
        left: Box<Rat>,
        right: Box<Rat>,
    },
}

/// Closed-form torsion orders: Ord = p - 1 for p >= 2; Ord' is
/// floor((p-2)/2) for p >= 4, equals 1 for p = 2, and is not published
/// for p = 3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedOrders {
    pub ord: u64,
    pub ord_prime: Option<u64>,
}

pub fn closed_orders(p: u32) -> Result<ClosedOrders, ClosedFormError> {
    if p < 2 {
        return Err(ClosedFormError::UnsupportedP(p));
    }
    let ord = (p - 1) as u64;
    let ord_prime = match p {
        2 => Some(1),
        3 => None,
        _ => Some(((p - 2) / 2) as u64),
    };
    Ok(ClosedOrders { ord, ord_prime })
}

struct Piece {
    lo: Rat,
    hi: Rat,
    f: AffineFunction,
}

/// The closed-form Upsilon torsion function for p = 2 or p >= 4.
///
/// The p >= 4 piece list on [0, 1]:
///   (p-1) t           on [0, 2/p]
///   2 - t             on [2/p, 2/(p-2)]
///   (p-3) t           on [2/(p-2), 4/p]
///   2m + (-m-1) t     on [2m/p, 2m/(p-1)]      for m = 2 .. floor((p-1)/2)
///   (p-2-m) t         on [2m/(p-1), 2(m+1)/p]  for m = 2 .. floor(p/2) - 1
/// Degenerate intervals are skipped; the kept pieces must tile [0, 1] and
/// agree at shared endpoints, and the result is mirrored onto [1, 2].
pub fn upsilon_closed_form(p: u32) -> Result<PiecewiseLinear, ClosedFormError> {
    if p == 2 {
        return Ok(PiecewiseLinear::from_points(vec![
            (rat_int(0), rat_int(0)),
            (rat_int(1), rat_int(1)),
            (rat_int(2), rat_int(0)),
        ]));
    }
    if p < 4 {
        return Err(ClosedFormError::UnsupportedP(p));
    }
    let pi = p as i64;
    let frac = |n: i64, d: i64| Rat::new(n.into(), d.into());

    let mut pieces = vec![
        Piece {
            lo: rat_int(0),
            hi: frac(2, pi),
            f: AffineFunction::from_ints(pi - 1, 0),
        },
        Piece {
            lo: frac(2, pi),
            hi: frac(2, pi - 2),
            f: AffineFunction::from_ints(-1, 2),
        },
        Piece {
            lo: frac(2, pi - 2),
            hi: frac(4, pi),
            f: AffineFunction::from_ints(pi - 3, 0),
        },
    ];
    for m in 2..=(pi - 1) / 2 {
        pieces.push(Piece {
            lo: frac(2 * m, pi),
            hi: frac(2 * m, pi - 1),
            f: AffineFunction::from_ints(-m - 1, 2 * m),
        });
    }
    for m in 2..=pi / 2 - 1 {
        pieces.push(Piece {
            lo: frac(2 * m, pi - 1),
            hi: frac(2 * (m + 1), pi),
            f: AffineFunction::from_ints(pi - 2 - m, 0),
        });
    }

    pieces.retain(|piece| piece.lo < piece.hi);
    pieces.sort_by(|a, b| a.lo.cmp(&b.lo));

    // The intervals must tile [0, 1] with matching values at the seams.
    let mut points: Vec<(Rat, Rat)> = Vec::new();
    let mut cursor = rat_int(0);
    for piece in &pieces {
        if piece.lo != cursor {
            return Err(ClosedFormError::PieceMismatch {
                at: Box::new(cursor.clone()),
                left: Box::new(rat_int(0)),
                right: Box::new(piece.lo.clone()),
            });
        }
        let start = piece.f.eval(&piece.lo);
        match points.last() {
            None => points.push((piece.lo.clone(), start)),
            Some(last) => {
                if last.1 != start {
                    return Err(ClosedFormError::PieceMismatch {
                        at: Box::new(piece.lo.clone()),
                        left: Box::new(last.1.clone()),
                        right: Box::new(start),
                    });
                }
            }
        }
        points.push((piece.hi.clone(), piece.f.eval(&piece.hi)));
        cursor = piece.hi.clone();
    }
    if cursor != rat_int(1) {
        return Err(ClosedFormError::PieceMismatch {
            at: Box::new(cursor),
            left: Box::new(rat_int(0)),
            right: Box::new(rat_int(1)),
        });
    }

    // reflect onto [1, 2]
    let mirrored: Vec<(Rat, Rat)> = points
        .iter()
        .rev()
        .skip(1)
        .map(|(t, v)| (rat_int(2) - t, v.clone()))
        .collect();
    points.extend(mirrored);
    Ok(PiecewiseLinear::from_points(points))
}
