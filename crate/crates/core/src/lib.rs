//! Exact computation of the Upsilon torsion function of L-space knots.
//!
//! The pipeline runs in exact arithmetic throughout: an Alexander polynomial
//! (or directly its gap sequence) determines a staircase chain complex over
//! F2; a parameter-dependent filtration level on its generators yields, at
//! each rational t in [0, 2], a persistence pairing of the generators; the
//! longest finite bar, as a function of t, is the Upsilon torsion function,
//! and the torsion orders Ord and Ord' are its initial slope and its value
//! at t = 1.
//!
//! Knots enter through [`KnotSpec`]: torus knots T(p, q), the twisted torus
//! family T(p, kp+1; 2, 1), raw gap sequences, or raw Alexander polynomials.

pub mod alexander;
pub mod closedform;
mod gf2;
pub mod persistence;
pub mod poly;
pub mod rational;
pub mod rng;
pub mod staircase;
pub mod upsilon;

pub use alexander::{GapSequence, KnotSpec};
pub use poly::IntPolynomial;
pub use rational::Rat;
pub use staircase::StaircaseComplex;
pub use upsilon::{PiecewiseLinear, TorsionOrders};
