//! Sparse integer polynomials in one variable t, with exact division.
//!
//! Coefficients are arbitrary-precision integers: the Alexander polynomials
//! in scope have coefficients in {-1, 0, 1}, but intermediate products in
//! their quotient derivations do not, and user-supplied polynomials are
//! unconstrained. Exponents are machine-width with checked arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("polynomial division leaves a nonzero remainder")]
    NonZeroRemainder,
    #[error("1 - t^n requires n >= 1")]
    ZeroPower,
    #[error("invalid coefficient list: {0}")]
    Parse(String),
}

/// A polynomial with integer coefficients, stored sparsely by exponent.
///
/// Zero coefficients are never stored; the zero polynomial is the empty map.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    terms: BTreeMap<usize, BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// The single term c * t^exp.
    pub fn monomial(coeff: impl Into<BigInt>, exp: usize) -> Self {
        let coeff = coeff.into();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exp, coeff);
        }
        Self { terms }
    }

    /// 1 - t^n for n >= 1.
    pub fn one_minus_t_pow(n: usize) -> Result<Self, PolyError> {
        if n == 0 {
            return Err(PolyError::ZeroPower);
        }
        let mut p = Self::one();
        p.add_term(BigInt::from(-1), n);
        Ok(p)
    }

    /// Sums an iterator of (coefficient, exponent) terms, cancelling as it goes.
    pub fn from_terms<I, C>(iter: I) -> Self
    where
        I: IntoIterator<Item = (C, usize)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (c, e) in iter {
            p.add_term(c.into(), e);
        }
        p
    }

    /// Builds from a dense coefficient list, lowest exponent first.
    pub fn from_dense<C: Into<BigInt>>(coeffs: impl IntoIterator<Item = C>) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(e, c)| (c, e)))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Maximum stored exponent; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.terms.get(&exp).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Nonzero terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    /// Exponents carrying a nonzero coefficient, increasing.
    pub fn exponents(&self) -> Vec<usize> {
        self.terms.keys().copied().collect()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, coeff: BigInt, exp: usize) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Exact quotient q with q * den == self; errors if no such q exists.
    pub fn exact_div(&self, den: &Self) -> Result<Self, PolyError> {
        if den.is_zero() {
            return Err(PolyError::DivisionByZero);
        }
        let den_deg = den.degree().expect("nonzero");
        let den_lead = den.coeff(den_deg);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(rem_deg) = rem.degree() {
            if rem_deg < den_deg {
                return Err(PolyError::NonZeroRemainder);
            }
            let (c, r) = rem.coeff(rem_deg).div_rem(&den_lead);
            if !r.is_zero() {
                return Err(PolyError::NonZeroRemainder);
            }
            let shift = rem_deg - den_deg;
            for (e, dc) in den.terms.iter() {
                let exp = e.checked_add(shift).expect("exponent overflow");
                rem.add_term(-(&c * dc), exp);
            }
            quot.add_term(c, shift);
        }
        Ok(quot)
    }

    /// Dense coefficient list c0,...,c_deg; `"0"` for the zero polynomial.
    pub fn dense_string(&self) -> String {
        match self.degree() {
            None => "0".to_string(),
            Some(d) => (0..=d)
                .map(|e| self.coeff(e).to_string())
                .collect::<Vec<_>>()
                .join(","),
        }
    }

    /// Parses the dense form `c0,c1,...,cn`.
    pub fn parse_dense(s: &str) -> Result<Self, PolyError> {
        let mut coeffs = Vec::new();
        for part in s.split(',') {
            let part = part.trim();
            if part.is_empty() {
                return Err(PolyError::Parse("empty coefficient".to_string()));
            }
            let c: BigInt = part
                .parse()
                .map_err(|_| PolyError::Parse(format!("not an integer: '{part}'")))?;
            coeffs.push(c);
        }
        Ok(Self::from_dense(coeffs))
    }

    #[cfg(test)]
    pub(crate) fn stores_no_zero_coeff(&self) -> bool {
        self.terms.values().all(|c| !c.is_zero())
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(c.clone(), *e);
        }
        out
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = self.clone();
        for (e, c) in rhs.terms.iter() {
            out.add_term(-c.clone(), *e);
        }
        out
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        let mut out = IntPolynomial::zero();
        for (ea, ca) in self.terms.iter() {
            for (eb, cb) in rhs.terms.iter() {
                let e = ea.checked_add(*eb).expect("exponent overflow");
                out.add_term(ca * cb, e);
            }
        }
        out
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let mag = c.abs();
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (e, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{e}")?,
                (_, false) => write!(f, "{mag}t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}
