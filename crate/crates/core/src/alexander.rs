//! Alexander polynomials and gap sequences for the supported knot families.
//!
//! Two independent derivations cover the twisted torus family
//! T(p, kp+1; 2, 1): a quotient formula computed by exact division
//! ([`alexander_twisted_morton`], after Morton's formula for twisted torus
//! knots) and a literal closed-form sum ([`alexander_twisted_closed`]).
//! They must agree; the test suites cross-check them everywhere. Gap
//! sequences are the successive differences of the exponents of an
//! alternating-sign Alexander polynomial, and drive the staircase model.

use std::fmt;

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::poly::{IntPolynomial, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlexanderError {
    #[error("torus parameters require 2 <= p < q and gcd(p, q) = 1, got p={p}, q={q}")]
    InvalidTorus { p: u32, q: u32 },
    #[error("twisted parameters require p >= 2 and k >= 1, got p={p}, k={k}")]
    InvalidTwisted { p: u32, k: u32 },
    #[error("the quotient derivation requires p >= 3, got p={p}")]
    MortonRequiresP3 { p: u32 },
    #[error("not an L-space Alexander polynomial: {0}")]
    NotLSpaceForm(String),
    #[error("gap sum is odd, so the gaps do not describe a knot staircase")]
    OddGapSum,
    #[error("invalid gap sequence: {0}")]
    InvalidGaps(String),
    #[error("knot parameters are too large")]
    ParameterTooLarge,
    #[error("invalid knot spec: {0}")]
    Spec(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Maximum admitted gap sum (= twice the genus). Keeps every staircase
/// coordinate and filtration numerator comfortably inside i64.
const MAX_GAP_SUM: u128 = 1 << 31;

/// Gaps between consecutive exponents of an alternating-sign Alexander
/// polynomial. Always of even length and palindromic; the unknot has the
/// empty sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapSequence {
    gaps: Vec<u64>,
}

impl GapSequence {
    pub fn new(gaps: Vec<u64>) -> Result<Self, AlexanderError> {
        if gaps.contains(&0) {
            return Err(AlexanderError::InvalidGaps(
                "entries must be positive".to_string(),
            ));
        }
        if !gaps.len().is_multiple_of(2) {
            return Err(AlexanderError::InvalidGaps(
                "length must be even".to_string(),
            ));
        }
        let n = gaps.len();
        if (0..n / 2).any(|i| gaps[i] != gaps[n - 1 - i]) {
            return Err(AlexanderError::InvalidGaps(
                "sequence must be palindromic".to_string(),
            ));
        }
        if gaps.iter().map(|&g| g as u128).sum::<u128>() > MAX_GAP_SUM {
            return Err(AlexanderError::ParameterTooLarge);
        }
        Ok(Self { gaps })
    }

    /// The unknot.
    pub fn empty() -> Self {
        Self { gaps: Vec::new() }
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    /// Largest entry; 0 for the unknot.
    pub fn max_gap(&self) -> u64 {
        self.gaps.iter().copied().max().unwrap_or(0)
    }

    /// Half the gap sum. Valid sequences always have an even sum.
    pub fn genus(&self) -> u64 {
        genus_from_gaps(&self.gaps).expect("validated gap sequence has even sum")
    }
}

impl fmt::Display for GapSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.gaps.iter().map(|g| g.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Half the sum of a raw gap list; rejects odd sums and overflow.
pub fn genus_from_gaps(gaps: &[u64]) -> Result<u64, AlexanderError> {
    let sum: u128 = gaps.iter().map(|&g| g as u128).sum();
    if sum > MAX_GAP_SUM {
        return Err(AlexanderError::ParameterTooLarge);
    }
    if !sum.is_multiple_of(2) {
        return Err(AlexanderError::OddGapSum);
    }
    Ok((sum / 2) as u64)
}

/// A knot given in one of the accepted input forms.
///
/// Grammar (shared with the CLI): `torus:p,q`, `twisted:p,k`,
/// `gaps:a1,a2,...` and `alex:c0,c1,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum KnotSpec {
    Torus { p: u32, q: u32 },
    Twisted { p: u32, k: u32 },
    RawGaps(GapSequence),
    RawAlexander(IntPolynomial),
}

/// A parsed knot spec plus any normalization warnings.
#[derive(Debug, Clone)]
pub struct ParsedSpec {
    pub spec: KnotSpec,
    pub warnings: Vec<String>,
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

impl KnotSpec {
    pub fn torus(p: u32, q: u32) -> Result<Self, AlexanderError> {
        if p < 2 || q <= p || gcd(p as u64, q as u64) != 1 {
            return Err(AlexanderError::InvalidTorus { p, q });
        }
        Ok(Self::Torus { p, q })
    }

    pub fn twisted(p: u32, k: u32) -> Result<Self, AlexanderError> {
        if p < 2 || k < 1 {
            return Err(AlexanderError::InvalidTwisted { p, k });
        }
        Ok(Self::Twisted { p, k })
    }

    /// Parses the knot spec grammar. A raw Alexander polynomial with constant
    /// term -1 is negated (with a warning); one that is not of L-space form
    /// is rejected, since the staircase model does not apply to it.
    pub fn parse(input: &str) -> Result<ParsedSpec, AlexanderError> {
        let (head, rest) = input
            .split_once(':')
            .ok_or_else(|| AlexanderError::Spec(format!("missing ':' in '{input}'")))?;
        let mut warnings = Vec::new();
        let spec = match head {
            "torus" => {
                let (p, q) = parse_pair(rest, "torus")?;
                Self::torus(p, q)?
            }
            "twisted" => {
                let (p, k) = parse_pair(rest, "twisted")?;
                Self::twisted(p, k)?
            }
            "gaps" => {
                let mut gaps = Vec::new();
                if !rest.trim().is_empty() {
                    for part in rest.split(',') {
                        let g: u64 = part.trim().parse().map_err(|_| {
                            AlexanderError::Spec(format!("gaps entry is not an integer: '{part}'"))
                        })?;
                        gaps.push(g);
                    }
                }
                Self::RawGaps(GapSequence::new(gaps)?)
            }
            "alex" => {
                let poly = IntPolynomial::parse_dense(rest)?;
                let (normalized, negated) = normalize_alexander_sign(&poly);
                if negated {
                    warnings.push(
                        "alexander polynomial had constant term -1; negated".to_string(),
                    );
                }
                // Reject non-L-space polynomials up front.
                gaps_from_alexander(&normalized)?;
                Self::RawAlexander(normalized)
            }
            other => {
                return Err(AlexanderError::Spec(format!(
                    "unknown knot form '{other}' (expected torus, twisted, gaps or alex)"
                )))
            }
        };
        Ok(ParsedSpec { spec, warnings })
    }

    /// The Alexander polynomial of the knot. For raw gap input this is the
    /// alternating-sign polynomial reconstructed from the gaps.
    pub fn alexander(&self) -> Result<IntPolynomial, AlexanderError> {
        match self {
            Self::Torus { p, q } => alexander_torus(*p, *q),
            Self::Twisted { p, k } => alexander_twisted_closed(*p, *k),
            Self::RawGaps(gaps) => Ok(alexander_from_gaps(gaps)),
            Self::RawAlexander(poly) => Ok(poly.clone()),
        }
    }

    pub fn gaps(&self) -> Result<GapSequence, AlexanderError> {
        match self {
            Self::RawGaps(gaps) => Ok(gaps.clone()),
            _ => gaps_from_alexander(&self.alexander()?),
        }
    }

    pub fn genus(&self) -> Result<u64, AlexanderError> {
        genus_from_spec(self)
    }
}

impl fmt::Display for KnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Torus { p, q } => write!(f, "torus:{p},{q}"),
            Self::Twisted { p, k } => write!(f, "twisted:{p},{k}"),
            Self::RawGaps(gaps) => write!(f, "gaps:{gaps}"),
            Self::RawAlexander(poly) => write!(f, "alex:{}", poly.dense_string()),
        }
    }
}

fn parse_pair(rest: &str, field: &str) -> Result<(u32, u32), AlexanderError> {
    let parts: Vec<&str> = rest.split(',').collect();
    if parts.len() != 2 {
        return Err(AlexanderError::Spec(format!(
            "{field} takes exactly two integers, got '{rest}'"
        )));
    }
    let a = parts[0].trim().parse().map_err(|_| {
        AlexanderError::Spec(format!("{field} parameter is not an integer: '{}'", parts[0]))
    })?;
    let b = parts[1].trim().parse().map_err(|_| {
        AlexanderError::Spec(format!("{field} parameter is not an integer: '{}'", parts[1]))
    })?;
    Ok((a, b))
}

/// Negates a polynomial whose constant term is -1; reports whether it did.
pub fn normalize_alexander_sign(poly: &IntPolynomial) -> (IntPolynomial, bool) {
    if poly.coeff(0) == BigInt::from(-1) {
        (-poly, true)
    } else {
        (poly.clone(), false)
    }
}

fn exp(x: u64) -> Result<usize, AlexanderError> {
    usize::try_from(x).map_err(|_| AlexanderError::ParameterTooLarge)
}

fn checked_mul(a: u64, b: u64) -> Result<u64, AlexanderError> {
    a.checked_mul(b).ok_or(AlexanderError::ParameterTooLarge)
}

fn checked_add(a: u64, b: u64) -> Result<u64, AlexanderError> {
    a.checked_add(b).ok_or(AlexanderError::ParameterTooLarge)
}

/// Alexander polynomial of the torus knot T(p, q):
/// (1 - t)(1 - t^(pq)) / ((1 - t^p)(1 - t^q)).
pub fn alexander_torus(p: u32, q: u32) -> Result<IntPolynomial, AlexanderError> {
    if p < 2 || q <= p || gcd(p as u64, q as u64) != 1 {
        return Err(AlexanderError::InvalidTorus { p, q });
    }
    let pq = exp(checked_mul(p as u64, q as u64)?)?;
    let num = &IntPolynomial::one_minus_t_pow(1)? * &IntPolynomial::one_minus_t_pow(pq)?;
    let den = &IntPolynomial::one_minus_t_pow(p as usize)?
        * &IntPolynomial::one_minus_t_pow(q as usize)?;
    // Exact for coprime p < q; a remainder here is an internal error.
    Ok(num.exact_div(&den)?)
}

/// Alexander polynomial of T(p, kp+1; 2, 1) for p >= 3 via the quotient
/// (1 - t) * (1 - (1 - t)(t^((p-1)(kp+1)+1) + t^(kp+1)) - t^(p(kp+1)+2))
/// divided by (1 - t^p)(1 - t^(kp+1)), computed by exact division.
pub fn alexander_twisted_morton(p: u32, k: u32) -> Result<IntPolynomial, AlexanderError> {
    if p < 2 || k < 1 {
        return Err(AlexanderError::InvalidTwisted { p, k });
    }
    if p < 3 {
        return Err(AlexanderError::MortonRequiresP3 { p });
    }
    let (p, k) = (p as u64, k as u64);
    let kp1 = checked_add(checked_mul(k, p)?, 1)?;
    let a = checked_add(checked_mul(p - 1, kp1)?, 1)?;
    let top = checked_add(checked_mul(p, kp1)?, 2)?;

    // 1 - t^a - t^(kp+1) + t^(a+1) + t^(kp+2) - t^(p(kp+1)+2)
    let second = IntPolynomial::from_terms([
        (1i64, 0usize),
        (-1, exp(a)?),
        (-1, exp(kp1)?),
        (1, exp(checked_add(a, 1)?)?),
        (1, exp(checked_add(kp1, 1)?)?),
        (-1, exp(top)?),
    ]);
    let num = &IntPolynomial::one_minus_t_pow(1)? * &second;
    let den = &IntPolynomial::one_minus_t_pow(exp(p)?)?
        * &IntPolynomial::one_minus_t_pow(exp(kp1)?)?;
    Ok(num.exact_div(&den)?)
}

/// Alexander polynomial of T(p, kp+1; 2, 1) by literal evaluation of the
/// closed-form sums: 1 + A + B + C for p >= 3, and the alternating
/// polynomial 1 - t + t^2 - ... + t^(2k+2) for p = 2.
///
/// This path is kept independent of [`alexander_twisted_morton`]; the two
/// derivations verify each other.
pub fn alexander_twisted_closed(p: u32, k: u32) -> Result<IntPolynomial, AlexanderError> {
    if p < 2 || k < 1 {
        return Err(AlexanderError::InvalidTwisted { p, k });
    }
    let (p, k) = (p as u64, k as u64);

    if p == 2 {
        let top = exp(checked_add(checked_mul(2, k)?, 2)?)?;
        return Ok(IntPolynomial::from_terms(
            (0..=top).map(|e| (if e % 2 == 0 { 1i64 } else { -1 }, e)),
        ));
    }

    let mut terms: Vec<(i64, usize)> = vec![(1, 0)];
    // A = sum_{i=1..k} (-t + t^p) t^((i-1)p)
    for i in 1..=k {
        let shift = checked_mul(i - 1, p)?;
        terms.push((-1, exp(checked_add(1, shift)?)?));
        terms.push((1, exp(checked_add(p, shift)?)?));
    }
    // B = sum_{i=1..p-3} sum_{j=1..k}
    //     (-t^(ikp+1) + t^(ikp+2) - t^(ikp+2+i) + t^((ik+1)p)) t^((j-1)p)
    for i in 1..=p.saturating_sub(3) {
        let ikp = checked_mul(checked_mul(i, k)?, p)?;
        for j in 1..=k {
            let shift = checked_mul(j - 1, p)?;
            terms.push((-1, exp(checked_add(checked_add(ikp, 1)?, shift)?)?));
            terms.push((1, exp(checked_add(checked_add(ikp, 2)?, shift)?)?));
            terms.push((-1, exp(checked_add(checked_add(ikp, checked_add(2, i)?)?, shift)?)?));
            terms.push((
                1,
                exp(checked_add(
                    checked_mul(checked_add(checked_mul(i, k)?, 1)?, p)?,
                    shift,
                )?)?,
            ));
        }
    }
    // C = sum_{i=1..k+1} (-t^(kp(p-2)+1) + t^(kp(p-2)+2)) t^((i-1)p)
    let kpp2 = checked_mul(checked_mul(k, p)?, p - 2)?;
    for i in 1..=k + 1 {
        let shift = checked_mul(i - 1, p)?;
        terms.push((-1, exp(checked_add(checked_add(kpp2, 1)?, shift)?)?));
        terms.push((1, exp(checked_add(checked_add(kpp2, 2)?, shift)?)?));
    }
    Ok(IntPolynomial::from_terms(terms))
}

/// Reads the gap sequence off an Alexander polynomial, after checking it
/// has the L-space shape: constant term +1, coefficients alternating
/// between +1 and -1 along increasing exponents, an odd number of terms,
/// and a symmetric exponent set.
pub fn gaps_from_alexander(poly: &IntPolynomial) -> Result<GapSequence, AlexanderError> {
    if poly.is_zero() {
        return Err(AlexanderError::NotLSpaceForm(
            "the zero polynomial".to_string(),
        ));
    }
    let terms: Vec<(usize, BigInt)> = poly.terms().map(|(e, c)| (e, c.clone())).collect();
    if terms[0].0 != 0 || !terms[0].1.is_one() {
        return Err(AlexanderError::NotLSpaceForm(
            "constant term must be +1".to_string(),
        ));
    }
    for (i, (_, c)) in terms.iter().enumerate() {
        let want = if i % 2 == 0 { 1i64 } else { -1 };
        if *c != BigInt::from(want) {
            return Err(AlexanderError::NotLSpaceForm(
                "coefficients must alternate between +1 and -1".to_string(),
            ));
        }
    }
    if terms.len().is_multiple_of(2) {
        return Err(AlexanderError::NotLSpaceForm(
            "must have an odd number of terms".to_string(),
        ));
    }
    let n = terms.len();
    let top = terms[n - 1].0;
    if (0..n).any(|i| terms[i].0 + terms[n - 1 - i].0 != top) {
        return Err(AlexanderError::NotLSpaceForm(
            "exponent set must be symmetric".to_string(),
        ));
    }
    let gaps: Vec<u64> = terms.windows(2).map(|w| (w[1].0 - w[0].0) as u64).collect();
    GapSequence::new(gaps)
}

/// Reconstructs the alternating-sign polynomial whose exponent gaps are the
/// given sequence (the inverse of [`gaps_from_alexander`]).
pub fn alexander_from_gaps(gaps: &GapSequence) -> IntPolynomial {
    let mut e: usize = 0;
    let mut terms = vec![(1i64, 0usize)];
    for (i, &g) in gaps.as_slice().iter().enumerate() {
        e += g as usize;
        terms.push((if i % 2 == 0 { -1 } else { 1 }, e));
    }
    IntPolynomial::from_terms(terms)
}

/// The published gap pattern for T(p, kp+1; 2, 1):
/// all-ones of length 2k+2 for p = 2, and
/// (1,p-1)^k, (1,1,j,p-2-j)^k for j = 1..p-3, then 1,1, then (p-1,1)^k
/// for p >= 3 (the middle blocks are empty at p = 3).
pub fn expected_gap_pattern(p: u32, k: u32) -> Result<GapSequence, AlexanderError> {
    if p < 2 || k < 1 {
        return Err(AlexanderError::InvalidTwisted { p, k });
    }
    let (p, k) = (p as u64, k as u64);
    let mut gaps: Vec<u64> = Vec::new();
    if p == 2 {
        gaps.resize((2 * k + 2) as usize, 1);
        return GapSequence::new(gaps);
    }
    for _ in 0..k {
        gaps.extend([1, p - 1]);
    }
    for j in 1..=p.saturating_sub(3) {
        for _ in 0..k {
            gaps.extend([1, 1, j, p - 2 - j]);
        }
    }
    gaps.extend([1, 1]);
    for _ in 0..k {
        gaps.extend([p - 1, 1]);
    }
    GapSequence::new(gaps)
}

/// Half the gap sum of the knot; equals the Seifert genus for the
/// supported families.
pub fn genus_from_spec(spec: &KnotSpec) -> Result<u64, AlexanderError> {
    let gaps = spec.gaps()?;
    genus_from_gaps(gaps.as_slice())
}
