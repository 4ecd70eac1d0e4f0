//! Exact rational scalars and their text renderings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational number used for filtration levels, breakpoints and values.
pub type Rat = BigRational;

/// `rat(n, d)` is n/d in lowest terms with positive denominator.
pub fn rat(numer: i64, denom: i64) -> Rat {
    Rat::new(BigInt::from(numer), BigInt::from(denom))
}

/// The integer n as a rational.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Renders `numerator/denominator` in lowest terms, denominator positive.
pub fn fraction_string(r: &Rat) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn pow10(k: u32) -> BigInt {
    BigInt::from(10).pow(k)
}

/// Renders a decimal approximation with a fixed number of significant digits.
///
/// Rounding is exact (half away from zero). Zero renders as `"0"`.
pub fn decimal_string(r: &Rat, significant: u32) -> String {
    assert!(significant >= 1);
    if r.is_zero() {
        return "0".to_string();
    }
    let negative = r.is_negative();
    let n = r.numer().abs();
    let d = r.denom().clone();

    // Decimal exponent e with 10^e <= n/d < 10^(e+1).
    let integer_part = &n / &d;
    let mut e: i64 = if !integer_part.is_zero() {
        integer_part.to_string().len() as i64 - 1
    } else {
        let mut scaled: BigInt = &n * 10;
        let mut e = -1i64;
        while (&scaled / &d).is_zero() {
            scaled *= 10;
            e -= 1;
        }
        e
    };

    // digits = round(n/d * 10^(significant - 1 - e)), an integer with
    // `significant` digits unless rounding carries it over.
    let shift = significant as i64 - 1 - e;
    let (num, den) = if shift >= 0 {
        (n * pow10(shift as u32), d)
    } else {
        (n, d * pow10((-shift) as u32))
    };
    let (q, rem) = num.div_rem(&den);
    let mut digits = q;
    if &rem * 2 >= den {
        digits += 1;
    }
    let mut ds = digits.to_string();
    if ds.len() as u32 > significant {
        e += 1;
        ds.truncate(significant as usize);
    }

    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if e >= 0 {
        let ip_len = (e + 1) as usize;
        if ip_len >= ds.len() {
            out.push_str(&ds);
            out.push_str(&"0".repeat(ip_len - ds.len()));
        } else {
            out.push_str(&ds[..ip_len]);
            out.push('.');
            out.push_str(&ds[ip_len..]);
        }
    } else {
        out.push_str("0.");
        out.push_str(&"0".repeat((-e - 1) as usize));
        out.push_str(&ds);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fraction_strings_are_reduced() {
        assert_eq!(fraction_string(&rat(4, 6)), "2/3");
        assert_eq!(fraction_string(&rat(3, -2)), "-3/2");
        assert_eq!(fraction_string(&rat_int(5)), "5/1");
        assert_eq!(fraction_string(&rat_int(0)), "0/1");
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(decimal_string(&rat_int(0), 12), "0");
        assert_eq!(decimal_string(&rat(1, 3), 12), "0.333333333333");
        assert_eq!(decimal_string(&rat(5, 3), 12), "1.66666666667");
        assert_eq!(decimal_string(&rat_int(2), 12), "2.00000000000");
        assert_eq!(decimal_string(&rat(8, 5), 3), "1.60");
        assert_eq!(decimal_string(&rat(-1, 2), 3), "-0.500");
        assert_eq!(decimal_string(&rat(1, 400), 3), "0.00250");
    }

    #[test]
    fn decimal_rounding_carry() {
        // 0.9999995 at 6 significant digits rounds up to 1.00000
        assert_eq!(decimal_string(&rat(9999995, 10000000), 6), "1.00000");
    }
}
