//! Exact rationals and their decimal rendering.

use alloc::string::String;
use core::fmt::Write;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Arbitrary-precision fraction in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn ratio(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn from_counts(num: &BigUint, den: &BigUint) -> Rational {
    Rational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

/// Renders `value` with `digits` significant digits, rounding half away
/// from zero. Zero renders as `0`.
pub fn to_decimal(value: &Rational, digits: usize) -> String {
    assert!(digits > 0);
    let mut out = String::new();
    if value.is_zero() {
        out.push('0');
        return out;
    }
    if value.is_negative() {
        out.push('-');
    }
    let num = value.numer().abs();
    let den = value.denom().clone();
    let ten = BigInt::from(10);

    // Find e with 10^e <= |value| < 10^(e+1).
    let mut e: i64 = 0;
    let (mut n, mut d) = (num.clone(), den.clone());
    while n >= &d * &ten {
        d *= &ten;
        e += 1;
    }
    while n < d {
        n *= &ten;
        e -= 1;
    }
    // scaled = |value| * 10^(digits-1-e), rounded to an integer.
    let shift = digits as i64 - 1 - e;
    let (mut sn, mut sd) = (num, den);
    if shift >= 0 {
        sn *= ten.pow(shift as u32);
    } else {
        sd *= ten.pow((-shift) as u32);
    }
    let (q, r) = sn.div_rem(&sd);
    let mut q = if r * 2 >= sd { q + BigInt::one() } else { q };
    let mut shift = shift;
    if q >= ten.pow(digits as u32) {
        // Rounding carried into a new leading digit.
        q /= &ten;
        shift -= 1;
    }
    let s = q.to_str_radix(10);
    if shift <= 0 {
        out.push_str(&s);
        for _ in 0..(-shift) {
            out.push('0');
        }
    } else {
        let shift = shift as usize;
        if shift >= s.len() {
            out.push_str("0.");
            for _ in 0..(shift - s.len()) {
                out.push('0');
            }
            out.push_str(&s);
        } else {
            let (int, frac) = s.split_at(s.len() - shift);
            let _ = write!(out, "{int}.{frac}");
        }
    }
    out
}

/// `|a - b|`
pub fn abs_diff(a: &Rational, b: &Rational) -> Rational {
    (a - b).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(7, 24), 12), "0.291666666667");
        assert_eq!(to_decimal(&ratio(1, 8), 12), "0.125000000000");
        assert_eq!(to_decimal(&ratio(2, 3), 12), "0.666666666667");
        assert_eq!(to_decimal(&ratio(1, 1), 12), "1.00000000000");
        assert_eq!(to_decimal(&ratio(0, 1), 12), "0");
        assert_eq!(to_decimal(&ratio(1, 3000), 3), "0.000333");
        assert_eq!(to_decimal(&ratio(12345, 1), 3), "12300");
        assert_eq!(to_decimal(&ratio(-1, 2), 2), "-0.50");
        assert_eq!(to_decimal(&ratio(9999, 10000), 2), "1.0");
        assert_eq!(to_decimal(&ratio(1, 1023), 4), "0.0009775");
    }
}
