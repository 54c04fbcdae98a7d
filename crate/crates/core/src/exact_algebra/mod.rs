//! Exact scalars and truncated Laurent series.
//!
//! Integers are `num_bigint::BigInt`; rationals are `num_rational::BigRational`,
//! which keeps every value reduced with a positive denominator.

mod series;

pub use series::{SeriesError, TruncatedSeries};

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

/// Arbitrary-precision integer.
pub type ExactInt = BigInt;
/// Arbitrary-precision rational in lowest terms.
pub type ExactRational = BigRational;

pub fn int(n: i64) -> ExactInt {
    BigInt::from(n)
}

pub fn rat(n: i64) -> ExactRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `n / d` reduced. Panics if `d == 0`.
pub fn ratio(n: i64, d: i64) -> ExactRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rat_from_int(n: ExactInt) -> ExactRational {
    BigRational::from_integer(n)
}

/// Integer power of a rational.
pub fn pow(base: &ExactRational, exp: u64) -> ExactRational {
    let mut acc = ExactRational::one();
    let mut b = base.clone();
    let mut e = exp;
    while e > 0 {
        if e & 1 == 1 {
            acc *= &b;
        }
        e >>= 1;
        if e > 0 {
            b = &b * &b;
        }
    }
    acc
}

/// Nearest `f64` to an exact rational (saturating to ±inf for huge values).
pub fn to_f64(x: &ExactRational) -> f64 {
    if let Some(v) = x.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    // Fall back to scaled division for values whose parts overflow f64.
    let n_bits = x.numer().bits() as i64;
    let d_bits = x.denom().bits() as i64;
    let shift = (n_bits - d_bits).clamp(-1000, 1000);
    let scaled = if shift >= 0 {
        x / rat_from_int(BigInt::one() << (shift as usize))
    } else {
        x * rat_from_int(BigInt::one() << ((-shift) as usize))
    };
    scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
}

/// `p/q` for non-integers, plain integer text otherwise.
pub fn fmt_rational(x: &ExactRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

pub fn is_positive(x: &ExactRational) -> bool {
    x.is_positive()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseRationalError {
    #[error("empty rational literal")]
    Empty,
    #[error("malformed rational literal `{0}` (expected `p` or `p/q`)")]
    Malformed(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
}

/// Parses `"p"` or `"p/q"` (optionally signed) into an exact rational.
pub fn parse_rational(text: &str) -> Result<ExactRational, ParseRationalError> {
    let text = text.trim();
    if text.is_empty() {
        return Err(ParseRationalError::Empty);
    }
    let malformed = || ParseRationalError::Malformed(text.to_string());
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (text, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| malformed())?;
    let den = BigInt::from_str(den).map_err(|_| malformed())?;
    if den.is_zero() {
        return Err(ParseRationalError::ZeroDenominator(text.to_string()));
    }
    Ok(BigRational::new(num, den))
}

/// Display adapter printing a rational as `p/q` or `p`.
pub struct Exact<'a>(pub &'a ExactRational);

impl fmt::Display for Exact<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_rational(self.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("5/2").unwrap(), ratio(5, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), rat(7));
        assert_eq!(parse_rational("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_rational("3/-6").unwrap(), ratio(-1, 2));
        assert!(matches!(parse_rational("1/0"), Err(ParseRationalError::ZeroDenominator(_))));
        assert!(matches!(parse_rational("x"), Err(ParseRationalError::Malformed(_))));
        assert!(matches!(parse_rational(""), Err(ParseRationalError::Empty)));
    }

    #[test]
    fn canonical_form_after_ops() {
        let a = ratio(6, -4);
        let b = ratio(10, 15);
        for v in [&a + &b, &a * &b, &a - &b, &a / &b] {
            assert!(v.denom().is_positive());
            assert!(v.numer().gcd(v.denom()).is_one());
        }
        assert_eq!(ratio(0, 7), rat(0));
        assert!(rat(0).denom().is_one());
    }

    #[test]
    fn pow_and_format() {
        assert_eq!(pow(&ratio(2, 3), 3), ratio(8, 27));
        assert_eq!(pow(&rat(5), 0), rat(1));
        assert_eq!(fmt_rational(&ratio(-13, 15)), "-13/15");
        assert_eq!(fmt_rational(&rat(8704)), "8704");
    }

    #[test]
    fn f64_conversion_of_huge_values() {
        let big = pow(&rat(10), 400) / pow(&rat(10), 399);
        assert!((to_f64(&big) - 10.0).abs() < 1e-12);
        let tiny = ratio(1, 3);
        assert!((to_f64(&tiny) - 1.0 / 3.0).abs() < 1e-16);
    }
}
