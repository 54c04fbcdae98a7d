use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{fmt_rational, pow};

/// Deepest pole a series may carry.
pub const MIN_EXPONENT: i64 = -1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("lowest retained coefficient (x^{exponent}) is zero")]
    ZeroLeadingCoefficient { exponent: i64 },
    #[error("square root needs min exponent 0 and constant term 1, found {found} at x^{exponent}")]
    BadConstantTerm { exponent: i64, found: String },
    #[error("pole x^{0} is deeper than the supported x^-1")]
    PoleTooDeep(i64),
    #[error("truncation order {order} is below min exponent {min_exponent} - 1")]
    InvalidOrder { min_exponent: i64, order: i64 },
}

/// Exact Laurent series `Σ c_k x^k`, `min_exponent <= k <= order`.
///
/// Terms beyond `x^order` are unknown; arithmetic never reports a coefficient
/// past the smallest order its inputs justify.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    min_exponent: i64,
    coeffs: Vec<BigRational>,
    order: i64,
}

impl TruncatedSeries {
    /// Builds a series from coefficients starting at `x^min_exponent`.
    /// Missing coefficients up to `order` are zero; extra ones are dropped.
    pub fn new(min_exponent: i64, mut coeffs: Vec<BigRational>, order: i64) -> Result<Self, SeriesError> {
        if min_exponent < MIN_EXPONENT {
            return Err(SeriesError::PoleTooDeep(min_exponent));
        }
        if order < min_exponent - 1 {
            return Err(SeriesError::InvalidOrder { min_exponent, order });
        }
        let len = (order - min_exponent + 1) as usize;
        coeffs.resize(len, BigRational::zero());
        Ok(Self { min_exponent, coeffs, order })
    }

    /// Power series (min exponent 0) from its leading coefficients.
    pub fn from_coeffs(coeffs: Vec<BigRational>, order: i64) -> Self {
        Self::new(0, coeffs, order).expect("order >= -1")
    }

    pub fn from_ints(coeffs: &[i64], order: i64) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect(), order)
    }

    pub fn constant(c: BigRational, order: i64) -> Self {
        Self::from_coeffs(vec![c], order)
    }

    pub fn one(order: i64) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn zero(order: i64) -> Self {
        Self::from_coeffs(Vec::new(), order)
    }

    /// `c · x^exponent`, known through `x^order`.
    pub fn monomial(exponent: i64, c: BigRational, order: i64) -> Result<Self, SeriesError> {
        Self::new(exponent.min(order + 1), Vec::new(), order).map(|mut s| {
            if exponent <= order {
                let idx = (exponent - s.min_exponent) as usize;
                s.coeffs[idx] = c;
            }
            s
        })
    }

    pub fn min_exponent(&self) -> i64 {
        self.min_exponent
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`, or `None` when `k` lies beyond the truncation order.
    pub fn get(&self, k: i64) -> Option<BigRational> {
        if k > self.order {
            None
        } else if k < self.min_exponent {
            Some(BigRational::zero())
        } else {
            Some(self.coeffs[(k - self.min_exponent) as usize].clone())
        }
    }

    /// Coefficient of `x^k`. Panics past the truncation order.
    pub fn coeff(&self, k: i64) -> BigRational {
        self.get(k).unwrap_or_else(|| panic!("coefficient x^{k} is beyond truncation order {}", self.order))
    }

    /// Coefficients of `x^from ..= x^to`.
    pub fn coeff_range(&self, from: i64, to: i64) -> Vec<BigRational> {
        (from..=to).map(|k| self.coeff(k)).collect()
    }

    /// Drops every term above `x^order` (no-op if already coarser).
    pub fn truncate(&self, order: i64) -> Self {
        if order >= self.order {
            return self.clone();
        }
        let min_exponent = self.min_exponent.min(order + 1);
        let keep = (order - min_exponent + 1).max(0) as usize;
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(keep);
        Self { min_exponent, coeffs, order }
    }

    /// Strips leading zero coefficients, raising `min_exponent`.
    pub fn normalized(&self) -> Self {
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        Self { min_exponent: self.min_exponent + lead as i64, coeffs: self.coeffs[lead..].to_vec(), order: self.order }
    }

    /// Multiplies by `x^k` (negative `k` divides). Leading zeros are stripped
    /// first, so dividing out a known zero term never trips the pole limit.
    pub fn shift(&self, k: i64) -> Result<Self, SeriesError> {
        let base = if self.min_exponent + k < MIN_EXPONENT { self.normalized() } else { self.clone() };
        let min_exponent = base.min_exponent + k;
        if min_exponent < MIN_EXPONENT && !base.coeffs.is_empty() {
            return Err(SeriesError::PoleTooDeep(min_exponent));
        }
        let order = base.order + k;
        if base.coeffs.is_empty() {
            return Self::new((order + 1).max(MIN_EXPONENT), Vec::new(), order.max(MIN_EXPONENT - 1));
        }
        Ok(Self { min_exponent, coeffs: base.coeffs, order })
    }

    /// The `x^-1` coefficient (zero when absent).
    pub fn pole_coefficient(&self) -> BigRational {
        self.get(-1).unwrap_or_else(BigRational::zero)
    }

    /// The power-series part: every coefficient of a negative power is dropped.
    pub fn regular_part(&self) -> Self {
        if self.min_exponent >= 0 {
            return self.clone();
        }
        let skip = (-self.min_exponent) as usize;
        Self::from_coeffs(self.coeffs.iter().skip(skip).cloned().collect(), self.order)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self { min_exponent: self.min_exponent, coeffs: self.coeffs.iter().map(|x| x * c).collect(), order: self.order }
    }

    /// Substitutes `x -> c·x`.
    pub fn substitute_scaled(&self, c: &BigRational) -> Self {
        assert!(!c.is_zero() || self.min_exponent >= 0, "cannot scale a pole by zero");
        let mut out = self.clone();
        for (i, coeff) in out.coeffs.iter_mut().enumerate() {
            let k = self.min_exponent + i as i64;
            let factor = if k >= 0 { pow(c, k as u64) } else { pow(c, (-k) as u64).recip() };
            *coeff *= factor;
        }
        out
    }

    pub fn try_add(&self, other: &Self) -> Self {
        let min_exponent = self.min_exponent.min(other.min_exponent);
        let order = self.order.min(other.order);
        let coeffs = (min_exponent..=order).map(|k| self.get(k).unwrap() + other.get(k).unwrap()).collect();
        Self { min_exponent, coeffs, order }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, SeriesError> {
        if self.min_exponent + other.min_exponent < MIN_EXPONENT {
            let (a, b) = (self.normalized(), other.normalized());
            if a.min_exponent + b.min_exponent < MIN_EXPONENT && !a.coeffs.is_empty() && !b.coeffs.is_empty() {
                return Err(SeriesError::PoleTooDeep(a.min_exponent + b.min_exponent));
            }
            if a.coeffs.is_empty() || b.coeffs.is_empty() {
                let order = (self.order + other.min_exponent).min(other.order + self.min_exponent);
                return Ok(Self::zero(order.max(MIN_EXPONENT - 1)));
            }
            return a.try_mul(&b);
        }
        let min_exponent = self.min_exponent + other.min_exponent;
        let order = (self.order + other.min_exponent).min(other.order + self.min_exponent);
        let len = (order - min_exponent + 1).max(0) as usize;
        let mut coeffs = vec![BigRational::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate().take(len) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(len - i) {
                coeffs[i + j] += a * b;
            }
        }
        Ok(Self { min_exponent, coeffs, order })
    }

    /// Multiplicative inverse. Needs a nonzero lowest retained coefficient.
    pub fn reciprocal(&self) -> Result<Self, SeriesError> {
        let lead = match self.coeffs.first() {
            Some(c) if !c.is_zero() => c.clone(),
            _ => {
                return Err(SeriesError::ZeroLeadingCoefficient { exponent: self.min_exponent });
            }
        };
        let e = self.min_exponent;
        if -e < MIN_EXPONENT {
            return Err(SeriesError::PoleTooDeep(-e));
        }
        let len = self.coeffs.len();
        let inv_lead = lead.recip();
        let mut out: Vec<BigRational> = Vec::with_capacity(len);
        out.push(inv_lead.clone());
        for k in 1..len {
            let mut acc = BigRational::zero();
            for i in 1..=k {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    acc += a * &out[k - i];
                }
            }
            out.push(-(acc * &inv_lead));
        }
        Ok(Self { min_exponent: -e, coeffs: out, order: self.order - 2 * e })
    }

    /// Square root of a power series with constant term 1, by solving
    /// `r² = s` one coefficient at a time.
    pub fn sqrt(&self) -> Result<Self, SeriesError> {
        let c0 = self.get(0).unwrap_or_else(BigRational::zero);
        let lowest_ok = self.min_exponent == 0 || self.pole_coefficient().is_zero();
        if !lowest_ok || !c0.is_one() {
            let exponent = if lowest_ok { 0 } else { self.min_exponent };
            let found = self.get(exponent).map(|c| fmt_rational(&c)).unwrap_or_default();
            return Err(SeriesError::BadConstantTerm { exponent, found });
        }
        let s = self.regular_part();
        let len = s.coeffs.len();
        let two = BigRational::from_integer(2.into());
        let mut r: Vec<BigRational> = Vec::with_capacity(len);
        r.push(BigRational::one());
        for k in 1..len {
            let mut acc = s.coeffs[k].clone();
            for i in 1..k {
                acc -= &r[i] * &r[k - i];
            }
            r.push(acc / &two);
        }
        Ok(Self { min_exponent: 0, coeffs: r, order: s.order })
    }

    /// True when every coefficient up to `x^upto` agrees (both must know it).
    pub fn agrees_with(&self, other: &Self, upto: i64) -> bool {
        let lo = self.min_exponent.min(other.min_exponent);
        (lo..=upto).all(|k| match (self.get(k), other.get(k)) {
            (Some(a), Some(b)) => a == b,
            _ => false,
        })
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(rhs)
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_add(&-rhs)
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&-BigRational::one())
    }
}

/// Panics on a pole deeper than `x^-1`; use [`TruncatedSeries::try_mul`] to handle it.
impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        self.try_mul(rhs).expect("series product has a pole deeper than x^-1")
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.min_exponent + i as i64;
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rational(c))?,
                1 => write!(f, "{}*x", fmt_rational(c))?,
                _ => write!(f, "{}*x^{}", fmt_rational(c), k)?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(x^{})", self.order + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio};
    use proptest::prelude::*;

    fn binom_half(k: u64) -> BigRational {
        // Coefficient of y^k in (1+y)^(1/2): prod_{i<k} (1/2 - i) / k!
        let mut c = BigRational::one();
        for i in 0..k {
            c *= ratio(1, 2) - rat(i as i64);
            c /= rat(i as i64 + 1);
        }
        c
    }

    #[test]
    fn polynomial_product() {
        let s = TruncatedSeries::from_ints(&[1, 1], 6);
        assert_eq!(&s * &s, TruncatedSeries::from_ints(&[1, 2, 1], 6));
        assert_eq!(&s * &TruncatedSeries::one(6), s);
    }

    #[test]
    fn geometric_series_product_collapses() {
        let order = 12;
        let geometric = TruncatedSeries::from_ints(&[1; 13], order);
        let one_minus = TruncatedSeries::from_ints(&[1, -1], order);
        assert_eq!(&one_minus * &geometric, TruncatedSeries::one(order));
    }

    #[test]
    fn reciprocal_values() {
        let order = 10;
        let r = TruncatedSeries::from_ints(&[1, -1], order).reciprocal().unwrap();
        assert_eq!(r, TruncatedSeries::from_ints(&[1; 11], order));
        assert_eq!(TruncatedSeries::one(order).reciprocal().unwrap(), TruncatedSeries::one(order));

        let two_plus = TruncatedSeries::from_ints(&[2, 1], order);
        let inv = two_plus.reciprocal().unwrap();
        let expected: Vec<_> = (0..=order).map(|k| ratio(if k % 2 == 0 { 1 } else { -1 }, 1 << (k + 1))).collect();
        assert_eq!(inv.coefficients(), &expected[..]);
        assert_eq!(&inv * &two_plus, TruncatedSeries::one(order));
    }

    #[test]
    fn reciprocal_rejects_zero_constant() {
        let s = TruncatedSeries::from_ints(&[0, 1, 3], 5);
        assert_eq!(s.reciprocal(), Err(SeriesError::ZeroLeadingCoefficient { exponent: 0 }));
    }

    #[test]
    fn reciprocal_of_monomial_x_is_pole() {
        let x = TruncatedSeries::from_ints(&[0, 1], 5).normalized();
        let inv = x.reciprocal().unwrap();
        assert_eq!(inv.min_exponent(), -1);
        assert_eq!(inv.coeff(-1), rat(1));
        assert_eq!(inv.order(), 3);
    }

    #[test]
    fn sqrt_of_one_minus_four_t_matches_binomial_series() {
        let order = 15;
        let s = TruncatedSeries::from_ints(&[1, -4], order).sqrt().unwrap();
        for k in 0..=order {
            let expected = binom_half(k as u64) * pow(&rat(-4), k as u64);
            assert_eq!(s.coeff(k), expected, "k = {k}");
        }
        assert_eq!(s.coeff_range(0, 3), vec![rat(1), rat(-2), rat(-2), rat(-4)]);
        assert_eq!(TruncatedSeries::one(4).sqrt().unwrap(), TruncatedSeries::one(4));
    }

    #[test]
    fn sqrt_requires_unit_constant() {
        let s = TruncatedSeries::from_ints(&[4, 1], 5);
        assert!(matches!(s.sqrt(), Err(SeriesError::BadConstantTerm { .. })));
        let pole = TruncatedSeries::new(-1, vec![rat(1), rat(1)], 4).unwrap();
        assert!(matches!(pole.sqrt(), Err(SeriesError::BadConstantTerm { exponent: -1, .. })));
    }

    #[test]
    fn order_bookkeeping() {
        let a = TruncatedSeries::from_ints(&[1, 2, 3], 8);
        let b = TruncatedSeries::from_ints(&[1, 1], 5);
        assert_eq!((&a + &b).order(), 5);
        assert_eq!((&a * &b).order(), 5);
        let pole = TruncatedSeries::new(-1, vec![rat(1)], 5).unwrap();
        let prod = &pole * &a;
        assert_eq!(prod.min_exponent(), -1);
        // min(5 + 0, 8 - 1)
        assert_eq!(prod.order(), 5);
        assert!(pole.try_mul(&pole).is_err());
    }

    #[test]
    fn shift_strips_known_zeros() {
        let s = TruncatedSeries::from_ints(&[0, 0, 5, 1], 6);
        let d = s.shift(-3).unwrap();
        assert_eq!(d.min_exponent(), -1);
        assert_eq!(d.coeff(-1), rat(5));
        assert_eq!(d.order(), 3);
        assert!(TruncatedSeries::from_ints(&[1], 3).shift(-2).is_err());
    }

    #[test]
    fn substitution_scales_coefficients() {
        let s = TruncatedSeries::from_ints(&[1, 1, 1], 2).substitute_scaled(&rat(3));
        assert_eq!(s, TruncatedSeries::from_ints(&[1, 3, 9], 2));
    }

    fn arb_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
        prop::collection::vec((-20i64..20, 1i64..6), (order + 1) as usize)
            .prop_map(move |cs| TruncatedSeries::from_coeffs(cs.into_iter().map(|(n, d)| ratio(n, d)).collect(), order))
    }

    fn arb_unit_series(order: i64) -> impl Strategy<Value = TruncatedSeries> {
        arb_series(order).prop_map(move |s| {
            let mut c = s.coefficients().to_vec();
            c[0] = rat(1);
            TruncatedSeries::from_coeffs(c, order)
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn ring_axioms(a in arb_series(8), b in arb_series(8), c in arb_series(8)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn sqrt_round_trip(s in arb_unit_series(10)) {
            let r = s.sqrt().unwrap();
            prop_assert_eq!(r.coeff(0), rat(1));
            prop_assert_eq!(&r * &r, s);
        }

        #[test]
        fn reciprocal_round_trip(s in arb_unit_series(10), lead in 1i64..9) {
            let s = s.scale(&rat(lead));
            let inv = s.reciprocal().unwrap();
            prop_assert_eq!(&inv * &s, TruncatedSeries::one(10));
        }
    }
}
