//! Jacobi polynomials and the generating functions of `a_n(L)`, expanded as
//! exact truncated series.
//!
//! With `x = (L+1)/(L−1)` and `s = (L−1)t`, the Jacobi radical
//! `sqrt(1 − 2xs + s²)` becomes `ρ(t;L) = sqrt(1 − 2(L+1)t + (L−1)²t²)`, so
//!
//! * `Σ T(2n,n;L) tⁿ   = G⁽⁰'⁰⁾(x, s) = 1/ρ`
//! * `Σ T(2n+2,n;L) tⁿ = G⁽²'⁰⁾(x, s) = 4 / (ρ (1 − (L−1)t + ρ)²)`
//!
//! and `𝒢(t;L) = Σ a_n tⁿ` has a `1/t` term in each of its closed forms that
//! must cancel exactly.

use std::env;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::exact_algebra::{fmt_rational, pow, rat, rat_from_int, ExactRational, SeriesError, TruncatedSeries};
use crate::sequences::{binomial, pascal_t};

/// Default number of series terms.
pub const DEFAULT_ORDER: i64 = 30;

/// Environment variable overriding [`DEFAULT_ORDER`].
pub const ORDER_ENV: &str = "HF_DEFAULT_ORDER";

/// `HF_DEFAULT_ORDER` if set to a positive integer, else [`DEFAULT_ORDER`].
pub fn default_order() -> i64 {
    env::var(ORDER_ENV).ok().and_then(|v| v.trim().parse::<i64>().ok()).filter(|&v| v > 0).unwrap_or(DEFAULT_ORDER)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenFuncError {
    #[error("the substitution x = (L+1)/(L-1) is singular at L = 1")]
    SingularAtOne,
    #[error("{what}: pole coefficient {coefficient} did not cancel")]
    PoleNotCancelled { what: &'static str, coefficient: String },
    #[error(transparent)]
    Series(#[from] SeriesError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct JacobiParams {
    pub a: u32,
    pub b: u32,
}

impl JacobiParams {
    pub const LEGENDRE: Self = Self { a: 0, b: 0 };
    pub const A2_B0: Self = Self { a: 2, b: 0 };
}

/// `P_n^{(a,b)}(x) = 2^{-n} Σ_k C(n+a,k) C(n+b,n−k) (x−1)^{n−k} (x+1)^k`.
pub fn jacobi_poly(n: u32, p: JacobiParams, x: &ExactRational) -> ExactRational {
    let n64 = n as u64;
    let xm = x - rat(1);
    let xp = x + rat(1);
    let mut sum = ExactRational::zero();
    for k in 0..=n64 {
        let c = binomial(n64 + p.a as u64, k as i64) * binomial(n64 + p.b as u64, (n64 - k) as i64);
        if c.is_zero() {
            continue;
        }
        sum += rat_from_int(c) * pow(&xm, n64 - k) * pow(&xp, k);
    }
    sum / pow(&rat(2), n64)
}

/// `2^{a+b} / (φ (1 − t + φ)^a (1 + t + φ)^b)` with `φ = sqrt(1 − 2xt + t²)`.
pub fn jacobi_genfun_series(p: JacobiParams, x: &ExactRational, order: i64) -> TruncatedSeries {
    let radicand = TruncatedSeries::from_coeffs(vec![rat(1), rat(-2) * x, rat(1)], order);
    let phi = radicand.sqrt().expect("constant term is 1");
    let one_minus_t = TruncatedSeries::from_ints(&[1, -1], order);
    let one_plus_t = TruncatedSeries::from_ints(&[1, 1], order);
    let mut denom = phi.clone();
    let left = &one_minus_t + &phi;
    let right = &one_plus_t + &phi;
    for _ in 0..p.a {
        denom = &denom * &left;
    }
    for _ in 0..p.b {
        denom = &denom * &right;
    }
    let numer = pow(&rat(2), (p.a + p.b) as u64);
    denom.reciprocal().expect("constant term is 2^{a+b}").scale(&numer)
}

fn singular_x(l: &ExactRational) -> Result<ExactRational, GenFuncError> {
    if l.is_one() {
        return Err(GenFuncError::SingularAtOne);
    }
    Ok((l + rat(1)) / (l - rat(1)))
}

/// `Σ P_n^{(a,b)}((L+1)/(L−1)) ((L−1)t)ⁿ`.
fn substituted_jacobi(p: JacobiParams, l: &ExactRational, order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let x = singular_x(l)?;
    Ok(jacobi_genfun_series(p, &x, order).substitute_scaled(&(l - rat(1))))
}

/// Checks the Jacobi representations of the four `T`-sums, coefficient by
/// coefficient for `n <= n_max`:
///
/// * `T(2n,n;L)     = (L−1)ⁿ P_n^{(0,0)}(x)`
/// * `T(2n+2,n;L)   = (L−1)ⁿ P_n^{(2,0)}(x)`
/// * `Σ T(2n,n−1;L) tⁿ   = t · G⁽²'⁰⁾(x, (L−1)t)`
/// * `Σ T(2n+2,n+1;L) tⁿ = (G⁽⁰'⁰⁾(x, (L−1)t) − 1) / t`
pub fn t_sum_identities(l: &ExactRational, n_max: usize) -> Result<bool, GenFuncError> {
    let x = singular_x(l)?;
    let lm1 = l - rat(1);
    let order = n_max as i64 + 2;
    let g00 = substituted_jacobi(JacobiParams::LEGENDRE, l, order)?;
    let g20 = substituted_jacobi(JacobiParams::A2_B0, l, order)?;
    let shifted_g20 = g20.shift(1)?;
    let shifted_g00 = (&g00 - &TruncatedSeries::one(order)).shift(-1)?;

    for n in 0..=n_max as u64 {
        let scale = pow(&lm1, n);
        let k = n as i64;
        let checks = [
            pascal_t(2 * n, k, l) == &scale * jacobi_poly(n as u32, JacobiParams::LEGENDRE, &x),
            pascal_t(2 * n + 2, k, l) == &scale * jacobi_poly(n as u32, JacobiParams::A2_B0, &x),
            pascal_t(2 * n, k - 1, l) == shifted_g20.coeff(k),
            pascal_t(2 * n + 2, k + 1, l) == shifted_g00.coeff(k),
        ];
        if checks.iter().any(|ok| !ok) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `ρ(t;L) = sqrt(1 − 2(L+1)t + (L−1)²t²)`.
pub fn rho_series(l: &ExactRational, order: i64) -> TruncatedSeries {
    let lm1 = l - rat(1);
    let quad = TruncatedSeries::from_coeffs(vec![rat(1), rat(-2) * (l + rat(1)), &lm1 * &lm1], order);
    quad.sqrt().expect("constant term is 1")
}

fn inv_t(order: i64) -> TruncatedSeries {
    TruncatedSeries::monomial(-1, rat(1), order).expect("x^-1 is allowed")
}

/// The raw Laurent expansion of
/// `(t+1)/ρ · {1/t − 4/(1 − (L−1)t + ρ)²} − 1/t`, pole term included.
pub fn big_g_laurent(l: &ExactRational, order: i64) -> TruncatedSeries {
    let work = order + 2;
    let rho = rho_series(l, work);
    let one_plus_t = TruncatedSeries::from_ints(&[1, 1], work);
    let base = TruncatedSeries::from_coeffs(vec![rat(1), rat(1) - l], work);
    let shifted = &base + &rho;
    let inner = (&shifted * &shifted).reciprocal().expect("constant term is 4").scale(&rat(4));
    let bracket = &inv_t(work) - &inner;
    let front = &one_plus_t * &rho.reciprocal().expect("constant term is 1");
    (&(&front * &bracket) - &inv_t(work)).truncate(order)
}

fn regular_checked(s: &TruncatedSeries, what: &'static str) -> Result<TruncatedSeries, GenFuncError> {
    let pole = s.pole_coefficient();
    if !pole.is_zero() {
        return Err(GenFuncError::PoleNotCancelled { what, coefficient: fmt_rational(&pole) });
    }
    Ok(s.regular_part())
}

/// `𝒢(t;L) = Σ a_n tⁿ` through `t^order`, from the ρ closed form.
pub fn big_g_series(l: &ExactRational, order: i64) -> Result<TruncatedSeries, GenFuncError> {
    regular_checked(&big_g_laurent(l, order), "G(t;L) from rho")
}

/// `𝒢(t;L)` assembled from the Jacobi generating functions:
/// `(t+1)/t · G⁽⁰'⁰⁾ − (t+1) G⁽²'⁰⁾ − 1/t`. Needs `L ≠ 1`.
pub fn big_g_series_jacobi(l: &ExactRational, order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let work = order + 2;
    let g00 = substituted_jacobi(JacobiParams::LEGENDRE, l, work)?;
    let g20 = substituted_jacobi(JacobiParams::A2_B0, l, work)?;
    let one_plus_t = TruncatedSeries::from_ints(&[1, 1], work);
    let t_plus_one_over_t = one_plus_t.shift(-1)?;
    let laurent = &(&(&t_plus_one_over_t * &g00) - &(&one_plus_t * &g20)) - &inv_t(work);
    regular_checked(&laurent.truncate(order), "G(t;L) from Jacobi")
}

/// `(1/t)·((1 − sqrt(1−4t))(1+t)/(2t) − 1)`, the `L = 1` closed form.
pub fn big_g_l1_closed(order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let work = order + 3;
    let root = TruncatedSeries::from_ints(&[1, -4], work).sqrt()?;
    let numer = &(&TruncatedSeries::one(work) - &root) * &TruncatedSeries::from_ints(&[1, 1], work);
    let inner = &numer.shift(-1)?.scale(&ExactRational::new(1.into(), 2.into())) - &TruncatedSeries::one(work);
    let laurent = inner.shift(-1)?.truncate(order);
    regular_checked(&laurent, "G(t;1)")
}

/// `−1/t + (t+1)/sqrt(t²−6t+1) · {1/t − 4/(1 − t + sqrt(t²−6t+1))²}`, the `L = 2` closed form.
pub fn big_g_l2_closed(order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let work = order + 2;
    let root = TruncatedSeries::from_ints(&[1, -6, 1], work).sqrt()?;
    let base = &TruncatedSeries::from_ints(&[1, -1], work) + &root;
    let inner = (&base * &base).reciprocal()?.scale(&rat(4));
    let bracket = &inv_t(work) - &inner;
    let front = &TruncatedSeries::from_ints(&[1, 1], work) * &root.reciprocal()?;
    let laurent = (&(&front * &bracket) - &inv_t(work)).truncate(order);
    regular_checked(&laurent, "G(t;2)")
}

/// `F(z;L) = Σ a_k z^{−k−1}` as a power series in `u = 1/z`, through `u^order`.
///
/// `F(z;L) = −1 + 2(z+1)/(1 − L + z + R(z;L))` with `R(1/u;L) = ρ(u;L)/u`,
/// i.e. `−1 + 2(1+u)/(1 − (L−1)u + ρ(u))`. The constant term must vanish;
/// the coefficient of `u^{k+1}` is `a_k`.
pub fn f_series(l: &ExactRational, order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let rho = rho_series(l, order);
    let denom = &TruncatedSeries::from_coeffs(vec![rat(1), rat(1) - l], order) + &rho;
    let ratio = &TruncatedSeries::from_ints(&[2, 2], order) * &denom.reciprocal()?;
    let f = &ratio - &TruncatedSeries::one(order);
    let constant = f.coeff(0);
    if !constant.is_zero() {
        return Err(GenFuncError::PoleNotCancelled {
            what: "F(z;L) constant term",
            coefficient: fmt_rational(&constant),
        });
    }
    Ok(f)
}

/// `F(z;1) = ½{z − 1 − (z+1) sqrt(1 − 4/z)}` in `u = 1/z`.
pub fn f_l1_closed(order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let work = order + 2;
    let root = TruncatedSeries::from_ints(&[1, -4], work).sqrt()?;
    let numer = &TruncatedSeries::from_ints(&[1, -1], work) - &(&TruncatedSeries::from_ints(&[1, 1], work) * &root);
    let laurent = numer.shift(-1)?.scale(&ExactRational::new(1.into(), 2.into())).truncate(order);
    regular_checked(&laurent, "F(z;1)")
}

/// `F(z;2) = −(1/(2z)){1 + z(2 − z + (z+1) sqrt(1 − 6/z + 1/z²))}` in `u = 1/z`,
/// rearranged as `−u/2 − 1 + (1 − (1+u)ρ(u;2)) / (2u)`.
pub fn f_l2_closed(order: i64) -> Result<TruncatedSeries, GenFuncError> {
    let work = order + 2;
    let root = TruncatedSeries::from_ints(&[1, -6, 1], work).sqrt()?;
    let tail = (&TruncatedSeries::one(work) - &(&TruncatedSeries::from_ints(&[1, 1], work) * &root))
        .shift(-1)?
        .scale(&ExactRational::new(1.into(), 2.into()));
    let head = TruncatedSeries::from_coeffs(vec![rat(-1), ExactRational::new((-1).into(), 2.into())], work);
    let laurent = (&head + &tail).truncate(order);
    regular_checked(&laurent, "F(z;2)")
}
