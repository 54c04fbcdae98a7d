//! Three-term recurrence coefficients of the monic polynomials orthogonal for
//! the functional `𝒰[xⁿ] = a_n(L)`, derived two independent ways.
//!
//! **Modification chain.** Start from monic Chebyshev polynomials of the second
//! kind on `(−1, 1)` (the *base* stage), multiply the weight by `x − c` with
//! `c = −(L+2)/(2√L)` (*hat*), map `(−1,1)` affinely onto
//! `((√L−1)², (√L+1)²)` (*tilde*), rescale by `2L/π` (*breve*), and finally
//! divide by `x` (*final*). Base and hat involve `π` and `√L`, so they are only
//! evaluated in `f64`; from the tilde stage on every coefficient is a ratio of
//! `ψ̂` values and stays exact.
//!
//! **Stieltjes procedure.** Build `Q_0, Q_1, …` directly from the moments.
//!
//! Either set of coefficients rebuilds the moments through the J-fraction
//! `a_0 / (1 − α_0 x − β_1 x² / (1 − α_1 x − …))` and the Hankel determinants
//! through `h_n = Π_{k<n} β_k^{n−k}`.

use std::f64::consts::PI;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{fmt_rational, pow, rat, to_f64, ExactRational, TruncatedSeries};
use crate::hankel::surd_states;
use crate::sequences::SequenceWindow;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OpolyError {
    #[error("parameter L must be positive, got {0}")]
    NonPositiveParameter(String),
    #[error("expected a {expected:?} stage, got {found:?}")]
    WrongStage { expected: Stage, found: Stage },
    #[error("auxiliary r_{index} vanished; the functional is not positive definite")]
    DivisionByZeroR { index: i64 },
    #[error("U[Q_{index}^2] vanished; the functional is not positive definite")]
    ZeroNorm { index: usize },
    #[error("need moments a_0..a_{} but only {available} are available", needed - 1)]
    InsufficientMoments { needed: usize, available: usize },
    #[error("{available} recurrence levels determine the series only through x^{}, asked for x^{requested}", 2 * available - 1)]
    InsufficientDepth { requested: i64, available: usize },
    #[error("index {0} is out of range")]
    InvalidIndex(i64),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Chain,
    Moments,
}

/// `(α_k, β_k)` for `k < len`, with `β_0 = 𝒰[1] = a_0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceCoeffs {
    pub alpha: Vec<ExactRational>,
    pub beta: Vec<ExactRational>,
    pub provenance: Provenance,
}

impl RecurrenceCoeffs {
    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.beta.iter().all(|b| b.is_positive())
    }

    /// Coefficient-wise equality, ignoring provenance.
    pub fn same_values(&self, other: &Self) -> bool {
        self.alpha == other.alpha && self.beta == other.beta
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Base,
    Hat,
    Tilde,
    Breve,
    Final,
}

/// A stage that involves `π` or `√L`, evaluated in floating point.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatStage {
    pub stage: Stage,
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
}

/// An exact stage of the chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainStage {
    pub stage: Stage,
    pub l: ExactRational,
    pub alpha: Vec<ExactRational>,
    pub beta: Vec<ExactRational>,
    /// When set, the true `β_0` is `beta[0] · π`.
    pub beta0_times_pi: bool,
}

/// The auxiliary sequence `r_{−1}, r_0, r_1, …` of division by `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GautschiState {
    r: Vec<ExactRational>,
}

impl GautschiState {
    /// `r_n` for `n >= −1`.
    pub fn r(&self, n: i64) -> &ExactRational {
        &self.r[(n + 1) as usize]
    }

    /// All values, starting at `r_{−1}`.
    pub fn values(&self) -> &[ExactRational] {
        &self.r
    }
}

fn check_l(l: &ExactRational) -> Result<(), OpolyError> {
    if l.is_positive() {
        Ok(())
    } else {
        Err(OpolyError::NonPositiveParameter(fmt_rational(l)))
    }
}

/// `c = −(L+2)/(2√L)`, the zero of the linear factor of the hat weight.
pub fn modification_point(l: f64) -> f64 {
    -(l + 2.0) / (2.0 * l.sqrt())
}

/// Monic Chebyshev-II coefficients: `α*_n = 0`, `β*_0 = π/2`, `β*_n = 1/4`.
pub fn base_stage(n_max: usize) -> FloatStage {
    let beta = (0..n_max).map(|n| if n == 0 { PI / 2.0 } else { 0.25 }).collect();
    FloatStage { stage: Stage::Base, alpha: vec![0.0; n_max], beta }
}

/// `S_0(c) ..= S_{n_max}(c)` by the monic Chebyshev-II recurrence.
pub fn chebyshev_values(c: f64, n_max: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n_max + 1);
    let (mut prev, mut cur) = (0.0, 1.0);
    for n in 0..=n_max {
        out.push(cur);
        let beta = if n == 0 { 0.0 } else { 0.25 };
        let next = c * cur - beta * prev;
        prev = cur;
        cur = next;
    }
    out
}

/// `λ_n = S_n(c) = (−1)ⁿ ψ̂_{n+1} / (2·4ⁿ·L^{n/2})`, for `n >= −1`.
pub fn lambda_closed(l: &ExactRational, n: i64) -> f64 {
    if n < 0 {
        return 0.0;
    }
    let psihat = &surd_states(l, n as usize + 1)[n as usize + 1].psihat;
    let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
    let lf = to_f64(l);
    sign * to_f64(psihat) / (2.0 * 4f64.powi(n as i32) * lf.powf(n as f64 / 2.0))
}

/// Coefficients for `(x − c)·sqrt(1 − x²)` by the Christoffel formulas.
/// `β̂_0` is the total mass `−c·π/2`.
pub fn hat_stage(l: f64, n_max: usize) -> FloatStage {
    let c = modification_point(l);
    let lambda = chebyshev_values(c, n_max + 1);
    let base = base_stage(n_max + 2);
    let alpha =
        (0..n_max).map(|n| c - lambda[n + 1] / lambda[n] - base.beta[n + 1] * lambda[n] / lambda[n + 1]).collect();
    let beta = (0..n_max)
        .map(|n| {
            if n == 0 {
                -c * base.beta[0]
            } else {
                base.beta[n] * lambda[n - 1] * lambda[n + 1] / (lambda[n] * lambda[n])
            }
        })
        .collect();
    FloatStage { stage: Stage::Hat, alpha, beta }
}

/// The hat stage pushed through `x ↦ (x − L − 1)/(2√L)` in `f64`.
pub fn hat_to_tilde_float(hat: &FloatStage, l: f64) -> FloatStage {
    let a = 1.0 / (2.0 * l.sqrt());
    let b = -(l + 1.0) / (2.0 * l.sqrt());
    let alpha = hat.alpha.iter().map(|al| (al - b) / a).collect();
    let beta = hat.beta.iter().enumerate().map(|(n, be)| if n == 0 { be / a } else { be / (a * a) }).collect();
    FloatStage { stage: Stage::Tilde, alpha, beta }
}

/// Exact tilde coefficients:
/// `α̃_n = −1 + ψ̂_{n+2}/(2ψ̂_{n+1}) + 2L·ψ̂_{n+1}/ψ̂_{n+2}`,
/// `β̃_n = L·ψ̂_n ψ̂_{n+2}/ψ̂_{n+1}²` for `n ≥ 1`, and `β̃_0 = (L+2)/2 · π`.
pub fn tilde_coeffs(l: &ExactRational, n_max: usize) -> Result<ChainStage, OpolyError> {
    check_l(l)?;
    let states = surd_states(l, n_max + 1);
    let psi = |i: usize| &states[i].psihat;
    let half = ExactRational::new(1.into(), 2.into());
    let alpha =
        (0..n_max).map(|n| rat(-1) + &half * psi(n + 2) / psi(n + 1) + rat(2) * l * psi(n + 1) / psi(n + 2)).collect();
    let beta = (0..n_max)
        .map(|n| if n == 0 { (l + rat(2)) / rat(2) } else { l * psi(n) * psi(n + 2) / (psi(n + 1) * psi(n + 1)) })
        .collect();
    Ok(ChainStage { stage: Stage::Tilde, l: l.clone(), alpha, beta, beta0_times_pi: true })
}

/// Rescales the tilde weight by `2L/π`: `β̆_0 = L(L+2)`, everything else unchanged.
pub fn breve_coeffs(stage: &ChainStage) -> Result<ChainStage, OpolyError> {
    if stage.stage != Stage::Tilde {
        return Err(OpolyError::WrongStage { expected: Stage::Tilde, found: stage.stage });
    }
    let mut out = stage.clone();
    out.stage = Stage::Breve;
    if let Some(b0) = out.beta.first_mut() {
        *b0 = &*b0 * rat(2) * &stage.l;
    }
    out.beta0_times_pi = false;
    Ok(out)
}

/// Divides the breve weight by `x` (`d = 0`):
///
/// `r_{−1} = −(L+1)`, `r_n = −(ᾰ_n + β̆_n / r_{n−1})`, then
/// `α_0 = ᾰ_0 + r_0`, `α_k = ᾰ_k + r_k − r_{k−1}`, `β_0 = −r_{−1}`,
/// `β_k = β̆_{k−1} r_{k−1} / r_{k−2}`.
///
/// Produces `min(n_max, stage length)` coefficient pairs.
pub fn gautschi_divide(stage: &ChainStage, n_max: usize) -> Result<(RecurrenceCoeffs, GautschiState), OpolyError> {
    if stage.stage != Stage::Breve {
        return Err(OpolyError::WrongStage { expected: Stage::Breve, found: stage.stage });
    }
    let n = n_max.min(stage.alpha.len());
    let mut r = Vec::with_capacity(n + 1);
    r.push(-(&stage.l + rat(1)));
    for k in 0..n {
        let prev = &r[k];
        if prev.is_zero() {
            return Err(OpolyError::DivisionByZeroR { index: k as i64 - 1 });
        }
        let next = -(&stage.alpha[k] + &stage.beta[k] / prev);
        r.push(next);
    }
    if let Some(pos) = r.iter().position(|v| v.is_zero()) {
        return Err(OpolyError::DivisionByZeroR { index: pos as i64 - 1 });
    }
    let state = GautschiState { r };
    let mut alpha = Vec::with_capacity(n);
    let mut beta = Vec::with_capacity(n);
    for k in 0..n {
        let ki = k as i64;
        alpha.push(if k == 0 { &stage.alpha[0] + state.r(0) } else { &stage.alpha[k] + state.r(ki) - state.r(ki - 1) });
        beta.push(if k == 0 { -state.r(-1) } else { &stage.beta[k - 1] * state.r(ki - 1) / state.r(ki - 2) });
    }
    Ok((RecurrenceCoeffs { alpha, beta, provenance: Provenance::Chain }, state))
}

/// The whole exact chain: tilde, breve, then division by `x`.
pub fn chain_coeffs(l: &ExactRational, n_max: usize) -> Result<(RecurrenceCoeffs, GautschiState), OpolyError> {
    let breve = breve_coeffs(&tilde_coeffs(l, n_max)?)?;
    gautschi_divide(&breve, n_max)
}

/// `r_n = −(ψ̂_{n+1}/ψ̂_{n+2})·(σ_{n+2}/σ_{n+1})`.
pub fn r_closed_form(l: &ExactRational, n: i64) -> Result<ExactRational, OpolyError> {
    if n < 0 {
        return Err(OpolyError::InvalidIndex(n));
    }
    let n = n as usize;
    let s = surd_states(l, n + 2);
    Ok(-(&s[n + 1].psihat / &s[n + 2].psihat) * (&s[n + 2].sigma / &s[n + 1].sigma))
}

/// `β̆_0 ⋯ β̆_{n−1} = (Lⁿ/2)·ψ̂_{n+1}/ψ̂_n` for `n ≥ 1`.
pub fn breve_product_closed(l: &ExactRational, n: usize) -> Result<ExactRational, OpolyError> {
    if n == 0 {
        return Err(OpolyError::InvalidIndex(0));
    }
    let s = surd_states(l, n + 1);
    Ok(pow(l, n as u64) / rat(2) * &s[n + 1].psihat / &s[n].psihat)
}

/// Output of the Stieltjes procedure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StieltjesRun {
    pub coeffs: RecurrenceCoeffs,
    /// `Q_0 ..= Q_{n_max}`, coefficients from the constant term up.
    pub polys: Vec<Vec<ExactRational>>,
    /// `𝒰[Q_k²]` for `k < n_max`.
    pub norms: Vec<ExactRational>,
}

fn functional(moments: &[ExactRational], p: &[ExactRational], q: &[ExactRational], shift: usize) -> ExactRational {
    let mut acc = ExactRational::zero();
    for (i, pi) in p.iter().enumerate() {
        if pi.is_zero() {
            continue;
        }
        for (j, qj) in q.iter().enumerate() {
            acc += pi * qj * &moments[i + j + shift];
        }
    }
    acc
}

/// Stieltjes procedure over exact moments, keeping the polynomials and norms.
pub fn stieltjes_procedure(seq: &SequenceWindow, n_max: usize) -> Result<StieltjesRun, OpolyError> {
    let moments = seq.terms();
    let needed = 2 * n_max;
    if moments.len() < needed {
        return Err(OpolyError::InsufficientMoments { needed, available: moments.len() });
    }
    let mut polys: Vec<Vec<ExactRational>> = vec![vec![ExactRational::one()]];
    let mut prev_poly: Vec<ExactRational> = Vec::new();
    let mut norms: Vec<ExactRational> = Vec::with_capacity(n_max);
    let mut alpha = Vec::with_capacity(n_max);
    let mut beta = Vec::with_capacity(n_max);
    for n in 0..n_max {
        let q = polys[n].clone();
        let norm = functional(moments, &q, &q, 0);
        if norm.is_zero() {
            return Err(OpolyError::ZeroNorm { index: n });
        }
        let a = functional(moments, &q, &q, 1) / &norm;
        let b = if n == 0 { norm.clone() } else { &norm / &norms[n - 1] };

        // Q_{n+1} = (x − α_n) Q_n − β_n Q_{n−1}
        let mut next = vec![ExactRational::zero(); q.len() + 1];
        for (i, c) in q.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= &a * c;
        }
        if n > 0 {
            for (i, c) in prev_poly.iter().enumerate() {
                next[i] -= &b * c;
            }
        }
        prev_poly = q;
        polys.push(next);
        norms.push(norm);
        alpha.push(a);
        beta.push(b);
    }
    Ok(StieltjesRun { coeffs: RecurrenceCoeffs { alpha, beta, provenance: Provenance::Moments }, polys, norms })
}

/// `(α_k, β_k)` for `k < n_max` from the moments in `seq`.
pub fn stieltjes_from_moments(seq: &SequenceWindow, n_max: usize) -> Result<RecurrenceCoeffs, OpolyError> {
    stieltjes_procedure(seq, n_max).map(|run| run.coeffs)
}

/// Expands the finite J-fraction built from `coeffs` through `x^order`.
///
/// `m` levels fix the moments through `x^{2m−1}`; asking for more is an error.
pub fn jfraction_series(coeffs: &RecurrenceCoeffs, order: i64) -> Result<TruncatedSeries, OpolyError> {
    let m = coeffs.len();
    if m == 0 || order > 2 * m as i64 - 1 {
        return Err(OpolyError::InsufficientDepth { requested: order, available: m });
    }
    let level = |k: usize| TruncatedSeries::from_coeffs(vec![rat(1), -coeffs.alpha[k].clone()], order);
    let mut tail = level(m - 1);
    for k in (0..m - 1).rev() {
        let inv = tail.reciprocal().expect("constant term is 1");
        let x2 = TruncatedSeries::monomial(2, coeffs.beta[k + 1].clone(), order).expect("x^2 is regular");
        tail = &level(k) - &(&x2 * &inv);
    }
    Ok(tail.reciprocal().expect("constant term is 1").scale(&coeffs.beta[0]))
}

/// `h_n = Π_{k=0}^{n−1} β_k^{n−k}` via `h_n = (β_0 ⋯ β_{n−1})·h_{n−1}`.
pub fn h_from_products(coeffs: &RecurrenceCoeffs, n: usize) -> Result<ExactRational, OpolyError> {
    if coeffs.len() < n {
        return Err(OpolyError::InsufficientDepth { requested: n as i64, available: coeffs.len() });
    }
    let mut h = ExactRational::one();
    let mut running = ExactRational::one();
    for b in coeffs.beta.iter().take(n) {
        running *= b;
        h *= &running;
    }
    Ok(h)
}

/// `‖Q_{n−1}‖² = (L^{n−1}/2)·σ_n/σ_{n−1}` for `n ≥ 1`.
pub fn norm_closed_form(l: &ExactRational, n: usize) -> Result<ExactRational, OpolyError> {
    if n == 0 {
        return Err(OpolyError::InvalidIndex(0));
    }
    let s = surd_states(l, n);
    Ok(pow(l, n as u64 - 1) / rat(2) * &s[n].sigma / &s[n - 1].sigma)
}

/// Largest relative gap between the float hat stage mapped to tilde and the
/// exact tilde coefficients, over `n < n_max` (both `α` and `β`).
pub fn hat_tilde_discrepancy(l: &ExactRational, n_max: usize) -> Result<f64, OpolyError> {
    let exact = tilde_coeffs(l, n_max)?;
    let lf = to_f64(l);
    let mapped = hat_to_tilde_float(&hat_stage(lf, n_max), lf);
    let rel = |approx: f64, exact: f64| ((approx - exact) / exact).abs();
    let mut worst = 0.0f64;
    for n in 0..n_max {
        worst = worst.max(rel(mapped.alpha[n], to_f64(&exact.alpha[n])));
        let beta_exact = if n == 0 { to_f64(&exact.beta[0]) * PI } else { to_f64(&exact.beta[n]) };
        worst = worst.max(rel(mapped.beta[n], beta_exact));
    }
    Ok(worst)
}
