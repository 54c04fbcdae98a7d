//! Floating-point checks of the weight
//! `ω(x;L) = (1/2π)(1 + 1/x)·sqrt(4L − (x − L − 1)²)` on
//! `((√L−1)², (√L+1)²)`.
//!
//! Integrals are taken in `θ` with `x = L + 1 + 2√L·cos θ`, which turns
//! `∫ f(x) ω(x) dx` into `(2L/π) ∫_0^π f(x)(1 + 1/x) sin²θ dθ`. The integrand is
//! smooth even at `L = 1`, where `sin²θ / x` stays bounded as `x → 0`.

use std::f64::consts::PI;

use thiserror::Error;

use crate::exact_algebra::{to_f64, ExactRational};
use crate::opoly::{chain_coeffs, OpolyError};

/// Smallest node count accepted by [`QuadratureConfig`].
pub const MIN_NODES: usize = 16;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum WeightError {
    #[error("parameter L must be positive and finite, got {0}")]
    NonPositiveParameter(f64),
    #[error("the weight is singular at x = 0")]
    DomainError,
    #[error("node count {0} is below the minimum of {MIN_NODES}")]
    TooFewNodes(usize),
    #[error(transparent)]
    Recurrence(#[from] OpolyError),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightSpec {
    l: f64,
    support_lo: f64,
    support_hi: f64,
}

impl WeightSpec {
    pub fn new(l: f64) -> Result<Self, WeightError> {
        if !(l > 0.0 && l.is_finite()) {
            return Err(WeightError::NonPositiveParameter(l));
        }
        let root = l.sqrt();
        Ok(Self { l, support_lo: (root - 1.0).powi(2), support_hi: (root + 1.0).powi(2) })
    }

    pub fn from_exact(l: &ExactRational) -> Result<Self, WeightError> {
        Self::new(to_f64(l))
    }

    pub fn l(&self) -> f64 {
        self.l
    }

    pub fn support(&self) -> (f64, f64) {
        (self.support_lo, self.support_hi)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    /// Midpoint rule in `θ`. The integrand is even and 2π-periodic, so this
    /// converges spectrally and is exact for polynomial moments of low degree.
    ThetaMidpoint,
    /// Gauss–Legendre on `[0, π]`.
    ThetaGauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureConfig {
    node_count: usize,
    scheme: Scheme,
}

impl QuadratureConfig {
    pub fn new(node_count: usize, scheme: Scheme) -> Result<Self, WeightError> {
        if node_count < MIN_NODES {
            return Err(WeightError::TooFewNodes(node_count));
        }
        Ok(Self { node_count, scheme })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn scheme(&self) -> Scheme {
        self.scheme
    }
}

/// `ω(x;L)`; zero off the open support.
pub fn weight_eval(x: f64, spec: &WeightSpec) -> Result<f64, WeightError> {
    if x == 0.0 {
        return Err(WeightError::DomainError);
    }
    if x <= spec.support_lo || x >= spec.support_hi {
        return Ok(0.0);
    }
    let radicand = 4.0 * spec.l - (x - spec.l - 1.0).powi(2);
    Ok((1.0 + 1.0 / x) * radicand.max(0.0).sqrt() / (2.0 * PI))
}

/// Nodes and weights of the Gauss–Legendre rule on `[−1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let p = if n == 0 { 1.0 } else { p1 };
            let pm1 = if n <= 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * p - pm1) / (z * z - 1.0);
            let dz = p / dp;
            z -= dz;
            if dz.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - z * z) * dp * dp);
        nodes[i] = -z;
        nodes[n - 1 - i] = z;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    (nodes, weights)
}

/// A `θ`-rule on `[0, π]` together with the mapped abscissae `x(θ)` and the
/// combined factors `(2L/π)·w_i·(1 + 1/x_i)·sin²θ_i`.
struct ThetaRule {
    xs: Vec<f64>,
    factors: Vec<f64>,
}

impl ThetaRule {
    fn new(spec: &WeightSpec, cfg: &QuadratureConfig) -> Self {
        let n = cfg.node_count;
        let (thetas, widths): (Vec<f64>, Vec<f64>) = match cfg.scheme {
            Scheme::ThetaMidpoint => {
                let h = PI / n as f64;
                ((0..n).map(|i| (i as f64 + 0.5) * h).collect(), vec![h; n])
            }
            Scheme::ThetaGauss => {
                let (z, w) = gauss_legendre(n);
                (z.iter().map(|zi| PI * (zi + 1.0) / 2.0).collect(), w.iter().map(|wi| wi * PI / 2.0).collect())
            }
        };
        let scale = 2.0 * spec.l / PI;
        let root = spec.l.sqrt();
        let mut xs = Vec::with_capacity(n);
        let mut factors = Vec::with_capacity(n);
        for (theta, width) in thetas.into_iter().zip(widths) {
            let x = spec.l + 1.0 + 2.0 * root * theta.cos();
            let s = theta.sin();
            xs.push(x);
            factors.push(scale * width * (s * s + s * s / x));
        }
        Self { xs, factors }
    }

    fn integrate(&self, mut f: impl FnMut(f64) -> f64) -> f64 {
        self.xs.iter().zip(&self.factors).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// `∫ xⁿ ω(x;L) dx`.
pub fn moment_quadrature(spec: &WeightSpec, n: u32, cfg: &QuadratureConfig) -> f64 {
    ThetaRule::new(spec, cfg).integrate(|x| x.powi(n as i32))
}

/// Moments `0 ..= n_max` from one rule.
pub fn moments_quadrature(spec: &WeightSpec, n_max: u32, cfg: &QuadratureConfig) -> Vec<f64> {
    let rule = ThetaRule::new(spec, cfg);
    (0..=n_max).map(|n| rule.integrate(|x| x.powi(n as i32))).collect()
}

/// Gram matrix of the final monic polynomials under `ω`.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalityReport {
    /// `max_{i<j} |∫Q_iQ_jω| / (‖Q_i‖‖Q_j‖)`.
    pub max_residual: f64,
    /// `∫ Q_k² ω` for `k = 0 ..= n_max`.
    pub norms: Vec<f64>,
}

/// Integrates `Q_i Q_j ω` for `i <= j <= n_max`, with `Q_k` built from the
/// chain coefficients of `L`.
pub fn orthogonality_check(
    l: &ExactRational,
    n_max: usize,
    cfg: &QuadratureConfig,
) -> Result<OrthogonalityReport, WeightError> {
    let spec = WeightSpec::from_exact(l)?;
    let (coeffs, _) = chain_coeffs(l, n_max.max(1))?;
    let alpha: Vec<f64> = coeffs.alpha.iter().map(to_f64).collect();
    let beta: Vec<f64> = coeffs.beta.iter().map(to_f64).collect();
    let rule = ThetaRule::new(&spec, cfg);

    let size = n_max + 1;
    let mut gram = vec![vec![0.0; size]; size];
    let mut q = vec![0.0; size];
    for (&x, &w) in rule.xs.iter().zip(&rule.factors) {
        q[0] = 1.0;
        for k in 0..n_max {
            let prev = if k == 0 { 0.0 } else { q[k - 1] };
            q[k + 1] = (x - alpha[k]) * q[k] - if k == 0 { 0.0 } else { beta[k] * prev };
        }
        for i in 0..size {
            for j in i..size {
                gram[i][j] += w * q[i] * q[j];
            }
        }
    }
    let norms: Vec<f64> = (0..size).map(|k| gram[k][k]).collect();
    let mut max_residual = 0.0f64;
    for i in 0..size {
        for j in i + 1..size {
            max_residual = max_residual.max(gram[i][j].abs() / (norms[i] * norms[j]).sqrt());
        }
    }
    Ok(OrthogonalityReport { max_residual, norms })
}
