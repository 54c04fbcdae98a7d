//! Hankel determinants and the closed-form Hankel transform.
//!
//! `h_n` is the determinant of the `n × n` matrix `[a_{i+j}]_{i,j=0}^{n-1}`,
//! so `h_1 = a_0` and `h_0 = 1`. Reading the matrix as `[a_{i+j}]_{i,j=0}^{n}`
//! instead would shift every index by one.
//!
//! The closed form is carried by three sequences that avoid the surd
//! `ξ = sqrt(L²+4)`: with `t₁,₂ = L + 2 ± ξ`,
//!
//! * `φ_n = t₁ⁿ + t₂ⁿ`
//! * `ψ̂_n = (t₁ⁿ − t₂ⁿ) / ξ`
//! * `σ_n = L·ψ̂_n + φ_n`
//!
//! all satisfy `x_{n+1} = 2(L+2)·x_n − 4L·x_{n−1}`, and
//! `h_n = L^{n(n−1)/2} · σ_n / 2^{n+1}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{pow, rat, rat_from_int, ExactInt, ExactRational};
use crate::sequences::{binomial, SequenceWindow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HankelError {
    #[error("window holds {available} terms but a {dim}x{dim} Hankel matrix needs {needed}")]
    InsufficientTerms { dim: usize, needed: usize, available: usize },
    #[error("identity indices need 0 <= j <= k, got j = {j}, k = {k}")]
    InvalidIndices { j: i64, k: i64 },
}

/// `n × n` Hankel matrix stored by its antidiagonals `a_0 ..= a_{2n-2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelMatrix {
    dim: usize,
    antidiagonals: Vec<ExactRational>,
}

impl HankelMatrix {
    pub fn from_terms(terms: &[ExactRational], dim: usize) -> Result<Self, HankelError> {
        let needed = if dim == 0 { 0 } else { 2 * dim - 1 };
        if terms.len() < needed {
            return Err(HankelError::InsufficientTerms { dim, needed, available: terms.len() });
        }
        Ok(Self { dim, antidiagonals: terms[..needed].to_vec() })
    }

    pub fn from_window(seq: &SequenceWindow, dim: usize) -> Result<Self, HankelError> {
        Self::from_terms(seq.terms(), dim)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entry(&self, i: usize, j: usize) -> &ExactRational {
        &self.antidiagonals[i + j]
    }

    pub fn rows(&self) -> Vec<Vec<ExactRational>> {
        (0..self.dim).map(|i| (0..self.dim).map(|j| self.entry(i, j).clone()).collect()).collect()
    }

    /// Exact determinant: Bareiss elimination on the matrix scaled to integers.
    pub fn determinant(&self) -> ExactRational {
        if self.dim == 0 {
            return ExactRational::one();
        }
        let common = self.antidiagonals.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let scaled: Vec<Vec<BigInt>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        let a = self.entry(i, j);
                        a.numer() * (&common / a.denom())
                    })
                    .collect()
            })
            .collect();
        let det = bareiss_det(scaled);
        let scale = pow(&rat_from_int(common), self.dim as u64);
        rat_from_int(det) / scale
    }
}

/// Fraction-free (Bareiss) determinant of a square integer matrix.
///
/// Every intermediate division is exact; row swaps handle zero pivots.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign_negative = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_negative = !sign_negative;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign_negative {
        -det
    } else {
        det
    }
}

/// Determinant by ordinary Gaussian elimination over the rationals.
pub fn gaussian_det(mut m: Vec<Vec<ExactRational>>) -> ExactRational {
    let n = m.len();
    let mut det = ExactRational::one();
    for k in 0..n {
        let pivot = match (k..n).find(|&r| !m[r][k].is_zero()) {
            Some(p) => p,
            None => return ExactRational::zero(),
        };
        if pivot != k {
            m.swap(k, pivot);
            det = -det;
        }
        let p = m[k][k].clone();
        det *= &p;
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = &m[i][k] / &p;
            let (top, bottom) = m.split_at_mut(i);
            for (target, pivot) in bottom[0][k..].iter_mut().zip(&top[k][k..]) {
                *target -= &factor * pivot;
            }
        }
    }
    det
}

/// `h_n` of the window by direct determinant evaluation.
pub fn hankel_det(seq: &SequenceWindow, n: usize) -> Result<ExactRational, HankelError> {
    Ok(HankelMatrix::from_window(seq, n)?.determinant())
}

/// `(φ_n, ψ̂_n, σ_n)` at one index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdState {
    pub index: usize,
    pub phi: ExactRational,
    pub psihat: ExactRational,
    pub sigma: ExactRational,
}

/// States `0 ..= n_max`; integral whenever `L` is.
pub fn surd_states(l: &ExactRational, n_max: usize) -> Vec<SurdState> {
    let trace = rat(2) * (l + rat(2));
    let det = rat(4) * l;
    let step = |prev: &ExactRational, cur: &ExactRational| &trace * cur - &det * prev;

    let mut phi = vec![rat(2), trace.clone()];
    let mut psihat = vec![rat(0), rat(2)];
    for n in 2..=n_max {
        phi.push(step(&phi[n - 2], &phi[n - 1]));
        psihat.push(step(&psihat[n - 2], &psihat[n - 1]));
    }
    (0..=n_max)
        .map(|n| SurdState {
            index: n,
            sigma: l * &psihat[n] + &phi[n],
            phi: phi[n].clone(),
            psihat: psihat[n].clone(),
        })
        .collect()
}

/// Closed-form `h_n` plus the integrality flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub value: ExactRational,
    /// Set when `L` is an integer but `h_n` is not; that would contradict
    /// integrality of a determinant of integers.
    pub non_integer: bool,
}

pub fn h_closed_form(l: &ExactRational, n: usize) -> ClosedForm {
    if n == 0 {
        return ClosedForm { value: ExactRational::one(), non_integer: false };
    }
    let sigma = surd_states(l, n).pop().expect("n_max >= 1").sigma;
    let exponent = (n * (n - 1) / 2) as u64;
    let value = pow(l, exponent) * sigma / rat_from_int(BigInt::one() << (n + 1));
    let non_integer = l.is_integer() && !value.is_integer();
    ClosedForm { value, non_integer }
}

/// The polynomial form of `h_n(L)`, expanded binomially in `L+2` and `L²+4`.
pub fn h_polynomial_form(l: &ExactRational, n: usize) -> ExactRational {
    let lp2 = l + rat(2);
    let xi2 = l * l + rat(4);
    let nn = n as u64;
    let mut odd = ExactRational::zero();
    let mut i = 0u64;
    while 2 * i < nn {
        let c = rat_from_int(binomial(nn, (2 * i + 1) as i64));
        odd += c * l * pow(&lp2, nn - 2 * i - 1) * pow(&xi2, i);
        i += 1;
    }
    let mut even = ExactRational::zero();
    let mut i = 0u64;
    while 2 * i <= nn {
        let c = rat_from_int(binomial(nn, (2 * i) as i64));
        even += c * pow(&lp2, nn - 2 * i) * pow(&xi2, i);
        i += 1;
    }
    let exponent = nn * nn.saturating_sub(1) / 2;
    pow(l, exponent) * (odd + even) / rat_from_int(BigInt::one() << n)
}

/// `F_n` with `F_0 = 0, F_1 = 1`.
pub fn fibonacci(n: usize) -> ExactInt {
    let (mut a, mut b) = (BigInt::zero(), BigInt::one());
    for _ in 0..n {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// At `L = 1` the transform is `F_3, F_5, F_7, …`; checks `1 <= n <= n_max`.
pub fn fibonacci_check(n_max: usize) -> bool {
    let one = rat(1);
    (1..=n_max).all(|n| h_closed_form(&one, n).value == rat_from_int(fibonacci(2 * n + 1)))
}

/// The four product identities for `φ` and `ψ̂`, in surd-free form, at `(j, k)`.
pub fn lemma_identities(l: &ExactRational, j: i64, k: i64) -> Result<bool, HankelError> {
    if j < 0 || j > k {
        return Err(HankelError::InvalidIndices { j, k });
    }
    let (j, k) = (j as usize, k as usize);
    let states = surd_states(l, j + k);
    let phi = |i: usize| &states[i].phi;
    let psi = |i: usize| &states[i].psihat;
    let four_l_j = pow(&(rat(4) * l), j as u64);
    let xi2 = l * l + rat(4);

    let first = phi(j) * phi(k) == phi(j + k) + &four_l_j * phi(k - j);
    let second = &xi2 * psi(j) * psi(k) == phi(j + k) - &four_l_j * phi(k - j);
    let third = phi(j) * psi(k) == psi(j + k) + &four_l_j * psi(k - j);
    let fourth = psi(j) * phi(k) == psi(j + k) - &four_l_j * psi(k - j);
    Ok(first && second && third && fourth)
}

/// Whether `2^{n+1}` divides `L^{n(n−1)/2}·σ_n` for integer `L`.
pub fn closed_form_integral(l: &ExactRational, n: usize) -> bool {
    let sigma = &surd_states(l, n.max(1))[n].sigma;
    let numerator = pow(l, (n * n.saturating_sub(1) / 2) as u64) * sigma;
    numerator.is_integer() && (numerator.numer() % (BigInt::one() << (n + 1))).is_zero() && !numerator.is_negative()
}
