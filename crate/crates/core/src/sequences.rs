//! The generalized Pascal triangle `T(n,k;L)`, generalized Catalan numbers
//! `c(n;L)` and the target sequence `a_n(L) = c(n;L) + c(n+1;L)`.
//!
//! `c(0;L) = 1` follows from `T(n,k;L) = 0` for `k < 0`. The sequence is also
//! pinned independently by `a_0 = L + 1`; [`a_sequence`] checks that the two
//! conventions agree.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::exact_algebra::{fmt_rational, rat, ExactInt, ExactRational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SequenceError {
    #[error("parameter L must be positive, got {0}")]
    NonPositiveParameter(String),
    #[error("c(0;L) + c(1;L) = {found} disagrees with a_0 = L + 1 = {expected}")]
    InconsistentA0 { found: String, expected: String },
}

/// The weight parameter `L > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceParams {
    l: ExactRational,
}

impl SequenceParams {
    pub fn new(l: ExactRational) -> Result<Self, SequenceError> {
        if !l.is_positive() {
            return Err(SequenceError::NonPositiveParameter(fmt_rational(&l)));
        }
        Ok(Self { l })
    }

    pub fn l(&self) -> &ExactRational {
        &self.l
    }
}

/// `a_0 ..= a_{n_max}` for one `L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceWindow {
    params: SequenceParams,
    terms: Vec<ExactRational>,
}

impl SequenceWindow {
    pub fn params(&self) -> &SequenceParams {
        &self.params
    }

    pub fn l(&self) -> &ExactRational {
        self.params.l()
    }

    pub fn terms(&self) -> &[ExactRational] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, n: usize) -> Option<&ExactRational> {
        self.terms.get(n)
    }
}

/// `C(n, k)`, zero outside `0 <= k <= n`.
pub fn binomial(n: u64, k: i64) -> ExactInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `T(n,k;L) = Σ_{j=0}^{n-k} C(k,j) C(n-k,j) L^j`; zero for `k < 0`.
pub fn pascal_t(n: u64, k: i64, l: &ExactRational) -> ExactRational {
    if k < 0 || k as u64 > n {
        return ExactRational::zero();
    }
    let k = k as u64;
    let top = k.min(n - k);
    let mut sum = ExactRational::zero();
    let mut l_pow = ExactRational::one();
    for j in 0..=top {
        let c = binomial(k, j as i64) * binomial(n - k, j as i64);
        sum += &l_pow * ExactRational::from_integer(c);
        l_pow *= l;
    }
    sum
}

/// `c(n;L) = T(2n,n;L) - T(2n,n-1;L)`.
pub fn gen_catalan(n: u64, l: &ExactRational) -> ExactRational {
    pascal_t(2 * n, n as i64, l) - pascal_t(2 * n, n as i64 - 1, l)
}

/// `a_0 ..= a_{n_max}` with `a_0 = L+1` and `a_n = c(n;L) + c(n+1;L)`.
pub fn a_sequence(l: &ExactRational, n_max: usize) -> Result<SequenceWindow, SequenceError> {
    let params = SequenceParams::new(l.clone())?;
    let catalan: Vec<ExactRational> = (0..=n_max as u64 + 1).map(|n| gen_catalan(n, l)).collect();
    let a0 = l + rat(1);
    let from_catalan = &catalan[0] + &catalan[1];
    if from_catalan != a0 {
        return Err(SequenceError::InconsistentA0 { found: fmt_rational(&from_catalan), expected: fmt_rational(&a0) });
    }
    let mut terms = Vec::with_capacity(n_max + 1);
    terms.push(a0);
    terms.extend(catalan.windows(2).skip(1).map(|w| &w[0] + &w[1]));
    Ok(SequenceWindow { params, terms })
}

/// Window of the generalized Catalan numbers themselves, `c(0;L) ..= c(n_max;L)`.
pub fn catalan_window(l: &ExactRational, n_max: usize) -> Result<SequenceWindow, SequenceError> {
    let params = SequenceParams::new(l.clone())?;
    let terms = (0..=n_max as u64).map(|n| gen_catalan(n, l)).collect();
    Ok(SequenceWindow { params, terms })
}
