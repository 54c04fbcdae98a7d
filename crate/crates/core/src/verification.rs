//! The four-route agreement grid for `h_n(L)`.
//!
//! Each `(L, n)` cell is computed independently, so a grid fans out over a
//! rayon pool and is sorted by `(L, n)` afterwards; output never depends on the
//! number of workers.

use std::time::{Duration, Instant};

use num_traits::One;
use rayon::prelude::*;
use thiserror::Error;

use crate::exact_algebra::{rat_from_int, ExactRational};
use crate::hankel::{fibonacci, h_closed_form, h_polynomial_form, hankel_det, HankelError};
use crate::opoly::{chain_coeffs, h_from_products, OpolyError};
use crate::sequences::{a_sequence, SequenceError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error(transparent)]
    Sequence(#[from] SequenceError),
    #[error(transparent)]
    Hankel(#[from] HankelError),
    #[error(transparent)]
    Opoly(#[from] OpolyError),
    #[error("could not build a worker pool: {0}")]
    Pool(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Route {
    Det,
    Closed,
    Product,
    Poly,
}

impl Route {
    pub const ALL: [Route; 4] = [Route::Det, Route::Closed, Route::Product, Route::Poly];

    pub fn name(self) -> &'static str {
        match self {
            Route::Det => "det",
            Route::Closed => "closed",
            Route::Product => "product",
            Route::Poly => "poly",
        }
    }
}

/// `h_n(L)` by each requested route.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub l: ExactRational,
    pub n: usize,
    pub h_det: Option<ExactRational>,
    pub h_closed: Option<ExactRational>,
    pub h_product: Option<ExactRational>,
    pub h_poly: Option<ExactRational>,
    /// `F_{2n+1}`, filled in only at `L = 1`.
    pub fibonacci: Option<ExactRational>,
    /// All computed routes (and the Fibonacci value, if present) coincide.
    pub agree: bool,
    pub elapsed: Vec<(Route, Duration)>,
}

impl VerificationReport {
    pub fn value(&self, route: Route) -> Option<&ExactRational> {
        match route {
            Route::Det => self.h_det.as_ref(),
            Route::Closed => self.h_closed.as_ref(),
            Route::Product => self.h_product.as_ref(),
            Route::Poly => self.h_poly.as_ref(),
        }
    }

    /// The first route whose value differs from the first computed one.
    pub fn first_disagreement(&self) -> Option<(Route, &ExactRational, Route, &ExactRational)> {
        let computed: Vec<_> = Route::ALL.iter().filter_map(|&r| self.value(r).map(|v| (r, v))).collect();
        let (r0, v0) = *computed.first()?;
        computed.iter().skip(1).find(|(_, v)| *v != v0).map(|&(r, v)| (r0, v0, r, v))
    }
}

/// One route in isolation.
pub fn compute_route(l: &ExactRational, n: usize, route: Route) -> Result<ExactRational, VerifyError> {
    Ok(match route {
        Route::Det => {
            let window = a_sequence(l, (2 * n).saturating_sub(2))?;
            hankel_det(&window, n)?
        }
        Route::Closed => h_closed_form(l, n).value,
        Route::Product => {
            let (coeffs, _) = chain_coeffs(l, n.max(1))?;
            h_from_products(&coeffs, n)?
        }
        Route::Poly => h_polynomial_form(l, n),
    })
}

/// Computes the requested routes for one cell.
pub fn verify_cell(l: &ExactRational, n: usize, routes: &[Route]) -> Result<VerificationReport, VerifyError> {
    let mut report = VerificationReport {
        l: l.clone(),
        n,
        h_det: None,
        h_closed: None,
        h_product: None,
        h_poly: None,
        fibonacci: None,
        agree: true,
        elapsed: Vec::with_capacity(routes.len()),
    };
    for &route in routes {
        let start = Instant::now();
        let value = compute_route(l, n, route)?;
        report.elapsed.push((route, start.elapsed()));
        *match route {
            Route::Det => &mut report.h_det,
            Route::Closed => &mut report.h_closed,
            Route::Product => &mut report.h_product,
            Route::Poly => &mut report.h_poly,
        } = Some(value);
    }
    if l.is_one() {
        report.fibonacci = Some(rat_from_int(fibonacci(2 * n + 1)));
    }
    let mut values = Route::ALL.iter().filter_map(|&r| report.value(r)).chain(report.fibonacci.as_ref());
    report.agree = match values.next() {
        Some(first) => values.all(|v| v == first),
        None => true,
    };
    Ok(report)
}

/// All four routes for every `L` in `ls` and `1 <= n <= n_max`, sorted by
/// `(L, n)`. `jobs = 0` uses rayon's default thread count.
pub fn verify_grid(ls: &[ExactRational], n_max: usize, jobs: usize) -> Result<Vec<VerificationReport>, VerifyError> {
    let cells: Vec<(ExactRational, usize)> = ls.iter().flat_map(|l| (1..=n_max).map(move |n| (l.clone(), n))).collect();
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| VerifyError::Pool(e.to_string()))?;
    let mut reports =
        pool.install(|| cells.par_iter().map(|(l, n)| verify_cell(l, *n, &Route::ALL)).collect::<Result<Vec<_>, _>>())?;
    reports.sort_by(|a, b| a.l.cmp(&b.l).then(a.n.cmp(&b.n)));
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::{rat, ratio};

    #[test]
    fn known_cells_agree() {
        let r = verify_cell(&rat(2), 5, &Route::ALL).unwrap();
        assert!(r.agree);
        assert_eq!(r.h_det, Some(rat(405504)));
        assert!(r.fibonacci.is_none());

        let r = verify_cell(&rat(1), 4, &Route::ALL).unwrap();
        assert_eq!(r.fibonacci, Some(rat(34)));
        assert!(r.agree);
    }

    #[test]
    fn partial_routes() {
        let r = verify_cell(&rat(4), 3, &[Route::Product]).unwrap();
        assert_eq!(r.h_product, Some(rat(8704)));
        assert!(r.h_det.is_none() && r.agree);
        assert_eq!(r.elapsed.len(), 1);
    }

    #[test]
    fn grid_is_sorted_and_independent_of_jobs() {
        let ls = [rat(3), ratio(5, 2), rat(1)];
        let one = verify_grid(&ls, 5, 1).unwrap();
        let many = verify_grid(&ls, 5, 4).unwrap();
        let key = |r: &VerificationReport| (r.l.clone(), r.n, r.h_det.clone(), r.agree);
        assert_eq!(one.iter().map(key).collect::<Vec<_>>(), many.iter().map(key).collect::<Vec<_>>());
        assert_eq!(one[0].l, rat(1));
        assert_eq!(one[5].l, ratio(5, 2));
        assert!(one.iter().all(|r| r.agree));
    }

    #[test]
    fn disagreement_is_located() {
        let mut r = verify_cell(&rat(2), 3, &Route::ALL).unwrap();
        assert!(r.first_disagreement().is_none());
        r.h_poly = Some(rat(0));
        let (a, _, b, v) = r.first_disagreement().unwrap();
        assert_eq!((a, b, v.clone()), (Route::Det, Route::Poly, rat(0)));
    }
}
