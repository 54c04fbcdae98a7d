//! The weight function on `[(√L−1)², (√L+1)²]`: its moments by quadrature
//! against the exact `a_n`, and orthogonality of the recurrence polynomials.
//!
//! ```text
//! cargo run --release --example weight_quadrature
//! ```

use hankel_catalan::exact_algebra::{rat, ratio, to_f64};
use hankel_catalan::sequences::a_sequence;
use hankel_catalan::weight::{
    moments_quadrature, orthogonality_check, weight_eval, QuadratureConfig, Scheme, WeightSpec,
};

fn main() {
    let cfg = QuadratureConfig::new(4000, Scheme::ThetaMidpoint).unwrap();
    let gauss = QuadratureConfig::new(64, Scheme::ThetaGauss).unwrap();
    for l in [rat(1), rat(2), rat(4), ratio(5, 2)] {
        let spec = WeightSpec::from_exact(&l).unwrap();
        let (lo, hi) = spec.support();
        let mid = 0.5 * (lo + hi);
        println!("L = {l}: support [{lo:.6}, {hi:.6}], w({mid:.4}) = {:.6}", weight_eval(mid, &spec).unwrap());

        let exact = a_sequence(&l, 10).unwrap();
        let mid_rule = moments_quadrature(&spec, 10, &cfg);
        let gauss_rule = moments_quadrature(&spec, 10, &gauss);
        for (n, a) in exact.terms().iter().enumerate() {
            let a = to_f64(a);
            println!(
                "  n = {n:>2}  a_n = {a:<14}  midpoint rel err {:.2e}  gauss rel err {:.2e}",
                ((mid_rule[n] - a) / a).abs(),
                ((gauss_rule[n] - a) / a).abs()
            );
        }
        let report = orthogonality_check(&l, 8, &cfg).unwrap();
        println!("  max normalized |<Q_i, Q_j>|, i < j <= 8: {:.2e}", report.max_residual);
    }
}
