//! `h_n(L)` by direct determinant, closed form, β-product and polynomial
//! expansion, plus the Fibonacci specialization at `L = 1`.
//!
//! ```text
//! cargo run --example hankel_routes -- 3 8
//! ```
//! The optional arguments are `L` (as `p/q`) and the largest `n`.

use hankel_catalan::exact_algebra::{fmt_rational, parse_rational, rat};
use hankel_catalan::hankel::{fibonacci_check, lemma_identities, surd_states};
use hankel_catalan::verification::{verify_cell, Route};

fn main() {
    let mut args = std::env::args().skip(1);
    let l = args.next().map_or(rat(2), |s| parse_rational(&s).expect("L as p/q"));
    let n_max: usize = args.next().map_or(6, |s| s.parse().expect("n as an integer"));

    println!("L = {}", fmt_rational(&l));
    println!("{:>3}  {:>24}  {:>24}  {:>24}  {:>24}", "n", "det", "closed", "product", "poly");
    for n in 1..=n_max {
        let r = verify_cell(&l, n, &Route::ALL).unwrap();
        let cell = |route| r.value(route).map(fmt_rational).unwrap_or_default();
        println!(
            "{n:>3}  {:>24}  {:>24}  {:>24}  {:>24}{}",
            cell(Route::Det),
            cell(Route::Closed),
            cell(Route::Product),
            cell(Route::Poly),
            if r.agree { "" } else { "  MISMATCH" }
        );
    }

    let s = surd_states(&l, 4);
    let sigmas: Vec<String> = s.iter().map(|st| fmt_rational(&st.sigma)).collect();
    println!("sigma_0..4 = {}", sigmas.join(", "));
    println!(
        "product identities hold for j <= k <= 8: {}",
        (0..=8).all(|k| (0..=k).all(|j| lemma_identities(&l, j, k).unwrap()))
    );
    println!("h_n(1) = F_(2n+1) for n <= 20: {}", fibonacci_check(20));
}
