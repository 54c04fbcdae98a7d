//! The generating function `𝒢(t;L) = Σ a_n tⁿ` built three ways, and the
//! Stieltjes transform `F(z;L)` expanded in `1/z`.
//!
//! ```text
//! cargo run --example generating_functions
//! ```

use hankel_catalan::exact_algebra::{fmt_rational, rat, TruncatedSeries};
use hankel_catalan::genfunc::{
    big_g_l2_closed, big_g_laurent, big_g_series_jacobi, f_series, rho_series, t_sum_identities,
};
use hankel_catalan::sequences::a_sequence;

fn show(s: &TruncatedSeries, from: i64, to: i64) -> String {
    (from..=to).map(|k| fmt_rational(&s.coeff(k))).collect::<Vec<_>>().join(", ")
}

fn main() {
    let order = 8;
    for l in [rat(2), rat(3)] {
        let raw = big_g_laurent(&l, order);
        println!("L = {}", fmt_rational(&l));
        println!("  rho:             {}", show(&rho_series(&l, order), 0, order));
        println!("  1/t coefficient: {}", fmt_rational(&raw.pole_coefficient()));
        println!("  G from rho:      {}", show(&raw.regular_part(), 0, order));
        println!("  G from Jacobi:   {}", show(&big_g_series_jacobi(&l, order).unwrap(), 0, order));
        let a = a_sequence(&l, order as usize).unwrap();
        println!("  a_n:             {}", a.terms().iter().map(fmt_rational).collect::<Vec<_>>().join(", "));
        println!("  F in 1/z:        {}", show(&f_series(&l, order).unwrap(), 0, order));
        println!("  T-sum identities through n = 12: {}", t_sum_identities(&l, 12).unwrap());
    }
    println!("closed form at L = 2: {}", show(&big_g_l2_closed(order).unwrap(), 0, order));
}
