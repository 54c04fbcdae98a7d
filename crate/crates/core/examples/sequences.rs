//! Generalized Catalan numbers and the sums `a_n(L)` for a few values of `L`,
//! including a rational one.
//!
//! ```text
//! cargo run --example sequences
//! ```

use hankel_catalan::exact_algebra::{fmt_rational, rat, ratio};
use hankel_catalan::sequences::{a_sequence, catalan_window, pascal_t};

fn main() {
    println!("T(n,k;2) for n <= 6:");
    for n in 0..=6u64 {
        let row: Vec<String> = (0..=n as i64).map(|k| fmt_rational(&pascal_t(n, k, &rat(2)))).collect();
        println!("  {}", row.join(" "));
    }

    let catalan = catalan_window(&rat(1), 10).unwrap();
    let shown: Vec<String> = catalan.terms().iter().map(fmt_rational).collect();
    println!("c(n;1), classical Catalan: {}", shown.join(", "));

    for l in [rat(1), rat(2), rat(4), ratio(5, 2)] {
        let window = a_sequence(&l, 7).unwrap();
        let shown: Vec<String> = window.terms().iter().map(fmt_rational).collect();
        println!("a_n({}): {}", fmt_rational(&l), shown.join(", "));
    }
}
