//! The four-route agreement grid over `L = 1..=8`, `n <= 12`, run in parallel
//! and reported in `(L, n)` order.
//!
//! ```text
//! cargo run --release --example verify_grid -- 4
//! ```
//! The optional argument is the number of worker threads.

use std::time::Instant;

use hankel_catalan::exact_algebra::{fmt_rational, rat};
use hankel_catalan::verification::verify_grid;

fn main() {
    let jobs: usize = std::env::args().nth(1).map_or(0, |s| s.parse().expect("thread count"));
    let ls: Vec<_> = (1..=8).map(rat).collect();
    let start = Instant::now();
    let reports = verify_grid(&ls, 12, jobs).unwrap();
    let elapsed = start.elapsed();

    let mut failures = 0;
    for r in &reports {
        if !r.agree {
            failures += 1;
            println!("mismatch at L = {}, n = {}", fmt_rational(&r.l), r.n);
        }
    }
    for r in reports.iter().filter(|r| r.n == 12) {
        println!("h_12({}) = {}", fmt_rational(&r.l), r.h_det.as_ref().map(fmt_rational).unwrap_or_default());
    }
    println!("{} cells, {failures} mismatches, {elapsed:.2?}", reports.len());
}
