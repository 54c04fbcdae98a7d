//! Recurrence coefficients of the orthogonal polynomials for `a_n(L)`: the
//! modification chain against the Stieltjes procedure, the J-fraction, and the
//! β-product formula for `h_n`.
//!
//! ```text
//! cargo run --example recurrence_chain -- 4
//! ```

use hankel_catalan::exact_algebra::{fmt_rational, parse_rational, rat, TruncatedSeries};
use hankel_catalan::hankel::h_closed_form;
use hankel_catalan::opoly::{
    chain_coeffs, h_from_products, hat_tilde_discrepancy, jfraction_series, norm_closed_form, r_closed_form,
    stieltjes_procedure, tilde_coeffs,
};
use hankel_catalan::sequences::{a_sequence, SequenceWindow};

fn main() {
    let l = std::env::args().nth(1).map_or(rat(4), |s| parse_rational(&s).expect("L as p/q"));
    let levels = 6;

    let tilde = tilde_coeffs(&l, 3).unwrap();
    println!("tilde alpha_0..2: {}", tilde.alpha.iter().map(fmt_rational).collect::<Vec<_>>().join(", "));
    println!("float hat stage vs exact tilde, worst relative gap: {:e}", hat_tilde_discrepancy(&l, 8).unwrap());

    let (chain, state) = chain_coeffs(&l, levels).unwrap();
    let window = a_sequence(&l, 2 * levels).unwrap();
    let run = stieltjes_procedure(&window, levels).unwrap();
    println!("{:>2}  {:>20}  {:>20}  {:>16}  {:>16}", "k", "alpha", "beta", "r_(k-1)", "norm");
    for k in 0..levels {
        println!(
            "{k:>2}  {:>20}  {:>20}  {:>16}  {:>16}",
            fmt_rational(&chain.alpha[k]),
            fmt_rational(&chain.beta[k]),
            fmt_rational(state.r(k as i64 - 1)),
            fmt_rational(&run.norms[k]),
        );
    }
    println!("chain == moments: {}", chain.same_values(&run.coeffs));
    println!("norms match closed form: {}", (1..=levels).all(|n| norm_closed_form(&l, n).unwrap() == run.norms[n - 1]));
    println!("r_n match closed form: {}", (0..levels as i64 - 1).all(|n| r_closed_form(&l, n).unwrap() == *state.r(n)));

    let jf = jfraction_series(&chain, 2 * levels as i64 - 1).unwrap();
    println!(
        "J-fraction reproduces a_0..a_{}: {}",
        2 * levels - 1,
        jf.agrees_with(&window_series(&window), 2 * levels as i64 - 1)
    );
    for n in 1..=levels {
        println!(
            "h_{n} = {} (product), {} (closed)",
            fmt_rational(&h_from_products(&chain, n).unwrap()),
            fmt_rational(&h_closed_form(&l, n).value)
        );
    }
}

fn window_series(w: &SequenceWindow) -> TruncatedSeries {
    TruncatedSeries::from_coeffs(w.terms().to_vec(), w.len() as i64 - 1)
}
