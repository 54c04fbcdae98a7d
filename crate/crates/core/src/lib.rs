//! Exact Hankel transforms of `a_n(L) = c(n;L) + c(n+1;L)`, the sums of
//! consecutive generalized Catalan numbers, with independent routes to the
//! closed form `h_n = L^{n(n−1)/2} · σ_n / 2^{n+1}`.
//!
//! * [`sequences`]: `T(n,k;L)`, `c(n;L)` and `a_n(L)`.
//! * [`hankel`]: Bareiss determinants, the closed form, its polynomial
//!   expansion, and the `φ`/`ψ̂` product identities.
//! * [`genfunc`]: Jacobi generating functions, `𝒢(t;L)` and `F(z;L)` as exact series.
//! * [`opoly`]: recurrence coefficients by weight modification and by the
//!   Stieltjes procedure, J-fractions and β-products.
//! * [`weight`]: quadrature checks of the weight function.
//! * [`verification`]: the four-route agreement grid.
//! * [`cli`]: command implementations behind the `hankel-catalan` binary.
//!
//! ```
//! use hankel_catalan::exact_algebra::rat;
//! use hankel_catalan::{hankel, sequences};
//!
//! let window = sequences::a_sequence(&rat(2), 8).unwrap();
//! assert_eq!(hankel::hankel_det(&window, 5).unwrap(), rat(405504));
//! assert_eq!(hankel::h_closed_form(&rat(2), 5).value, rat(405504));
//! ```

pub mod cli;
pub mod exact_algebra;
pub mod genfunc;
pub mod hankel;
pub mod opoly;
pub mod sequences;
pub mod verification;
pub mod weight;
