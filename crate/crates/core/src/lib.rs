//! Analytic invariants of isolated hypersurface singularities over the
//! rationals: Milnor and Tjurina numbers, the multiplication-by-`f`
//! endomorphism of the Milnor algebra and its kernel/image decomposition,
//! the Briançon–Skoda exponent, and the Tjurina number of Sebastiani–Thom
//! joins `f(x) + g(y)`.
//!
//! ```
//! use tjurina::{Germ, invariants::analyze};
//!
//! let g = Germ::parse("y^4 - x^5 + x^3*y^2", "x,y").unwrap();
//! let report = analyze(&g).unwrap().report;
//! assert_eq!((report.mu, report.tau, report.nu1, report.ebs), (12, 11, 1, 2));
//! ```

pub mod catalog;
pub mod error;
pub mod family;
pub mod groebner;
pub mod invariants;
pub mod join;
pub mod linalg;
pub mod poly;
mod ser;

pub use error::{Error, Result};
pub use invariants::Germ;
pub use poly::{parse_polynomial, Monomial, Polynomial, VariableSet};

/// Exact rational numbers with arbitrary precision.
pub type Rational = num_rational::BigRational;

/// Formats a rational as `p/q` in lowest terms, or `p` when integral.
pub fn rational_string(q: &Rational) -> String {
    q.to_string()
}
