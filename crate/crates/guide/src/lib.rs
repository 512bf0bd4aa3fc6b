//! The chapters of `book/` as modules, so that `cargo test` runs their code
//! samples as doc-tests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/polynomials.md")]
pub mod polynomials {}

#[doc = include_str!("../../../book/src/milnor-algebra.md")]
pub mod milnor_algebra {}

#[doc = include_str!("../../../book/src/multiplication.md")]
pub mod multiplication {}

#[doc = include_str!("../../../book/src/joins.md")]
pub mod joins {}

#[doc = include_str!("../../../book/src/rank.md")]
pub mod rank {}

#[doc = include_str!("../../../book/src/verification.md")]
pub mod verification {}
