//! Polynomial sequences into a nilpotent group, relative to a filtration.
//!
//! A sequence is stored through its Taylor coefficients: g(n) = prod_i
//! g_i^{C(n,i)} over multi-indices i in graded-lexicographic order, with
//! g_i constrained to the filtration group of degree |i|. On top of the
//! evaluation/derivative calculus this crate provides horizontal Taylor
//! coefficients on the associated tori, the graded (monomial) coefficient
//! form, smoothness norms of real polynomials, and the character-driven
//! factorization g = eps * g' * gamma.

mod binomial;
mod decompose;
mod factor;
mod graded;
mod horizontal;
mod sequence;
mod smooth;

pub use binomial::{binomial, indices_up_to, multi_binomial};
pub use decompose::{linear_decompose, linear_decompose_f64, Decomposition};
pub use factor::{factor_by_characters, FactorReport, Factorization};
pub use graded::{eval_graded, graded_taylor, position_degrees, GradedTaylor};
pub use horizontal::{taylor_coefficient, Character, HorizontalElement, HorizontalSpace};
pub use sequence::{is_polynomial, PointFn, PolySequence, PolynomialCheck};
pub use smooth::RealPolynomial;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum PolyError {
    #[error("expected {expected} index entries, got {got}")]
    ArityMismatch { got: usize, expected: usize },
    #[error("coefficient at index {0:?} is outside its filtration group")]
    NotPolynomial(Vec<u32>),
    #[error("index out of range: {0}")]
    BadIndex(String),
    #[error("argument out of range: {0}")]
    Overflow(String),
    #[error("operation needs {0}")]
    FlavorMismatch(String),
    #[error("basis not adapted: {0}")]
    BasisNotAdapted(String),
    #[error("invalid character: {0}")]
    BadCharacter(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("internal invariant failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] lie_core::AlgebraError),
    #[error(transparent)]
    Filtration(#[from] filtration::FiltrationError),
    #[error("malformed input: {0}")]
    Parse(String),
}
