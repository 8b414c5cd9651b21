//! Free nilpotent Lie algebras on graded generators with degree and rank
//! truncation, realized on Hall bases; the quotient by the relation ideal;
//! the abelian linear subgroup; and the semidirect assembly carrying a
//! two-variable (multidegree) filtration.

mod gens;
mod hall;
mod poly;
mod quot;
mod semidirect;
mod universal;

pub use gens::{GeneratorClass, GeneratorSpec};
pub use hall::{HallBasis, HallElement};
pub use quot::{build_quotient, QuotientConstruction};
pub use semidirect::{
    semidirect_filtration, SemidirectElement, SemidirectGroup,
};
pub use universal::{build_universal, UniversalAlgebra};

use thiserror::Error;

#[derive(Debug, Error)]
pub enum UniversalError {
    #[error("construction exceeds desk-scale caps: {0}")]
    CapExceeded(String),
    #[error("malformed generator counts: {0}")]
    BadSpec(String),
    #[error("linear-power exponent vector has length {got}, expected {expected}")]
    PowerLengthMismatch { got: usize, expected: usize },
    #[error("element does not belong to the linear subgroup")]
    NotLinear,
    #[error("elements come from different constructions")]
    ConstructionMismatch,
    #[error("internal consistency check failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Algebra(#[from] lie_core::AlgebraError),
    #[error(transparent)]
    Filtration(#[from] filtration::FiltrationError),
}
