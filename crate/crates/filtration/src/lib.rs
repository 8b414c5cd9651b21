//! Indexed families of rational subalgebras: orderings by degree, degree-rank,
//! and multidegree; nesting and commutator validity checks; lower central
//! series; joins; and quotients by ideals.

mod filt;
mod index;
mod io;
mod quotient;
mod subalgebra;

pub use filt::{
    degree_rank_from_degree, lower_central_filtration, lower_central_series, Filtration,
    FiltrationReport, Flavor,
};
pub use index::{IndexKind, IndexOrder, OrderingIndex};
pub use io::{filtration_from_json, filtration_to_json};
pub use quotient::{quotient, quotient_algebra, QuotientMap};
pub use subalgebra::Subalgebra;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum FiltrationError {
    #[error("ordering indices have different variants or arities")]
    VariantMismatch,
    #[error("subalgebras live over different ambient algebras")]
    AmbientMismatch,
    #[error("set of vectors is not closed under the bracket")]
    NotBracketClosed,
    #[error("subgroup is not an ideal: bracket escapes it")]
    NotAnIdeal,
    #[error("index kind {found:?} is not allowed for flavor {flavor:?}")]
    KindFlavorMismatch { found: IndexKind, flavor: Flavor },
    #[error("filtration failed validation: {0}")]
    Invalid(String),
    #[error("underlying algebra error: {0}")]
    Algebra(#[from] lie_core::AlgebraError),
    #[error("bad input: {0}")]
    BadInput(String),
}
