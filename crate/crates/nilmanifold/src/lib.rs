//! Nilmanifolds G/Γ presented by an adapted Mal'cev basis.
//!
//! A manifold couples a nilpotent Lie algebra with a filtration and a basis
//! order along which coordinates of the second kind peel exactly. The lattice
//! Γ is the preimage of the integer points under those coordinates, so
//! fundamental-domain reduction, metric upper bounds, characters, partitions
//! of unity, and nilcharacters all run in exact rational arithmetic with
//! floats entering only at the final trigonometric step.

mod characters;
mod manifold;
mod metric;
mod nilchar;
mod observe;
mod partition;

pub use characters::{validate_horizontal, HorizontalCharacter, VerticalCharacter};
pub use manifold::{manifold_from_json, manifold_to_json, Nilmanifold};
pub use metric::{lipschitz_estimate, metric_upper};
pub use nilchar::{make_nilcharacter, Nilcharacter};
pub use observe::{eval_nilsequence, phase, Observable};
pub use partition::{partition_of_unity, Partition};

use thiserror::Error;

#[cfg(test)]
pub(crate) mod tests_support {
    use crate::Nilmanifold;
    use filtration::{lower_central_filtration, Filtration};
    use lie_core::standard;
    use std::sync::Arc;

    pub fn heisenberg_filtration() -> Filtration {
        lower_central_filtration(&Arc::new(standard::heisenberg())).unwrap()
    }

    pub fn heisenberg_manifold() -> Nilmanifold {
        Nilmanifold::new(heisenberg_filtration(), vec![0, 1, 2]).unwrap()
    }

    pub fn torus(d: usize) -> Nilmanifold {
        let filt = lower_central_filtration(&Arc::new(standard::abelian(d))).unwrap();
        Nilmanifold::new(filt, (0..d).collect()).unwrap()
    }

    pub fn free_step_three_manifold() -> Nilmanifold {
        let filt =
            lower_central_filtration(&Arc::new(standard::free_two_gen_step_three())).unwrap();
        let d = filt.algebra().dim();
        Nilmanifold::new(filt, (0..d).collect()).unwrap()
    }
}

#[derive(Debug, Error)]
pub enum NilError {
    #[error("basis not adapted: {0}")]
    BasisNotAdapted(String),
    #[error("argument out of range: {0}")]
    BadInput(String),
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
    #[error(transparent)]
    Poly(#[from] polyseq::PolyError),
}
