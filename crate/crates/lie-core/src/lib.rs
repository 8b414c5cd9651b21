//! Exact arithmetic for finite-dimensional nilpotent Lie algebras and the
//! simply connected groups they generate.
//!
//! Everything here defaults to exact rational arithmetic: structure constants,
//! group elements in exponential coordinates, BCH products, and coordinate
//! changes are all computed over `BigRational` unless a caller opts into
//! `f64`. The crate enforces two hard caps, dimension <= 64 and nilpotency
//! step <= 6, beyond which every constructor returns an error.

pub mod algebra;
pub mod bch;
pub mod element;
pub mod io;
pub mod linalg;
pub mod rational;
pub mod rng;
pub mod scalar;
pub mod standard;

pub use algebra::{AlgebraError, LieAlgebra, ValidationReport};
pub use bch::bch_product;
pub use element::GroupElement;
pub use io::{algebra_from_json, algebra_to_json};
pub use rational::{format_rational, height, parse_rational, rat, Rational};
pub use scalar::Scalar;

/// Largest admissible algebra dimension.
pub const MAX_DIM: usize = 64;
/// Largest admissible nilpotency step.
pub const MAX_STEP: usize = 6;
