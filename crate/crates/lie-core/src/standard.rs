//! Small algebras used throughout the test suites and the documentation.

use crate::algebra::LieAlgebra;
use crate::rational::rat;
use std::sync::Arc;

/// Abelian algebra of the given dimension: all brackets vanish.
pub fn abelian(dim: usize) -> Arc<LieAlgebra> {
    Arc::new(LieAlgebra::new(dim, 1, []).expect("abelian algebra is always valid"))
}

/// The Heisenberg algebra: basis (X, Y, Z), [X, Y] = Z, Z central.
pub fn heisenberg() -> Arc<LieAlgebra> {
    Arc::new(
        LieAlgebra::new(3, 2, [(0, 1, 2, rat(1, 1))]).expect("heisenberg constants are valid"),
    )
}

/// Free 3-step nilpotent algebra on two generators. Basis order:
/// X, Y, [X,Y], [X,[X,Y]], [Y,[X,Y]]; all 4-fold brackets vanish.
pub fn free_two_gen_step_three() -> Arc<LieAlgebra> {
    let entries = [
        (0, 1, 2, rat(1, 1)), // [X, Y] = C
        (0, 2, 3, rat(1, 1)), // [X, C] = D
        (1, 2, 4, rat(1, 1)), // [Y, C] = E
    ];
    Arc::new(LieAlgebra::new(5, 3, entries).expect("free 3-step constants are valid"))
}

/// One-dimensional abelian algebra; its group is the real line.
pub fn line() -> Arc<LieAlgebra> {
    abelian(1)
}

/// Broken Heisenberg variant for validation tests: both orientations of
/// [X, Y] set to +1, which violates antisymmetry.
pub fn heisenberg_sign_error() -> Arc<LieAlgebra> {
    Arc::new(
        LieAlgebra::new(3, 2, [(0, 1, 2, rat(1, 1)), (1, 0, 2, rat(1, 1))])
            .expect("constructor accepts the broken table; validation flags it"),
    )
}
