use crate::algebra::{AlgebraError, LieAlgebra};
use crate::bch::bch_product;
use crate::rational::Rational;
use crate::scalar::Scalar;
use std::sync::Arc;

/// A group element of the simply connected nilpotent group exp(L), held in
/// exponential (first-kind) coordinates: the element is exp(sum_i c_i e_i).
#[derive(Clone, Debug)]
pub struct GroupElement<S: Scalar = Rational> {
    algebra: Arc<LieAlgebra>,
    coords: Vec<S>,
}

impl<S: Scalar> PartialEq for GroupElement<S> {
    fn eq(&self, other: &Self) -> bool {
        self.same_algebra(other).is_ok() && self.coords == other.coords
    }
}

impl<S: Scalar> GroupElement<S> {
    pub fn new(algebra: Arc<LieAlgebra>, coords: Vec<S>) -> Result<Self, AlgebraError> {
        if coords.len() != algebra.dim() {
            return Err(AlgebraError::DimensionMismatch {
                expected: algebra.dim(),
                got: coords.len(),
            });
        }
        Ok(GroupElement { algebra, coords })
    }

    pub fn identity(algebra: Arc<LieAlgebra>) -> Self {
        let d = algebra.dim();
        GroupElement {
            algebra,
            coords: vec![S::zero(); d],
        }
    }

    /// exp(e_i).
    pub fn generator(algebra: Arc<LieAlgebra>, i: usize) -> Result<Self, AlgebraError> {
        if i >= algebra.dim() {
            return Err(AlgebraError::IndexOutOfRange {
                index: i,
                dim: algebra.dim(),
            });
        }
        let mut coords = vec![S::zero(); algebra.dim()];
        coords[i] = S::one();
        Ok(GroupElement { algebra, coords })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn is_identity(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn same_algebra(&self, other: &Self) -> Result<(), AlgebraError> {
        if Arc::ptr_eq(&self.algebra, &other.algebra) || *self.algebra == *other.algebra {
            Ok(())
        } else {
            Err(AlgebraError::BadInput(
                "elements live on different algebras".into(),
            ))
        }
    }

    /// Group multiplication via the truncated BCH series.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.same_algebra(other)?;
        let coords = bch_product(&self.algebra, &self.coords, &other.coords)?;
        Ok(GroupElement {
            algebra: Arc::clone(&self.algebra),
            coords,
        })
    }

    /// g^t = exp(t log g), defined for any rational t.
    pub fn power(&self, t: &Rational) -> Self {
        GroupElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|c| c.scale(t)).collect(),
        }
    }

    pub fn powi(&self, n: i64) -> Self {
        self.power(&Rational::from_integer(n.into()))
    }

    pub fn inverse(&self) -> Self {
        GroupElement {
            algebra: Arc::clone(&self.algebra),
            coords: self.coords.iter().map(|c| -c.clone()).collect(),
        }
    }

    /// Group commutator g^{-1} h^{-1} g h.
    pub fn commutator(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.inverse()
            .mul(&other.inverse())?
            .mul(self)?
            .mul(other)
    }

    /// Conjugation h g h^{-1}.
    pub fn conjugate_by(&self, h: &Self) -> Result<Self, AlgebraError> {
        h.mul(self)?.mul(&h.inverse())
    }

    /// Coordinates of the second kind in the natural basis order:
    /// g = exp(u_1 e_1) exp(u_2 e_2) ... exp(u_d e_d).
    pub fn coords_second_kind(&self) -> Result<Vec<S>, AlgebraError> {
        second_kind_in_order(&self.algebra, &self.coords, &natural_order(self.algebra.dim()))
    }

    pub fn from_second_kind(
        algebra: Arc<LieAlgebra>,
        u: Vec<S>,
    ) -> Result<Self, AlgebraError> {
        let coords = first_kind_in_order(&algebra, &u, &natural_order(algebra.dim()))?;
        Ok(GroupElement { algebra, coords })
    }
}

pub fn natural_order(dim: usize) -> Vec<usize> {
    (0..dim).collect()
}

/// Verifies the nesting property for a basis order: for every pair of basis
/// vectors, the bracket must be supported strictly after the later of the
/// two positions in `order`.
pub fn check_nesting(algebra: &LieAlgebra, order: &[usize]) -> Result<(), AlgebraError> {
    let dim = algebra.dim();
    if order.len() != dim {
        return Err(AlgebraError::DimensionMismatch {
            expected: dim,
            got: order.len(),
        });
    }
    let mut pos = vec![usize::MAX; dim];
    for (p, &b) in order.iter().enumerate() {
        if b >= dim || pos[b] != usize::MAX {
            return Err(AlgebraError::BadInput(format!(
                "order is not a permutation of 0..{dim}"
            )));
        }
        pos[b] = p;
    }
    for pi in 0..dim {
        for pj in 0..dim {
            if pi == pj {
                continue;
            }
            let (i, j) = (order[pi], order[pj]);
            let cutoff = pi.max(pj);
            for (k, _) in algebra.structure(i, j) {
                if pos[*k] <= cutoff {
                    return Err(AlgebraError::NestingViolated {
                        i,
                        j,
                        bad: pos[*k],
                    });
                }
            }
        }
    }
    Ok(())
}

/// Peels second-kind coordinates in the given basis order. Position p of the
/// result is the exponent of `order[p]`, i.e.
/// g = exp(u_0 e_{order[0]}) ... exp(u_{d-1} e_{order[d-1]}).
pub fn second_kind_in_order<S: Scalar>(
    algebra: &LieAlgebra,
    first_kind: &[S],
    order: &[usize],
) -> Result<Vec<S>, AlgebraError> {
    algebra.ensure_valid()?;
    check_nesting(algebra, order)?;
    let dim = algebra.dim();
    if first_kind.len() != dim {
        return Err(AlgebraError::DimensionMismatch {
            expected: dim,
            got: first_kind.len(),
        });
    }
    let mut rem = first_kind.to_vec();
    let mut out = Vec::with_capacity(dim);
    for &b in order {
        let u = rem[b].clone();
        if !u.is_zero() {
            // rem <- log(exp(-u e_b) exp(rem))
            let mut minus = vec![S::zero(); dim];
            minus[b] = -u.clone();
            rem = bch_product(algebra, &minus, &rem)?;
        }
        out.push(u);
    }
    debug_assert!(rem.iter().all(|x| x.is_zero()));
    Ok(out)
}

/// Inverse of [`second_kind_in_order`]: multiplies out the exp factors.
pub fn first_kind_in_order<S: Scalar>(
    algebra: &LieAlgebra,
    u: &[S],
    order: &[usize],
) -> Result<Vec<S>, AlgebraError> {
    algebra.ensure_valid()?;
    check_nesting(algebra, order)?;
    let dim = algebra.dim();
    if u.len() != dim {
        return Err(AlgebraError::DimensionMismatch {
            expected: dim,
            got: u.len(),
        });
    }
    let mut acc = vec![S::zero(); dim];
    for (p, &b) in order.iter().enumerate() {
        if u[p].is_zero() {
            continue;
        }
        let mut factor = vec![S::zero(); dim];
        factor[b] = u[p].clone();
        acc = bch_product(algebra, &acc, &factor)?;
    }
    Ok(acc)
}
