use crate::NilError;
use filtration::{filtration_from_json, filtration_to_json, Filtration, Subalgebra};
use lie_core::element::{check_nesting, first_kind_in_order, second_kind_in_order};
use lie_core::{algebra_from_json, algebra_to_json, height, GroupElement, LieAlgebra, Rational};
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::sync::Arc;

/// A nilmanifold G/Γ: a filtered nilpotent group together with a basis order
/// along which second-kind coordinates peel exactly. The lattice Γ is the set
/// of elements with integral second-kind coordinates, so it never needs to be
/// stored.
#[derive(Clone)]
pub struct Nilmanifold {
    filtration: Filtration,
    /// Mal'cev order: position p of ψ exponentiates basis vector `order[p]`.
    order: Vec<usize>,
    /// Distinct nontrivial filtration groups, shallowest first.
    chain: Vec<Subalgebra>,
    /// Per position, the 1-based index of the deepest chain member containing it.
    depth: Vec<usize>,
    /// Positions grouped by depth, ascending; concatenation is 0..dim.
    blocks: Vec<Vec<usize>>,
    structure_height: BigUint,
}

impl Nilmanifold {
    /// Builds a manifold from a validated filtration and a basis order. The
    /// order must be a permutation of the coordinates with the nesting
    /// property (brackets land strictly later), and every filtration group
    /// must be the span of a tail of the ordered basis.
    pub fn new(filtration: Filtration, order: Vec<usize>) -> Result<Self, NilError> {
        filtration.ensure_valid()?;
        let algebra = Arc::clone(filtration.algebra());
        let dim = algebra.dim();
        check_nesting(&algebra, &order)?;

        let mut chain: Vec<Subalgebra> = Vec::new();
        for (_, group) in filtration.stored() {
            if group.is_trivial() {
                continue;
            }
            match chain.last() {
                Some(prev) if prev.space().same_space(group.space()) => {}
                _ => chain.push(group.clone()),
            }
        }
        if chain.first().map(|g| g.dim()) != Some(dim) {
            return Err(NilError::BasisNotAdapted(
                "filtration does not start at the full group".into(),
            ));
        }

        let mut depth = vec![0usize; dim];
        for (level, member) in chain.iter().enumerate() {
            let from = dim - member.dim();
            for (p, &b) in order.iter().enumerate().skip(from) {
                let mut unit = vec![Rational::zero(); dim];
                unit[b] = Rational::one();
                if !member.contains(&unit) {
                    return Err(NilError::BasisNotAdapted(format!(
                        "group {level} is not spanned by the basis tail"
                    )));
                }
                depth[p] = level + 1;
            }
        }

        let mut blocks = vec![Vec::new(); chain.len()];
        for (p, &d) in depth.iter().enumerate() {
            blocks[d - 1].push(p);
        }

        let mut structure_height = BigUint::one();
        for (_, _, _, c) in algebra.entries() {
            structure_height = structure_height.max(height(c));
        }

        Ok(Nilmanifold {
            filtration,
            order,
            chain,
            depth,
            blocks,
            structure_height,
        })
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        self.filtration.algebra()
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn dim(&self) -> usize {
        self.algebra().dim()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// Nested distinct filtration groups, shallowest (the whole group) first.
    pub fn chain(&self) -> &[Subalgebra] {
        &self.chain
    }

    /// The deepest nontrivial filtration group.
    pub fn bottom(&self) -> &Subalgebra {
        self.chain.last().expect("chain is nonempty")
    }

    /// Basis positions grouped by chain depth, ascending.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// 1-based chain depth of each basis position.
    pub fn depths(&self) -> &[usize] {
        &self.depth
    }

    /// Largest height among the structure constants.
    pub fn structure_height(&self) -> &BigUint {
        &self.structure_height
    }

    pub fn identity(&self) -> GroupElement<Rational> {
        GroupElement::identity(Arc::clone(self.algebra()))
    }

    fn ensure_same_algebra(&self, g: &GroupElement<Rational>) -> Result<(), NilError> {
        if !Arc::ptr_eq(g.algebra(), self.algebra()) && *g.algebra().as_ref() != *self.algebra().as_ref() {
            return Err(NilError::BadInput("element from a different algebra".into()));
        }
        Ok(())
    }

    /// Second-kind coordinates in the Mal'cev order:
    /// g = exp(X_{order[0]})^{u_0} ... exp(X_{order[d-1]})^{u_{d-1}}.
    pub fn psi(&self, g: &GroupElement<Rational>) -> Result<Vec<Rational>, NilError> {
        self.ensure_same_algebra(g)?;
        Ok(second_kind_in_order(self.algebra(), g.coords(), &self.order)?)
    }

    /// Inverse of [`psi`](Self::psi).
    pub fn from_psi(&self, u: &[Rational]) -> Result<GroupElement<Rational>, NilError> {
        let coords = first_kind_in_order(self.algebra(), u, &self.order)?;
        Ok(GroupElement::new(Arc::clone(self.algebra()), coords)?)
    }

    /// exp(X_{order[p]})^t.
    pub fn basis_power(&self, position: usize, t: &Rational) -> Result<GroupElement<Rational>, NilError> {
        if position >= self.dim() {
            return Err(NilError::BadInput(format!("no basis position {position}")));
        }
        let mut coords = vec![Rational::zero(); self.dim()];
        coords[self.order[position]] = t.clone();
        Ok(GroupElement::new(Arc::clone(self.algebra()), coords)?)
    }

    /// The lattice point with the given second-kind coordinates.
    pub fn lattice_element(&self, n: &[i64]) -> Result<GroupElement<Rational>, NilError> {
        let u: Vec<Rational> = n.iter().map(|&x| Rational::from_integer(x.into())).collect();
        self.from_psi(&u)
    }

    pub fn is_lattice_point(&self, g: &GroupElement<Rational>) -> Result<bool, NilError> {
        Ok(self.psi(g)?.iter().all(|x| x.is_integer()))
    }

    /// Splits g = {g}·[g] with ψ({g}) ∈ [0,1)^d and [g] ∈ Γ, peeling the
    /// integer part of one coordinate at a time in ascending position order;
    /// adjustments at later positions never disturb earlier ones.
    pub fn reduce_to_fundamental(
        &self,
        g: &GroupElement<Rational>,
    ) -> Result<(GroupElement<Rational>, GroupElement<Rational>), NilError> {
        self.ensure_same_algebra(g)?;
        let mut frac = g.clone();
        for p in 0..self.dim() {
            let u = self.psi(&frac)?;
            let m = u[p].floor();
            if !m.is_zero() {
                frac = frac.mul(&self.basis_power(p, &-m)?)?;
            }
        }
        let whole = frac.inverse().mul(g)?;

        let uf = self.psi(&frac)?;
        if uf.iter().any(|x| x.is_negative() || *x >= Rational::one()) {
            return Err(NilError::Internal("fractional part escaped [0,1)".into()));
        }
        if !self.is_lattice_point(&whole)? {
            return Err(NilError::Internal("integer part is not a lattice point".into()));
        }
        Ok((frac, whole))
    }

    /// Smallest q ≤ cap such that exp(Σ z_j X_j) lands in Γ for every z on
    /// the grid (q·{-radius..radius})^d, checked by exact integrality of
    /// second-kind coordinates.
    pub fn divisibility_constant(&self, radius: u32, cap: u32) -> Result<u32, NilError> {
        let dim = self.dim();
        let width = 2 * radius as u64 + 1;
        let mut total: u64 = 1;
        for _ in 0..dim {
            total = total
                .checked_mul(width)
                .filter(|&t| t <= 1 << 20)
                .ok_or_else(|| NilError::BadInput("divisibility grid too large".into()))?;
        }
        'candidate: for q in 1..=cap {
            let mut z = vec![-(radius as i64); dim];
            loop {
                let mut coords = vec![Rational::zero(); dim];
                for (p, &b) in self.order.iter().enumerate() {
                    coords[b] = Rational::from_integer((z[p] * q as i64).into());
                }
                let g = GroupElement::new(Arc::clone(self.algebra()), coords)?;
                if !self.is_lattice_point(&g)? {
                    continue 'candidate;
                }
                let mut p = 0;
                loop {
                    if p == dim {
                        return Ok(q);
                    }
                    z[p] += 1;
                    if z[p] <= radius as i64 {
                        break;
                    }
                    z[p] = -(radius as i64);
                    p += 1;
                }
            }
        }
        Err(NilError::BadInput(format!(
            "no divisibility constant up to {cap}"
        )))
    }
}

#[derive(Serialize, Deserialize)]
struct ManifoldFile {
    algebra: serde_json::Value,
    filtration: serde_json::Value,
    order: Vec<usize>,
}

pub fn manifold_to_json(m: &Nilmanifold) -> String {
    let file = ManifoldFile {
        algebra: serde_json::from_str(&algebra_to_json(m.algebra())).expect("canonical algebra JSON"),
        filtration: serde_json::from_str(&filtration_to_json(m.filtration()))
            .expect("canonical filtration JSON"),
        order: m.order.clone(),
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}

pub fn manifold_from_json(text: &str) -> Result<Nilmanifold, NilError> {
    let file: ManifoldFile = serde_json::from_str(text)
        .map_err(|e| NilError::BadInput(format!("bad manifold JSON: {e}")))?;
    let algebra = Arc::new(algebra_from_json(&file.algebra.to_string())?);
    let filt = filtration_from_json(Arc::clone(&algebra), &file.filtration.to_string())?;
    Nilmanifold::new(filt, file.order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{heisenberg_manifold, torus};
    use lie_core::rat;

    #[test]
    fn torus_reduction_splits_integer_and_fractional_parts() {
        let m = torus(1);
        let g = m.from_psi(&[rat(5, 4)]).unwrap();
        let (frac, whole) = m.reduce_to_fundamental(&g).unwrap();
        assert_eq!(m.psi(&frac).unwrap(), vec![rat(1, 4)]);
        assert_eq!(m.psi(&whole).unwrap(), vec![rat(1, 1)]);
        assert_eq!(frac.mul(&whole).unwrap(), g);
    }

    #[test]
    fn lattice_points_reduce_to_themselves() {
        let m = heisenberg_manifold();
        let g = m.lattice_element(&[3, -2, 5]).unwrap();
        let (frac, whole) = m.reduce_to_fundamental(&g).unwrap();
        assert!(frac.is_identity());
        assert_eq!(whole, g);
    }

    #[test]
    fn heisenberg_reduction_matches_the_hand_computation() {
        let m = heisenberg_manifold();
        let g = m.from_psi(&[rat(3, 2), rat(1, 4), rat(-3, 10)]).unwrap();
        let (frac, whole) = m.reduce_to_fundamental(&g).unwrap();
        assert_eq!(
            m.psi(&frac).unwrap(),
            vec![rat(1, 2), rat(1, 4), rat(19, 20)]
        );
        assert_eq!(m.psi(&whole).unwrap(), vec![rat(1, 1), rat(0, 1), rat(-1, 1)]);
        assert_eq!(frac.mul(&whole).unwrap(), g);
    }

    #[test]
    fn ties_at_one_reduce_to_zero() {
        let m = torus(2);
        let g = m.from_psi(&[rat(1, 1), rat(-1, 1)]).unwrap();
        let (frac, _) = m.reduce_to_fundamental(&g).unwrap();
        assert!(frac.is_identity());
    }

    #[test]
    fn non_nested_orders_are_rejected() {
        let filt = crate::tests_support::heisenberg_filtration();
        assert!(Nilmanifold::new(filt, vec![2, 0, 1]).is_err());
    }

    #[test]
    fn heisenberg_divisibility_constant_is_two() {
        let m = heisenberg_manifold();
        assert_eq!(m.divisibility_constant(2, 8).unwrap(), 2);
    }

    #[test]
    fn json_round_trip_preserves_coordinates() {
        let m = heisenberg_manifold();
        let text = manifold_to_json(&m);
        let back = manifold_from_json(&text).unwrap();
        assert_eq!(back.order(), m.order());
        let u = [rat(3, 7), rat(-2, 5), rat(11, 3)];
        let g = m.from_psi(&u).unwrap();
        let h = back.from_psi(&u).unwrap();
        assert_eq!(g.coords(), h.coords());
        assert_eq!(manifold_to_json(&back), text);
    }

    #[test]
    fn blocks_follow_the_filtration_chain() {
        let m = heisenberg_manifold();
        assert_eq!(m.blocks(), &[vec![0, 1], vec![2]]);
        assert_eq!(m.depths(), &[1, 1, 2]);
        assert_eq!(m.bottom().dim(), 1);
    }
}
