use crate::gens::GeneratorSpec;
use crate::universal::{BasisInfo, UniversalAlgebra};
use crate::UniversalError;
use filtration::{quotient, Filtration, QuotientMap, Subalgebra};
use lie_core::{GroupElement, LieAlgebra, Rational};
use num_traits::Zero;
use std::sync::Arc;

/// The constructed algebra modulo its relation ideal, which is spanned by the
/// coordinates with a petal participant or at least two non-star
/// participants. What survives is generated by star generators plus single
/// linear insertions; the single-linear span is an abelian normal subgroup.
pub struct QuotientConstruction {
    spec: GeneratorSpec,
    ambient_dim: usize,
    algebra: Arc<LieAlgebra>,
    filtration: Filtration,
    map: QuotientMap,
    lin: Subalgebra,
    lin_positions: Vec<usize>,
    info: Vec<BasisInfo>,
    names: Vec<String>,
}

pub fn build_quotient(
    universal: &UniversalAlgebra,
) -> Result<QuotientConstruction, UniversalError> {
    let dim = universal.dim();
    let ambient = universal.algebra();

    let rel_rows: Vec<Vec<Rational>> = universal
        .infos()
        .iter()
        .enumerate()
        .filter(|(_, b)| b.petal_leaves >= 1 || b.linear_leaves + b.petal_leaves >= 2)
        .map(|(pos, _)| unit(pos, dim))
        .collect();
    if rel_rows.len() == dim {
        return Err(UniversalError::BadSpec(
            "every coordinate lies in the relation span; the quotient is trivial".into(),
        ));
    }
    // Subalgebra::new checks closure; quotient() checks the ideal property.
    // Either failing would mean the relation span is not normal.
    let rel = Subalgebra::new(Arc::clone(ambient), &rel_rows)?;
    let (algebra, filt, map) = quotient(ambient, &rel, Some(universal.filtration()))?;
    let filtration = filt.expect("filtration passed through");
    filtration.ensure_valid()?;

    let info: Vec<BasisInfo> = map
        .kept_coordinates()
        .iter()
        .map(|&k| universal.info(k).clone())
        .collect();
    let all_names = universal.basis_names();
    let names: Vec<String> = map
        .kept_coordinates()
        .iter()
        .map(|&k| all_names[k].clone())
        .collect();

    let lin_positions: Vec<usize> = info
        .iter()
        .enumerate()
        .filter(|(_, b)| b.linear_leaves == 1)
        .map(|(pos, _)| pos)
        .collect();
    let qdim = algebra.dim();
    let lin_rows: Vec<Vec<Rational>> = lin_positions.iter().map(|&p| unit(p, qdim)).collect();
    let lin = Subalgebra::new(Arc::clone(&algebra), &lin_rows)?;

    // the single-linear span must be abelian and normal
    for (i, a) in lin.basis().iter().enumerate() {
        for b in lin.basis().iter().skip(i + 1) {
            if algebra.bracket(a, b)?.iter().any(|c| !c.is_zero()) {
                return Err(UniversalError::Internal(
                    "single-linear span is not abelian".into(),
                ));
            }
        }
    }
    let full = Subalgebra::full(Arc::clone(&algebra));
    if !full.bracket_span(&lin)?.is_subspace_of(lin.space()) {
        return Err(UniversalError::Internal(
            "single-linear span is not an ideal".into(),
        ));
    }

    Ok(QuotientConstruction {
        spec: universal.spec().clone(),
        ambient_dim: dim,
        algebra,
        filtration,
        map,
        lin,
        lin_positions,
        info,
        names,
    })
}

fn unit(pos: usize, dim: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); dim];
    v[pos] = lie_core::rat(1, 1);
    v
}

impl QuotientConstruction {
    pub fn spec(&self) -> &GeneratorSpec {
        &self.spec
    }

    pub fn algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn projection(&self) -> &QuotientMap {
        &self.map
    }

    /// The abelian normal subgroup's log span.
    pub fn lin(&self) -> &Subalgebra {
        &self.lin
    }

    /// Coordinates spanning the linear subgroup, ascending.
    pub fn lin_positions(&self) -> &[usize] {
        &self.lin_positions
    }

    pub fn info(&self, pos: usize) -> &BasisInfo {
        &self.info[pos]
    }

    pub fn infos(&self) -> &[BasisInfo] {
        &self.info
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Positions (degree, j) of the scaling directions, in exponent order.
    pub fn linear_slots(&self) -> Vec<(usize, usize)> {
        self.spec.linear_slots()
    }

    pub fn identity(&self) -> GroupElement<Rational> {
        GroupElement::identity(Arc::clone(&self.algebra))
    }

    pub fn element(&self, coords: Vec<Rational>) -> Result<GroupElement<Rational>, UniversalError> {
        Ok(GroupElement::new(Arc::clone(&self.algebra), coords)?)
    }

    /// Group homomorphism induced by the projection: exponential coordinates
    /// upstairs map to exponential coordinates downstairs.
    pub fn project_element(
        &self,
        g: &GroupElement<Rational>,
    ) -> Result<GroupElement<Rational>, UniversalError> {
        if g.coords().len() != self.ambient_dim {
            return Err(UniversalError::ConstructionMismatch);
        }
        Ok(GroupElement::new(
            Arc::clone(&self.algebra),
            self.map.project(g.coords()),
        )?)
    }

    /// Does the element lie in the linear subgroup?
    pub fn is_linear(&self, g: &GroupElement<Rational>) -> bool {
        self.lin.contains(g.coords())
    }

    /// g^t: the endomorphism scaling each coordinate by t at its linear
    /// participant's slot and fixing the all-star coordinates.
    pub fn rho_power(
        &self,
        g: &GroupElement<Rational>,
        t: &[Rational],
    ) -> Result<GroupElement<Rational>, UniversalError> {
        let expected = self.linear_slots().len();
        if t.len() != expected {
            return Err(UniversalError::PowerLengthMismatch {
                got: t.len(),
                expected,
            });
        }
        if g.coords().len() != self.dim() {
            return Err(UniversalError::ConstructionMismatch);
        }
        let coords = g
            .coords()
            .iter()
            .zip(&self.info)
            .map(|(c, b)| match b.linear_slot {
                Some(slot) => c * &t[slot],
                None => c.clone(),
            })
            .collect();
        Ok(GroupElement::new(Arc::clone(&self.algebra), coords)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::universal::build_universal;
    use lie_core::rat;

    fn desk() -> QuotientConstruction {
        // one star, one linear, one petal generator, all of degree 1
        let spec = GeneratorSpec::new(2, 2, vec![1, 0], vec![1, 0], vec![1, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        assert_eq!(u.dim(), 6);
        build_quotient(&u).unwrap()
    }

    #[test]
    fn desk_example_shapes() {
        let q = desk();
        assert_eq!(q.dim(), 3);
        assert_eq!(
            q.names(),
            &["e1_1".to_string(), "e1_2".to_string(), "[e1_2, e1_1]".to_string()]
        );
        assert_eq!(q.lin_positions(), &[1, 2]);
        assert_eq!(q.lin().dim(), 2);
        assert!(q.filtration().validate().pass);
    }

    #[test]
    fn petal_free_linear_free_spec_quotients_to_itself() {
        let spec = GeneratorSpec::plain(3, 3, vec![2, 0, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        let q = build_quotient(&u).unwrap();
        assert_eq!(q.dim(), u.dim());
        assert!(q.lin_positions().is_empty());
    }

    #[test]
    fn all_petal_spec_is_rejected() {
        let spec = GeneratorSpec::new(2, 2, vec![0, 0], vec![0, 0], vec![1, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        assert!(matches!(
            build_quotient(&u),
            Err(UniversalError::BadSpec(_))
        ));
    }

    #[test]
    fn power_with_unit_exponents_is_the_identity_map() {
        let q = desk();
        let g = q.element(vec![rat(2, 1), rat(3, 5), rat(-1, 2)]).unwrap();
        let t = vec![rat(1, 1)];
        assert_eq!(q.rho_power(&g, &t).unwrap(), g);
        let zero = vec![rat(0, 1)];
        let killed = q.rho_power(&g, &zero).unwrap();
        assert_eq!(killed.coords(), &[rat(2, 1), rat(0, 1), rat(0, 1)]);
    }

    #[test]
    fn powers_compose_multiplicatively() {
        let q = desk();
        let g = q.element(vec![rat(1, 3), rat(2, 1), rat(5, 7)]).unwrap();
        let t = vec![rat(3, 2)];
        let tp = vec![rat(-4, 5)];
        let lhs = q.rho_power(&q.rho_power(&g, &t).unwrap(), &tp).unwrap();
        let rhs = q.rho_power(&g, &[&t[0] * &tp[0]]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn powers_add_on_the_linear_subgroup() {
        let q = desk();
        let g = q.element(vec![rat(0, 1), rat(2, 3), rat(-7, 2)]).unwrap();
        assert!(q.is_linear(&g));
        let t = vec![rat(5, 4)];
        let tp = vec![rat(-2, 3)];
        let lhs = q
            .rho_power(&g, &t)
            .unwrap()
            .mul(&q.rho_power(&g, &tp).unwrap())
            .unwrap();
        let rhs = q.rho_power(&g, &[&t[0] + &tp[0]]).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn projection_is_a_group_homomorphism() {
        let spec = GeneratorSpec::new(2, 2, vec![1, 0], vec![1, 0], vec![1, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        let q = build_quotient(&u).unwrap();
        let mut rng = lie_core::rng::SplitMix64::new(7);
        for _ in 0..25 {
            let a: Vec<Rational> = (0..6).map(|_| rng.next_rational(4, 4)).collect();
            let b: Vec<Rational> = (0..6).map(|_| rng.next_rational(4, 4)).collect();
            let ga = GroupElement::new(Arc::clone(u.algebra()), a).unwrap();
            let gb = GroupElement::new(Arc::clone(u.algebra()), b).unwrap();
            let lhs = q.project_element(&ga.mul(&gb).unwrap()).unwrap();
            let rhs = q
                .project_element(&ga)
                .unwrap()
                .mul(&q.project_element(&gb).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}
