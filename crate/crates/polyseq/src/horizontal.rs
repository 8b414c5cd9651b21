use crate::sequence::PolySequence;
use crate::PolyError;
use filtration::{Filtration, Flavor, OrderingIndex, Subalgebra};
use lie_core::linalg::{solve, RowSpace};
use lie_core::Rational;
use num_traits::{One, Signed, Zero};

/// The degree-rank group at (d, r), reading rank overflow (r > d) as the
/// next degree: no element of degree d has rank above d.
fn dr_group(filtration: &Filtration, d: usize, r: usize) -> Subalgebra {
    if r > d {
        filtration.group(&OrderingIndex::DegreeRank(d + 1, 0))
    } else {
        filtration.group(&OrderingIndex::DegreeRank(d, r))
    }
}

/// The i-th horizontal torus G_(i,1)/G_(i,2) as a concrete coordinate
/// space: a complement basis inside G_(i,1) together with the lower span.
#[derive(Clone, Debug)]
pub struct HorizontalSpace {
    level: usize,
    complement: Vec<Vec<Rational>>,
    lower: Vec<Vec<Rational>>,
    ambient_dim: usize,
}

/// A point on a horizontal torus, in complement-basis coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct HorizontalElement {
    pub level: usize,
    pub coords: Vec<Rational>,
}

impl HorizontalSpace {
    pub fn at(filtration: &Filtration, level: usize) -> Result<Self, PolyError> {
        if filtration.flavor() != Flavor::DegreeRank {
            return Err(PolyError::FlavorMismatch(
                "a degree-rank filtration".into(),
            ));
        }
        if level == 0 || level > filtration.degree() {
            return Err(PolyError::BadIndex(format!(
                "horizontal level {level} outside 1..={}",
                filtration.degree()
            )));
        }
        let upper = dr_group(filtration, level, 1);
        let lower = dr_group(filtration, level, 2);
        let mut span = RowSpace::empty(filtration.algebra().dim());
        for row in lower.basis() {
            span.insert(row);
        }
        let mut complement = Vec::new();
        for row in upper.basis() {
            if !span.contains(row) {
                span.insert(row);
                complement.push(row.clone());
            }
        }
        Ok(HorizontalSpace {
            level,
            complement,
            lower: lower.basis().to_vec(),
            ambient_dim: filtration.algebra().dim(),
        })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.complement.len()
    }

    pub fn complement_basis(&self) -> &[Vec<Rational>] {
        &self.complement
    }

    /// Projects a logarithm vector in G_(i,1) to torus coordinates.
    pub fn project(&self, log_coords: &[Rational]) -> Result<HorizontalElement, PolyError> {
        if log_coords.len() != self.ambient_dim {
            return Err(PolyError::ArityMismatch {
                got: log_coords.len(),
                expected: self.ambient_dim,
            });
        }
        let unknowns = self.complement.len() + self.lower.len();
        let mut m = vec![vec![Rational::zero(); unknowns]; self.ambient_dim];
        for (k, basis_vec) in self.complement.iter().chain(self.lower.iter()).enumerate() {
            for (r, value) in basis_vec.iter().enumerate() {
                m[r][k] = value.clone();
            }
        }
        let solution = solve(&m, log_coords).ok_or_else(|| {
            PolyError::BadIndex(format!(
                "element does not lie in the level-{} group",
                self.level
            ))
        })?;
        Ok(HorizontalElement {
            level: self.level,
            coords: solution[..self.complement.len()].to_vec(),
        })
    }

    /// Lifts torus coordinates back to an ambient logarithm vector.
    pub fn lift(&self, coords: &[Rational]) -> Result<Vec<Rational>, PolyError> {
        if coords.len() != self.complement.len() {
            return Err(PolyError::ArityMismatch {
                got: coords.len(),
                expected: self.complement.len(),
            });
        }
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (c, row) in coords.iter().zip(&self.complement) {
            for (o, v) in out.iter_mut().zip(row) {
                *o = &*o + &(c * v);
            }
        }
        Ok(out)
    }
}

/// The i-th horizontal Taylor coefficient of a one-variable sequence:
/// its binomial coefficient at index i, reduced modulo G_(i,2).
pub fn taylor_coefficient(
    seq: &PolySequence,
    level: usize,
) -> Result<HorizontalElement, PolyError> {
    if seq.arity() != 1 {
        return Err(PolyError::ArityMismatch {
            got: seq.arity(),
            expected: 1,
        });
    }
    let space = HorizontalSpace::at(seq.filtration(), level)?;
    let g = seq.coeff(&[level as u32]);
    space.project(g.coords())
}

/// A level-i horizontal character: a rational functional on the ambient
/// coordinates that kills G_(i,2) and is integral on the lattice directions
/// of G_(i,1).
#[derive(Clone, Debug, PartialEq)]
pub struct Character {
    level: usize,
    row: Vec<Rational>,
}

impl Character {
    pub fn new(
        filtration: &Filtration,
        level: usize,
        row: Vec<Rational>,
    ) -> Result<Self, PolyError> {
        let space = HorizontalSpace::at(filtration, level)?;
        if row.len() != filtration.algebra().dim() {
            return Err(PolyError::ArityMismatch {
                got: row.len(),
                expected: filtration.algebra().dim(),
            });
        }
        let dot = |a: &[Rational], b: &[Rational]| -> Rational {
            a.iter().zip(b).map(|(x, y)| x * y).sum()
        };
        for lower_row in &space.lower {
            if !dot(&row, lower_row).is_zero() {
                return Err(PolyError::BadCharacter(format!(
                    "level-{level} character must annihilate the rank-2 part"
                )));
            }
        }
        let upper = dr_group(filtration, level, 1);
        for basis_row in upper.basis() {
            if basis_row.iter().any(|v| !v.denom().is_one()) {
                return Err(PolyError::BasisNotAdapted(
                    "lattice integrality needs an integral group basis".into(),
                ));
            }
            if !dot(&row, basis_row).denom().is_one() {
                return Err(PolyError::BadCharacter(format!(
                    "level-{level} character is not integral on the lattice"
                )));
            }
        }
        Ok(Character { level, row })
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn row(&self) -> &[Rational] {
        &self.row
    }

    /// The character as a vector on the torus coordinates of its level.
    pub fn torus_vector(&self, space: &HorizontalSpace) -> Result<Vec<Rational>, PolyError> {
        if space.level != self.level {
            return Err(PolyError::BadIndex(format!(
                "character level {} paired with torus level {}",
                self.level, space.level
            )));
        }
        Ok(space
            .complement
            .iter()
            .map(|basis_vec| {
                self.row
                    .iter()
                    .zip(basis_vec)
                    .map(|(x, y)| x * y)
                    .sum::<Rational>()
            })
            .collect())
    }

    /// Pairs the character with a point on its torus.
    pub fn pair(
        &self,
        space: &HorizontalSpace,
        point: &HorizontalElement,
    ) -> Result<Rational, PolyError> {
        let v = self.torus_vector(space)?;
        if point.coords.len() != v.len() {
            return Err(PolyError::ArityMismatch {
                got: point.coords.len(),
                expected: v.len(),
            });
        }
        Ok(v.iter().zip(&point.coords).map(|(a, b)| a * b).sum())
    }

    /// Largest absolute value taken on the torus basis (the height that
    /// enters the factorization bounds).
    pub fn height(&self, space: &HorizontalSpace) -> Result<Rational, PolyError> {
        Ok(self
            .torus_vector(space)?
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(Rational::zero))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie_core::rat;
    use std::collections::BTreeMap;
    use std::sync::Arc;
    use universal_constructions::{build_universal, GeneratorSpec};

    fn heis_dr() -> (Arc<Filtration>, Arc<lie_core::LieAlgebra>) {
        let spec = GeneratorSpec::plain(2, 2, vec![2, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        (Arc::new(u.filtration().clone()), u.algebra().clone())
    }

    #[test]
    fn first_horizontal_space_of_heisenberg_is_the_plane() {
        let (f, _) = heis_dr();
        let space = HorizontalSpace::at(&f, 1).unwrap();
        assert_eq!(space.dim(), 2);
        let space2 = HorizontalSpace::at(&f, 2).unwrap();
        assert_eq!(space2.dim(), 0, "every degree-2 element is a commutator");
    }

    #[test]
    fn linear_sequence_has_unit_first_coefficient() {
        let (f, a) = heis_dr();
        let x = lie_core::GroupElement::new(Arc::clone(&a), vec![rat(1, 1), rat(0, 1), rat(0, 1)])
            .unwrap();
        let seq = PolySequence::new(Arc::clone(&f), 1, [(vec![1], x)]).unwrap();
        let t = taylor_coefficient(&seq, 1).unwrap();
        assert_eq!(t.coords, vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn degree_two_generators_survive_on_the_second_torus() {
        let spec = GeneratorSpec::plain(3, 3, vec![1, 1, 0]).unwrap();
        let u = build_universal(&spec).unwrap();
        let f = Arc::new(u.filtration().clone());
        let space = HorizontalSpace::at(&f, 2).unwrap();
        assert_eq!(space.dim(), 1);
        let back = space.lift(&[rat(3, 2)]).unwrap();
        let point = space.project(&back).unwrap();
        assert_eq!(point.coords, vec![rat(3, 2)]);
    }

    #[test]
    fn characters_reject_rank_two_mass_and_fractional_rows() {
        let (f, _) = heis_dr();
        // fine: integral row supported on the generators
        assert!(Character::new(&f, 1, vec![rat(2, 1), rat(-3, 1), rat(0, 1)]).is_ok());
        // a level-1 character may not see the commutator direction
        assert!(Character::new(&f, 1, vec![rat(1, 1), rat(0, 1), rat(1, 1)]).is_err());
        // fractional on the lattice
        assert!(Character::new(&f, 1, vec![rat(1, 2), rat(0, 1), rat(0, 1)]).is_err());
    }

    #[test]
    fn taylor_coefficients_add_under_pointwise_products() {
        let (f, a) = heis_dr();
        let linear = |rng: &mut lie_core::rng::SplitMix64, a: &Arc<lie_core::LieAlgebra>| {
            let v: Vec<Rational> = (0..3).map(|_| rng.next_rational(3, 3)).collect();
            lie_core::GroupElement::new(Arc::clone(a), v).unwrap()
        };
        let central = |rng: &mut lie_core::rng::SplitMix64, a: &Arc<lie_core::LieAlgebra>| {
            let v = vec![Rational::zero(), Rational::zero(), rng.next_rational(2, 3)];
            lie_core::GroupElement::new(Arc::clone(a), v).unwrap()
        };
        let mut rng = lie_core::rng::SplitMix64::new(91);
        for _ in 0..100 {
            let mut ga = BTreeMap::new();
            ga.insert(vec![1], linear(&mut rng, &a));
            ga.insert(vec![2], central(&mut rng, &a));
            let mut gb = BTreeMap::new();
            gb.insert(vec![1], linear(&mut rng, &a));
            gb.insert(vec![2], central(&mut rng, &a));
            let sa = PolySequence::new(Arc::clone(&f), 1, ga).unwrap();
            let sb = PolySequence::new(Arc::clone(&f), 1, gb).unwrap();
            let product = sa.pointwise_mul(&sb).unwrap();
            let ta = taylor_coefficient(&sa, 1).unwrap();
            let tb = taylor_coefficient(&sb, 1).unwrap();
            let tp = taylor_coefficient(&product, 1).unwrap();
            let sum: Vec<Rational> = ta
                .coords
                .iter()
                .zip(&tb.coords)
                .map(|(x, y)| x + y)
                .collect();
            assert_eq!(tp.coords, sum);
        }
    }

    #[test]
    fn taylor_coefficients_are_shift_invariant() {
        let (f, a) = heis_dr();
        let g1 = lie_core::GroupElement::new(
            Arc::clone(&a),
            vec![rat(1, 3), rat(5, 2), rat(-1, 1)],
        )
        .unwrap();
        let g2 =
            lie_core::GroupElement::new(Arc::clone(&a), vec![rat(0, 1), rat(0, 1), rat(7, 3)])
                .unwrap();
        let seq = PolySequence::new(Arc::clone(&f), 1, [(vec![1], g1), (vec![2], g2)]).unwrap();
        let t = taylor_coefficient(&seq, 1).unwrap();
        for h in [-4i64, -1, 1, 2, 9] {
            let shifted = seq.shift(&[h]).unwrap();
            assert_eq!(taylor_coefficient(&shifted, 1).unwrap(), t);
        }
    }
}
