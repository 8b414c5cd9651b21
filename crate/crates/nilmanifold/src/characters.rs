use crate::{NilError, Nilmanifold};
use filtration::Subalgebra;
use lie_core::linalg::RowSpace;
use lie_core::{GroupElement, Rational};
use num_traits::Zero;
use std::sync::Arc;

fn commutator_span(m: &Nilmanifold) -> RowSpace {
    let algebra = m.algebra();
    let dim = algebra.dim();
    let mut rows = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            let b = algebra.basis_bracket(i, j);
            if b.iter().any(|c| !c.is_zero()) {
                rows.push(b);
            }
        }
    }
    RowSpace::from_rows(dim, rows)
}

/// Checks whether g ↦ k·ψ(g) is a homomorphism and reports ‖k‖_∞. The exact
/// criterion: the vector must annihilate every direction reached by [G,G],
/// because those are the only coordinates on which ψ fails to be additive.
pub fn validate_horizontal(m: &Nilmanifold, k: &[i64]) -> Result<(bool, u64), NilError> {
    if k.len() != m.dim() {
        return Err(NilError::BadInput(format!(
            "character length {} does not match dimension {}",
            k.len(),
            m.dim()
        )));
    }
    let mut in_basis_order = vec![0i64; m.dim()];
    for (p, &b) in m.order().iter().enumerate() {
        in_basis_order[b] = k[p];
    }
    let valid = commutator_span(m).rows().iter().all(|row| {
        row.iter()
            .zip(&in_basis_order)
            .map(|(c, &kb)| c * Rational::from_integer(kb.into()))
            .sum::<Rational>()
            .is_zero()
    });
    let size = k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0);
    Ok((valid, size))
}

/// A homomorphism G → R of the form g ↦ k·ψ(g) with k an integer vector; it
/// automatically maps Γ into Z.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HorizontalCharacter {
    k: Vec<i64>,
}

impl HorizontalCharacter {
    pub fn new(m: &Nilmanifold, k: Vec<i64>) -> Result<Self, NilError> {
        let (valid, _) = validate_horizontal(m, &k)?;
        if !valid {
            return Err(NilError::BadCharacter(
                "k does not annihilate the commutator directions".into(),
            ));
        }
        Ok(HorizontalCharacter { k })
    }

    pub fn vector(&self) -> &[i64] {
        &self.k
    }

    /// ‖k‖_∞.
    pub fn size(&self) -> u64 {
        self.k.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn eval(&self, m: &Nilmanifold, g: &GroupElement<Rational>) -> Result<Rational, NilError> {
        let u = m.psi(g)?;
        Ok(self
            .k
            .iter()
            .zip(&u)
            .map(|(&kp, up)| up * Rational::from_integer(kp.into()))
            .sum())
    }

    /// Characters add coordinatewise; the sum of valid characters is valid.
    pub fn add(&self, other: &Self) -> Option<Self> {
        if self.k.len() != other.k.len() {
            return None;
        }
        let k = self
            .k
            .iter()
            .zip(&other.k)
            .map(|(a, b)| a.checked_add(*b))
            .collect::<Option<Vec<i64>>>()?;
        Some(HorizontalCharacter { k })
    }
}

/// An integer frequency on a central subgroup T: g ↦ ξ·(coordinates of log g
/// in T's basis), integral on Γ ∩ T.
#[derive(Clone, Debug)]
pub struct VerticalCharacter {
    t: Subalgebra,
    xi: Vec<i64>,
}

impl VerticalCharacter {
    pub fn new(m: &Nilmanifold, t: Subalgebra, xi: Vec<i64>) -> Result<Self, NilError> {
        if *t.ambient().as_ref() != *m.algebra().as_ref() {
            return Err(NilError::BadCharacter(
                "subgroup lives in a different algebra".into(),
            ));
        }
        if xi.len() != t.dim() {
            return Err(NilError::BadCharacter(format!(
                "frequency length {} does not match subgroup dimension {}",
                xi.len(),
                t.dim()
            )));
        }
        let algebra = m.algebra();
        let dim = algebra.dim();
        for row in t.basis() {
            for i in 0..dim {
                let mut unit = vec![Rational::zero(); dim];
                unit[i] = Rational::from_integer(1.into());
                let bracket = algebra.bracket(row, &unit)?;
                if bracket.iter().any(|c| !c.is_zero()) {
                    return Err(NilError::BadCharacter("subgroup is not central".into()));
                }
            }
        }
        let vc = VerticalCharacter { t, xi };
        for (p, &b) in m.order().iter().enumerate() {
            let mut unit = vec![Rational::zero(); dim];
            unit[b] = Rational::from_integer(1.into());
            if vc.t.contains(&unit) && !vc.pair_log(&unit)?.is_integer() {
                return Err(NilError::BadCharacter(format!(
                    "frequency is not integral on the lattice direction at position {p}"
                )));
            }
        }
        Ok(vc)
    }

    pub fn zero(m: &Nilmanifold, t: Subalgebra) -> Result<Self, NilError> {
        let xi = vec![0; t.dim()];
        VerticalCharacter::new(m, t, xi)
    }

    pub fn subgroup(&self) -> &Subalgebra {
        &self.t
    }

    pub fn frequency(&self) -> &[i64] {
        &self.xi
    }

    /// ‖ξ‖_∞.
    pub fn height(&self) -> u64 {
        self.xi.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }

    /// ξ paired with a vector that must lie in T.
    pub fn pair_log(&self, v: &[Rational]) -> Result<Rational, NilError> {
        let coords = self
            .t
            .space()
            .coordinates(v)
            .ok_or_else(|| NilError::BadInput("vector is not in the subgroup".into()))?;
        Ok(self
            .xi
            .iter()
            .zip(&coords)
            .map(|(&x, c)| c * Rational::from_integer(x.into()))
            .sum())
    }

    /// ξ paired with a central element of T; exp is linear there, so the
    /// group coordinates are the log coordinates.
    pub fn pair(&self, g: &GroupElement<Rational>) -> Result<Rational, NilError> {
        self.pair_log(g.coords())
    }

    /// A group element of T with the given coordinates in T's basis.
    pub fn element(&self, coords: &[Rational]) -> Result<GroupElement<Rational>, NilError> {
        if coords.len() != self.t.dim() {
            return Err(NilError::BadInput("coordinate length mismatch".into()));
        }
        let dim = self.t.ambient().dim();
        let mut v = vec![Rational::zero(); dim];
        for (c, row) in coords.iter().zip(self.t.basis()) {
            for (slot, r) in v.iter_mut().zip(row) {
                *slot += c * r;
            }
        }
        Ok(GroupElement::new(Arc::clone(self.t.ambient()), v)?)
    }
}
