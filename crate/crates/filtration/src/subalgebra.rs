use crate::FiltrationError;
use lie_core::linalg::RowSpace;
use lie_core::{LieAlgebra, Rational};
use std::sync::Arc;

/// A rational subalgebra of a nilpotent Lie algebra, stored as a canonical
/// row-reduced basis so equality is syntactic.
#[derive(Clone, Debug, PartialEq)]
pub struct Subalgebra {
    ambient: Arc<LieAlgebra>,
    space: RowSpace,
}

impl Subalgebra {
    /// Wraps a spanning set, requiring it to already be bracket-closed.
    pub fn new(
        ambient: Arc<LieAlgebra>,
        vectors: &[Vec<Rational>],
    ) -> Result<Self, FiltrationError> {
        let space = RowSpace::from_rows(ambient.dim(), vectors.iter().cloned());
        let closed = Subalgebra {
            ambient: Arc::clone(&ambient),
            space: space.clone(),
        };
        if !closed.is_bracket_closed()? {
            return Err(FiltrationError::NotBracketClosed);
        }
        Ok(closed)
    }

    /// Smallest bracket-closed subalgebra containing the given vectors.
    pub fn generated_by(
        ambient: Arc<LieAlgebra>,
        vectors: &[Vec<Rational>],
    ) -> Result<Self, FiltrationError> {
        let mut space = RowSpace::from_rows(ambient.dim(), vectors.iter().cloned());
        loop {
            let rows: Vec<Vec<Rational>> = space.rows().to_vec();
            let mut grew = false;
            for (i, a) in rows.iter().enumerate() {
                for b in rows.iter().skip(i + 1) {
                    let w = ambient.bracket(a, b)?;
                    if !space.contains(&w) {
                        space.insert(&w);
                        grew = true;
                    }
                }
            }
            if !grew {
                break;
            }
        }
        Ok(Subalgebra { ambient, space })
    }

    pub fn trivial(ambient: Arc<LieAlgebra>) -> Self {
        let d = ambient.dim();
        Subalgebra {
            ambient,
            space: RowSpace::empty(d),
        }
    }

    pub fn full(ambient: Arc<LieAlgebra>) -> Self {
        let d = ambient.dim();
        Subalgebra {
            ambient,
            space: RowSpace::full(d),
        }
    }

    pub fn ambient(&self) -> &Arc<LieAlgebra> {
        &self.ambient
    }

    pub fn space(&self) -> &RowSpace {
        &self.space
    }

    pub fn basis(&self) -> &[Vec<Rational>] {
        self.space.rows()
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn is_trivial(&self) -> bool {
        self.space.is_trivial()
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.space.contains(v)
    }

    pub fn is_subalgebra_of(&self, other: &Subalgebra) -> bool {
        self.space.is_subspace_of(&other.space)
    }

    pub fn is_bracket_closed(&self) -> Result<bool, FiltrationError> {
        let rows = self.space.rows();
        for (i, a) in rows.iter().enumerate() {
            for b in rows.iter().skip(i) {
                let w = self.ambient.bracket(a, b)?;
                if !self.space.contains(&w) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Subalgebra) -> Result<(), FiltrationError> {
        if Arc::ptr_eq(&self.ambient, &other.ambient) || *self.ambient == *other.ambient {
            Ok(())
        } else {
            Err(FiltrationError::AmbientMismatch)
        }
    }

    /// Smallest bracket-closed subalgebra containing both operands.
    pub fn join(&self, other: &Subalgebra) -> Result<Subalgebra, FiltrationError> {
        self.check_ambient(other)?;
        let vectors: Vec<Vec<Rational>> = self
            .basis()
            .iter()
            .chain(other.basis())
            .cloned()
            .collect();
        Subalgebra::generated_by(Arc::clone(&self.ambient), &vectors)
    }

    /// Linear span of pairwise brackets [self, other] (not closed further).
    pub fn bracket_span(&self, other: &Subalgebra) -> Result<RowSpace, FiltrationError> {
        self.check_ambient(other)?;
        let mut out = RowSpace::empty(self.ambient.dim());
        for a in self.basis() {
            for b in other.basis() {
                out.insert(&self.ambient.bracket(a, b)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie_core::rat;
    use lie_core::standard::heisenberg;

    fn e(i: usize, d: usize) -> Vec<Rational> {
        let mut v = vec![rat(0, 1); d];
        v[i] = rat(1, 1);
        v
    }

    #[test]
    fn generators_close_up() {
        let h = heisenberg();
        let x = Subalgebra::new(Arc::clone(&h), &[e(0, 3)]).unwrap();
        let y = Subalgebra::new(Arc::clone(&h), &[e(1, 3)]).unwrap();
        let all = x.join(&y).unwrap();
        assert_eq!(all.dim(), 3);

        let z = Subalgebra::new(Arc::clone(&h), &[e(2, 3)]).unwrap();
        let xz = x.join(&z).unwrap();
        assert_eq!(xz.dim(), 2);
        assert!(xz.contains(&e(0, 3)));
        assert!(xz.contains(&e(2, 3)));
    }

    #[test]
    fn non_closed_span_is_rejected() {
        let h = heisenberg();
        let err = Subalgebra::new(Arc::clone(&h), &[e(0, 3), e(1, 3)]);
        assert!(matches!(err, Err(FiltrationError::NotBracketClosed)));
    }

    #[test]
    fn join_is_idempotent() {
        let h = heisenberg();
        let x = Subalgebra::new(Arc::clone(&h), &[e(0, 3)]).unwrap();
        assert_eq!(x.join(&x).unwrap(), x);
    }
}
