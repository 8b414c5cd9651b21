use crate::filt::Filtration;
use crate::subalgebra::Subalgebra;
use crate::FiltrationError;
use lie_core::linalg::RowSpace;
use lie_core::{LieAlgebra, Rational};
use num_traits::{One, Zero};
use std::sync::Arc;

/// Linear projection onto a complement of an ideal, with a right inverse
/// embedding the quotient back along the untouched coordinates.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    ideal: RowSpace,
    /// ambient coordinates kept as quotient coordinates (non-pivot columns)
    kept: Vec<usize>,
    ambient_dim: usize,
}

impl QuotientMap {
    pub fn kept_coordinates(&self) -> &[usize] {
        &self.kept
    }

    /// Ambient vector to quotient coordinates.
    pub fn project(&self, v: &[Rational]) -> Vec<Rational> {
        let reduced = self.ideal.reduce(v);
        self.kept.iter().map(|&k| reduced[k].clone()).collect()
    }

    /// Quotient coordinates to the canonical ambient representative.
    pub fn lift(&self, w: &[Rational]) -> Vec<Rational> {
        let mut out = vec![Rational::zero(); self.ambient_dim];
        for (slot, &k) in self.kept.iter().enumerate() {
            out[k] = w[slot].clone();
        }
        out
    }
}

/// Quotient of an algebra by an ideal, carrying a filtration along. The
/// complement basis is the set of coordinates away from the ideal's pivots,
/// so projection and lifting are exact and canonical.
pub fn quotient(
    algebra: &Arc<LieAlgebra>,
    ideal: &Subalgebra,
    filt: Option<&Filtration>,
) -> Result<(Arc<LieAlgebra>, Option<Filtration>, QuotientMap), FiltrationError> {
    algebra.ensure_valid()?;
    if *ideal.ambient().as_ref() != *algebra.as_ref() {
        return Err(FiltrationError::AmbientMismatch);
    }
    // ideal check on generators: [e_i, H] inside H
    let full = Subalgebra::full(Arc::clone(algebra));
    if !full.bracket_span(ideal)?.is_subspace_of(ideal.space()) {
        return Err(FiltrationError::NotAnIdeal);
    }

    let dim = algebra.dim();
    let pivots: Vec<usize> = ideal.space().pivots().to_vec();
    let kept: Vec<usize> = (0..dim).filter(|k| !pivots.contains(k)).collect();
    let map = QuotientMap {
        ideal: ideal.space().clone(),
        kept: kept.clone(),
        ambient_dim: dim,
    };

    let qdim = kept.len();
    let mut entries = Vec::new();
    for a in 0..qdim {
        for b in (a + 1)..qdim {
            let mut ea = vec![Rational::zero(); dim];
            ea[kept[a]] = Rational::one();
            let mut eb = vec![Rational::zero(); dim];
            eb[kept[b]] = Rational::one();
            let w = map.project(&algebra.bracket(&ea, &eb)?);
            for (k, c) in w.into_iter().enumerate() {
                if !c.is_zero() {
                    entries.push((a, b, k, c));
                }
            }
        }
    }
    let quotient_algebra = Arc::new(LieAlgebra::new(
        qdim.max(1),
        algebra.declared_step(),
        if qdim == 0 { vec![] } else { entries },
    )?);
    quotient_algebra.ensure_valid()?;

    let induced = match filt {
        None => None,
        Some(f) => {
            let mut groups = Vec::new();
            for (idx, sub) in f.stored() {
                let rows: Vec<Vec<Rational>> =
                    sub.basis().iter().map(|v| map.project(v)).collect();
                let space = RowSpace::from_rows(qdim.max(1), rows);
                let qsub =
                    Subalgebra::new(Arc::clone(&quotient_algebra), space.rows())?;
                groups.push((idx.clone(), qsub));
            }
            Some(Filtration::new(
                Arc::clone(&quotient_algebra),
                f.flavor(),
                groups,
            )?)
        }
    };

    Ok((quotient_algebra, induced, map))
}

/// Quotient without a filtration, for callers that only need the algebra.
pub fn quotient_algebra(
    algebra: &Arc<LieAlgebra>,
    ideal: &Subalgebra,
) -> Result<(Arc<LieAlgebra>, QuotientMap), FiltrationError> {
    let (q, _, m) = quotient(algebra, ideal, None)?;
    Ok((q, m))
}
