//! Scaling directions acting on the quotient pair group.
//!
//! Elements are triples (t, g, g1): an exponent vector t, one t per linear
//! generator slot; g in the quotient group; g1 in its abelian linear
//! subgroup. The pair part multiplies by
//! (g, g1)(g', g1') = (gg', ((g')^-1 g1 g') g1'), and the exponent part acts
//! through rho(t)(g, g1) = (g * g1^t, g1), giving
//! (t, x)(t', y) = (t + t', rho(t')(x) * y).
//!
//! The same data carries a Lie algebra on scaling ⊕ quotient ⊕ linear
//! coordinates whose exact validation (antisymmetry, Jacobi, nilpotency)
//! cross-checks the sign conventions of the group law, and a two-variable
//! filtration in which the whole strip above the first scaling degree is
//! trivial.

use crate::quot::QuotientConstruction;
use crate::UniversalError;
use filtration::{Filtration, FiltrationReport, Flavor, OrderingIndex, Subalgebra};
use lie_core::{GroupElement, LieAlgebra, Rational};
use num_traits::{One, Zero};
use std::sync::Arc;

#[derive(Clone, Debug, PartialEq)]
pub struct SemidirectElement {
    t: Vec<Rational>,
    g: GroupElement<Rational>,
    g1: GroupElement<Rational>,
}

impl SemidirectElement {
    pub fn exponents(&self) -> &[Rational] {
        &self.t
    }

    pub fn quotient_part(&self) -> &GroupElement<Rational> {
        &self.g
    }

    pub fn linear_part(&self) -> &GroupElement<Rational> {
        &self.g1
    }

    pub fn is_identity(&self) -> bool {
        self.t.iter().all(|c| c.is_zero()) && self.g.is_identity() && self.g1.is_identity()
    }
}

pub struct SemidirectGroup {
    quot: QuotientConstruction,
    algebra: Arc<LieAlgebra>,
    scaling: usize,
    /// l_index_of[q position] = coordinate in the linear copy, if any.
    l_index_of: Vec<Option<usize>>,
}

impl SemidirectGroup {
    pub fn new(quot: QuotientConstruction) -> Result<Self, UniversalError> {
        let qdim = quot.dim();
        let lin_positions = quot.lin_positions().to_vec();
        let ldim = lin_positions.len();
        let scaling = quot.linear_slots().len();
        let vdim = scaling + qdim + ldim;
        if vdim > lie_core::MAX_DIM {
            return Err(UniversalError::CapExceeded(format!(
                "combined construction has dimension {vdim}, above the arithmetic cap {}",
                lie_core::MAX_DIM
            )));
        }
        let mut l_index_of = vec![None; qdim];
        for (m, &p) in lin_positions.iter().enumerate() {
            l_index_of[p] = Some(m);
        }

        let mut entries: Vec<(usize, usize, usize, Rational)> = Vec::new();
        // scaling direction a against linear copy of b: minus the quotient
        // coordinate of b when b's linear participant sits in slot a
        for (m, &p) in lin_positions.iter().enumerate() {
            let slot = quot.info(p).linear_slot.expect("linear coordinate");
            entries.push((
                slot,
                scaling + qdim + m,
                scaling + p,
                -Rational::one(),
            ));
        }
        // quotient against quotient: the quotient's own table
        for (i, j, k, c) in quot.algebra().entries() {
            if i < j {
                entries.push((scaling + i, scaling + j, scaling + k, c.clone()));
            }
        }
        // quotient against linear copy: bracket taken in the quotient, which
        // stays inside the linear span, re-read in linear-copy coordinates
        for (m, &p) in lin_positions.iter().enumerate() {
            for i in 0..qdim {
                let w = quot.algebra().basis_bracket(i, p);
                for (pos, c) in w.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let n = l_index_of[pos].ok_or_else(|| {
                        UniversalError::Internal(
                            "bracket with the linear span escapes it".into(),
                        )
                    })?;
                    entries.push((
                        scaling + i,
                        scaling + qdim + m,
                        scaling + qdim + n,
                        c.clone(),
                    ));
                }
            }
        }

        let step = (quot.algebra().declared_step() + 1).min(lie_core::MAX_STEP);
        let algebra = Arc::new(LieAlgebra::new(vdim, step, entries)?);
        // exact antisymmetry + Jacobi + nilpotency; any sign slip in the
        // derivation above fails here
        algebra.ensure_valid()?;

        Ok(SemidirectGroup {
            quot,
            algebra,
            scaling,
            l_index_of,
        })
    }

    pub fn quotient(&self) -> &QuotientConstruction {
        &self.quot
    }

    /// The combined Lie algebra: scaling ⊕ quotient ⊕ linear coordinates.
    pub fn lie_algebra(&self) -> &Arc<LieAlgebra> {
        &self.algebra
    }

    /// Number of scaling directions (linear generator slots).
    pub fn scaling_count(&self) -> usize {
        self.scaling
    }

    pub fn l_index_of(&self, q_position: usize) -> Option<usize> {
        self.l_index_of[q_position]
    }

    pub fn identity(&self) -> SemidirectElement {
        SemidirectElement {
            t: vec![Rational::zero(); self.scaling],
            g: self.quot.identity(),
            g1: self.quot.identity(),
        }
    }

    pub fn element(
        &self,
        t: Vec<Rational>,
        g: GroupElement<Rational>,
        g1: GroupElement<Rational>,
    ) -> Result<SemidirectElement, UniversalError> {
        if t.len() != self.scaling {
            return Err(UniversalError::PowerLengthMismatch {
                got: t.len(),
                expected: self.scaling,
            });
        }
        self.check_member(&g)?;
        self.check_member(&g1)?;
        if !self.quot.is_linear(&g1) {
            return Err(UniversalError::NotLinear);
        }
        Ok(SemidirectElement { t, g, g1 })
    }

    fn check_member(&self, g: &GroupElement<Rational>) -> Result<(), UniversalError> {
        if Arc::ptr_eq(g.algebra(), self.quot.algebra())
            || *g.algebra().as_ref() == *self.quot.algebra().as_ref()
        {
            Ok(())
        } else {
            Err(UniversalError::ConstructionMismatch)
        }
    }

    fn check_element(&self, a: &SemidirectElement) -> Result<(), UniversalError> {
        if a.t.len() != self.scaling {
            return Err(UniversalError::ConstructionMismatch);
        }
        self.check_member(&a.g)?;
        self.check_member(&a.g1)?;
        if !self.quot.is_linear(&a.g1) {
            return Err(UniversalError::NotLinear);
        }
        Ok(())
    }

    /// (g, g1)(g', g1') = (gg', ((g')^-1 g1 g') g1')
    pub fn inner_multiply(
        &self,
        a: (&GroupElement<Rational>, &GroupElement<Rational>),
        b: (&GroupElement<Rational>, &GroupElement<Rational>),
    ) -> Result<(GroupElement<Rational>, GroupElement<Rational>), UniversalError> {
        let g = a.0.mul(b.0)?;
        let conj = a.1.conjugate_by(&b.0.inverse())?;
        let g1 = conj.mul(b.1)?;
        Ok((g, g1))
    }

    /// (g, g1)^-1 = (g^-1, g g1^-1 g^-1)
    pub fn inner_inverse(
        &self,
        a: (&GroupElement<Rational>, &GroupElement<Rational>),
    ) -> Result<(GroupElement<Rational>, GroupElement<Rational>), UniversalError> {
        let g = a.0.inverse();
        let g1 = a.1.inverse().conjugate_by(a.0)?;
        Ok((g, g1))
    }

    /// rho(t)(g, g1) = (g * g1^t, g1)
    pub fn rho(
        &self,
        t: &[Rational],
        a: (&GroupElement<Rational>, &GroupElement<Rational>),
    ) -> Result<(GroupElement<Rational>, GroupElement<Rational>), UniversalError> {
        let scaled = self.quot.rho_power(a.1, t)?;
        Ok((a.0.mul(&scaled)?, a.1.clone()))
    }

    pub fn multiply(
        &self,
        a: &SemidirectElement,
        b: &SemidirectElement,
    ) -> Result<SemidirectElement, UniversalError> {
        self.check_element(a)?;
        self.check_element(b)?;
        let t = a
            .t
            .iter()
            .zip(&b.t)
            .map(|(x, y)| x + y)
            .collect::<Vec<_>>();
        let twisted = self.rho(&b.t, (&a.g, &a.g1))?;
        let (g, g1) = self.inner_multiply((&twisted.0, &twisted.1), (&b.g, &b.g1))?;
        self.element(t, g, g1)
    }

    pub fn inverse(&self, a: &SemidirectElement) -> Result<SemidirectElement, UniversalError> {
        self.check_element(a)?;
        let t: Vec<Rational> = a.t.iter().map(|x| -x).collect();
        let inv = self.inner_inverse((&a.g, &a.g1))?;
        let (g, g1) = self.rho(&t, (&inv.0, &inv.1))?;
        self.element(t, g, g1)
    }

    pub fn commutator(
        &self,
        a: &SemidirectElement,
        b: &SemidirectElement,
    ) -> Result<SemidirectElement, UniversalError> {
        let ai = self.inverse(a)?;
        let bi = self.inverse(b)?;
        let left = self.multiply(&ai, &bi)?;
        let right = self.multiply(a, b)?;
        self.multiply(&left, &right)
    }
}

/// The two-variable filtration: scaling degree then quotient degree.
/// Everything above scaling degree one is trivial; the (1, 0) stratum is the
/// scaling directions over the linear span, and the (1, d) strata for d > 0
/// cut that span down by quotient degree.
pub fn semidirect_filtration(
    group: &SemidirectGroup,
) -> Result<(Filtration, FiltrationReport), UniversalError> {
    let quot = group.quotient();
    let s = quot.spec().s;
    let v = group.lie_algebra();
    let vdim = v.dim();
    let lc = group.scaling_count();
    let qdim = quot.dim();
    let lin_space = quot.lin().space();

    let embed_q = |rows: &[Vec<Rational>]| -> Vec<Vec<Rational>> {
        rows.iter()
            .map(|r| {
                let mut out = vec![Rational::zero(); vdim];
                for (i, c) in r.iter().enumerate() {
                    out[lc + i] = c.clone();
                }
                out
            })
            .collect()
    };
    let embed_l = |rows: &[Vec<Rational>]| -> Result<Vec<Vec<Rational>>, UniversalError> {
        rows.iter()
            .map(|r| {
                let mut out = vec![Rational::zero(); vdim];
                for (pos, c) in r.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let m = group.l_index_of(pos).ok_or_else(|| {
                        UniversalError::Internal(
                            "filtration row escapes the linear span".into(),
                        )
                    })?;
                    out[lc + qdim + m] = c.clone();
                }
                Ok(out)
            })
            .collect()
    };

    let mut groups = Vec::new();
    groups.push((
        OrderingIndex::MultiDegree(vec![0, 0]),
        Subalgebra::full(Arc::clone(v)),
    ));

    let mut first_strip: Vec<Vec<Rational>> = (0..lc)
        .map(|a| {
            let mut out = vec![Rational::zero(); vdim];
            out[a] = Rational::one();
            out
        })
        .collect();
    first_strip.extend(embed_q(lin_space.rows()));
    groups.push((
        OrderingIndex::MultiDegree(vec![1, 0]),
        Subalgebra::new(Arc::clone(v), &first_strip)?,
    ));

    groups.push((
        OrderingIndex::MultiDegree(vec![2, 0]),
        Subalgebra::trivial(Arc::clone(v)),
    ));

    for d in 1..=s {
        let qd = quot
            .filtration()
            .group(&OrderingIndex::DegreeRank(d, 0));
        let qd_lin = qd.space().intersect(lin_space);
        let mut rows = embed_q(qd.space().rows());
        rows.extend(embed_l(qd_lin.rows())?);
        groups.push((
            OrderingIndex::MultiDegree(vec![0, d]),
            Subalgebra::new(Arc::clone(v), &rows)?,
        ));
        groups.push((
            OrderingIndex::MultiDegree(vec![1, d]),
            Subalgebra::new(Arc::clone(v), &embed_q(qd_lin.rows()))?,
        ));
    }

    let filt = Filtration::new(Arc::clone(v), Flavor::MultiDegree, groups)?;
    let report = filt.validate();
    if !report.pass {
        return Err(UniversalError::Internal(format!(
            "two-variable filtration fails validation: {}",
            report.summary()
        )));
    }
    Ok((filt, report))
}
