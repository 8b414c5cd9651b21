use crate::linalg::RowSpace;
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::{MAX_DIM, MAX_STEP};
use num_traits::Zero;
use std::collections::BTreeMap;
use std::sync::OnceLock;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("cap exceeded: {what} is {got}, cap is {cap}")]
    CapExceeded {
        what: &'static str,
        got: usize,
        cap: usize,
    },
    #[error("basis index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("algebra failed validation: {reason}")]
    NotValid { reason: String },
    #[error("lower central series does not reach zero; the algebra is not nilpotent")]
    NotNilpotent,
    #[error("nesting property fails at basis pair ({i}, {j}): bracket has a component at or before position {bad}")]
    NestingViolated { i: usize, j: usize, bad: usize },
    #[error("{0}")]
    BadInput(String),
}

/// A finite-dimensional Lie algebra over Q given by sparse structure
/// constants on a fixed basis: [e_i, e_j] = sum_k c_{ij}^k e_k.
///
/// Structure constants are stored exactly as provided. A pair (j, i) whose
/// entries were never mentioned is completed antisymmetrically from (i, j),
/// so honest inputs only need one orientation; explicitly supplied entries
/// are never rewritten, which keeps sign errors observable by
/// [`LieAlgebra::validate`].
#[derive(Debug)]
pub struct LieAlgebra {
    dim: usize,
    declared_step: usize,
    table: BTreeMap<(usize, usize), Vec<(usize, Rational)>>,
    validation: OnceLock<ValidationReport>,
}

impl PartialEq for LieAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim
            && self.declared_step == other.declared_step
            && self.table == other.table
    }
}

/// Outcome of [`LieAlgebra::validate`]. Witnesses are basis index triples.
#[derive(Clone, Debug, PartialEq)]
pub struct ValidationReport {
    /// Triples (i, j, k) with c_{ij}^k != -c_{ji}^k.
    pub antisymmetry_violations: Vec<(usize, usize, usize)>,
    /// Triples (i, j, k) where the Jacobi identity fails.
    pub jacobi_violations: Vec<(usize, usize, usize)>,
    /// Step computed from the lower central series; None when the series
    /// stabilizes above zero.
    pub computed_step: Option<usize>,
    pub declared_step: usize,
    pub pass: bool,
}

impl LieAlgebra {
    /// Builds an algebra from sparse entries (i, j, k, c) meaning
    /// [e_i, e_j] has coefficient c on e_k. Later entries for the same
    /// (i, j, k) accumulate.
    pub fn new(
        dim: usize,
        declared_step: usize,
        entries: impl IntoIterator<Item = (usize, usize, usize, Rational)>,
    ) -> Result<Self, AlgebraError> {
        if dim > MAX_DIM {
            return Err(AlgebraError::CapExceeded {
                what: "dimension",
                got: dim,
                cap: MAX_DIM,
            });
        }
        if declared_step > MAX_STEP || declared_step == 0 {
            return Err(AlgebraError::CapExceeded {
                what: "declared step",
                got: declared_step,
                cap: MAX_STEP,
            });
        }
        let mut raw: BTreeMap<(usize, usize), BTreeMap<usize, Rational>> = BTreeMap::new();
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(AlgebraError::IndexOutOfRange { index: idx, dim });
                }
            }
            if c.is_zero() {
                // an explicit zero still marks the pair as "mentioned"
                raw.entry((i, j)).or_default();
                continue;
            }
            let slot = raw.entry((i, j)).or_default().entry(k).or_insert_with(Rational::zero);
            *slot = &*slot + &c;
        }
        // complete unmentioned opposite orientations antisymmetrically
        let mentioned: Vec<(usize, usize)> = raw.keys().copied().collect();
        for (i, j) in mentioned {
            if i != j && !raw.contains_key(&(j, i)) {
                let flipped: BTreeMap<usize, Rational> =
                    raw[&(i, j)].iter().map(|(&k, c)| (k, -c)).collect();
                raw.insert((j, i), flipped);
            }
        }
        let table = raw
            .into_iter()
            .map(|(key, cols)| {
                (
                    key,
                    cols.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
                )
            })
            .filter(|(_, v): &(_, Vec<(usize, Rational)>)| !v.is_empty())
            .collect();
        Ok(LieAlgebra {
            dim,
            declared_step,
            table,
            validation: OnceLock::new(),
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn declared_step(&self) -> usize {
        self.declared_step
    }

    /// Sparse structure constants of [e_i, e_j].
    pub fn structure(&self, i: usize, j: usize) -> &[(usize, Rational)] {
        self.table.get(&(i, j)).map(Vec::as_slice).unwrap_or(&[])
    }

    /// All stored entries in (i, j, k) order, for serialization.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> {
        self.table
            .iter()
            .flat_map(|(&(i, j), cols)| cols.iter().map(move |(k, c)| (i, j, *k, c)))
    }

    /// Bracket of coordinate vectors: sum_{i,j} x_i y_j [e_i, e_j].
    pub fn bracket<S: Scalar>(&self, x: &[S], y: &[S]) -> Result<Vec<S>, AlgebraError> {
        if x.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: x.len(),
            });
        }
        if y.len() != self.dim {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.dim,
                got: y.len(),
            });
        }
        let mut out = vec![S::zero(); self.dim];
        for (&(i, j), cols) in &self.table {
            if x[i].is_zero() || y[j].is_zero() {
                continue;
            }
            let mij = x[i].clone() * y[j].clone();
            for (k, c) in cols {
                out[*k] = out[*k].clone() + mij.scale(c);
            }
        }
        Ok(out)
    }

    /// Bracket of two basis vectors as a dense rational vector.
    pub fn basis_bracket(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim];
        for (k, c) in self.structure(i, j) {
            v[*k] = c.clone();
        }
        v
    }

    /// Checks antisymmetry and Jacobi on all basis triples and computes the
    /// nilpotency step from the lower central series. The report is cached.
    pub fn validate(&self) -> &ValidationReport {
        self.validation.get_or_init(|| self.validate_uncached())
    }

    fn validate_uncached(&self) -> ValidationReport {
        let mut anti = Vec::new();
        for i in 0..self.dim {
            for j in i..self.dim {
                let fwd = self.basis_bracket(i, j);
                let bwd = self.basis_bracket(j, i);
                for k in 0..self.dim {
                    let sum = &fwd[k] + &bwd[k];
                    if !sum.is_zero() {
                        anti.push((i, j, k));
                    }
                }
            }
        }
        let mut jacobi = Vec::new();
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                for k in (j + 1)..self.dim {
                    // [e_i,[e_j,e_k]] + [e_j,[e_k,e_i]] + [e_k,[e_i,e_j]]
                    let mut acc = vec![Rational::zero(); self.dim];
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        let inner = self.basis_bracket(b, c);
                        let mut ei = vec![Rational::zero(); self.dim];
                        ei[a] = Rational::from_integer(1.into());
                        let term = self.bracket(&ei, &inner).expect("dims fixed");
                        for (av, tv) in acc.iter_mut().zip(&term) {
                            *av = &*av + tv;
                        }
                    }
                    if acc.iter().any(|x| !x.is_zero()) {
                        jacobi.push((i, j, k));
                    }
                }
            }
        }
        let computed_step = self.step_from_series();
        let pass = anti.is_empty()
            && jacobi.is_empty()
            && computed_step.map(|s| s <= self.declared_step).unwrap_or(false);
        ValidationReport {
            antisymmetry_violations: anti,
            jacobi_violations: jacobi,
            computed_step,
            declared_step: self.declared_step,
            pass,
        }
    }

    /// Lower central series of the algebra itself: L_(1) = L,
    /// L_(m+1) = [L, L_(m)]. Returns the spans, ending with the last
    /// nonzero term.
    pub fn lower_central_spans(&self) -> Vec<RowSpace> {
        let mut spans = vec![RowSpace::full(self.dim)];
        loop {
            let prev = spans.last().unwrap();
            let mut next = RowSpace::empty(self.dim);
            for i in 0..self.dim {
                let mut ei = vec![Rational::zero(); self.dim];
                ei[i] = Rational::from_integer(1.into());
                for row in prev.rows() {
                    let v = self.bracket(&ei, row).expect("dims fixed");
                    next.insert(&v);
                }
            }
            if next.is_trivial() {
                break;
            }
            // A nilpotent series must shrink strictly at every stage; anything
            // else (stabilizing, or growing under a broken Jacobi identity)
            // means the input is not nilpotent. Mark by a non-shrinking tail.
            if next.dim() >= prev.dim() || spans.len() > self.dim + 1 {
                let stable = prev.clone();
                spans.push(stable);
                break;
            }
            spans.push(next);
        }
        spans
    }

    fn step_from_series(&self) -> Option<usize> {
        let spans = self.lower_central_spans();
        let n = spans.len();
        if n >= 2 && spans[n - 1].dim() == spans[n - 2].dim() {
            return None;
        }
        Some(n)
    }

    /// Nilpotency step: smallest s with L_(s+1) = 0.
    pub fn nilpotency_step(&self) -> Result<usize, AlgebraError> {
        self.step_from_series().ok_or(AlgebraError::NotNilpotent)
    }

    /// Errors unless validation passed; BCH and coordinate changes insist on it.
    pub fn ensure_valid(&self) -> Result<(), AlgebraError> {
        let report = self.validate();
        if report.pass {
            Ok(())
        } else {
            Err(AlgebraError::NotValid {
                reason: report.summary(),
            })
        }
    }
}

impl ValidationReport {
    pub fn summary(&self) -> String {
        if self.pass {
            return format!(
                "ok (step {} <= declared {})",
                self.computed_step.unwrap_or(0),
                self.declared_step
            );
        }
        let mut parts = Vec::new();
        if let Some((i, j, k)) = self.antisymmetry_violations.first() {
            parts.push(format!(
                "{} antisymmetry violation(s), first at ({i},{j},{k})",
                self.antisymmetry_violations.len()
            ));
        }
        if let Some((i, j, k)) = self.jacobi_violations.first() {
            parts.push(format!(
                "{} Jacobi violation(s), first at ({i},{j},{k})",
                self.jacobi_violations.len()
            ));
        }
        match self.computed_step {
            None => parts.push("lower central series does not vanish".into()),
            Some(s) if s > self.declared_step => {
                parts.push(format!("computed step {s} exceeds declared {}", self.declared_step))
            }
            _ => {}
        }
        parts.join("; ")
    }
}
