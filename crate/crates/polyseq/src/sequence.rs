use crate::binomial::{graded_cmp, indices_up_to, multi_binomial};
use crate::PolyError;
use filtration::{Filtration, Flavor, OrderingIndex};
use lie_core::{format_rational, parse_rational, GroupElement, Rational};
use num_traits::Zero;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::sync::Arc;

const MAX_EVAL_ARG: i64 = 1 << 31;

/// Result of the coefficient membership check: every Taylor coefficient at
/// multi-index i must lie in the filtration group of degree |i|.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolynomialCheck {
    pub ok: bool,
    /// First failing index in graded order, when not ok.
    pub first_failure: Option<Vec<u32>>,
}

fn membership_index(filtration: &Filtration, idx: &[u32]) -> Result<OrderingIndex, PolyError> {
    let total: u32 = idx.iter().sum();
    match filtration.flavor() {
        Flavor::Degree | Flavor::Plain => Ok(OrderingIndex::Degree(total as usize)),
        Flavor::DegreeRank => Ok(OrderingIndex::DegreeRank(total as usize, 0)),
        Flavor::MultiDegree => Ok(OrderingIndex::MultiDegree(
            idx.iter().map(|&x| x as usize).collect(),
        )),
    }
}

/// Pointwise evaluator consumed by interpolation.
pub type PointFn<'a> = dyn FnMut(&[i64]) -> Result<GroupElement<Rational>, PolyError> + 'a;

/// Checks raw coefficient data against a filtration without building a
/// sequence. Reports the first violating index in graded order.
pub fn is_polynomial(
    filtration: &Filtration,
    coeffs: &BTreeMap<Vec<u32>, GroupElement<Rational>>,
) -> Result<PolynomialCheck, PolyError> {
    let mut keys: Vec<&Vec<u32>> = coeffs.keys().collect();
    keys.sort_by(|a, b| graded_cmp(a, b));
    for idx in keys {
        let target = membership_index(filtration, idx)?;
        let group = filtration.group(&target);
        if !group.contains(coeffs[idx].coords()) {
            return Ok(PolynomialCheck {
                ok: false,
                first_failure: Some(idx.clone()),
            });
        }
    }
    Ok(PolynomialCheck {
        ok: true,
        first_failure: None,
    })
}

/// A polynomial sequence Z^k -> G in Taylor form g(n) = prod_i g_i^{C(n,i)},
/// the product running over the support in graded-lexicographic index order.
#[derive(Clone, Debug)]
pub struct PolySequence {
    filtration: Arc<Filtration>,
    arity: usize,
    coeffs: BTreeMap<Vec<u32>, GroupElement<Rational>>,
}

impl PartialEq for PolySequence {
    fn eq(&self, other: &Self) -> bool {
        self.arity == other.arity
            && self.coeffs == other.coeffs
            && self.filtration == other.filtration
    }
}

impl PolySequence {
    pub fn new(
        filtration: Arc<Filtration>,
        arity: usize,
        coeffs: impl IntoIterator<Item = (Vec<u32>, GroupElement<Rational>)>,
    ) -> Result<Self, PolyError> {
        if arity == 0 {
            return Err(PolyError::BadIndex("arity must be at least 1".into()));
        }
        let mut map = BTreeMap::new();
        for (idx, g) in coeffs {
            if idx.len() != arity {
                return Err(PolyError::ArityMismatch {
                    got: idx.len(),
                    expected: arity,
                });
            }
            if g.algebra() != filtration.algebra() {
                return Err(PolyError::FlavorMismatch(
                    "coefficients from the filtration's own algebra".into(),
                ));
            }
            if !g.is_identity() {
                map.insert(idx, g);
            }
        }
        let check = is_polynomial(&filtration, &map)?;
        if let Some(idx) = check.first_failure {
            return Err(PolyError::NotPolynomial(idx));
        }
        Ok(PolySequence {
            filtration,
            arity,
            coeffs: map,
        })
    }

    pub fn identity(filtration: Arc<Filtration>, arity: usize) -> Result<Self, PolyError> {
        Self::new(filtration, arity, [])
    }

    pub fn constant(
        filtration: Arc<Filtration>,
        arity: usize,
        g: GroupElement<Rational>,
    ) -> Result<Self, PolyError> {
        Self::new(filtration, arity, [(vec![0; arity], g)])
    }

    pub fn filtration(&self) -> &Arc<Filtration> {
        &self.filtration
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self, idx: &[u32]) -> GroupElement<Rational> {
        self.coeffs
            .get(idx)
            .cloned()
            .unwrap_or_else(|| GroupElement::identity(Arc::clone(self.filtration.algebra())))
    }

    /// Support in graded-lexicographic order.
    pub fn support(&self) -> Vec<&Vec<u32>> {
        let mut keys: Vec<&Vec<u32>> = self.coeffs.keys().collect();
        keys.sort_by(|a, b| graded_cmp(a, b));
        keys
    }

    /// Largest total degree carried by any coefficient.
    pub fn degree(&self) -> usize {
        self.coeffs
            .keys()
            .map(|idx| idx.iter().sum::<u32>() as usize)
            .max()
            .unwrap_or(0)
    }

    pub fn eval(&self, n: &[i64]) -> Result<GroupElement<Rational>, PolyError> {
        if n.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                got: n.len(),
                expected: self.arity,
            });
        }
        if n.iter().any(|&v| v.abs() > MAX_EVAL_ARG) {
            return Err(PolyError::Overflow(format!(
                "evaluation points are capped at |n| <= 2^31, got {n:?}"
            )));
        }
        let mut acc = GroupElement::identity(Arc::clone(self.filtration.algebra()));
        for idx in self.support() {
            let e = multi_binomial(n, idx);
            if e.is_zero() {
                continue;
            }
            let power = self.coeffs[idx.as_slice()].power(&Rational::from(e));
            acc = acc.mul(&power)?;
        }
        Ok(acc)
    }

    /// Recovers Taylor coefficients of a black-box sequence by stripping at
    /// the index points: the coefficient at i is the residual value at n = i,
    /// because every graded-later binomial vanishes there.
    pub fn interpolate(
        filtration: Arc<Filtration>,
        arity: usize,
        degree_cap: usize,
        f: &mut PointFn,
    ) -> Result<Self, PolyError> {
        let mut partial = Self::identity(Arc::clone(&filtration), arity)?;
        for idx in indices_up_to(arity, degree_cap) {
            let point: Vec<i64> = idx.iter().map(|&x| x as i64).collect();
            let prefix = partial.eval(&point)?;
            let coeff = prefix.inverse().mul(&f(&point)?)?;
            if !coeff.is_identity() {
                partial.coeffs.insert(idx, coeff);
            }
        }
        let check = is_polynomial(&filtration, &partial.coeffs)?;
        if let Some(idx) = check.first_failure {
            return Err(PolyError::NotPolynomial(idx));
        }
        Ok(partial)
    }

    /// The difference sequence n -> g(n+h) g(n)^{-1}, re-expressed in Taylor
    /// form over the same filtration.
    pub fn derivative(&self, h: &[i64]) -> Result<Self, PolyError> {
        if h.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                got: h.len(),
                expected: self.arity,
            });
        }
        let cap = self.degree();
        Self::interpolate(Arc::clone(&self.filtration), self.arity, cap, &mut |n| {
            let shifted: Vec<i64> = n.iter().zip(h).map(|(a, b)| a + b).collect();
            Ok(self.eval(&shifted)?.mul(&self.eval(n)?.inverse())?)
        })
    }

    /// The shifted sequence n -> g(n+h).
    pub fn shift(&self, h: &[i64]) -> Result<Self, PolyError> {
        if h.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                got: h.len(),
                expected: self.arity,
            });
        }
        let cap = self.degree();
        Self::interpolate(Arc::clone(&self.filtration), self.arity, cap, &mut |n| {
            let shifted: Vec<i64> = n.iter().zip(h).map(|(a, b)| a + b).collect();
            self.eval(&shifted)
        })
    }

    /// Pointwise product n -> g(n) h(n); polynomial again by the group
    /// property of filtration-polynomial sequences.
    pub fn pointwise_mul(&self, other: &Self) -> Result<Self, PolyError> {
        if self.arity != other.arity {
            return Err(PolyError::ArityMismatch {
                got: other.arity,
                expected: self.arity,
            });
        }
        if self.filtration != other.filtration {
            return Err(PolyError::FlavorMismatch(
                "both factors over the same filtration".into(),
            ));
        }
        let cap = self.degree().max(other.degree());
        Self::interpolate(Arc::clone(&self.filtration), self.arity, cap, &mut |n| {
            Ok(self.eval(n)?.mul(&other.eval(n)?)?)
        })
    }

    /// Pointwise inverse n -> g(n)^{-1}.
    pub fn pointwise_inverse(&self) -> Result<Self, PolyError> {
        let cap = self.degree();
        Self::interpolate(Arc::clone(&self.filtration), self.arity, cap, &mut |n| {
            Ok(self.eval(n)?.inverse())
        })
    }

    pub fn to_json(&self) -> String {
        let doc = SequenceDoc {
            arity: self.arity,
            coeffs: self
                .support()
                .iter()
                .map(|idx| CoeffDoc {
                    index: idx.to_vec(),
                    element: self.coeffs[idx.as_slice()]
                        .coords()
                        .iter()
                        .map(format_rational)
                        .collect(),
                })
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("sequence serialization cannot fail")
    }

    pub fn from_json(filtration: Arc<Filtration>, text: &str) -> Result<Self, PolyError> {
        let doc: SequenceDoc =
            serde_json::from_str(text).map_err(|e| PolyError::Parse(e.to_string()))?;
        let algebra = Arc::clone(filtration.algebra());
        let mut coeffs = Vec::new();
        for c in doc.coeffs {
            let coords = c
                .element
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()
                .map_err(PolyError::Parse)?;
            let g = GroupElement::new(Arc::clone(&algebra), coords)?;
            coeffs.push((c.index, g));
        }
        Self::new(filtration, doc.arity, coeffs)
    }
}

#[derive(Serialize, Deserialize)]
struct SequenceDoc {
    arity: usize,
    coeffs: Vec<CoeffDoc>,
}

#[derive(Serialize, Deserialize)]
struct CoeffDoc {
    index: Vec<u32>,
    element: Vec<String>,
}
