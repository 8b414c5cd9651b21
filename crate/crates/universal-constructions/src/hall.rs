//! Hall bases of free nilpotent Lie algebras on weighted generators.
//!
//! Elements are created weight by weight; `[u, v]` is kept when `u > v` in
//! creation order and `u` is either a generator or `[x, y]` with `y <= v`.
//! Every element also carries its expansion in the truncated free associative
//! algebra, which reduces bracket arithmetic to exact linear algebra: the
//! elements sharing one leaf multiset span the corresponding multigraded
//! component, so any bracket of basis elements resolves uniquely over them.

use crate::poly::Poly;
use crate::UniversalError;
use lie_core::linalg::solve;
use lie_core::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HallNode {
    /// A generator, by flat index.
    Leaf(u8),
    /// A bracket of two earlier elements, by their ids.
    Bracket(usize, usize),
}

#[derive(Clone, Debug)]
pub struct HallElement {
    pub id: usize,
    pub node: HallNode,
    /// Total degree: sum of the leaf generators' weights.
    pub weight: usize,
    /// Number of leaves, i.e. how many generators participate.
    pub letters: usize,
    /// Sorted multiset of participating generators.
    pub leaves: Vec<u8>,
}

#[derive(Clone, Debug)]
pub struct HallBasis {
    gen_weights: Vec<usize>,
    max_weight: usize,
    elements: Vec<HallElement>,
    expansions: Vec<Poly>,
    by_leaves: BTreeMap<Vec<u8>, Vec<usize>>,
}

impl HallBasis {
    pub fn new(gen_weights: &[usize], max_weight: usize) -> Result<Self, UniversalError> {
        if gen_weights.is_empty() {
            return Err(UniversalError::BadSpec("no generators".into()));
        }
        if gen_weights.iter().any(|&w| w == 0 || w > max_weight) {
            return Err(UniversalError::BadSpec(
                "generator weights must lie in 1..=max_weight".into(),
            ));
        }
        let mut basis = HallBasis {
            gen_weights: gen_weights.to_vec(),
            max_weight,
            elements: Vec::new(),
            expansions: Vec::new(),
            by_leaves: BTreeMap::new(),
        };
        for w in 1..=max_weight {
            basis.create_weight(w);
        }
        Ok(basis)
    }

    fn push(&mut self, node: HallNode, weight: usize, leaves: Vec<u8>, expansion: Poly) {
        let id = self.elements.len();
        self.by_leaves.entry(leaves.clone()).or_default().push(id);
        self.elements.push(HallElement {
            id,
            node,
            weight,
            letters: leaves.len(),
            leaves,
        });
        self.expansions.push(expansion);
    }

    fn create_weight(&mut self, w: usize) {
        for g in 0..self.gen_weights.len() {
            if self.gen_weights[g] == w {
                self.push(HallNode::Leaf(g as u8), w, vec![g as u8], Poly::letter(g as u8));
            }
        }
        // nodes [u, v]: iterate v, then u, both ascending
        let upto = self.elements.len();
        for v in 0..upto {
            for u in (v + 1)..upto {
                if self.elements[u].weight + self.elements[v].weight != w {
                    continue;
                }
                let basic = match self.elements[u].node {
                    HallNode::Leaf(_) => true,
                    HallNode::Bracket(_, y) => y <= v,
                };
                if !basic {
                    continue;
                }
                let mut leaves = self.elements[u].leaves.clone();
                leaves.extend_from_slice(&self.elements[v].leaves);
                leaves.sort_unstable();
                let expansion = self.expansions[u].commutator(
                    &self.expansions[v],
                    &self.gen_weights,
                    self.max_weight,
                );
                self.push(HallNode::Bracket(u, v), w, leaves, expansion);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[HallElement] {
        &self.elements
    }

    pub fn element(&self, id: usize) -> &HallElement {
        &self.elements[id]
    }

    pub fn expansion(&self, id: usize) -> &Poly {
        &self.expansions[id]
    }

    pub fn max_weight(&self) -> usize {
        self.max_weight
    }

    pub fn generator_count(&self) -> usize {
        self.gen_weights.len()
    }

    /// Id of the element that is exactly generator g.
    pub fn leaf_id(&self, g: u8) -> usize {
        self.by_leaves[&vec![g]][0]
    }

    /// Sparse coordinates of [H_p, H_q] over the basis. Empty when the
    /// bracket weight exceeds the cap.
    pub fn bracket_coordinates(
        &self,
        p: usize,
        q: usize,
    ) -> Result<Vec<(usize, Rational)>, UniversalError> {
        let w = self.elements[p].weight + self.elements[q].weight;
        if w > self.max_weight {
            return Ok(Vec::new());
        }
        let target = self.expansions[p].commutator(
            &self.expansions[q],
            &self.gen_weights,
            self.max_weight,
        );
        if target.is_zero() {
            return Ok(Vec::new());
        }
        let mut leaves = self.elements[p].leaves.clone();
        leaves.extend_from_slice(&self.elements[q].leaves);
        leaves.sort_unstable();
        let candidates = self.by_leaves.get(&leaves).cloned().unwrap_or_default();
        self.resolve(&target, &candidates)
    }

    /// Writes a homogeneous associative polynomial as a combination of the
    /// given elements' expansions.
    fn resolve(
        &self,
        target: &Poly,
        candidates: &[usize],
    ) -> Result<Vec<(usize, Rational)>, UniversalError> {
        let mut word_rows: BTreeMap<&[u8], usize> = BTreeMap::new();
        for &c in candidates {
            for word in self.expansions[c].terms().keys() {
                let next = word_rows.len();
                word_rows.entry(word).or_insert(next);
            }
        }
        for word in target.terms().keys() {
            if !word_rows.contains_key(word.as_slice()) {
                return Err(UniversalError::Internal(
                    "bracket leaves the span of its leaf-multiset component".into(),
                ));
            }
        }
        let mut m = vec![vec![Rational::zero(); candidates.len()]; word_rows.len()];
        for (col, &c) in candidates.iter().enumerate() {
            for (word, coeff) in self.expansions[c].terms() {
                m[word_rows[word.as_slice()]][col] = coeff.clone();
            }
        }
        let mut b = vec![Rational::zero(); word_rows.len()];
        for (word, coeff) in target.terms() {
            b[word_rows[word.as_slice()]] = coeff.clone();
        }
        let x = solve(&m, &b).ok_or_else(|| {
            UniversalError::Internal("inconsistent bracket resolution".into())
        })?;
        // confirm the solution reproduces the target exactly
        let mut residual = target.clone();
        for (&c, coeff) in candidates.iter().zip(&x) {
            if !coeff.is_zero() {
                residual = residual.sub(&self.expansions[c].scaled(coeff));
            }
        }
        if !residual.is_zero() {
            return Err(UniversalError::Internal(
                "bracket resolution failed verification".into(),
            ));
        }
        Ok(candidates
            .iter()
            .zip(x)
            .filter(|(_, c)| !c.is_zero())
            .map(|(&id, c)| (id, c))
            .collect())
    }

    /// Bracket word of an element over caller-supplied generator names.
    pub fn describe(&self, id: usize, names: &[String]) -> String {
        match self.elements[id].node {
            HallNode::Leaf(g) => names[g as usize].clone(),
            HallNode::Bracket(u, v) => {
                format!("[{}, {}]", self.describe(u, names), self.describe(v, names))
            }
        }
    }
}
