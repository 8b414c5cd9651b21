//! Sparse polynomials in non-commuting graded letters, truncated by total
//! weight. The free Lie algebra embeds here via [a, b] = ab - ba, which turns
//! linear independence questions about commutators into plain linear algebra
//! over words.

use lie_core::Rational;
use num_traits::Zero;
use std::collections::BTreeMap;
use std::collections::btree_map::Entry;

pub type Word = Vec<u8>;

#[derive(Clone, Debug, PartialEq)]
pub struct Poly {
    terms: BTreeMap<Word, Rational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly {
            terms: BTreeMap::new(),
        }
    }

    pub fn letter(l: u8) -> Self {
        Poly::from_term(vec![l], Rational::from_integer(1.into()))
    }

    pub fn from_term(word: Word, coeff: Rational) -> Self {
        let mut p = Poly::zero();
        p.put(word, coeff);
        p
    }

    pub fn scaled(&self, coeff: &Rational) -> Poly {
        let mut out = Poly::zero();
        for (w, c) in &self.terms {
            out.put(w.clone(), c * coeff);
        }
        out
    }

    pub fn terms(&self) -> &BTreeMap<Word, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn put(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(word) {
            Entry::Vacant(e) => {
                e.insert(coeff);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + &coeff;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.put(w.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.put(w.clone(), -c.clone());
        }
        out
    }

    /// Concatenation product, dropping words whose total weight (sum of
    /// letter weights) exceeds the cap.
    pub fn mul(&self, other: &Poly, weights: &[usize], max_weight: usize) -> Poly {
        let mut out = Poly::zero();
        for (w1, c1) in &self.terms {
            let wt1: usize = w1.iter().map(|&l| weights[l as usize]).sum();
            for (w2, c2) in &other.terms {
                let wt2: usize = w2.iter().map(|&l| weights[l as usize]).sum();
                if wt1 + wt2 > max_weight {
                    continue;
                }
                let mut word = w1.clone();
                word.extend_from_slice(w2);
                out.put(word, c1 * c2);
            }
        }
        out
    }

    /// ab - ba under the truncated concatenation product.
    pub fn commutator(&self, other: &Poly, weights: &[usize], max_weight: usize) -> Poly {
        self.mul(other, weights, max_weight)
            .sub(&other.mul(self, weights, max_weight))
    }
}
