//! Truncated series in the free associative algebra on a small alphabet.
//! Words are letter strings; the empty word is the unit. All arithmetic is
//! exact and truncates at a fixed maximum word length.

use lie_core::Rational;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;

#[derive(Clone, Debug, PartialEq)]
pub struct Series {
    pub max_degree: usize,
    pub terms: BTreeMap<Vec<u8>, Rational>,
}

impl Series {
    pub fn zero(max_degree: usize) -> Self {
        Series {
            max_degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(max_degree: usize) -> Self {
        let mut s = Series::zero(max_degree);
        s.terms.insert(Vec::new(), Rational::one());
        s
    }

    pub fn letter(max_degree: usize, l: u8) -> Self {
        let mut s = Series::zero(max_degree);
        if max_degree >= 1 {
            s.terms.insert(vec![l], Rational::one());
        }
        s
    }

    fn put(&mut self, word: Vec<u8>, c: Rational) {
        if word.len() > self.max_degree || c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Occupied(mut e) => {
                let v = e.get() + &c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn add(&self, other: &Series) -> Series {
        assert_eq!(self.max_degree, other.max_degree);
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.put(w.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Series {
        let mut out = Series::zero(self.max_degree);
        for (w, v) in &self.terms {
            out.put(w.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Series) -> Series {
        assert_eq!(self.max_degree, other.max_degree);
        let mut out = Series::zero(self.max_degree);
        for (wa, ca) in &self.terms {
            for (wb, cb) in &other.terms {
                if wa.len() + wb.len() > self.max_degree {
                    continue;
                }
                let mut w = wa.clone();
                w.extend_from_slice(wb);
                out.put(w, ca * cb);
            }
        }
        out
    }

    /// True when the constant (empty-word) coefficient is zero.
    pub fn has_no_constant_term(&self) -> bool {
        self.terms
            .get(&Vec::new())
            .map(|c| c.is_zero())
            .unwrap_or(true)
    }

    /// exp of a series with no constant term.
    pub fn exp(&self) -> Series {
        assert!(self.has_no_constant_term(), "exp needs a nilpotent argument");
        let mut out = Series::one(self.max_degree);
        let mut power = Series::one(self.max_degree);
        let mut fact = BigInt::one();
        for k in 1..=self.max_degree {
            power = power.mul(self);
            fact *= BigInt::from(k);
            out = out.add(&power.scale(&Rational::new(BigInt::one(), fact.clone())));
        }
        out
    }

    /// log of a series of the form 1 + (no constant term).
    pub fn log(&self) -> Series {
        let u = {
            let mut v = self.clone();
            let c = v.terms.remove(&Vec::new()).unwrap_or_else(Rational::zero);
            assert!(c.is_one(), "log needs constant term exactly 1");
            v
        };
        // log(1+u) = sum_{k>=1} (-1)^{k-1} u^k / k
        let mut out = Series::zero(self.max_degree);
        let mut power = Series::one(self.max_degree);
        for k in 1..=self.max_degree {
            power = power.mul(&u);
            let sign = if k % 2 == 1 { 1 } else { -1 };
            let c = Rational::new(BigInt::from(sign), BigInt::from(k));
            out = out.add(&power.scale(&c));
        }
        out
    }

    /// The degree-m homogeneous part.
    pub fn homogeneous(&self, m: usize) -> Vec<(Vec<u8>, Rational)> {
        self.terms
            .iter()
            .filter(|(w, _)| w.len() == m)
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect()
    }
}
