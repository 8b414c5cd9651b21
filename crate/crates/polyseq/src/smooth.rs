use crate::binomial::multi_binomial;
use crate::PolyError;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::BTreeMap;

/// Real polynomial Z^k -> R stored by its coefficients in the binomial
/// basis, p(n) = sum_l alpha_l C(n_1,l_1)...C(n_k,l_k).
#[derive(Clone, Debug, PartialEq)]
pub struct RealPolynomial {
    arity: usize,
    coeffs: BTreeMap<Vec<u32>, f64>,
}

impl RealPolynomial {
    pub fn new(
        arity: usize,
        coeffs: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self, PolyError> {
        let mut map = BTreeMap::new();
        for (idx, c) in coeffs {
            if idx.len() != arity {
                return Err(PolyError::ArityMismatch {
                    got: idx.len(),
                    expected: arity,
                });
            }
            if c != 0.0 {
                map.insert(idx, c);
            }
        }
        Ok(RealPolynomial { arity, coeffs: map })
    }

    pub fn zero(arity: usize) -> Self {
        RealPolynomial {
            arity,
            coeffs: BTreeMap::new(),
        }
    }

    /// Builds from coefficients in the monomial basis n_1^{m_1}...n_k^{m_k}
    /// using n^m = sum_i S(m,i) i! C(n,i) in each variable separately,
    /// where S is the Stirling partition number.
    pub fn from_monomial(
        arity: usize,
        coeffs: impl IntoIterator<Item = (Vec<u32>, f64)>,
    ) -> Result<Self, PolyError> {
        let mut map: BTreeMap<Vec<u32>, f64> = BTreeMap::new();
        for (idx, c) in coeffs {
            if idx.len() != arity {
                return Err(PolyError::ArityMismatch {
                    got: idx.len(),
                    expected: arity,
                });
            }
            // per-variable conversion rows: variable j contributes the
            // pairs (i, S(m_j, i) * i!) for 0 <= i <= m_j
            let mut expansion: Vec<(Vec<u32>, BigInt)> = vec![(Vec::new(), BigInt::one())];
            for &m in &idx {
                let row = stirling_row(m);
                let mut next = Vec::new();
                for (prefix, w) in &expansion {
                    for (i, s) in row.iter().enumerate() {
                        if s.is_zero() {
                            continue;
                        }
                        let mut p = prefix.clone();
                        p.push(i as u32);
                        next.push((p, w * s));
                    }
                }
                expansion = next;
            }
            for (full, w) in expansion {
                let entry = map.entry(full).or_insert(0.0);
                *entry += c * w.to_f64().unwrap_or(f64::INFINITY);
            }
        }
        map.retain(|_, c| *c != 0.0);
        Ok(RealPolynomial { arity, coeffs: map })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn coeff(&self, idx: &[u32]) -> f64 {
        self.coeffs.get(idx).copied().unwrap_or(0.0)
    }

    pub fn coeffs(&self) -> impl Iterator<Item = (&Vec<u32>, &f64)> {
        self.coeffs.iter()
    }

    pub fn eval(&self, n: &[i64]) -> Result<f64, PolyError> {
        if n.len() != self.arity {
            return Err(PolyError::ArityMismatch {
                got: n.len(),
                expected: self.arity,
            });
        }
        let mut acc = 0.0;
        for (idx, c) in &self.coeffs {
            acc += c * multi_binomial(n, idx).to_f64().unwrap_or(f64::INFINITY);
        }
        Ok(acc)
    }

    /// max over nonzero indices l of N^{|l|} * dist(alpha_l, Z); the
    /// constant term never contributes, and integer shifts of any
    /// coefficient leave the value unchanged.
    pub fn smoothness_norm(&self, n: u64) -> f64 {
        let mut best = 0.0f64;
        for (idx, c) in &self.coeffs {
            let total: u32 = idx.iter().sum();
            if total == 0 {
                continue;
            }
            let dist = (c - c.round()).abs();
            best = best.max((n as f64).powi(total as i32) * dist);
        }
        best
    }
}

/// Weights S(m, i) * i! for 0 <= i <= m, via the partition-number
/// recurrence S(m, i) = i S(m-1, i) + S(m-1, i-1).
fn stirling_row(m: u32) -> Vec<BigInt> {
    let mut s = vec![BigInt::one()];
    for _ in 0..m {
        let mut next = vec![BigInt::zero(); s.len() + 1];
        for (i, v) in s.iter().enumerate() {
            next[i] += BigInt::from(i as u64) * v;
            next[i + 1] += v;
        }
        s = next;
    }
    let mut fact = BigInt::one();
    for (i, v) in s.iter_mut().enumerate() {
        if i > 0 {
            fact *= BigInt::from(i as u64);
        }
        *v *= &fact;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_coefficients_have_zero_norm() {
        let p = RealPolynomial::new(1, [(vec![1], 3.0), (vec![2], -7.0)]).unwrap();
        assert_eq!(p.smoothness_norm(1000), 0.0);
    }

    #[test]
    fn half_square_converts_and_scores_five_at_ten() {
        let p = RealPolynomial::from_monomial(1, [(vec![2], 0.5)]).unwrap();
        assert_eq!(p.coeff(&[1]), 0.5);
        assert_eq!(p.coeff(&[2]), 1.0);
        assert_eq!(p.smoothness_norm(10), 5.0);
        for n in -10..=10i64 {
            let direct = 0.5 * (n * n) as f64;
            assert!((p.eval(&[n]).unwrap() - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn linear_phase_scores_twenty_five_point_oh_three() {
        let p = RealPolynomial::new(1, [(vec![1], 0.2503)]).unwrap();
        assert!((p.smoothness_norm(100) - 25.03).abs() < 1e-9);
    }

    #[test]
    fn integer_shifts_do_not_change_the_norm() {
        let p = RealPolynomial::new(2, [(vec![1, 0], 0.3), (vec![1, 2], 0.45)]).unwrap();
        let q = RealPolynomial::new(2, [(vec![1, 0], 7.3), (vec![1, 2], -4.55)]).unwrap();
        assert!((p.smoothness_norm(8) - q.smoothness_norm(8)).abs() < 1e-12);
        // the (1,2) index dominates: 8^3 * 0.45
        assert!((p.smoothness_norm(8) - 512.0 * 0.45).abs() < 1e-12);
    }

    #[test]
    fn monomial_conversion_matches_direct_evaluation_in_two_variables() {
        let p = RealPolynomial::from_monomial(2, [(vec![2, 1], 0.25), (vec![0, 3], -1.5)]).unwrap();
        for a in -5..=5i64 {
            for b in -5..=5i64 {
                let direct = 0.25 * (a * a * b) as f64 - 1.5 * (b * b * b) as f64;
                assert!((p.eval(&[a, b]).unwrap() - direct).abs() < 1e-9);
            }
        }
    }
}
