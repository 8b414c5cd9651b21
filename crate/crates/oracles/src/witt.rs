//! Dimension counts for free Lie algebras on graded generators, bigraded by
//! (total degree, number of letters). Derived from the generating identity
//!
//!   prod_{n,l} (1 - t^n u^l)^{-L(n,l)} = 1 / (1 - P(t,u)),
//!
//! where P(t,u) = sum_i D_i t^i u counts generators. Taking logs,
//! A(a,b) := [t^a u^b] log(1/(1-P)) = sum_{m | gcd(a,b)} L(a/m, b/m)/m, and
//! Moebius inversion recovers L. Everything is exact rational arithmetic and
//! the recovered dimensions must come out integral.

use lie_core::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Dense bivariate series truncated at max degrees (a in t, b in u).
#[derive(Clone)]
struct Poly2 {
    amax: usize,
    bmax: usize,
    c: Vec<Vec<Rational>>,
}

impl Poly2 {
    fn zero(amax: usize, bmax: usize) -> Self {
        Poly2 {
            amax,
            bmax,
            c: vec![vec![Rational::zero(); bmax + 1]; amax + 1],
        }
    }

    fn mul(&self, other: &Poly2) -> Poly2 {
        let mut out = Poly2::zero(self.amax, self.bmax);
        for a1 in 0..=self.amax {
            for b1 in 0..=self.bmax {
                if self.c[a1][b1].is_zero() {
                    continue;
                }
                for a2 in 0..=(self.amax - a1) {
                    for b2 in 0..=(self.bmax - b1) {
                        if other.c[a2][b2].is_zero() {
                            continue;
                        }
                        let t = &self.c[a1][b1] * &other.c[a2][b2];
                        out.c[a1 + a2][b1 + b2] = &out.c[a1 + a2][b1 + b2] + &t;
                    }
                }
            }
        }
        out
    }

    fn add_scaled(&mut self, other: &Poly2, s: &Rational) {
        for a in 0..=self.amax {
            for b in 0..=self.bmax {
                if !other.c[a][b].is_zero() {
                    self.c[a][b] = &self.c[a][b] + &(&other.c[a][b] * s);
                }
            }
        }
    }
}

fn moebius(n: usize) -> i64 {
    let mut n = n;
    let mut mu = 1i64;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// Dimensions L(degree, letters) of the free Lie algebra on
/// `gens_by_degree[i-1]` generators of degree i, for total degree up to
/// `max_degree`. Letter counts never exceed the degree.
pub fn free_lie_bigraded_dims(
    gens_by_degree: &[usize],
    max_degree: usize,
) -> BTreeMap<(usize, usize), usize> {
    let amax = max_degree;
    let bmax = max_degree; // letters <= degree since every generator has degree >= 1
    let mut p = Poly2::zero(amax, bmax);
    for (idx, &count) in gens_by_degree.iter().enumerate() {
        let deg = idx + 1;
        if deg <= amax && count > 0 {
            p.c[deg][1] = &p.c[deg][1] + &Rational::from_integer(BigInt::from(count));
        }
    }
    // A = log(1/(1-P)) = sum_{k>=1} P^k / k
    let mut a = Poly2::zero(amax, bmax);
    let mut power = {
        let mut one = Poly2::zero(amax, bmax);
        one.c[0][0] = Rational::one();
        one
    };
    for k in 1..=amax {
        power = power.mul(&p);
        a.add_scaled(&power, &Rational::new(BigInt::one(), BigInt::from(k)));
    }
    let mut out = BTreeMap::new();
    for n in 1..=amax {
        for l in 1..=n.min(bmax) {
            let g = n.gcd(&l);
            let mut val = Rational::zero();
            for m in 1..=g {
                if g % m != 0 {
                    continue;
                }
                let mu = moebius(m);
                if mu == 0 {
                    continue;
                }
                let term = &a.c[n / m][l / m] * &Rational::new(BigInt::from(mu), BigInt::from(m));
                val = &val + &term;
            }
            assert!(
                val.denom().is_one() && !val.is_negative(),
                "Witt count must be a nonnegative integer, got {val} at ({n},{l})"
            );
            let v: BigInt = val.to_integer();
            let v_usize = usize::try_from(u64::try_from(&v).expect("small count"))
                .expect("small count");
            if v_usize > 0 {
                out.insert((n, l), v_usize);
            }
        }
    }
    out
}

/// Total dimension at each degree (summed over letter counts).
pub fn free_lie_degree_dims(gens_by_degree: &[usize], max_degree: usize) -> Vec<usize> {
    let big = free_lie_bigraded_dims(gens_by_degree, max_degree);
    (1..=max_degree)
        .map(|n| big.iter().filter(|((d, _), _)| *d == n).map(|(_, v)| v).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_two_generator_ranks() {
        // Witt numbers for 2 generators of degree 1: 2, 1, 2, 3, 6, 9.
        assert_eq!(free_lie_degree_dims(&[2], 6), vec![2, 1, 2, 3, 6, 9]);
    }

    #[test]
    fn three_generators_quadratic_layer() {
        // degree-2 layer is the exterior square: d(d-1)/2
        for d in 1..=5 {
            let dims = free_lie_degree_dims(&[d], 2);
            assert_eq!(dims[0], d);
            assert_eq!(dims[1], d * (d - 1) / 2);
        }
    }

    #[test]
    fn bigrading_refines_the_degree_count() {
        // one generator each of degree 1 and degree 2
        let big = free_lie_bigraded_dims(&[1, 1], 4);
        // degree 3 with 2 letters: [x1, x2] only
        assert_eq!(big.get(&(3, 2)), Some(&1));
        // degree 2 with 2 letters: [x1, x1] = 0
        assert_eq!(big.get(&(2, 2)), None);
    }
}
