//! Brute-force counterparts of the additive-combinatorics routines. These are
//! deliberately literal (quadruple loops, exhaustive membership scans) so the
//! optimized implementations can be checked against them on small inputs.

use lie_core::Rational;
use num_bigint::BigInt;
use std::collections::BTreeSet;

/// Number of quadruples (a, b, c, d) in A^4 with a + b = c + d, counted by
/// direct enumeration.
pub fn additive_energy(set: &[i64]) -> u64 {
    let mut count = 0u64;
    for &a in set {
        for &b in set {
            for &c in set {
                for &d in set {
                    if a + b == c + d {
                        count += 1;
                    }
                }
            }
        }
    }
    count
}

/// Distance from p/q to the nearest integer, as an exact rational.
fn circle_dist(num: &BigInt, den: &BigInt) -> Rational {
    let r = Rational::new(num.clone(), den.clone());
    let frac = &r - &r.floor();
    let comp = &Rational::from_integer(BigInt::from(1)) - &frac;
    if frac <= comp {
        frac
    } else {
        comp
    }
}

/// Members n of Z_modulus with dist(n * s / modulus, Z) <= radius for every
/// frequency s, found by scanning all residues. Comparisons are exact, so
/// boundary points (dist equal to radius) are included.
pub fn bohr_members(modulus: u64, freqs: &[i64], radius: &Rational) -> BTreeSet<u64> {
    assert!(modulus > 0);
    let m = BigInt::from(modulus);
    let mut out = BTreeSet::new();
    'next: for n in 0..modulus {
        for &s in freqs {
            let num = BigInt::from(n) * BigInt::from(s);
            if &circle_dist(&num, &m) > radius {
                continue 'next;
            }
        }
        out.insert(n);
    }
    out
}
