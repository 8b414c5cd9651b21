//! Symbolic BCH oracle: expand log(exp X exp Y) in the free associative
//! algebra, then project each homogeneous part onto bracket words with the
//! Dynkin right-normed bracketing map (divided by the degree). The result is
//! a list of (coefficient, bracket word) pairs that can be evaluated in any
//! concrete algebra using nothing but its bracket.
//!
//! This path never touches the production series table: it derives the
//! expansion from associative exp/log arithmetic alone.

use crate::assoc::Series;
use lie_core::{LieAlgebra, Rational, Scalar};
use num_bigint::BigInt;
use std::collections::BTreeMap;

/// Bracket words over {0 = X, 1 = Y}, right-nested:
/// [w_0, [w_1, ... [w_{m-2}, w_{m-1}]...]].
pub fn bch_bracket_words(max_degree: usize) -> Vec<(Rational, Vec<u8>)> {
    let x = Series::letter(max_degree, 0);
    let y = Series::letter(max_degree, 1);
    let z = x.exp().mul(&y.exp()).log();
    let mut acc: BTreeMap<Vec<u8>, Rational> = BTreeMap::new();
    for m in 1..=max_degree {
        let inv_m = Rational::new(BigInt::from(1), BigInt::from(m));
        for (word, coeff) in z.homogeneous(m) {
            // Dynkin-Specht-Wever: right-normed bracketing fixes Lie
            // elements up to the factor m.
            let c = &coeff * &inv_m;
            let slot = acc.entry(word).or_insert_with(|| Rational::new(0.into(), 1.into()));
            *slot = &*slot + &c;
        }
    }
    acc.into_iter()
        .filter(|(w, c)| {
            use num_traits::Zero;
            let trivially_zero = w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2];
            !c.is_zero() && !trivially_zero
        })
        .map(|(w, c)| (c, w))
        .collect()
}

/// Evaluates the oracle expansion at concrete coordinates.
pub fn eval<S: Scalar>(
    algebra: &LieAlgebra,
    words: &[(Rational, Vec<u8>)],
    x: &[S],
    y: &[S],
) -> Vec<S> {
    let mut out = vec![S::zero(); algebra.dim()];
    for (coeff, word) in words {
        let pick = |l: u8| if l == 0 { x } else { y };
        let mut v = pick(word[word.len() - 1]).to_vec();
        for &l in word[..word.len() - 1].iter().rev() {
            v = algebra
                .bracket(pick(l), &v)
                .expect("oracle evaluation uses matching dimensions");
        }
        for (o, vi) in out.iter_mut().zip(&v) {
            if !vi.is_zero() {
                *o = o.clone() + vi.scale(coeff);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie_core::rat;

    /// The classical low-degree expansion, checked coefficient by
    /// coefficient after evaluating on the free 3-step algebra where
    /// degree <= 3 bracket words are a basis.
    #[test]
    fn matches_textbook_low_degree_terms() {
        let algebra = lie_core::standard::free_two_gen_step_three();
        let words = bch_bracket_words(3);
        let x = vec![rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        let y = vec![rat(0, 1), rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)];
        let z = eval(&algebra, &words, &x, &y);
        // X + Y + [X,Y]/2 + [X,[X,Y]]/12 - [Y,[X,Y]]/12... with basis
        // (X, Y, [X,Y], [X,[X,Y]], [Y,[X,Y]])
        assert_eq!(
            z,
            vec![rat(1, 1), rat(1, 1), rat(1, 2), rat(1, 12), rat(-1, 12)]
        );
    }
}
