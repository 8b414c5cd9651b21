//! The Baker-Campbell-Hausdorff product through the Dynkin commutator
//! series. Terms are precomputed once per total degree up to [`MAX_STEP`]
//! as pairs (rational coefficient, right-nested bracket word over {X, Y})
//! and then evaluated against a concrete algebra's structure constants.

use crate::algebra::{AlgebraError, LieAlgebra};
use crate::rational::Rational;
use crate::scalar::Scalar;
use crate::MAX_STEP;
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Letter in a bracket word: 0 selects the left operand, 1 the right.
pub type Letter = u8;

/// One series term. `word` of length m encodes the right-nested commutator
/// [w_0, [w_1, ... [w_{m-2}, w_{m-1}]...]]; a single letter is the operand
/// itself.
#[derive(Clone, Debug)]
pub struct BchTerm {
    pub coeff: Rational,
    pub word: Vec<Letter>,
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Dynkin's series for log(exp X exp Y): over block sequences
/// (r_1,s_1),...,(r_n,s_n) with r_i + s_i >= 1, the word X^{r_1} Y^{s_1}
/// ... X^{r_n} Y^{s_n} (right-nested) carries coefficient
/// (-1)^{n-1} / (n * m * prod r_i! s_i!) with m the word length.
fn dynkin_terms(max_degree: usize) -> Vec<BchTerm> {
    let mut acc: BTreeMap<Vec<Letter>, Rational> = BTreeMap::new();
    // depth-first over block sequences
    fn rec(
        word: &mut Vec<Letter>,
        blocks: usize,
        denom: BigInt,
        max_degree: usize,
        acc: &mut BTreeMap<Vec<Letter>, Rational>,
    ) {
        if blocks > 0 && !word.is_empty() {
            let m = word.len();
            let sign = if blocks % 2 == 1 { 1 } else { -1 };
            let den = &denom * BigInt::from(blocks) * BigInt::from(m);
            let coeff = Rational::new(BigInt::from(sign), den);
            let slot = acc.entry(word.clone()).or_insert_with(Rational::zero);
            *slot = &*slot + &coeff;
        }
        if word.len() >= max_degree {
            return;
        }
        let room = max_degree - word.len();
        for r in 0..=room {
            for s in 0..=(room - r) {
                if r + s == 0 {
                    continue;
                }
                let start = word.len();
                word.extend(std::iter::repeat(0).take(r));
                word.extend(std::iter::repeat(1).take(s));
                let d = &denom * factorial(r) * factorial(s);
                rec(word, blocks + 1, d, max_degree, acc);
                word.truncate(start);
            }
        }
    }
    let mut word = Vec::new();
    rec(&mut word, 0, BigInt::one(), max_degree, &mut acc);
    acc.into_iter()
        .filter(|(w, c)| {
            // words ending in a doubled letter bracket to zero
            let trivially_zero = w.len() >= 2 && w[w.len() - 1] == w[w.len() - 2];
            !trivially_zero && !c.is_zero()
        })
        .map(|(word, coeff)| BchTerm { coeff, word })
        .collect()
}

/// Series terms of total degree <= `step`, cached per step.
pub fn bch_terms(step: usize) -> &'static [BchTerm] {
    assert!((1..=MAX_STEP).contains(&step), "step out of range");
    static TABLES: OnceLock<Vec<Vec<BchTerm>>> = OnceLock::new();
    let tables = TABLES.get_or_init(|| {
        let full = dynkin_terms(MAX_STEP);
        (1..=MAX_STEP)
            .map(|s| {
                full.iter()
                    .filter(|t| t.word.len() <= s)
                    .cloned()
                    .collect()
            })
            .collect()
    });
    &tables[step - 1]
}

/// Evaluates a right-nested bracket word at concrete coordinates.
fn eval_word<S: Scalar>(
    algebra: &LieAlgebra,
    word: &[Letter],
    x: &[S],
    y: &[S],
) -> Result<Vec<S>, AlgebraError> {
    let pick = |l: Letter| if l == 0 { x } else { y };
    let mut v = pick(word[word.len() - 1]).to_vec();
    for &l in word[..word.len() - 1].iter().rev() {
        v = algebra.bracket(pick(l), &v)?;
    }
    Ok(v)
}

/// log(exp x exp y) truncated at the algebra's declared step.
///
/// Requires a validated algebra; the truncation is sound because every
/// bracket word longer than the step evaluates to zero.
pub fn bch_product<S: Scalar>(
    algebra: &LieAlgebra,
    x: &[S],
    y: &[S],
) -> Result<Vec<S>, AlgebraError> {
    algebra.ensure_valid()?;
    if x.len() != algebra.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: algebra.dim(),
            got: x.len(),
        });
    }
    if y.len() != algebra.dim() {
        return Err(AlgebraError::DimensionMismatch {
            expected: algebra.dim(),
            got: y.len(),
        });
    }
    let step = algebra.declared_step().min(MAX_STEP);
    let mut out = vec![S::zero(); algebra.dim()];
    for term in bch_terms(step) {
        let v = eval_word(algebra, &term.word, x, y)?;
        for (o, vi) in out.iter_mut().zip(&v) {
            if !vi.is_zero() {
                *o = o.clone() + vi.scale(&term.coeff);
            }
        }
    }
    Ok(out)
}
