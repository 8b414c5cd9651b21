use num_bigint::BigInt;
use num_traits::{One, Zero};

/// C(n, k) for any integer n (negative upper arguments follow the usual
/// polynomial extension), exact.
pub fn binomial(n: i64, k: u32) -> BigInt {
    let mut acc = BigInt::one();
    let n = BigInt::from(n);
    for j in 0..k {
        acc *= &n - BigInt::from(j);
        acc /= BigInt::from(j + 1); // always divides after the running product
    }
    acc
}

/// Product of per-component binomials C(n_v, i_v).
pub fn multi_binomial(n: &[i64], idx: &[u32]) -> BigInt {
    debug_assert_eq!(n.len(), idx.len());
    let mut acc = BigInt::one();
    for (&nv, &iv) in n.iter().zip(idx) {
        if iv == 0 {
            continue;
        }
        acc *= binomial(nv, iv);
        if acc.is_zero() {
            break;
        }
    }
    acc
}

/// All multi-indices of the given arity with total degree at most `max`,
/// in graded-lexicographic order (total degree first, then lex).
pub fn indices_up_to(arity: usize, max: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for degree in 0..=max {
        let mut stack = vec![(Vec::new(), degree)];
        while let Some((prefix, rest)) = stack.pop() {
            if prefix.len() == arity {
                if rest == 0 {
                    out.push(prefix);
                }
                continue;
            }
            let tail = arity - prefix.len() - 1;
            // descending push so lex-smaller continuations pop first
            for v in (0..=rest).rev() {
                if tail == 0 && v != rest {
                    continue;
                }
                let mut next = prefix.clone();
                next.push(v as u32);
                stack.push((next, rest - v));
            }
        }
    }
    out
}

/// Graded-lexicographic comparison of equal-arity multi-indices.
pub fn graded_cmp(a: &[u32], b: &[u32]) -> std::cmp::Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}
