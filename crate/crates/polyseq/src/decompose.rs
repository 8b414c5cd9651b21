use crate::PolyError;
use lie_core::linalg::{solve, RowSpace};
use lie_core::Rational;
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Split of a real vector against a family of integer functionals:
/// w = small + rational + perp with every v_i exactly orthogonal to perp,
/// the rational part of bounded denominator, and the small part bounded by
/// the input tolerance times the reported growth factor.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub small: Vec<Rational>,
    pub rational: Vec<Rational>,
    pub perp: Vec<Rational>,
    /// indices of the rows that were kept as an independent subfamily
    pub used: Vec<usize>,
    /// sum of sup-norms of the dual vectors; ‖small‖_∞ ≤ δ · growth
    pub growth: Rational,
    /// lcm of the denominators appearing in the dual vectors
    pub denominator_bound: BigUint,
}

fn dot(v: &[BigInt], w: &[Rational]) -> Rational {
    let mut acc = Rational::zero();
    for (a, b) in v.iter().zip(w) {
        acc += b * Rational::from_integer(a.clone());
    }
    acc
}

/// Nearest integer, ties rounding up.
fn round_nearest(x: &Rational) -> BigInt {
    (x + Rational::new(BigInt::one(), BigInt::from(2))).floor().to_integer()
}

fn sup_norm(v: &[Rational]) -> Rational {
    v.iter().map(Signed::abs).max().unwrap_or_else(Rational::zero)
}

/// Splits w against integer row functionals whose pairings with w are
/// within delta of an integer, using dual vectors of an independent
/// subfamily picked greedily in row order. All arithmetic is exact.
pub fn linear_decompose(
    vectors: &[Vec<BigInt>],
    w: &[Rational],
    delta: &Rational,
) -> Result<Decomposition, PolyError> {
    let dim = w.len();
    for (i, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(PolyError::Precondition(format!(
                "row {i} has length {} but the target vector has length {dim}",
                v.len()
            )));
        }
    }

    let mut worst: Option<(usize, Rational)> = None;
    let mut pairings = Vec::with_capacity(vectors.len());
    for (i, v) in vectors.iter().enumerate() {
        let s = dot(v, w);
        let e = &s - Rational::from_integer(round_nearest(&s));
        if e.abs() > *delta && worst.as_ref().map_or(true, |(_, b)| e.abs() > *b) {
            worst = Some((i, e.abs()));
        }
        pairings.push(s);
    }
    if let Some((i, d)) = worst {
        return Err(PolyError::Precondition(format!(
            "row {i} pairs with the target at distance {d} from the integers, beyond {delta}"
        )));
    }

    let mut used = Vec::new();
    let mut span = RowSpace::empty(dim);
    for (i, v) in vectors.iter().enumerate() {
        let rational_row: Vec<Rational> =
            v.iter().map(|x| Rational::from_integer(x.clone())).collect();
        if span.insert(&rational_row) {
            used.push(i);
        }
    }

    let k = used.len();
    let gram: Vec<Vec<Rational>> = used
        .iter()
        .map(|&i| {
            used.iter()
                .map(|&j| {
                    let mut acc = Rational::zero();
                    for (a, b) in vectors[i].iter().zip(&vectors[j]) {
                        acc += Rational::from_integer(a * b);
                    }
                    acc
                })
                .collect()
        })
        .collect();

    let mut duals: Vec<Vec<Rational>> = Vec::with_capacity(k);
    for r in 0..k {
        let mut e = vec![Rational::zero(); k];
        e[r] = Rational::one();
        let x = solve(&gram, &e)
            .ok_or_else(|| PolyError::Internal("independent rows produced a singular Gram matrix".into()))?;
        let mut u = vec![Rational::zero(); dim];
        for (j, &row) in used.iter().enumerate() {
            for (ui, vi) in u.iter_mut().zip(&vectors[row]) {
                *ui += &x[j] * Rational::from_integer(vi.clone());
            }
        }
        duals.push(u);
    }

    let mut small = vec![Rational::zero(); dim];
    let mut rational = vec![Rational::zero(); dim];
    for (r, &row) in used.iter().enumerate() {
        let m = round_nearest(&pairings[row]);
        let e = &pairings[row] - Rational::from_integer(m.clone());
        for (j, u) in duals[r].iter().enumerate() {
            small[j] += &e * u;
            rational[j] += Rational::from_integer(m.clone()) * u;
        }
    }
    let perp: Vec<Rational> = w
        .iter()
        .zip(small.iter().zip(&rational))
        .map(|(wi, (s, q))| wi - s - q)
        .collect();

    for (i, v) in vectors.iter().enumerate() {
        if !dot(v, &perp).is_zero() {
            return Err(PolyError::Internal(format!(
                "row {i} is not orthogonal to the residual component"
            )));
        }
    }

    let growth = duals.iter().map(|u| sup_norm(u)).sum();
    let mut denominator_bound = BigUint::one();
    for u in &duals {
        for x in u {
            denominator_bound = denominator_bound.lcm(&x.denom().magnitude().clone());
        }
    }

    Ok(Decomposition {
        small,
        rational,
        perp,
        used,
        growth,
        denominator_bound,
    })
}

/// Float front-end: converts the inputs exactly to rationals and runs the
/// exact split.
pub fn linear_decompose_f64(
    vectors: &[Vec<i64>],
    w: &[f64],
    delta: f64,
) -> Result<Decomposition, PolyError> {
    let to_rat = |x: f64| {
        Rational::from_float(x)
            .ok_or_else(|| PolyError::Precondition(format!("non-finite input {x}")))
    };
    let w: Vec<Rational> = w.iter().map(|&x| to_rat(x)).collect::<Result<_, _>>()?;
    let delta = to_rat(delta)?;
    let vectors: Vec<Vec<BigInt>> = vectors
        .iter()
        .map(|v| v.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    linear_decompose(&vectors, &w, &delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use lie_core::rat;

    fn big(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn no_rows_leaves_everything_in_the_residual() {
        let w = vec![rat(7, 3), rat(-1, 2)];
        let d = linear_decompose(&[], &w, &rat(1, 100)).unwrap();
        assert_eq!(d.perp, w);
        assert!(d.small.iter().all(Zero::is_zero));
        assert!(d.rational.iter().all(Zero::is_zero));
        assert!(d.used.is_empty());
        assert_eq!(d.denominator_bound, BigUint::one());
    }

    #[test]
    fn single_row_worked_split() {
        let vectors = vec![big(&[2, 0])];
        let w = vec![rat(501, 1000), rat(3, 10)];
        let d = linear_decompose(&vectors, &w, &rat(1, 500)).unwrap();
        assert_eq!(d.small, vec![rat(1, 1000), rat(0, 1)]);
        assert_eq!(d.rational, vec![rat(1, 2), rat(0, 1)]);
        assert_eq!(d.perp, vec![rat(0, 1), rat(3, 10)]);
        assert_eq!(d.used, vec![0]);
        assert_eq!(d.growth, rat(1, 2));
        assert_eq!(d.denominator_bound, BigUint::from(2u32));
    }

    #[test]
    fn integer_pairings_leave_no_small_part() {
        let vectors = vec![big(&[2, 0])];
        let w = vec![rat(1, 2), rat(1, 3)];
        let d = linear_decompose(&vectors, &w, &rat(1, 1000)).unwrap();
        assert!(d.small.iter().all(Zero::is_zero));
        assert_eq!(d.rational, vec![rat(1, 2), rat(0, 1)]);
        assert_eq!(d.perp, vec![rat(0, 1), rat(1, 3)]);
    }

    #[test]
    fn distant_pairing_is_rejected_with_the_worst_row_named() {
        let vectors = vec![big(&[1, 0]), big(&[0, 1])];
        let w = vec![rat(3, 10), rat(1, 10)];
        let err = linear_decompose(&vectors, &w, &rat(1, 5)).unwrap_err();
        match err {
            PolyError::Precondition(msg) => assert!(msg.contains("row 0"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn dependent_rows_stay_orthogonal_to_the_residual() {
        let vectors = vec![big(&[2, 0, 0]), big(&[4, 0, 0]), big(&[1, 1, 0])];
        let w = vec![rat(4999, 10000), rat(5001, 10000), rat(7, 9)];
        // pairings: 0.9998, 1.9996, and exactly 1
        let d = linear_decompose(&vectors, &w, &rat(1, 2500)).unwrap();
        assert_eq!(d.used, vec![0, 2]);
        for v in &vectors {
            assert!(dot(v, &d.perp).is_zero());
        }
        for (wi, ((s, r), p)) in w
            .iter()
            .zip(d.small.iter().zip(&d.rational).zip(&d.perp))
        {
            assert_eq!(wi, &(s + r + p));
        }
        assert_eq!(d.perp[2], rat(7, 9));
    }

    #[test]
    fn float_inputs_are_converted_exactly() {
        let d = linear_decompose_f64(&[vec![4, 0]], &[0.25, 0.1], 1e-6).unwrap();
        assert_eq!(d.rational[0], rat(1, 4));
        assert!(d.small.iter().all(Zero::is_zero));
        assert!(d.perp[0].is_zero());
        // 0.1 is not exactly representable; the residual carries its
        // binary value unchanged
        assert_eq!(d.perp[1], Rational::from_float(0.1).unwrap());
    }

    #[test]
    fn small_part_respects_the_reported_growth() {
        let vectors = vec![big(&[3, 1]), big(&[1, -2])];
        // base point (2/7, 1/7) pairs to integers; nudge each coordinate
        let w = vec![
            rat(2, 7) + rat(1, 10000),
            rat(1, 7) - rat(1, 10000),
        ];
        let delta = rat(3, 10000);
        let d = linear_decompose(&vectors, &w, &delta).unwrap_or_else(|e| panic!("{e}"));
        let bound = &delta * &d.growth;
        assert!(sup_norm(&d.small) <= bound);
        assert!(d.perp.iter().all(Zero::is_zero));
        assert_eq!(d.rational, vec![rat(2, 7), rat(1, 7)]);
    }
}
