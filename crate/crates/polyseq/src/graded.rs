use crate::sequence::PolySequence;
use crate::PolyError;
use filtration::{Filtration, Flavor, OrderingIndex};
use lie_core::linalg::RowSpace;
use lie_core::{GroupElement, Rational};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Coefficients of the monomial product form
/// g(n) = prod_i prod_j exp(X_j)^{alpha_{i,j} n^i / i!},
/// where for each power i the inner product runs, in basis order, over the
/// coordinate directions X_j spanning the i-th group of the filtration.
/// The i = 0 block is the constant g(0) in coordinates of the second kind.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GradedTaylor {
    alphas: BTreeMap<(usize, usize), Rational>,
}

impl GradedTaylor {
    pub fn alpha(&self, power: usize, position: usize) -> Rational {
        self.alphas
            .get(&(power, position))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(usize, usize), &Rational)> {
        self.alphas.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.alphas.is_empty()
    }

    fn set(&mut self, power: usize, position: usize, value: Rational) {
        if !value.is_zero() {
            self.alphas.insert((power, position), value);
        }
    }
}

/// Degree each coordinate direction carries under the filtration: the
/// largest d with the unit vector inside the d-th group. Errors unless
/// every group is spanned by the unit vectors it contains, i.e. the basis
/// is adapted to the filtration.
pub fn position_degrees(filtration: &Filtration) -> Result<Vec<usize>, PolyError> {
    if !matches!(filtration.flavor(), Flavor::Degree) {
        return Err(PolyError::FlavorMismatch(
            "a degree filtration over the coordinate basis".into(),
        ));
    }
    let dim = filtration.algebra().dim();
    let s = filtration.degree();
    let unit = |p: usize| {
        let mut v = vec![Rational::zero(); dim];
        v[p] = Rational::one();
        v
    };
    let mut degrees = vec![0usize; dim];
    for d in 1..=s {
        let g = filtration.group(&OrderingIndex::Degree(d));
        let mut from_units = RowSpace::empty(dim);
        for (p, deg) in degrees.iter_mut().enumerate() {
            if g.contains(&unit(p)) {
                *deg = d;
                from_units.insert(&unit(p));
            }
        }
        for row in g.basis() {
            if !from_units.contains(row) {
                return Err(PolyError::BasisNotAdapted(format!(
                    "group {d} is not a span of coordinate directions"
                )));
            }
        }
    }
    if degrees.contains(&0) {
        return Err(PolyError::BasisNotAdapted(
            "every coordinate must carry a positive degree".into(),
        ));
    }
    Ok(degrees)
}

fn factorial(i: usize) -> BigInt {
    (1..=i as u64).map(BigInt::from).product()
}

/// One block of the product form: the power-i factors in basis order.
fn block_value(
    algebra: &Arc<lie_core::LieAlgebra>,
    degrees: &[usize],
    coeffs: &GradedTaylor,
    power: usize,
    n: i64,
) -> Result<GroupElement<Rational>, PolyError> {
    let dim = algebra.dim();
    let mut acc = GroupElement::identity(Arc::clone(algebra));
    let scale = Rational::new(BigInt::from(n).pow(power as u32), factorial(power));
    for p in 0..dim {
        if degrees[p] < power {
            continue;
        }
        let alpha = coeffs.alpha(power, p);
        if alpha.is_zero() {
            continue;
        }
        let mut v = vec![Rational::zero(); dim];
        v[p] = Rational::one();
        let x = GroupElement::new(Arc::clone(algebra), v)?;
        acc = acc.mul(&x.power(&(&alpha * &scale)))?;
    }
    Ok(acc)
}

/// Evaluates the monomial product form at an integer point.
pub fn eval_graded(
    filtration: &Filtration,
    coeffs: &GradedTaylor,
    n: i64,
) -> Result<GroupElement<Rational>, PolyError> {
    let degrees = position_degrees(filtration)?;
    let algebra = filtration.algebra();
    let mut acc = block_value(algebra, &degrees, coeffs, 0, n)?;
    for d in 1..=filtration.degree() {
        acc = acc.mul(&block_value(algebra, &degrees, coeffs, d, n)?)?;
    }
    Ok(acc)
}

/// Monomial coefficients of a coordinate-wise polynomial map of degree at
/// most s, from its values at 0..=s: returns c with
/// values[n] = sum_i c[i] * n^i/i!.
fn monomial_coefficients(
    values: &[Vec<Rational>],
    dim: usize,
) -> Result<Vec<Vec<Rational>>, PolyError> {
    let rows = values.len();
    let mut m = vec![vec![Rational::zero(); rows]; rows];
    for (n, row) in m.iter_mut().enumerate() {
        for (i, entry) in row.iter_mut().enumerate() {
            *entry = Rational::new(BigInt::from(n as u64).pow(i as u32), factorial(i));
        }
    }
    let mut out = vec![vec![Rational::zero(); dim]; rows];
    for p in 0..dim {
        let b: Vec<Rational> = values.iter().map(|v| v[p].clone()).collect();
        let c = lie_core::linalg::solve(&m, &b)
            .ok_or_else(|| PolyError::Internal("coordinate interpolation failed".into()))?;
        for (i, ci) in c.into_iter().enumerate() {
            out[i][p] = ci;
        }
    }
    Ok(out)
}

/// Converts a one-variable sequence to the graded monomial form by
/// stripping one power at a time: the n^l/l! coefficient of the current
/// residual's logarithm is supported on the l-th group, is recorded as the
/// power-l block, and the block is divided off before moving to l+1.
pub fn graded_taylor(seq: &PolySequence) -> Result<GradedTaylor, PolyError> {
    if seq.arity() != 1 {
        return Err(PolyError::ArityMismatch {
            got: seq.arity(),
            expected: 1,
        });
    }
    let filtration = seq.filtration();
    let degrees = position_degrees(filtration)?;
    let algebra = filtration.algebra();
    let dim = algebra.dim();
    let s = filtration.degree();

    let mut out = GradedTaylor::default();
    for (p, c) in seq.eval(&[0])?.coords_second_kind()?.iter().enumerate() {
        out.set(0, p, c.clone());
    }

    let residual = |out: &GradedTaylor, upto: usize, n: i64| -> Result<GroupElement<Rational>, PolyError> {
        let mut prefix = block_value(algebra, &degrees, out, 0, n)?;
        for d in 1..=upto {
            prefix = prefix.mul(&block_value(algebra, &degrees, out, d, n)?)?;
        }
        Ok(prefix.inverse().mul(&seq.eval(&[n])?)?)
    };

    for l in 1..=s {
        let values: Result<Vec<_>, _> = (0..=s as i64)
            .map(|n| residual(&out, l - 1, n).map(GroupElement::into_coords))
            .collect();
        let coeffs = monomial_coefficients(&values?, dim)?;
        for (p, c) in coeffs[l].iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if degrees[p] < l {
                return Err(PolyError::Internal(format!(
                    "power-{l} coefficient escapes group {l} at position {p}"
                )));
            }
            out.set(l, p, c.clone());
        }
    }

    for n in 0..=(s + 1) as i64 {
        if !residual(&out, s, n)?.is_identity() {
            return Err(PolyError::Internal(
                "graded form does not reproduce the sequence".into(),
            ));
        }
    }
    Ok(out)
}
