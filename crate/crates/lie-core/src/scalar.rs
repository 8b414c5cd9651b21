use crate::rational::{to_f64, Rational};
use num_traits::{One, Zero};
use std::ops::{Neg, Sub};

/// Coefficient field for group elements: exact `Rational` by default,
/// `f64` where measurement is the point. Everything the BCH machinery
/// needs is expressed through this trait so both modes share one code path.
pub trait Scalar:
    Clone
    + PartialEq
    + std::fmt::Debug
    + Zero
    + One
    + Sub<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Multiplication by an exact rational (BCH coefficients, powers).
    fn scale(&self, by: &Rational) -> Self;
    fn from_rational(r: &Rational) -> Self;
    /// Exact scalars round-trip; floats report themselves.
    fn as_f64(&self) -> f64;
}

impl Scalar for Rational {
    fn scale(&self, by: &Rational) -> Self {
        self * by
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn as_f64(&self) -> f64 {
        to_f64(self)
    }
}

impl Scalar for f64 {
    fn scale(&self, by: &Rational) -> Self {
        self * to_f64(by)
    }
    fn from_rational(r: &Rational) -> Self {
        to_f64(r)
    }
    fn as_f64(&self) -> f64 {
        *self
    }
}

/// Componentwise a + c*b, the workhorse of series evaluation.
pub fn axpy<S: Scalar>(a: &[S], c: &Rational, b: &[S]) -> Vec<S> {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| x.clone() + y.scale(c))
        .collect()
}

pub fn zeros<S: Scalar>(n: usize) -> Vec<S> {
    vec![S::zero(); n]
}

pub fn is_zero_vec<S: Scalar>(v: &[S]) -> bool {
    v.iter().all(|x| x.is_zero())
}
