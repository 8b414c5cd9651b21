use crate::{NilError, Nilmanifold};
use lie_core::{GroupElement, Rational};
use num_complex::Complex64;
use num_traits::ToPrimitive;
use polyseq::PolySequence;
use std::f64::consts::TAU;
use std::sync::Arc;

/// e(x) = exp(2πi·x).
pub fn phase(x: f64) -> Complex64 {
    Complex64::from_polar(1.0, TAU * x)
}

/// e(r) for an exact rational, reduced mod 1 before the float conversion so
/// large arguments lose no precision.
pub(crate) fn phase_rational(r: &Rational) -> Complex64 {
    let frac = r - r.floor();
    phase(frac.to_f64().unwrap_or(0.0))
}

/// A pure function on the fundamental domain of a nilmanifold, wrapped so
/// sequences and partitions can carry observables around without generics.
#[derive(Clone)]
pub struct Observable {
    f: Arc<dyn Fn(&GroupElement<Rational>) -> Complex64 + Send + Sync>,
}

impl Observable {
    pub fn new(f: impl Fn(&GroupElement<Rational>) -> Complex64 + Send + Sync + 'static) -> Self {
        Observable { f: Arc::new(f) }
    }

    pub fn constant(c: Complex64) -> Self {
        Observable::new(move |_| c)
    }

    pub fn eval(&self, g: &GroupElement<Rational>) -> Complex64 {
        (self.f)(g)
    }
}

/// F(g(n)Γ): evaluates the sequence at n, reduces into the fundamental
/// domain, and applies the observable there. Because the fractional part of
/// the reduction is unique, lattice shifts of g(n) cannot change the value.
pub fn eval_nilsequence(
    m: &Nilmanifold,
    f: &Observable,
    g: &PolySequence,
    n: i64,
) -> Result<Complex64, NilError> {
    if g.arity() != 1 {
        return Err(NilError::BadInput(format!(
            "nilsequences take one variable, sequence has {}",
            g.arity()
        )));
    }
    let (frac, _) = m.reduce_to_fundamental(&g.eval(&[n])?)?;
    Ok(f.eval(&frac))
}
