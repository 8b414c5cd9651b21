use crate::decompose::linear_decompose;
use crate::horizontal::{taylor_coefficient, Character, HorizontalSpace};
use crate::sequence::PolySequence;
use crate::PolyError;
use filtration::Flavor;
use lie_core::linalg::sup_norm_f64;
use lie_core::{GroupElement, Rational};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::sync::Arc;

/// Measured certificates attached to a factorization.
#[derive(Clone, Debug, PartialEq)]
pub struct FactorReport {
    /// C with max_n d(eps(n-1), eps(n)) = C / N over the sampled window
    pub smooth_constant: f64,
    /// lcm of the denominators in the rational part's coefficients
    pub denominator_bound: BigUint,
    /// levels that carried characters
    pub levels: Vec<usize>,
}

/// g = eps * main * gamma with eps small-stepped, gamma rational, and every
/// supplied character vanishing on main's Taylor coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct Factorization {
    pub eps: PolySequence,
    pub main: PolySequence,
    pub gamma: PolySequence,
    pub report: FactorReport,
}

const SMOOTH_SAMPLES: u64 = 4096;
const IDENTITY_WINDOW: u64 = 64;

/// Splits a sequence starting at the identity so that the given horizontal
/// characters vanish exactly on the middle part. Characters are grouped by
/// level; each level's Taylor coefficient is split by linear_decompose with
/// tolerance H / N^level, the small part goes to eps and the rational part
/// to gamma. One pass suffices because Taylor coefficients add under
/// pointwise products.
pub fn factor_by_characters(
    g: &PolySequence,
    chars: &[Character],
    height_bound: u64,
    window: u64,
) -> Result<Factorization, PolyError> {
    if g.arity() != 1 {
        return Err(PolyError::ArityMismatch {
            got: g.arity(),
            expected: 1,
        });
    }
    if !matches!(g.filtration().flavor(), Flavor::DegreeRank) {
        return Err(PolyError::FlavorMismatch(
            "a degree-rank filtration is required to form horizontal tori".into(),
        ));
    }
    if window == 0 {
        return Err(PolyError::Precondition("the window must be positive".into()));
    }
    if !g.eval(&[0])?.is_identity() {
        return Err(PolyError::Precondition(
            "the sequence must start at the identity".into(),
        ));
    }

    let filtration = g.filtration();
    let algebra = filtration.algebra();

    let mut by_level: BTreeMap<usize, Vec<&Character>> = BTreeMap::new();
    for c in chars {
        by_level.entry(c.level()).or_default().push(c);
    }

    let mut eps_coeffs = Vec::new();
    let mut gamma_coeffs = Vec::new();
    let mut spaces: BTreeMap<usize, HorizontalSpace> = BTreeMap::new();
    for (&level, level_chars) in &by_level {
        let space = HorizontalSpace::at(filtration, level)?;
        let h_rat = Rational::from_integer(BigInt::from(height_bound));
        for (j, c) in level_chars.iter().enumerate() {
            let h = c.height(&space)?;
            if h > h_rat {
                return Err(PolyError::Precondition(format!(
                    "level {level} character {j} has height {h}, beyond {height_bound}"
                )));
            }
        }
        let mut vectors = Vec::with_capacity(level_chars.len());
        for c in level_chars {
            let v = c.torus_vector(&space)?;
            vectors.push(
                v.iter()
                    .map(|x| {
                        if x.denom().is_one() {
                            Ok(x.to_integer())
                        } else {
                            Err(PolyError::BadCharacter(format!(
                                "level-{level} character is fractional on the torus"
                            )))
                        }
                    })
                    .collect::<Result<Vec<BigInt>, _>>()?,
            );
        }
        let w = taylor_coefficient(g, level)?;
        let delta = Rational::new(
            BigInt::from(height_bound),
            BigInt::from(window).pow(level as u32),
        );
        let split = linear_decompose(&vectors, &w.coords, &delta).map_err(|e| match e {
            PolyError::Precondition(msg) => {
                PolyError::Precondition(format!("level {level}: {msg}"))
            }
            other => other,
        })?;
        if !split.small.iter().all(Zero::is_zero) {
            let lifted = space.lift(&split.small)?;
            eps_coeffs.push((
                vec![level as u32],
                GroupElement::new(Arc::clone(algebra), lifted)?,
            ));
        }
        if !split.rational.iter().all(Zero::is_zero) {
            let lifted = space.lift(&split.rational)?;
            gamma_coeffs.push((
                vec![level as u32],
                GroupElement::new(Arc::clone(algebra), lifted)?,
            ));
        }
        spaces.insert(level, space);
    }

    let eps = PolySequence::new(Arc::clone(filtration), 1, eps_coeffs)?;
    let gamma = PolySequence::new(Arc::clone(filtration), 1, gamma_coeffs)?;
    let cap = filtration.degree();
    let main = PolySequence::interpolate(Arc::clone(filtration), 1, cap, &mut |n| {
        let value = eps.eval(n)?.inverse().mul(&g.eval(n)?)?;
        Ok(value.mul(&gamma.eval(n)?.inverse())?)
    })?;

    for n in 0..=window.min(IDENTITY_WINDOW) as i64 {
        let lhs = eps
            .eval(&[n])?
            .mul(&main.eval(&[n])?)?
            .mul(&gamma.eval(&[n])?)?;
        if lhs != g.eval(&[n])? {
            return Err(PolyError::Internal(format!(
                "factorization identity fails at n = {n}"
            )));
        }
    }
    for (&level, level_chars) in &by_level {
        let t = taylor_coefficient(&main, level)?;
        let space = &spaces[&level];
        for (j, c) in level_chars.iter().enumerate() {
            if !c.pair(space, &t)?.is_zero() {
                return Err(PolyError::Internal(format!(
                    "level {level} character {j} survives on the main part"
                )));
            }
        }
    }

    let mut denominator_bound = BigUint::one();
    for idx in gamma.support() {
        for x in gamma.coeff(idx).coords() {
            denominator_bound = denominator_bound.lcm(&x.denom().magnitude().clone());
        }
    }

    let stride = window.div_ceil(SMOOTH_SAMPLES).max(1);
    let mut worst = 0.0f64;
    let mut n = 1u64;
    while n <= window {
        let step = eps
            .eval(&[n as i64 - 1])?
            .inverse()
            .mul(&eps.eval(&[n as i64])?)?;
        worst = worst.max(sup_norm_f64(step.coords()));
        n += stride;
    }
    let report = FactorReport {
        smooth_constant: worst * window as f64,
        denominator_bound,
        levels: by_level.keys().copied().collect(),
    };

    Ok(Factorization {
        eps,
        main,
        gamma,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use filtration::{Filtration, OrderingIndex, Subalgebra};
    use lie_core::rat;
    use lie_core::standard::line;

    fn line_filtration() -> Arc<Filtration> {
        let a = line();
        let full = Subalgebra::full(Arc::clone(&a));
        Arc::new(
            Filtration::new(
                Arc::clone(&a),
                Flavor::DegreeRank,
                vec![
                    (OrderingIndex::DegreeRank(1, 0), full.clone()),
                    (OrderingIndex::DegreeRank(1, 1), full),
                ],
            )
            .unwrap(),
        )
    }

    #[test]
    fn real_line_worked_example() {
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![1],
                GroupElement::new(Arc::clone(&a), vec![rat(2503, 10000)]).unwrap(),
            )],
        )
        .unwrap();
        let psi = Character::new(&f, 1, vec![rat(4, 1)]).unwrap();
        let out = factor_by_characters(&g, &[psi], 4, 100).unwrap();

        assert_eq!(out.gamma.coeff(&[1]).coords(), &[rat(1, 4)]);
        assert_eq!(out.eps.coeff(&[1]).coords(), &[rat(3, 10000)]);
        assert!(out.main.support().is_empty());
        assert_eq!(out.report.denominator_bound, BigUint::from(4u32));
        assert!((out.report.smooth_constant - 0.03).abs() < 1e-12);
        for n in 0..=64 {
            let lhs = out
                .eps
                .eval(&[n])
                .unwrap()
                .mul(&out.main.eval(&[n]).unwrap())
                .unwrap()
                .mul(&out.gamma.eval(&[n]).unwrap())
                .unwrap();
            assert_eq!(lhs, g.eval(&[n]).unwrap());
        }
    }

    #[test]
    fn no_characters_returns_the_sequence_unchanged() {
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![1],
                GroupElement::new(Arc::clone(&a), vec![rat(7, 13)]).unwrap(),
            )],
        )
        .unwrap();
        let out = factor_by_characters(&g, &[], 3, 50).unwrap();
        assert_eq!(out.main, g);
        assert!(out.eps.support().is_empty());
        assert!(out.gamma.support().is_empty());
        assert_eq!(out.report.smooth_constant, 0.0);
    }

    #[test]
    fn killed_coefficients_pass_through() {
        // character (4) on a coefficient the character already sends to an
        // exact integer multiple of 1/4 splits into gamma only; one with
        // pairing zero passes through entirely
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![1],
                GroupElement::new(Arc::clone(&a), vec![rat(0, 1)]).unwrap(),
            )],
        )
        .unwrap();
        let psi = Character::new(&f, 1, vec![rat(4, 1)]).unwrap();
        let out = factor_by_characters(&g, &[psi], 4, 100).unwrap();
        assert!(out.eps.support().is_empty());
        assert!(out.gamma.support().is_empty());
        assert_eq!(out.main, g);
    }

    #[test]
    fn distant_coefficient_is_rejected_with_level_context() {
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![1],
                GroupElement::new(Arc::clone(&a), vec![rat(1, 3)]).unwrap(),
            )],
        )
        .unwrap();
        let psi = Character::new(&f, 1, vec![rat(1, 1)]).unwrap();
        let err = factor_by_characters(&g, &[psi], 1, 100).unwrap_err();
        match err {
            PolyError::Precondition(msg) => assert!(msg.contains("level 1"), "{msg}"),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn oversized_character_height_is_rejected() {
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![1],
                GroupElement::new(Arc::clone(&a), vec![rat(1, 5)]).unwrap(),
            )],
        )
        .unwrap();
        let psi = Character::new(&f, 1, vec![rat(5, 1)]).unwrap();
        let err = factor_by_characters(&g, &[psi], 4, 100).unwrap_err();
        assert!(matches!(err, PolyError::Precondition(_)));
    }

    #[test]
    fn nonidentity_start_is_rejected() {
        let f = line_filtration();
        let a = Arc::clone(f.algebra());
        let g = PolySequence::new(
            Arc::clone(&f),
            1,
            [(
                vec![0],
                GroupElement::new(Arc::clone(&a), vec![rat(1, 2)]).unwrap(),
            )],
        )
        .unwrap();
        let err = factor_by_characters(&g, &[], 1, 10).unwrap_err();
        assert!(matches!(err, PolyError::Precondition(_)));
    }
}
