use crate::observe::Observable;
use crate::{NilError, Nilmanifold};
use lie_core::linalg::sup_norm_f64;
use lie_core::rng::SplitMix64;
use lie_core::{rat, GroupElement, Rational};

fn base_bound(
    m: &Nilmanifold,
    x: &GroupElement<Rational>,
    y: &GroupElement<Rational>,
) -> Result<f64, NilError> {
    let a = sup_norm_f64(&m.psi(&x.mul(&y.inverse())?)?);
    let b = sup_norm_f64(&m.psi(&y.mul(&x.inverse())?)?);
    Ok(a.min(b))
}

/// A certified upper bound on the word metric d(x, y). Refinement 0 is the
/// one-step coordinate bound; refinement r also tries chains through up to r
/// intermediate points along the straight segment between ψ(x) and ψ(y) and
/// keeps the best total, so the bound never increases with r.
pub fn metric_upper(
    m: &Nilmanifold,
    x: &GroupElement<Rational>,
    y: &GroupElement<Rational>,
    refinement: usize,
) -> Result<f64, NilError> {
    let mut best = base_bound(m, x, y)?;
    if refinement == 0 {
        return Ok(best);
    }
    let px = m.psi(x)?;
    let py = m.psi(y)?;
    for q in 1..=refinement {
        let segments = q + 1;
        let mut points = Vec::with_capacity(segments + 1);
        for i in 0..=segments {
            let t = rat(i as i64, segments as i64);
            let u: Vec<Rational> = px
                .iter()
                .zip(&py)
                .map(|(a, b)| a.clone() + (b.clone() - a.clone()) * t.clone())
                .collect();
            points.push(m.from_psi(&u)?);
        }
        let mut total = 0.0;
        for w in points.windows(2) {
            total += base_bound(m, &w[0], &w[1])?;
        }
        best = best.min(total);
    }
    Ok(best)
}

/// Estimated Lipschitz constant of F on G/Γ: the largest difference quotient
/// seen over `samples` random nearby pairs. A sampled lower estimate, never a
/// certified bound.
pub fn lipschitz_estimate(
    m: &Nilmanifold,
    f: &Observable,
    samples: usize,
    seed: u64,
) -> Result<f64, NilError> {
    let d = m.dim();
    let mut rng = SplitMix64::new(seed);
    let mut best = 0.0f64;
    for _ in 0..samples {
        let u: Vec<Rational> = (0..d)
            .map(|_| rat(rng.next_i64(0, 1023), 1024))
            .collect();
        let mut v = u.clone();
        let p = rng.next_below(d as u64) as usize;
        v[p] += rat(rng.next_i64(-16, 16), 4096);
        let x = m.from_psi(&u)?;
        let y = m.from_psi(&v)?;
        let dist = metric_upper(m, &x, &y, 1)?;
        if dist < 1e-12 {
            continue;
        }
        let fx = f.eval(&m.reduce_to_fundamental(&x)?.0);
        let fy = f.eval(&m.reduce_to_fundamental(&y)?.0);
        best = best.max((fx - fy).norm() / dist);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tests_support::{heisenberg_manifold, torus};
    use lie_core::rng::SplitMix64;

    fn random_element(m: &Nilmanifold, rng: &mut SplitMix64) -> GroupElement<Rational> {
        let u: Vec<Rational> = (0..m.dim()).map(|_| rng.next_rational(8, 8)).collect();
        m.from_psi(&u).unwrap()
    }

    #[test]
    fn coincident_points_are_at_distance_zero() {
        let m = heisenberg_manifold();
        let mut rng = SplitMix64::new(7);
        let x = random_element(&m, &mut rng);
        assert_eq!(metric_upper(&m, &x, &x, 3).unwrap(), 0.0);
    }

    #[test]
    fn torus_bound_is_the_coordinate_distance() {
        let m = torus(3);
        let x = m.from_psi(&[rat(1, 4), rat(0, 1), rat(2, 3)]).unwrap();
        let y = m.from_psi(&[rat(3, 4), rat(1, 6), rat(1, 3)]).unwrap();
        let got = metric_upper(&m, &x, &y, 0).unwrap();
        assert!((got - 0.5).abs() < 1e-15);
    }

    #[test]
    fn refinement_never_makes_the_bound_worse() {
        let m = heisenberg_manifold();
        let mut rng = SplitMix64::new(81);
        for _ in 0..20 {
            let x = random_element(&m, &mut rng);
            let y = random_element(&m, &mut rng);
            let mut prev = f64::INFINITY;
            for r in 0..4 {
                let b = metric_upper(&m, &x, &y, r).unwrap();
                assert!(b <= prev + 1e-12);
                prev = b;
            }
        }
    }

    #[test]
    fn bound_is_symmetric_and_right_invariant() {
        let m = heisenberg_manifold();
        let mut rng = SplitMix64::new(99);
        for _ in 0..100 {
            let x = random_element(&m, &mut rng);
            let y = random_element(&m, &mut rng);
            let g = random_element(&m, &mut rng);
            let d0 = metric_upper(&m, &x, &y, 0).unwrap();
            assert_eq!(metric_upper(&m, &y, &x, 0).unwrap(), d0);
            let dg = metric_upper(&m, &x.mul(&g).unwrap(), &y.mul(&g).unwrap(), 0).unwrap();
            assert_eq!(dg, d0);
        }
    }
}
