use filtration::{
    lower_central_filtration, Filtration, Flavor, OrderingIndex, Subalgebra,
};
use lie_core::rng::SplitMix64;
use lie_core::standard::{free_two_gen_step_three, heisenberg};
use lie_core::{rat, GroupElement, LieAlgebra, Rational};
use num_traits::Zero;
use polyseq::{
    eval_graded, graded_taylor, is_polynomial, taylor_coefficient, PolySequence,
};
use std::collections::BTreeMap;
use std::sync::Arc;
use universal_constructions::{build_universal, GeneratorSpec};

fn membership_index(flavor: Flavor, d: usize) -> OrderingIndex {
    match flavor {
        Flavor::DegreeRank => OrderingIndex::DegreeRank(d, 0),
        _ => OrderingIndex::Degree(d),
    }
}

fn random_adapted(
    f: &Arc<Filtration>,
    a: &Arc<LieAlgebra>,
    rng: &mut SplitMix64,
    include_constant: bool,
) -> PolySequence {
    let dim = a.dim();
    let start = usize::from(!include_constant);
    let mut coeffs = Vec::new();
    for d in start..=f.degree() {
        let group = f.group(&membership_index(f.flavor(), d));
        let mut v = vec![Rational::zero(); dim];
        for row in group.basis() {
            let c = rng.next_rational(3, 4);
            for (x, r) in v.iter_mut().zip(row) {
                *x = &*x + &(&c * r);
            }
        }
        coeffs.push((vec![d as u32], GroupElement::new(Arc::clone(a), v).unwrap()));
    }
    PolySequence::new(Arc::clone(f), 1, coeffs).unwrap()
}

/// Heisenberg with the central direction pushed to depth 3, so cubic
/// central sequences become admissible.
fn deep_heisenberg() -> (Arc<Filtration>, Arc<LieAlgebra>) {
    let a = heisenberg();
    let dim = a.dim();
    let full = Subalgebra::full(Arc::clone(&a));
    let mut z = vec![Rational::zero(); dim];
    z[2] = rat(1, 1);
    let central = Subalgebra::new(Arc::clone(&a), &[z]).unwrap();
    let f = Filtration::new(
        Arc::clone(&a),
        Flavor::Degree,
        vec![
            (OrderingIndex::Degree(0), full.clone()),
            (OrderingIndex::Degree(1), full),
            (OrderingIndex::Degree(2), central.clone()),
            (OrderingIndex::Degree(3), central),
        ],
    )
    .unwrap();
    (Arc::new(f), a)
}

#[test]
fn graded_form_round_trips_on_random_sequences() {
    let mut cases: Vec<(Arc<Filtration>, Arc<LieAlgebra>)> = vec![
        {
            let a = heisenberg();
            (Arc::new(lower_central_filtration(&a).unwrap()), a)
        },
        {
            let a = free_two_gen_step_three();
            (Arc::new(lower_central_filtration(&a).unwrap()), a)
        },
    ];
    cases.push(deep_heisenberg());
    for (case, (f, a)) in cases.iter().enumerate() {
        let mut rng = SplitMix64::new(20260 + case as u64);
        for trial in 0..50 {
            let seq = random_adapted(f, a, &mut rng, trial % 3 == 0);
            let coeffs = graded_taylor(&seq).unwrap();
            for n in -20..=20 {
                assert_eq!(
                    eval_graded(f, &coeffs, n).unwrap(),
                    seq.eval(&[n]).unwrap(),
                    "case {case}, trial {trial}, n = {n}"
                );
            }
        }
    }
}

#[test]
fn taylor_coefficients_multiply_as_torus_sums() {
    let heis = build_universal(&GeneratorSpec::plain(2, 2, vec![2, 0]).unwrap()).unwrap();
    let two_step = build_universal(&GeneratorSpec::plain(3, 3, vec![1, 1, 0]).unwrap()).unwrap();
    let cases = [
        (Arc::new(heis.filtration().clone()), heis.algebra().clone()),
        (
            Arc::new(two_step.filtration().clone()),
            two_step.algebra().clone(),
        ),
    ];
    let mut checked = 0;
    for (case, (f, a)) in cases.iter().enumerate() {
        let mut rng = SplitMix64::new(777 + case as u64);
        for _ in 0..50 {
            let g = random_adapted(f, a, &mut rng, false);
            let h = random_adapted(f, a, &mut rng, false);
            let product = g.pointwise_mul(&h).unwrap();
            for level in 1..=f.degree() {
                let tg = taylor_coefficient(&g, level).unwrap();
                let th = taylor_coefficient(&h, level).unwrap();
                let tp = taylor_coefficient(&product, level).unwrap();
                let sum: Vec<Rational> = tg
                    .coords
                    .iter()
                    .zip(&th.coords)
                    .map(|(x, y)| x + y)
                    .collect();
                assert_eq!(tp.coords, sum, "case {case}, level {level}");
            }
            checked += 1;
        }
    }
    assert_eq!(checked, 100);
}

#[test]
fn taylor_coefficients_ignore_shifts() {
    let two_step = build_universal(&GeneratorSpec::plain(3, 3, vec![1, 1, 0]).unwrap()).unwrap();
    let f = Arc::new(two_step.filtration().clone());
    let a = two_step.algebra().clone();
    let mut rng = SplitMix64::new(31);
    for _ in 0..10 {
        let g = random_adapted(&f, &a, &mut rng, false);
        for h in [-9i64, -1, 1, 4, 20] {
            let shifted = g.shift(&[h]).unwrap();
            for level in 1..=f.degree() {
                assert_eq!(
                    taylor_coefficient(&shifted, level).unwrap().coords,
                    taylor_coefficient(&g, level).unwrap().coords,
                    "h = {h}, level = {level}"
                );
            }
        }
    }
}

#[test]
fn pointwise_products_stay_polynomial() {
    let a = free_two_gen_step_three();
    let f = Arc::new(lower_central_filtration(&a).unwrap());
    let mut rng = SplitMix64::new(4096);
    for _ in 0..50 {
        let g = random_adapted(&f, &a, &mut rng, true);
        let h = random_adapted(&f, &a, &mut rng, true);
        let product = g.pointwise_mul(&h).unwrap();
        let mut raw = BTreeMap::new();
        for idx in product.support() {
            raw.insert(idx.clone(), product.coeff(idx));
        }
        let check = is_polynomial(&f, &raw).unwrap();
        assert!(check.ok, "witness: {:?}", check.first_failure);
    }
}
