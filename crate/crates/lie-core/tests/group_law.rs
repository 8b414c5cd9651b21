//! Exactness of the group law: BCH against an independent symbolic expansion,
//! associativity, inverses, rational powers, and both Mal'cev coordinate
//! systems.

use lie_core::element::{first_kind_in_order, natural_order, second_kind_in_order};
use lie_core::rational::rat;
use lie_core::rng::SplitMix64;
use lie_core::standard::{abelian, free_two_gen_step_three, heisenberg};
use lie_core::{bch_product, GroupElement, LieAlgebra, Rational};
use num_traits::Zero;
use std::sync::Arc;

fn rational_coords(rng: &mut SplitMix64, dim: usize) -> Vec<Rational> {
    (0..dim).map(|_| rng.next_rational(6, 4)).collect()
}

/// Filiform algebra of the requested step: [e0, e_i] = e_{i+1}.
fn filiform(step: usize) -> Arc<LieAlgebra> {
    let dim = step + 1;
    let mut entries = Vec::new();
    for i in 1..dim - 1 {
        entries.push((0, i, i + 1, rat(1, 1)));
    }
    Arc::new(LieAlgebra::new(dim, step, entries).unwrap())
}

fn test_algebras() -> Vec<Arc<LieAlgebra>> {
    vec![
        abelian(4),
        heisenberg(),
        free_two_gen_step_three(),
        filiform(5),
        filiform(6),
    ]
}

#[test]
fn bch_agrees_with_symbolic_word_expansion() {
    // The word list comes from a free associative log(exp X exp Y) expansion,
    // bracketed by the right-normed map; it shares no code with the Dynkin
    // table used in production.
    let mut rng = SplitMix64::new(0x1234);
    for algebra in test_algebras() {
        let words = oracles::bch_words::bch_bracket_words(algebra.nilpotency_step().unwrap());
        for _ in 0..40 {
            let x = rational_coords(&mut rng, algebra.dim());
            let y = rational_coords(&mut rng, algebra.dim());
            let fast = bch_product(&algebra, &x, &y).unwrap();
            let slow = oracles::bch_words::eval(&algebra, &words, &x, &y);
            assert_eq!(fast, slow, "disagreement on dim-{} algebra", algebra.dim());
        }
    }
}

#[test]
fn heisenberg_product_and_commutator() {
    let h = Arc::new(heisenberg());
    let x = GroupElement::<Rational>::generator(Arc::clone(&h), 0).unwrap();
    let y = GroupElement::<Rational>::generator(Arc::clone(&h), 1).unwrap();
    let xy = x.mul(&y).unwrap();
    assert_eq!(xy.coords(), &[rat(1, 1), rat(1, 1), rat(1, 2)]);

    let comm = x.commutator(&y).unwrap();
    assert_eq!(comm.coords(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
}

#[test]
fn associativity_holds_exactly() {
    let mut rng = SplitMix64::new(0xA5A5);
    for algebra in test_algebras() {
        // keep the deep algebras cheaper: fewer trials there
        let trials = if algebra.dim() > 5 { 25 } else { 200 };
        for _ in 0..trials {
            let g = GroupElement::<Rational>::new(Arc::clone(&algebra), rational_coords(&mut rng, algebra.dim())).unwrap();
            let h = GroupElement::<Rational>::new(Arc::clone(&algebra), rational_coords(&mut rng, algebra.dim())).unwrap();
            let k = GroupElement::<Rational>::new(Arc::clone(&algebra), rational_coords(&mut rng, algebra.dim())).unwrap();
            let left = g.mul(&h).unwrap().mul(&k).unwrap();
            let right = g.mul(&h.mul(&k).unwrap()).unwrap();
            assert_eq!(left, right);
        }
    }
}

#[test]
fn inverse_and_rational_powers() {
    let mut rng = SplitMix64::new(7);
    for algebra in test_algebras() {
        for _ in 0..50 {
            let g = GroupElement::<Rational>::new(Arc::clone(&algebra), rational_coords(&mut rng, algebra.dim())).unwrap();
            assert!(g.mul(&g.inverse()).unwrap().is_identity());
            assert!(g.mul(&g.power(&rat(-1, 1))).unwrap().is_identity());

            let a = rng.next_rational(5, 3);
            let b = rng.next_rational(5, 3);
            let lhs = g.power(&a).mul(&g.power(&b)).unwrap();
            assert_eq!(lhs, g.power(&(&a + &b)));
        }
    }
}

#[test]
fn half_power_squares_back() {
    let h = Arc::new(heisenberg());
    let g = GroupElement::<Rational>::new(
        Arc::clone(&h),
        vec![rat(1, 1), rat(1, 1), rat(1, 1)],
    )
    .unwrap();
    let half = g.power(&rat(1, 2));
    assert_eq!(half.mul(&half).unwrap(), g);
}

#[test]
fn second_kind_round_trip() {
    let mut rng = SplitMix64::new(99);
    for algebra in test_algebras() {
        let order = natural_order(algebra.dim());
        let trials = if algebra.dim() > 5 { 40 } else { 200 };
        for _ in 0..trials {
            let t = rational_coords(&mut rng, algebra.dim());
            let u = second_kind_in_order(&algebra, &t, &order).unwrap();
            let back = first_kind_in_order(&algebra, &u, &order).unwrap();
            assert_eq!(back, t);
        }
    }
}

#[test]
fn heisenberg_second_kind_of_ones() {
    let h = Arc::new(heisenberg());
    let g = GroupElement::<Rational>::new(Arc::clone(&h), vec![rat(1, 1), rat(1, 1), rat(1, 1)]).unwrap();
    let u = g.coords_second_kind().unwrap();
    assert_eq!(u, vec![rat(1, 1), rat(1, 1), rat(1, 2)]);
    let back = GroupElement::from_second_kind(Arc::clone(&h), u.clone()).unwrap();
    assert_eq!(back, g);
}

#[test]
fn identity_has_zero_coordinates_in_both_kinds() {
    let algebra = Arc::new(free_two_gen_step_three());
    let e = GroupElement::<Rational>::identity(Arc::clone(&algebra));
    assert!(e.coords().iter().all(|c| c.is_zero()));
    assert!(e.coords_second_kind().unwrap().iter().all(|c| c.is_zero()));
}

#[test]
fn commutator_identity_recovers_central_generator() {
    // exp(-X) exp(-Y) exp(X) exp(Y) = exp([X,Y]) when the step is 2
    let h = Arc::new(heisenberg());
    let x = GroupElement::<Rational>::generator(Arc::clone(&h), 0).unwrap();
    let y = GroupElement::<Rational>::generator(Arc::clone(&h), 1).unwrap();
    let z = x
        .inverse()
        .mul(&y.inverse())
        .unwrap()
        .mul(&x)
        .unwrap()
        .mul(&y)
        .unwrap();
    assert_eq!(z.coords(), &[rat(0, 1), rat(0, 1), rat(1, 1)]);
}
