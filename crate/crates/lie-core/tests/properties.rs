//! Randomized structural properties over a family of ladder algebras
//! [e0, e_i] = c_i e_{i+1} with arbitrary rational multipliers.

use lie_core::rational::rat;
use lie_core::{bch_product, LieAlgebra, Rational};
use num_traits::Zero;
use proptest::prelude::*;
use std::sync::Arc;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn ladder(multipliers: Vec<Rational>) -> Arc<LieAlgebra> {
    let dim = multipliers.len() + 2;
    let entries: Vec<(usize, usize, usize, Rational)> = multipliers
        .into_iter()
        .enumerate()
        .map(|(i, c)| (0usize, i + 1, i + 2, c))
        .collect();
    Arc::new(LieAlgebra::new(dim, dim - 1, entries).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ladder_algebras_validate(ms in prop::collection::vec(small_rational(), 1..4)) {
        let a = ladder(ms);
        prop_assert!(a.validate().pass);
    }

    #[test]
    fn bracket_is_bilinear_and_antisymmetric(
        ms in prop::collection::vec(small_rational(), 1..4),
        x in prop::collection::vec(small_rational(), 5),
        y in prop::collection::vec(small_rational(), 5),
        z in prop::collection::vec(small_rational(), 5),
        s in small_rational(),
    ) {
        let a = ladder(ms);
        let d = a.dim();
        let x = &x[..d.min(5)].iter().cloned().chain(std::iter::repeat(Rational::zero())).take(d).collect::<Vec<_>>();
        let y = &y[..d.min(5)].iter().cloned().chain(std::iter::repeat(Rational::zero())).take(d).collect::<Vec<_>>();
        let z = &z[..d.min(5)].iter().cloned().chain(std::iter::repeat(Rational::zero())).take(d).collect::<Vec<_>>();

        let xy = a.bracket(x, y).unwrap();
        let yx = a.bracket(y, x).unwrap();
        prop_assert!(xy.iter().zip(&yx).all(|(p, q)| *p == -q.clone()));

        // [x + s z, y] = [x,y] + s [z,y]
        let xsz: Vec<Rational> = x.iter().zip(z).map(|(p, q)| p + &(&s * q)).collect();
        let lhs = a.bracket(&xsz, y).unwrap();
        let zy = a.bracket(z, y).unwrap();
        let rhs: Vec<Rational> = xy.iter().zip(&zy).map(|(p, q)| p + &(&s * q)).collect();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bch_associates_on_ladders(
        ms in prop::collection::vec(small_rational(), 1..3),
        x in prop::collection::vec(small_rational(), 4),
        y in prop::collection::vec(small_rational(), 4),
        z in prop::collection::vec(small_rational(), 4),
    ) {
        let a = ladder(ms);
        let d = a.dim();
        let pad = |v: &[Rational]| v.iter().cloned().chain(std::iter::repeat(Rational::zero())).take(d).collect::<Vec<_>>();
        let (x, y, z) = (pad(&x), pad(&y), pad(&z));
        let left = bch_product(&a, &bch_product(&a, &x, &y).unwrap(), &z).unwrap();
        let right = bch_product(&a, &x, &bch_product(&a, &y, &z).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}
