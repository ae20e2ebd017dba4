mod common;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use quadconj_core::exactnum::{
    cube_root_norm_one, cubefree_part, same_square_class, squarefree_part, Field, QuadExt, Q,
};
use quadconj_core::sampling;

fn nonzero_q() -> impl Strategy<Value = Q> {
    (-5000i64..=5000, 1i64..=5000)
        .prop_filter("zero", |(n, _)| *n != 0)
        .prop_map(|(n, d)| Q::new(n.into(), d.into()))
}

fn is_squarefree(n: &BigInt) -> bool {
    let n = n.abs();
    let mut q = BigInt::from(2);
    while &q * &q <= n {
        if (&n % (&q * &q)).is_zero() {
            return false;
        }
        q += 1;
    }
    true
}

proptest! {
    #[test]
    fn squarefree_part_reassembles(x in nonzero_q()) {
        let s = squarefree_part(&x).unwrap();
        prop_assert!(is_squarefree(&s.core));
        prop_assert_eq!(Q::from_integer(s.core.clone()) * s.cofactor.clone() * s.cofactor, x);
    }

    #[test]
    fn cubefree_part_reassembles(x in nonzero_q()) {
        let c = cubefree_part(&x).unwrap();
        prop_assert_eq!(c.core.clone() * c.cofactor.clone() * c.cofactor.clone() * c.cofactor, x.clone());
        prop_assert_eq!(c.core.is_negative(), x.is_negative());
    }

    #[test]
    fn square_class_is_an_equivalence(a in nonzero_q(), b in nonzero_q(), c in nonzero_q()) {
        let same = |x: &Q, y: &Q| same_square_class(x, y).unwrap();
        prop_assert!(same(&a, &a));
        prop_assert_eq!(same(&a, &b), same(&b, &a));
        if same(&a, &b) && same(&b, &c) {
            prop_assert!(same(&a, &c));
        }
        // a and a m^2 always agree
        prop_assert!(same(&a, &(a.clone() * b.clone() * b.clone())));
    }

    #[test]
    fn norm_one_cube_roots_are_exact(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d: Q = sampling::squarefree_radicand(&mut rng, &(), 30);
        let alpha = sampling::norm_one(&mut rng, &d, 12);
        if let Some(beta) = cube_root_norm_one(&alpha).unwrap() {
            prop_assert_eq!(beta.cube(), alpha);
            prop_assert!(Field::is_one(&beta.norm()));
        }
    }

    #[test]
    fn cubes_of_norm_one_elements_have_roots(seed in any::<u64>()) {
        let mut rng = common::rng(seed);
        let d: Q = sampling::squarefree_radicand(&mut rng, &(), 30);
        let beta = sampling::norm_one(&mut rng, &d, 7);
        let alpha = beta.cube();
        let root = cube_root_norm_one(&alpha).unwrap().expect("a cube has a cube root");
        prop_assert_eq!(root.cube(), alpha);
    }
}

#[test]
fn worked_examples() {
    let q = |n: i64| Q::from_integer(n.into());
    let s = squarefree_part(&q(18)).unwrap();
    assert_eq!((s.core, s.cofactor), (BigInt::from(2), q(3)));
    let s = squarefree_part(&Q::new((-4).into(), 9.into())).unwrap();
    assert_eq!((s.core, s.cofactor), (BigInt::from(-1), Q::new(2.into(), 3.into())));
    let c = cubefree_part(&q(16)).unwrap();
    assert_eq!((c.core, c.cofactor), (q(2), q(2)));
    let c = cubefree_part(&q(-8)).unwrap();
    assert_eq!((c.core, c.cofactor), (q(-1), q(2)));
    let c = cubefree_part(&Q::new(1.into(), 9.into())).unwrap();
    assert_eq!((c.core, c.cofactor), (Q::new(1.into(), 9.into()), <Q as One>::one()));
    let alpha = QuadExt::new(q(26), q(15), q(3));
    assert_eq!(cube_root_norm_one(&alpha).unwrap(), Some(QuadExt::new(q(2), q(1), q(3))));
}
