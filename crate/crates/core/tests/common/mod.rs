//! Strategies shared by the property tests.
#![allow(dead_code)]

use proptest::prelude::*;
use quadconj_core::exactnum::{PrimeField, Q};
use quadconj_core::ratmap::{Moebius, RationalMap};
use quadconj_core::sampling;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const PRIMES: &[u64] = &[5, 7, 11, 13, 17, 19, 23, 101];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Maps over Q with integer coefficients in `[-h, h]`.
pub fn map_q(h: i64) -> impl Strategy<Value = RationalMap<Q>> {
    prop::array::uniform6(-h..=h).prop_filter_map("not a degree-2 map", |c| {
        RationalMap::from_i64s(&c[..3], &c[3..], &()).ok()
    })
}

pub fn moebius_q(h: i64) -> impl Strategy<Value = Moebius<Q>> {
    prop::array::uniform4(-h..=h).prop_filter_map("singular", |[a, b, c, e]| {
        let q = |n: i64| Q::from_integer(n.into());
        Moebius::new(q(a), q(b), q(c), q(e)).ok()
    })
}

/// Generic, symmetric and parabolic maps over Q in fixed proportions.
pub fn mixed_map_q(h: i64) -> impl Strategy<Value = RationalMap<Q>> {
    any::<u64>().prop_map(move |s| sampling::mixed_map(&mut rng(s), &(), h))
}

pub fn field() -> impl Strategy<Value = PrimeField> {
    prop::sample::select(PRIMES).prop_map(|p| PrimeField::new(p).unwrap())
}

/// A prime field together with a mixed map over it.
pub fn mixed_map_fp() -> impl Strategy<Value = (PrimeField, RationalMap<quadconj_core::exactnum::Fp>)> {
    (field(), any::<u64>()).prop_map(|(k, s)| {
        let phi = sampling::mixed_map(&mut rng(s), &k, 1 << 20);
        (k, phi)
    })
}
