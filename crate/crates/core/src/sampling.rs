//! Random maps, transformations and quadratic-field elements of bounded
//! height, for property tests and benchmarks. Over `F_p` "height" is
//! ignored and elements are uniform.

use alloc::vec::Vec;

use rand::Rng;

use crate::exactnum::{Field, FieldKind, QuadExt};
use crate::moduli::ModuliPoint;
use crate::normalform::{c2_map, normal_form_trivial, theta_dk, theta_t};
use crate::poly::Poly;
use crate::ratmap::{Moebius, RationalMap};

/// Integer in `[-h, h]`.
pub fn int<R: Rng + ?Sized>(rng: &mut R, h: i64) -> i64 {
    rng.gen_range(-h..=h)
}

/// Over `Q` a fraction `n/d` with `|n| <= h`, `1 <= d <= h`; over `F_p` a
/// uniform element.
pub fn elem<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> F {
    match F::kind(ctx) {
        FieldKind::Rationals => {
            let n = int(rng, h);
            let d = rng.gen_range(1..=h.max(1));
            F::from_i64(ctx, n) / F::from_i64(ctx, d)
        }
        FieldKind::Prime(p) => F::from_i64(ctx, rng.gen_range(0..p as i64)),
    }
}

pub fn nonzero_elem<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> F {
    loop {
        let x = elem::<F, R>(rng, ctx, h);
        if !x.is_zero() {
            return x;
        }
    }
}

/// Element of `K` reduced from an integer in `[-h, h]` (uniform over
/// `F_p` when `h` is large).
fn int_elem<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> F {
    F::from_i64(ctx, int(rng, h))
}

/// Degree-2 map whose six coefficients are integers in `[-h, h]`.
pub fn map<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> RationalMap<F> {
    loop {
        let c: Vec<F> = (0..6).map(|_| int_elem(rng, ctx, h)).collect();
        let num = Poly::new(c[..3].to_vec(), ctx);
        let den = Poly::new(c[3..].to_vec(), ctx);
        if let Ok(m) = RationalMap::new(num, den) {
            return m;
        }
    }
}

/// Invertible transformation with integer entries in `[-h, h]`.
pub fn moebius<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> Moebius<F> {
    loop {
        let [a, b, c, e] = [(); 4].map(|_| int_elem::<F, R>(rng, ctx, h));
        if let Ok(m) = Moebius::new(a, b, c, e) {
            return m;
        }
    }
}

/// A map with nontrivial automorphisms: `k z + b/z`, `theta_{d,k}` or
/// `t/z^2` with small random parameters, conjugated by a random `h`.
pub fn symmetric_map<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &F::Ctx,
    h: i64,
) -> RationalMap<F> {
    loop {
        let base = match rng.gen_range(0..3) {
            0 => c2_map(&nonzero_elem(rng, ctx, 6), &nonzero_elem(rng, ctx, 6)),
            1 => theta_dk(&nonzero_elem(rng, ctx, 6), &elem(rng, ctx, 6)),
            _ => theta_t(&nonzero_elem(rng, ctx, 6)),
        };
        if let Ok(phi) = base {
            return phi.conjugate(&moebius(rng, ctx, h));
        }
    }
}

/// A map with exactly two fixed-point multipliers equal to 1, conjugated
/// by a random `h`.
pub fn parabolic_map<F: Field, R: Rng + ?Sized>(
    rng: &mut R,
    ctx: &F::Ctx,
    h: i64,
) -> RationalMap<F> {
    loop {
        // multipliers (1, 1, l)
        let l = elem::<F, R>(rng, ctx, 6);
        let one = F::one(ctx);
        let two = F::from_i64(ctx, 2);
        let sigma = ModuliPoint::new(l.clone() + two.clone(), two * l.clone() + one.clone());
        if l.is_one() {
            continue;
        }
        if let Ok(phi) = normal_form_trivial(&sigma) {
            return phi.conjugate(&moebius(rng, ctx, h));
        }
    }
}

/// Mostly generic maps, with a share of symmetric and parabolic ones so
/// that every case is exercised.
pub fn mixed_map<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> RationalMap<F> {
    match rng.gen_range(0..10) {
        0..=5 => map(rng, ctx, h),
        6..=8 => symmetric_map(rng, ctx, 4),
        _ => parabolic_map(rng, ctx, 4),
    }
}

/// Squarefree nonzero integer in `[-h, h]` other than 1.
pub fn squarefree_radicand<F: Field, R: Rng + ?Sized>(rng: &mut R, ctx: &F::Ctx, h: i64) -> F {
    loop {
        let d = int(rng, h);
        if d == 0 || d == 1 {
            continue;
        }
        let squarefree = (2..=d.abs()).take_while(|q| q * q <= d.abs()).all(|q| d % (q * q) != 0);
        if squarefree {
            return F::from_i64(ctx, d);
        }
    }
}

/// `(u + v sqrt d) / (u - v sqrt d)` for random integers `u, v` in
/// `[-h, h]`: a norm-1 element of `K(sqrt d)`.
pub fn norm_one<F: Field, R: Rng + ?Sized>(rng: &mut R, d: &F, h: i64) -> QuadExt<F> {
    let ctx = d.ctx();
    loop {
        let u = int_elem::<F, R>(rng, &ctx, h);
        let v = int_elem::<F, R>(rng, &ctx, h);
        let a = QuadExt::new(u.clone(), v.clone(), d.clone());
        if let Some(b) = QuadExt::new(u, -v, d.clone()).inv() {
            return &a * &b;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{PrimeField, Q};
    use crate::moduli::{aut_class, AutClass};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_cover_every_case() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let mut seen = [0usize; 3];
        for _ in 0..200 {
            let phi = mixed_map::<Q, _>(&mut rng, &(), 10);
            let i = match aut_class(&phi).unwrap() {
                AutClass::Trivial => 0,
                AutClass::C2 => 1,
                AutClass::S3 => 2,
            };
            seen[i] += 1;
        }
        assert!(seen.iter().all(|&n| n > 10), "{seen:?}");
    }

    #[test]
    fn norm_one_elements_have_norm_one() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let k = PrimeField::new(13).unwrap();
        for _ in 0..50 {
            let d = squarefree_radicand::<Q, _>(&mut rng, &(), 30);
            assert!(norm_one(&mut rng, &d, 5).norm().is_one());
            let d = k.elem(5);
            assert!(norm_one(&mut rng, &d, 100).norm().is_one());
        }
    }
}
