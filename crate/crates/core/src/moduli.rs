//! Coordinates `(sigma1, sigma2)` on the moduli space of quadratic maps,
//! and the automorphism-group trichotomy read off from them.

use alloc::vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::poly::{charpoly_mult, Poly};
use crate::ratmap::{Moebius, ProjPoint, RationalMap};

/// First two symmetric functions of the fixed-point multipliers. The
/// third is always `sigma1 - 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuliPoint<F: Field> {
    pub sigma1: F,
    pub sigma2: F,
}

impl<F: Field> ModuliPoint<F> {
    pub fn new(sigma1: F, sigma2: F) -> Self {
        ModuliPoint { sigma1, sigma2 }
    }

    pub fn sigma3(&self) -> F {
        self.sigma1.clone() - F::from_i64(&self.sigma1.ctx(), 2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AutClass {
    Trivial,
    C2,
    S3,
}

impl AutClass {
    pub fn name(self) -> &'static str {
        match self {
            AutClass::Trivial => "Trivial",
            AutClass::C2 => "C2",
            AutClass::S3 => "S3",
        }
    }
}

impl fmt::Display for AutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `z -> c + 1/z`, which moves the point `c` to infinity under conjugation.
fn shift_to_infinity<F: Field>(c: F) -> Moebius<F> {
    let ctx = c.ctx();
    Moebius::new(c, F::one(&ctx), F::one(&ctx), F::zero(&ctx)).expect("determinant is -1")
}

/// A conjugate of `phi` that does not fix infinity.
pub(crate) fn move_fixed_points_off_infinity<F: Field>(
    phi: &RationalMap<F>,
) -> (RationalMap<F>, Moebius<F>) {
    let ctx = phi.ctx().clone();
    let not_fixed = |p: &ProjPoint<F>| phi.evaluate(p) != *p;
    if not_fixed(&ProjPoint::Infinity) {
        return (phi.clone(), Moebius::identity(&ctx));
    }
    // at most three fixed points, so one of 0, 1, -1, 2 is not fixed
    for c in [0, 1, -1, 2, -2, 3] {
        let c = F::from_i64(&ctx, c);
        if not_fixed(&ProjPoint::Finite(c.clone())) {
            let h = shift_to_infinity(c);
            return (phi.conjugate(&h), h);
        }
    }
    unreachable!("a degree-2 map has at most three fixed points")
}

pub fn sigma_invariants<F: Field>(phi: &RationalMap<F>) -> Result<ModuliPoint<F>> {
    let (psi, _) = move_fixed_points_off_infinity(phi);
    let fix = psi.fixed_point_poly();
    if fix.degree() != Some(3) {
        return Err(Error::Internal("fixed-point polynomial should be cubic"));
    }
    let (top, bottom) = psi.derivative_parts();
    let f = charpoly_mult(&top, &bottom, &fix)?;
    let sigma = ModuliPoint::new(-f.coeff(2), f.coeff(1));
    if -f.coeff(0) != sigma.sigma3() {
        return Err(Error::Internal(
            "multiplier product differs from sigma1 - 2",
        ));
    }
    Ok(sigma)
}

/// `x^3 - sigma1 x^2 + sigma2 x - (sigma1 - 2)`.
pub fn multiplier_cubic<F: Field>(sigma: &ModuliPoint<F>) -> Poly<F> {
    let ctx = sigma.sigma1.ctx();
    Poly::new(
        vec![
            -sigma.sigma3(),
            sigma.sigma2.clone(),
            -sigma.sigma1.clone(),
            F::one(&ctx),
        ],
        &ctx,
    )
}

/// The repeated-root structure of the multiplier cubic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MultiplierPattern<F: Field> {
    Distinct,
    /// A double root (and a different simple root).
    Double(F),
    Triple(F),
}

pub fn multiplier_pattern<F: Field>(sigma: &ModuliPoint<F>) -> MultiplierPattern<F> {
    let f = multiplier_cubic(sigma);
    let g = f.gcd(&f.derivative());
    match g.degree() {
        Some(0) => MultiplierPattern::Distinct,
        Some(1) => MultiplierPattern::Double(-g.coeff(0)),
        // g = (x - r)^2, monic
        Some(2) => {
            let two = F::from_i64(&sigma.sigma1.ctx(), 2);
            MultiplierPattern::Triple(-g.coeff(1) / two)
        }
        _ => unreachable!("gcd of a monic cubic with its derivative has degree <= 2"),
    }
}

pub fn aut_class_of<F: Field>(sigma: &ModuliPoint<F>) -> AutClass {
    match multiplier_pattern(sigma) {
        MultiplierPattern::Distinct => AutClass::Trivial,
        MultiplierPattern::Double(r) if r.is_one() => AutClass::Trivial,
        MultiplierPattern::Double(_) => AutClass::C2,
        MultiplierPattern::Triple(r) if r.is_one() => AutClass::C2,
        MultiplierPattern::Triple(_) => AutClass::S3,
    }
}

pub fn aut_class<F: Field>(phi: &RationalMap<F>) -> Result<AutClass> {
    Ok(aut_class_of(&sigma_invariants(phi)?))
}

/// Value at `sigma` of the curve in moduli space carrying the maps with
/// nontrivial automorphisms:
///
/// `-2 s1^3 - s1^2 s2 + s1^2 + 8 s1 s2 + 4 s2^2 - 12 s1 - 12 s2 + 36`.
///
/// This is the resultant of the numerator and denominator of
/// [`normal_form_trivial`](crate::normalform::normal_form_trivial)'s map,
/// expanded symbolically; the unit tests recheck it against the resultant.
pub fn symmetry_locus_value<F: Field>(sigma: &ModuliPoint<F>) -> F {
    let ctx = sigma.sigma1.ctx();
    let c = |n: i64| F::from_i64(&ctx, n);
    let s1 = sigma.sigma1.clone();
    let s2 = sigma.sigma2.clone();
    let s1sq = s1.square();
    c(-2) * s1sq.clone() * s1.clone() - s1sq.clone() * s2.clone()
        + s1sq
        + c(8) * s1.clone() * s2.clone()
        + c(4) * s2.square()
        - c(12) * s1
        - c(12) * s2
        + c(36)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, PrimeField, Q};
    use crate::poly::resultant;

    fn map(num: &[i64], den: &[i64]) -> RationalMap<Q> {
        RationalMap::from_i64s(num, den, &()).unwrap()
    }

    fn sigma(a: i64, b: i64) -> ModuliPoint<Q> {
        ModuliPoint::new(q(a), q(b))
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(
            sigma_invariants(&map(&[2, 2, 2], &[2, 2, -1])).unwrap(),
            sigma(0, 0)
        );
        assert_eq!(
            sigma_invariants(&map(&[1, 0, 1], &[1])).unwrap(),
            sigma(2, 4)
        );
        assert_eq!(
            sigma_invariants(&map(&[1], &[0, 0, 1])).unwrap(),
            sigma(-6, 12)
        );
        // z^2 fixes infinity, so the conjugation step is exercised
        assert_eq!(
            sigma_invariants(&map(&[0, 0, 1], &[1])).unwrap(),
            sigma(2, 0)
        );
    }

    #[test]
    fn cubic_examples() {
        assert_eq!(
            multiplier_cubic(&sigma(0, 0)),
            Poly::from_i64s(&[2, 0, 0, 1], &())
        );
        assert_eq!(
            multiplier_cubic(&sigma(3, 3)),
            Poly::from_i64s(&[-1, 3, -3, 1], &())
        );
        assert_eq!(
            multiplier_cubic(&sigma(-6, 12)),
            Poly::from_i64s(&[8, 12, 6, 1], &())
        );
    }

    #[test]
    fn aut_class_examples() {
        assert_eq!(
            aut_class(&map(&[2, 2, 2], &[2, 2, -1])).unwrap(),
            AutClass::Trivial
        );
        assert_eq!(aut_class(&map(&[5, 0, 2], &[0, 1])).unwrap(), AutClass::C2);
        assert_eq!(aut_class(&map(&[1], &[0, 0, 1])).unwrap(), AutClass::S3);
        // z + 1/z: triple multiplier 1
        assert_eq!(aut_class(&map(&[1, 0, 1], &[0, 1])).unwrap(), AutClass::C2);
        // two multipliers equal to 1, third 3
        assert_eq!(aut_class_of(&sigma(5, 7)), AutClass::Trivial);
    }

    #[test]
    fn locus_examples() {
        assert_eq!(symmetry_locus_value(&sigma(0, 0)), q(36));
        assert_eq!(symmetry_locus_value(&sigma(-6, 12)), q(0));
        let s = sigma_invariants(&map(&[5, 0, 2], &[0, 1])).unwrap();
        assert_eq!(symmetry_locus_value(&s), q(0));
    }

    #[test]
    fn locus_polynomial_is_the_normal_form_resultant() {
        let k = PrimeField::new(13).unwrap();
        for s1 in -4..5i64 {
            for s2 in -4..5i64 {
                let s = ModuliPoint::new(q(s1), q(s2));
                let p = Poly::new(vec![q(2 - s1), q(2 - s1), q(2)], &());
                let d = Poly::new(vec![q(2 - s1 - s2), q(2 + s1), q(-1)], &());
                assert_eq!(resultant(&p, &d).unwrap(), symmetry_locus_value(&s));
                let s = ModuliPoint::new(k.elem(s1), k.elem(s2));
                let p = Poly::new(vec![k.elem(2 - s1), k.elem(2 - s1), k.elem(2)], &k);
                let d = Poly::new(vec![k.elem(2 - s1 - s2), k.elem(2 + s1), k.elem(-1)], &k);
                assert_eq!(resultant(&p, &d).unwrap(), symmetry_locus_value(&s));
            }
        }
    }
}
