use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::linalg::null_space;
use crate::moduli::{
    aut_class_of, move_fixed_points_off_infinity, multiplier_cubic, multiplier_pattern,
    sigma_invariants, symmetry_locus_value, AutClass, ModuliPoint, MultiplierPattern,
};
use crate::poly::Poly;
use crate::ratmap::{FixedPoint, Moebius, Multiplier, ProjPoint, RationalMap};

use super::{verified, wrong_class};

/// `(2z^2 + (2 - s1) z + (2 - s1)) / (-z^2 + (2 + s1) z + 2 - s1 - s2)`.
///
/// For distinct multipliers its fixed point `z = lambda` has multiplier
/// `lambda`; with a double multiplier 1 it has a double fixed point at 1.
pub fn normal_form_trivial<F: Field>(sigma: &ModuliPoint<F>) -> Result<RationalMap<F>> {
    if symmetry_locus_value(sigma).is_zero() {
        return Err(Error::OnSymmetryLocus);
    }
    let ctx = sigma.sigma1.ctx();
    let c = |n: i64| F::from_i64(&ctx, n);
    let (s1, s2) = (sigma.sigma1.clone(), sigma.sigma2.clone());
    let num = Poly::new(vec![c(2) - s1.clone(), c(2) - s1.clone(), c(2)], &ctx);
    let den = Poly::new(vec![c(2) - s1.clone() - s2, c(2) + s1, c(-1)], &ctx);
    let phi = RationalMap::new(num, den).map_err(|_| Error::OnSymmetryLocus)?;
    if sigma_invariants(&phi)? != *sigma {
        return Err(Error::Internal("normal form has the wrong multipliers"));
    }
    Ok(phi)
}

/// The unique `h` with `phi.conjugate(h) == psi`, for maps with trivial
/// automorphism group and equal invariants.
pub fn trivial_case_witness<F: Field>(
    phi: &RationalMap<F>,
    psi: &RationalMap<F>,
) -> Result<Moebius<F>> {
    if phi.ctx() != psi.ctx() {
        return Err(Error::FieldMismatch);
    }
    let sigma = sigma_invariants(phi)?;
    if sigma != sigma_invariants(psi)? {
        return Err(Error::SigmaMismatch);
    }
    let class = aut_class_of(&sigma);
    if class != AutClass::Trivial {
        return Err(wrong_class(AutClass::Trivial, class));
    }
    let h = match multiplier_pattern(&sigma) {
        MultiplierPattern::Distinct => distinct_multipliers_witness(phi, psi, &sigma)?,
        _ => parabolic_witness(phi, psi)?,
    };
    verified(phi, h, psi)
}

/// Reduce `p` modulo the cubic `m` and return the three coefficients.
fn residue<F: Field>(p: &Poly<F>, m: &Poly<F>) -> Vec<F> {
    let r = p.div_rem(m).1;
    (0..3).map(|i| r.coeff(i)).collect()
}

/// For a map whose fixed points are finite and whose multipliers are
/// distinct, the polynomial `R` of degree <= 2 with `R(lambda) = x` for
/// each fixed point `x` with multiplier `lambda`.
fn fixed_point_from_multiplier<F: Field>(phi: &RationalMap<F>) -> Result<Poly<F>> {
    let ctx = phi.ctx().clone();
    let fix = phi.fixed_point_poly();
    let (top, bottom) = phi.derivative_parts();
    let u = (&top * &bottom.inverse_mod(&fix).ok_or(Error::NotInvertible)?)
        .div_rem(&fix)
        .1;
    // columns 1, u, u^2, z in the basis 1, z, z^2 of K[z]/(fix)
    let cols = [
        Poly::constant(F::one(&ctx)),
        u.clone(),
        (&u * &u).div_rem(&fix).1,
        Poly::z(&ctx),
    ];
    let cols: Vec<Vec<F>> = cols.iter().map(|c| residue(c, &fix)).collect();
    let rows: Vec<Vec<F>> = (0..3)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let kernel = null_space(rows, 4, &ctx);
    let [v] = kernel.as_slice() else {
        return Err(Error::Internal(
            "multiplier does not generate the fixed-point algebra",
        ));
    };
    let s = v[3].clone();
    if s.is_zero() {
        return Err(Error::Internal(
            "multiplier does not generate the fixed-point algebra",
        ));
    }
    let scale = -(F::one(&ctx) / s);
    Ok(Poly::new(vec![v[0].clone(), v[1].clone(), v[2].clone()], &ctx).scale(&scale))
}

/// Distinct multipliers: the fixed point of `psi` with multiplier `lambda`
/// must go to the fixed point of `phi` with the same multiplier. Writing
/// both as polynomials in `lambda` modulo the multiplier cubic makes the
/// conditions on `h` linear.
fn distinct_multipliers_witness<F: Field>(
    phi: &RationalMap<F>,
    psi: &RationalMap<F>,
    sigma: &ModuliPoint<F>,
) -> Result<Moebius<F>> {
    let ctx = phi.ctx().clone();
    let (phi0, g_phi) = move_fixed_points_off_infinity(phi);
    let (psi0, g_psi) = move_fixed_points_off_infinity(psi);
    let r_phi = fixed_point_from_multiplier(&phi0)?;
    let r_psi = fixed_point_from_multiplier(&psi0)?;
    let f = multiplier_cubic(sigma);
    // a R_psi + b - R_phi (c R_psi + e) = 0 mod f
    let one = Poly::constant(F::one(&ctx));
    let cols = [r_psi.clone(), one.clone(), -&(&r_phi * &r_psi), -&r_phi];
    let cols: Vec<Vec<F>> = cols.iter().map(|c| residue(c, &f)).collect();
    let rows: Vec<Vec<F>> = (0..3)
        .map(|i| cols.iter().map(|c| c[i].clone()).collect())
        .collect();
    let kernel = null_space(rows, 4, &ctx);
    let [v] = kernel.as_slice() else {
        return Err(Error::Internal("fixed-point correspondence is not unique"));
    };
    let h0 = Moebius::new(v[0].clone(), v[1].clone(), v[2].clone(), v[3].clone())?;
    // phi0 = phi^g_phi, psi0 = psi^g_psi and phi0^h0 = psi0
    Ok(g_phi.compose(&h0).compose(&g_psi.inverse()))
}

/// Points `(x, y, x')`: the double fixed point, the simple fixed point and
/// the other preimage of `x`. All three are rational and distinct.
fn parabolic_frame<F: Field>(phi: &RationalMap<F>) -> Result<[ProjPoint<F>; 3]> {
    let data = phi.fixed_point_data()?;
    let mut double = None;
    let mut simple = None;
    for e in &data.entries {
        match (&e.point, e.multiplicity, &e.multiplier) {
            (FixedPoint::Point(p), 2, Multiplier::Base(m)) if m.is_one() => {
                double = Some(p.clone())
            }
            (FixedPoint::Point(p), 1, _) => simple = Some(p.clone()),
            _ => return Err(Error::Internal("unexpected fixed-point configuration")),
        }
    }
    let (Some(x), Some(y)) = (double, simple) else {
        return Err(Error::Internal("unexpected fixed-point configuration"));
    };
    let x2 = other_preimage(phi, &x)?;
    Ok([x, y, x2])
}

/// The preimage of `x` other than `x` itself, for a fixed point `x` that
/// is not critical.
fn other_preimage<F: Field>(phi: &RationalMap<F>, x: &ProjPoint<F>) -> Result<ProjPoint<F>> {
    let g = match x {
        ProjPoint::Finite(x) => phi.num() - &phi.den().scale(x),
        ProjPoint::Infinity => phi.den().clone(),
    };
    let mut roots: Vec<ProjPoint<F>> = Vec::new();
    for (r, m) in g.rational_roots()? {
        roots.extend(core::iter::repeat_n(ProjPoint::Finite(r), m));
    }
    if g.degree() == Some(1) {
        roots.push(ProjPoint::Infinity);
    }
    let pos = roots
        .iter()
        .position(|r| r == x)
        .ok_or(Error::Internal("fixed point is not its own preimage"))?;
    roots.remove(pos);
    match roots.as_slice() {
        [other] if other != x => Ok(other.clone()),
        _ => Err(Error::Internal("fixed point with multiplier 1 is critical")),
    }
}

fn parabolic_witness<F: Field>(phi: &RationalMap<F>, psi: &RationalMap<F>) -> Result<Moebius<F>> {
    let [x, y, x2] = parabolic_frame(phi)?;
    let a = Moebius::from_three_points(&x, &y, &x2)?;
    let [x, y, x2] = parabolic_frame(psi)?;
    let b = Moebius::from_three_points(&x, &y, &x2)?;
    // b sends (0, 1, inf) to psi's frame and a to phi's
    Ok(a.compose(&b.inverse()))
}
