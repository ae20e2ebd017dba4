use alloc::vec;

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::moduli::{
    aut_class_of, multiplier_pattern, sigma_invariants, AutClass, MultiplierPattern,
};
use crate::poly::Poly;
use crate::ratmap::{Moebius, ProjPoint, RationalMap};

use super::{verified, wrong_class, Certificate, ConjDecision};

/// `k z + b / z`.
pub fn c2_map<F: Field>(k: &F, b: &F) -> Result<RationalMap<F>> {
    let ctx = k.ctx();
    let half = F::from_i64(&ctx, -1) / F::from_i64(&ctx, 2);
    if k.is_zero() || *k == half || b.is_zero() {
        return Err(Error::InvalidParameters(
            "need k not in {0, -1/2} and b != 0",
        ));
    }
    RationalMap::new(
        Poly::new(vec![b.clone(), F::zero(&ctx), k.clone()], &ctx),
        Poly::z(&ctx),
    )
}

/// Result of [`normalize_c2`]: `phi.conjugate(witness) == k z + b / z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct C2Normalization<F: Field> {
    pub k: F,
    pub b: F,
    pub witness: Moebius<F>,
}

/// Conjugate a map with automorphism group `C2` to `k z + b / z` with `b`
/// a square-class representative.
///
/// The fixed point with multiplier `1/k` is unique, hence rational (or
/// infinity). It is moved to infinity, then the remaining finite pole is
/// translated to 0, which leaves `(k z^2 + b0) / z`.
pub fn normalize_c2<F: Field>(phi: &RationalMap<F>) -> Result<C2Normalization<F>> {
    let ctx = phi.ctx().clone();
    let sigma = sigma_invariants(phi)?;
    let class = aut_class_of(&sigma);
    if class != AutClass::C2 {
        return Err(wrong_class(AutClass::C2, class));
    }
    let one = F::one(&ctx);
    let k = match multiplier_pattern(&sigma) {
        MultiplierPattern::Double(r) => (r + one.clone()) / F::from_i64(&ctx, 2),
        MultiplierPattern::Triple(_) => one.clone(),
        MultiplierPattern::Distinct => {
            return Err(Error::Internal("C2 map with distinct multipliers"))
        }
    };
    let target_mult = one / k.clone();

    // step 1: the fixed point with multiplier 1/k goes to infinity
    let special = if phi.evaluate(&ProjPoint::Infinity) == ProjPoint::Infinity
        && phi.multiplier_at_infinity() == Some(target_mult.clone())
    {
        ProjPoint::Infinity
    } else {
        let roots = phi.fixed_point_poly().rational_roots()?;
        let x = roots
            .into_iter()
            .map(|(x, _)| x)
            .find(|x| phi.multiplier_at(x) == Some(target_mult.clone()))
            .ok_or(Error::Internal(
                "no rational fixed point with multiplier 1/k",
            ))?;
        ProjPoint::Finite(x)
    };
    let h1 = match special {
        ProjPoint::Infinity => Moebius::identity(&ctx),
        // z -> x + 1/z sends infinity to x
        ProjPoint::Finite(x) => Moebius::new(x, F::one(&ctx), F::one(&ctx), F::zero(&ctx))?,
    };
    let phi1 = phi.conjugate(&h1);

    // step 2: the finite pole goes to 0
    let den = phi1.den();
    if den.degree() != Some(1) {
        return Err(Error::Internal("expected a single finite pole"));
    }
    let pole = -den.coeff(0) / den.coeff(1);
    let h2 = Moebius::translation(pole);
    let phi2 = phi1.conjugate(&h2);

    // step 3: phi2 = (k z^2 + b0) / z
    let den = phi2.den();
    let lead = den.coeff(1);
    let num = phi2.num().scale(&(F::one(&ctx) / lead.clone()));
    if den.degree() != Some(1)
        || !den.coeff(0).is_zero()
        || !num.coeff(1).is_zero()
        || num.coeff(2) != k
    {
        return Err(Error::Internal("C2 normalization did not reach k z + b/z"));
    }
    let b0 = num.coeff(0);

    // step 4: z -> m z turns b0 = r m^2 into r
    let (b, m) = b0.square_class()?;
    let h3 = Moebius::scaling(m)?;
    let witness = h1.compose(&h2).compose(&h3);
    let witness = verified(phi, witness, &c2_map(&k, &b)?)?;
    Ok(C2Normalization { k, b, witness })
}

/// Compare `k z + b/z` with `k' z + b'/z`. The witness is a scaling
/// `z -> z/m` with `b' = b m^2`.
pub fn c2_conjugate<F: Field>((k1, b1): (&F, &F), (k2, b2): (&F, &F)) -> Result<ConjDecision<F>> {
    if k1.ctx() != k2.ctx() {
        return Err(Error::FieldMismatch);
    }
    let phi = c2_map(k1, b1)?;
    let psi = c2_map(k2, b2)?;
    if k1 != k2 {
        return Ok(ConjDecision::no(false, Certificate::KDiffers));
    }
    let Some(m) = (b2.clone() / b1.clone()).sqrt() else {
        return Ok(ConjDecision::no(true, Certificate::NotSquareRatio));
    };
    let h = Moebius::scaling(F::one(&k1.ctx()) / m.clone())?;
    let h = verified(&phi, h, &psi)?;
    Ok(ConjDecision::yes(Some(h), Certificate::SquareRatio { m }))
}
