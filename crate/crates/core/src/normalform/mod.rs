//! Normal forms for the three automorphism classes, conjugacy decisions
//! over the base field, and explicit conjugating transformations.
//!
//! Every witness `h` returned here satisfies `phi.conjugate(h) == target`
//! exactly; the check is done before the witness leaves this module.

mod c2;
mod s3;
mod trivial;

use core::fmt;

pub use c2::{c2_conjugate, c2_map, normalize_c2, C2Normalization};
pub use s3::{
    normalize_s3, pgl2_elements, s3_dk_conjugate, s3_t_conjugate, theta_dk, theta_t,
    S3Normalization,
};
pub use trivial::{normal_form_trivial, trivial_case_witness};

use crate::error::{Error, Result};
use crate::exactnum::Field;
use crate::moduli::{aut_class_of, sigma_invariants, AutClass, ModuliPoint};
use crate::ratmap::{Moebius, RationalMap};

/// Representative data for one conjugacy class over `K`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum NormalForm<F: Field> {
    /// The unique map of the trivial-automorphism normal form.
    TrivialAut { sigma1: F, sigma2: F },
    /// `k z + b / z`, with `b` reduced to its square-class representative.
    C2 { k: F, b: F },
    /// `(k z^2 - 2 d z + d k) / (z^2 - 2 k z + d)`; not canonical in `k`.
    S3General { d: F, k: F },
    /// `t / z^2`, with `t` reduced to a class representative.
    S3RationalCycle { t: F },
}

impl<F: Field> NormalForm<F> {
    pub fn case_name(&self) -> &'static str {
        match self {
            NormalForm::TrivialAut { .. } => "TrivialAut",
            NormalForm::C2 { .. } => "C2",
            NormalForm::S3General { .. } => "S3General",
            NormalForm::S3RationalCycle { .. } => "S3RationalCycle",
        }
    }

    pub fn aut_class(&self) -> AutClass {
        match self {
            NormalForm::TrivialAut { .. } => AutClass::Trivial,
            NormalForm::C2 { .. } => AutClass::C2,
            NormalForm::S3General { .. } | NormalForm::S3RationalCycle { .. } => AutClass::S3,
        }
    }

    /// Named parameters in a fixed order.
    pub fn params(&self) -> [(&'static str, &F); 2] {
        match self {
            NormalForm::TrivialAut { sigma1, sigma2 } => [("sigma1", sigma1), ("sigma2", sigma2)],
            NormalForm::C2 { k, b } => [("k", k), ("b", b)],
            NormalForm::S3General { d, k } => [("d", d), ("k", k)],
            NormalForm::S3RationalCycle { t } => [("t", t), ("t", t)],
        }
    }

    /// The map this normal form names.
    pub fn to_map(&self) -> Result<RationalMap<F>> {
        match self {
            NormalForm::TrivialAut { sigma1, sigma2 } => {
                normal_form_trivial(&ModuliPoint::new(sigma1.clone(), sigma2.clone()))
            }
            NormalForm::C2 { k, b } => c2_map(k, b),
            NormalForm::S3General { d, k } => theta_dk(d, k),
            NormalForm::S3RationalCycle { t } => theta_t(t),
        }
    }
}

impl<F: Field> fmt::Display for NormalForm<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalForm::TrivialAut { sigma1, sigma2 } => {
                write!(f, "TrivialAut(sigma1 = {sigma1}, sigma2 = {sigma2})")
            }
            NormalForm::C2 { k, b } => write!(f, "C2(k = {k}, b = {b})"),
            NormalForm::S3General { d, k } => write!(f, "S3General(d = {d}, k = {k})"),
            NormalForm::S3RationalCycle { t } => write!(f, "S3RationalCycle(t = {t})"),
        }
    }
}

/// Why a conjugacy decision came out the way it did.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate<F: Field> {
    /// The multiplier invariants differ, so not even conjugate over the closure.
    SigmaDiffers,
    /// Trivial automorphism group and equal invariants.
    SigmaAgrees,
    /// `k != k'` for two C2 forms.
    KDiffers,
    /// `b' = b m^2`.
    SquareRatio { m: F },
    /// `b / b'` is not a square.
    NotSquareRatio,
    /// One two-cycle is rational and the other is not.
    CycleFieldsDiffer,
    /// `t / t' = c^3`, or `t t' = c^3` when `inverted`.
    CubeRatio { c: F, inverted: bool },
    /// Neither `t / t'` nor `t t'` is a cube.
    NotCubeRatio,
    /// The radicands of two `theta_{d,k}` forms lie in different square classes.
    RadicandsDiffer,
    /// `k' = b d / k`.
    Reciprocal { b: F },
    /// `k'` is the image of `k` under the `(gamma, b)` transformation.
    GammaB { gamma: F, b: F },
    /// Neither cross ratio is a cube of norm 1 in `K(sqrt d)`.
    NotNormOneCube,
    /// Decided by running over all of `PGL_2(F_p)`.
    ExhaustiveSearch { group_order: u64 },
}

/// Outcome of a conjugacy test between two maps or two normal forms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjDecision<F: Field> {
    /// Conjugate over the base field `K`.
    pub conjugate: bool,
    /// Conjugate over the algebraic closure.
    pub closure_conjugate: bool,
    /// `h` with `first.conjugate(h) == second`, when conjugate and requested.
    pub witness: Option<Moebius<F>>,
    pub certificate: Certificate<F>,
}

impl<F: Field> ConjDecision<F> {
    fn no(closure_conjugate: bool, certificate: Certificate<F>) -> Self {
        ConjDecision {
            conjugate: false,
            closure_conjugate,
            witness: None,
            certificate,
        }
    }

    fn yes(witness: Option<Moebius<F>>, certificate: Certificate<F>) -> Self {
        ConjDecision {
            conjugate: true,
            closure_conjugate: true,
            witness,
            certificate,
        }
    }
}

/// Full classification of one map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification<F: Field> {
    pub sigma: ModuliPoint<F>,
    pub aut_class: AutClass,
    pub normal_form: NormalForm<F>,
    /// `h` with `phi.conjugate(h) == normal_form.to_map()`.
    pub witness: Option<Moebius<F>>,
}

/// Return `h` after checking `phi.conjugate(h) == target`.
pub(crate) fn verified<F: Field>(
    phi: &RationalMap<F>,
    h: Moebius<F>,
    target: &RationalMap<F>,
) -> Result<Moebius<F>> {
    if phi.conjugate(&h) == *target {
        Ok(h)
    } else {
        Err(Error::Internal(
            "conjugating transformation failed verification",
        ))
    }
}

pub(crate) fn wrong_class(expected: AutClass, found: AutClass) -> Error {
    Error::WrongAutClass {
        expected: expected.name(),
        found: found.name(),
    }
}

/// Compute the invariants, automorphism class and normal form of `phi`.
/// Witnesses are always produced for the C2 and S3 cases; in the trivial
/// case only when `want_witness` is set.
pub fn classify<F: Field>(phi: &RationalMap<F>, want_witness: bool) -> Result<Classification<F>> {
    let sigma = sigma_invariants(phi)?;
    let aut_class = aut_class_of(&sigma);
    let (normal_form, witness) = match aut_class {
        AutClass::Trivial => {
            let nf = NormalForm::TrivialAut {
                sigma1: sigma.sigma1.clone(),
                sigma2: sigma.sigma2.clone(),
            };
            let witness = if want_witness {
                Some(trivial_case_witness(phi, &nf.to_map()?)?)
            } else {
                None
            };
            (nf, witness)
        }
        AutClass::C2 => {
            let n = normalize_c2(phi)?;
            (NormalForm::C2 { k: n.k, b: n.b }, Some(n.witness))
        }
        AutClass::S3 => {
            let n = normalize_s3(phi)?;
            (n.form, Some(n.witness))
        }
    };
    Ok(Classification {
        sigma,
        aut_class,
        normal_form,
        witness,
    })
}

/// Decide whether `phi` and `psi` are conjugate over the base field. The
/// witness, when returned, satisfies `phi.conjugate(w) == psi`; in the
/// trivial case it is only computed when `want_witness` is set.
pub fn are_conjugate<F: Field>(
    phi: &RationalMap<F>,
    psi: &RationalMap<F>,
    want_witness: bool,
) -> Result<ConjDecision<F>> {
    if phi.ctx() != psi.ctx() {
        return Err(Error::FieldMismatch);
    }
    let s = sigma_invariants(phi)?;
    if s != sigma_invariants(psi)? {
        return Ok(ConjDecision::no(false, Certificate::SigmaDiffers));
    }
    match aut_class_of(&s) {
        AutClass::Trivial => {
            let witness = if want_witness {
                Some(trivial_case_witness(phi, psi)?)
            } else {
                None
            };
            Ok(ConjDecision::yes(witness, Certificate::SigmaAgrees))
        }
        AutClass::C2 => {
            let a = normalize_c2(phi)?;
            let b = normalize_c2(psi)?;
            let d = c2_conjugate((&a.k, &a.b), (&b.k, &b.b))?;
            transport(phi, psi, d, &a.witness, &b.witness)
        }
        AutClass::S3 => {
            let a = normalize_s3(phi)?;
            let b = normalize_s3(psi)?;
            let d = match (&a.form, &b.form) {
                (NormalForm::S3RationalCycle { t: t1 }, NormalForm::S3RationalCycle { t: t2 }) => {
                    s3_t_conjugate(t1, t2)?
                }
                (
                    NormalForm::S3General { d: d1, k: k1 },
                    NormalForm::S3General { d: d2, k: k2 },
                ) => s3_dk_conjugate((d1, k1), (d2, k2))?,
                _ => ConjDecision::no(true, Certificate::CycleFieldsDiffer),
            };
            transport(phi, psi, d, &a.witness, &b.witness)
        }
    }
}

/// Turn a decision between `phi^wa` and `psi^wb` into one between `phi`
/// and `psi`.
fn transport<F: Field>(
    phi: &RationalMap<F>,
    psi: &RationalMap<F>,
    mut d: ConjDecision<F>,
    wa: &Moebius<F>,
    wb: &Moebius<F>,
) -> Result<ConjDecision<F>> {
    if let Some(m) = d.witness.take() {
        let h = wa.compose(&m).compose(&wb.inverse());
        d.witness = Some(verified(phi, h, psi)?);
    } else if d.conjugate {
        return Err(Error::Internal("conjugate normal forms without a witness"));
    }
    Ok(d)
}
