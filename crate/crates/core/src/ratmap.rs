//! Degree-2 rational maps on the projective line, Möbius transformations
//! and the conjugation action `phi^h = h^-1 . phi . h`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::exactnum::{Field, QuadExt};
use crate::poly::{resultant, Poly};

/// A point of `P^1(K)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjPoint<F: Field> {
    Finite(F),
    Infinity,
}

impl<F: Field> fmt::Display for ProjPoint<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjPoint::Finite(x) => write!(f, "{x}"),
            ProjPoint::Infinity => f.write_str("inf"),
        }
    }
}

/// `z -> (a z + b) / (c z + e)`, stored projectively in canonical scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Moebius<F: Field> {
    a: F,
    b: F,
    c: F,
    e: F,
}

impl<F: Field> Moebius<F> {
    pub fn new(a: F, b: F, c: F, e: F) -> Result<Self> {
        if (a.clone() * e.clone() - b.clone() * c.clone()).is_zero() {
            return Err(Error::InvalidParameters("Möbius matrix is singular"));
        }
        let v = F::canonical_scale(&[a, b, c, e]);
        let [a, b, c, e]: [F; 4] = v.try_into().expect("four entries");
        Ok(Moebius { a, b, c, e })
    }

    fn from_matrix(a: F, b: F, c: F, e: F) -> Self {
        Self::new(a, b, c, e).expect("product of invertible matrices is invertible")
    }

    pub fn identity(ctx: &F::Ctx) -> Self {
        Self::from_matrix(F::one(ctx), F::zero(ctx), F::zero(ctx), F::one(ctx))
    }

    /// `z -> z + t`
    pub fn translation(t: F) -> Self {
        let ctx = t.ctx();
        Self::from_matrix(F::one(&ctx), t, F::zero(&ctx), F::one(&ctx))
    }

    /// `z -> s z`
    pub fn scaling(s: F) -> Result<Self> {
        let ctx = s.ctx();
        Self::new(s, F::zero(&ctx), F::zero(&ctx), F::one(&ctx))
    }

    /// `z -> 1 / z`
    pub fn inversion(ctx: &F::Ctx) -> Self {
        Self::from_matrix(F::zero(ctx), F::one(ctx), F::one(ctx), F::zero(ctx))
    }

    pub fn entries(&self) -> [&F; 4] {
        [&self.a, &self.b, &self.c, &self.e]
    }

    pub fn ctx(&self) -> F::Ctx {
        self.a.ctx()
    }

    pub fn det(&self) -> F {
        self.a.clone() * self.e.clone() - self.b.clone() * self.c.clone()
    }

    /// `self . other` (apply `other` first).
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(
            self.a.clone() * other.a.clone() + self.b.clone() * other.c.clone(),
            self.a.clone() * other.b.clone() + self.b.clone() * other.e.clone(),
            self.c.clone() * other.a.clone() + self.e.clone() * other.c.clone(),
            self.c.clone() * other.b.clone() + self.e.clone() * other.e.clone(),
        )
    }

    pub fn inverse(&self) -> Self {
        Self::from_matrix(
            self.e.clone(),
            -self.b.clone(),
            -self.c.clone(),
            self.a.clone(),
        )
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(&self.ctx())
    }

    pub fn apply(&self, p: &ProjPoint<F>) -> ProjPoint<F> {
        let (num, den) = match p {
            ProjPoint::Finite(x) => (
                self.a.clone() * x.clone() + self.b.clone(),
                self.c.clone() * x.clone() + self.e.clone(),
            ),
            ProjPoint::Infinity => (self.a.clone(), self.c.clone()),
        };
        match den.inv() {
            Some(inv) => ProjPoint::Finite(num * inv),
            None => ProjPoint::Infinity,
        }
    }

    /// Unique transformation sending `0, 1, inf` to the three given
    /// distinct points.
    pub fn from_three_points(
        p0: &ProjPoint<F>,
        p1: &ProjPoint<F>,
        pinf: &ProjPoint<F>,
    ) -> Result<Self> {
        // columns are lifts of p0 and pinf, scaled so their sum lifts p1
        let lift = |p: &ProjPoint<F>, ctx: &F::Ctx| match p {
            ProjPoint::Finite(x) => (x.clone(), F::one(ctx)),
            ProjPoint::Infinity => (F::one(ctx), F::zero(ctx)),
        };
        let ctx = match (p0, p1, pinf) {
            (ProjPoint::Finite(x), _, _)
            | (_, ProjPoint::Finite(x), _)
            | (_, _, ProjPoint::Finite(x)) => x.ctx(),
            _ => return Err(Error::InvalidParameters("points must be distinct")),
        };
        let (x0, y0) = lift(p0, &ctx);
        let (x1, y1) = lift(p1, &ctx);
        let (xi, yi) = lift(pinf, &ctx);
        // solve s*(x0,y0) + t*(xi,yi) = (x1,y1)
        let det = x0.clone() * yi.clone() - xi.clone() * y0.clone();
        let inv = det
            .inv()
            .ok_or(Error::InvalidParameters("points must be distinct"))?;
        let s = (x1.clone() * yi.clone() - xi.clone() * y1.clone()) * inv.clone();
        let t = (x0.clone() * y1 - x1 * y0.clone()) * inv;
        Self::new(xi * t.clone(), x0 * s.clone(), yi * t, y0 * s)
    }
}

impl<F: Field> fmt::Display for Moebius<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.e)
    }
}

/// `P(z)/Q(z)` with coprime `P, Q` and `max(deg P, deg Q) = 2`, scaled
/// canonically: over `Q` integer primitive coefficients with a positive
/// leading numerator coefficient, over `F_p` a monic numerator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalMap<F: Field> {
    num: Poly<F>,
    den: Poly<F>,
}

/// The coefficients `(c2, c1, c0)` of a polynomial of degree <= 2 read as a
/// binary quadratic form `c2 X^2 + c1 X Y + c0 Y^2`.
fn form<F: Field>(p: &Poly<F>) -> [F; 3] {
    [p.coeff(2), p.coeff(1), p.coeff(0)]
}

/// `c2 A^2 + c1 A B + c0 B^2`.
fn substitute_form<F: Field>(f: &[F; 3], a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    let aa = a * a;
    let ab = a * b;
    let bb = b * b;
    &(&aa.scale(&f[0]) + &ab.scale(&f[1])) + &bb.scale(&f[2])
}

impl<F: Field> RationalMap<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if num.ctx() != den.ctx() {
            return Err(Error::FieldMismatch);
        }
        let deg = num.degree().unwrap_or(0).max(den.degree().unwrap_or(0));
        if deg != 2 {
            return Err(Error::DegreeNotTwo(deg));
        }
        if resultant(&num, &den)?.is_zero() {
            return Err(Error::Degenerate);
        }
        let ctx = num.ctx().clone();
        let mut v = form(&num).to_vec();
        v.extend(form(&den));
        let v = F::canonical_scale(&v);
        Ok(RationalMap {
            num: Poly::new(vec![v[2].clone(), v[1].clone(), v[0].clone()], &ctx),
            den: Poly::new(vec![v[5].clone(), v[4].clone(), v[3].clone()], &ctx),
        })
    }

    pub fn from_i64s(num: &[i64], den: &[i64], ctx: &F::Ctx) -> Result<Self> {
        Self::new(Poly::from_i64s(num, ctx), Poly::from_i64s(den, ctx))
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn ctx(&self) -> &F::Ctx {
        self.num.ctx()
    }

    /// Numerator and denominator coefficients as one 6-vector,
    /// `(n2, n1, n0, d2, d1, d0)`.
    pub fn coefficient_vector(&self) -> [F; 6] {
        let [a, b, c] = form(&self.num);
        let [d, e, f] = form(&self.den);
        [a, b, c, d, e, f]
    }

    pub fn evaluate(&self, x: &ProjPoint<F>) -> ProjPoint<F> {
        let (n, d) = match x {
            ProjPoint::Finite(x) => (self.num.eval(x), self.den.eval(x)),
            ProjPoint::Infinity => (self.num.coeff(2), self.den.coeff(2)),
        };
        match d.inv() {
            Some(inv) => ProjPoint::Finite(n * inv),
            None => ProjPoint::Infinity,
        }
    }

    /// `h^-1 . self . h`.
    pub fn conjugate(&self, h: &Moebius<F>) -> Self {
        let [a, b, c, e] = h.entries();
        let ctx = self.ctx();
        let ha = Poly::new(vec![b.clone(), a.clone()], ctx);
        let hb = Poly::new(vec![e.clone(), c.clone()], ctx);
        let n = substitute_form(&form(&self.num), &ha, &hb);
        let d = substitute_form(&form(&self.den), &ha, &hb);
        let num = &n.scale(e) - &d.scale(b);
        let den = &d.scale(a) - &n.scale(c);
        Self::new(num, den).expect("conjugation preserves degree")
    }

    /// `self . self`, as an unreduced pair of degree-4 polynomials.
    pub fn second_iterate(&self) -> (Poly<F>, Poly<F>) {
        (
            substitute_form(&form(&self.num), &self.num, &self.den),
            substitute_form(&form(&self.den), &self.num, &self.den),
        )
    }

    /// `P(z) - z Q(z)`, whose roots are the finite fixed points.
    pub fn fixed_point_poly(&self) -> Poly<F> {
        &self.num - &(&Poly::z(self.ctx()) * &self.den)
    }

    /// `(P'Q - PQ', Q^2)`, so that `phi' = first / second`.
    pub fn derivative_parts(&self) -> (Poly<F>, Poly<F>) {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        (top, &self.den * &self.den)
    }

    /// Multiplier at a finite fixed point.
    pub fn multiplier_at(&self, x: &F) -> Option<F> {
        let (top, bottom) = self.derivative_parts();
        Some(top.eval(x) * bottom.eval(x).inv()?)
    }

    pub fn multiplier_at_ext(&self, x: &QuadExt<F>) -> Option<QuadExt<F>> {
        let (top, bottom) = self.derivative_parts();
        Some(&top.eval_ext(x) * &bottom.eval_ext(x).inv()?)
    }

    /// Multiplier at infinity, read off at 0 after conjugating by `1/z`.
    pub fn multiplier_at_infinity(&self) -> Option<F> {
        let flipped = self.conjugate(&Moebius::inversion(self.ctx()));
        flipped.multiplier_at(&F::zero(self.ctx()))
    }

    pub fn fixed_point_data(&self) -> Result<FixedPointData<F>> {
        let ctx = self.ctx().clone();
        let fix = self.fixed_point_poly();
        let deg = fix
            .degree()
            .ok_or(Error::Internal("fixed-point polynomial vanished"))?;
        let mut entries = Vec::new();
        let mut rest = fix.clone();
        for (r, m) in fix.rational_roots()? {
            rest = rest.exact_div(&Poly::linear_factor(r.clone()).pow(m as u32))?;
            let mult = self
                .multiplier_at(&r)
                .ok_or(Error::Internal("finite fixed point is a pole"))?;
            entries.push(FixedPointEntry {
                point: FixedPoint::Point(ProjPoint::Finite(r)),
                multiplicity: m,
                multiplier: Multiplier::Base(mult),
            });
        }
        match rest.degree() {
            Some(0) => {}
            Some(2) => {
                let monic = rest.monic();
                let (beta, gamma) = (monic.coeff(1), monic.coeff(0));
                let two = F::from_i64(&ctx, 2);
                let half = two.inv().expect("characteristic is not 2");
                let disc = beta.square() - F::from_i64(&ctx, 4) * gamma;
                let root = QuadExt::new(-beta * half.clone(), half, disc);
                let mult = self
                    .multiplier_at_ext(&root)
                    .ok_or(Error::Internal("finite fixed point is a pole"))?;
                entries.push(FixedPointEntry {
                    point: FixedPoint::QuadraticPair {
                        minpoly: monic,
                        root,
                    },
                    multiplicity: 1,
                    multiplier: Multiplier::Quadratic(mult),
                });
            }
            Some(3) => entries.push(FixedPointEntry {
                point: FixedPoint::CubicOrbit {
                    minpoly: rest.monic(),
                },
                multiplicity: 1,
                multiplier: Multiplier::NotMaterialized,
            }),
            _ => {
                return Err(Error::Internal(
                    "unexpected irreducible factor of the fixed-point polynomial",
                ))
            }
        }
        if deg < 3 {
            let mult = self
                .multiplier_at_infinity()
                .ok_or(Error::Internal("infinity is a pole of the flipped map"))?;
            entries.push(FixedPointEntry {
                point: FixedPoint::Point(ProjPoint::Infinity),
                multiplicity: 3 - deg,
                multiplier: Multiplier::Base(mult),
            });
        }
        Ok(FixedPointData { entries })
    }

    /// The period-2 dynatomic polynomial, `(P_2 - z Q_2) / (P_1 - z Q_1)`.
    pub fn second_dynatomic(&self) -> Result<Poly<F>> {
        let (p2, q2) = self.second_iterate();
        let top = &p2 - &(&Poly::z(self.ctx()) * &q2);
        top.exact_div(&self.fixed_point_poly())
    }
}

impl<F: Field> fmt::Display for RationalMap<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::parser::format_map(self))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FixedPoint<F: Field> {
    /// A `K`-rational point or infinity.
    Point(ProjPoint<F>),
    /// Two conjugate fixed points; `root` is one of them in `K(sqrt d)`.
    QuadraticPair { minpoly: Poly<F>, root: QuadExt<F> },
    /// Three conjugate fixed points generating a cubic extension.
    CubicOrbit { minpoly: Poly<F> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Multiplier<F: Field> {
    Base(F),
    /// Multiplier at the stored root; its conjugate belongs to the other root.
    Quadratic(QuadExt<F>),
    NotMaterialized,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointEntry<F: Field> {
    pub point: FixedPoint<F>,
    pub multiplicity: usize,
    pub multiplier: Multiplier<F>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPointData<F: Field> {
    pub entries: Vec<FixedPointEntry<F>>,
}

impl<F: Field> FixedPointData<F> {
    pub fn total_multiplicity(&self) -> usize {
        self.entries
            .iter()
            .map(|e| {
                e.multiplicity
                    * match e.point {
                        FixedPoint::Point(_) => 1,
                        FixedPoint::QuadraticPair { .. } => 2,
                        FixedPoint::CubicOrbit { .. } => 3,
                    }
            })
            .sum()
    }

    /// All three multipliers with multiplicity, each in a common
    /// `K(sqrt d)`, or `None` when the fixed points form a cubic orbit.
    pub fn multipliers(&self) -> Option<Vec<QuadExt<F>>> {
        let d = self.entries.iter().find_map(|e| match &e.multiplier {
            Multiplier::Quadratic(m) => Some(m.d.clone()),
            _ => None,
        });
        let mut out = Vec::new();
        for e in &self.entries {
            match &e.multiplier {
                Multiplier::Base(m) => {
                    let d = d.clone().unwrap_or_else(|| F::one(&m.ctx()));
                    for _ in 0..e.multiplicity {
                        out.push(QuadExt::from_base(m.clone(), d.clone()));
                    }
                }
                Multiplier::Quadratic(m) => {
                    out.push(m.clone());
                    out.push(m.conj());
                }
                Multiplier::NotMaterialized => return None,
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{q, q_frac, PrimeField, Q};

    fn map(num: &[i64], den: &[i64]) -> RationalMap<Q> {
        RationalMap::from_i64s(num, den, &()).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let inv_sq = map(&[1], &[0, 0, 1]);
        assert_eq!(
            inv_sq.evaluate(&ProjPoint::Finite(q(0))),
            ProjPoint::Infinity
        );
        assert_eq!(
            inv_sq.evaluate(&ProjPoint::Infinity),
            ProjPoint::Finite(q(0))
        );
        let phi = map(&[5, 0, 2], &[0, 1]);
        assert_eq!(
            phi.evaluate(&ProjPoint::Finite(q(1))),
            ProjPoint::Finite(q(7))
        );
    }

    #[test]
    fn validation() {
        assert_eq!(
            RationalMap::<Q>::from_i64s(&[0, 1], &[1], &()),
            Err(Error::DegreeNotTwo(1))
        );
        assert_eq!(
            RationalMap::<Q>::from_i64s(&[-1, 0, 1], &[-1, 1], &()),
            Err(Error::Degenerate)
        );
        assert_eq!(
            RationalMap::<Q>::from_i64s(&[0, 0, 0, 1], &[1], &()),
            Err(Error::DegreeNotTwo(3))
        );
    }

    #[test]
    fn conjugation_examples() {
        let k = PrimeField::new(7).unwrap();
        let inv_sq = RationalMap::from_i64s(&[1], &[0, 0, 1], &k).unwrap();
        let omega = Moebius::scaling(k.elem(2)).unwrap();
        assert_eq!(inv_sq.conjugate(&omega), inv_sq);

        let phi = map(&[5, 0, 2], &[0, 1]);
        let neg = Moebius::scaling(q(-1)).unwrap();
        assert_eq!(phi.conjugate(&neg), phi);

        let sq = map(&[0, 0, 1], &[1]);
        assert_eq!(sq.conjugate(&Moebius::identity(&())), sq);
    }

    #[test]
    fn fixed_points_of_inverse_square() {
        let data = map(&[1], &[0, 0, 1]).fixed_point_data().unwrap();
        assert_eq!(data.total_multiplicity(), 3);
        let ms = data.multipliers().unwrap();
        assert_eq!(ms.len(), 3);
        for m in ms {
            assert_eq!(m.as_base(), Some(q(-2)));
        }
        assert!(data.entries.iter().any(|e| matches!(
            &e.point,
            FixedPoint::QuadraticPair { minpoly, .. } if *minpoly == Poly::from_i64s(&[1, 1, 1], &())
        )));
    }

    #[test]
    fn fixed_points_with_double_root() {
        // z^2 + 1/4
        let phi = RationalMap::new(
            Poly::new(vec![q_frac(1, 4), q(0), q(1)], &()),
            Poly::from_i64s(&[1], &()),
        )
        .unwrap();
        let data = phi.fixed_point_data().unwrap();
        assert_eq!(data.entries.len(), 2);
        assert_eq!(
            data.entries[0].point,
            FixedPoint::Point(ProjPoint::Finite(q_frac(1, 2)))
        );
        assert_eq!(data.entries[0].multiplicity, 2);
        assert_eq!(data.entries[0].multiplier, Multiplier::Base(q(1)));
        assert_eq!(
            data.entries[1].point,
            FixedPoint::Point(ProjPoint::Infinity)
        );
        assert_eq!(data.entries[1].multiplier, Multiplier::Base(q(0)));
    }

    #[test]
    fn fixed_points_of_c2_form() {
        // 2z + 5/z: pair +-sqrt(-5) with multiplier 3, infinity with 1/2
        let data = map(&[5, 0, 2], &[0, 1]).fixed_point_data().unwrap();
        let pair = data
            .entries
            .iter()
            .find(|e| matches!(e.point, FixedPoint::QuadraticPair { .. }))
            .unwrap();
        let FixedPoint::QuadraticPair { root, .. } = &pair.point else {
            unreachable!()
        };
        assert_eq!(root.norm(), q(5));
        assert_eq!(
            pair.multiplier,
            Multiplier::Quadratic(QuadExt::from_base(q(3), root.d.clone()))
        );
        let inf = data.entries.last().unwrap();
        assert_eq!(inf.point, FixedPoint::Point(ProjPoint::Infinity));
        assert_eq!(inf.multiplier, Multiplier::Base(q_frac(1, 2)));
    }

    #[test]
    fn second_dynatomic_examples() {
        assert_eq!(
            map(&[1], &[0, 0, 1]).second_dynatomic().unwrap(),
            Poly::from_i64s(&[0, -1], &())
        );
        // theta_{2,1}: two-cycle at +-sqrt 2
        let theta = map(&[2, -4, 1], &[2, -2, 1]);
        let dyn2 = theta.second_dynatomic().unwrap();
        assert_eq!(dyn2.monic(), Poly::from_i64s(&[-2, 0, 1], &()));
        let s2 = QuadExt::sqrt_d(q(2));
        let (n, d) = (theta.num().eval_ext(&s2), theta.den().eval_ext(&s2));
        assert_eq!(&n / &d, -&s2);
        assert_eq!(
            map(&[-1, 0, 1], &[1]).second_dynatomic().unwrap(),
            Poly::from_i64s(&[0, 1, 1], &())
        );
    }

    #[test]
    fn three_point_transformation() {
        let pts = [
            ProjPoint::Finite(q(2)),
            ProjPoint::Infinity,
            ProjPoint::Finite(q(-1)),
        ];
        let h = Moebius::from_three_points(&pts[0], &pts[1], &pts[2]).unwrap();
        assert_eq!(h.apply(&ProjPoint::Finite(q(0))), pts[0]);
        assert_eq!(h.apply(&ProjPoint::Finite(q(1))), pts[1]);
        assert_eq!(h.apply(&ProjPoint::Infinity), pts[2]);
    }
}
