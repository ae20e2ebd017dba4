use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt::{Debug, Display};
use core::hash::Hash;
use core::ops::{Add, Div, Mul, Neg, Sub};

use crate::error::Result;

/// Which base field a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rationals,
    Prime(u64),
}

impl Display for FieldKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            FieldKind::Rationals => write!(f, "Q"),
            FieldKind::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

/// An exact base field of characteristic 0 or `p > 3`.
///
/// Elements carry enough context to do arithmetic on their own; `Ctx`
/// is what is needed to conjure constants out of nothing (the prime for
/// `F_p`, nothing for `Q`).
pub trait Field:
    Clone
    + PartialEq
    + Eq
    + Hash
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    type Ctx: Clone + PartialEq + Eq + Hash + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn kind(ctx: &Self::Ctx) -> FieldKind;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, n: i64) -> Self;
    fn from_bigint(ctx: &Self::Ctx, n: &num_bigint::BigInt) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == Self::one(&self.ctx())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::one(&self.ctx()) / self.clone())
        }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.ctx());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    fn square(&self) -> Self {
        self.clone() * self.clone()
    }

    /// A square root in the field, when one exists.
    fn sqrt(&self) -> Option<Self>;

    /// A cube root in the field, when one exists.
    fn cbrt(&self) -> Option<Self>;

    fn is_square(&self) -> bool {
        self.sqrt().is_some()
    }

    fn is_cube(&self) -> bool {
        self.cbrt().is_some()
    }

    /// Distinct roots in the field of the polynomial with the given
    /// coefficients (lowest degree first, leading coefficient nonzero).
    fn roots_of(coeffs: &[Self], ctx: &Self::Ctx) -> Result<Vec<Self>>;

    /// Rescale a nonzero vector projectively into canonical form: over
    /// `Q` primitive integers with the first nonzero entry positive,
    /// over `F_p` first nonzero entry equal to 1.
    fn canonical_scale(v: &[Self]) -> Vec<Self>;

    /// Canonical representative `r` of the square class with
    /// `self = r * m^2`; returns `(r, m)`.
    fn square_class(&self) -> Result<(Self, Self)>;

    /// Canonical representative `r` of the cube class with
    /// `self = r * m^3`; returns `(r, m)`.
    fn cube_class(&self) -> Result<(Self, Self)>;

    /// Total order used to pick canonical representatives.
    fn canonical_cmp(&self, other: &Self) -> Ordering;

    /// All field elements, for finite fields.
    fn elements(ctx: &Self::Ctx) -> Option<Vec<Self>>;
}
