use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::field::Field;

/// `x + y*sqrt(d)` in the quadratic extension `K(sqrt d)`.
///
/// `d` is nonzero and not a square in `K`; arithmetic only combines
/// elements with the same radicand.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadExt<F: Field> {
    pub x: F,
    pub y: F,
    pub d: F,
}

impl<F: Field> QuadExt<F> {
    pub fn new(x: F, y: F, d: F) -> Self {
        QuadExt { x, y, d }
    }

    pub fn from_base(x: F, d: F) -> Self {
        let y = F::zero(&x.ctx());
        QuadExt { x, y, d }
    }

    pub fn sqrt_d(d: F) -> Self {
        let ctx = d.ctx();
        QuadExt {
            x: F::zero(&ctx),
            y: F::one(&ctx),
            d,
        }
    }

    pub fn one(d: F) -> Self {
        Self::from_base(F::one(&d.ctx()), d)
    }

    pub fn conj(&self) -> Self {
        QuadExt {
            x: self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn norm(&self) -> F {
        self.x.square() - self.d.clone() * self.y.square()
    }

    pub fn trace(&self) -> F {
        self.x.clone() + self.x.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// The base-field value, if the `sqrt(d)` part vanishes.
    pub fn as_base(&self) -> Option<F> {
        self.y.is_zero().then(|| self.x.clone())
    }

    pub fn scale(&self, c: &F) -> Self {
        QuadExt {
            x: self.x.clone() * c.clone(),
            y: self.y.clone() * c.clone(),
            d: self.d.clone(),
        }
    }

    pub fn add_base(&self, c: &F) -> Self {
        QuadExt {
            x: self.x.clone() + c.clone(),
            y: self.y.clone(),
            d: self.d.clone(),
        }
    }

    pub fn inv(&self) -> Option<Self> {
        let n = self.norm().inv()?;
        Some(self.conj().scale(&n))
    }

    pub fn cube(&self) -> Self {
        self * &(self * self)
    }
}

impl<F: Field> fmt::Display for QuadExt<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + {}*sqrt({})", self.x, self.y, self.d)
    }
}

impl<F: Field> Add for &QuadExt<F> {
    type Output = QuadExt<F>;
    fn add(self, rhs: &QuadExt<F>) -> QuadExt<F> {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            x: self.x.clone() + rhs.x.clone(),
            y: self.y.clone() + rhs.y.clone(),
            d: self.d.clone(),
        }
    }
}

impl<F: Field> Sub for &QuadExt<F> {
    type Output = QuadExt<F>;
    fn sub(self, rhs: &QuadExt<F>) -> QuadExt<F> {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            x: self.x.clone() - rhs.x.clone(),
            y: self.y.clone() - rhs.y.clone(),
            d: self.d.clone(),
        }
    }
}

impl<F: Field> Mul for &QuadExt<F> {
    type Output = QuadExt<F>;
    fn mul(self, rhs: &QuadExt<F>) -> QuadExt<F> {
        debug_assert_eq!(self.d, rhs.d);
        QuadExt {
            x: self.x.clone() * rhs.x.clone() + self.d.clone() * self.y.clone() * rhs.y.clone(),
            y: self.x.clone() * rhs.y.clone() + self.y.clone() * rhs.x.clone(),
            d: self.d.clone(),
        }
    }
}

impl<F: Field> Div for &QuadExt<F> {
    type Output = QuadExt<F>;
    fn div(self, rhs: &QuadExt<F>) -> QuadExt<F> {
        self * &rhs.inv().expect("division by zero in K(sqrt d)")
    }
}

impl<F: Field> Neg for &QuadExt<F> {
    type Output = QuadExt<F>;
    fn neg(self) -> QuadExt<F> {
        QuadExt {
            x: -self.x.clone(),
            y: -self.y.clone(),
            d: self.d.clone(),
        }
    }
}
