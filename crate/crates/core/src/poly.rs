//! Dense univariate polynomials over a base field.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::exactnum::{Field, QuadExt};
use crate::linalg::determinant;

/// Coefficients lowest degree first, with no trailing zeros. The zero
/// polynomial has no coefficients and no degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    coeffs: Vec<F>,
    ctx: F::Ctx,
}

impl<F: Field> Poly<F> {
    pub fn new(mut coeffs: Vec<F>, ctx: &F::Ctx) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly {
            coeffs,
            ctx: ctx.clone(),
        }
    }

    pub fn from_i64s(coeffs: &[i64], ctx: &F::Ctx) -> Self {
        Self::new(coeffs.iter().map(|&c| F::from_i64(ctx, c)).collect(), ctx)
    }

    pub fn zero(ctx: &F::Ctx) -> Self {
        Self::new(Vec::new(), ctx)
    }

    pub fn constant(c: F) -> Self {
        let ctx = c.ctx();
        Self::new(vec![c], &ctx)
    }

    /// The monomial `z`.
    pub fn z(ctx: &F::Ctx) -> Self {
        Self::new(vec![F::zero(ctx), F::one(ctx)], ctx)
    }

    /// `z - root`.
    pub fn linear_factor(root: F) -> Self {
        let ctx = root.ctx();
        Self::new(vec![-root, F::one(&ctx)], &ctx)
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `z^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> F {
        self.coeffs
            .get(i)
            .cloned()
            .unwrap_or_else(|| F::zero(&self.ctx))
    }

    pub fn leading(&self) -> Option<&F> {
        self.coeffs.last()
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(
            self.coeffs.iter().map(|a| a.clone() * c.clone()).collect(),
            &self.ctx,
        )
    }

    pub fn monic(&self) -> Self {
        match self.leading().and_then(F::inv) {
            Some(inv) => self.scale(&inv),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| F::from_i64(&self.ctx, i as i64) * c.clone())
                .collect(),
            &self.ctx,
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(&self.ctx), |acc, c| acc * x.clone() + c.clone())
    }

    pub fn eval_ext(&self, x: &QuadExt<F>) -> QuadExt<F> {
        self.coeffs.iter().rev().fold(
            QuadExt::from_base(F::zero(&self.ctx), x.d.clone()),
            |acc, c| (&acc * x).add_base(c),
        )
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = divisor.coeffs[dd]
            .inv()
            .expect("leading coefficient is nonzero");
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return (Self::zero(&self.ctx), self.clone());
        };
        let mut quot = vec![F::zero(&self.ctx); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let c = rem[i + dd].clone() * lead_inv.clone();
            if !c.is_zero() {
                for (j, dc) in divisor.coeffs.iter().enumerate() {
                    rem[i + j] = rem[i + j].clone() - c.clone() * dc.clone();
                }
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot, &self.ctx), Self::new(rem, &self.ctx))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let (q, r) = self.div_rem(divisor);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::Internal(
                "polynomial division was expected to be exact",
            ))
        }
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Inverse of `self` modulo `modulus`, when they are coprime.
    pub fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.div_rem(modulus).1);
        let (mut s0, mut s1) = (Self::zero(&self.ctx), Self::constant(F::one(&self.ctx)));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = r0.coeffs[0].inv()?;
        Some(s0.scale(&c).div_rem(modulus).1)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(F::one(&self.ctx));
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Distinct roots in the base field with their multiplicities.
    pub fn rational_roots(&self) -> Result<Vec<(F, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = Vec::new();
        for r in F::roots_of(&self.coeffs, &self.ctx)? {
            let lin = Self::linear_factor(r.clone());
            let mut m = 0;
            let mut rest = self.clone();
            loop {
                let (q, rem) = rest.div_rem(&lin);
                if !rem.is_zero() {
                    break;
                }
                rest = q;
                m += 1;
            }
            out.push((r, m));
        }
        Ok(out)
    }

    /// Render with the given variable name, highest power first, using
    /// explicit `*` (`2*z^2 - z + 3`).
    pub fn format_with(&self, var: &str) -> String {
        use core::fmt::Write;
        if self.is_zero() {
            return String::from("0");
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut s = alloc::format!("{c}");
            let negative = s.starts_with('-');
            if negative {
                s.remove(0);
            }
            if out.is_empty() {
                if negative {
                    out.push('-');
                }
            } else {
                out.push_str(if negative { " - " } else { " + " });
            }
            let unit = s == "1";
            match i {
                0 => out.push_str(&s),
                _ => {
                    if !unit {
                        let _ = write!(out, "{s}*");
                    }
                    out.push_str(var);
                    if i > 1 {
                        let _ = write!(out, "^{i}");
                    }
                }
            }
        }
        out
    }

    /// Number of nonzero terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self.format_with("z"))
    }
}

impl<F: Field> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.format_with("z"))
    }
}

impl<F: Field> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect(),
            &self.ctx,
        )
    }
}

impl<F: Field> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(
            (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect(),
            &self.ctx,
        )
    }
}

impl<F: Field> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.ctx);
        }
        let mut out = vec![F::zero(&self.ctx); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out, &self.ctx)
    }
}

impl<F: Field> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly::new(self.coeffs.iter().map(|c| -c.clone()).collect(), &self.ctx)
    }
}

/// Resultant as the determinant of the Sylvester matrix whose rows hold
/// coefficients lowest degree first. This equals
/// `lc(q)^deg(p) * prod p(beta)` over the roots `beta` of `q`, so
/// `Res(z^2 - 1, z - 2) = 3` and `Res(z - a, z - b) = b - a`.
///
/// If exactly one input is zero the result is zero, except that a
/// nonzero constant against the zero polynomial gives 1.
pub fn resultant<F: Field>(p: &Poly<F>, q: &Poly<F>) -> Result<F> {
    let ctx = p.ctx().clone();
    let (m, n) = match (p.degree(), q.degree()) {
        (None, None) => return Err(Error::ZeroPolynomials),
        (None, Some(0)) | (Some(0), None) => return Ok(F::one(&ctx)),
        (None, _) | (_, None) => return Ok(F::zero(&ctx)),
        (Some(m), Some(n)) => (m, n),
    };
    let size = m + n;
    if size == 0 {
        return Ok(F::one(&ctx));
    }
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![F::zero(&ctx); size];
        for (j, c) in p.coeffs().iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![F::zero(&ctx); size];
        for (j, c) in q.coeffs().iter().enumerate() {
            row[shift + j] = c.clone();
        }
        rows.push(row);
    }
    Ok(determinant(rows, &ctx))
}

/// Characteristic polynomial of multiplication by `u_num / u_den` on
/// `K[x]/(modulus)`; equals `prod (x - u(a_i))` over the roots `a_i` of
/// the modulus, with multiplicity.
pub fn charpoly_mult<F: Field>(
    u_num: &Poly<F>,
    u_den: &Poly<F>,
    modulus: &Poly<F>,
) -> Result<Poly<F>> {
    let ctx = modulus.ctx().clone();
    let n = match modulus.degree() {
        Some(n) if n >= 1 => n,
        _ => {
            return Err(Error::InvalidParameters(
                "modulus must have degree at least 1",
            ))
        }
    };
    let modulus = modulus.monic();
    let den_inv = u_den.inverse_mod(&modulus).ok_or(Error::NotInvertible)?;
    let u = (u_num * &den_inv).div_rem(&modulus).1;
    // column j holds u * x^j reduced mod the modulus
    let mut cols = Vec::with_capacity(n);
    let mut basis = Poly::constant(F::one(&ctx));
    let x = Poly::z(&ctx);
    for _ in 0..n {
        cols.push((&u * &basis).div_rem(&modulus).1);
        basis = (&basis * &x).div_rem(&modulus).1;
    }
    // det(x I - M) with polynomial entries, by cofactor expansion
    let entries: Vec<Vec<Poly<F>>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let m_ij = Poly::constant(cols[j].coeff(i));
                    if i == j {
                        &x - &m_ij
                    } else {
                        -&m_ij
                    }
                })
                .collect()
        })
        .collect();
    Ok(det_poly(&entries, &ctx))
}

fn det_poly<F: Field>(m: &[Vec<Poly<F>>], ctx: &F::Ctx) -> Poly<F> {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = Poly::zero(ctx);
    for col in 0..n {
        let minor: Vec<Vec<Poly<F>>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][col] * &det_poly(&minor, ctx);
        acc = if col % 2 == 0 {
            &acc + &term
        } else {
            &acc - &term
        };
    }
    acc
}
