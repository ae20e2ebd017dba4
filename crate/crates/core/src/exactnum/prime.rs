//! Prime fields `F_p` with `3 < p < 2^32`.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{Field, FieldKind};
use crate::error::{Error, Result};

/// A validated prime modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p <= 3 || p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn elem(&self, v: i64) -> Fp {
        Fp {
            v: v.rem_euclid(self.p as i64) as u64,
            p: self.p,
        }
    }

    pub fn order(&self) -> u64 {
        self.p
    }

    /// Smallest quadratic nonresidue.
    pub fn least_nonresidue(&self) -> Fp {
        (2..self.p)
            .map(|v| self.elem(v as i64))
            .find(|x| !x.is_square())
            .expect("odd prime fields have nonresidues")
    }

    /// Smallest element that is not a cube, if `3 | p - 1`.
    pub fn least_noncube(&self) -> Option<Fp> {
        if !(self.p - 1).is_multiple_of(3) {
            return None;
        }
        (2..self.p)
            .map(|v| self.elem(v as i64))
            .find(|x| !x.is_cube())
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> Fp {
        let n = self.p - 1;
        let mut primes = Vec::new();
        let mut m = n;
        let mut d = 2;
        while d * d <= m {
            if m.is_multiple_of(d) {
                primes.push(d);
                while m.is_multiple_of(d) {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            primes.push(m);
        }
        (2..self.p)
            .map(|v| self.elem(v as i64))
            .find(|g| primes.iter().all(|q| !g.pow(n / q).is_one()))
            .expect("prime fields have primitive roots")
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A residue modulo `p`, always reduced into `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Fp {
    v: u64,
    p: u64,
}

impl Fp {
    pub fn value(&self) -> u64 {
        self.v
    }

    pub fn field(&self) -> PrimeField {
        PrimeField { p: self.p }
    }

    fn with(&self, v: u64) -> Fp {
        Fp { v, p: self.p }
    }

    fn legendre_is_one(&self) -> bool {
        self.pow((self.p - 1) / 2).v == 1
    }

    fn tonelli_shanks(&self) -> Fp {
        let p = self.p;
        let mut q = p - 1;
        let mut s = 0;
        while q.is_multiple_of(2) {
            q /= 2;
            s += 1;
        }
        let z = self.field().least_nonresidue();
        let mut m = s;
        let mut c = z.pow(q);
        let mut t = self.pow(q);
        let mut r = self.pow(q.div_ceil(2));
        while t.v != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2.v != 1 {
                t2 = t2 * t2;
                i += 1;
            }
            let b = c.pow(1 << (m - i - 1));
            m = i;
            c = b * b;
            t = t * c;
            r = r * b;
        }
        r
    }

    /// Cube root of a known cube.
    fn cube_root_of_cube(&self) -> Fp {
        let n = self.p - 1;
        if !n.is_multiple_of(3) {
            // cubing is a bijection; invert the exponent 3 mod p - 1
            let e = inverse_mod(3, n).expect("3 is invertible mod p - 1");
            return self.pow(e);
        }
        let mut t = n;
        let mut s = 0u32;
        while t.is_multiple_of(3) {
            t /= 3;
            s += 1;
        }
        // x1^3 = a * a^(t j) for some j, so x1^3 / a lies in the 3-Sylow subgroup.
        let i3 = inverse_mod(3, t).expect("t is prime to 3");
        let x1 = self.pow(i3);
        let e = x1 * x1 * x1 / *self;
        let g = self
            .field()
            .least_noncube()
            .expect("3 divides p - 1")
            .pow(t);
        let order = 3u64.pow(s);
        let mut acc = self.with(1);
        let mut log = None;
        for k in 0..order {
            if acc == e {
                log = Some(k);
                break;
            }
            acc = acc * g;
        }
        let log = log.expect("e lies in the subgroup generated by g");
        debug_assert_eq!(log % 3, 0);
        x1 / g.pow(log / 3)
    }
}

fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        let s = self.v + rhs.v;
        self.with(if s >= self.p { s - self.p } else { s })
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        self.with(if self.v >= rhs.v {
            self.v - rhs.v
        } else {
            self.v + self.p - rhs.v
        })
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.p, rhs.p);
        self.with(self.v * rhs.v % self.p)
    }
}

impl Div for Fp {
    type Output = Fp;
    fn div(self, rhs: Fp) -> Fp {
        self * rhs.inv().expect("division by zero in F_p")
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        self.with(if self.v == 0 { 0 } else { self.p - self.v })
    }
}

impl Field for Fp {
    type Ctx = PrimeField;

    fn ctx(&self) -> PrimeField {
        self.field()
    }

    fn kind(ctx: &PrimeField) -> FieldKind {
        FieldKind::Prime(ctx.p)
    }

    fn zero(ctx: &PrimeField) -> Self {
        ctx.elem(0)
    }

    fn one(ctx: &PrimeField) -> Self {
        ctx.elem(1)
    }

    fn from_i64(ctx: &PrimeField, n: i64) -> Self {
        ctx.elem(n)
    }

    fn from_bigint(ctx: &PrimeField, n: &num_bigint::BigInt) -> Self {
        use num_integer::Integer;
        use num_traits::ToPrimitive;
        let r = n.mod_floor(&num_bigint::BigInt::from(ctx.p));
        ctx.elem(r.to_i64().expect("residue fits"))
    }

    fn is_zero(&self) -> bool {
        self.v == 0
    }

    fn is_one(&self) -> bool {
        self.v == 1
    }

    fn inv(&self) -> Option<Self> {
        if self.v == 0 {
            return None;
        }
        inverse_mod(self.v, self.p).map(|v| self.with(v))
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.v;
        let mut acc = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        self.with(acc)
    }

    fn sqrt(&self) -> Option<Self> {
        if self.v == 0 {
            return Some(*self);
        }
        self.legendre_is_one().then(|| self.tonelli_shanks())
    }

    fn is_square(&self) -> bool {
        self.v == 0 || self.legendre_is_one()
    }

    fn cbrt(&self) -> Option<Self> {
        if self.v == 0 {
            return Some(*self);
        }
        self.is_cube().then(|| self.cube_root_of_cube())
    }

    fn is_cube(&self) -> bool {
        let n = self.p - 1;
        let g = if n.is_multiple_of(3) { 3 } else { 1 };
        self.v == 0 || self.pow(n / g).v == 1
    }

    fn roots_of(coeffs: &[Self], ctx: &PrimeField) -> Result<Vec<Self>> {
        if coeffs.iter().all(|c| c.v == 0) {
            return Err(Error::ZeroPolynomial);
        }
        Ok((0..ctx.p)
            .map(|v| ctx.elem(v as i64))
            .filter(|x| {
                coeffs
                    .iter()
                    .rev()
                    .fold(ctx.elem(0), |acc, c| acc * *x + *c)
                    .v
                    == 0
            })
            .collect())
    }

    fn canonical_scale(v: &[Self]) -> Vec<Self> {
        match v.iter().find(|c| c.v != 0) {
            Some(pivot) => {
                let s = pivot.inv().expect("pivot is nonzero");
                v.iter().map(|c| *c * s).collect()
            }
            None => v.to_vec(),
        }
    }

    fn square_class(&self) -> Result<(Self, Self)> {
        if self.v == 0 {
            return Err(Error::ZeroInput);
        }
        let rep = if self.is_square() {
            self.with(1)
        } else {
            self.field().least_nonresidue()
        };
        let m = (*self / rep).sqrt().expect("ratio is a square");
        Ok((rep, m))
    }

    fn cube_class(&self) -> Result<(Self, Self)> {
        if self.v == 0 {
            return Err(Error::ZeroInput);
        }
        let rep = match self.field().least_noncube() {
            None => self.with(1),
            Some(_) if self.is_cube() => self.with(1),
            Some(n) if (*self / n).is_cube() => n,
            Some(n) => n * n,
        };
        let m = (*self / rep).cbrt().expect("ratio is a cube");
        Ok((rep, m))
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.v.cmp(&other.v)
    }

    fn elements(ctx: &PrimeField) -> Option<Vec<Self>> {
        Some((0..ctx.p).map(|v| ctx.elem(v as i64)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_small_and_composite_moduli() {
        for p in [0, 1, 2, 3, 4, 9, 15] {
            assert_eq!(PrimeField::new(p), Err(Error::InvalidPrime(p)));
        }
        assert!(PrimeField::new(5).is_ok());
    }

    #[test]
    fn square_roots_are_exhaustively_correct() {
        for p in [5u64, 7, 13, 17, 41, 97] {
            let k = PrimeField::new(p).unwrap();
            let squares: Vec<u64> = (0..p).map(|x| x * x % p).collect();
            for v in 0..p {
                let x = k.elem(v as i64);
                match x.sqrt() {
                    Some(r) => assert_eq!(r * r, x),
                    None => assert!(!squares.contains(&v)),
                }
            }
        }
    }

    #[test]
    fn cube_roots_are_exhaustively_correct() {
        for p in [5u64, 7, 13, 19, 37, 73, 109] {
            let k = PrimeField::new(p).unwrap();
            let cubes: Vec<u64> = (0..p).map(|x| x * x % p * x % p).collect();
            for v in 0..p {
                let x = k.elem(v as i64);
                assert_eq!(x.is_cube(), cubes.contains(&v), "p={p} v={v}");
                if let Some(r) = x.cbrt() {
                    assert_eq!(r * r * r, x);
                }
            }
        }
        // cubes mod 7 are {0, 1, 6}
        assert!(!PrimeField::new(7).unwrap().elem(2).is_cube());
    }

    #[test]
    fn class_representatives() {
        let k = PrimeField::new(7).unwrap();
        let n = k.least_noncube().unwrap();
        for v in 1..7 {
            let x = k.elem(v);
            let (r, m) = x.cube_class().unwrap();
            assert!(r == k.elem(1) || r == n || r == n * n);
            assert_eq!(r * m * m * m, x);
            let (r, m) = x.square_class().unwrap();
            assert_eq!(r * m * m, x);
        }
        let g = k.primitive_root();
        assert_eq!(g.value(), 3);
    }
}
