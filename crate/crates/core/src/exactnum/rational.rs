//! The rational numbers as a [`Field`], plus the integer factoring that
//! the square-class and cube-class computations need.

use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::field::{Field, FieldKind};
use crate::error::{Error, Result};

pub type Q = BigRational;

/// Largest trial divisor used by [`factor`] unless a caller asks otherwise.
pub const DEFAULT_TRIAL_BOUND: u64 = 1 << 20;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn q_frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Trial division of `n > 0` by primes below `bound`. Returns the prime
/// powers found, the remaining cofactor and the first untried divisor.
fn trial_divide(n: &BigUint, bound: u64) -> Result<(Vec<(BigUint, u32)>, BigUint, u64)> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let mut out = Vec::new();
    let mut m = n.clone();
    let mut limit = m.sqrt();
    let mut p: u64 = 2;
    while p <= bound && limit >= BigUint::from(p) {
        if (&m % p).is_zero() {
            let mut e = 0u32;
            while (&m % p).is_zero() {
                m /= p;
                e += 1;
            }
            out.push((BigUint::from(p), e));
            limit = m.sqrt();
        }
        p += if p == 2 { 1 } else { 2 };
    }
    Ok((out, m, p))
}

/// Factor `n > 0` by trial division up to `bound`.
///
/// Fails when a cofactor remains that is too large to be certified prime
/// by the divisors already tried.
pub fn factor(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u32)>> {
    let (mut out, m, p) = trial_divide(n, bound)?;
    if !m.is_one() {
        if BigUint::from(p) * p > m {
            out.push((m, 1));
        } else {
            return Err(Error::FactorBoundExceeded { bound });
        }
    }
    Ok(out)
}

/// Pairwise coprime `(f, e)` with `n = prod f^e` and every `f` squarefree,
/// which is all that square and cube classes need. A cofactor left after
/// trial division that is below the cube of the first untried divisor is
/// `q`, `q r` or `q^2` for primes `q, r`, so only the square case needs
/// separating.
fn squarefree_split(n: &BigUint, bound: u64) -> Result<Vec<(BigUint, u32)>> {
    let (mut out, m, p) = trial_divide(n, bound)?;
    if !m.is_one() {
        let p = BigUint::from(p);
        if &p * &p > m {
            out.push((m, 1));
        } else if &p * &p * &p > m {
            let r = m.sqrt();
            if &r * &r == m {
                out.push((r, 2));
            } else {
                out.push((m, 1));
            }
        } else {
            return Err(Error::FactorBoundExceeded { bound });
        }
    }
    Ok(out)
}

/// `q = core * cofactor^2` with `core` a squarefree integer carrying the
/// sign of `q` and `cofactor > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreeDecomp {
    pub core: BigInt,
    pub cofactor: Q,
}

/// `q = core * cofactor^3`, with prime exponents of the numerator and of
/// the denominator of `core` reduced into `{0, 1, 2}` separately. The
/// sign of `q` stays in `core`; `cofactor > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CubeFreeDecomp {
    pub core: Q,
    pub cofactor: Q,
}

pub fn squarefree_part(x: &Q) -> Result<SquareFreeDecomp> {
    squarefree_part_with_bound(x, DEFAULT_TRIAL_BOUND)
}

pub fn squarefree_part_with_bound(x: &Q, bound: u64) -> Result<SquareFreeDecomp> {
    if Zero::is_zero(x) {
        return Err(Error::ZeroInput);
    }
    let num = x.numer().magnitude();
    let den = x.denom().magnitude();
    let mut core = BigUint::one();
    // gcd(num, den) = 1, so exponents never combine across the two.
    for (p, e) in squarefree_split(num, bound)?
        .into_iter()
        .chain(squarefree_split(den, bound)?)
    {
        if e % 2 == 1 {
            core *= p;
        }
    }
    let sign = if x.is_negative() {
        Sign::Minus
    } else {
        Sign::Plus
    };
    let core = BigInt::from_biguint(sign, core);
    let rest = x / Q::from_integer(core.clone());
    let cofactor = Q::new(rest.numer().sqrt(), rest.denom().sqrt());
    debug_assert_eq!(&cofactor * &cofactor, rest);
    Ok(SquareFreeDecomp { core, cofactor })
}

pub fn cubefree_part(x: &Q) -> Result<CubeFreeDecomp> {
    cubefree_part_with_bound(x, DEFAULT_TRIAL_BOUND)
}

pub fn cubefree_part_with_bound(x: &Q, bound: u64) -> Result<CubeFreeDecomp> {
    if Zero::is_zero(x) {
        return Err(Error::ZeroInput);
    }
    let split = |n: &BigUint| -> Result<(BigUint, BigUint)> {
        let mut core = BigUint::one();
        let mut cof = BigUint::one();
        for (p, e) in squarefree_split(n, bound)? {
            core *= p.pow(e % 3);
            cof *= p.pow(e / 3);
        }
        Ok((core, cof))
    };
    let (cn, fn_) = split(x.numer().magnitude())?;
    let (cd, fd) = split(x.denom().magnitude())?;
    let mut core = Q::new(BigInt::from(cn), BigInt::from(cd));
    if x.is_negative() {
        core = -core;
    }
    Ok(CubeFreeDecomp {
        core,
        cofactor: Q::new(BigInt::from(fn_), BigInt::from(fd)),
    })
}

fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

fn exact_cbrt(n: &BigInt) -> Option<BigInt> {
    let r = n.cbrt();
    (&r * &r * &r == *n).then_some(r)
}

fn integer_model(coeffs: &[Q]) -> Vec<BigInt> {
    let l = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs
        .iter()
        .map(|c| (c * Q::from_integer(l.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Distinct rational roots of an integer polynomial with nonzero constant
/// and leading terms.
fn integer_poly_roots(a: &[BigInt]) -> Result<Vec<Q>> {
    let deg = a.len() - 1;
    match deg {
        0 => Ok(Vec::new()),
        1 => Ok(vec![Q::new(-a[0].clone(), a[1].clone())]),
        2 => {
            let disc = &a[1] * &a[1] - BigInt::from(4) * &a[2] * &a[0];
            let Some(r) = exact_sqrt(&disc) else {
                return Ok(Vec::new());
            };
            let two_a = BigInt::from(2) * &a[2];
            let mut out = vec![Q::new(-&a[1] + &r, two_a.clone())];
            if !r.is_zero() {
                out.push(Q::new(-&a[1] - &r, two_a));
            }
            Ok(out)
        }
        _ => {
            // A root r/s in lowest terms has s | a_n, so y = a_n r/s is an
            // integer root of the monic polynomial a_n^(n-1) f(y / a_n).
            let lead = a[deg].clone();
            let mut monic = Vec::with_capacity(deg + 1);
            let mut scale = BigInt::one();
            for i in (0..deg).rev() {
                monic.push(&a[i] * &scale);
                scale *= &lead;
            }
            monic.reverse();
            monic.push(BigInt::one());
            let bound = monic[..deg]
                .iter()
                .map(|c| c.abs())
                .max()
                .unwrap_or_default()
                + BigInt::one();
            let mut out: Vec<Q> = Vec::new();
            for k in root_brackets(&monic, &bound) {
                for y in [k.clone(), k + BigInt::one()] {
                    if eval_int(&monic, &y).is_zero() {
                        let r = Q::new(y, lead.clone());
                        if !out.contains(&r) {
                            out.push(r);
                        }
                    }
                }
            }
            Ok(out)
        }
    }
}

fn eval_int(a: &[BigInt], x: &BigInt) -> BigInt {
    a.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Integers `k` such that every real root of `a` in `[-bound, bound]` lies
/// in some `[k, k + 1]`; the list may contain extra entries. Critical
/// points are bracketed recursively, and between those brackets `a` is
/// monotone, so each sign change is located by bisection.
fn root_brackets(a: &[BigInt], bound: &BigInt) -> Vec<BigInt> {
    let n = a.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let derivative: Vec<BigInt> = (1..=n).map(|i| &a[i] * BigInt::from(i)).collect();
    let mut critical = root_brackets(&derivative, bound);
    critical.sort();
    critical.dedup();
    let mut gaps = Vec::new();
    let mut start = -bound.clone();
    for k in &critical {
        if *k > start {
            gaps.push((start.clone(), k.clone()));
        }
        let next = k + BigInt::one();
        if next > start {
            start = next;
        }
    }
    if start < *bound {
        gaps.push((start, bound.clone()));
    }
    let mut out = critical;
    for (lo, hi) in gaps {
        let (mut lo, mut hi) = (lo, hi);
        let sign_lo = eval_int(a, &lo).sign();
        let sign_hi = eval_int(a, &hi).sign();
        if sign_lo == Sign::NoSign || sign_hi == Sign::NoSign {
            out.push(lo.clone());
            out.push(hi.clone());
            continue;
        }
        if sign_lo == sign_hi {
            continue;
        }
        while &hi - &lo > BigInt::one() {
            let mid: BigInt = (&lo + &hi) >> 1u32;
            match eval_int(a, &mid).sign() {
                Sign::NoSign => {
                    lo = mid;
                    break;
                }
                s if s == sign_lo => lo = mid,
                _ => hi = mid,
            }
        }
        out.push(lo);
    }
    out
}

impl Field for Q {
    type Ctx = ();

    fn ctx(&self) -> Self::Ctx {}

    fn kind(_: &()) -> FieldKind {
        FieldKind::Rationals
    }

    fn zero(_: &()) -> Self {
        <Q as Zero>::zero()
    }

    fn one(_: &()) -> Self {
        <Q as One>::one()
    }

    fn from_i64(_: &(), n: i64) -> Self {
        q(n)
    }

    fn from_bigint(_: &(), n: &BigInt) -> Self {
        Q::from_integer(n.clone())
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_one(&self) -> bool {
        One::is_one(self)
    }

    fn inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }

    fn sqrt(&self) -> Option<Self> {
        Some(Q::new(exact_sqrt(self.numer())?, exact_sqrt(self.denom())?))
    }

    fn cbrt(&self) -> Option<Self> {
        Some(Q::new(exact_cbrt(self.numer())?, exact_cbrt(self.denom())?))
    }

    fn roots_of(coeffs: &[Self], _: &()) -> Result<Vec<Self>> {
        if coeffs.iter().all(Zero::is_zero) {
            return Err(Error::ZeroPolynomial);
        }
        let mut a = integer_model(coeffs);
        while a.last().is_some_and(Zero::is_zero) {
            a.pop();
        }
        let mut out = Vec::new();
        let shift = a.iter().take_while(|c| c.is_zero()).count();
        if shift > 0 {
            out.push(<Q as Zero>::zero());
            a.drain(..shift);
        }
        out.extend(integer_poly_roots(&a)?);
        Ok(out)
    }

    fn canonical_scale(v: &[Self]) -> Vec<Self> {
        let mut ints = integer_model(v);
        if let Some(first) = ints.iter().find(|c| !c.is_zero()) {
            if first.is_negative() {
                for c in &mut ints {
                    *c = -c.clone();
                }
            }
        }
        ints.into_iter().map(Q::from_integer).collect()
    }

    fn square_class(&self) -> Result<(Self, Self)> {
        let d = squarefree_part(self)?;
        Ok((Q::from_integer(d.core), d.cofactor))
    }

    fn cube_class(&self) -> Result<(Self, Self)> {
        if Zero::is_zero(self) {
            return Err(Error::ZeroInput);
        }
        // n/d lies in the cube class of n * d^2; reduce exponents mod 3.
        let mut rep = BigUint::one();
        for (p, e) in squarefree_split(self.numer().magnitude(), DEFAULT_TRIAL_BOUND)? {
            rep *= p.pow(e % 3);
        }
        for (p, e) in squarefree_split(self.denom().magnitude(), DEFAULT_TRIAL_BOUND)? {
            rep *= p.pow((2 * e) % 3);
        }
        let rep = Q::from_integer(BigInt::from(rep));
        let m = (self / &rep)
            .cbrt()
            .expect("quotient by the cube-class representative is a cube");
        Ok((rep, m))
    }

    fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.numer()
            .magnitude()
            .cmp(other.numer().magnitude())
            .then_with(|| self.denom().cmp(other.denom()))
            .then_with(|| self.is_negative().cmp(&other.is_negative()))
    }

    fn elements(_: &()) -> Option<Vec<Self>> {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Poly;

    #[test]
    fn squarefree_examples() {
        let d = squarefree_part(&q(18)).unwrap();
        assert_eq!((d.core, d.cofactor), (BigInt::from(2), q(3)));
        let d = squarefree_part(&q(1)).unwrap();
        assert_eq!((d.core, d.cofactor), (BigInt::from(1), q(1)));
        let d = squarefree_part(&q_frac(-4, 9)).unwrap();
        assert_eq!((d.core, d.cofactor), (BigInt::from(-1), q_frac(2, 3)));
        assert_eq!(squarefree_part(&q(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn cubefree_examples() {
        let d = cubefree_part(&q(16)).unwrap();
        assert_eq!((d.core, d.cofactor), (q(2), q(2)));
        let d = cubefree_part(&q(-8)).unwrap();
        assert_eq!((d.core, d.cofactor), (q(-1), q(2)));
        let d = cubefree_part(&q_frac(1, 9)).unwrap();
        assert_eq!((d.core, d.cofactor), (q_frac(1, 9), q(1)));
        assert_eq!(cubefree_part(&q(0)), Err(Error::ZeroInput));
    }

    #[test]
    fn factor_respects_bound() {
        let n = BigUint::from(1_000_003u64) * BigUint::from(1_000_033u64);
        assert!(matches!(
            factor(&n, 1000),
            Err(Error::FactorBoundExceeded { .. })
        ));
        let f = factor(&n, 2_000_000).unwrap();
        assert_eq!(f.len(), 2);
        // a single large prime is certified by the square-root test
        let f = factor(&BigUint::from(1_000_003u64), 2000).unwrap();
        assert_eq!(f, vec![(BigUint::from(1_000_003u64), 1)]);
    }

    #[test]
    fn classes_of_two_large_prime_factors() {
        let (a, b) = (BigInt::from(1009), BigInt::from(1013));
        let pq = Q::from_integer(&a * &b * 2);
        let d = squarefree_part_with_bound(&pq, 1000).unwrap();
        assert_eq!(d.core, &a * &b * 2);
        let sq = Q::from_integer(&a * &a * 3);
        let d = squarefree_part_with_bound(&sq, 1000).unwrap();
        assert_eq!((d.core, d.cofactor), (BigInt::from(3), Q::from_integer(a.clone())));
        let d = cubefree_part_with_bound(&sq, 1000).unwrap();
        assert_eq!(d.core, sq);
        // three large primes are out of reach
        let big = Q::from_integer(&a * &b * BigInt::from(1019));
        assert!(squarefree_part_with_bound(&big, 1000).is_err());
    }

    #[test]
    fn rational_roots_without_factoring() {
        // roots far beyond the trial-division bound
        let r = q_frac(1_000_000_007 * 998_244_353, 1_000_003);
        let s = q_frac(-7, 1_000_000_009);
        let f = &(&Poly::new(vec![q(3), q(1), q(1)], &()) * &Poly::linear_factor(r.clone()))
            * &Poly::linear_factor(s.clone());
        let mut found = Q::roots_of(f.coeffs(), &()).unwrap();
        found.sort();
        assert_eq!(found, vec![s, r]);
    }

    #[test]
    fn rational_roots_via_theorem() {
        // 6z^3 - 5z^2 - 2z + 1 = (z - 1)(2z + 1)(3z - 1)
        let r = Q::roots_of(&[q(1), q(-2), q(-5), q(6)], &()).unwrap();
        let mut r = r;
        r.sort();
        assert_eq!(r, vec![q_frac(-1, 2), q_frac(1, 3), q(1)]);
        assert!(Q::roots_of(&[q(2), q(0), q(0), q(1)], &())
            .unwrap()
            .is_empty());
        assert_eq!(Q::roots_of(&[q(0), q(0), q(1)], &()).unwrap(), vec![q(0)]);
    }

    #[test]
    fn cube_class_reduces_denominators() {
        // 1/4 and 2 differ by 8 = 2^3
        assert_eq!(q_frac(1, 4).cube_class().unwrap().0, q(2));
        let (r, m) = q_frac(-27, 16).cube_class().unwrap();
        assert_eq!(r, q(4));
        assert_eq!(&r * &m * &m * &m, q_frac(-27, 16));
    }
}
