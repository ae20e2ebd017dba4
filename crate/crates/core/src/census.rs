//! Brute-force conjugacy classes of quadratic maps over small `F_p`.
//!
//! Maps are handled here as raw coefficient 6-tuples `(n2, n1, n0, d2, d1,
//! d0)` with the first nonzero entry equal to 1, and the group action is
//! computed with plain modular arithmetic on the tuples. None of the
//! library's invariants or normal forms are used to build the partition,
//! so it can serve as an oracle for [`are_conjugate`].
//!
//! The work splits into independent units (orbit checks and rows of
//! representative pairs) so callers can run them in any order or in
//! parallel; [`CensusReport::assemble`] merges results deterministically.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::exactnum::{Fp, PrimeField};
use crate::moduli::{sigma_invariants, aut_class_of, AutClass, ModuliPoint};
use crate::normalform::are_conjugate;
use crate::poly::Poly;
use crate::ratmap::RationalMap;

/// Coefficients `(n2, n1, n0, d2, d1, d0)` reduced mod `p`.
pub type Tuple = [u64; 6];

/// Largest prime the census accepts; `p^6` must fit comfortably in a `u64`
/// and the enumeration must fit in memory.
pub const MAX_CENSUS_PRIME: u64 = 101;

fn check_prime(p: u64) -> Result<PrimeField> {
    let field = PrimeField::new(p)?;
    if p > MAX_CENSUS_PRIME {
        return Err(Error::InvalidParameters("census prime is too large"));
    }
    Ok(field)
}

/// Scale so the first nonzero entry is 1.
fn normalize(mut t: Tuple, p: u64) -> Tuple {
    let lead = t.iter().copied().find(|&v| v != 0).expect("nonzero tuple");
    let inv = pow_mod(lead, p - 2, p);
    for v in &mut t {
        *v = *v * inv % p;
    }
    t
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

/// Resultant of the binary forms `n2 X^2 + n1 XY + n0 Y^2` and
/// `d2 X^2 + d1 XY + d0 Y^2`; nonzero iff the tuple is a degree-2 map.
fn form_resultant(t: &Tuple, p: u64) -> u64 {
    let [n2, n1, n0, d2, d1, d0] = *t;
    let sub = |a: u64, b: u64| (a + p * p - b) % p;
    let a = sub(n2 * d0 % p, n0 * d2 % p);
    let b = sub(n2 * d1 % p, n1 * d2 % p);
    let c = sub(n1 * d0 % p, n0 * d1 % p);
    sub(a * a % p, b * c % p)
}

fn encode(t: &Tuple, p: u64) -> u64 {
    t.iter().fold(0, |acc, &v| acc * p + v)
}

fn decode(mut code: u64, p: u64) -> Tuple {
    let mut t = [0; 6];
    for v in t.iter_mut().rev() {
        *v = code % p;
        code /= p;
    }
    t
}

/// Every degree-2 map over `F_p` exactly once, as normalized tuples in
/// increasing order of their base-`p` code.
pub fn enumerate_maps(p: u64) -> Result<Vec<Tuple>> {
    check_prime(p)?;
    let total = p.pow(6);
    let mut out = Vec::new();
    for code in 1..total {
        let t = decode(code, p);
        let lead = t.iter().copied().find(|&v| v != 0).expect("nonzero code");
        if lead != 1 {
            continue;
        }
        if form_resultant(&t, p) != 0 {
            out.push(t);
        }
    }
    Ok(out)
}

/// Generators of `PGL_2(F_p)` acting on tuples by conjugation:
/// `z -> z + 1`, `z -> g z` for a primitive root `g`, and `z -> 1/z`.
fn generator_images(t: &Tuple, p: u64, g: u64) -> [Tuple; 3] {
    let [n2, n1, n0, d2, d1, d0] = *t;
    let m = |a: u64, b: u64| a * b % p;
    let sub = |a: u64, b: u64| (a + p - b) % p;
    // phi(z + 1) - 1
    let a2 = n2;
    let a1 = (2 * n2 + n1) % p;
    let a0 = (n2 + n1 + n0) % p;
    let b2 = d2;
    let b1 = (2 * d2 + d1) % p;
    let b0 = (d2 + d1 + d0) % p;
    let shifted = [sub(a2, b2), sub(a1, b1), sub(a0, b0), b2, b1, b0];
    // phi(g z) / g
    let g2 = m(g, g);
    let g3 = m(g2, g);
    let scaled = [m(n2, g2), m(n1, g), n0, m(d2, g3), m(d1, g2), m(d0, g)];
    // 1 / phi(1/z)
    let inverted = [d0, d1, d2, n0, n1, n2];
    [
        normalize(shifted, p),
        normalize(scaled, p),
        normalize(inverted, p),
    ]
}

struct UnionFind {
    parent: Vec<u32>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n as u32).collect(),
        }
    }

    fn find(&mut self, mut x: u32) -> u32 {
        while self.parent[x as usize] != x {
            let up = self.parent[self.parent[x as usize] as usize];
            self.parent[x as usize] = up;
            x = up;
        }
        x
    }

    fn union(&mut self, a: u32, b: u32) {
        let (ra, rb) = (self.find(a), self.find(b));
        // the smaller index becomes the root, so roots are orbit minima
        if ra < rb {
            self.parent[rb as usize] = ra;
        } else if rb < ra {
            self.parent[ra as usize] = rb;
        }
    }
}

/// The full map list of `F_p` split into `PGL_2(F_p)` orbits.
#[derive(Clone, Debug)]
pub struct Census {
    pub field: PrimeField,
    pub maps: Vec<Tuple>,
    /// Orbits as sorted lists of indices into `maps`, ordered by their
    /// smallest member.
    pub orbits: Vec<Vec<u32>>,
}

impl Census {
    /// Enumerate and partition. The partition is a union-find closure under
    /// the three generators, which is deterministic and independent of
    /// traversal order.
    pub fn build(p: u64) -> Result<Self> {
        let field = check_prime(p)?;
        let maps = enumerate_maps(p)?;
        let codes: Vec<u64> = maps.iter().map(|t| encode(t, p)).collect();
        let index = |t: &Tuple| -> u32 {
            codes
                .binary_search(&encode(t, p))
                .expect("generator image is a valid map") as u32
        };
        let g = field.primitive_root().value();
        let mut uf = UnionFind::new(maps.len());
        for (i, t) in maps.iter().enumerate() {
            for image in generator_images(t, p, g) {
                uf.union(i as u32, index(&image));
            }
        }
        let mut by_root: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
        for i in 0..maps.len() as u32 {
            by_root.entry(uf.find(i)).or_default().push(i);
        }
        let orbits = by_root.into_values().collect();
        Ok(Census { field, maps, orbits })
    }

    pub fn p(&self) -> u64 {
        self.field.p()
    }

    pub fn to_map(&self, t: &Tuple) -> RationalMap<Fp> {
        tuple_to_map(t, &self.field)
    }

    /// Index into `maps` of a normalized tuple.
    pub fn index_of(&self, t: &Tuple) -> Option<usize> {
        let p = self.p();
        let code = encode(t, p);
        self.maps.binary_search_by_key(&code, |m| encode(m, p)).ok()
    }

    /// The orbit containing the given map, if the map is valid.
    pub fn orbit_of(&self, phi: &RationalMap<Fp>) -> Option<&Vec<u32>> {
        let i = self.index_of(&map_to_tuple(phi))? as u32;
        self.orbits.iter().find(|o| o.binary_search(&i).is_ok())
    }

    /// Check every member of orbit `o` against the fingerprint of its first
    /// member, and `samples` random members for conjugacy with it.
    pub fn check_orbit(&self, o: usize, samples: usize, seed: u64) -> Result<OrbitSummary> {
        let orbit = &self.orbits[o];
        let rep = self.to_map(&self.maps[orbit[0] as usize]);
        let sigma = sigma_invariants(&rep)?;
        let aut_class = aut_class_of(&sigma);
        let mut mismatches = Vec::new();
        for &i in &orbit[1..] {
            let m = self.to_map(&self.maps[i as usize]);
            if sigma_invariants(&m)? != sigma {
                mismatches.push(format!("orbit {o}: {m} has different invariants from {rep}"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (o as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let n = samples.min(orbit.len());
        for j in sample(&mut rng, orbit.len(), n) {
            let m = self.to_map(&self.maps[orbit[j] as usize]);
            let d = are_conjugate(&rep, &m, true)?;
            let verified = d.witness.as_ref().is_some_and(|w| rep.conjugate(w) == m);
            if !d.conjugate || !verified {
                mismatches.push(format!("orbit {o}: {rep} and {m} share an orbit but were not matched"));
            }
        }
        Ok(OrbitSummary {
            size: orbit.len(),
            sigma,
            aut_class,
            mismatches,
        })
    }

    /// Compare representative `i` with every later representative.
    pub fn check_representative_row(&self, i: usize) -> Result<Vec<String>> {
        let rep = |o: usize| self.to_map(&self.maps[self.orbits[o][0] as usize]);
        let phi = rep(i);
        let mut mismatches = Vec::new();
        for j in i + 1..self.orbits.len() {
            let psi = rep(j);
            let d = are_conjugate(&phi, &psi, false)?;
            if d.conjugate {
                mismatches.push(format!("orbits {i} and {j}: {phi} and {psi} were reported conjugate"));
            }
        }
        Ok(mismatches)
    }
}

/// The map with the given tuple of coefficients.
pub fn tuple_to_map(t: &Tuple, field: &PrimeField) -> RationalMap<Fp> {
    let e = |v: u64| field.elem(v as i64);
    RationalMap::new(
        Poly::new(vec![e(t[2]), e(t[1]), e(t[0])], field),
        Poly::new(vec![e(t[5]), e(t[4]), e(t[3])], field),
    )
    .expect("census tuples are valid maps")
}

pub fn map_to_tuple(phi: &RationalMap<Fp>) -> Tuple {
    phi.coefficient_vector().map(|v| v.value())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitSummary {
    pub size: usize,
    pub sigma: ModuliPoint<Fp>,
    pub aut_class: AutClass,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusReport {
    pub p: u64,
    pub maps: usize,
    pub orbits: usize,
    pub orbits_trivial: usize,
    pub orbits_c2: usize,
    pub orbits_s3: usize,
    /// Orbit sizes in orbit order.
    pub orbit_sizes: Vec<usize>,
    pub mismatches: Vec<String>,
}

impl CensusReport {
    /// Merge per-orbit summaries and representative-row results, both given
    /// in index order, into a report. Also checks the partition-level
    /// invariants that need all orbits at once.
    pub fn assemble(census: &Census, summaries: &[OrbitSummary], rows: &[Vec<String>]) -> Self {
        let p = census.p();
        let mut mismatches: Vec<String> = Vec::new();
        let group_order = (p * p * p - p) as usize;
        let total: usize = summaries.iter().map(|s| s.size).sum();
        if total != census.maps.len() {
            mismatches.push(format!("orbit sizes sum to {total}, not {}", census.maps.len()));
        }
        let expected = (p.pow(5) - p.pow(3)) as usize;
        if census.maps.len() != expected {
            mismatches.push(format!("{} maps enumerated, expected p^5 - p^3 = {expected}", census.maps.len()));
        }
        for (o, s) in summaries.iter().enumerate() {
            mismatches.extend(s.mismatches.iter().cloned());
            let aut = match s.aut_class {
                AutClass::Trivial => 1,
                AutClass::C2 => 2,
                AutClass::S3 => 6,
            };
            // the stabilizer is the group of automorphisms defined over F_p,
            // a subgroup of the geometric automorphism group
            if !group_order.is_multiple_of(s.size) || aut % (group_order / s.size) != 0 {
                mismatches.push(format!(
                    "orbit {o} has size {} but automorphism class {}",
                    s.size, s.aut_class
                ));
            }
        }
        // each C2 class over the closure splits into the two square classes of b
        let mut c2_classes: BTreeMap<(u64, u64), usize> = BTreeMap::new();
        for s in summaries.iter().filter(|s| s.aut_class == AutClass::C2) {
            *c2_classes.entry((s.sigma.sigma1.value(), s.sigma.sigma2.value())).or_default() += 1;
        }
        for ((s1, s2), n) in c2_classes {
            if n != 2 {
                mismatches.push(format!("C2 class ({s1}, {s2}) splits into {n} orbits, expected 2"));
            }
        }
        for row in rows {
            mismatches.extend(row.iter().cloned());
        }
        let count = |c: AutClass| summaries.iter().filter(|s| s.aut_class == c).count();
        CensusReport {
            p,
            maps: census.maps.len(),
            orbits: summaries.len(),
            orbits_trivial: count(AutClass::Trivial),
            orbits_c2: count(AutClass::C2),
            orbits_s3: count(AutClass::S3),
            orbit_sizes: summaries.iter().map(|s| s.size).collect(),
            mismatches,
        }
    }
}

/// Sequential crosscheck: partition, check every orbit with `samples`
/// intra-orbit pairs, and every pair of representatives.
pub fn crosscheck(p: u64, samples: usize, seed: u64) -> Result<CensusReport> {
    let census = Census::build(p)?;
    let summaries = (0..census.orbits.len())
        .map(|o| census.check_orbit(o, samples, seed))
        .collect::<Result<Vec<_>>>()?;
    let rows = (0..census.orbits.len())
        .map(|i| census.check_representative_row(i))
        .collect::<Result<Vec<_>>>()?;
    Ok(CensusReport::assemble(&census, &summaries, &rows))
}
