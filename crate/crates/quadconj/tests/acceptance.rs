//! Acceptance run: one PASS/FAIL line per criterion, with timings.
//!
//! The process exits nonzero when a criterion fails, unless the failure
//! is a known discrepancy whose explanation is itself checked here and
//! printed under the FAIL line.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quadconj::census::{crosscheck, DEFAULT_SAMPLES, DEFAULT_SEED};
use quadconj_core::census::Census;
use quadconj_core::exactnum::{cube_root_norm_one, q, Field, Fp, PrimeField, QuadExt, Q};
use quadconj_core::moduli::{aut_class, sigma_invariants, symmetry_locus_value, AutClass, ModuliPoint};
use quadconj_core::normalform::{
    c2_map, classify, normal_form_trivial, pgl2_elements, s3_dk_conjugate, s3_t_conjugate,
    theta_dk, theta_t, Classification, NormalForm,
};
use quadconj_core::parser::parse_map;
use quadconj_core::ratmap::{Moebius, RationalMap};
use quadconj_core::sampling;

struct Outcome {
    pass: bool,
    detail: String,
    /// Lines printed under a FAIL that account for it. A failure without
    /// an explanation makes the run exit nonzero.
    explained: Option<Vec<String>>,
}

impl Outcome {
    fn new(failures: &[String], detail: String) -> Self {
        let pass = failures.is_empty();
        let detail = if pass {
            detail
        } else {
            format!("{detail}; {} failure(s), first: {}", failures.len(), failures[0])
        };
        Outcome { pass, detail, explained: None }
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn pq(s: &str) -> RationalMap<Q> {
    parse_map(s, &()).expect("fixture parses")
}

/// `max(|numerator|, denominator)`.
fn height(x: &Q) -> BigInt {
    x.numer().abs().max(x.denom().clone())
}

/// Largest coefficient of the map written with coprime integer
/// coefficients.
fn map_height(phi: &RationalMap<Q>) -> BigInt {
    let c = phi.coefficient_vector();
    let l = c.iter().fold(BigInt::from(1), |l, x| l.lcm(x.denom()));
    let ints: Vec<BigInt> = c.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::from(0), |g, n| g.gcd(n));
    ints.iter().map(|n| (n / &g).abs()).max().unwrap()
}

fn criterion_1() -> Outcome {
    let mut failures = Vec::new();
    let example = "(2z^2+2z+2)/(-z^2+2z+2)";
    let s = sigma_invariants(&pq(example)).unwrap();
    if s != ModuliPoint::new(q(0), q(0)) {
        failures.push(format!("sigma of the example map is ({}, {})", s.sigma1, s.sigma2));
    }
    for c in [1, 2, -1] {
        let phi = pq(&format!("z^2 + {c}"));
        let nf = normal_form_trivial(&sigma_invariants(&phi).unwrap()).unwrap();
        let expected = pq(&format!("2z^2/(-z^2 + 4z - 4*{c})"));
        if nf != expected {
            failures.push(format!("z^2 + {c} has normal form {nf}"));
        }
    }
    let mut r = rng(1);
    let mut tested = 0;
    while tested < 50 {
        let k = sampling::nonzero_elem::<Q, _>(&mut r, &(), 20);
        let b = sampling::nonzero_elem::<Q, _>(&mut r, &(), 20);
        let Ok(phi) = c2_map(&k, &b) else { continue };
        tested += 1;
        let two_k_minus_one = q(2) * k.clone() - q(1);
        let mut expected = vec![two_k_minus_one.clone(), two_k_minus_one, q(1) / k.clone()];
        expected.sort();
        let got: Option<Vec<Q>> = phi
            .fixed_point_data()
            .unwrap()
            .multipliers()
            .and_then(|m| m.iter().map(QuadExt::as_base).collect());
        match got {
            Some(mut got) => {
                got.sort();
                if got != expected {
                    failures.push(format!("{phi}: multipliers {got:?}"));
                }
            }
            None => failures.push(format!("{phi}: multipliers not all rational")),
        }
    }
    let inv_sq = pq("1/z^2").fixed_point_data().unwrap().multipliers();
    let all_minus_two = inv_sq
        .as_ref()
        .is_some_and(|m| m.len() == 3 && m.iter().all(|x| x.as_base() == Some(q(-2))));
    if !all_minus_two {
        failures.push(format!("1/z^2 multipliers {inv_sq:?}"));
    }
    let phi = pq("2z + 5/z");
    let neg = Moebius::new(q(-1), q(0), q(0), q(1)).unwrap();
    if phi.conjugate(&neg) != phi {
        failures.push("2z + 5/z is not invariant under z -> -z".into());
    }
    Outcome::new(&failures, "worked examples and 50 random kz + b/z".into())
}

fn criterion_2() -> Outcome {
    let mut failures = Vec::new();
    let mut r = rng(2);
    let (mut tested, mut quadratic, mut cubic, mut parabolic) = (0, 0, 0, 0);
    while tested < 500 {
        let phi = sampling::mixed_map::<Q, _>(&mut r, &(), 20);
        let Some(m) = phi.fixed_point_data().unwrap().multipliers() else {
            cubic += 1;
            continue;
        };
        if m.iter().any(|x| x.as_base().is_some_and(|x| Field::is_one(&x))) {
            parabolic += 1;
            continue;
        }
        tested += 1;
        let d = m[0].d.clone();
        if m.iter().any(|x| x.as_base().is_none()) {
            quadratic += 1;
        }
        let one = QuadExt::one(d.clone());
        let mut sum = QuadExt::from_base(q(0), d.clone());
        for x in &m {
            sum = &sum + &(&one - x).inv().expect("no multiplier is 1");
        }
        if sum != one {
            failures.push(format!("{phi}: sum is {sum}"));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "500 maps, {quadratic} with multipliers in a quadratic field; \
             skipped {cubic} with a cubic fixed-point orbit and {parabolic} with a multiplier 1"
        ),
    )
}

fn witness_ok(phi: &RationalMap<Q>, c: &Classification<Q>) -> bool {
    c.witness
        .as_ref()
        .is_some_and(|w| phi.conjugate(w) == c.normal_form.to_map().unwrap())
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    let mut r = rng(3);
    let mut counts = [0usize; 3];
    let mut tested = 0;
    while tested < 500 {
        let phi = sampling::mixed_map::<Q, _>(&mut r, &(), 20);
        if map_height(&phi) > BigInt::from(20) {
            continue;
        }
        tested += 1;
        let h = sampling::moebius::<Q, _>(&mut r, &(), 10);
        let psi = phi.conjugate(&h);
        let (a, b) = match (classify(&phi, true), classify(&psi, true)) {
            (Ok(a), Ok(b)) => (a, b),
            (a, b) => {
                failures.push(format!("{phi} by {h:?}: {:?} / {:?}", a.err(), b.err()));
                continue;
            }
        };
        counts[match a.aut_class {
            AutClass::Trivial => 0,
            AutClass::C2 => 1,
            AutClass::S3 => 2,
        }] += 1;
        if !witness_ok(&phi, &a) || !witness_ok(&psi, &b) {
            failures.push(format!("{phi}: a witness did not verify"));
        }
        let agree = match (&a.normal_form, &b.normal_form) {
            (NormalForm::S3General { d: d1, k: k1 }, NormalForm::S3General { d: d2, k: k2 }) => {
                s3_dk_conjugate((d1, k1), (d2, k2)).is_ok_and(|d| d.conjugate)
            }
            (x, y) => x == y,
        };
        if !agree {
            failures.push(format!("{phi}: {} vs {}", a.normal_form, b.normal_form));
        }
    }
    Outcome::new(
        &failures,
        format!(
            "500 maps of height <= 20 ({} trivial, {} C2, {} S3), h of height <= 10",
            counts[0], counts[1], counts[2]
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let mut r = rng(4);
    let mut on_locus = 0;
    for _ in 0..500 {
        let phi = sampling::mixed_map::<Q, _>(&mut r, &(), 20);
        let s = sigma_invariants(&phi).unwrap();
        let off = !symmetry_locus_value(&s).is_zero();
        on_locus += usize::from(!off);
        if (aut_class(&phi).unwrap() == AutClass::Trivial) != off {
            failures.push(format!("{phi}: locus value {}", symmetry_locus_value(&s)));
        }
    }
    let fixed = [
        ("(0, 0)", ModuliPoint::new(q(0), q(0)), q(36)),
        ("(-6, 12)", ModuliPoint::new(q(-6), q(12)), q(0)),
        ("sigma(2z + 5/z)", sigma_invariants(&pq("2z + 5/z")).unwrap(), q(0)),
    ];
    for (name, s, want) in fixed {
        let v = symmetry_locus_value(&s);
        if v != want {
            failures.push(format!("locus value at {name} is {v}"));
        }
    }
    Outcome::new(&failures, format!("500 maps ({on_locus} on the locus) and three fixed points"))
}

/// Norm-1 element `(u + v sqrt d)/(u - v sqrt d)` of height at most 50,
/// with nonzero irrational part.
fn norm_one_of_height_50(r: &mut ChaCha8Rng) -> (i64, QuadExt<Q>) {
    loop {
        let d = sampling::squarefree_radicand::<Q, _>(r, &(), 30);
        let beta = sampling::norm_one(r, &d, 8);
        let small = height(&beta.x) <= BigInt::from(50) && height(&beta.y) <= BigInt::from(50);
        if small && !beta.y.is_zero() {
            let d = d.to_integer().try_into().unwrap();
            return (d, beta);
        }
    }
}

/// Search `(u + v sqrt d)/(u - v sqrt d)` with `|u|, |v| <= bound` for a
/// cube root of `alpha`, in integer arithmetic.
fn small_cube_root_exists(alpha: &QuadExt<Q>, d: i64, bound: i64) -> bool {
    let l = alpha.x.denom().lcm(alpha.y.denom());
    let scaled = |x: &Q| -> i128 { (x * Q::from_integer(l.clone())).to_integer().try_into().unwrap() };
    let (a, b) = (scaled(&alpha.x), scaled(&alpha.y));
    let c: i128 = l.try_into().unwrap();
    let d = d as i128;
    for u in -bound..=bound {
        for v in -bound..=bound {
            let (u, v) = (u as i128, v as i128);
            if u * u == d * v * v {
                continue;
            }
            // (u + v sqrt d)^3 = p0 + p1 sqrt d; the conjugate is p0 - p1 sqrt d
            let p0 = u * u * u + 3 * u * v * v * d;
            let p1 = 3 * u * u * v + v * v * v * d;
            // alpha (p0 - p1 sqrt d) == p0 + p1 sqrt d, scaled by c
            if a * p0 - b * p1 * d == c * p0 && b * p0 - a * p1 == c * p1 {
                return true;
            }
        }
    }
    false
}

fn criterion_5() -> Outcome {
    let mut failures = Vec::new();
    let mut r = rng(5);
    for _ in 0..200 {
        let (_, beta) = norm_one_of_height_50(&mut r);
        let cube = beta.cube();
        match cube_root_norm_one(&cube) {
            Ok(Some(root)) if root.cube() == cube => {}
            other => failures.push(format!("cube of {beta}: {other:?}")),
        }
    }
    let (mut tested, mut skipped) = (0, 0);
    while tested < 200 {
        let (d, alpha) = norm_one_of_height_50(&mut r);
        if small_cube_root_exists(&alpha, d, 60) {
            skipped += 1;
            continue;
        }
        tested += 1;
        match cube_root_norm_one(&alpha) {
            Ok(None) => {}
            other => failures.push(format!("non-cube {alpha}: {other:?}")),
        }
    }
    Outcome::new(
        &failures,
        format!("200 cubes and 200 non-cubes ({skipped} sampled cubes skipped by the search)"),
    )
}

fn orbit_size(p: u64, map: &str) -> usize {
    let k = PrimeField::new(p).unwrap();
    let phi = parse_map(map, &k).unwrap();
    Census::build(p).unwrap().orbit_of(&phi).unwrap().len()
}

/// Size of the stabilizer of `map` in `PGL_2(F_p)`, by exhaustive search.
fn stabilizer_order(p: u64, map: &str) -> usize {
    let k = PrimeField::new(p).unwrap();
    let phi = parse_map(map, &k).unwrap();
    let elems = Fp::elements(&k).unwrap();
    pgl2_elements(&k, &elems).filter(|h| phi.conjugate(h) == phi).count()
}

fn group_order(p: u64) -> usize {
    let k = PrimeField::new(p).unwrap();
    let elems = Fp::elements(&k).unwrap();
    pgl2_elements(&k, &elems).count()
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let mut lines = Vec::new();
    for p in [5, 7, 11, 13] {
        let t = Instant::now();
        let report = crosscheck(p, DEFAULT_SAMPLES, DEFAULT_SEED, 0).unwrap();
        let elapsed = t.elapsed();
        lines.push(format!("p = {p}: {} orbits, {:.1?}", report.orbits, elapsed));
        failures.extend(report.mismatches.iter().map(|m| format!("p = {p}: {m}")));
        let limit = if p <= 7 { Duration::from_secs(10) } else { Duration::from_secs(300) };
        if elapsed > limit {
            failures.push(format!("p = {p} took {elapsed:.1?}"));
        }
    }
    let c2 = orbit_size(7, "2z + 5/z");
    if c2 != 168 {
        failures.push(format!("2z + 5/z over F_7: orbit {c2}, expected 168"));
    }
    let crosscheck_ok = failures.is_empty();
    let s3 = orbit_size(5, "1/z^2");
    let mut outcome = if s3 == 20 {
        Outcome::new(&failures, format!("{}; spot checks 20 and 168 hold", lines.join(", ")))
    } else {
        failures.push(format!("1/z^2 over F_5: orbit {s3}, expected 20"));
        Outcome::new(&failures, lines.join(", "))
    };
    // The stated 20 assumes all six automorphisms of 1/z^2 are defined over
    // F_5. The rotations z -> w z need a cube root of unity w, and F_5 has
    // none, so only z -> 1/z survives. Confirm that by search.
    let stab = stabilizer_order(5, "1/z^2");
    let group = group_order(5);
    let s3_f7 = orbit_size(7, "1/z^2");
    let group_f7 = group_order(7);
    if crosscheck_ok && s3 != 20 && stab * s3 == group && stab == 2 && s3_f7 * 6 == group_f7 {
        outcome.explained = Some(vec![
            format!("exhaustive search: 1/z^2 has {stab} automorphisms in PGL_2(F_5), of order {group}"),
            format!("so its orbit has {group}/{stab} = {s3} maps; the expected 120/6 = 20 needs a cube root of unity in F_5"),
            format!("over F_7, which has one, the orbit of 1/z^2 is {group_f7}/6 = {s3_f7}"),
        ]);
    }
    outcome
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    for (t1, t2, want) in [(2, 16, true), (2, 4, true), (2, 3, false), (1, 1, true)] {
        let d = s3_t_conjugate(&q(t1), &q(t2)).unwrap();
        let verified = match &d.witness {
            Some(h) => theta_t(&q(t1)).unwrap().conjugate(h) == theta_t(&q(t2)).unwrap(),
            None => !want,
        };
        if d.conjugate != want || !verified {
            failures.push(format!("t = ({t1}, {t2}): {d:?}"));
        }
    }
    for ((d1, k1), (d2, k2), want) in [((2, 1), (2, 2), true), ((2, 1), (2, -1), true), ((2, 1), (3, 1), false)] {
        let (d1, k1, d2, k2) = (q(d1), q(k1), q(d2), q(k2));
        let d = s3_dk_conjugate((&d1, &k1), (&d2, &k2)).unwrap();
        let verified = match &d.witness {
            Some(h) => theta_dk(&d1, &k1).unwrap().conjugate(h) == theta_dk(&d2, &k2).unwrap(),
            None => !want,
        };
        if d.conjugate != want || !verified {
            failures.push(format!("(d, k) = ({d1}, {k1}) vs ({d2}, {k2}): {d:?}"));
        }
    }
    Outcome::new(&failures, "four t pairs and three (d, k) pairs".into())
}

type Criterion = (&'static str, fn() -> Outcome, Duration);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 worked examples", criterion_1, Duration::from_secs(1)),
        ("2 multiplier identity", criterion_2, Duration::from_secs(10)),
        ("3 normalization round trip", criterion_3, Duration::from_secs(60)),
        ("4 symmetry locus", criterion_4, Duration::from_secs(5)),
        ("5 norm-1 cubes", criterion_5, Duration::from_secs(30)),
        ("6 finite-field census", criterion_6, Duration::from_secs(600)),
        ("7 theta conjugacy table", criterion_7, Duration::from_secs(1)),
    ];
    let mut unexplained = 0;
    for (name, run, limit) in criteria {
        let t = Instant::now();
        let mut o = run();
        let elapsed = t.elapsed();
        if elapsed > limit {
            o.pass = false;
            o.explained = None;
            o.detail = format!("{}; over the {limit:?} limit", o.detail);
        }
        let verdict = if o.pass { "PASS" } else { "FAIL" };
        println!("{verdict} criterion {name} ({elapsed:.2?}): {}", o.detail);
        if !o.pass {
            match &o.explained {
                Some(lines) => lines.iter().for_each(|l| println!("     {l}")),
                None => unexplained += 1,
            }
        }
    }
    if unexplained > 0 {
        println!("{unexplained} unexplained failure(s)");
        std::process::exit(1);
    }
}
