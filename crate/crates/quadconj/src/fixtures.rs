//! Worked examples shipped with the binary and run by `quadconj selftest`.

use quadconj_core::exactnum::{q, Q};
use quadconj_core::moduli::{aut_class, multiplier_cubic, sigma_invariants, AutClass, ModuliPoint};
use quadconj_core::normalform::{
    classify, normal_form_trivial, normalize_c2, s3_dk_conjugate, theta_dk, NormalForm,
};
use quadconj_core::parser::{format_map, parse_map};
use quadconj_core::poly::Poly;
use quadconj_core::ratmap::{FixedPoint, Moebius, Multiplier, ProjPoint, RationalMap};
use quadconj_core::Result;
use serde_json::Value;

pub const EXAMPLE_MAP: &str = "(2z^2+2z+2)/(-z^2+2z+2)";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

fn pq(s: &str) -> Result<RationalMap<Q>> {
    parse_map(s, &())
}

fn sigma(a: i64, b: i64) -> ModuliPoint<Q> {
    ModuliPoint::new(q(a), q(b))
}

fn check(cond: bool, what: impl Into<String>) -> Result<std::result::Result<(), String>> {
    Ok(if cond { Ok(()) } else { Err(what.into()) })
}

type Outcome = Result<std::result::Result<(), String>>;

fn cubic_without_rational_roots() -> Outcome {
    let f = Poly::<Q>::from_i64s(&[2, 0, 0, 1], &());
    let roots = f.rational_roots()?;
    check(roots.is_empty(), format!("found roots {roots:?}"))
}

fn parse_example_map() -> Outcome {
    let phi = pq(EXAMPLE_MAP)?;
    let expected = RationalMap::from_i64s(&[2, 2, 2], &[2, 2, -1], &())?;
    check(phi == expected, format!("parsed as {phi}"))
}

fn parse_laurent_sum() -> Outcome {
    let phi = pq("2z + 5/z")?;
    let expected = RationalMap::from_i64s(&[5, 0, 2], &[0, 1], &())?;
    check(phi == expected, format!("parsed as {phi}"))
}

fn format_example_map() -> Outcome {
    let s = format_map(&normal_form_trivial(&sigma(0, 0))?);
    check(
        s == "(2*z^2 + 2*z + 2)/(-z^2 + 2*z + 2)",
        format!("formatted as {s}"),
    )
}

fn negation_is_automorphism() -> Outcome {
    let phi = pq("2z + 5/z")?;
    let h = Moebius::new(q(-1), q(0), q(0), q(1))?;
    check(phi.conjugate(&h) == phi, "not invariant under z -> -z")
}

fn inverse_square_fixed_points() -> Outcome {
    let phi = pq("1/z^2")?;
    let fix = phi.fixed_point_poly();
    if fix != Poly::from_i64s(&[1, 0, 0, -1], &()) {
        return check(false, format!("fixed-point polynomial {fix}"));
    }
    let data = phi.fixed_point_data()?;
    let mut saw_one = false;
    let mut saw_pair = false;
    for e in &data.entries {
        let minus_two = match &e.multiplier {
            Multiplier::Base(m) => *m == q(-2),
            Multiplier::Quadratic(m) => m.as_base() == Some(q(-2)),
            Multiplier::NotMaterialized => false,
        };
        if !minus_two {
            return check(false, format!("multiplier {:?}", e.multiplier));
        }
        match &e.point {
            FixedPoint::Point(ProjPoint::Finite(x)) if *x == q(1) => saw_one = true,
            FixedPoint::QuadraticPair { minpoly, .. } => {
                saw_pair = *minpoly == Poly::from_i64s(&[1, 1, 1], &())
            }
            other => return check(false, format!("unexpected fixed point {other:?}")),
        }
    }
    check(saw_one && saw_pair, "fixed points are not 1 and the roots of z^2+z+1")
}

fn c2_multipliers() -> Outcome {
    let phi = pq("2z + 5/z")?;
    let data = phi.fixed_point_data()?;
    let mut ok = data.total_multiplicity() == 3;
    for e in &data.entries {
        ok &= match (&e.point, &e.multiplier) {
            (FixedPoint::Point(ProjPoint::Infinity), Multiplier::Base(m)) => *m == Q::new(1.into(), 2.into()),
            (FixedPoint::QuadraticPair { minpoly, .. }, Multiplier::Quadratic(m)) => {
                *minpoly == Poly::from_i64s(&[5, 0, 1], &()) && m.as_base() == Some(q(3))
            }
            _ => false,
        };
    }
    check(ok, format!("fixed-point data {data:?}"))
}

fn sigma_examples() -> Outcome {
    let s = sigma_invariants(&pq(EXAMPLE_MAP)?)?;
    if s != sigma(0, 0) {
        return check(false, format!("example map has sigma {s:?}"));
    }
    let s = sigma_invariants(&pq("z^2 + 1")?)?;
    check(s == sigma(2, 4), format!("z^2 + 1 has sigma {s:?}"))
}

fn multiplier_cubic_example() -> Outcome {
    let f = multiplier_cubic(&sigma(0, 0));
    check(
        f == Poly::from_i64s(&[2, 0, 0, 1], &()),
        format!("multiplier cubic {f}"),
    )
}

fn aut_classes() -> Outcome {
    let got = [
        aut_class(&pq(EXAMPLE_MAP)?)?,
        aut_class(&pq("2z + 5/z")?)?,
        aut_class(&pq("1/z^2")?)?,
    ];
    check(
        got == [AutClass::Trivial, AutClass::C2, AutClass::S3],
        format!("classes {got:?}"),
    )
}

fn trivial_normal_forms() -> Outcome {
    let cases = [
        ((0, 0), EXAMPLE_MAP),
        ((2, 4), "2z^2/(-z^2+4z-4)"),
        ((2, 8), "2z^2/(-z^2+4z-8)"),
        ((2, -4), "2z^2/(-z^2+4z+4)"),
        ((5, 7), "(2z^2-3z-3)/(-z^2+7z-10)"),
    ];
    for ((s1, s2), text) in cases {
        let n = normal_form_trivial(&sigma(s1, s2))?;
        if n != pq(text)? {
            return check(false, format!("sigma ({s1}, {s2}) gives {n}"));
        }
    }
    check(true, "")
}

fn c2_normalization_example() -> Outcome {
    let n = normalize_c2(&pq("2z + 5/z")?)?;
    check(
        n.k == q(2) && n.b == q(5) && n.witness.is_identity(),
        format!("got k = {}, b = {}, witness {:?}", n.k, n.b, n.witness),
    )
}

fn theta_pairs() -> Outcome {
    for k2 in [2, -1] {
        let d = s3_dk_conjugate((&q(2), &q(1)), (&q(2), &q(k2)))?;
        let ok = d.conjugate
            && match &d.witness {
                Some(h) => theta_dk(&q(2), &q(1))?.conjugate(h)
                    == theta_dk(&q(2), &q(k2))?,
                None => false,
            };
        if !ok {
            return check(false, format!("(2, 1) vs (2, {k2}): {d:?}"));
        }
    }
    check(true, "")
}

fn classify_examples() -> Outcome {
    let c = classify(&pq(EXAMPLE_MAP)?, false)?;
    let expected = NormalForm::TrivialAut {
        sigma1: q(0),
        sigma2: q(0),
    };
    if c.normal_form != expected {
        return check(false, format!("example map classified as {}", c.normal_form));
    }
    let c = classify(&pq("2z + 5/z")?, false)?;
    check(
        c.normal_form == NormalForm::C2 { k: q(2), b: q(5) },
        format!("2z + 5/z classified as {}", c.normal_form),
    )
}

fn cli_json(args: &[&str]) -> std::result::Result<Value, String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = crate::cli::run(args.iter().copied(), &mut std::io::empty(), &mut out, &mut err);
    if code != 0 {
        return Err(format!(
            "exit code {code}: {}",
            String::from_utf8_lossy(&err)
        ));
    }
    serde_json::from_slice(&out).map_err(|e| e.to_string())
}

fn cli_examples() -> Outcome {
    let v = match cli_json(&["quadconj", "classify", "2z + 5/z"]) {
        Ok(v) => v,
        Err(e) => return check(false, e),
    };
    let nf = &v["normal_form"];
    if v["aut_class"] != "C2" || nf["params"]["k"] != "2" || nf["params"]["b"] != "5" {
        return check(false, format!("classify output {v}"));
    }
    let v = match cli_json(&["quadconj", "invariants", EXAMPLE_MAP]) {
        Ok(v) => v,
        Err(e) => return check(false, e),
    };
    check(
        v["sigma"] == serde_json::json!(["0", "0"]),
        format!("invariants output {v}"),
    )
}

type Fixture = (&'static str, fn() -> Outcome);

const FIXTURES: &[Fixture] = &[
    ("x^3 + 2 has no rational root", cubic_without_rational_roots),
    ("parse the example map", parse_example_map),
    ("2z + 5/z parses as (2z^2 + 5)/z", parse_laurent_sum),
    ("format the sigma (0, 0) normal form", format_example_map),
    ("2z + 5/z is invariant under z -> -z", negation_is_automorphism),
    ("1/z^2 has three fixed points with multiplier -2", inverse_square_fixed_points),
    ("kz + b/z has multipliers 2k-1, 2k-1, 1/k", c2_multipliers),
    ("sigma of the example map and of z^2 + 1", sigma_examples),
    ("multiplier cubic at (0, 0) is x^3 + 2", multiplier_cubic_example),
    ("automorphism classes of the three examples", aut_classes),
    ("normal forms for trivial automorphism group", trivial_normal_forms),
    ("2z + 5/z is already in C2 normal form", c2_normalization_example),
    ("theta (2,1) is conjugate to (2,2) and (2,-1)", theta_pairs),
    ("classify the example maps", classify_examples),
    ("command-line classify and invariants", cli_examples),
];

/// Run every fixture. Errors raised by the library count as failures.
pub fn run_fixtures() -> Vec<FixtureResult> {
    FIXTURES
        .iter()
        .map(|(name, f)| {
            let (ok, detail) = match f() {
                Ok(Ok(())) => (true, String::new()),
                Ok(Err(why)) => (false, why),
                Err(e) => (false, format!("error: {e}")),
            };
            FixtureResult { name, ok, detail }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_fixtures_pass() {
        for r in run_fixtures() {
            assert!(r.ok, "{}: {}", r.name, r.detail);
        }
    }

}
