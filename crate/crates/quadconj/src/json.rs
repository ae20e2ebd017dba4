//! The JSON document every command prints. Field elements are always
//! strings (`"3/4"` over Q, `"5"` over F_p), never floats.

use serde::Serialize;
use serde_json::{json, Map, Value};

use quadconj_core::census::CensusReport;
use quadconj_core::exactnum::Field;
use quadconj_core::moduli::ModuliPoint;
use quadconj_core::normalform::{Certificate, NormalForm};
use quadconj_core::ratmap::Moebius;

pub const SCHEMA_VERSION: u32 = 1;

/// One command's output. Every key is always present; fields that do not
/// apply to a command are `null`.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct CommandResult {
    pub schema: u32,
    pub command: String,
    pub field: Option<String>,
    pub inputs: Vec<String>,
    pub sigma: Option<[String; 2]>,
    pub aut_class: Option<String>,
    pub normal_form: Option<Value>,
    pub witness: Option<[[String; 2]; 2]>,
    pub conjugate: Option<bool>,
    pub certificate: Option<Value>,
    /// Command-specific payload: census reports or selftest results.
    pub report: Option<Value>,
    pub errors: Vec<String>,
}

impl CommandResult {
    pub fn new(command: &str) -> Self {
        CommandResult {
            schema: SCHEMA_VERSION,
            command: command.to_string(),
            field: None,
            inputs: Vec::new(),
            sigma: None,
            aut_class: None,
            normal_form: None,
            witness: None,
            conjugate: None,
            certificate: None,
            report: None,
            errors: Vec::new(),
        }
    }
}

pub fn sigma<F: Field>(s: &ModuliPoint<F>) -> [String; 2] {
    [s.sigma1.to_string(), s.sigma2.to_string()]
}

pub fn moebius<F: Field>(h: &Moebius<F>) -> [[String; 2]; 2] {
    let [a, b, c, e] = h.entries();
    [[a.to_string(), b.to_string()], [c.to_string(), e.to_string()]]
}

pub fn normal_form<F: Field>(nf: &NormalForm<F>) -> Value {
    let mut params = Map::new();
    for (name, v) in nf.params() {
        params.insert(name.to_string(), Value::String(v.to_string()));
    }
    let map = nf.to_map().map(|m| m.to_string()).ok();
    json!({ "case": nf.case_name(), "params": params, "map": map })
}

pub fn certificate<F: Field>(c: &Certificate<F>, closure_conjugate: bool) -> Value {
    let s = |v: &F| Value::String(v.to_string());
    let (kind, mut extra) = match c {
        Certificate::SigmaDiffers => ("sigma_differs", Map::new()),
        Certificate::SigmaAgrees => ("sigma_agrees", Map::new()),
        Certificate::KDiffers => ("k_differs", Map::new()),
        Certificate::SquareRatio { m } => ("square_ratio", [("m".to_string(), s(m))].into_iter().collect()),
        Certificate::NotSquareRatio => ("not_square_ratio", Map::new()),
        Certificate::CycleFieldsDiffer => ("cycle_fields_differ", Map::new()),
        Certificate::CubeRatio { c, inverted } => (
            "cube_ratio",
            [("c".to_string(), s(c)), ("inverted".to_string(), Value::Bool(*inverted))]
                .into_iter()
                .collect(),
        ),
        Certificate::NotCubeRatio => ("not_cube_ratio", Map::new()),
        Certificate::RadicandsDiffer => ("radicands_differ", Map::new()),
        Certificate::Reciprocal { b } => ("reciprocal", [("b".to_string(), s(b))].into_iter().collect()),
        Certificate::GammaB { gamma, b } => (
            "gamma_b",
            [("gamma".to_string(), s(gamma)), ("b".to_string(), s(b))]
                .into_iter()
                .collect(),
        ),
        Certificate::NotNormOneCube => ("not_norm_one_cube", Map::new()),
        Certificate::ExhaustiveSearch { group_order } => (
            "exhaustive_search",
            [("group_order".to_string(), json!(group_order))].into_iter().collect(),
        ),
    };
    extra.insert("kind".to_string(), Value::String(kind.to_string()));
    extra.insert("closure_conjugate".to_string(), Value::Bool(closure_conjugate));
    Value::Object(extra)
}

pub fn census_report(r: &CensusReport) -> Value {
    json!({
        "p": r.p,
        "maps": r.maps,
        "orbits": r.orbits,
        "orbits_trivial": r.orbits_trivial,
        "orbits_c2": r.orbits_c2,
        "orbits_s3": r.orbits_s3,
        "mismatches": r.mismatches,
    })
}

/// Fixed-width table with one row per report.
pub fn census_table(reports: &[CensusReport]) -> String {
    let mut out = format!(
        "{:>4} {:>8} {:>7} {:>14} {:>9} {:>9} {:>10}\n",
        "p", "maps", "orbits", "orbits_trivial", "orbits_c2", "orbits_s3", "mismatches"
    );
    for r in reports {
        out.push_str(&format!(
            "{:>4} {:>8} {:>7} {:>14} {:>9} {:>9} {:>10}\n",
            r.p,
            r.maps,
            r.orbits,
            r.orbits_trivial,
            r.orbits_c2,
            r.orbits_s3,
            r.mismatches.len()
        ));
    }
    out
}
