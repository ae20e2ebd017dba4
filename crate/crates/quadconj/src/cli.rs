//! Command-line front end. [`run`] takes explicit streams so that tests can
//! drive it in-process.

use std::ffi::OsString;
use std::io::{BufRead, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quadconj_core::exactnum::{Field, PrimeField};
use quadconj_core::moduli::{aut_class_of, sigma_invariants};
use quadconj_core::normalform::{are_conjugate, classify};
use quadconj_core::parser::{format_map, parse_map};
use quadconj_core::ratmap::RationalMap;
use quadconj_core::Error;

use crate::census::{crosscheck, DEFAULT_SAMPLES, DEFAULT_SEED};
use crate::fixtures::run_fixtures;
use crate::json::{self, CommandResult};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USER: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;

/// Census primes used when neither `--p` nor `--max-p` is given.
pub const DEFAULT_CENSUS_PRIMES: &[u64] = &[5, 7, 11, 13];

#[derive(Parser, Debug)]
#[command(
    name = "quadconj",
    version,
    about = "Classify quadratic rational maps up to conjugacy over Q and F_p"
)]
struct Cli {
    /// Base field.
    #[arg(long, value_enum, default_value_t = FieldArg::Q, global = true)]
    field: FieldArg,
    /// The prime for `--field fp`; for `census`, the single prime to run.
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Also compute conjugating transformations where they are optional.
    #[arg(long, global = true)]
    witness: bool,
    /// Print one JSON document per command (the default).
    #[arg(long, global = true, conflicts_with = "pretty")]
    json: bool,
    /// Print a human-readable summary instead of JSON.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum FieldArg {
    Q,
    Fp,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Multiplier invariants (sigma1, sigma2) and automorphism class.
    Invariants { map: String },
    /// Automorphism class and normal form.
    Classify { map: String },
    /// Normal form as a map, with the transformation that reaches it.
    Normalize { map: String },
    /// Decide whether two maps are conjugate over the base field.
    SameClass { first: String, second: String },
    /// Brute-force orbit census over F_p checked against the classifier.
    Census(CensusArgs),
    /// Run the built-in worked examples.
    Selftest,
    /// Read one command per line from stdin.
    Batch,
}

#[derive(Args, Debug)]
struct CensusArgs {
    /// Run every prime from 5 up to this bound.
    #[arg(long, conflicts_with = "p")]
    max_p: Option<u64>,
    /// Worker threads (0 means one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Random intra-orbit pairs checked per orbit.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
    /// Seed for choosing the intra-orbit pairs.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Print the fixed-width table instead of JSON.
    #[arg(long)]
    table: bool,
}

enum Failure {
    User(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_internal() {
            Failure::Internal(e.to_string())
        } else {
            Failure::User(e.to_string())
        }
    }
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::User(_) => EXIT_USER,
            Failure::Internal(_) => EXIT_INTERNAL,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::User(m) | Failure::Internal(m) => m,
        }
    }
}

/// Parse `text`, rendering a parse error with a caret under the offending
/// position.
fn parse_input<F: Field>(text: &str, ctx: &F::Ctx) -> Result<RationalMap<F>, Failure> {
    parse_map(text, ctx).map_err(|e| match &e {
        Error::Parse(pe) => {
            let pos = text[..pe.pos.min(text.len())].chars().count();
            Failure::User(format!("{e}\n  {text}\n  {}^", " ".repeat(pos)))
        }
        _ => Failure::from(e),
    })
}

struct Options {
    witness: bool,
}

fn map_command<F: Field>(
    command: &Command,
    ctx: &F::Ctx,
    opts: &Options,
    out: &mut CommandResult,
) -> Result<(), Failure> {
    match command {
        Command::Invariants { map } => {
            let phi = parse_input::<F>(map, ctx)?;
            out.inputs = vec![format_map(&phi)];
            let s = sigma_invariants(&phi)?;
            out.aut_class = Some(aut_class_of(&s).name().to_string());
            out.sigma = Some(json::sigma(&s));
        }
        Command::Classify { map } | Command::Normalize { map } => {
            let phi = parse_input::<F>(map, ctx)?;
            out.inputs = vec![format_map(&phi)];
            let always = matches!(command, Command::Normalize { .. });
            let c = classify(&phi, opts.witness || always)?;
            out.sigma = Some(json::sigma(&c.sigma));
            out.aut_class = Some(c.aut_class.name().to_string());
            out.normal_form = Some(json::normal_form(&c.normal_form));
            if opts.witness || always {
                out.witness = c.witness.as_ref().map(json::moebius);
            }
        }
        Command::SameClass { first, second } => {
            let phi = parse_input::<F>(first, ctx)?;
            let psi = parse_input::<F>(second, ctx)?;
            out.inputs = vec![format_map(&phi), format_map(&psi)];
            let s = sigma_invariants(&phi)?;
            out.sigma = Some(json::sigma(&s));
            out.aut_class = Some(aut_class_of(&s).name().to_string());
            let d = are_conjugate(&phi, &psi, opts.witness)?;
            out.conjugate = Some(d.conjugate);
            out.certificate = Some(json::certificate(&d.certificate, d.closure_conjugate));
            if opts.witness {
                out.witness = d.witness.as_ref().map(json::moebius);
            }
        }
        _ => unreachable!("not a map command"),
    }
    Ok(())
}

fn census_primes(p: Option<u64>, max_p: Option<u64>) -> Result<Vec<u64>, Failure> {
    let primes: Vec<u64> = match (p, max_p) {
        (Some(p), _) => vec![p],
        (None, Some(m)) => (5..=m)
            .filter(|&n| PrimeField::new(n).is_ok())
            .collect(),
        (None, None) => DEFAULT_CENSUS_PRIMES.to_vec(),
    };
    if primes.is_empty() {
        return Err(Failure::User("no primes in the requested range".into()));
    }
    Ok(primes)
}

/// Execute one parsed command. Returns the exit code.
fn execute(
    cli: Cli,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32 {
    let name = match &cli.command {
        Command::Invariants { .. } => "invariants",
        Command::Classify { .. } => "classify",
        Command::Normalize { .. } => "normalize",
        Command::SameClass { .. } => "same-class",
        Command::Census(_) => "census",
        Command::Selftest => "selftest",
        Command::Batch => return batch(stdin, stdout, stderr),
    };
    let mut out = CommandResult::new(name);
    let mut code = EXIT_OK;
    let mut text_override = None;
    let opts = Options {
        witness: cli.witness,
    };
    let result = match &cli.command {
        Command::Census(args) => census(&cli, args, &mut out, &mut text_override, &mut code),
        Command::Selftest => {
            let results = run_fixtures();
            let failed = results.iter().filter(|r| !r.ok).count();
            if failed > 0 {
                code = EXIT_INTERNAL;
                out.errors.push(format!("{failed} fixture(s) failed"));
            }
            out.report = Some(Value::Array(
                results
                    .iter()
                    .map(|r| json!({ "name": r.name, "ok": r.ok, "detail": r.detail }))
                    .collect(),
            ));
            let mut text = String::new();
            for r in &results {
                let mark = if r.ok { "PASS" } else { "FAIL" };
                text.push_str(&format!("{mark} {}", r.name));
                if !r.ok {
                    text.push_str(&format!(": {}", r.detail));
                }
                text.push('\n');
            }
            text_override = Some(text);
            Ok(())
        }
        command => match (cli.field, cli.p) {
            (FieldArg::Q, None) => {
                out.field = Some("Q".into());
                map_command::<quadconj_core::exactnum::Q>(command, &(), &opts, &mut out)
            }
            (FieldArg::Q, Some(_)) => Err(Failure::User("--p requires --field fp".into())),
            (FieldArg::Fp, None) => Err(Failure::User("--field fp requires --p <prime>".into())),
            (FieldArg::Fp, Some(p)) => match PrimeField::new(p) {
                Ok(k) => {
                    out.field = Some(format!("F_{p}"));
                    map_command::<quadconj_core::exactnum::Fp>(command, &k, &opts, &mut out)
                }
                Err(e) => Err(e.into()),
            },
        },
    };
    if let Err(f) = result {
        let _ = writeln!(stderr, "error: {}", f.message());
        out.errors.push(f.message().lines().next().unwrap_or("").to_string());
        code = f.code();
    }
    let table = matches!(&cli.command, Command::Census(a) if a.table);
    let rendered = if cli.pretty || table {
        text_override.unwrap_or_else(|| pretty(&out))
    } else {
        serde_json::to_string(&out).expect("serializable") + "\n"
    };
    if stdout.write_all(rendered.as_bytes()).is_err() {
        return EXIT_INTERNAL;
    }
    code
}

fn census(
    cli: &Cli,
    args: &CensusArgs,
    out: &mut CommandResult,
    text: &mut Option<String>,
    code: &mut i32,
) -> Result<(), Failure> {
    out.field = Some("F_p".into());
    let mut reports = Vec::new();
    for p in census_primes(cli.p, args.max_p)? {
        let r = crosscheck(p, args.samples, args.seed, args.jobs)?;
        out.inputs.push(p.to_string());
        if !r.mismatches.is_empty() {
            *code = EXIT_INTERNAL;
            out.errors
                .push(format!("p = {p}: {} mismatches", r.mismatches.len()));
        }
        reports.push(r);
    }
    out.report = Some(Value::Array(reports.iter().map(json::census_report).collect()));
    if args.table || cli.pretty {
        *text = Some(json::census_table(&reports));
    }
    Ok(())
}

fn pretty(r: &CommandResult) -> String {
    let mut s = String::new();
    if let Some(f) = &r.field {
        s.push_str(&format!("field: {f}\n"));
    }
    for (i, m) in r.inputs.iter().enumerate() {
        s.push_str(&format!("input {}: {m}\n", i + 1));
    }
    if let Some([a, b]) = &r.sigma {
        s.push_str(&format!("sigma: ({a}, {b})\n"));
    }
    if let Some(c) = &r.aut_class {
        s.push_str(&format!("automorphisms: {c}\n"));
    }
    if let Some(nf) = &r.normal_form {
        let params: Vec<String> = nf["params"]
            .as_object()
            .map(|o| {
                o.iter()
                    .map(|(k, v)| format!("{k} = {}", v.as_str().unwrap_or("")))
                    .collect()
            })
            .unwrap_or_default();
        s.push_str(&format!(
            "normal form: {} ({})\n",
            nf["case"].as_str().unwrap_or(""),
            params.join(", ")
        ));
        if let Some(m) = nf["map"].as_str() {
            s.push_str(&format!("normal form map: {m}\n"));
        }
    }
    if let Some(c) = r.conjugate {
        s.push_str(&format!("conjugate: {c}\n"));
    }
    if let Some(c) = &r.certificate {
        s.push_str(&format!("certificate: {c}\n"));
    }
    if let Some([[a, b], [c, e]]) = &r.witness {
        let (num, den) = (linear(a, b), linear(c, e));
        let group = |t: String| if t.contains(' ') { format!("({t})") } else { t };
        let h = if den == "1" { num } else { format!("{}/{}", group(num), group(den)) };
        s.push_str(&format!("witness: z -> {h}\n"));
    }
    for e in &r.errors {
        s.push_str(&format!("error: {e}\n"));
    }
    s
}

/// `a*z + b` with zero terms dropped and signs folded.
fn linear(a: &str, b: &str) -> String {
    let zt = match a {
        "0" => String::new(),
        "1" => "z".into(),
        "-1" => "-z".into(),
        _ => format!("{a}*z"),
    };
    match (zt.is_empty(), b) {
        (true, _) => b.to_string(),
        (false, "0") => zt,
        (false, _) => match b.strip_prefix('-') {
            Some(m) => format!("{zt} - {m}"),
            None => format!("{zt} + {b}"),
        },
    }
}

fn batch(stdin: &mut dyn BufRead, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32 {
    let mut worst = EXIT_OK;
    let mut line = String::new();
    let mut n = 0usize;
    loop {
        line.clear();
        match stdin.read_line(&mut line) {
            Ok(0) => break,
            Ok(_) => {}
            Err(e) => {
                let _ = writeln!(stderr, "error: reading stdin: {e}");
                return EXIT_USER;
            }
        }
        n += 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some(words) = shlex::split(trimmed) else {
            let _ = writeln!(stderr, "error: line {n}: unbalanced quotes");
            worst = worst.max(EXIT_USER);
            continue;
        };
        if words.first().map(String::as_str) == Some("batch") {
            let _ = writeln!(stderr, "error: line {n}: batch cannot be nested");
            worst = worst.max(EXIT_USER);
            continue;
        }
        let args = std::iter::once("quadconj".to_string()).chain(words);
        let code = run(args, &mut std::io::empty(), stdout, stderr);
        worst = worst.max(code);
    }
    worst
}

/// Run the command line `args` (including the program name) and return the
/// process exit code: 0 on success, 1 for bad input, 2 for an internal
/// failure.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn BufRead,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(cli, stdin, stdout, stderr),
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{e}");
                    EXIT_USER
                }
            }
        }
    }
}
