//! Command-line front end.
//!
//! [`run`] does all the work and returns the exit code with the text for
//! stdout and stderr, so the binary is a thin wrapper and tests can drive it
//! in-process.

mod json;
mod parse;

use std::fmt::Write as _;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linsolve::solve_linear;
use crate::oracle::{brute_linear, brute_quadratic, GridSpec};
use crate::quadsolve::{solve_quadratic_traced, sqrt_set_traced, QuadraticPath, QuadraticReport};
use crate::solsets::SolutionSet;
use crate::spectrum::{complex_adjoint, left_spectrum, verify_eigenpair, DefiningEquation, LeftSpectrum, Matrix2};
use crate::{Quat, Rational, SurdQuat};

pub use json::{quat as quat_json, solution_set as solution_set_json, spectrum as spectrum_json};
pub use parse::{parse_matrix, parse_quaternion, parse_vector};

/// Version of the JSON document layout.
pub const DOCUMENT_VERSION: &str = "1";
/// Seed used when neither `--seed` nor `SPLIQ_SEED` is given.
pub const DEFAULT_SEED: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_UNRESOLVED: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "spliq", version, about = "Exact solver for split-quaternion equations and 2x2 left spectra")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    options: Options,
}

#[derive(Args, Debug)]
struct Options {
    /// Emit a JSON document instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Number of sampled members to show.
    #[arg(long, global = true, default_value_t = 3)]
    samples: usize,
    /// Sampling seed; defaults to SPLIQ_SEED, then 1.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Cross-check against brute-force grid search.
    #[arg(long, global = true)]
    oracle: bool,
    /// Oracle grid as lo:hi:step.
    #[arg(long, global = true, default_value = "-2:2:1/2", allow_hyphen_values = true)]
    grid: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a·x = d.
    SolveLinear {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        d: String,
    },
    /// Solve a·x² + b·x + c = 0.
    SolveQuadratic {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
        #[arg(allow_hyphen_values = true)]
        c: String,
    },
    /// Left spectrum of a 2x2 matrix "[[a,b],[c,d]]".
    Spectrum {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Check A·v = λ·v with an admissible v given as "V1,V2".
    Verify {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
        #[arg(allow_hyphen_values = true)]
        lambda: String,
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Complex adjoint 4x4 matrix.
    Adjoint {
        #[arg(allow_hyphen_values = true)]
        matrix: String,
    },
    /// Solve x² = w.
    Sqrt {
        #[arg(allow_hyphen_values = true)]
        w: String,
    },
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs the command line `args`, whose first element is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_OK, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: EXIT_USAGE,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn resolve_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var("SPLIQ_SEED").ok()?.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

fn arg(name: &str, text: &str) -> Result<Quat> {
    parse_quaternion(text).map_err(|e| match e {
        Error::Parse { position, expected } => Error::Parse {
            position,
            expected: format!("{expected} in argument {name} {text:?}"),
        },
        other => other,
    })
}

fn matrix_arg(text: &str) -> Result<Matrix2<Rational>> {
    parse_matrix(text).map_err(|e| match e {
        Error::Parse { position, expected } => Error::Parse {
            position,
            expected: format!("{expected} in matrix {text:?}"),
        },
        other => other,
    })
}

/// What a command computed, before rendering.
struct Report {
    command: &'static str,
    inputs: Map<String, Value>,
    result: Value,
    complete: bool,
    samples: Vec<Value>,
    oracle: Option<Value>,
    text: String,
    notes: Vec<String>,
}

fn execute(cli: &Cli) -> Result<Outcome> {
    let opts = &cli.options;
    let seed = resolve_seed(opts.seed);
    let grid = if opts.oracle { Some(GridSpec::parse(&opts.grid)?) } else { None };
    let started = Instant::now();
    let report = match &cli.command {
        Command::SolveLinear { a, d } => {
            let (qa, qd) = (arg("A", a)?, arg("D", d)?);
            let set = solve_linear(&qa, &qd);
            let oracle = grid
                .as_ref()
                .map(|g| oracle_check(&set, brute_linear(&qa, &qd, g), g))
                .transpose()?;
            let mut text = format!("solutions of ({qa})x = {qd}:\n  {set}\n");
            set_report("solve-linear", inputs(&[("a", a), ("d", d)]), set, oracle, opts, seed, &mut text)
        }
        Command::SolveQuadratic { a, b, c } => {
            let (qa, qb, qc) = (arg("A", a)?, arg("B", b)?, arg("C", c)?);
            let report = solve_quadratic_traced(&qa, &qb, &qc);
            let oracle = grid
                .as_ref()
                .map(|g| oracle_check(&report.result, brute_quadratic(&qa, &qb, &qc, g), g))
                .transpose()?;
            let mut text = format!("solutions of ({qa})x^2 + ({qb})x + ({qc}) = 0:\n");
            write_trace(&mut text, &report, "  ");
            let _ = writeln!(text, "  result: {}", report.result);
            let mut r = set_report(
                "solve-quadratic",
                inputs(&[("a", a), ("b", b), ("c", c)]),
                report.result.clone(),
                oracle,
                opts,
                seed,
                &mut text,
            );
            if let Value::Object(map) = &mut r.result {
                map.insert("trace".into(), json::quadratic_report(&report));
            }
            r
        }
        Command::Sqrt { w } => {
            let qw = arg("W", w)?;
            let (set, _) = sqrt_set_traced(&qw);
            let oracle = grid
                .as_ref()
                .map(|g| oracle_check(&set, brute_quadratic(&Quat::one(), &Quat::zero(), &-qw.clone(), g), g))
                .transpose()?;
            let mut text = format!("square roots of {qw}:\n  {set}\n");
            set_report("sqrt", inputs(&[("w", w)]), set, oracle, opts, seed, &mut text)
        }
        Command::Spectrum { matrix } => {
            let m = matrix_arg(matrix)?;
            let spectrum = left_spectrum(&m);
            spectrum_report(matrix, &spectrum, grid.as_ref(), opts, seed)?
        }
        Command::Verify { matrix, lambda, vector } => {
            let m = matrix_arg(matrix)?;
            let l = arg("LAMBDA", lambda)?;
            let v = parse_vector(vector)?;
            let equation = m.apply(&v) == [&l * &v[0], &l * &v[1]];
            let admissible = v.iter().any(Quat::is_invertible);
            let holds = verify_eigenpair(&m, &l, &v);
            let text = format!(
                "{}\n  A v = λ v: {equation}\n  admissible: {admissible}\n",
                if holds { "eigenpair" } else { "not an eigenpair" }
            );
            Report {
                command: "verify",
                inputs: inputs(&[("matrix", matrix), ("lambda", lambda), ("vector", vector)]),
                result: json!({ "eigenpair": holds, "equation_holds": equation, "admissible": admissible }),
                complete: true,
                samples: Vec::new(),
                oracle: None,
                text,
                notes: Vec::new(),
            }
        }
        Command::Adjoint { matrix } => {
            let m = matrix_arg(matrix)?;
            let adj = complex_adjoint(&m);
            let mut text = String::new();
            for row in &adj {
                let cells: Vec<String> = row.iter().map(format_complex).collect();
                let _ = writeln!(text, "[{}]", cells.join(", "));
            }
            let rows: Vec<Value> = adj
                .iter()
                .map(|row| {
                    Value::Array(
                        row.iter()
                            .map(|z| json!({ "re": json::rational(&z.re), "im": json::rational(&z.im) }))
                            .collect(),
                    )
                })
                .collect();
            Report {
                command: "adjoint",
                inputs: inputs(&[("matrix", matrix)]),
                result: Value::Array(rows),
                complete: true,
                samples: Vec::new(),
                oracle: None,
                text,
                notes: Vec::new(),
            }
        }
    };
    let elapsed = started.elapsed().as_secs_f64() * 1000.0;
    Ok(render(report, opts.json, elapsed))
}

fn inputs(pairs: &[(&str, &str)]) -> Map<String, Value> {
    pairs
        .iter()
        .map(|(k, v)| (k.to_string(), Value::String(v.to_string())))
        .collect()
}

fn format_complex(z: &num_complex::Complex<Rational>) -> String {
    use crate::scalar::format_rational;
    use num_traits::Signed;
    match (z.re.is_zero(), z.im.is_zero()) {
        (_, true) => format_rational(&z.re),
        (true, false) => format!("{}i", format_rational(&z.im)),
        (false, false) => {
            let sign = if z.im.is_negative() { "-" } else { "+" };
            format!("{}{sign}{}i", format_rational(&z.re), format_rational(&z.im.abs()))
        }
    }
}

fn write_trace(text: &mut String, report: &QuadraticReport, indent: &str) {
    let _ = writeln!(text, "{indent}companion: {}", report.companion);
    match &report.path {
        QuadraticPath::Linear => {
            let _ = writeln!(text, "{indent}leading coefficient is zero: linear equation");
        }
        QuadraticPath::SquareRoot(t) => {
            let candidates: Vec<String> = t.candidates.iter().map(|c| c.to_string()).collect();
            let _ = writeln!(
                text,
                "{indent}square root of w = {}: I_w = {}, t candidates [{}]",
                t.w,
                crate::scalar::format_rational(&t.norm),
                candidates.join(", ")
            );
        }
        QuadraticPath::Divisors(classes) => {
            for c in classes {
                let _ = write!(text, "{indent}class {}:", c.divisor);
                if let (Some((a, d)), Some(set)) = (&c.linear, &c.linear_set) {
                    let _ = write!(text, " S_L({a}, {d}) = {set};");
                }
                let _ = writeln!(text, " in class: {}", c.intersection);
            }
        }
        QuadraticPath::Degenerate(t) => {
            let _ = write!(text, "{indent}companion vanishes identically");
            if let Some(beta) = &t.beta {
                let _ = write!(text, "; beta = {beta}");
            }
            if let Some(gamma) = &t.gamma {
                let _ = write!(text, "; gamma = {gamma}");
            }
            if let Some(failure) = &t.failure {
                let _ = write!(text, "; {failure}");
            }
            let _ = writeln!(text);
        }
    }
}

fn sample_values(set: &SolutionSet, opts: &Options, seed: u64, notes: &mut Vec<String>) -> Vec<SurdQuat> {
    if opts.samples == 0 || set.is_empty() {
        return Vec::new();
    }
    match set.sample(opts.samples, seed) {
        Ok(points) => points,
        Err(e) => {
            notes.push(format!("sampling: {e}"));
            Vec::new()
        }
    }
}

fn set_report(
    command: &'static str,
    inputs: Map<String, Value>,
    set: SolutionSet,
    oracle: Option<Value>,
    opts: &Options,
    seed: u64,
    text: &mut String,
) -> Report {
    let mut notes = Vec::new();
    let samples = sample_values(&set, opts, seed, &mut notes);
    if !samples.is_empty() {
        let _ = writeln!(text, "samples (seed {seed}):");
        for s in &samples {
            let _ = writeln!(text, "  {s}");
        }
    }
    if let Some(o) = &oracle {
        write_oracle(text, o);
    }
    Report {
        command,
        inputs,
        complete: !set.has_unresolved(),
        result: json::solution_set(&set),
        samples: samples.iter().map(json::surd_quat).collect(),
        oracle,
        text: std::mem::take(text),
        notes,
    }
}

/// Compares the grid hits with the exact set.
fn oracle_check(set: &SolutionSet, hits: Result<Vec<Quat>>, grid: &GridSpec) -> Result<Value> {
    let hits = hits?;
    let mut missing = Vec::new();
    let mut undecided = 0usize;
    for h in &hits {
        match set.contains(h) {
            Ok(true) => {}
            Ok(false) => missing.push(json::quat(h)),
            Err(_) => undecided += 1,
        }
    }
    let extra: Vec<Value> = set
        .finite_points()
        .iter()
        .filter_map(|p| p.to_rational())
        .filter(|p| grid.contains(p) && !hits.contains(p))
        .map(|p| json::quat(&p))
        .collect();
    Ok(json!({
        "grid": grid.to_string(),
        "hits": hits.len(),
        "agreement": missing.is_empty() && extra.is_empty(),
        "missing_from_result": missing,
        "not_grid_hits": extra,
        "undecided": undecided,
    }))
}

fn write_oracle(text: &mut String, o: &Value) {
    let _ = writeln!(
        text,
        "oracle on grid {}: {} hits, {}",
        o["grid"].as_str().unwrap_or_default(),
        o["hits"],
        if o["agreement"].as_bool() == Some(true) { "agreement" } else { "DISAGREEMENT" }
    );
    if o["undecided"].as_u64().unwrap_or(0) > 0 {
        let _ = writeln!(text, "  {} hits fall on unresolved pieces", o["undecided"]);
    }
}

fn spectrum_report(
    source: &str,
    s: &LeftSpectrum,
    grid: Option<&GridSpec>,
    opts: &Options,
    seed: u64,
) -> Result<Report> {
    let mut text = format!("matrix: {}\n", s.matrix);
    for record in &s.solves {
        let _ = writeln!(text, "{}: {}", record.source, record.equation);
        if let Some(report) = &record.report {
            write_trace(&mut text, report, "  ");
        }
        let _ = writeln!(text, "  result: {}", record.result);
    }
    if s.is_empty() {
        let _ = writeln!(text, "left spectrum: empty");
    } else {
        let _ = writeln!(text, "left spectrum:");
        for f in &s.families {
            let (p, q) = &f.eigenvalue_map;
            let _ = writeln!(
                text,
                "  [{}] lambda = {p} + ({q})x, v = {}, x in {}",
                f.source, f.vector_shape, f.parameter_set
            );
            let _ = writeln!(text, "    eigenvalues: {}", f.eigenvalues());
        }
        for value in s.finite_eigenvalues() {
            let _ = writeln!(text, "eigenvalue {value}");
            if let Some(lambda) = value.to_rational() {
                for set in s.eigenvectors_of(&lambda) {
                    let vectors: Vec<String> = set
                        .parameters
                        .finite_points()
                        .iter()
                        .map(|x| {
                            let [v1, v2] = set.vector_shape.vector(x);
                            format!("({v1}, {v2})")
                        })
                        .collect();
                    if vectors.is_empty() {
                        let _ = writeln!(text, "  [{}] v = {}, x in {}", set.source, set.vector_shape, set.parameters);
                    } else {
                        let _ = writeln!(text, "  [{}] v = {}", set.source, vectors.join(", "));
                    }
                }
            }
        }
    }
    match &s.completeness {
        crate::spectrum::Completeness::Complete => {
            let _ = writeln!(text, "completeness: complete");
        }
        crate::spectrum::Completeness::PossiblyIncomplete(d) => {
            let _ = writeln!(text, "completeness: possibly incomplete");
            for line in d {
                let _ = writeln!(text, "  {line}");
            }
        }
    }

    let mut notes = Vec::new();
    let mut samples = Vec::new();
    if opts.samples > 0 {
        for (index, family) in s.families.iter().enumerate() {
            match family.sample(opts.samples, seed.wrapping_add(index as u64)) {
                Ok(pairs) => {
                    for (x, lambda, v) in pairs {
                        samples.push((index, x, lambda, v));
                    }
                }
                Err(e) => notes.push(format!("sampling family {}: {e}", family.source)),
            }
        }
    }
    if !samples.is_empty() {
        let _ = writeln!(text, "sampled eigenpairs (seed {seed}):");
        for (index, _, lambda, [v1, v2]) in &samples {
            let _ = writeln!(text, "  [{}] lambda = {lambda}, v = ({v1}, {v2})", s.families[*index].source);
        }
    }

    let oracle = match grid {
        Some(g) => {
            let mut checks = Vec::new();
            for record in &s.solves {
                let hits = match &record.equation {
                    DefiningEquation::Linear { a, d } => brute_linear(a, d, g),
                    DefiningEquation::Quadratic { a, b, c } => brute_quadratic(a, b, c, g),
                };
                let mut check = oracle_check(&record.result, hits, g)?;
                check["source"] = json!(record.source.to_string());
                checks.push(check);
            }
            let agreement = checks.iter().all(|c| c["agreement"].as_bool() == Some(true));
            for c in &checks {
                let _ = write!(text, "[{}] ", c["source"].as_str().unwrap_or_default());
                write_oracle(&mut text, c);
            }
            Some(json!({ "grid": g.to_string(), "agreement": agreement, "solves": checks }))
        }
        None => None,
    };

    Ok(Report {
        command: "spectrum",
        inputs: inputs(&[("matrix", source)]),
        result: json::spectrum(s),
        complete: s.is_complete(),
        samples: samples
            .iter()
            .map(|(index, x, lambda, v)| {
                json!({
                    "family": s.families[*index].source.to_string(),
                    "parameter": json::surd_quat(x),
                    "eigenvalue": json::surd_quat(lambda),
                    "eigenvector": [json::surd_quat(&v[0]), json::surd_quat(&v[1])],
                })
            })
            .collect(),
        oracle,
        text,
        notes,
    })
}

fn render(report: Report, as_json: bool, elapsed_ms: f64) -> Outcome {
    let code = if report.complete { EXIT_OK } else { EXIT_UNRESOLVED };
    let mut stderr = String::new();
    for note in &report.notes {
        let _ = writeln!(stderr, "note: {note}");
    }
    if !report.complete {
        let _ = writeln!(stderr, "warning: result contains unresolved pieces");
    }
    let stdout = if as_json {
        let mut doc = Map::new();
        doc.insert("version".into(), json!(DOCUMENT_VERSION));
        doc.insert("command".into(), json!(report.command));
        doc.insert("inputs".into(), Value::Object(report.inputs));
        doc.insert("result".into(), report.result);
        doc.insert("complete".into(), json!(report.complete));
        doc.insert("samples".into(), Value::Array(report.samples));
        if let Some(o) = report.oracle {
            doc.insert("oracle".into(), o);
        }
        doc.insert("timing_ms".into(), json!(elapsed_ms));
        let mut s = serde_json::to_string_pretty(&Value::Object(doc)).expect("serializable");
        s.push('\n');
        s
    } else {
        report.text
    };
    Outcome { code, stdout, stderr }
}
