//! Job specifications, dispatch, caching and the verification suite behind
//! the `tropvertex` command.
//!
//! Every job produces a JSON document of the form
//! `{"version", "job", "seeds", "result"}`. Exact quantities are emitted as
//! canonical strings. Identical job specifications produce byte-identical
//! documents.

pub mod args;
pub mod cache;
pub mod verify;

use std::path::PathBuf;

use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use thiserror::Error;

use tropvertex::realenum::{self, RealEnumError};
use tropvertex::scattering::{factor_commutator, Ordering, ScatteringError};
use tropvertex::tropical::{
    invariants, random_config, ConstraintConfig, InvariantValues, TropicalError, TropicalProblem,
};
use tropvertex::{Evaluation, Mode};

/// Default truncation order.
pub const DEFAULT_ORDER: u32 = 6;
/// Number of fresh configurations tried after a non-generic one.
pub const RETRY_BUDGET: u64 = 20;
/// Default base seed.
pub const DEFAULT_SEED: u64 = 1;

/// Process exit statuses.
pub mod exit {
    pub const OK: i32 = 0;
    pub const INPUT: i32 = 1;
    pub const INTERNAL: i32 = 2;
    pub const NON_GENERIC: i32 = 3;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("input error: {0}")]
    Input(String),
    #[error("internal check failed: {0}")]
    Internal(String),
    #[error("no generic configuration for seed {seed} after {budget} resamples")]
    NonGenericExhausted { seed: u64, budget: u64 },
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) | CliError::Io(_) => exit::INPUT,
            CliError::Internal(_) => exit::INTERNAL,
            CliError::NonGenericExhausted { .. } => exit::NON_GENERIC,
        }
    }
}

impl From<TropicalError> for CliError {
    fn from(e: TropicalError) -> Self {
        match e {
            TropicalError::InvalidProblem(_) | TropicalError::ShapeMismatch { .. } => CliError::Input(e.to_string()),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<ScatteringError> for CliError {
    fn from(e: ScatteringError) -> Self {
        match e {
            ScatteringError::VertexGroup(tropvertex::vertexgroup::VertexGroupError::InvalidLevel(_)) => {
                CliError::Input(e.to_string())
            }
            _ => CliError::Internal(e.to_string()),
        }
    }
}

impl From<RealEnumError> for CliError {
    fn from(e: RealEnumError) -> Self {
        match e {
            RealEnumError::Tropical(t) => t.into(),
            _ => CliError::Internal(e.to_string()),
        }
    }
}

/// The computation requested; its canonical JSON defines the cache key.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    Scatter { l1: i64, l2: i64, mode: Mode, order: u32, ordering: Ordering },
    Count { problem: TropicalProblem, seed: u64, seeds: u64 },
    Spectrum { problem: TropicalProblem, seed: u64 },
    MinusOne { problem: TropicalProblem, seed: u64 },
    Verify,
}

/// A validated command plus how to run it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub command: Command,
    pub output: Option<PathBuf>,
    pub use_cache: bool,
    pub jobs: Option<usize>,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        Self { command, output: None, use_cache: true, jobs: None }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        match &self.command {
            Command::Scatter { l1, l2, order, .. } => {
                if *l1 < 1 || *l2 < 1 {
                    return Err(CliError::Input(format!("levels must be positive, got ({l1}, {l2})")));
                }
                if *order < 1 {
                    return Err(CliError::Input("order must be at least 1".into()));
                }
            }
            Command::Count { problem, seeds, .. } => {
                problem.validate()?;
                if *seeds < 1 {
                    return Err(CliError::Input("need at least one seed".into()));
                }
            }
            Command::Spectrum { problem, .. } | Command::MinusOne { problem, .. } => problem.validate()?,
            Command::Verify => {}
        }
        if self.jobs == Some(0) {
            return Err(CliError::Input("--jobs must be positive".into()));
        }
        Ok(())
    }

    /// Canonical serialization of the command.
    pub fn canonical(&self) -> String {
        serde_json::to_string(&self.command).expect("command serializes")
    }
}

/// Parses a problem given as JSON, also accepting unquoted keys such as
/// `{a:1,b:1,k:1,alpha:[1],alpha_prime:[1]}`.
pub fn parse_problem(text: &str) -> Result<TropicalProblem, CliError> {
    let key = Regex::new(r#"([{,]\s*)([A-Za-z_][A-Za-z0-9_]*)\s*:"#).expect("static regex");
    let quoted = key.replace_all(text, r#"$1"$2":"#);
    let p: TropicalProblem =
        serde_json::from_str(&quoted).map_err(|e| CliError::Input(format!("cannot parse problem `{text}`: {e}")))?;
    p.validate()?;
    Ok(p)
}

/// The configuration actually used for a requested seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeedUse {
    pub requested: u64,
    pub used: u64,
}

fn resample_seed(seed: u64, attempt: u64) -> u64 {
    seed.wrapping_add(attempt.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Computes the invariants for `seed`, moving to a fresh configuration up
/// to [`RETRY_BUDGET`] times when the configuration is not generic.
pub fn invariants_with_retry(
    p: &TropicalProblem,
    seed: u64,
) -> Result<(SeedUse, ConstraintConfig, InvariantValues), CliError> {
    for attempt in 0..=RETRY_BUDGET {
        let used = resample_seed(seed, attempt);
        let cfg = random_config(p, used);
        match invariants(p, &cfg) {
            Ok(v) => return Ok((SeedUse { requested: seed, used }, cfg, v)),
            Err(TropicalError::NonGeneric) => continue,
            Err(e) => return Err(e.into()),
        }
    }
    Err(CliError::NonGenericExhausted { seed, budget: RETRY_BUDGET })
}

fn envelope(spec: &JobSpec, seeds: &[SeedUse], result: Value) -> Value {
    json!({
        "version": tropvertex::VERSION,
        "job": serde_json::to_value(&spec.command).expect("command serializes"),
        "seeds": seeds,
        "result": result,
    })
}

fn evaluation_json(e: &Evaluation) -> Value {
    match e {
        Evaluation::Value(v) => Value::String(v.to_string()),
        Evaluation::Pole => Value::Null,
    }
}

fn run_scatter(
    spec: &JobSpec,
    l1: i64,
    l2: i64,
    mode: Mode,
    order: u32,
    ordering: Ordering,
) -> Result<Value, CliError> {
    let r = factor_commutator(l1, l2, mode, order, ordering)?;
    Ok(envelope(spec, &[], serde_json::to_value(r.record()).expect("record serializes")))
}

fn run_count(spec: &JobSpec, p: &TropicalProblem, seed: u64, n: u64) -> Result<Value, CliError> {
    let mut uses = Vec::new();
    let mut values = Vec::new();
    let mut first_curves = Vec::new();
    for i in 0..n {
        let (u, cfg, v) = invariants_with_retry(p, seed + i)?;
        if i == 0 {
            first_curves = v.curves.iter().map(|c| c.record()).collect();
        }
        values.push((cfg, v.classical, v.refined));
        uses.push(u);
    }
    let consistent = values.windows(2).all(|w| w[0].2 == w[1].2 && w[0].1 == w[1].1);
    let (_, classical, refined) = &values[0];
    let per_seed: Vec<Value> = values
        .iter()
        .zip(&uses)
        .map(|((cfg, c, r), u)| json!({"seed": u.used, "config": cfg, "classical": c.to_string(), "refined": r.to_string()}))
        .collect();
    let doc = envelope(
        spec,
        &uses,
        json!({
            "problem": p,
            "classical": classical.to_string(),
            "refined": refined.to_string(),
            "invariance": {"consistent": consistent, "per_seed": per_seed},
            "curves": first_curves,
        }),
    );
    if !consistent {
        return Err(CliError::Internal(format!("refined invariant depends on the configuration: {doc}")));
    }
    Ok(doc)
}

fn run_spectrum(spec: &JobSpec, p: &TropicalProblem, seed: u64) -> Result<Value, CliError> {
    let (u, _, v) = invariants_with_retry(p, seed)?;
    let rhs = realenum::spectrum_rhs(p, &v.refined)?;
    let entries = realenum::welschinger_spectrum(p, &v.refined)?;
    Ok(envelope(
        spec,
        &[u],
        json!({
            "problem": p,
            "refined": v.refined.to_string(),
            "rhs": rhs.to_string(),
            "spectrum": entries,
        }),
    ))
}

fn run_minus_one(spec: &JobSpec, p: &TropicalProblem, seed: u64) -> Result<Value, CliError> {
    let (u, _, v) = invariants_with_retry(p, seed)?;
    let symbolic = realenum::eval_minus_one(&v);
    let result = match realenum::minus_one_from_invariants(p, v.clone()) {
        Ok(r) => json!({
            "problem": p,
            "refined": v.refined.to_string(),
            "value": evaluation_json(&r.value),
            "wc0": r.wc0.map(|w| w.to_string()),
            "diverges": false,
            "structural": {
                "per_curve": r.per_curve.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                "imaginary_curves": r.imaginary_curves,
            },
        }),
        // outside the hypotheses of the structural formula only the symbolic
        // value is reported
        Err(RealEnumError::HypothesisViolation { .. }) => json!({
            "problem": p,
            "refined": v.refined.to_string(),
            "value": evaluation_json(&symbolic),
            "wc0": null,
            "diverges": symbolic.is_pole(),
            "structural": null,
        }),
        Err(e) => return Err(e.into()),
    };
    Ok(envelope(spec, &[u], result))
}

/// Runs the job and returns the document. Does not consult the cache.
pub fn execute(spec: &JobSpec) -> Result<Value, CliError> {
    spec.validate()?;
    let work = || match &spec.command {
        Command::Scatter { l1, l2, mode, order, ordering } => run_scatter(spec, *l1, *l2, *mode, *order, *ordering),
        Command::Count { problem, seed, seeds } => run_count(spec, problem, *seed, *seeds),
        Command::Spectrum { problem, seed } => run_spectrum(spec, problem, *seed),
        Command::MinusOne { problem, seed } => run_minus_one(spec, problem, *seed),
        Command::Verify => {
            let report = verify::run_all();
            let doc = envelope(spec, &[], serde_json::to_value(&report).expect("report serializes"));
            if report.all_passed() {
                Ok(doc)
            } else {
                Err(CliError::Internal(render(&doc)))
            }
        }
    };
    match spec.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build()
            .map_err(|e| CliError::Internal(e.to_string()))?
            .install(work),
        None => work(),
    }
}

/// Pretty JSON with a trailing newline.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("value serializes");
    s.push('\n');
    s
}

/// Outcome of [`run`]: exit status and the bytes to emit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: i32,
    pub output: String,
    pub error: Option<String>,
}

/// Executes `spec`, using the result cache unless disabled or verifying,
/// and writes the document to the output path if one is given.
pub fn run(spec: &JobSpec) -> Outcome {
    let cacheable = spec.use_cache && spec.command != Command::Verify;
    let key = cache::cache_key(spec);
    let cached = if cacheable { cache::load(&key) } else { None };
    let result = match cached {
        Some(text) => Ok(text),
        None => execute(spec).map(|doc| {
            let text = render(&doc);
            if cacheable {
                // a cache that cannot be written only costs recomputation
                let _ = cache::store(&key, &text);
            }
            text
        }),
    };
    let outcome = match result {
        Ok(text) => Outcome { exit_code: exit::OK, output: text, error: None },
        Err(CliError::Internal(msg)) if spec.command == Command::Verify => {
            Outcome { exit_code: exit::INTERNAL, output: msg, error: Some("verification failed".into()) }
        }
        Err(e) => Outcome { exit_code: e.exit_code(), output: String::new(), error: Some(e.to_string()) },
    };
    if let (Some(path), false) = (&spec.output, outcome.output.is_empty()) {
        if let Err(e) = std::fs::write(path, &outcome.output) {
            return Outcome { exit_code: exit::INPUT, output: outcome.output, error: Some(e.to_string()) };
        }
    }
    outcome
}

/// Runs a whole command line; returns the exit status.
pub fn main_with_args<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let spec = match args::parse(argv) {
        Ok(spec) => spec,
        Err(args::ArgsError::Clap(e)) => {
            let code = if e.use_stderr() { exit::INPUT } else { exit::OK };
            let _ = e.print();
            return code;
        }
        Err(args::ArgsError::Cli(e)) => {
            eprintln!("error: {e}");
            return e.exit_code();
        }
    };
    let outcome = run(&spec);
    if spec.output.is_none() {
        print!("{}", outcome.output);
    }
    if let Some(e) = &outcome.error {
        eprintln!("error: {e}");
    }
    outcome.exit_code
}
