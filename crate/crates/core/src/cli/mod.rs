//! Command-line front end: JSON in, deterministic JSON (or DOT) out.
//!
//! Exit codes: `0` success, `2` usage, parse or schema errors, `3`
//! mathematical precondition failures reported by the library.

mod commands;
pub mod expr;
pub mod schema;

use std::ffi::OsString;
use std::io::Read;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};
use thiserror::Error;

use crate::field::Prime;

/// Library operations and the subcommand exposing each of them.
pub const OPERATIONS: &[(&str, &str)] = &[
    ("lognorm", "eval"),
    ("taylor_shift", "eval"),
    ("newton_polygon", "eval"),
    ("count_zeros_in_disk", "supinf"),
    ("resultant", "reduce"),
    ("classify", "classify"),
    ("seminorm_eval", "eval"),
    ("join", "join"),
    ("leq", "join"),
    ("same_direction", "join"),
    ("hull", "hull"),
    ("retract", "retract"),
    ("tube_from_tree", "tube"),
    ("exhaust", "exhaust"),
    ("sup_norm", "supinf"),
    ("inf_norm", "supinf"),
    ("normalize_lift", "reduce"),
    ("apply_rigid", "push"),
    ("pushforward", "push"),
    ("reduce_map", "reduce"),
    ("tangent_map_at_gauss", "reduce"),
    ("chordal", "chordal"),
    ("orbit", "orbit"),
    ("equicontinuity_probe", "probe-equi"),
    ("make_context", "green-eval"),
    ("green_eval", "green-eval"),
    ("green_cauchy_check", "green-gaps"),
    ("bounded_lift_probe", "probe-lift"),
    ("harm_eval", "harm-eval"),
    ("harm_approx", "harm-approx"),
    ("alpha_of", "alpha"),
    ("is_rigid", "alpha"),
    ("limit_of_rigid_sequence", "limit-demo"),
    ("ev_norm", "ev"),
    ("ev_point_s1", "ev"),
    ("montel_limit_demo", "limit-demo"),
    ("run", "*"),
];

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input at `{path}`: {msg}")]
    Schema { path: String, msg: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Math(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Schema { .. } | CliError::Usage(_) => 2,
            CliError::Math(_) => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Debug, Parser)]
#[command(
    name = "berkdyn",
    version,
    about = "Exact computations on the Berkovich projective line"
)]
pub struct Cli {
    /// Residue characteristic p
    #[arg(long, env = "BERKDYN_PRIME", global = true)]
    pub prime: Option<u64>,
    /// Read the JSON request from a file (`-` for stdin)
    #[arg(long, global = true)]
    pub input: Option<PathBuf>,
    /// Write the report to a file instead of stdout
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Indent the JSON report
    #[arg(long, global = true)]
    pub pretty: bool,
    #[command(subcommand)]
    pub command: Command,
}

/// Request fields; flags override keys of the inline or file JSON.
#[derive(Debug, Clone, Args)]
pub struct Request {
    /// Inline JSON request
    pub json: Option<String>,
    #[arg(long)]
    pub map: Option<String>,
    #[arg(long)]
    pub point: Option<String>,
    #[arg(long)]
    pub poly: Option<String>,
    #[arg(long)]
    pub eps: Option<String>,
    #[arg(long)]
    pub nmax: Option<String>,
    /// Any other field, as KEY=VALUE
    #[arg(long = "set", value_name = "KEY=VALUE")]
    pub set: Vec<String>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Type of a point
    Classify(Request),
    /// Absolute values, Taylor shifts, Newton polygons, seminorms
    Eval(Request),
    /// Join and order of two points, or comparison of tangent directions
    Join(Request),
    /// Convex hull of type II points
    Hull(Request),
    /// Retraction onto the hull of a point set
    Retract(Request),
    /// Basic tube of the hull of a point set
    Tube(Request),
    /// Exhaustion level of a basic tube
    Exhaust(Request),
    /// Sup and inf norms on an affinoid, zero counts in a disk
    Supinf(Request),
    /// Image of a point under a map of the line
    Push(Request),
    /// Forward orbit of a point
    Orbit(Request),
    /// Normalized lift, resultant, reduction and tangent map at the Gauss point
    Reduce(Request),
    /// Chordal distance between two points
    Chordal(Request),
    /// Green function value to a given accuracy
    GreenEval(Request),
    /// Successive differences of the Green approximants
    GreenGaps(Request),
    /// Bounded-lift probe on an affinoid
    ProbeLift(Request),
    /// Sampled equicontinuity probe near a rigid point
    ProbeEqui(Request),
    /// Value of a harmonic function on a tube
    HarmEval(Request),
    /// Approximation of a harmonic function by log|h|
    HarmApprox(Request),
    /// Coefficient point of a polynomial map
    Alpha(Request),
    /// Evaluation seminorms at a coefficient point
    Ev(Request),
    /// Limits of rigid sequences and families of maps
    LimitDemo(Request),
}

impl Command {
    fn parts(&self) -> (&'static str, &Request) {
        match self {
            Command::Classify(r) => ("classify", r),
            Command::Eval(r) => ("eval", r),
            Command::Join(r) => ("join", r),
            Command::Hull(r) => ("hull", r),
            Command::Retract(r) => ("retract", r),
            Command::Tube(r) => ("tube", r),
            Command::Exhaust(r) => ("exhaust", r),
            Command::Supinf(r) => ("supinf", r),
            Command::Push(r) => ("push", r),
            Command::Orbit(r) => ("orbit", r),
            Command::Reduce(r) => ("reduce", r),
            Command::Chordal(r) => ("chordal", r),
            Command::GreenEval(r) => ("green-eval", r),
            Command::GreenGaps(r) => ("green-gaps", r),
            Command::ProbeLift(r) => ("probe-lift", r),
            Command::ProbeEqui(r) => ("probe-equi", r),
            Command::HarmEval(r) => ("harm-eval", r),
            Command::HarmApprox(r) => ("harm-approx", r),
            Command::Alpha(r) => ("alpha", r),
            Command::Ev(r) => ("ev", r),
            Command::LimitDemo(r) => ("limit-demo", r),
        }
    }
}

/// A finished report.
pub enum Report {
    Json(Value),
    Text(String),
}

/// Flag values are JSON when they parse as JSON, else plain strings.
fn flag_value(s: &str) -> Value {
    serde_json::from_str(s).unwrap_or_else(|_| Value::String(s.to_string()))
}

fn read_input(cli: &Cli, req: &Request) -> Result<Value, CliError> {
    let text = match (&req.json, &cli.input) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage(
                "give either inline JSON or --input, not both".into(),
            ))
        }
        (Some(s), None) => Some(s.clone()),
        (None, Some(path)) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Usage(format!("cannot read stdin: {e}")))?;
            Some(s)
        }
        (None, Some(path)) => Some(
            std::fs::read_to_string(path)
                .map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?,
        ),
        (None, None) => None,
    };
    let mut value = match text {
        Some(t) => serde_json::from_str(&t).map_err(|e| CliError::Schema {
            path: ".".into(),
            msg: e.to_string(),
        })?,
        None => Value::Object(Map::new()),
    };
    let mut overrides: Vec<(String, Value)> = Vec::new();
    for (key, v) in [
        ("map", &req.map),
        ("point", &req.point),
        ("poly", &req.poly),
        ("eps", &req.eps),
        ("nmax", &req.nmax),
    ] {
        if let Some(v) = v {
            overrides.push((key.to_string(), flag_value(v)));
        }
    }
    for kv in &req.set {
        let (k, v) = kv
            .split_once('=')
            .ok_or_else(|| CliError::Usage(format!("--set expects KEY=VALUE, got {kv:?}")))?;
        overrides.push((k.to_string(), flag_value(v)));
    }
    if !overrides.is_empty() {
        let obj = value.as_object_mut().ok_or_else(|| CliError::Schema {
            path: ".".into(),
            msg: "expected a JSON object".into(),
        })?;
        obj.extend(overrides);
    }
    Ok(value)
}

fn resolve_prime(flag: Option<u64>, input: &mut Value) -> Result<Prime, CliError> {
    let from_input = match input.as_object_mut().and_then(|o| o.remove("prime")) {
        Some(v) => Some(
            serde_json::from_value::<schema::Count>(v)
                .map_err(|e| CliError::Schema {
                    path: "prime".into(),
                    msg: e.to_string(),
                })?
                .0,
        ),
        None => None,
    };
    let p = flag.or(from_input).ok_or_else(|| {
        CliError::Usage(
            "the prime is required: pass --prime, set BERKDYN_PRIME, or give \"prime\"".into(),
        )
    })?;
    Prime::new(p).map_err(|e| CliError::Usage(e.to_string()))
}

/// Runs a parsed command and returns the rendered report.
pub fn run(cli: &Cli) -> Result<String, CliError> {
    let (name, req) = cli.command.parts();
    let mut input = read_input(cli, req)?;
    let p = resolve_prime(cli.prime, &mut input)?;
    if cli.format == Format::Dot && name != "hull" {
        return Err(CliError::Usage(
            "DOT output is only available for `hull`".into(),
        ));
    }
    let report = commands::dispatch(name, p, input, cli.format)?;
    Ok(match report {
        Report::Text(t) => t,
        Report::Json(v) => {
            let mut s = if cli.pretty {
                serde_json::to_string_pretty(&v)
            } else {
                serde_json::to_string(&v)
            }
            .expect("JSON values serialize");
            s.push('\n');
            s
        }
    })
}

/// Captured result of a full invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn invoke<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match run(&cli) {
        Ok(out) => match &cli.output {
            Some(path) => match std::fs::write(path, &out) {
                Ok(()) => Outcome {
                    code: 0,
                    stdout: String::new(),
                    stderr: String::new(),
                },
                Err(e) => Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: format!("error: cannot write {}: {e}\n", path.display()),
                },
            },
            None => Outcome {
                code: 0,
                stdout: out,
                stderr: String::new(),
            },
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

/// Entry point for the binary.
pub fn main() -> i32 {
    let out = invoke(std::env::args_os());
    print!("{}", out.stdout);
    eprint!("{}", out.stderr);
    out.code
}
