//! Command-line front end: `compute`, `verify` and `demo`.
//!
//! Exit codes: 0 success, 1 a verification check failed, 2 bad configuration,
//! 3 numerical failure.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Deserialize;

use crate::error::MoprlError;
use crate::mop::MopSequence;
use crate::verify::{verify, Suite, VerificationReport};
use crate::weights::{Family, WeightSpec, FAMILY_NAMES};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;

const DEFAULT_NMAX: usize = 6;
const DEFAULT_TOL: f64 = 1e-12;
const DEFAULT_DIM: usize = 2;
const DEMO_FAMILIES: [&str; 4] = ["hermite-a", "hermite-b", "freud-a", "freud-b"];

#[derive(Parser, Debug)]
#[command(name = "moprl", version, about = "Matrix orthogonal polynomials on the real line")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Subcommand, Debug)]
pub enum CliCommand {
    /// Build the coefficient ledger and write it as JSON.
    Compute(RunArgs),
    /// Run the identity checks and write the report as JSON.
    Verify(RunArgs),
    /// Verify the four built-in families at N = 2, n_max = 5 and print a table.
    Demo(RunArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct RunArgs {
    /// scalar-hermite, hermite-a, hermite-b, freud-a, freud-b, poly-u or custom
    #[arg(long)]
    pub family: Option<String>,
    /// JSON file with the family parameters, e.g. `{"A": <matrix>}` or a bare matrix
    #[arg(long)]
    pub params: Option<PathBuf>,
    /// Matrix size for built-in parameters when no parameter file is given
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long)]
    pub nmax: Option<usize>,
    /// Quadrature tolerance
    #[arg(long)]
    pub tol: Option<f64>,
    /// Seed for the random sample points
    #[arg(long)]
    pub seed: Option<u64>,
    /// Output file; standard output when absent
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// `all` or a comma-separated list of check names
    #[arg(long)]
    pub suite: Option<String>,
    /// JSON file with any of the above keys; flags take precedence
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Keys accepted in a `--config` file.
#[derive(Deserialize, Debug, Default)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    family: Option<String>,
    params: Option<PathBuf>,
    dim: Option<usize>,
    nmax: Option<usize>,
    tol: Option<f64>,
    seed: Option<u64>,
    out: Option<PathBuf>,
    suite: Option<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Compute,
    Verify,
    Demo,
}

/// A validated run.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub command: Command,
    pub spec: WeightSpec,
    pub n_max: usize,
    pub tol: f64,
    pub seed: u64,
    pub out: Option<PathBuf>,
    pub suite: Suite,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("numerical failure: {0}")]
    Numerical(MoprlError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Numerical(_) => EXIT_NUMERICAL,
        }
    }
}

fn config_err(e: impl std::fmt::Display) -> CliError {
    CliError::Config(e.to_string())
}

/// Input errors are configuration problems; everything else is numerical.
fn classify(e: MoprlError) -> CliError {
    match e {
        MoprlError::InvalidArgument(_) | MoprlError::Json(_) | MoprlError::Io(_) | MoprlError::DimensionMismatch { .. } => {
            CliError::Config(e.to_string())
        }
        other => CliError::Numerical(other),
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| config_err(format!("{}: {e}", path.display())))
}

/// Parameters as a full family object, an object without the `family` tag,
/// or a bare matrix for single-matrix families.
fn spec_from_params(family: &str, text: &str) -> Result<WeightSpec, CliError> {
    let mut value: serde_json::Value = serde_json::from_str(text).map_err(config_err)?;
    let key = match family {
        "hermite-a" | "freud-a" => Some("A"),
        "hermite-b" | "freud-b" => Some("B"),
        _ => None,
    };
    let is_matrix = value.get("dim").is_some() && value.get("entries").is_some();
    if is_matrix {
        let key = key.ok_or_else(|| config_err(format!("a bare matrix is not enough parameters for {family}")))?;
        value = serde_json::json!({ key: value });
    }
    match value.as_object_mut() {
        Some(obj) => match obj.get("family").and_then(|f| f.as_str()) {
            Some(tag) if tag != family => {
                return Err(config_err(format!("parameter file is for '{tag}', not '{family}'")));
            }
            Some(_) => {}
            None => {
                obj.insert("family".into(), family.into());
            }
        },
        None => return Err(config_err("parameter file must hold a JSON object")),
    }
    let fam: Family = serde_json::from_value(value).map_err(config_err)?;
    WeightSpec::new(fam).map_err(classify)
}

impl RunConfig {
    /// Merges `--config`, validates everything and builds the weight; no
    /// moments are computed here.
    pub fn from_args(command: Command, args: &RunArgs) -> Result<Self, CliError> {
        let file: ConfigFile = match &args.config {
            Some(p) => serde_json::from_str(&read_file(p)?).map_err(config_err)?,
            None => ConfigFile::default(),
        };
        let n_max = args.nmax.or(file.nmax).unwrap_or(DEFAULT_NMAX);
        if n_max < 1 {
            return Err(config_err("--nmax must be at least 1"));
        }
        let tol = args.tol.or(file.tol).unwrap_or(DEFAULT_TOL);
        if !(1e-14..=1e-4).contains(&tol) {
            return Err(config_err(format!("--tol must lie in [1e-14, 1e-4], got {tol:e}")));
        }
        let suite = Suite::parse(args.suite.as_deref().or(file.suite.as_deref()).unwrap_or("all")).map_err(classify)?;
        let family = args.family.clone().or(file.family).unwrap_or_else(|| "hermite-a".into());
        if !FAMILY_NAMES.contains(&family.as_str()) {
            return Err(config_err(format!("unknown family '{family}'; expected one of {}", FAMILY_NAMES.join(", "))));
        }
        let params = args.params.clone().or(file.params);
        let dim = args.dim.or(file.dim);
        let spec = match params {
            Some(p) => spec_from_params(&family, &read_file(&p)?)?,
            None => {
                let dim = dim.unwrap_or(if family == "scalar-hermite" {
                    1
                } else if family == "poly-u" {
                    4
                } else {
                    DEFAULT_DIM
                });
                WeightSpec::builtin(&family, dim).map_err(classify)?
            }
        };
        if let Some(d) = dim {
            if d != spec.dim() {
                return Err(config_err(format!("--dim {d} disagrees with the parameters (N = {})", spec.dim())));
            }
        }
        Ok(Self {
            command,
            spec,
            n_max,
            tol,
            seed: args.seed.or(file.seed).unwrap_or(0),
            out: args.out.clone().or(file.out),
            suite,
        })
    }
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => std::fs::write(p, text).map_err(|e| config_err(format!("{}: {e}", p.display()))),
        None => writeln!(stdout, "{text}").map_err(config_err),
    }
}

fn build(cfg: &RunConfig) -> Result<MopSequence, CliError> {
    MopSequence::build(&cfg.spec, cfg.n_max, cfg.tol).map_err(classify)
}

/// One row of the demo table.
#[derive(Clone, Debug)]
pub struct DemoRow {
    pub family: String,
    pub checks: usize,
    pub passed: usize,
    pub skipped: usize,
    /// Largest `residual / tol` among non-skipped checks.
    pub worst_ratio: f64,
    pub worst_check: String,
}

impl DemoRow {
    fn from_report(r: &VerificationReport) -> Self {
        let active = r.checks.iter().filter(|c| !c.skipped);
        let worst = active
            .map(|c| (c.residual / c.tol, c.name.clone()))
            .fold((0.0, String::from("-")), |a, b| if b.0 > a.0 || b.0.is_nan() { b } else { a });
        Self {
            family: r.family.clone(),
            checks: r.checks.len(),
            passed: r.checks.iter().filter(|c| c.pass).count(),
            skipped: r.checks.iter().filter(|c| c.skipped).count(),
            worst_ratio: worst.0,
            worst_check: worst.1,
        }
    }
}

/// Verification reports for the four built-in families at `N = 2`, `n_max = 5`.
pub fn demo_reports(tol: f64, seed: u64, suite: &Suite) -> Result<Vec<VerificationReport>, CliError> {
    DEMO_FAMILIES
        .iter()
        .map(|name| {
            let spec = WeightSpec::builtin(name, 2).map_err(classify)?;
            let seq = MopSequence::build(&spec, 5, tol).map_err(classify)?;
            Ok(verify(&seq, suite, seed))
        })
        .collect()
}

pub fn demo_table(reports: &[VerificationReport]) -> String {
    let mut s = format!(
        "{:<10} {:>6} {:>6} {:>7} {:>12}  {}\n",
        "family", "checks", "pass", "skipped", "max res/tol", "at"
    );
    for row in reports.iter().map(DemoRow::from_report) {
        s.push_str(&format!(
            "{:<10} {:>6} {:>6} {:>7} {:>12.3e}  {}\n",
            row.family, row.checks, row.passed, row.skipped, row.worst_ratio, row.worst_check
        ));
    }
    s
}

/// Runs a validated configuration, writing artifacts and returning the exit code.
pub fn run(cfg: &RunConfig, stdout: &mut dyn Write) -> Result<i32, CliError> {
    match cfg.command {
        Command::Compute => {
            let seq = build(cfg)?;
            emit(&cfg.out, &seq.ledger().to_json().map_err(classify)?, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Verify => {
            let seq = build(cfg)?;
            let report = verify(&seq, &cfg.suite, cfg.seed);
            emit(&cfg.out, &report.to_json().map_err(classify)?, stdout)?;
            for c in report.failures() {
                eprintln!("FAIL {} residual {:e} > tol {:e}", c.name, c.residual, c.tol);
            }
            Ok(if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Demo => {
            let reports = demo_reports(cfg.tol, cfg.seed, &cfg.suite)?;
            let table = demo_table(&reports);
            emit(&cfg.out, table.trim_end(), stdout)?;
            Ok(if reports.iter().all(VerificationReport::all_pass) { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("MOPRL_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n >= 1)
        .ok_or_else(|| config_err(format!("MOPRL_THREADS must be a positive integer, got '{v}'")))?;
    // a pool built earlier in the same process keeps its size
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// Parses `args` (including the program name) and runs; returns the exit code.
pub fn main_with_args<I, T>(args: I, stdout: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_CONFIG } else { EXIT_OK };
        }
    };
    let (command, args) = match &cli.command {
        CliCommand::Compute(a) => (Command::Compute, a),
        CliCommand::Verify(a) => (Command::Verify, a),
        CliCommand::Demo(a) => (Command::Demo, a),
    };
    let outcome = configure_threads()
        .and_then(|_| RunConfig::from_args(command, args))
        .and_then(|cfg| run(&cfg, stdout));
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("moprl: {e}");
            e.exit_code()
        }
    }
}
