//! Command-line front end: `simulate-radial`, `simulate-dunkl`, `density`
//! and `validate`.
//!
//! CSV output starts with `# key=value` metadata lines, then a header row.
//! JSON output is an object with a `metadata` member, except for
//! `validate`, which prints an array of reports. Numbers are written in the
//! shortest form that parses back to the same `f64`, so identical runs give
//! identical bytes.
//!
//! Exit codes: 0 success, 1 internal error or a failed validation, 2 invalid
//! input. A report refused because its quantity is infinite (the
//! compensator at `k = ½`) is the expected outcome and does not count as a
//! failure.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::alcove::AlcovePoint;
use crate::error::Error;
use crate::multiplicity::Multiplicity;
use crate::radial::{simulate_radial, StepPolicy};
use crate::rng::PathSeed;
use crate::skew_product::simulate_affine_dunkl;
use crate::spectral::{SpectralTruncation, TransitionKernel};
use crate::validate::{run_suite, Suite, SuiteOptions, DEFAULT_SEED};

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Parser)]
#[command(name = "affine-dunkl", version, about = "Affine Dunkl process of type A1-tilde")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Simulate one radial path: CSV `t,x,eta`.
    SimulateRadial(SimulateArgs),
    /// Simulate the jump process on a uniform grid: CSV `t,y`, plus the jumps.
    SimulateDunkl(DunklArgs),
    /// Tabulate the radial transition density: CSV `y,q`.
    Density(DensityArgs),
    /// Run validation suites and print the reports as a JSON array.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Args)]
pub struct StepArgs {
    /// Largest time step.
    #[arg(long, default_value_t = 1e-3)]
    pub h_max: f64,
    /// Step factor c in h = min(h_max, c·d²).
    #[arg(long = "step-c", default_value_t = 0.1)]
    pub step_c: f64,
}

impl StepArgs {
    fn policy(&self) -> StepPolicy {
        StepPolicy { h_max: self.h_max, c: self.step_c }
    }
}

#[derive(Debug, Clone, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub k: f64,
    #[arg(long, default_value_t = 0.5)]
    pub x0: f64,
    #[arg(long, default_value_t = 1.0)]
    pub t_end: f64,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Index of the path within the seed's family.
    #[arg(long, default_value_t = 0)]
    pub path: u64,
    #[command(flatten)]
    pub step: StepArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Output file (standard output when absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct DunklArgs {
    #[command(flatten)]
    pub sim: SimulateArgs,
    /// Spacing of the output grid.
    #[arg(long, default_value_t = 0.01)]
    pub dt: f64,
    /// Jumps file; defaults to the output path with `.jumps.csv` appended.
    #[arg(long)]
    pub jumps_out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct TruncationArgs {
    #[arg(long, default_value_t = SpectralTruncation::default().max_terms)]
    pub max_terms: usize,
    #[arg(long, default_value_t = SpectralTruncation::default().term_tol)]
    pub term_tol: f64,
    #[arg(long, default_value_t = SpectralTruncation::default().t_min)]
    pub t_min: f64,
}

impl TruncationArgs {
    fn truncation(&self) -> SpectralTruncation {
        SpectralTruncation { max_terms: self.max_terms, term_tol: self.term_tol, t_min: self.t_min }
    }
}

#[derive(Debug, Clone, Args)]
pub struct DensityArgs {
    #[arg(long)]
    pub k: f64,
    /// Starting point.
    #[arg(long)]
    pub x: f64,
    #[arg(long)]
    pub t: f64,
    /// Number of cell midpoints in the alcove of `x`.
    #[arg(long, default_value_t = 512)]
    pub grid: usize,
    #[command(flatten)]
    pub truncation: TruncationArgs,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Identities,
    Density,
    Martingale,
    Compensator,
    Jumps,
    Generator,
    Confinement,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Identities => Suite::Identities,
            SuiteArg::Density => Suite::Density,
            SuiteArg::Martingale => Suite::Martingale,
            SuiteArg::Compensator => Suite::Compensator,
            SuiteArg::Jumps => Suite::Jumps,
            SuiteArg::Generator => Suite::Generator,
            SuiteArg::Confinement => Suite::Confinement,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[arg(long, value_enum, default_value_t = SuiteArg::All)]
    pub suite: SuiteArg,
    /// Overrides the path count of every Monte Carlo check.
    #[arg(long)]
    pub paths: Option<u64>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("{0}")]
    Library(#[from] Error),
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("{failed} of {total} validation reports did not pass")]
    ValidationFailed { failed: usize, total: usize },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invalid(_) => 2,
            CliError::Library(e) if e.is_invalid_input() => 2,
            _ => 1,
        }
    }
}

fn invalid(msg: impl Into<String>) -> CliError {
    CliError::Invalid(msg.into())
}

fn check_positive(name: &str, v: f64) -> Result<(), CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(invalid(format!("--{name} must be a positive number, got {v}")))
    }
}

impl SimulateArgs {
    /// Checks every numeric flag before anything is simulated.
    fn validate(&self) -> Result<Multiplicity, CliError> {
        let k = Multiplicity::new(self.k)?;
        AlcovePoint::from_value(self.x0)?;
        if !(self.t_end >= 0.0 && self.t_end.is_finite()) {
            return Err(invalid(format!("--t-end must be nonnegative, got {}", self.t_end)));
        }
        self.step.policy().validate()?;
        Ok(k)
    }

    fn metadata(&self, command: &str) -> Vec<(&'static str, Value)> {
        vec![
            ("version", json!(VERSION)),
            ("command", json!(command)),
            ("k", json!(self.k)),
            ("x0", json!(self.x0)),
            ("t_end", json!(self.t_end)),
            ("seed", json!(self.seed)),
            ("path", json!(self.path)),
            ("h_max", json!(self.step.h_max)),
            ("step_c", json!(self.step.step_c)),
        ]
    }
}

fn open_output(path: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_csv(
    out: &mut dyn Write,
    metadata: &[(&str, Value)],
    header: &str,
    rows: impl Iterator<Item = Vec<String>>,
) -> io::Result<()> {
    for (key, value) in metadata {
        match value {
            Value::String(s) => writeln!(out, "# {key}={s}")?,
            v => writeln!(out, "# {key}={v}")?,
        }
    }
    writeln!(out, "{header}")?;
    for row in rows {
        writeln!(out, "{}", row.join(","))?;
    }
    Ok(())
}

fn metadata_object(metadata: &[(&str, Value)]) -> Value {
    Value::Object(metadata.iter().map(|(k, v)| (k.to_string(), v.clone())).collect())
}

fn write_json(out: &mut dyn Write, value: &Value) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)
}

fn cmd_simulate_radial(args: &SimulateArgs) -> Result<(), CliError> {
    let k = args.validate()?;
    let seed = PathSeed::new(args.seed, args.path);
    let path = simulate_radial(args.x0, k, args.t_end, seed, &args.step.policy())?;
    let meta = args.metadata("simulate-radial");
    let mut out = open_output(args.out.as_deref())?;
    match args.format {
        Format::Csv => write_csv(
            &mut out,
            &meta,
            "t,x,eta",
            (0..path.len()).map(|i| {
                vec![
                    path.times[i].to_string(),
                    path.point(i).value().to_string(),
                    path.eta[i].to_string(),
                ]
            }),
        )?,
        Format::Json => {
            let rows: Vec<Value> = (0..path.len())
                .map(|i| json!([path.times[i], path.point(i).value(), path.eta[i]]))
                .collect();
            write_json(
                &mut out,
                &json!({ "metadata": metadata_object(&meta), "columns": ["t", "x", "eta"], "rows": rows }),
            )?
        }
    }
    out.flush()?;
    Ok(())
}

fn jumps_path(args: &DunklArgs) -> Option<PathBuf> {
    args.jumps_out.clone().or_else(|| {
        args.sim.out.as_ref().map(|p| {
            let mut s = p.clone().into_os_string();
            s.push(".jumps.csv");
            PathBuf::from(s)
        })
    })
}

fn cmd_simulate_dunkl(args: &DunklArgs) -> Result<(), CliError> {
    let k = args.sim.validate()?;
    check_positive("dt", args.dt)?;
    if args.sim.t_end / args.dt > 1e8 {
        return Err(invalid("--dt is too small for the horizon (more than 1e8 grid rows)"));
    }
    let sim = &args.sim;
    let seed = PathSeed::new(sim.seed, sim.path);
    let traj = simulate_affine_dunkl(sim.x0, k, sim.t_end, seed, &sim.step.policy())?;
    let grid = if sim.t_end == 0.0 { vec![(0.0, sim.x0)] } else { traj.sample_grid(args.dt)? };
    let mut meta = sim.metadata("simulate-dunkl");
    meta.push(("dt", json!(args.dt)));
    let jump_rows = || {
        traj.jumps.iter().map(|j| {
            vec![
                j.time.to_string(),
                j.reflection.to_string(),
                j.y_pre.value().to_string(),
                j.y_post.value().to_string(),
            ]
        })
    };
    let mut out = open_output(sim.out.as_deref())?;
    match sim.format {
        Format::Csv => {
            write_csv(&mut out, &meta, "t,y", grid.iter().map(|(t, y)| vec![t.to_string(), y.to_string()]))?;
            if let Some(p) = jumps_path(args) {
                let mut jf = open_output(Some(&p))?;
                write_csv(&mut jf, &meta, "T,p,y_pre,y_post", jump_rows())?;
                jf.flush()?;
            }
        }
        Format::Json => {
            let rows: Vec<Value> = grid.iter().map(|(t, y)| json!([t, y])).collect();
            let jumps: Vec<Value> = traj
                .jumps
                .iter()
                .map(|j| json!([j.time, j.reflection, j.y_pre.value(), j.y_post.value()]))
                .collect();
            write_json(
                &mut out,
                &json!({
                    "metadata": metadata_object(&meta),
                    "columns": ["t", "y"],
                    "rows": rows,
                    "jump_columns": ["T", "p", "y_pre", "y_post"],
                    "jumps": jumps,
                }),
            )?
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_density(args: &DensityArgs) -> Result<(), CliError> {
    let k = Multiplicity::new(args.k)?;
    let x = AlcovePoint::from_value(args.x)?;
    let trunc = args.truncation.truncation();
    trunc.validate()?;
    if args.grid == 0 {
        return Err(invalid("--grid must be at least 1"));
    }
    let kernel = TransitionKernel::new(args.t, args.x, k, &trunc)?;
    let n = args.grid;
    let rows: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let u = (i as f64 + 0.5) / n as f64;
            Ok((x.alcove as f64 + u, kernel.density_at_offset(u)?))
        })
        .collect::<Result<_, Error>>()?;
    let meta = vec![
        ("version", json!(VERSION)),
        ("command", json!("density")),
        ("k", json!(args.k)),
        ("x", json!(args.x)),
        ("t", json!(args.t)),
        ("grid", json!(n)),
        ("max_terms", json!(trunc.max_terms)),
        ("term_tol", json!(trunc.term_tol)),
        ("t_min", json!(trunc.t_min)),
        ("terms_used", json!(kernel.terms())),
    ];
    let mut out = open_output(args.out.as_deref())?;
    match args.format {
        Format::Csv => {
            write_csv(&mut out, &meta, "y,q", rows.iter().map(|(y, q)| vec![y.to_string(), q.to_string()]))?
        }
        Format::Json => {
            let rows: Vec<Value> = rows.iter().map(|(y, q)| json!([y, q])).collect();
            write_json(
                &mut out,
                &json!({ "metadata": metadata_object(&meta), "columns": ["y", "q"], "rows": rows }),
            )?
        }
    }
    out.flush()?;
    Ok(())
}

fn cmd_validate(args: &ValidateArgs) -> Result<(), CliError> {
    if args.paths == Some(0) {
        return Err(invalid("--paths must be at least 1"));
    }
    let opts = SuiteOptions { seed: args.seed, paths: args.paths };
    let reports = run_suite(args.suite.into(), &opts)?;
    let mut out = open_output(args.out.as_deref())?;
    serde_json::to_writer_pretty(&mut out, &reports).map_err(io::Error::from)?;
    writeln!(out)?;
    out.flush()?;
    let failed = reports.iter().filter(|r| !r.passed() && !r.is_refusal()).count();
    if failed > 0 {
        return Err(CliError::ValidationFailed { failed, total: reports.len() });
    }
    Ok(())
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::SimulateRadial(a) => cmd_simulate_radial(a),
        Command::SimulateDunkl(a) => cmd_simulate_dunkl(a),
        Command::Density(a) => cmd_density(a),
        Command::Validate(a) => cmd_validate(a),
    }
}

/// Parses the process arguments, runs, and returns the exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        // the reader went away, e.g. `| head`
        Err(CliError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
