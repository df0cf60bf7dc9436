//! Command-line front end. The binary only forwards `std::env::args` to [`run`],
//! so every command can also be driven in-process.
//!
//! Exit codes: 0 on success, 2 for usage or validation errors, 3 when the
//! exact-leakage enumeration guard refuses a configuration.

use std::ffi::OsString;
use std::fs::{self, File};
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::error::Error;
use crate::models::{GaussianBis, Model, RateQuery, TestChannel};
use crate::region::{
    fig3_sweep, gaussian_sweep, search_test_channel, write_binary_csv, write_gaussian_csv,
    AlphaGrid, RcRule, SearchConfig,
};
use crate::simulator::{simulate, ExactLeakage, SimConfig, SimReport, TRANSCRIPT_HEADER};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_GUARD: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "bis-keys",
    version,
    about = "Key-rate regions and coding-scheme simulation for biometric identification systems"
)]
pub struct Cli {
    /// Worker threads; defaults to the machine's parallelism.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Boundary sweep of the binary model over the BSC auxiliary (CSV, bits).
    BinaryRegion(BinaryRegionArgs),
    /// Boundary sweep of the Gaussian model over alpha (CSV, nats).
    GaussianRegion(GaussianRegionArgs),
    /// Search for an auxiliary channel that puts a rate tuple in the region (JSON).
    Membership(MembershipArgs),
    /// Monte Carlo run of the random-coding scheme (JSON).
    Simulate(SimulateArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RcRuleArg {
    Full,
    Half,
}

impl From<RcRuleArg> for RcRule {
    fn from(r: RcRuleArg) -> Self {
        match r {
            RcRuleArg::Full => RcRule::FullIzu,
            RcRuleArg::Half => RcRule::HalfIzu,
        }
    }
}

#[derive(Debug, Args)]
pub struct BinaryRegionArgs {
    #[arg(long)]
    pub pe: f64,
    #[arg(long)]
    pub pd: f64,
    /// Correlation budget between chosen and generated keys.
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub ri: f64,
    #[arg(long, value_enum, default_value_t = RcRuleArg::Full)]
    pub rc_rule: RcRuleArg,
    #[arg(long, default_value_t = 513)]
    pub grid: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GaussianRegionArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub rho1: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub rho2: f64,
    #[arg(long, default_value_t = 0.0)]
    pub gamma: f64,
    #[arg(long, default_value_t = 0.0)]
    pub ri: f64,
    #[arg(long, value_enum, default_value_t = RcRuleArg::Full)]
    pub rc_rule: RcRuleArg,
    /// Number of log-spaced alpha values ending at 1.
    #[arg(long, default_value_t = 256)]
    pub grid: usize,
    #[arg(long, default_value_t = 1e-4)]
    pub alpha_min: f64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MembershipArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub rates: PathBuf,
    #[arg(long, default_value_t = 64)]
    pub restarts: usize,
    #[arg(long, default_value_t = 500)]
    pub steps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    /// Replace estimated leakage with exact enumeration on the same codebook.
    #[arg(long)]
    pub exact: bool,
    /// Per-trial CSV transcript.
    #[arg(long)]
    pub transcript: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Guard(String),
    #[error("{context}: {source}")]
    Io { context: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Guard(_) => EXIT_GUARD,
            CliError::Usage(_) | CliError::Io { .. } => EXIT_USAGE,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::SupportTooLarge { .. } => CliError::Guard(e.to_string()),
            other => CliError::Usage(other.to_string()),
        }
    }
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> CliError {
    let context = context.into();
    move |source| CliError::Io { context, source }
}

/// Parses `args` (program name first), runs the command and returns the exit
/// code. Command output goes to `stdout` unless `--out` names a file.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = write!(stderr, "{}", e.render());
            return e.exit_code();
        }
    };
    match execute(&cli, stdout) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(cli: &Cli, stdout: &mut dyn Write) -> Result<(), CliError> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(CliError::Usage("--threads must be positive".into()));
        }
        builder = builder.num_threads(t);
    }
    let pool = builder
        .build()
        .map_err(|e| CliError::Usage(format!("thread pool: {e}")))?;
    let mut buf = Vec::new();
    pool.install(|| match &cli.command {
        Command::BinaryRegion(a) => binary_region(a, &mut buf),
        Command::GaussianRegion(a) => gaussian_region(a, &mut buf),
        Command::Membership(a) => membership(a, &mut buf),
        Command::Simulate(a) => simulate_cmd(a, &mut buf),
    })?;
    stdout
        .write_all(&buf)
        .and_then(|()| stdout.flush())
        .map_err(io_err("writing output"))
}

fn with_output(
    out: &Option<PathBuf>,
    stdout: &mut dyn Write,
    body: impl FnOnce(&mut dyn Write) -> io::Result<()>,
) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let ctx = format!("writing {}", path.display());
            let file = File::create(path).map_err(io_err(ctx.clone()))?;
            let mut w = BufWriter::new(file);
            body(&mut w).map_err(io_err(ctx.clone()))?;
            w.flush().map_err(io_err(ctx))
        }
        None => body(stdout).map_err(io_err("writing output")),
    }
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path).map_err(io_err(format!("reading {}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Usage(format!("{what} file {}: {e}", path.display())))
}

fn write_json(w: &mut dyn Write, value: &impl Serialize) -> io::Result<()> {
    serde_json::to_writer_pretty(&mut *w, value)?;
    writeln!(w)
}

pub fn binary_region(a: &BinaryRegionArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let rows = fig3_sweep(a.pe, a.pd, a.gamma, a.ri, a.rc_rule.into(), a.grid)?;
    with_output(&a.out, stdout, |w| write_binary_csv(w, &rows))
}

pub fn gaussian_region(a: &GaussianRegionArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let g = GaussianBis::new(a.rho1, a.rho2)?;
    let grid = AlphaGrid::log(a.grid, a.alpha_min)?;
    let rows = gaussian_sweep(g, a.gamma, a.ri, a.rc_rule.into(), &grid)?;
    with_output(&a.out, stdout, |w| write_gaussian_csv(w, &rows))
}

pub fn membership(a: &MembershipArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let model: Model = read_json(&a.model, "model")?;
    let rates: RateQuery = read_json(&a.rates, "rates")?;
    let bis = model
        .discrete()
        .ok_or_else(|| CliError::Usage("membership needs a discrete or binary model".into()))?;
    let cfg = SearchConfig {
        restarts: a.restarts,
        steps: a.steps,
        seed: a.seed,
        ..SearchConfig::default()
    };
    let outcome = search_test_channel(&bis, &rates, &cfg)?;
    let mut value = serde_json::to_value(&outcome)
        .map_err(|e| CliError::Usage(format!("serializing verdict: {e}")))?;
    if let Value::Object(map) = &mut value {
        map.insert(
            "unit".into(),
            serde_json::to_value(rates.base).expect("unit"),
        );
        map.insert("seed".into(), a.seed.into());
    }
    with_output(&a.out, stdout, |w| write_json(w, &value))
}

#[derive(Serialize)]
struct SimulateOutput<'a> {
    #[serde(flatten)]
    report: &'a SimReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_detail: Option<&'a ExactLeakage>,
}

pub fn simulate_cmd(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<(), CliError> {
    let cfg: SimConfig = read_json(&a.config, "config")?;
    let model: Model = read_json(&a.model, "model")?;
    let test: TestChannel = read_json(&a.test, "test channel")?;
    cfg.validate()?;
    let bis = model
        .discrete()
        .ok_or_else(|| CliError::Usage("simulation needs a discrete or binary model".into()))?;
    let (report, records, exact) = simulate(&cfg, &bis, &test, a.exact)?;
    if let Some(path) = &a.transcript {
        with_output(&Some(path.clone()), stdout, |w| {
            writeln!(w, "{TRANSCRIPT_HEADER}")?;
            for r in &records {
                writeln!(w, "{}", r.csv_line())?;
            }
            Ok(())
        })?;
    }
    let out = SimulateOutput {
        report: &report,
        exact_detail: exact.as_ref(),
    };
    with_output(&a.out, stdout, |w| write_json(w, &out))
}
