//! Command-line experiment runner. Every subcommand produces one
//! [`ExperimentReport`], printed as JSON or CSV.

mod experiments;
mod output;

use std::ffi::OsString;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub use output::{to_csv, sig_digits};

pub const ARTIFACT_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "qoneway", version, about = "Quantum one-way communication experiments")]
pub struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    pub format: Format,
    #[arg(long, default_value_t = 1, global = true)]
    pub seed: u64,
    /// Worker threads; 0 lets the runtime decide.
    #[arg(long, default_value_t = 0, global = true)]
    pub jobs: usize,
    #[arg(long, global = true)]
    pub out: Option<std::path::PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Measure-and-recover damage against √ε on random instances.
    Goodasnew(GoodAsNewArgs),
    /// Classical advice from a quantum one-way protocol, decoded by Bob.
    Reconstruct(ReconstructArgs),
    CosetDelta(CosetArgs),
    SubsetDelta(SubsetArgs),
    /// Random-subset expectation: closed form, enumeration, Monte Carlo.
    Randset(RandsetArgs),
    /// Trace-distance certificate on the coset distributions.
    VardistCheck(VardistArgs),
    Membership(MembershipArgs),
    Pqp(PqpArgs),
    Diagnostics(DiagnosticsArgs),
    Cheb(ChebArgs),
    Markov(MarkovArgs),
    DegreeBound(DegreeBoundArgs),
    DirectProduct(DirectProductArgs),
    GroverAll(GroverArgs),
    Fingerprint(FingerprintArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GoodAsNewArgs {
    /// Fixed dimension; otherwise trial `i` uses `2 + i mod 7`.
    #[arg(long)]
    pub dim: Option<usize>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    #[arg(long, default_value_t = 1)]
    pub ancilla: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProtocolKind {
    Basis,
    Fingerprint,
    Noisy,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ReconstructArgs {
    #[arg(long)]
    pub problem: String,
    #[arg(long, value_enum, default_value = "basis")]
    pub protocol: ProtocolKind,
    /// Decoder flip probability for `--protocol noisy`.
    #[arg(long, default_value_t = 0.01)]
    pub noise: f64,
    #[arg(long, default_value_t = 3)]
    pub copies: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CosetArgs {
    #[arg(long)]
    pub p: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SubsetArgs {
    #[arg(long)]
    pub group: String,
    /// Comma-separated element indices.
    #[arg(long)]
    pub set: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RandsetArgs {
    #[arg(long)]
    pub group: String,
    #[arg(long)]
    pub k: usize,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VardistArgs {
    #[arg(long, default_value_t = 2)]
    pub p: usize,
    /// Number of random protocols checked next to the basis protocol.
    #[arg(long, default_value_t = 0)]
    pub random: usize,
    #[arg(long, default_value_t = 1)]
    pub qubits: usize,
    #[arg(long, default_value_t = 1.0 / 3.0)]
    pub beta: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MembershipArgs {
    #[arg(long)]
    pub group: String,
    /// Generators of one subgroup; all subgroups when omitted.
    #[arg(long)]
    pub generators: Option<String>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PqpArgs {
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DiagnosticsArgs {
    #[arg(long)]
    pub problem: String,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ChebArgs {
    #[arg(long)]
    pub d: usize,
    #[arg(long, default_value_t = 1)]
    pub m: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MarkovArgs {
    /// Degree of the rescaled Chebyshev equality case.
    #[arg(long, default_value_t = 4)]
    pub d: usize,
    #[arg(long, default_value_t = 4)]
    pub n: i64,
    #[arg(long, default_value_t = 3)]
    pub degree: usize,
    #[arg(long, default_value_t = 200)]
    pub trials: usize,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DegreeBoundArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub delta: f64,
    #[arg(long, default_value_t = 1.0)]
    pub r0: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DirectProductArgs {
    #[arg(long)]
    pub n: u64,
    #[arg(long)]
    pub k: u64,
    #[arg(long)]
    pub t: u64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GroverArgs {
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub k: usize,
    /// Iterations per stage, e.g. `1,1`; the standard schedule when omitted.
    #[arg(long)]
    pub schedule: Option<String>,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum FingerprintKind {
    Eq,
    Subset,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FingerprintArgs {
    #[arg(long, value_enum, default_value = "eq")]
    pub kind: FingerprintKind,
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 0.1)]
    pub target: f64,
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long)]
    pub set: Option<String>,
    #[arg(long)]
    pub x: Option<u64>,
    #[arg(long)]
    pub y: Option<u64>,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ExperimentReport {
    pub experiment: String,
    pub params: Value,
    pub seed: u64,
    pub results: Value,
    pub artifact_version: String,
}

impl ExperimentReport {
    /// `results.verdict` when present.
    pub fn verdict(&self) -> Option<bool> {
        self.results.get("verdict").and_then(Value::as_bool)
    }
}

/// Exit code plus the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERDICT: i32 = 2;

pub fn run_experiment(cli: &Cli) -> crate::error::Result<ExperimentReport> {
    let run = || experiments::dispatch(&cli.command, cli.seed);
    let (experiment, params, results) = if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build()
            .map_err(|e| crate::error::Error::InvalidParameter(e.to_string()))?
            .install(run)?
    } else {
        run()?
    };
    Ok(ExperimentReport {
        experiment: experiment.to_string(),
        params,
        seed: cli.seed,
        results,
        artifact_version: ARTIFACT_VERSION.to_string(),
    })
}

pub fn render(report: &ExperimentReport, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(report).expect("serializable") + "\n",
        Format::Csv => to_csv(&report.results),
    }
}

/// Parses `args` (program name first), runs the experiment and renders it.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let report = match run_experiment(&cli) {
        Ok(r) => r,
        Err(e) => return Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e}\n") },
    };
    let text = render(&report, cli.format);
    let code = if report.verdict() == Some(false) { EXIT_VERDICT } else { EXIT_OK };
    match &cli.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome { code, stdout: String::new(), stderr: String::new() },
            Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {}: {e}\n", path.display()) },
        },
        None => Outcome { code, stdout: text, stderr: String::new() },
    }
}
