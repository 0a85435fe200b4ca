//! Command-line surface.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use novelty_core::metrics::prf_sweep;
use novelty_core::solver::binomial;
use novelty_core::synth::{
    gen_gaussian_mixture_with, gen_planted, gen_uniform_2d, Label, MixtureParams, MIXTURE_NOISE_SCALE,
    MIXTURE_SEPARATION, UNIFORM_NOISE_SCALE,
};
use novelty_core::{
    ads_solve, brute_force_densest_with_cap, power_iteration, FeatureMatrix, SolverConfig,
    DEFAULT_ENUMERATION_CAP,
};

use crate::bench::{self, BenchConfig};
use crate::error::{CliError, Result};
use crate::io::{labels_to_text, load_features, load_labels, save_features, write_atomic, Format};
use crate::report::{save_result, save_trace, sweep_csv, to_json, ExactJson, PowerJson, ResultJson};

/// Environment variable capping the worker threads of the per-item loop.
pub const THREADS_ENV: &str = "NOVELTY_THREADS";

#[derive(Debug, Parser)]
#[command(name = "novelty", version, about = "Find the K most mutually distinct items in a feature matrix")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sparse stochastic solve (the default solver)
    Solve(SolveArgs),
    /// Dense power-iteration baseline for the principal eigenvector
    Power(PowerArgs),
    /// Exact densest-k subset by exhaustive enumeration
    Exact(ExactArgs),
    /// Write a synthetic dataset and its labels
    Gen(GenArgs),
    /// Precision/recall/F-measure over a range of k
    Sweep(SweepArgs),
    /// Time and memory scaling of `solve`
    Bench(BenchArgs),
}

#[derive(Debug, Clone, Args)]
pub struct InputArgs {
    #[arg(long)]
    pub input: PathBuf,
    /// Input format; inferred from the extension when omitted
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

impl InputArgs {
    pub fn format(&self) -> Format {
        self.format.unwrap_or_else(|| Format::infer(&self.input))
    }

    fn load(&self) -> Result<FeatureMatrix> {
        load_features(&self.input, self.format())
    }
}

#[derive(Debug, Clone, Args)]
pub struct SolverArgs {
    #[arg(long, default_value_t = 20)]
    pub epochs: usize,
    #[arg(long, default_value_t = 16)]
    pub batch: usize,
    #[arg(long, default_value_t = 0.001)]
    pub lr: f64,
    #[arg(long, default_value_t = 0.9)]
    pub momentum: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

impl SolverArgs {
    fn config(&self, k: usize) -> SolverConfig {
        SolverConfig::new(k)
            .with_epochs(self.epochs)
            .with_batch(self.batch)
            .with_lr(self.lr)
            .with_momentum(self.momentum)
            .with_seed(self.seed)
    }
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Result JSON; printed to stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Per-epoch trace CSV
    #[arg(long)]
    pub trace: Option<PathBuf>,
    /// Append one weight column per item to the trace (N <= 2000)
    #[arg(long, requires = "trace")]
    pub trace_weights: bool,
}

#[derive(Debug, Args)]
pub struct PowerArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = 10_000)]
    pub max_iters: usize,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct ExactArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long)]
    pub k: usize,
    /// Refuse to enumerate more subsets than this
    #[arg(long, default_value_t = DEFAULT_ENUMERATION_CAP)]
    pub cap: u128,
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// Uniform points in the unit square with displaced anomalies
    Uniform2d,
    /// Two-component Gaussian mixture with displaced anomalies
    Gmm,
    /// Unit-disk inliers with far outliers whose optimality is checked
    Planted,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long, value_enum)]
    pub kind: GenKind,
    /// Number of points [default: 100 / 1000 / 12 by kind]
    #[arg(long)]
    pub n: Option<usize>,
    /// Number of anomalies or planted outliers [default: 9 / 120 / 3 by kind]
    #[arg(long, alias = "n-anom")]
    pub k: Option<usize>,
    /// Feature dimension for gmm
    #[arg(long, default_value_t = 50)]
    pub dim: usize,
    /// Anomaly displacement in units of the data scale
    #[arg(long)]
    pub noise_scale: Option<f64>,
    /// Mixture mean distance (gmm) or minimum outlier distance (planted)
    #[arg(long)]
    pub separation: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Feature file to write
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Label sidecar [default: <output>.labels]
    #[arg(long)]
    pub labels: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Label sidecar, one 0/1 per line
    #[arg(long)]
    pub labels: PathBuf,
    #[arg(long, default_value_t = 1)]
    pub k_min: usize,
    #[arg(long)]
    pub k_max: usize,
    #[arg(long, default_value_t = 1)]
    pub k_step: usize,
    #[arg(long, default_value_t = 1)]
    pub seeds: usize,
    #[command(flatten)]
    pub solver: SolverArgs,
    /// Sweep CSV; printed to stdout when omitted
    #[arg(long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Comma-separated problem sizes
    #[arg(long, value_delimiter = ',', default_value = "2000,20000")]
    pub ns: Vec<usize>,
    #[arg(long, default_value_t = 8)]
    pub m: usize,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 16)]
    pub batch: usize,
    #[arg(long, default_value_t = 5)]
    pub epochs: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Timed runs per size; the fastest is reported
    #[arg(long, default_value_t = 3)]
    pub repeats: usize,
    /// Report JSON; a table is always printed to stdout
    #[arg(long)]
    pub output: Option<PathBuf>,
}

/// The command being run with its validated inputs and outputs.
#[derive(Debug, Clone)]
pub struct RunManifest {
    pub command: &'static str,
    pub input: Option<(PathBuf, Format)>,
    pub config: Option<SolverConfig>,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    /// Rejects output paths that collide with each other or with the input.
    pub fn validate(&self) -> Result<()> {
        let mut seen: Vec<&Path> = Vec::new();
        if let Some((input, _)) = &self.input {
            seen.push(input);
        }
        for out in &self.outputs {
            if seen.contains(&out.as_path()) {
                return Err(CliError::Usage(format!("{}: paths must be distinct", out.display())));
            }
            seen.push(out);
        }
        Ok(())
    }
}

fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => write_atomic(p, text.as_bytes()),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Applies [`THREADS_ENV`] to the global rayon pool.
pub fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&t| t >= 1)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV} must be a positive integer, got {raw:?}")))?;
    // A pool that is already built (tests calling this twice) keeps its size.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    Ok(())
}

pub fn run(cli: Cli) -> Result<()> {
    configure_threads()?;
    match cli.command {
        Command::Solve(a) => solve(a),
        Command::Power(a) => power(a),
        Command::Exact(a) => exact(a),
        Command::Gen(a) => gen(a),
        Command::Sweep(a) => sweep(a),
        Command::Bench(a) => run_bench(a),
    }
}

fn solve(a: SolveArgs) -> Result<()> {
    let cfg = a.solver.config(a.k).with_trace_weights(a.trace_weights);
    let manifest = RunManifest {
        command: "solve",
        input: Some((a.input.input.clone(), a.input.format())),
        config: Some(cfg.clone()),
        outputs: a.output.iter().chain(&a.trace).cloned().collect(),
    };
    manifest.validate()?;
    let features = a.input.load()?;
    cfg.validate(features.n_items())?;
    let result = ads_solve(&features, &cfg)?;
    if let Some(trace) = &a.trace {
        save_trace(&result, trace, a.trace_weights)?;
    }
    match &a.output {
        Some(path) => save_result(&features, &result, path),
        None => emit(None, &to_json(&ResultJson::new(&features, &result))),
    }
}

fn power(a: PowerArgs) -> Result<()> {
    RunManifest {
        command: "power",
        input: Some((a.input.input.clone(), a.input.format())),
        config: None,
        outputs: a.output.iter().cloned().collect(),
    }
    .validate()?;
    let features = a.input.load()?;
    let r = power_iteration(&features, a.tol, a.max_iters)?;
    emit(a.output.as_deref(), &to_json(&PowerJson::new(&features, &r, a.tol, a.max_iters)))
}

fn exact(a: ExactArgs) -> Result<()> {
    RunManifest {
        command: "exact",
        input: Some((a.input.input.clone(), a.input.format())),
        config: None,
        outputs: a.output.iter().cloned().collect(),
    }
    .validate()?;
    let features = a.input.load()?;
    let (support, objective) = brute_force_densest_with_cap(&features, a.k, a.cap)?;
    let report = ExactJson {
        n: features.n_items(),
        m: features.n_dims(),
        k: a.k,
        subsets: binomial(features.n_items(), a.k),
        support,
        objective,
    };
    emit(a.output.as_deref(), &to_json(&report))
}

fn gen(a: GenArgs) -> Result<()> {
    let labels_path = a.labels.clone().unwrap_or_else(|| {
        let mut name = a.output.clone().into_os_string();
        name.push(".labels");
        PathBuf::from(name)
    });
    RunManifest { command: "gen", input: None, config: None, outputs: vec![a.output.clone(), labels_path.clone()] }
        .validate()?;
    let dataset = match a.kind {
        GenKind::Uniform2d => gen_uniform_2d(
            a.n.unwrap_or(100),
            a.k.unwrap_or(9),
            a.noise_scale.unwrap_or(UNIFORM_NOISE_SCALE),
            a.seed,
        )?,
        GenKind::Gmm => {
            let mut p = MixtureParams::new(a.n.unwrap_or(1000), a.dim, a.k.unwrap_or(120), a.seed);
            p.noise_scale = a.noise_scale.unwrap_or(MIXTURE_NOISE_SCALE);
            p.separation = a.separation.unwrap_or(MIXTURE_SEPARATION);
            gen_gaussian_mixture_with(&p)?
        }
        GenKind::Planted => gen_planted(a.n.unwrap_or(12), a.k.unwrap_or(3), a.separation.unwrap_or(100.0), a.seed)?,
    };
    let format = a.format.unwrap_or_else(|| Format::infer(&a.output));
    save_features(&dataset.features, &a.output, format)?;
    let flags: Vec<bool> = dataset.labels.iter().map(|&l| l == Label::Anomaly).collect();
    write_atomic(&labels_path, labels_to_text(&flags).as_bytes())
}

fn sweep(a: SweepArgs) -> Result<()> {
    if a.k_step < 1 || a.k_min < 1 || a.k_min > a.k_max {
        return Err(CliError::Usage("need 1 <= k-min <= k-max and k-step >= 1".into()));
    }
    let cfg = a.solver.config(a.k_min);
    RunManifest {
        command: "sweep",
        input: Some((a.input.input.clone(), a.input.format())),
        config: Some(cfg.clone()),
        outputs: a.output.iter().chain(std::iter::once(&a.labels)).cloned().collect(),
    }
    .validate()?;
    let features = a.input.load()?;
    let k_values: Vec<usize> = (a.k_min..=a.k_max).step_by(a.k_step).collect();
    for &k in &k_values {
        SolverConfig { k, ..cfg.clone() }.validate(features.n_items())?;
    }
    let truth = load_labels(&a.labels, features.n_items())?;
    let points = prf_sweep(&features, &truth, &k_values, &cfg, a.seeds)?;
    emit(a.output.as_deref(), &sweep_csv(&points))
}

fn run_bench(a: BenchArgs) -> Result<()> {
    let report = bench::run(&BenchConfig {
        ns: a.ns,
        m: a.m,
        k: a.k,
        batch: a.batch,
        epochs: a.epochs,
        seed: a.seed,
        repeats: a.repeats,
    })?;
    println!("{:>10} {:>16} {:>14}", "n", "s/epoch", "peak_bytes");
    for row in &report.rows {
        println!("{:>10} {:>16.6e} {:>14}", row.n, row.per_epoch_seconds, row.peak_bytes);
    }
    if let (Some(t), Some(m)) = (report.time_growth_vs_linear, report.memory_growth_vs_linear) {
        println!("growth vs linear: time {t:.3}, memory {m:.3}");
    }
    if let Some(path) = &a.output {
        write_atomic(path, to_json(&report).as_bytes())?;
    }
    Ok(())
}

/// Parses `args` and runs the command, returning the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
