//! Command-line front end.

use super::{run_experiment, write_csv, ChainSpec, Preset, RunConfig};
use crate::error::{Error, Result};
use crate::estimator::{run_estimator, RecordSchedule, StepSchedule, TraceWriter};
use crate::models::write_chain;
use crate::spectral::SpectralReport;
use clap::{Args, Parser, Subcommand};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

pub const EXIT_OK: i32 = 0;
pub const EXIT_RUNTIME: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(
    name = "qsdkit",
    version,
    about = "Quasi-stationary distributions by stochastic approximation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the principal eigenpair, spectrum and CLT verdict of a chain.
    Oracle(ChainArgs),
    /// Print whether the spectral CLT condition holds, with its margin.
    CheckClt(ChainArgs),
    /// Write a chain in the plain-text matrix format.
    Export(ChainArgs),
    /// Run replicated estimator runs and write the MSE curve as CSV.
    Run(RunArgs),
    /// Run a reproduction preset (vanilla vs. Polyak-averaged).
    Experiment(ExperimentArgs),
    /// Repeat `run` over a grid of values substituted into a chain template.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
struct ChainArgs {
    /// Chain spec (`loopy:0.2`, `mm1:1.25:100`, `contact:100:1.5`) or a chain file.
    #[arg(value_name = "CHAIN", conflicts_with = "chain")]
    positional: Option<String>,
    #[arg(long)]
    chain: Option<String>,
    /// Doeblin factor: scales DT blocks, subtracts from CT diagonals.
    #[arg(long)]
    doeblin: Option<f64>,
    /// Replace a CT chain by its uniformized DT chain.
    #[arg(long)]
    uniformize: bool,
}

impl ChainArgs {
    fn spec(&self) -> Result<ChainSpec> {
        let raw = self
            .chain
            .as_deref()
            .or(self.positional.as_deref())
            .ok_or_else(|| Error::Parse("a chain is required (`--chain <spec>`)".into()))?;
        self.apply(raw.parse()?)
    }

    fn apply(&self, mut spec: ChainSpec) -> Result<ChainSpec> {
        if self.doeblin.is_some() {
            spec.doeblin = self.doeblin;
        }
        spec.uniformize |= self.uniformize;
        Ok(spec)
    }
}

#[derive(Debug, Args)]
struct EstimatorArgs {
    #[arg(long, default_value = "vanilla")]
    variant: String,
    /// Step exponent for the projected variants, in (0.5, 1].
    #[arg(long, default_value_t = 0.7)]
    alpha: f64,
    /// Step scale for the projected variants.
    #[arg(long = "step-c", default_value_t = 1.0)]
    step_c: f64,
    #[arg(long, default_value_t = 100_000)]
    tours: u64,
    #[arg(long, default_value_t = 1)]
    replicates: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// First iterate in the Polyak mean (default: 10% of the tours).
    #[arg(long = "burn-in")]
    burn_in: Option<u64>,
    /// Record every k-th tour instead of 25 log-spaced points per decade.
    #[arg(long)]
    stride: Option<u64>,
    /// Add the replicate-mean estimate as columns mu_0..mu_{d-1}.
    #[arg(long = "record-mu")]
    record_mu: bool,
    #[arg(long = "max-tour-steps", default_value_t = crate::tour::DEFAULT_MAX_STEPS)]
    max_tour_steps: u64,
}

impl EstimatorArgs {
    fn config(&self, chain: ChainSpec) -> Result<RunConfig> {
        let mut cfg = RunConfig::new(
            chain,
            self.variant.parse()?,
            self.tours,
            self.replicates,
            self.seed,
        );
        cfg.schedule = StepSchedule::new(self.step_c, self.alpha)?;
        cfg.burn_in = self.burn_in;
        cfg.record_mu = self.record_mu;
        cfg.max_tour_steps = self.max_tour_steps;
        if let Some(k) = self.stride {
            cfg.record = RecordSchedule::Every(k);
        }
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[command(flatten)]
    chain: ChainArgs,
    #[command(flatten)]
    estimator: EstimatorArgs,
    /// Output CSV path (stdout when absent).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Also write per-iteration rows of replicate 0 to this path.
    #[arg(long)]
    trace: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    /// loopy, mm1 or contact
    preset: String,
    #[arg(long)]
    tours: Option<u64>,
    #[arg(long, default_value_t = Preset::DEFAULT_REPLICATES)]
    replicates: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory for `<preset>_<variant>.csv`.
    #[arg(long = "out-dir", default_value = ".")]
    out_dir: PathBuf,
}

#[derive(Debug, Args)]
struct SweepArgs {
    /// Chain template with a `{}` placeholder, e.g. `loopy:{}`.
    #[arg(long)]
    chain: String,
    /// Comma-separated values substituted for `{}`.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<String>,
    #[arg(long)]
    doeblin: Option<f64>,
    #[command(flatten)]
    estimator: EstimatorArgs,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numeric() {
        EXIT_NUMERIC
    } else if matches!(e, Error::Io(_)) {
        EXIT_RUNTIME
    } else {
        EXIT_USAGE
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run_cli<I, S>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(command: Command, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    match command {
        Command::Oracle(args) => {
            let report = SpectralReport::compute(&args.spec()?.build()?)?;
            writeln!(stdout, "{report}")?;
        }
        Command::CheckClt(args) => {
            let report = SpectralReport::compute(&args.spec()?.build()?)?;
            writeln!(stdout, "{}", report.clt_line())?;
        }
        Command::Export(args) => {
            stdout.write_all(write_chain(&args.spec()?.build()?).as_bytes())?;
        }
        Command::Run(args) => run(args, stdout, stderr)?,
        Command::Experiment(args) => experiment(args, stdout, stderr)?,
        Command::Sweep(args) => sweep(args, stdout, stderr)?,
    }
    Ok(())
}

fn with_output(
    path: Option<&Path>,
    stdout: &mut dyn Write,
    f: impl FnOnce(&mut dyn Write) -> Result<()>,
) -> Result<()> {
    match path {
        Some(p) => {
            let mut w = BufWriter::new(File::create(p)?);
            f(&mut w)?;
            w.flush()?;
            Ok(())
        }
        None => f(stdout),
    }
}

fn run(args: RunArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let cfg = args.estimator.config(args.chain.spec()?)?;
    let result = run_experiment(&cfg)?;
    if let Some(w) = &result.warning {
        writeln!(stderr, "warning: {w}")?;
    }
    with_output(args.out.as_deref(), stdout, |w| Ok(write_csv(&result, w)?))?;
    if let Some(path) = &args.trace {
        let chain = cfg.chain.build()?;
        let reference = result
            .oracle
            .as_ref()
            .map(|o| o.principal_left_vector.as_slice().to_vec());
        let mut trace = TraceWriter::new(
            BufWriter::new(File::create(path)?),
            cfg.seed,
            chain.dim(),
            reference,
            cfg.record_mu,
        )?;
        let mut io_err = None;
        let mut opts = crate::estimator::RunOptions::new(cfg.variant, cfg.n_tours);
        opts.schedule = cfg.schedule;
        opts.burn_in = cfg.burn_in;
        opts.record = cfg.record;
        opts.max_tour_steps = cfg.max_tour_steps;
        let mut rng = super::replicate_rng(cfg.seed, 0);
        run_estimator(&chain, &opts, &mut rng, |snap| {
            if io_err.is_none() {
                io_err = trace.write(snap).err();
            }
        })?;
        if let Some(e) = io_err {
            return Err(e.into());
        }
        trace.into_inner().flush()?;
    }
    Ok(())
}

fn experiment(args: ExperimentArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let preset: Preset = args.preset.parse()?;
    let tours = args.tours.unwrap_or_else(|| preset.default_tours());
    std::fs::create_dir_all(&args.out_dir)?;
    let mut finals = Vec::new();
    for cfg in preset.configs(tours, args.replicates, args.seed) {
        let result = run_experiment(&cfg)?;
        if let Some(w) = &result.warning {
            writeln!(stderr, "warning: {w}")?;
        }
        let path = args
            .out_dir
            .join(format!("{}_{}.csv", preset.name(), cfg.variant));
        with_output(Some(&path), stdout, |w| Ok(write_csv(&result, w)?))?;
        let mse = result.curve.last().map_or(f64::NAN, |p| p.1);
        let slope = result
            .curve
            .slope
            .map_or("NA".to_string(), |s| format!("{s:.3}"));
        writeln!(
            stdout,
            "{} {}: final_mse={mse:.3e} slope={slope} -> {}",
            preset.name(),
            cfg.variant,
            path.display()
        )?;
        if finals.is_empty() {
            if let Some(o) = &result.oracle {
                writeln!(stdout, "{} clt: {}", preset.name(), o.clt_line())?;
            }
        }
        finals.push(mse);
    }
    writeln!(
        stdout,
        "{} mse ratio vanilla/projected_avg = {:.2}",
        preset.name(),
        finals[0] / finals[1]
    )?;
    Ok(())
}

fn sweep(args: SweepArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<()> {
    let mut rows = Vec::new();
    for value in &args.values {
        let mut spec = ChainSpec::from_template(&args.chain, value)?;
        if args.doeblin.is_some() {
            spec.doeblin = args.doeblin;
        }
        let result = run_experiment(&args.estimator.config(spec)?)?;
        if let Some(w) = &result.warning {
            writeln!(stderr, "warning ({value}): {w}")?;
        }
        let (holds, margin) = result.oracle.as_ref().map_or(("NA".into(), f64::NAN), |o| {
            (o.clt.holds.to_string(), o.clt.margin)
        });
        let last = result.final_row();
        rows.push(format!(
            "{value},{holds},{margin:?},{:?},{:?},{}",
            last.map_or(f64::NAN, |r| r.mse_l2sq),
            last.map_or(f64::NAN, |r| r.t_n),
            result.curve.slope.map_or("NA".into(), |s| format!("{s:?}")),
        ));
    }
    with_output(args.out.as_deref(), stdout, |w| {
        writeln!(
            w,
            "# qsdkit v1 sweep, chain={}, variant={}",
            args.chain, args.estimator.variant
        )?;
        writeln!(w, "value,clt_holds,clt_margin,final_mse,T_n,slope")?;
        for r in &rows {
            writeln!(w, "{r}")?;
        }
        Ok(())
    })
}
