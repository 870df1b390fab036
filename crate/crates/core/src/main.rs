use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use gaussprep::harness::{
    calibrate_beta, calibration_rows, distribution_rows, export_qasm, run_prepare, run_sweep,
    sample_rows, write_calibration_csv, write_distribution_csv, write_json, write_report_csv,
    write_samples_csv, write_sweep_csv, BetaMode, CalibrationObjective, SweepConfig,
};
use gaussprep::reference::GaussianSpec;
use gaussprep::sampler::{sample_counts, tv_distance};
use gaussprep::synthesis::{build_gaussian_prep, DEFAULT_DELTA};
use gaussprep::{Error, PruningPolicy};

#[derive(Parser)]
#[command(
    name = "gaussprep",
    version,
    about = "Gaussian state preparation with a pruned QFT"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Simulate one circuit and dump target vs prepared probabilities.
    Prepare(PrepareArgs),
    /// Run a grid of qubit counts and pruning thresholds.
    Sweep(SweepArgs),
    /// Search the decay parameter that best matches the target.
    Calibrate(CalibrateArgs),
    /// Draw measurement shots from the prepared state.
    Sample(SampleArgs),
    /// Write the preparation circuit as OpenQASM 2.0.
    ExportQasm(QasmArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Objective {
    Kl,
    Fidelity,
}

#[derive(Args)]
struct Target {
    /// Decay rate of exp(-lambda x^2).
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    /// `heuristic` (2.5 / lambda), `calibrated`, or a positive number.
    #[arg(long, default_value = "heuristic")]
    beta: BetaMode,
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
}

#[derive(Args)]
struct PrepareArgs {
    #[arg(long)]
    qubits: usize,
    #[command(flatten)]
    target: Target,
    /// Controlled-phase gates with angle below this are dropped (0 keeps all).
    #[arg(long, default_value_t = DEFAULT_DELTA, allow_negative_numbers = true)]
    delta: f64,
    /// Also write the one-row metrics report as CSV here.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SweepArgs {
    /// Comma-separated qubit counts; `a-b` expands to an inclusive range.
    #[arg(long, default_value = "4-12")]
    qubits: String,
    #[command(flatten)]
    target: Target,
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "0,0.01,0.0123",
        allow_negative_numbers = true
    )]
    delta: Vec<f64>,
    /// Add exact amplitude-encoding rows for comparison.
    #[arg(long)]
    baseline: bool,
    /// Record per-row wall time (output is then no longer reproducible).
    #[arg(long)]
    timing: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct CalibrateArgs {
    #[arg(long)]
    qubits: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = Objective::Kl)]
    objective: Objective,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SampleArgs {
    #[arg(long)]
    qubits: usize,
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = DEFAULT_DELTA, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long, default_value_t = 50_000, value_parser = clap::value_parser!(u64).range(1..))]
    shots: u64,
    #[arg(long, default_value_t = 2024)]
    seed: u64,
    /// Report add-one smoothed frequencies.
    #[arg(long)]
    laplace: bool,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct QasmArgs {
    #[arg(long)]
    qubits: usize,
    #[command(flatten)]
    target: Target,
    #[arg(long, default_value_t = DEFAULT_DELTA, allow_negative_numbers = true)]
    delta: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn parse_qubit_list(text: &str) -> Result<Vec<usize>, Error> {
    let bad = || Error::Config(format!("cannot parse qubit list `{text}`"));
    let mut values = Vec::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        match part.split_once('-') {
            Some((a, b)) => {
                let a: usize = a.trim().parse().map_err(|_| bad())?;
                let b: usize = b.trim().parse().map_err(|_| bad())?;
                if a > b {
                    return Err(bad());
                }
                values.extend(a..=b);
            }
            None => values.push(part.parse().map_err(|_| bad())?),
        }
    }
    Ok(values)
}

fn spec_for(lambda: f64) -> Result<GaussianSpec, Error> {
    GaussianSpec::with_lambda(lambda)
}

fn emit<T: Serialize + ?Sized>(
    output: &Output,
    value: &T,
    csv: impl FnOnce(&mut dyn Write) -> gaussprep::Result<()>,
) -> gaussprep::Result<()> {
    let mut out = open_output(output.out.as_ref())?;
    match output.format {
        Format::Csv => csv(&mut out)?,
        Format::Json => write_json(&mut out, value)?,
    }
    out.flush()?;
    Ok(())
}

fn prepare(args: PrepareArgs) -> gaussprep::Result<()> {
    let spec = spec_for(args.target.lambda)?;
    let eval = run_prepare(args.qubits, &spec, args.delta, args.target.beta)?;
    let rows = distribution_rows(&eval);
    #[derive(Serialize)]
    struct Dump<'a> {
        report: &'a gaussprep::metrics::MetricsReport,
        distribution: &'a [gaussprep::harness::DistributionRow],
    }
    let dump = Dump {
        report: &eval.report,
        distribution: &rows,
    };
    emit(&args.output, &dump, |w| write_distribution_csv(w, &rows))?;
    if let Some(path) = &args.report {
        let mut w = BufWriter::new(File::create(path)?);
        write_report_csv(&mut w, &eval.report)?;
        w.flush()?;
    }
    let r = &eval.report;
    eprintln!(
        "n={} beta={} delta={} gates={} fidelity={:.6} mse={:.3e} kl={:.3e}",
        r.num_qubits,
        r.beta,
        r.delta,
        r.inventory.total,
        r.fidelity,
        r.mse_amplitude,
        r.kl_divergence
    );
    Ok(())
}

fn sweep(args: SweepArgs) -> gaussprep::Result<()> {
    let config = SweepConfig {
        n_values: parse_qubit_list(&args.qubits)?,
        delta_values: args.delta,
        spec: spec_for(args.target.lambda)?,
        beta_mode: args.target.beta,
        include_baseline: args.baseline,
        record_timing: args.timing,
    };
    let rows = run_sweep(&config)?;
    emit(&args.output, &rows, |w| write_sweep_csv(w, &rows))?;
    let failed = rows.iter().filter(|r| r.error.is_some()).count();
    if failed > 0 {
        eprintln!("{failed} of {} rows carry an error note", rows.len());
    }
    Ok(())
}

fn calibrate(args: CalibrateArgs) -> gaussprep::Result<()> {
    let spec = spec_for(args.lambda)?;
    let policy = PruningPolicy::new(args.delta)?;
    let objective = match args.objective {
        Objective::Kl => CalibrationObjective::Kl,
        Objective::Fidelity => CalibrationObjective::Fidelity,
    };
    let cal = calibrate_beta(&spec, args.qubits, &policy, objective)?;
    let rows = calibration_rows(&cal);
    emit(&args.output, &cal, |w| write_calibration_csv(w, &rows))?;
    eprintln!(
        "best beta={:.6} kl={:.4e} fidelity={:.6}",
        cal.beta, cal.best.kl_smoothed, cal.best.fidelity
    );
    Ok(())
}

fn sample(args: SampleArgs) -> gaussprep::Result<()> {
    let spec = spec_for(args.target.lambda)?;
    let eval = run_prepare(args.qubits, &spec, args.delta, args.target.beta)?;
    let hist = sample_counts(&eval.state, args.shots, args.seed)?;
    let exact = eval.prepared_probabilities();
    let rows = sample_rows(&hist, &eval.grid, &exact, args.laplace);
    emit(&args.output, &rows, |w| write_samples_csv(w, &rows))?;
    eprintln!(
        "shots={} seed={} tv={:.5}",
        hist.shots,
        hist.seed,
        tv_distance(&hist.frequencies(), &exact)?
    );
    Ok(())
}

fn export(args: QasmArgs) -> gaussprep::Result<()> {
    let spec = spec_for(args.target.lambda)?;
    let policy = PruningPolicy::new(args.delta)?;
    let beta = args.target.beta.resolve(&spec, args.qubits)?;
    let circuit = build_gaussian_prep(args.qubits, &spec, &policy, Some(beta))?;
    let mut out = open_output(args.out.as_ref())?;
    out.write_all(export_qasm(&circuit).as_bytes())?;
    out.flush()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match cli.command {
        Command::Prepare(a) => prepare(a),
        Command::Sweep(a) => sweep(a),
        Command::Calibrate(a) => calibrate(a),
        Command::Sample(a) => sample(a),
        Command::ExportQasm(a) => export(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_usage() { 1 } else { 2 })
        }
    }
}
