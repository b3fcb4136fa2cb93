//! Command-line front end: `test`, `power`, `type1` and `tune` subcommands
//! over the library. Exit codes: 0 = the run completed (whatever the
//! decision), 2 = input error, 3 = numeric failure.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use two_sample::harness::{
    load_csv_pair, run_power_curve, run_type1, write_rows, ExperimentConfig, HarnessError,
    TestMethod,
};
use two_sample::rng::{mix, Seed, Stream};
use two_sample::sample::{SampleSet, Scaling};
use two_sample::tuning::{select_scaling, Resample, ScalingGrid, ScalingSummary};
use two_sample::{
    block_mmd_test, permutation_mmd_test, run_analytic_test, subsampled_mmd_test, TestOutcome,
};

#[derive(Parser)]
#[command(
    name = "two-sample",
    about = "Linear-time analytic two-sample tests and MMD baselines",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether two CSV sample files come from the same distribution.
    Test(TestArgs),
    /// Run a power sweep described by a config file; writes result CSV.
    Power(SweepArgs),
    /// Run a Type-I calibration sweep (both samples from the null branch).
    Type1(SweepArgs),
    /// Pick the data length-scale on training data by repeated testing.
    Tune(TuneArgs),
}

#[derive(Args)]
struct DataArgs {
    /// CSV file with the first sample, one observation per row.
    #[arg(long)]
    x: PathBuf,
    /// CSV file with the second sample.
    #[arg(long)]
    y: PathBuf,
    /// Test to run: me | scf | cf | mmd | block | sub.
    #[arg(long)]
    method: String,
    /// Number of test frequencies for the analytic tests.
    #[arg(long = "J", default_value_t = 5)]
    frequencies: usize,
    /// Block size for the block-MMD test.
    #[arg(long = "B", default_value_t = 10)]
    block_size: usize,
    /// Permutations for the MMD nulls.
    #[arg(long, default_value_t = 250)]
    permutations: usize,
    /// Design test level.
    #[arg(long, default_value_t = 0.05)]
    alpha: f64,
    /// Seed for every random draw in the run.
    #[arg(long, default_value_t = 42)]
    seed: u64,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Length-scale applied to the data: a positive number, or `tune` to
    /// select it on a held-out half first.
    #[arg(long, default_value = "1.0")]
    gamma: String,
    /// Emit the outcome as a single JSON object.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    /// Experiment config file (flat key = value format).
    config: PathBuf,
    /// Write the result CSV here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct TuneArgs {
    #[command(flatten)]
    data: DataArgs,
    /// Tuning grid of log2 exponents, lo:hi:step.
    #[arg(long, default_value = "-10:10:1", allow_hyphen_values = true)]
    grid: String,
    /// Test repetitions per grid point.
    #[arg(long, default_value_t = 25)]
    reps: usize,
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), HarnessError> {
    match cli.command {
        Command::Test(args) => cmd_test(args),
        Command::Power(args) => cmd_sweep(args, false),
        Command::Type1(args) => cmd_sweep(args, true),
        Command::Tune(args) => cmd_tune(args),
    }
}

fn parse_method(name: &str) -> Result<TestMethod, HarnessError> {
    TestMethod::parse(name).ok_or_else(|| HarnessError::Config {
        line: 0,
        message: format!("unknown method '{name}' (me|scf|cf|mmd|block|sub)"),
    })
}

fn run_method(
    args: &DataArgs,
    method: TestMethod,
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    seed: Seed,
) -> Result<TestOutcome, HarnessError> {
    let out = match method {
        TestMethod::Analytic(kind) => {
            run_analytic_test(kind, x, y, args.frequencies, gamma, args.alpha, seed)?
        }
        TestMethod::Mmd => permutation_mmd_test(x, y, gamma, args.permutations, args.alpha, seed)?,
        TestMethod::Block => block_mmd_test(x, y, gamma, args.block_size, args.alpha)?,
        TestMethod::Subsampled => {
            subsampled_mmd_test(x, y, gamma, args.permutations, args.alpha, seed)?
        }
    };
    Ok(out)
}

/// Seeded half/half split: the first half trains the length-scale, the rest
/// is held out for the reported test.
fn split_halves(s: &SampleSet, seed: Seed) -> (SampleSet, SampleSet) {
    let mut idx: Vec<usize> = (0..s.n()).collect();
    Stream::new(seed).shuffle(&mut idx);
    let half = s.n() / 2;
    (s.select_rows(&idx[..half]), s.select_rows(&idx[half..]))
}

fn cmd_test(args: TestArgs) -> Result<(), HarnessError> {
    let method = parse_method(&args.data.method)?;
    let (x, y) = load_csv_pair(&args.data.x, &args.data.y)?;
    let seed = Seed(args.data.seed);
    let (gamma, x_eval, y_eval, tuned) = if args.gamma == "tune" {
        let (x_train, x_eval) = split_halves(&x, mix(seed, 100));
        let (y_train, y_eval) = split_halves(&y, mix(seed, 101));
        let grid = ScalingGrid::default();
        let (chosen, _) = select_scaling(
            |xb, yb, g, s| {
                run_method(&args.data, method, xb, yb, g, s).map_err(|e| match e {
                    HarnessError::Test(err) => err,
                    other => two_sample::Error::Domain(other.to_string()),
                })
            },
            &x_train,
            &y_train,
            &grid,
            25,
            Resample::Bootstrap,
            mix(seed, 102),
        )?;
        (chosen, x_eval, y_eval, true)
    } else {
        let g: f64 = args.gamma.parse().map_err(|_| HarnessError::Config {
            line: 0,
            message: format!("--gamma wants a number or 'tune', got '{}'", args.gamma),
        })?;
        (Scaling::new(g)?, x, y, false)
    };
    if let TestMethod::Analytic(kind) = method {
        let p = two_sample::feature_dim(kind, args.data.frequencies);
        if x_eval.n() < p + 1 {
            eprintln!(
                "warning: n = {} below feature dimension + 1 = {}; the covariance cannot have full rank",
                x_eval.n(),
                p + 1
            );
        }
    }
    let outcome = run_method(&args.data, method, &x_eval, &y_eval, gamma, mix(seed, 1))?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if args.json {
        let value = serde_json::json!({
            "statistic": outcome.statistic,
            "dof": outcome.null.dof_json(),
            "p_value": outcome.p_value,
            "threshold": outcome.threshold,
            "reject": outcome.reject,
            "elapsed_s": outcome.elapsed_s(),
            "gamma": gamma.gamma(),
            "seed": args.data.seed,
        });
        writeln!(out, "{value}").map_err(io_err)?;
    } else {
        writeln!(out, "method:    {}", method.label()).map_err(io_err)?;
        writeln!(
            out,
            "gamma:     {}{}",
            gamma.gamma(),
            if tuned { " (tuned)" } else { "" }
        )
        .map_err(io_err)?;
        writeln!(out, "statistic: {}", outcome.statistic).map_err(io_err)?;
        writeln!(out, "null:      {}", outcome.null).map_err(io_err)?;
        writeln!(out, "p_value:   {}", outcome.p_value).map_err(io_err)?;
        writeln!(out, "threshold: {}", outcome.threshold).map_err(io_err)?;
        writeln!(out, "reject:    {}", outcome.reject).map_err(io_err)?;
        writeln!(out, "elapsed_s: {}", outcome.elapsed_s()).map_err(io_err)?;
        if outcome.degenerate {
            writeln!(out, "flags:     degenerate").map_err(io_err)?;
        }
    }
    Ok(())
}

fn io_err(e: std::io::Error) -> HarnessError {
    HarnessError::Io {
        path: "<stdout>".into(),
        message: e.to_string(),
    }
}

fn cmd_sweep(args: SweepArgs, null_mode: bool) -> Result<(), HarnessError> {
    let config = ExperimentConfig::from_path(&args.config)?;
    let curve = if null_mode {
        run_type1(&config)?
    } else {
        run_power_curve(&config)?
    };
    match &args.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| HarnessError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            write_rows(&mut file, &curve).map_err(|e| HarnessError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            write_rows(&mut lock, &curve).map_err(io_err)?;
        }
    }
    Ok(())
}

fn parse_grid(spec: &str) -> Result<ScalingGrid, HarnessError> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || HarnessError::Config {
        line: 0,
        message: format!("--grid wants lo:hi:step, got '{spec}'"),
    };
    if parts.len() != 3 {
        return Err(bad());
    }
    let lo: f64 = parts[0].parse().map_err(|_| bad())?;
    let hi: f64 = parts[1].parse().map_err(|_| bad())?;
    let step: f64 = parts[2].parse().map_err(|_| bad())?;
    Ok(ScalingGrid::from_range(lo, hi, step)?)
}

fn cmd_tune(args: TuneArgs) -> Result<(), HarnessError> {
    let method = parse_method(&args.data.method)?;
    let (x, y) = load_csv_pair(&args.data.x, &args.data.y)?;
    let grid = parse_grid(&args.grid)?;
    let seed = Seed(args.data.seed);
    let (chosen, table) = select_scaling(
        |xb, yb, g, s| {
            run_method(&args.data, method, xb, yb, g, s).map_err(|e| match e {
                HarnessError::Test(err) => err,
                other => two_sample::Error::Domain(other.to_string()),
            })
        },
        &x,
        &y,
        &grid,
        args.reps,
        Resample::Bootstrap,
        seed,
    )?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    print_tuning_table(&mut out, chosen, &table).map_err(io_err)?;
    Ok(())
}

fn print_tuning_table(
    out: &mut dyn Write,
    chosen: Scaling,
    table: &[ScalingSummary],
) -> std::io::Result<()> {
    writeln!(
        out,
        "# chosen log2_gamma={} gamma={}",
        chosen.gamma().log2(),
        chosen.gamma()
    )?;
    writeln!(
        out,
        "log2_gamma,gamma,median_p,upper_quartile_p,min_p,max_p,reps"
    )?;
    for row in table {
        writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.log2_gamma,
            row.gamma,
            row.median_p,
            row.upper_quartile_p,
            row.min_p,
            row.max_p,
            row.reps
        )?;
    }
    Ok(())
}
