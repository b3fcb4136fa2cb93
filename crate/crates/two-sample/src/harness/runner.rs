//! Replication running, power curves and Type-I sweeps.

use rayon::prelude::*;

use crate::analytic::run_analytic_test;
use crate::datagen::{add_noise, blobs, gaussian_sample, BlobsBranch};
use crate::error::Error;
use crate::harness::config::{
    ExperimentConfig, GammaChoice, Generator, SweepVariable, TestEntry, TestMethod,
};
use crate::harness::csvio::{format_value, load_csv_pair, HarnessError};
use crate::mmd::{block_mmd_test, permutation_mmd_test, subsampled_mmd_test};
use crate::outcome::TestOutcome;
use crate::rng::{mix, Seed, Stream};
use crate::sample::{SampleSet, Scaling};
use crate::tuning::{select_scaling, Resample, ScalingGrid};

/// One row of a power or Type-I sweep: rejection rate with its 99% Wald
/// band around the design level, mean per-test wall clock, and flags.
#[derive(Debug, Clone)]
pub struct PowerRow {
    pub sweep_value: f64,
    pub test: String,
    pub rate: f64,
    pub wald_low: f64,
    pub wald_high: f64,
    pub mean_elapsed_s: f64,
    pub replications: usize,
    pub flags: Vec<String>,
}

/// Rows in sweep order plus the tuning audit lines that the CSV output
/// carries as comments.
#[derive(Debug, Clone)]
pub struct PowerCurve {
    pub rows: Vec<PowerRow>,
    pub audit_lines: Vec<String>,
}

/// The 99% Wald interval around the design level alpha at m replications:
/// alpha +- 2.57 sqrt(alpha (1 - alpha) / m).
pub fn wald_interval(alpha: f64, replications: usize) -> (f64, f64) {
    let half = 2.57 * (alpha * (1.0 - alpha) / replications as f64).sqrt();
    (alpha - half, alpha + half)
}

/// Sweep-resolved generation parameters for one sweep position.
#[derive(Debug, Clone, Copy)]
struct Point {
    n: usize,
    dim: usize,
    noise: f64,
}

fn point_at(config: &ExperimentConfig, sweep_index: usize) -> Point {
    let value = config.values[sweep_index];
    let mut point = Point {
        n: config.base_n,
        dim: config.base_dim,
        noise: config.base_noise,
    };
    match config.sweep {
        SweepVariable::SampleSize => point.n = value as usize,
        SweepVariable::Dimension => point.dim = value as usize,
        SweepVariable::NoiseSigma => point.noise = value,
    }
    point
}

/// Generates the sample pair for one replication. `null_mode` draws both
/// samples from the P branch so the null holds by construction.
fn generate_pair(
    generator: &Generator,
    point: Point,
    seed: Seed,
    null_mode: bool,
    csv_data: Option<&(SampleSet, SampleSet)>,
) -> Result<(SampleSet, SampleSet), HarnessError> {
    let n = point.n;
    let d = point.dim;
    let (x, y) = match generator {
        Generator::DatasetOne => {
            let zeros = vec![0.0; d];
            let ones = vec![1.0; d];
            let x = gaussian_sample(n, &zeros, &ones, mix(seed, 0))?;
            let y = if null_mode {
                gaussian_sample(n, &zeros, &ones, mix(seed, 1))?
            } else {
                let mut shifted = zeros.clone();
                shifted[0] = 1.0;
                gaussian_sample(n, &shifted, &ones, mix(seed, 1))?
            };
            (x, y)
        }
        Generator::DatasetTwo => {
            let zeros = vec![0.0; d];
            let ones = vec![1.0; d];
            let x = gaussian_sample(n, &zeros, &ones, mix(seed, 0))?;
            let y = if null_mode {
                gaussian_sample(n, &zeros, &ones, mix(seed, 1))?
            } else {
                let mut stds = ones.clone();
                stds[0] = (2.0f64).sqrt();
                gaussian_sample(n, &zeros, &stds, mix(seed, 1))?
            };
            (x, y)
        }
        Generator::Blobs(spec) => {
            let x = blobs(n, spec, BlobsBranch::P, mix(seed, 0))?;
            let branch = if null_mode { BlobsBranch::P } else { BlobsBranch::Q };
            let y = blobs(n, spec, branch, mix(seed, 1))?;
            (x, y)
        }
        Generator::CsvPair { x_path, y_path } => {
            let owned;
            let (full_x, full_y) = match csv_data {
                Some(pair) => (&pair.0, &pair.1),
                None => {
                    owned = load_csv_pair(x_path, y_path)?;
                    (&owned.0, &owned.1)
                }
            };
            // Sweeping n subsamples fresh rows per replication; otherwise
            // the files are used as-is.
            let subsample = |s: &SampleSet, stream: u64| -> Result<SampleSet, HarnessError> {
                if n == s.n() {
                    return Ok(s.clone());
                }
                if n > s.n() {
                    return Err(HarnessError::Csv {
                        path: format!("{x_path} / {y_path}"),
                        message: format!("requested n = {n} exceeds the {} file rows", s.n()),
                    });
                }
                let idx = Stream::new(mix(seed, stream)).sample_without_replacement(s.n(), n);
                Ok(s.select_rows(&idx))
            };
            (subsample(full_x, 10)?, subsample(full_y, 11)?)
        }
    };
    if point.noise > 0.0 {
        let x = add_noise(&x, point.noise, mix(seed, 2))?;
        let y = add_noise(&y, point.noise, mix(seed, 3))?;
        Ok((x, y))
    } else {
        Ok((x, y))
    }
}

fn run_entry(
    entry: &TestEntry,
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    alpha: f64,
    seed: Seed,
) -> Result<TestOutcome, Error> {
    match entry.method {
        TestMethod::Analytic(kind) => {
            run_analytic_test(kind, x, y, entry.frequencies, gamma, alpha, seed)
        }
        TestMethod::Mmd => permutation_mmd_test(x, y, gamma, entry.permutations, alpha, seed),
        TestMethod::Block => block_mmd_test(x, y, gamma, entry.block_size, alpha),
        TestMethod::Subsampled => {
            subsampled_mmd_test(x, y, gamma, entry.permutations, alpha, seed)
        }
    }
}

/// Runs one replication: generate fresh data from the index-derived seed,
/// run the test at the given length-scale, return the outcome. The recorded
/// elapsed time covers the test, not the data generation.
pub fn run_replication(
    config: &ExperimentConfig,
    sweep_index: usize,
    test_index: usize,
    replication: usize,
    gamma: Scaling,
    null_mode: bool,
) -> Result<TestOutcome, HarnessError> {
    replication_inner(config, sweep_index, test_index, replication, gamma, null_mode, None)
}

fn replication_inner(
    config: &ExperimentConfig,
    sweep_index: usize,
    test_index: usize,
    replication: usize,
    gamma: Scaling,
    null_mode: bool,
    csv_data: Option<&(SampleSet, SampleSet)>,
) -> Result<TestOutcome, HarnessError> {
    let entry = &config.tests[test_index];
    let point = point_at(config, sweep_index);
    let rep_seed = mix(
        mix(mix(config.seed, sweep_index as u64), test_index as u64),
        replication as u64,
    );
    let (x, y) = generate_pair(&config.generator, point, mix(rep_seed, 0), null_mode, csv_data)?;
    let outcome = run_entry(entry, &x, &y, gamma, config.alpha, mix(rep_seed, 1))?;
    Ok(outcome)
}

/// Stream index for tuning seeds, outside the replication index range.
const TUNE_STREAM: u64 = 0x74756e65; // "tune"

fn tune_gamma(
    config: &ExperimentConfig,
    sweep_index: usize,
    test_index: usize,
    null_mode: bool,
    csv_data: Option<&(SampleSet, SampleSet)>,
    audit: &mut Vec<String>,
) -> Result<Scaling, HarnessError> {
    let entry = &config.tests[test_index];
    let point = point_at(config, sweep_index);
    let (lo, hi, step) = config.tune_grid;
    let grid = ScalingGrid::from_range(lo, hi, step)?;
    let tune_seed = mix(
        mix(mix(config.seed, sweep_index as u64), test_index as u64),
        TUNE_STREAM,
    );
    let alpha = config.alpha;
    let train_n = if config.tune_n == 0 {
        point.n
    } else {
        config.tune_n.min(point.n)
    };
    let train_point = Point {
        n: train_n,
        ..point
    };

    let (chosen, table) = match (&config.generator, csv_data) {
        (Generator::CsvPair { .. }, Some(pair)) => {
            // Real data: bootstrap from the training half.
            select_scaling(
                |xb, yb, g, s| run_entry(entry, xb, yb, g, alpha, s),
                &pair.0,
                &pair.1,
                &grid,
                config.tune_reps,
                Resample::Bootstrap,
                tune_seed,
            )?
        }
        _ => {
            // Simulations: fresh training draws per repetition, disjoint
            // from the evaluation stream by the tuning seed namespace.
            let template = generate_pair(
                &config.generator,
                train_point,
                mix(tune_seed, u64::MAX),
                null_mode,
                csv_data,
            )?;
            let generator = &config.generator;
            select_scaling(
                |_, _, g, s| {
                    let (xt, yt) = generate_pair(generator, train_point, mix(s, 7), null_mode, None)
                        .map_err(|e| match e {
                            HarnessError::Test(err) => err,
                            other => Error::Domain(other.to_string()),
                        })?;
                    run_entry(entry, &xt, &yt, g, alpha, mix(s, 8))
                },
                &template.0,
                &template.1,
                &grid,
                config.tune_reps,
                Resample::FreshDraws,
                tune_seed,
            )?
        }
    };
    for row in &table {
        audit.push(format!(
            "tune sweep={} test={} log2_gamma={} gamma={} median_p={} upper_quartile_p={} min_p={} max_p={} reps={}",
            format_value(config.values[sweep_index]),
            entry.label,
            row.log2_gamma,
            row.gamma,
            row.median_p,
            row.upper_quartile_p,
            row.min_p,
            row.max_p,
            row.reps
        ));
    }
    Ok(chosen)
}

fn sweep_inner(config: &ExperimentConfig, null_mode: bool) -> Result<PowerCurve, HarnessError> {
    if null_mode {
        if let Generator::CsvPair { .. } = config.generator {
            return Err(HarnessError::Config {
                line: 0,
                message: "type1 needs a synthetic generator that can draw P = Q".into(),
            });
        }
    }
    // Load CSV data once up front.
    let csv_data = match &config.generator {
        Generator::CsvPair { x_path, y_path } => Some(load_csv_pair(x_path, y_path)?),
        _ => None,
    };
    let mut audit = Vec::new();
    if let Generator::Blobs(spec) = &config.generator {
        audit.push(format!(
            "generator blobs grid={} spacing={} stretch={} angle={}",
            spec.grid, spec.spacing, spec.stretch, spec.angle
        ));
    }
    let mut rows = Vec::new();
    for sweep_index in 0..config.values.len() {
        let point = point_at(config, sweep_index);
        for test_index in 0..config.tests.len() {
            let entry = &config.tests[test_index];
            if entry.method == TestMethod::Mmd && point.n > config.mmd_cap {
                rows.push(PowerRow {
                    sweep_value: config.values[sweep_index],
                    test: entry.label.clone(),
                    rate: 0.0,
                    wald_low: wald_interval(config.alpha, config.replications).0,
                    wald_high: wald_interval(config.alpha, config.replications).1,
                    mean_elapsed_s: 0.0,
                    replications: 0,
                    flags: vec![format!("skipped:n>{}", config.mmd_cap)],
                });
                continue;
            }
            let mut flags = Vec::new();
            let gamma = match entry.gamma {
                GammaChoice::Fixed(g) => Scaling::new(g)?,
                GammaChoice::Tune => {
                    let g = tune_gamma(
                        config,
                        sweep_index,
                        test_index,
                        null_mode,
                        csv_data.as_ref(),
                        &mut audit,
                    )?;
                    flags.push("tuned".to_string());
                    g
                }
            };
            flags.insert(0, format!("gamma={}", gamma.gamma()));
            // Quadratic MMD replications run sequentially; the permutation
            // engine parallelizes internally and its pooled Gram matrix is
            // too large to hold once per worker.
            let results: Vec<Result<TestOutcome, HarnessError>> =
                if entry.method == TestMethod::Mmd {
                    (0..config.replications)
                        .map(|rep| {
                            replication_inner(
                                config,
                                sweep_index,
                                test_index,
                                rep,
                                gamma,
                                null_mode,
                                csv_data.as_ref(),
                            )
                        })
                        .collect()
                } else {
                    (0..config.replications)
                        .into_par_iter()
                        .map(|rep| {
                            replication_inner(
                                config,
                                sweep_index,
                                test_index,
                                rep,
                                gamma,
                                null_mode,
                                csv_data.as_ref(),
                            )
                        })
                        .collect()
                };
            let mut rejects = 0usize;
            let mut completed = 0usize;
            let mut elapsed_sum = 0.0;
            let mut degenerate = 0usize;
            let mut first_error: Option<String> = None;
            let mut errors = 0usize;
            for r in results {
                match r {
                    Ok(outcome) => {
                        completed += 1;
                        if outcome.reject {
                            rejects += 1;
                        }
                        if outcome.degenerate {
                            degenerate += 1;
                        }
                        elapsed_sum += outcome.elapsed_s();
                    }
                    Err(e) => {
                        errors += 1;
                        first_error.get_or_insert_with(|| e.to_string());
                    }
                }
            }
            if degenerate > 0 {
                flags.push(format!("degenerate={degenerate}"));
            }
            if errors > 0 {
                flags.push(format!(
                    "errors={errors}({})",
                    first_error.unwrap_or_default().replace(',', ";")
                ));
            }
            let (wald_low, wald_high) = wald_interval(config.alpha, completed.max(1));
            let rate = if completed > 0 {
                rejects as f64 / completed as f64
            } else {
                0.0
            };
            if null_mode {
                flags.push(
                    if rate >= wald_low && rate <= wald_high {
                        "in_band".to_string()
                    } else {
                        "out_of_band".to_string()
                    },
                );
            }
            rows.push(PowerRow {
                sweep_value: config.values[sweep_index],
                test: entry.label.clone(),
                rate,
                wald_low,
                wald_high,
                mean_elapsed_s: if completed > 0 {
                    elapsed_sum / completed as f64
                } else {
                    0.0
                },
                replications: completed,
                flags,
            });
        }
    }
    Ok(PowerCurve {
        rows,
        audit_lines: audit,
    })
}

fn with_worker_pool<T: Send>(
    workers: usize,
    job: impl FnOnce() -> Result<T, HarnessError> + Send,
) -> Result<T, HarnessError> {
    if workers == 0 {
        return job();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| HarnessError::Config {
            line: 0,
            message: format!("cannot build worker pool: {e}"),
        })?;
    pool.install(job)
}

/// Runs a power sweep: for every (sweep value, test entry), the rejection
/// rate over the configured replications, with 99% Wald band and the mean
/// per-test wall clock. Rows come out in sweep-major order. A failing entry
/// flags only its own row.
pub fn run_power_curve(config: &ExperimentConfig) -> Result<PowerCurve, HarnessError> {
    with_worker_pool(config.workers, || sweep_inner(config, false))
}

/// As [`run_power_curve`], but both samples come from the P branch so every
/// rejection is a Type-I error; rows gain an in/out-of-band annotation.
pub fn run_type1(config: &ExperimentConfig) -> Result<PowerCurve, HarnessError> {
    with_worker_pool(config.workers, || sweep_inner(config, true))
}
