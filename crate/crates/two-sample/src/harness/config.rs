//! Flat key-value experiment configs with repeated `test.*` blocks.
//!
//! The format is line-oriented (`key = value`, `#` comments) so experiment
//! definitions diff cleanly and can be committed next to their results. A
//! `test.name` line opens a new test entry; the `test.*` keys that follow
//! attach to it.

use std::path::Path;

use crate::datagen::BlobsSpec;
use crate::features::FeatureKind;
use crate::harness::HarnessError;
use crate::rng::Seed;

/// Which synthetic family (or file pair) produces the two samples.
#[derive(Debug, Clone, PartialEq)]
pub enum Generator {
    /// N(0, I_D) vs N(e_1, I_D).
    DatasetOne,
    /// N(0, I_D) vs N(0, diag(2, 1, ..., 1)).
    DatasetTwo,
    /// The 2-d Gaussian-grid mixture.
    Blobs(BlobsSpec),
    /// Two CSV files of observations.
    CsvPair { x_path: String, y_path: String },
}

impl Generator {
    pub fn label(&self) -> &'static str {
        match self {
            Generator::DatasetOne => "dataset_one",
            Generator::DatasetTwo => "dataset_two",
            Generator::Blobs(_) => "blobs",
            Generator::CsvPair { .. } => "csv-pair",
        }
    }
}

/// The swept variable of an experiment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    SampleSize,
    Dimension,
    NoiseSigma,
}

impl SweepVariable {
    pub fn label(self) -> &'static str {
        match self {
            SweepVariable::SampleSize => "n",
            SweepVariable::Dimension => "D",
            SweepVariable::NoiseSigma => "noise",
        }
    }
}

/// Which test an entry runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TestMethod {
    Analytic(FeatureKind),
    /// Quadratic-time MMD with permutation null.
    Mmd,
    /// Fixed-block B-test.
    Block,
    /// MMD on a sqrt(n) subsample.
    Subsampled,
}

impl TestMethod {
    pub fn parse(s: &str) -> Option<TestMethod> {
        Some(match s {
            "me" => TestMethod::Analytic(FeatureKind::MeanEmbedding),
            "scf" => TestMethod::Analytic(FeatureKind::SmoothCf),
            "cf" => TestMethod::Analytic(FeatureKind::Cf),
            "mmd" => TestMethod::Mmd,
            "block" => TestMethod::Block,
            "sub" => TestMethod::Subsampled,
            _ => return None,
        })
    }

    pub fn label(self) -> &'static str {
        match self {
            TestMethod::Analytic(kind) => kind.label(),
            TestMethod::Mmd => "mmd",
            TestMethod::Block => "block",
            TestMethod::Subsampled => "sub",
        }
    }
}

/// Fixed length-scale, or tune it on training data first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GammaChoice {
    Fixed(f64),
    Tune,
}

/// One configured test: method, parameters and length-scale choice.
#[derive(Debug, Clone)]
pub struct TestEntry {
    pub method: TestMethod,
    /// Number of test frequencies for the analytic tests.
    pub frequencies: usize,
    /// Block size for the B-test.
    pub block_size: usize,
    /// Permutation count for the MMD nulls.
    pub permutations: usize,
    pub gamma: GammaChoice,
    /// Row label in the output CSV.
    pub label: String,
}

/// A full experiment: generator, sweep, tests, replication budget.
#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub generator: Generator,
    pub sweep: SweepVariable,
    pub values: Vec<f64>,
    pub tests: Vec<TestEntry>,
    pub replications: usize,
    pub alpha: f64,
    pub seed: Seed,
    /// Base sample size when the sweep is over something else.
    pub base_n: usize,
    /// Base dimension for the Gaussian generators.
    pub base_dim: usize,
    /// Base noise sigma added to both samples.
    pub base_noise: f64,
    /// Worker threads for replications; 0 means all cores, 1 is benchmark
    /// mode.
    pub workers: usize,
    /// Quadratic MMD entries are skipped (flagged) above this sample size.
    pub mmd_cap: usize,
    /// Tuning repetitions per grid point.
    pub tune_reps: usize,
    /// Tuning grid as log2 exponents lo:hi:step.
    pub tune_grid: (f64, f64, f64),
    /// Cap on the training sample size used for tuning; 0 keeps the sweep n.
    pub tune_n: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            generator: Generator::DatasetOne,
            sweep: SweepVariable::SampleSize,
            values: vec![1000.0],
            tests: Vec::new(),
            replications: 100,
            alpha: 0.05,
            seed: Seed(0),
            base_n: 1000,
            base_dim: 2,
            base_noise: 0.0,
            workers: 0,
            mmd_cap: 6000,
            tune_reps: 25,
            tune_grid: (-10.0, 10.0, 1.0),
            tune_n: 0,
        }
    }
}

fn conf_err(line: usize, message: impl Into<String>) -> HarnessError {
    HarnessError::Config {
        line,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, value: &str) -> Result<T, HarnessError> {
    value
        .parse::<T>()
        .map_err(|_| conf_err(line, format!("invalid number for {key}: '{value}'")))
}

impl ExperimentConfig {
    /// Parses a config file; see the module docs for the format.
    pub fn from_path(path: &Path) -> Result<ExperimentConfig, HarnessError> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })?;
        ExperimentConfig::from_str_contents(&text)
    }

    pub fn from_str_contents(text: &str) -> Result<ExperimentConfig, HarnessError> {
        let mut config = ExperimentConfig::default();
        let mut blobs = BlobsSpec::default();
        let mut generator_name = String::from("dataset_one");
        let mut csv_x = None;
        let mut csv_y = None;
        let mut current_test: Option<TestEntry> = None;
        let mut tests: Vec<TestEntry> = Vec::new();

        for (idx, raw) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| conf_err(lineno, format!("expected 'key = value', got '{line}'")))?;
            let key = key.trim();
            let value = value.trim();
            if let Some(test_key) = key.strip_prefix("test.") {
                if test_key == "name" {
                    if let Some(done) = current_test.take() {
                        tests.push(done);
                    }
                    let method = TestMethod::parse(value).ok_or_else(|| {
                        conf_err(lineno, format!("unknown test '{value}' (me|scf|cf|mmd|block|sub)"))
                    })?;
                    current_test = Some(TestEntry {
                        method,
                        frequencies: 5,
                        block_size: 10,
                        permutations: 250,
                        gamma: GammaChoice::Fixed(1.0),
                        label: value.to_string(),
                    });
                    continue;
                }
                let entry = current_test
                    .as_mut()
                    .ok_or_else(|| conf_err(lineno, "test.* key before any test.name"))?;
                match test_key {
                    "J" => entry.frequencies = parse_num(lineno, key, value)?,
                    "B" => entry.block_size = parse_num(lineno, key, value)?,
                    "permutations" => entry.permutations = parse_num(lineno, key, value)?,
                    "gamma" => {
                        entry.gamma = if value == "tune" {
                            GammaChoice::Tune
                        } else {
                            GammaChoice::Fixed(parse_num(lineno, key, value)?)
                        }
                    }
                    "label" => entry.label = value.to_string(),
                    other => return Err(conf_err(lineno, format!("unknown test key '{other}'"))),
                }
                continue;
            }
            match key {
                "generator" => generator_name = value.to_string(),
                "sweep" => {
                    config.sweep = match value {
                        "n" => SweepVariable::SampleSize,
                        "D" | "dim" => SweepVariable::Dimension,
                        "noise" => SweepVariable::NoiseSigma,
                        other => {
                            return Err(conf_err(lineno, format!("unknown sweep '{other}' (n|D|noise)")))
                        }
                    }
                }
                "values" => {
                    config.values = value
                        .split(',')
                        .map(|v| parse_num::<f64>(lineno, key, v.trim()))
                        .collect::<Result<_, _>>()?;
                }
                "replications" => config.replications = parse_num(lineno, key, value)?,
                "alpha" => config.alpha = parse_num(lineno, key, value)?,
                "seed" => config.seed = Seed(parse_num(lineno, key, value)?),
                "n" => config.base_n = parse_num(lineno, key, value)?,
                "D" | "dim" => config.base_dim = parse_num(lineno, key, value)?,
                "noise" => config.base_noise = parse_num(lineno, key, value)?,
                "workers" => config.workers = parse_num(lineno, key, value)?,
                "mmd_cap" => config.mmd_cap = parse_num(lineno, key, value)?,
                "tune_reps" => config.tune_reps = parse_num(lineno, key, value)?,
                "tune_n" => config.tune_n = parse_num(lineno, key, value)?,
                "tune_grid" => {
                    let parts: Vec<&str> = value.split(':').collect();
                    if parts.len() != 3 {
                        return Err(conf_err(lineno, "tune_grid wants lo:hi:step"));
                    }
                    config.tune_grid = (
                        parse_num(lineno, key, parts[0])?,
                        parse_num(lineno, key, parts[1])?,
                        parse_num(lineno, key, parts[2])?,
                    );
                }
                "blobs_grid" => blobs.grid = parse_num(lineno, key, value)?,
                "blobs_spacing" => blobs.spacing = parse_num(lineno, key, value)?,
                "blobs_stretch" => blobs.stretch = parse_num(lineno, key, value)?,
                "blobs_angle" => blobs.angle = parse_num(lineno, key, value)?,
                "x_path" => csv_x = Some(value.to_string()),
                "y_path" => csv_y = Some(value.to_string()),
                other => return Err(conf_err(lineno, format!("unknown key '{other}'"))),
            }
        }
        if let Some(done) = current_test.take() {
            tests.push(done);
        }
        config.tests = tests;
        config.generator = match generator_name.as_str() {
            "dataset_one" => Generator::DatasetOne,
            "dataset_two" => Generator::DatasetTwo,
            "blobs" => Generator::Blobs(blobs),
            "csv-pair" => Generator::CsvPair {
                x_path: csv_x.ok_or_else(|| conf_err(0, "csv-pair needs x_path"))?,
                y_path: csv_y.ok_or_else(|| conf_err(0, "csv-pair needs y_path"))?,
            },
            other => return Err(conf_err(0, format!("unknown generator '{other}'"))),
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), HarnessError> {
        let err = |m: String| conf_err(0, m);
        if self.values.is_empty() {
            return Err(err("values must be nonempty".into()));
        }
        if self.values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(err("values must be strictly increasing".into()));
        }
        if self.replications == 0 {
            return Err(err("replications must be >= 1".into()));
        }
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(err("alpha must lie in (0, 1)".into()));
        }
        if self.tests.is_empty() {
            return Err(err("at least one test.* block is required".into()));
        }
        let integer_values = self
            .values
            .iter()
            .all(|v| v.fract() == 0.0 && *v >= 1.0);
        match self.sweep {
            SweepVariable::SampleSize | SweepVariable::Dimension => {
                if !integer_values {
                    return Err(err(format!(
                        "sweep over {} needs positive integer values",
                        self.sweep.label()
                    )));
                }
            }
            SweepVariable::NoiseSigma => {
                if self.values.iter().any(|v| *v < 0.0) {
                    return Err(err("noise values must be nonnegative".into()));
                }
            }
        }
        if matches!(self.generator, Generator::Blobs(_)) && self.sweep == SweepVariable::Dimension {
            return Err(err("blobs data is two-dimensional; cannot sweep D".into()));
        }
        if matches!(self.generator, Generator::CsvPair { .. })
            && self.sweep == SweepVariable::Dimension
        {
            return Err(err("csv-pair dimension is fixed by the files; cannot sweep D".into()));
        }
        for t in &self.tests {
            if matches!(t.method, TestMethod::Analytic(_)) && t.frequencies == 0 {
                return Err(err(format!("test {}: J must be >= 1", t.label)));
            }
            if t.method == TestMethod::Block && t.block_size < 2 {
                return Err(err(format!("test {}: B must be >= 2", t.label)));
            }
            if matches!(t.method, TestMethod::Mmd | TestMethod::Subsampled) && t.permutations == 0 {
                return Err(err(format!("test {}: permutations must be >= 1", t.label)));
            }
            if let GammaChoice::Fixed(g) = t.gamma {
                if !(g > 0.0) {
                    return Err(err(format!("test {}: gamma must be positive", t.label)));
                }
            }
        }
        // Duplicate labels would collapse rows downstream.
        let mut labels: Vec<&str> = self.tests.iter().map(|t| t.label.as_str()).collect();
        labels.sort_unstable();
        if labels.windows(2).any(|w| w[0] == w[1]) {
            return Err(err(
                "duplicate test labels; set test.label to disambiguate".into(),
            ));
        }
        if self.tune_reps < 5 {
            return Err(err("tune_reps must be >= 5".into()));
        }
        Ok(())
    }
}
