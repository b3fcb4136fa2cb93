//! Length-scale selection on held-out training data: run the test
//! repeatedly per candidate gamma and keep the scaling with the smallest
//! median p-value.

use rayon::prelude::*;

use crate::error::Error;
use crate::outcome::TestOutcome;
use crate::rng::{mix, Seed, Stream};
use crate::sample::{SampleSet, Scaling};

/// Candidate length-scales as binary-log exponents; gamma = 2^exponent.
#[derive(Debug, Clone)]
pub struct ScalingGrid {
    log2_values: Vec<f64>,
}

impl ScalingGrid {
    /// Builds a grid from exponents, which must be strictly increasing.
    pub fn new(log2_values: Vec<f64>) -> Result<Self, Error> {
        if log2_values.is_empty() {
            return Err(Error::domain("scaling grid must be nonempty"));
        }
        if log2_values.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::domain("scaling grid exponents must strictly increase"));
        }
        if log2_values.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("scaling grid exponents must be finite"));
        }
        Ok(ScalingGrid { log2_values })
    }

    /// Integer exponents lo..=hi with the given positive step.
    pub fn from_range(lo: f64, hi: f64, step: f64) -> Result<Self, Error> {
        if !(step > 0.0) {
            return Err(Error::domain("grid step must be positive"));
        }
        let mut v = Vec::new();
        let mut e = lo;
        while e <= hi + 1e-9 {
            v.push(e);
            e += step;
        }
        ScalingGrid::new(v)
    }

    pub fn exponents(&self) -> &[f64] {
        &self.log2_values
    }
}

impl Default for ScalingGrid {
    /// Exponents -10..=10 in unit steps.
    fn default() -> Self {
        ScalingGrid::from_range(-10.0, 10.0, 1.0).expect("static grid")
    }
}

/// How training data is refreshed between tuning repetitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Resample {
    /// Resample the training sets with replacement at their original size
    /// (real-data mode).
    Bootstrap,
    /// Pass the training sets through untouched and let the test callback
    /// draw fresh data from the repetition seed (simulation mode).
    FreshDraws,
}

/// Per-candidate summary of the tuning p-values, kept for audit output.
#[derive(Debug, Clone)]
pub struct ScalingSummary {
    pub log2_gamma: f64,
    pub gamma: f64,
    pub median_p: f64,
    pub upper_quartile_p: f64,
    pub min_p: f64,
    pub max_p: f64,
    pub reps: usize,
}

/// Linear-interpolation quantile of sorted values.
fn sorted_quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn bootstrap_rows(s: &SampleSet, rng: &mut Stream) -> SampleSet {
    let idx: Vec<usize> = (0..s.n()).map(|_| rng.next_index(s.n())).collect();
    s.select_rows(&idx)
}

/// Evaluates every candidate gamma by running `test` `reps` times on
/// resampled training data and picks the one with the smallest median
/// p-value. Exact median ties fall back to the smaller upper quartile, then
/// to the smaller exponent. The full summary table is returned for audit.
///
/// A candidate whose covariance goes numerically singular (extreme
/// length-scales degenerate the features) scores p = 1 for that repetition:
/// an uncomputable test carries no evidence and must not win the grid.
/// Other errors propagate.
///
/// The operation sees only training data; keep it disjoint from anything
/// used for a reported test.
pub fn select_scaling<F>(
    test: F,
    x_train: &SampleSet,
    y_train: &SampleSet,
    grid: &ScalingGrid,
    reps: usize,
    resample: Resample,
    seed: Seed,
) -> Result<(Scaling, Vec<ScalingSummary>), Error>
where
    F: Fn(&SampleSet, &SampleSet, Scaling, Seed) -> Result<TestOutcome, Error> + Sync,
{
    if reps < 5 {
        return Err(Error::domain("tuning needs at least 5 repetitions"));
    }
    let candidates: Vec<(usize, f64)> = grid
        .exponents()
        .iter()
        .copied()
        .enumerate()
        .collect();
    let summaries: Vec<ScalingSummary> = candidates
        .par_iter()
        .map(|&(gi, log2_gamma)| {
            let gamma = Scaling::new(log2_gamma.exp2())?;
            let mut p_values = Vec::with_capacity(reps);
            for rep in 0..reps {
                let rep_seed = mix(mix(seed, gi as u64), rep as u64);
                let outcome = match resample {
                    Resample::Bootstrap => {
                        let mut rng = Stream::new(mix(rep_seed, 1));
                        let xb = bootstrap_rows(x_train, &mut rng);
                        let yb = bootstrap_rows(y_train, &mut rng);
                        test(&xb, &yb, gamma, mix(rep_seed, 2))
                    }
                    Resample::FreshDraws => test(x_train, y_train, gamma, mix(rep_seed, 2)),
                };
                match outcome {
                    Ok(o) => p_values.push(o.p_value),
                    Err(Error::SingularMatrix { .. }) => p_values.push(1.0),
                    Err(other) => return Err(other),
                }
            }
            p_values.sort_by(f64::total_cmp);
            Ok(ScalingSummary {
                log2_gamma,
                gamma: gamma.gamma(),
                median_p: sorted_quantile(&p_values, 0.5),
                upper_quartile_p: sorted_quantile(&p_values, 0.75),
                min_p: p_values[0],
                max_p: p_values[p_values.len() - 1],
                reps,
            })
        })
        .collect::<Result<_, Error>>()?;
    let best = summaries
        .iter()
        .min_by(|a, b| {
            a.median_p
                .total_cmp(&b.median_p)
                .then(a.upper_quartile_p.total_cmp(&b.upper_quartile_p))
                .then(a.log2_gamma.total_cmp(&b.log2_gamma))
        })
        .expect("grid is nonempty");
    Ok((Scaling::new(best.gamma)?, summaries))
}
