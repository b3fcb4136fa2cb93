//! Linear-time Hotelling-type two-sample tests on analytic representations:
//! build the per-pair feature difference matrix Z, form its mean W and
//! covariance Sigma, and compare S = n W' Sigma^-1 W against a chi-squared
//! threshold.

use std::time::Instant;

use ndarray::{Array1, Array2};

use crate::error::Error;
use crate::features::{feature_dim, feature_map_into, FeatureKind};
use crate::linalg::solve_spd;
use crate::outcome::{NullMethod, TestOutcome};
use crate::rng::Seed;
use crate::sample::{draw_frequencies, scale_data, FrequencyMatrix, SampleSet, Scaling};
use crate::statdist::{chi2_quantile, chi2_sf, DegreesOfFreedom};

/// The n x p matrix of per-pair feature differences.
#[derive(Debug, Clone)]
pub struct DifferenceMatrix {
    z: Array2<f64>,
}

impl DifferenceMatrix {
    pub fn n(&self) -> usize {
        self.z.nrows()
    }

    pub fn feature_dim(&self) -> usize {
        self.z.ncols()
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.z
    }

    /// Wraps a raw matrix; rows are per-pair feature differences.
    pub fn from_matrix(z: Array2<f64>) -> Result<Self, Error> {
        if z.nrows() == 0 || z.ncols() == 0 {
            return Err(Error::domain("difference matrix must be non-empty"));
        }
        if z.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("difference matrix entries must be finite"));
        }
        Ok(DifferenceMatrix { z })
    }
}

/// What to do when the two samples have different sizes.
#[derive(Debug, Clone, Copy)]
pub enum UnequalSamples {
    /// Refuse: the pairing Z_i = f(X_i) - f(Y_i) needs equal counts.
    Reject,
    /// Shuffle the larger set with the given seed, then truncate both to the
    /// smaller count.
    TruncateShuffled(Seed),
}

fn align_samples<'a>(
    x: &'a SampleSet,
    y: &'a SampleSet,
    policy: UnequalSamples,
) -> Result<(SampleSet, SampleSet), Error> {
    if x.dim() != y.dim() {
        return Err(Error::dim(format!(
            "samples have dimensions {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    if x.n() == y.n() {
        return Ok((x.clone(), y.clone()));
    }
    match policy {
        UnequalSamples::Reject => Err(Error::UnequalSampleSizes {
            n_x: x.n(),
            n_y: y.n(),
        }),
        UnequalSamples::TruncateShuffled(seed) => {
            let keep = x.n().min(y.n());
            let shrink = |s: &SampleSet| {
                let mut idx: Vec<usize> = (0..s.n()).collect();
                crate::rng::Stream::new(seed).shuffle(&mut idx);
                idx.truncate(keep);
                s.select_rows(&idx)
            };
            if x.n() > keep {
                Ok((shrink(x), y.clone()))
            } else {
                Ok((x.clone(), shrink(y)))
            }
        }
    }
}

/// Row i = feature(X_i / gamma) - feature(Y_i / gamma). One pass over the
/// data, O(n J d) time.
///
/// Errors when the sample sizes differ; see [`difference_matrix_with`] for
/// the truncating variant.
pub fn difference_matrix(
    kind: FeatureKind,
    x: &SampleSet,
    y: &SampleSet,
    t: &FrequencyMatrix,
    gamma: Scaling,
) -> Result<DifferenceMatrix, Error> {
    difference_matrix_with(kind, x, y, t, gamma, UnequalSamples::Reject)
}

/// As [`difference_matrix`], with an explicit policy for unequal sizes.
pub fn difference_matrix_with(
    kind: FeatureKind,
    x: &SampleSet,
    y: &SampleSet,
    t: &FrequencyMatrix,
    gamma: Scaling,
    policy: UnequalSamples,
) -> Result<DifferenceMatrix, Error> {
    let (x, y) = align_samples(x, y, policy)?;
    if x.dim() != t.dim() {
        return Err(Error::dim(format!(
            "samples have dimension {}, frequencies {}",
            x.dim(),
            t.dim()
        )));
    }
    let xs = scale_data(&x, gamma);
    let ys = scale_data(&y, gamma);
    let n = xs.n();
    let p = feature_dim(kind, t.count());
    let mut z = Array2::zeros((n, p));
    let mut fx = vec![0.0; p];
    let mut fy = vec![0.0; p];
    for i in 0..n {
        feature_map_into(kind, xs.row(i), t, &mut fx);
        feature_map_into(kind, ys.row(i), t, &mut fy);
        let mut row = z.row_mut(i);
        let row = row.as_slice_mut().expect("row-major");
        for k in 0..p {
            row[k] = fx[k] - fy[k];
        }
    }
    Ok(DifferenceMatrix { z })
}

/// Mean vector W, covariance Sigma and count of a difference matrix.
#[derive(Debug, Clone)]
pub struct HotellingSummary {
    w: Array1<f64>,
    sigma: Array2<f64>,
    n: usize,
    centered: bool,
}

impl HotellingSummary {
    pub fn mean(&self) -> &Array1<f64> {
        &self.w
    }

    pub fn covariance(&self) -> &Array2<f64> {
        &self.sigma
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn centered(&self) -> bool {
        self.centered
    }

    pub fn feature_dim(&self) -> usize {
        self.w.len()
    }

    /// True when n < p + 1, where the covariance cannot have full rank.
    pub fn is_underdetermined(&self) -> bool {
        self.n < self.feature_dim() + 1
    }
}

fn summarize(z: &Array2<f64>, centered: bool) -> HotellingSummary {
    let (n, p) = z.dim();
    let nf = n as f64;
    let w = z.sum_axis(ndarray::Axis(0)) / nf;
    let mut sigma = Array2::zeros((p, p));
    if centered {
        let mut zc = z.clone();
        for mut row in zc.rows_mut() {
            row -= &w;
        }
        ndarray::linalg::general_mat_mul(1.0 / nf, &zc.t(), &zc, 0.0, &mut sigma);
    } else {
        ndarray::linalg::general_mat_mul(1.0 / nf, &z.t(), z, 0.0, &mut sigma);
    }
    // Symmetrize against rounding.
    for i in 0..p {
        for j in 0..i {
            let m = 0.5 * (sigma[(i, j)] + sigma[(j, i)]);
            sigma[(i, j)] = m;
            sigma[(j, i)] = m;
        }
    }
    HotellingSummary {
        w,
        sigma,
        n,
        centered,
    }
}

/// W = row mean of Z; Sigma = (1/n) sum of outer products, of the raw rows
/// (uncentered, the literal estimator) or the mean-centered rows.
pub fn mean_and_covariance(z: &DifferenceMatrix, centered: bool) -> HotellingSummary {
    summarize(&z.z, centered)
}

/// n W' (Sigma + ridge I)^-1 W. Returns exactly 0 when W = 0, without a
/// solve; a zero mean happens for identical samples where Sigma is singular
/// too.
pub fn hotelling_statistic(summary: &HotellingSummary, ridge: f64) -> Result<f64, Error> {
    if summary.w.iter().all(|&v| v == 0.0) {
        return Ok(0.0);
    }
    let w = summary.w.as_slice().expect("contiguous");
    let solved = solve_spd(&summary.sigma, w, ridge)?;
    let quad: f64 = w.iter().zip(&solved).map(|(a, b)| a * b).sum();
    Ok((summary.n as f64 * quad).max(0.0))
}

/// Options shared by the analytic tests.
#[derive(Debug, Clone, Copy)]
pub struct AnalyticOptions {
    /// Center the covariance (default). The uncentered flag reproduces the
    /// literal (1/n) Z'Z estimator; under the null both agree asymptotically.
    pub centered: bool,
    /// Ridge added to Sigma before the solve, as a fraction of trace/p.
    pub ridge_scale: f64,
    /// Policy for unequal sample counts.
    pub on_unequal: UnequalSamples,
}

impl Default for AnalyticOptions {
    fn default() -> Self {
        AnalyticOptions {
            centered: true,
            ridge_scale: 1e-8,
            on_unequal: UnequalSamples::Reject,
        }
    }
}

/// Difference features with a per-frequency positive rescaling.
///
/// For ME and SCF every coordinate of frequency j carries the common factor
/// exp(-||t_j||^2), which underflows once ||t_j||^2 passes ~700 (routine in
/// high dimension, where ||t_j||^2 ~ d). The statistic is invariant under
/// any invertible diagonal rescaling of the columns, so each frequency's
/// coordinates are computed relative to their own maximum exponent instead:
///
///   exp(-||u - t||^2) = exp(-||t||^2) * exp(a(u)),  a(u) = 2 u.t - ||u||^2,
///
/// and column j stores exp(a - m_j) differences with m_j the largest
/// exponent seen in either sample. Values stay inside [-1, 1] without losing
/// the relative differences that carry the signal.
fn scaled_difference_features(
    kind: FeatureKind,
    xs: &SampleSet,
    ys: &SampleSet,
    t: &FrequencyMatrix,
) -> Array2<f64> {
    let n = xs.n();
    let j_count = t.count();
    let p = feature_dim(kind, j_count);
    // All feature maps consume the projections x_i . t_j; one matrix product
    // delivers them in a cache-friendly n x J block.
    let proj_x = xs.matrix().dot(&t.matrix().t());
    let proj_y = ys.matrix().dot(&t.matrix().t());
    fn row_of(m: &Array2<f64>, i: usize) -> &[f64] {
        m.row(i).to_slice().expect("product rows are contiguous")
    }
    let mut z = Array2::zeros((n, p));
    if kind == FeatureKind::Cf {
        for i in 0..n {
            let (dx, dy) = (row_of(&proj_x, i), row_of(&proj_y, i));
            let mut row = z.row_mut(i);
            let row = row.as_slice_mut().expect("row-major");
            for j in 0..j_count {
                let (sx, cx) = dx[j].sin_cos();
                let (sy, cy) = dy[j].sin_cos();
                row[2 * j] = sx - sy;
                row[2 * j + 1] = cx - cy;
            }
        }
        return z;
    }
    // Exponents a_ij = 2 x_i . t_j - ||x_i||^2 and their per-column maxima.
    let sq_norms = |s: &SampleSet| -> Vec<f64> {
        (0..n)
            .map(|i| s.row(i).iter().map(|v| v * v).sum())
            .collect()
    };
    let xn = sq_norms(xs);
    let yn = sq_norms(ys);
    let mut col_max = vec![f64::NEG_INFINITY; j_count];
    for i in 0..n {
        let (dx, dy) = (row_of(&proj_x, i), row_of(&proj_y, i));
        for (j, m) in col_max.iter_mut().enumerate() {
            *m = m.max(2.0 * dx[j] - xn[i]).max(2.0 * dy[j] - yn[i]);
        }
    }
    for i in 0..n {
        let (dx, dy) = (row_of(&proj_x, i), row_of(&proj_y, i));
        let mut zrow = z.row_mut(i);
        let zrow = zrow.as_slice_mut().expect("row-major");
        match kind {
            FeatureKind::MeanEmbedding => {
                for j in 0..j_count {
                    let ex = (2.0 * dx[j] - xn[i] - col_max[j]).exp();
                    let ey = (2.0 * dy[j] - yn[i] - col_max[j]).exp();
                    zrow[j] = ex - ey;
                }
            }
            FeatureKind::SmoothCf => {
                for j in 0..j_count {
                    let ex = (2.0 * dx[j] - xn[i] - col_max[j]).exp();
                    let ey = (2.0 * dy[j] - yn[i] - col_max[j]).exp();
                    let (sx, cx) = dx[j].sin_cos();
                    let (sy, cy) = dy[j].sin_cos();
                    zrow[2 * j] = ex * sx - ey * sy;
                    zrow[2 * j + 1] = ex * cx - ey * cy;
                }
            }
            FeatureKind::Cf => unreachable!(),
        }
    }
    z
}

/// Runs the analytic test: draw J frequencies from the seed, assemble the
/// difference features, and test S = n W' Sigma^-1 W against the chi-squared
/// law with `feature_dim(kind, J)` degrees of freedom.
pub fn run_analytic_test(
    kind: FeatureKind,
    x: &SampleSet,
    y: &SampleSet,
    j_count: usize,
    gamma: Scaling,
    alpha: f64,
    seed: Seed,
) -> Result<TestOutcome, Error> {
    run_analytic_test_with(kind, x, y, j_count, gamma, alpha, seed, &AnalyticOptions::default())
}

/// As [`run_analytic_test`] with explicit options.
#[allow(clippy::too_many_arguments)]
pub fn run_analytic_test_with(
    kind: FeatureKind,
    x: &SampleSet,
    y: &SampleSet,
    j_count: usize,
    gamma: Scaling,
    alpha: f64,
    seed: Seed,
    options: &AnalyticOptions,
) -> Result<TestOutcome, Error> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("alpha must lie in (0, 1)"));
    }
    if j_count == 0 {
        return Err(Error::domain("need at least one test frequency"));
    }
    let (x, y) = align_samples(x, y, options.on_unequal)?;
    let start = Instant::now();
    let t = draw_frequencies(j_count, x.dim(), seed)?;
    let xs = scale_data(&x, gamma);
    let ys = scale_data(&y, gamma);
    let z = scaled_difference_features(kind, &xs, &ys, &t);
    let summary = summarize(&z, options.centered);
    let p_dim = summary.feature_dim();
    let trace: f64 = (0..p_dim).map(|i| summary.sigma[(i, i)]).sum();
    let ridge = options.ridge_scale * trace / p_dim as f64;
    let statistic = hotelling_statistic(&summary, ridge)?;
    let dof = DegreesOfFreedom::new(p_dim as u32)?;
    let p_value = chi2_sf(statistic, dof)?;
    let threshold = chi2_quantile(1.0 - alpha, dof)?;
    Ok(TestOutcome {
        statistic,
        null: NullMethod::ChiSquared(dof),
        p_value,
        threshold,
        reject: statistic > threshold,
        alpha,
        elapsed: start.elapsed(),
        degenerate: false,
    })
}
