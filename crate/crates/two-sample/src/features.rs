//! The three per-point feature maps whose differences drive the analytic
//! tests: Mean Embedding (ME), Smooth Characteristic Function (SCF) and the
//! plain Characteristic Function (CF).
//!
//! All maps operate on data that the caller has already divided by the
//! length-scale gamma (see [`crate::sample::scale_data`]); the Gaussian
//! factor then has fixed unit width. SCF and CF produce an interleaved
//! (sin_j, cos_j) pair per frequency, so serialized difference matrices are
//! comparable across runs.

use crate::error::Error;
use crate::sample::FrequencyMatrix;

/// Which analytic representation a test uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureKind {
    /// Gaussian-kernel mean embedding: exp(-||x - t||^2) per frequency.
    MeanEmbedding,
    /// Smoothed characteristic function: the CF pair damped by the Gaussian
    /// factor exp(-||x - t||^2).
    SmoothCf,
    /// Plain empirical characteristic function: (sin(t.x), cos(t.x)).
    Cf,
}

impl FeatureKind {
    pub fn label(self) -> &'static str {
        match self {
            FeatureKind::MeanEmbedding => "me",
            FeatureKind::SmoothCf => "scf",
            FeatureKind::Cf => "cf",
        }
    }
}

impl std::fmt::Display for FeatureKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

/// Feature dimension p for J frequencies: J for ME, 2J for SCF and CF (the
/// imaginary and real parts are stacked).
pub fn feature_dim(kind: FeatureKind, j_count: usize) -> usize {
    match kind {
        FeatureKind::MeanEmbedding => j_count,
        FeatureKind::SmoothCf | FeatureKind::Cf => 2 * j_count,
    }
}

pub(crate) fn squared_distance(x: &[f64], t: &[f64]) -> f64 {
    x.iter().zip(t).map(|(a, b)| (a - b) * (a - b)).sum()
}

pub(crate) fn dot(x: &[f64], t: &[f64]) -> f64 {
    x.iter().zip(t).map(|(a, b)| a * b).sum()
}

/// Writes the feature vector of a single (already scaled) point into `out`.
pub(crate) fn feature_map_into(
    kind: FeatureKind,
    x: &[f64],
    t: &FrequencyMatrix,
    out: &mut [f64],
) {
    debug_assert_eq!(out.len(), feature_dim(kind, t.count()));
    match kind {
        FeatureKind::MeanEmbedding => {
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = (-squared_distance(x, t.row(j))).exp();
            }
        }
        FeatureKind::SmoothCf => {
            for j in 0..t.count() {
                let tj = t.row(j);
                let damp = (-squared_distance(x, tj)).exp();
                let (sin, cos) = dot(x, tj).sin_cos();
                out[2 * j] = damp * sin;
                out[2 * j + 1] = damp * cos;
            }
        }
        FeatureKind::Cf => {
            for j in 0..t.count() {
                let (sin, cos) = dot(x, t.row(j)).sin_cos();
                out[2 * j] = sin;
                out[2 * j + 1] = cos;
            }
        }
    }
}

/// Evaluates the feature map of one point, already divided by gamma.
///
/// Coordinate layout: ME gives one coordinate per frequency; SCF and CF give
/// the interleaved pair `(sin(t_j . x), cos(t_j . x))`, damped by
/// `exp(-||x - t_j||^2)` in the SCF case. Every output lies in [-1, 1].
pub fn feature_map(kind: FeatureKind, x: &[f64], t: &FrequencyMatrix) -> Result<Vec<f64>, Error> {
    if x.len() != t.dim() {
        return Err(Error::dim(format!(
            "feature_map: point has dimension {}, frequencies {}",
            x.len(),
            t.dim()
        )));
    }
    let mut out = vec![0.0; feature_dim(kind, t.count())];
    feature_map_into(kind, x, t, &mut out);
    Ok(out)
}
