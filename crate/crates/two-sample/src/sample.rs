//! Sample containers, the length-scale parameter, and test-frequency
//! sampling.

use ndarray::Array2;

use crate::error::Error;
use crate::rng::{Seed, Stream};

/// An n x d matrix of observations, one row per sample point.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleSet {
    data: Array2<f64>,
}

impl SampleSet {
    /// Wraps an n x d matrix. Requires n >= 1, d >= 1 and finite entries.
    pub fn new(data: Array2<f64>) -> Result<Self, Error> {
        let (n, d) = data.dim();
        if n == 0 || d == 0 {
            return Err(Error::domain("sample set must be non-empty (n, d >= 1)"));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(Error::domain("sample set entries must be finite"));
        }
        Ok(SampleSet { data })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, Error> {
        let n = rows.len();
        let d = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::dim("ragged rows in sample set".to_string()));
        }
        let flat: Vec<f64> = rows.into_iter().flatten().collect();
        let data = Array2::from_shape_vec((n, d), flat)
            .map_err(|e| Error::dim(format!("bad shape: {e}")))?;
        SampleSet::new(data)
    }

    pub fn n(&self) -> usize {
        self.data.nrows()
    }

    pub fn dim(&self) -> usize {
        self.data.ncols()
    }

    pub fn row(&self, i: usize) -> &[f64] {
        self.data.row(i).to_slice().expect("rows are contiguous")
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.data
    }

    /// A new set containing the given rows, in order.
    pub fn select_rows(&self, indices: &[usize]) -> SampleSet {
        let d = self.dim();
        let mut out = Array2::zeros((indices.len(), d));
        for (k, &i) in indices.iter().enumerate() {
            out.row_mut(k).assign(&self.data.row(i));
        }
        SampleSet { data: out }
    }
}

/// Positive length-scale applied to observed data before feature evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Scaling {
    gamma: f64,
}

impl Scaling {
    pub fn new(gamma: f64) -> Result<Self, Error> {
        if !(gamma > 0.0) || !gamma.is_finite() {
            return Err(Error::domain("scaling gamma must be positive and finite"));
        }
        Ok(Scaling { gamma })
    }

    pub fn gamma(self) -> f64 {
        self.gamma
    }
}

/// Divides every entry of `x` by the length-scale. Shape is preserved.
pub fn scale_data(x: &SampleSet, gamma: Scaling) -> SampleSet {
    SampleSet {
        data: x.matrix().mapv(|v| v / gamma.gamma()),
    }
}

/// A J x d matrix of random test frequencies/locations, rows pairwise
/// distinct.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyMatrix {
    rows: Array2<f64>,
}

impl FrequencyMatrix {
    pub fn count(&self) -> usize {
        self.rows.nrows()
    }

    pub fn dim(&self) -> usize {
        self.rows.ncols()
    }

    pub fn row(&self, j: usize) -> &[f64] {
        self.rows.row(j).to_slice().expect("rows are contiguous")
    }

    pub fn matrix(&self) -> &Array2<f64> {
        &self.rows
    }
}

/// Draws J i.i.d. standard-normal d-vectors from the seeded stream.
///
/// Deterministic given `(j_count, d, seed)`. Row collisions have probability
/// zero in floating point; if one is ever detected the row is redrawn.
pub fn draw_frequencies(j_count: usize, d: usize, seed: Seed) -> Result<FrequencyMatrix, Error> {
    if j_count == 0 || d == 0 {
        return Err(Error::domain("draw_frequencies requires J >= 1 and d >= 1"));
    }
    let mut rng = Stream::new(seed);
    let mut rows = Array2::zeros((j_count, d));
    for j in 0..j_count {
        loop {
            for k in 0..d {
                rows[(j, k)] = rng.next_normal();
            }
            let duplicate = (0..j).any(|prev| (0..d).all(|k| rows[(prev, k)] == rows[(j, k)]));
            if !duplicate {
                break;
            }
        }
    }
    Ok(FrequencyMatrix { rows })
}
