//! Synthetic data generators for the benchmark simulations: diagonal
//! Gaussians, the two high-dimensional mean/variance-shift pairs, the 2-d
//! Blobs mixture grid, and a noise-corruption helper.

use ndarray::Array2;

use crate::error::Error;
use crate::rng::{Seed, Stream};
use crate::sample::SampleSet;

/// n rows with independent coordinates N(mean_k, std_k^2), deterministic per
/// seed.
pub fn gaussian_sample(
    n: usize,
    mean: &[f64],
    std_diag: &[f64],
    seed: Seed,
) -> Result<SampleSet, Error> {
    if n == 0 || mean.is_empty() {
        return Err(Error::domain("gaussian_sample requires n >= 1 and d >= 1"));
    }
    if mean.len() != std_diag.len() {
        return Err(Error::dim(format!(
            "mean has dimension {}, std {}",
            mean.len(),
            std_diag.len()
        )));
    }
    if std_diag.iter().any(|&s| !(s > 0.0) || !s.is_finite()) {
        return Err(Error::domain("standard deviations must be positive"));
    }
    let d = mean.len();
    let mut rng = Stream::new(seed);
    let mut data = Array2::zeros((n, d));
    for i in 0..n {
        for k in 0..d {
            data[(i, k)] = mean[k] + std_diag[k] * rng.next_normal();
        }
    }
    SampleSet::new(data)
}

/// The mean-shift pair: P = N(0, I_D) against Q = N(e_1, I_D).
pub fn dataset_one(n: usize, d: usize, seed: Seed) -> Result<(SampleSet, SampleSet), Error> {
    let zeros = vec![0.0; d];
    let ones = vec![1.0; d];
    let mut shifted = vec![0.0; d];
    if d == 0 {
        return Err(Error::domain("dataset_one requires d >= 1"));
    }
    shifted[0] = 1.0;
    let p = gaussian_sample(n, &zeros, &ones, seed.child(0))?;
    let q = gaussian_sample(n, &shifted, &ones, seed.child(1))?;
    Ok((p, q))
}

/// The variance-shift pair: P = N(0, I_D) against
/// Q = N(0, diag(2, 1, ..., 1)).
pub fn dataset_two(n: usize, d: usize, seed: Seed) -> Result<(SampleSet, SampleSet), Error> {
    if d == 0 {
        return Err(Error::domain("dataset_two requires d >= 1"));
    }
    let zeros = vec![0.0; d];
    let ones = vec![1.0; d];
    let mut stds = vec![1.0; d];
    stds[0] = (2.0f64).sqrt();
    let p = gaussian_sample(n, &zeros, &ones, seed.child(0))?;
    let q = gaussian_sample(n, &zeros, &stds, seed.child(1))?;
    Ok((p, q))
}

/// Which branch of the Blobs pair to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlobsBranch {
    /// Unit covariance in every mixture component.
    P,
    /// Components stretched along the rotated principal axis.
    Q,
}

/// Geometry of the Blobs mixture: a `grid x grid` lattice of 2-d Gaussians.
///
/// The grid spacing and the uniform mixture weights are free choices here;
/// the defaults (spacing 10, stretch 2, angle pi/4) separate the component
/// length-scale from the lattice length-scale, which is the point of the
/// dataset.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlobsSpec {
    /// Blobs per axis.
    pub grid: usize,
    /// Center-to-center distance.
    pub spacing: f64,
    /// Ratio of largest to smallest standard deviation in Q components.
    pub stretch: f64,
    /// Rotation of the principal axis in Q components.
    pub angle: f64,
}

impl Default for BlobsSpec {
    fn default() -> Self {
        BlobsSpec {
            grid: 4,
            spacing: 10.0,
            stretch: 2.0,
            angle: std::f64::consts::FRAC_PI_4,
        }
    }
}

impl BlobsSpec {
    fn validate(&self) -> Result<(), Error> {
        if self.grid == 0 {
            return Err(Error::domain("blobs grid must be >= 1"));
        }
        if !(self.spacing > 0.0) {
            return Err(Error::domain("blobs spacing must be positive"));
        }
        if !(self.stretch >= 1.0) {
            return Err(Error::domain("blobs stretch must be >= 1"));
        }
        Ok(())
    }
}

/// Samples n points from the Blobs mixture: a uniformly chosen grid cell
/// center plus component noise. P components have identity covariance; Q
/// components have covariance with eigenvalues (stretch^2, 1) and leading
/// eigenvector at the spec angle.
pub fn blobs(n: usize, spec: &BlobsSpec, which: BlobsBranch, seed: Seed) -> Result<SampleSet, Error> {
    spec.validate()?;
    if n == 0 {
        return Err(Error::domain("blobs requires n >= 1"));
    }
    let cells = spec.grid * spec.grid;
    let (cos, sin) = (spec.angle.cos(), spec.angle.sin());
    let mut rng = Stream::new(seed);
    let mut data = Array2::zeros((n, 2));
    for i in 0..n {
        let cell = rng.next_index(cells);
        let cx = (cell / spec.grid) as f64 * spec.spacing;
        let cy = (cell % spec.grid) as f64 * spec.spacing;
        let z0 = rng.next_normal();
        let z1 = rng.next_normal();
        let (dx, dy) = match which {
            BlobsBranch::P => (z0, z1),
            BlobsBranch::Q => {
                // Apply R(angle) * diag(stretch, 1).
                let s0 = spec.stretch * z0;
                (cos * s0 - sin * z1, sin * s0 + cos * z1)
            }
        };
        data[(i, 0)] = cx + dx;
        data[(i, 1)] = cy + dy;
    }
    SampleSet::new(data)
}

/// X plus sigma times an i.i.d. standard normal matrix. `sigma = 0` returns
/// X unchanged.
pub fn add_noise(x: &SampleSet, sigma: f64, seed: Seed) -> Result<SampleSet, Error> {
    if !(sigma >= 0.0) || !sigma.is_finite() {
        return Err(Error::domain("noise sigma must be nonnegative"));
    }
    if sigma == 0.0 {
        return Ok(x.clone());
    }
    let mut rng = Stream::new(seed);
    let noisy = x.matrix().mapv(|v| v + sigma * rng.next_normal());
    SampleSet::new(noisy)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column_mean_var(s: &SampleSet, k: usize) -> (f64, f64) {
        let n = s.n() as f64;
        let mean = (0..s.n()).map(|i| s.row(i)[k]).sum::<f64>() / n;
        let var = (0..s.n()).map(|i| (s.row(i)[k] - mean).powi(2)).sum::<f64>() / n;
        (mean, var)
    }

    #[test]
    fn gaussian_sample_deterministic_and_shaped() {
        let a = gaussian_sample(1, &[0.0, 0.0], &[1.0, 1.0], Seed(3)).unwrap();
        let b = gaussian_sample(1, &[0.0, 0.0], &[1.0, 1.0], Seed(3)).unwrap();
        assert_eq!(a, b);
        let c = gaussian_sample(7, &[0.0; 3], &[1.0; 3], Seed(4)).unwrap();
        assert_eq!((c.n(), c.dim()), (7, 3));
    }

    #[test]
    fn gaussian_sample_moments() {
        let s = gaussian_sample(50_000, &[3.0], &[2.0], Seed(5)).unwrap();
        let (mean, var) = column_mean_var(&s, 0);
        assert!((mean - 3.0).abs() < 0.03, "mean {mean}");
        assert!((var.sqrt() - 2.0).abs() < 0.03, "std {}", var.sqrt());
    }

    #[test]
    fn gaussian_sample_rejects_bad_std() {
        assert!(gaussian_sample(5, &[0.0], &[0.0], Seed(0)).is_err());
        assert!(gaussian_sample(5, &[0.0], &[-1.0], Seed(0)).is_err());
    }

    #[test]
    fn dataset_one_shift_only_first_coordinate() {
        let n = 20_000;
        let (p, q) = dataset_one(n, 4, Seed(6)).unwrap();
        assert_eq!((p.n(), p.dim()), (n, 4));
        let tol = 3.0 / (n as f64).sqrt();
        assert!((column_mean_var(&q, 0).0 - 1.0).abs() < tol);
        for k in 1..4 {
            assert!(column_mean_var(&q, k).0.abs() < tol);
            assert!(column_mean_var(&p, k).0.abs() < tol);
        }
    }

    #[test]
    fn dataset_one_minimal_shape() {
        let (p, q) = dataset_one(2, 1, Seed(7)).unwrap();
        assert_eq!((p.n(), p.dim()), (2, 1));
        assert_eq!((q.n(), q.dim()), (2, 1));
    }

    #[test]
    fn dataset_two_variance_only_first_coordinate() {
        let n = 10_000;
        let (p, q) = dataset_two(n, 3, Seed(8)).unwrap();
        assert!((column_mean_var(&q, 0).1 - 2.0).abs() < 0.15);
        assert!((column_mean_var(&q, 1).1 - 1.0).abs() < 0.1);
        assert!((column_mean_var(&p, 0).1 - 1.0).abs() < 0.1);
        let tol = 3.0 / (n as f64).sqrt();
        for k in 0..3 {
            assert!(column_mean_var(&p, k).0.abs() < tol * 1.5);
            assert!(column_mean_var(&q, k).0.abs() < tol * 1.5);
        }
    }

    #[test]
    fn blobs_pooled_moments_match_mixture() {
        // Pooled covariance = component covariance + covariance of the
        // uniformly chosen centers, whose per-axis variance is
        // spacing^2 (grid^2 - 1) / 12.
        let spec = BlobsSpec::default();
        let n = 60_000;
        let p = blobs(n, &spec, BlobsBranch::P, Seed(9)).unwrap();
        let center_var = spec.spacing.powi(2) * ((spec.grid * spec.grid - 1) as f64) / 12.0;
        let expect_mean = spec.spacing * (spec.grid as f64 - 1.0) / 2.0;
        for k in 0..2 {
            let (mean, var) = column_mean_var(&p, k);
            assert!((mean - expect_mean).abs() < 0.2, "mean {mean}");
            assert!((var - (1.0 + center_var)).abs() < 2.5, "var {var}");
        }
        // Q per-component covariance has eigenvalues (stretch^2, 1); its
        // trace adds stretch^2 + 1 to twice the center variance.
        let q = blobs(n, &spec, BlobsBranch::Q, Seed(10)).unwrap();
        let (_, v0) = column_mean_var(&q, 0);
        let (_, v1) = column_mean_var(&q, 1);
        let want_trace = spec.stretch.powi(2) + 1.0 + 2.0 * center_var;
        assert!((v0 + v1 - want_trace).abs() < 4.0, "trace {}", v0 + v1);
    }

    #[test]
    fn blobs_component_covariance_eigenvalues() {
        // Single-cell grid isolates the component noise.
        let spec = BlobsSpec {
            grid: 1,
            ..BlobsSpec::default()
        };
        let n = 60_000;
        let q = blobs(n, &spec, BlobsBranch::Q, Seed(11)).unwrap();
        let (m0, v0) = column_mean_var(&q, 0);
        let (m1, v1) = column_mean_var(&q, 1);
        let cov01 = (0..n)
            .map(|i| (q.row(i)[0] - m0) * (q.row(i)[1] - m1))
            .sum::<f64>()
            / n as f64;
        // Eigenvalues of [[v0, c], [c, v1]].
        let tr = v0 + v1;
        let det = v0 * v1 - cov01 * cov01;
        let disc = (tr * tr / 4.0 - det).sqrt();
        let (l1, l2) = (tr / 2.0 + disc, tr / 2.0 - disc);
        assert!((l1 - 4.0).abs() < 0.1, "lambda1 {l1}");
        assert!((l2 - 1.0).abs() < 0.05, "lambda2 {l2}");
    }

    #[test]
    fn add_noise_moments_and_identity() {
        let x = gaussian_sample(50_000, &[0.0, 0.0], &[1.0, 1.0], Seed(12)).unwrap();
        assert_eq!(add_noise(&x, 0.0, Seed(13)).unwrap(), x);
        let sigma = 1.5;
        let noisy = add_noise(&x, sigma, Seed(13)).unwrap();
        let n_entries = (x.n() * x.dim()) as f64;
        let mut var = 0.0;
        for i in 0..x.n() {
            for k in 0..2 {
                var += (noisy.row(i)[k] - x.row(i)[k]).powi(2);
            }
        }
        var /= n_entries;
        assert!((var - sigma * sigma).abs() < 0.05 * sigma * sigma, "var {var}");
        assert_eq!(
            add_noise(&x, sigma, Seed(13)).unwrap(),
            noisy,
            "determinism per seed"
        );
    }
}
