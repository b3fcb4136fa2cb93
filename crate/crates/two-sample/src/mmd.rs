//! Kernel MMD baselines: the quadratic-time unbiased estimator with a
//! permutation null, the fixed-block B-test with its normal approximation,
//! and the sqrt(n) sub-sampled variant.
//!
//! All three share the Gaussian kernel k(u, v) = exp(-||u - v||^2 / gamma^2)
//! and the paired h-term of the U-statistic.

use std::time::Instant;

use ndarray::{s, Array2};
use rayon::prelude::*;

use crate::error::Error;
use crate::features::squared_distance;
use crate::outcome::{NullMethod, TestOutcome};
use crate::rng::{mix, Seed, Stream};
use crate::sample::{SampleSet, Scaling};
use crate::statdist::{normal_cdf, normal_quantile};

/// Gaussian kernel with length-scale gamma.
pub fn gauss_kernel(u: &[f64], v: &[f64], gamma: Scaling) -> f64 {
    let g = gamma.gamma();
    (-squared_distance(u, v) / (g * g)).exp()
}

/// The U-statistic kernel h(x, x', y, y') =
/// k(x,x') + k(y,y') - k(x,y') - k(x',y). Always in [-2, 2].
pub fn h_term(x: &[f64], x2: &[f64], y: &[f64], y2: &[f64], gamma: Scaling) -> Result<f64, Error> {
    let d = x.len();
    if x2.len() != d || y.len() != d || y2.len() != d {
        return Err(Error::dim("h_term arguments must share one dimension"));
    }
    Ok(gauss_kernel(x, x2, gamma) + gauss_kernel(y, y2, gamma)
        - gauss_kernel(x, y2, gamma)
        - gauss_kernel(x2, y, gamma))
}

fn check_paired(x: &SampleSet, y: &SampleSet) -> Result<(), Error> {
    if x.dim() != y.dim() {
        return Err(Error::dim(format!(
            "samples have dimensions {} and {}",
            x.dim(),
            y.dim()
        )));
    }
    if x.n() != y.n() {
        return Err(Error::UnequalSampleSizes {
            n_x: x.n(),
            n_y: y.n(),
        });
    }
    Ok(())
}

/// Mean of h over the index pairs `start <= a < b < end`.
fn h_mean_over_range(
    x: &SampleSet,
    y: &SampleSet,
    start: usize,
    end: usize,
    gamma: Scaling,
) -> f64 {
    let g = gamma.gamma();
    let g2 = g * g;
    let count = end - start;
    let mut sum = 0.0;
    for a in start..end {
        let (xa, ya) = (x.row(a), y.row(a));
        for b in (a + 1)..end {
            let (xb, yb) = (x.row(b), y.row(b));
            sum += (-squared_distance(xa, xb) / g2).exp()
                + (-squared_distance(ya, yb) / g2).exp()
                - (-squared_distance(xa, yb) / g2).exp()
                - (-squared_distance(xb, ya) / g2).exp();
        }
    }
    sum / (count * (count - 1) / 2) as f64
}

/// The minimum-variance unbiased MMD^2 estimator: the average of
/// h(X_a, X_b, Y_a, Y_b) over all unordered index pairs. O(n^2 d) time.
///
/// Deliberately written as the definitional loop over `h_term`, independent
/// of the fused block-statistic kernel, so the two routes check each other.
pub fn mmd2_unbiased(x: &SampleSet, y: &SampleSet, gamma: Scaling) -> Result<f64, Error> {
    check_paired(x, y)?;
    let n = x.n();
    if n < 2 {
        return Err(Error::domain("mmd2_unbiased requires n >= 2"));
    }
    let mut sum = 0.0;
    for a in 0..n {
        for b in (a + 1)..n {
            sum += h_term(x.row(a), x.row(b), y.row(a), y.row(b), gamma)?;
        }
    }
    Ok(sum / (n * (n - 1) / 2) as f64)
}

/// Pooled 2n x 2n Gram matrix of [X; Y], built in parallel.
fn pooled_gram(x: &SampleSet, y: &SampleSet, gamma: Scaling) -> Array2<f64> {
    let n = x.n();
    let total = 2 * n;
    let g2 = gamma.gamma() * gamma.gamma();
    let point = |a: usize| if a < n { x.row(a) } else { y.row(a - n) };
    let mut gram = Array2::zeros((total, total));
    {
        // Lower triangle (diagonal included) in parallel row bands.
        let rows: Vec<(usize, &mut [f64])> = gram
            .as_slice_mut()
            .expect("row-major")
            .chunks_mut(total)
            .enumerate()
            .collect();
        rows.into_par_iter().for_each(|(a, row)| {
            let pa = point(a);
            for (b, slot) in row.iter_mut().enumerate().take(a + 1) {
                *slot = (-squared_distance(pa, point(b)) / g2).exp();
            }
        });
    }
    for a in 0..total {
        for b in (a + 1)..total {
            gram[(a, b)] = gram[(b, a)];
        }
    }
    gram
}

/// One permutation's split of the pooled indices: the first n entries map to
/// the X role, the rest to the Y role.
fn split_for(perm_index: usize, total: usize, seed: Seed) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..total).collect();
    if perm_index > 0 {
        Stream::new(mix(seed, perm_index as u64)).shuffle(&mut idx);
    }
    idx
}

/// MMD^2 of a pooled split, from the Gram matrix:
/// sum_{i != j} h = v' G v - 2n + 2 sum_i G[x_i, y_i], with v = +-1 on the
/// two halves (the kernel diagonal is identically one).
fn split_statistics(gram: &Array2<f64>, splits: &[Vec<usize>]) -> Vec<f64> {
    let total = gram.nrows();
    let n = total / 2;
    // Assemble assignment columns, then push all quadratic forms through one
    // matrix product: column p of G V gives G v_p.
    let cols = splits.len();
    let mut v = Array2::zeros((total, cols));
    for (p, split) in splits.iter().enumerate() {
        for &a in &split[..n] {
            v[(a, p)] = 1.0;
        }
        for &a in &split[n..] {
            v[(a, p)] = -1.0;
        }
    }
    let mut gv = Array2::zeros((total, cols));
    let workers = rayon::current_num_threads().max(1);
    let block = cols.div_ceil(workers);
    let col_chunks: Vec<(usize, usize)> = (0..cols)
        .step_by(block)
        .map(|lo| (lo, (lo + block).min(cols)))
        .collect();
    let gv_parts: Vec<Array2<f64>> = col_chunks
        .par_iter()
        .map(|&(lo, hi)| {
            let mut part = Array2::zeros((total, hi - lo));
            ndarray::linalg::general_mat_mul(
                1.0,
                gram,
                &v.slice(s![.., lo..hi]),
                0.0,
                &mut part,
            );
            part
        })
        .collect();
    for (&(lo, hi), part) in col_chunks.iter().zip(&gv_parts) {
        gv.slice_mut(s![.., lo..hi]).assign(part);
    }
    let denom = (n * (n - 1)) as f64;
    splits
        .iter()
        .enumerate()
        .map(|(p, split)| {
            let quad: f64 = (0..total).map(|a| v[(a, p)] * gv[(a, p)]).sum();
            let paired: f64 = (0..n).map(|i| gram[(split[i], split[i + n])]).sum();
            (quad - 2.0 * n as f64 + 2.0 * paired) / denom
        })
        .collect()
}

/// Linear-interpolation quantile of an unsorted slice.
fn quantile(values: &[f64], q: f64) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let h = (v.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    v[lo] + (h - lo as f64) * (v[hi] - v[lo])
}

/// Quadratic-time MMD test with a permutation null: the pooled 2n points are
/// re-split into random halves `permutations` times and the observed
/// statistic is ranked among the recomputed ones,
/// p = (1 + #{perm >= observed}) / (1 + permutations).
pub fn permutation_mmd_test(
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    permutations: usize,
    alpha: f64,
    seed: Seed,
) -> Result<TestOutcome, Error> {
    check_paired(x, y)?;
    if x.n() < 2 {
        return Err(Error::domain("permutation_mmd_test requires n >= 2"));
    }
    if permutations < 1 {
        return Err(Error::domain("need at least one permutation"));
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("alpha must lie in (0, 1)"));
    }
    let start = Instant::now();
    let n = x.n();
    let gram = pooled_gram(x, y, gamma);
    let splits: Vec<Vec<usize>> = (0..=permutations)
        .map(|p| split_for(p, 2 * n, seed))
        .collect();
    let stats = split_statistics(&gram, &splits);
    let observed = stats[0];
    let exceed = stats[1..].iter().filter(|&&s| s >= observed).count();
    let p_value = (1 + exceed) as f64 / (1 + permutations) as f64;
    let threshold = quantile(&stats[1..], 1.0 - alpha);
    Ok(TestOutcome {
        statistic: observed,
        null: NullMethod::Permutation {
            draws: permutations,
        },
        p_value,
        threshold,
        reject: p_value < alpha,
        alpha,
        elapsed: start.elapsed(),
        degenerate: false,
    })
}

/// Per-block quadratic statistics eta(i) of the B-test.
#[derive(Debug, Clone)]
pub struct BlockStats {
    block_values: Vec<f64>,
    block_size: usize,
}

impl BlockStats {
    pub fn values(&self) -> &[f64] {
        &self.block_values
    }

    pub fn block_size(&self) -> usize {
        self.block_size
    }

    pub fn block_count(&self) -> usize {
        self.block_values.len()
    }

    /// The overall statistic: the mean of the per-block values.
    pub fn mean(&self) -> f64 {
        self.block_values.iter().sum::<f64>() / self.block_count() as f64
    }

    /// Sample variance (denominator m - 1) of the per-block values.
    pub fn sample_variance(&self) -> f64 {
        let m = self.block_count() as f64;
        let mean = self.mean();
        self.block_values
            .iter()
            .map(|v| (v - mean) * (v - mean))
            .sum::<f64>()
            / (m - 1.0)
    }
}

/// Computes eta(i) on each diagonal block of size B: block i covers rows
/// (i-1)B+1 ..= iB of both samples; the trailing n mod B points are dropped.
pub fn block_statistics(
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    block_size: usize,
) -> Result<BlockStats, Error> {
    check_paired(x, y)?;
    if block_size < 2 {
        return Err(Error::domain("block size must be >= 2"));
    }
    let m = x.n() / block_size;
    if m < 1 {
        return Err(Error::domain("need at least one full block"));
    }
    let block_values = (0..m)
        .map(|i| h_mean_over_range(x, y, i * block_size, (i + 1) * block_size, gamma))
        .collect();
    Ok(BlockStats {
        block_values,
        block_size,
    })
}

/// Threshold under which block statistics count as "no variation": h-terms
/// are O(1), so anything this small is kernel underflow, not signal.
const BLOCK_DEGENERATE_TOL: f64 = 1e-14;

/// Fixed-block B-test: eta = mean of the per-block statistics, compared
/// against zero with the empirical block variance,
/// z = eta / sqrt(s^2 / m), p = Phi(-z) (one-sided; large eta rejects).
///
/// When the block values do not vary (s^2 ~ 0) the normal approximation is
/// undefined; the outcome is flagged degenerate with p = 0 for positive eta
/// and p = 1 otherwise.
pub fn block_mmd_test(
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    block_size: usize,
    alpha: f64,
) -> Result<TestOutcome, Error> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain("alpha must lie in (0, 1)"));
    }
    let start = Instant::now();
    let stats = block_statistics(x, y, gamma, block_size)?;
    let m = stats.block_count();
    if m < 2 {
        return Err(Error::domain(
            "block variance needs at least two full blocks (n >= 2B)",
        ));
    }
    let eta = stats.mean();
    let s2 = stats.sample_variance();
    let threshold = normal_quantile(1.0 - alpha)?;
    if s2 <= BLOCK_DEGENERATE_TOL * BLOCK_DEGENERATE_TOL {
        let reject = eta > BLOCK_DEGENERATE_TOL;
        return Ok(TestOutcome {
            statistic: if reject { f64::INFINITY } else { 0.0 },
            null: NullMethod::NormalApprox,
            p_value: if reject { 0.0 } else { 1.0 },
            threshold,
            reject,
            alpha,
            elapsed: start.elapsed(),
            degenerate: true,
        });
    }
    let z = eta / (s2 / m as f64).sqrt();
    let p_value = normal_cdf(-z);
    Ok(TestOutcome {
        statistic: z,
        null: NullMethod::NormalApprox,
        p_value,
        threshold,
        reject: z > threshold,
        alpha,
        elapsed: start.elapsed(),
        degenerate: false,
    })
}

/// MMD on a seeded uniform subsample of floor(sqrt(n)) points per side,
/// which brings the quadratic cost down to O(n); delegates to
/// [`permutation_mmd_test`].
pub fn subsampled_mmd_test(
    x: &SampleSet,
    y: &SampleSet,
    gamma: Scaling,
    permutations: usize,
    alpha: f64,
    seed: Seed,
) -> Result<TestOutcome, Error> {
    check_paired(x, y)?;
    if x.n() < 4 {
        return Err(Error::domain("subsampled_mmd_test requires n >= 4"));
    }
    let m = (x.n() as f64).sqrt().floor() as usize;
    let xi = Stream::new(mix(seed, 1)).sample_without_replacement(x.n(), m);
    let yi = Stream::new(mix(seed, 2)).sample_without_replacement(y.n(), m);
    permutation_mmd_test(
        &x.select_rows(&xi),
        &y.select_rows(&yi),
        gamma,
        permutations,
        alpha,
        mix(seed, 3),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::datagen::gaussian_sample;

    fn g(v: f64) -> Scaling {
        Scaling::new(v).unwrap()
    }

    fn normal(n: usize, d: usize, seed: u64) -> SampleSet {
        gaussian_sample(n, &vec![0.0; d], &vec![1.0; d], Seed(seed)).unwrap()
    }

    /// Definitional double loop over ordered pairs, the oracle for
    /// `mmd2_unbiased`.
    fn mmd2_bruteforce(x: &SampleSet, y: &SampleSet, gamma: Scaling) -> f64 {
        let n = x.n();
        let mut total = 0.0;
        for a in 0..n {
            for b in 0..n {
                if a != b {
                    total += h_term(x.row(a), x.row(b), y.row(a), y.row(b), gamma).unwrap();
                }
            }
        }
        total / (n * (n - 1)) as f64
    }

    #[test]
    fn h_term_cancellations() {
        let mut rng = Stream::new(Seed(1));
        let x: Vec<f64> = (0..3).map(|_| rng.next_normal()).collect();
        let x2: Vec<f64> = (0..3).map(|_| rng.next_normal()).collect();
        // y = x, y' = x' makes every pair cancel.
        assert_eq!(h_term(&x, &x2, &x, &x2, g(1.0)).unwrap(), 0.0);
        assert_eq!(h_term(&x, &x, &x, &x, g(1.0)).unwrap(), 0.0);
        // shifting both y's by a vanishing delta approaches zero continuously
        let mut last = f64::INFINITY;
        for k in 1..6 {
            let delta = 10.0f64.powi(-k);
            let y: Vec<f64> = x.iter().map(|v| v + delta).collect();
            let y2: Vec<f64> = x2.iter().map(|v| v + delta).collect();
            let h = h_term(&x, &x2, &y, &y2, g(1.0)).unwrap().abs();
            assert!(h <= last + 1e-12);
            last = h;
        }
        assert!(last < 1e-4);
    }

    #[test]
    fn h_term_bounded() {
        let mut rng = Stream::new(Seed(2));
        for _ in 0..500 {
            let v: Vec<Vec<f64>> = (0..4)
                .map(|_| (0..2).map(|_| 3.0 * rng.next_normal()).collect())
                .collect();
            let h = h_term(&v[0], &v[1], &v[2], &v[3], g(0.8)).unwrap();
            assert!((-2.0..=2.0).contains(&h));
        }
    }

    #[test]
    fn mmd2_two_points_is_single_h() {
        let x = normal(2, 3, 3);
        let y = normal(2, 3, 4);
        let want = h_term(x.row(0), x.row(1), y.row(0), y.row(1), g(1.0)).unwrap();
        let got = mmd2_unbiased(&x, &y, g(1.0)).unwrap();
        assert!((got - want).abs() < 1e-15);
    }

    #[test]
    fn mmd2_identical_samples_is_zero() {
        let x = normal(15, 2, 5);
        assert_eq!(mmd2_unbiased(&x, &x.clone(), g(1.0)).unwrap(), 0.0);
    }

    #[test]
    fn mmd2_matches_bruteforce() {
        for trial in 0..30 {
            let n = 4 + (trial % 17);
            let x = normal(n, 2, 100 + trial as u64);
            let y = normal(n, 2, 200 + trial as u64);
            let fast = mmd2_unbiased(&x, &y, g(0.9)).unwrap();
            let brute = mmd2_bruteforce(&x, &y, g(0.9));
            assert!(
                (fast - brute).abs() <= 1e-12 * brute.abs().max(1.0),
                "trial {trial}: {fast} vs {brute}"
            );
        }
    }

    #[test]
    fn mmd2_unbiased_under_null() {
        // Unbiasedness: the Monte Carlo mean sits within 3 standard errors
        // of zero.
        let reps = 500;
        let mut values = Vec::with_capacity(reps);
        for r in 0..reps {
            let x = normal(500, 1, 1000 + r as u64);
            let y = normal(500, 1, 5000 + r as u64);
            values.push(mmd2_unbiased(&x, &y, g(1.0)).unwrap());
        }
        let mean = values.iter().sum::<f64>() / reps as f64;
        let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (reps - 1) as f64;
        let se = (var / reps as f64).sqrt();
        assert!(mean.abs() <= 3.0 * se, "mean {mean}, se {se}");
    }

    #[test]
    fn mmd2_swap_symmetric() {
        let x = normal(40, 2, 7);
        let y = normal(40, 2, 8);
        let a = mmd2_unbiased(&x, &y, g(1.0)).unwrap();
        let b = mmd2_unbiased(&y, &x, g(1.0)).unwrap();
        assert!((a - b).abs() < 1e-15);
    }

    #[test]
    fn mmd2_invariant_under_paired_relabeling() {
        let x = normal(30, 2, 9);
        let y = normal(30, 2, 10);
        let mut order: Vec<usize> = (0..30).collect();
        Stream::new(Seed(11)).shuffle(&mut order);
        let a = mmd2_unbiased(&x, &y, g(1.0)).unwrap();
        let b = mmd2_unbiased(&x.select_rows(&order), &y.select_rows(&order), g(1.0)).unwrap();
        assert!((a - b).abs() <= 1e-12 * a.abs().max(1.0));
    }

    #[test]
    fn gram_route_matches_direct_statistic() {
        let x = normal(25, 2, 12);
        let y = gaussian_sample(25, &[0.7, 0.0], &[1.0, 1.0], Seed(13)).unwrap();
        let out = permutation_mmd_test(&x, &y, g(1.0), 10, 0.05, Seed(14)).unwrap();
        let direct = mmd2_unbiased(&x, &y, g(1.0)).unwrap();
        assert!(
            (out.statistic - direct).abs() <= 1e-12 * direct.abs().max(1.0),
            "{} vs {direct}",
            out.statistic
        );
    }

    #[test]
    fn permutation_counting_formula() {
        // Strongly separated samples: the observed statistic beats every
        // permuted one, so p = 1 / (b + 1).
        let x = gaussian_sample(20, &[0.0], &[0.1], Seed(15)).unwrap();
        let y = gaussian_sample(20, &[10.0], &[0.1], Seed(16)).unwrap();
        let out = permutation_mmd_test(&x, &y, g(1.0), 199, 0.05, Seed(17)).unwrap();
        assert_eq!(out.p_value, 1.0 / 200.0);
        assert!(out.reject);
    }

    #[test]
    fn permutation_deterministic() {
        let x = normal(30, 2, 18);
        let y = normal(30, 2, 19);
        let a = permutation_mmd_test(&x, &y, g(1.0), 50, 0.05, Seed(20)).unwrap();
        let b = permutation_mmd_test(&x, &y, g(1.0), 50, 0.05, Seed(20)).unwrap();
        assert_eq!(a.statistic, b.statistic);
        assert_eq!(a.p_value, b.p_value);
    }

    #[test]
    fn permutation_null_calibration() {
        // Both samples from one distribution: permutation p-values are
        // super-uniform by construction, so their empirical CDF at alpha
        // stays at or (slightly) below alpha.
        let reps = 1000;
        let p_values: Vec<f64> = (0..reps)
            .map(|r| {
                let x = normal(50, 1, 30_000 + r as u64);
                let y = normal(50, 1, 60_000 + r as u64);
                permutation_mmd_test(&x, &y, g(1.0), 200, 0.05, Seed(90_000 + r as u64))
                    .unwrap()
                    .p_value
            })
            .collect();
        for alpha in [0.01, 0.05, 0.1] {
            let ecdf = p_values.iter().filter(|&&p| p <= alpha).count() as f64 / reps as f64;
            assert!(ecdf <= alpha + 0.02, "ecdf({alpha}) = {ecdf}");
        }
    }

    #[test]
    fn block_equals_full_ustatistic_at_block_n() {
        for trial in 0..100 {
            let n = [4, 6, 10][trial % 3];
            let x = normal(n, 2, 400 + trial as u64);
            let y = normal(n, 2, 700 + trial as u64);
            let eta = block_statistics(&x, &y, g(1.1), n).unwrap().mean();
            let full = mmd2_unbiased(&x, &y, g(1.1)).unwrap();
            assert!(
                (eta - full).abs() <= 1e-12 * full.abs().max(1.0),
                "trial {trial}: {eta} vs {full}"
            );
        }
    }

    #[test]
    fn block_trailing_points_dropped() {
        let x = normal(23, 2, 21);
        let y = normal(23, 2, 22);
        let stats = block_statistics(&x, &y, g(1.0), 5).unwrap();
        assert_eq!(stats.block_count(), 4);
        assert_eq!(stats.block_size(), 5);
    }

    #[test]
    fn block_degenerate_rules() {
        // Identical repeated blocks make every eta(i) equal.
        let row_x = [vec![0.0, 0.0], vec![1.0, 0.0], vec![0.0, 1.0]];
        let row_y = [vec![5.0, 5.0], vec![6.0, 5.0], vec![5.0, 6.0]];
        let mut xs = Vec::new();
        let mut ys = Vec::new();
        for _ in 0..4 {
            xs.extend(row_x.iter().cloned());
            ys.extend(row_y.iter().cloned());
        }
        let x = SampleSet::from_rows(xs).unwrap();
        let y = SampleSet::from_rows(ys).unwrap();
        let out = block_mmd_test(&x, &y, g(1.0), 3, 0.05).unwrap();
        assert!(out.degenerate);
        assert_eq!(out.p_value, 0.0);
        assert!(out.reject);
        // With Y = X every term vanishes: eta = 0, p = 1.
        let out0 = block_mmd_test(&x, &x.clone(), g(1.0), 3, 0.05).unwrap();
        assert!(out0.degenerate);
        assert_eq!(out0.p_value, 1.0);
        assert!(!out0.reject);
    }

    #[test]
    fn block_rejects_underflowed_kernels() {
        // A tiny length-scale kills every kernel value; that must read as
        // "no evidence", not as a rejection.
        let x = normal(60, 2, 23);
        let y = gaussian_sample(60, &[3.0, 0.0], &[1.0, 1.0], Seed(24)).unwrap();
        let out = block_mmd_test(&x, &y, g(1e-8), 3, 0.05).unwrap();
        assert!(out.degenerate);
        assert!(!out.reject);
    }

    #[test]
    fn block_requires_two_blocks() {
        let x = normal(5, 2, 25);
        let y = normal(5, 2, 26);
        assert!(block_mmd_test(&x, &y, g(1.0), 3, 0.05).is_err());
    }

    #[test]
    fn block_null_calibration() {
        let reps = 1000;
        let mut rejects = 0;
        for r in 0..reps {
            let x = normal(5000, 2, 300_000 + r as u64);
            let y = normal(5000, 2, 600_000 + r as u64);
            if block_mmd_test(&x, &y, g(1.0), 10, 0.05).unwrap().reject {
                rejects += 1;
            }
        }
        let rate = rejects as f64 / reps as f64;
        assert!((rate - 0.05).abs() <= 0.02, "rate {rate}");
    }

    #[test]
    fn subsample_size_and_determinism() {
        let x = normal(100, 2, 27);
        let y = normal(100, 2, 28);
        let a = subsampled_mmd_test(&x, &y, g(1.0), 50, 0.05, Seed(29)).unwrap();
        let b = subsampled_mmd_test(&x, &y, g(1.0), 50, 0.05, Seed(29)).unwrap();
        assert_eq!(a.statistic, b.statistic);
        assert_eq!(a.p_value, b.p_value);
        // m = floor(sqrt(100)) = 10 points per side; with 10 points the
        // denominator of the U-statistic is 10 * 9.
        let xi = Stream::new(mix(Seed(29), 1)).sample_without_replacement(100, 10);
        let yi = Stream::new(mix(Seed(29), 2)).sample_without_replacement(100, 10);
        let direct =
            mmd2_unbiased(&x.select_rows(&xi), &y.select_rows(&yi), g(1.0)).unwrap();
        assert!((a.statistic - direct).abs() <= 1e-12 * direct.abs().max(1.0));
    }
}
