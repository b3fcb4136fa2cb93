//! Small symmetric-positive-definite solves for the Hotelling statistic.
//!
//! The covariance matrices here are J x J or 2J x 2J with J rarely above 10,
//! so a plain Cholesky factorization is all that is needed.

use ndarray::Array2;

use crate::error::Error;

/// Cholesky solve of `(m + ridge * I) w = v`. Returns `None` when a pivot is
/// not strictly positive.
fn cholesky_solve(m: &Array2<f64>, v: &[f64], ridge: f64) -> Option<Vec<f64>> {
    let p = v.len();
    // Lower-triangular factor, row-major packed.
    let mut l = vec![0.0; p * p];
    for i in 0..p {
        for j in 0..=i {
            let mut sum = m[(i, j)] + if i == j { ridge } else { 0.0 };
            for k in 0..j {
                sum -= l[i * p + k] * l[j * p + k];
            }
            if i == j {
                if sum <= 0.0 || !sum.is_finite() {
                    return None;
                }
                l[i * p + i] = sum.sqrt();
            } else {
                l[i * p + j] = sum / l[j * p + j];
            }
        }
    }
    // Forward then back substitution.
    let mut y = vec![0.0; p];
    for i in 0..p {
        let mut sum = v[i];
        for k in 0..i {
            sum -= l[i * p + k] * y[k];
        }
        y[i] = sum / l[i * p + i];
    }
    let mut w = vec![0.0; p];
    for i in (0..p).rev() {
        let mut sum = y[i];
        for k in (i + 1)..p {
            sum -= l[k * p + i] * w[k];
        }
        w[i] = sum / l[i * p + i];
    }
    Some(w)
}

fn frobenius_norm(m: &Array2<f64>) -> f64 {
    m.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn residual_ok(m: &Array2<f64>, v: &[f64], w: &[f64], ridge: f64) -> bool {
    let p = v.len();
    let mut res = 0.0;
    for i in 0..p {
        let mut mv = ridge * w[i];
        for j in 0..p {
            mv += m[(i, j)] * w[j];
        }
        res += (mv - v[i]) * (mv - v[i]);
    }
    let wnorm = w.iter().map(|x| x * x).sum::<f64>().sqrt();
    res.sqrt() <= 1e-8 * (frobenius_norm(m) + ridge) * wnorm.max(f64::MIN_POSITIVE)
}

/// Solves `(m + ridge * I) w = v` for symmetric `m` via Cholesky.
///
/// If the factorization fails (or the residual check does), the ridge is
/// escalated by factors of ten up to `1e-2 * trace(m) / p`; beyond that the
/// matrix is reported singular together with the last ridge tried.
pub fn solve_spd(m: &Array2<f64>, v: &[f64], ridge: f64) -> Result<Vec<f64>, Error> {
    let (rows, cols) = m.dim();
    if rows != cols || rows != v.len() {
        return Err(Error::dim(format!(
            "solve_spd: matrix {rows}x{cols} vs vector length {}",
            v.len()
        )));
    }
    if ridge < 0.0 || !ridge.is_finite() {
        return Err(Error::domain("ridge must be nonnegative and finite"));
    }
    let p = rows;
    let trace: f64 = (0..p).map(|i| m[(i, i)]).sum();
    let ridge_cap = 1e-2 * trace / p as f64;
    let mut current = ridge;
    loop {
        if let Some(w) = cholesky_solve(m, v, current) {
            if residual_ok(m, v, &w, current) {
                return Ok(w);
            }
        }
        // Escalate. A zero starting ridge jumps to a tiny trace-relative
        // value first, since multiplying zero gets nowhere.
        let next = if current == 0.0 {
            1e-10 * trace / p as f64
        } else {
            current * 10.0
        };
        if !(next > current) || next > ridge_cap {
            return Err(Error::SingularMatrix { ridge: current });
        }
        current = next;
    }
}
