//! CSV ingestion for user-supplied sample pairs and result serialization.

use std::io::Write;
use std::path::Path;

use ndarray::Array2;
use thiserror::Error;

use crate::harness::runner::PowerCurve;
use crate::sample::SampleSet;

/// Errors from the experiment harness, mapped onto CLI exit codes: config,
/// CSV and I/O problems are input errors (exit 2), propagated numeric
/// failures exit 3.
#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error("{path}: {message}")]
    Csv { path: String, message: String },

    #[error("{path}: {message}")]
    Io { path: String, message: String },

    #[error(transparent)]
    Test(#[from] crate::error::Error),
}

impl HarnessError {
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Test(crate::error::Error::SingularMatrix { .. }) => 3,
            HarnessError::Test(_) => 2,
            _ => 2,
        }
    }
}

fn csv_err(path: &Path, message: impl Into<String>) -> HarnessError {
    HarnessError::Csv {
        path: path.display().to_string(),
        message: message.into(),
    }
}

/// Parses one numeric CSV file into a matrix. An optional single header row
/// is detected (any cell that is not a number) and skipped.
fn load_matrix(path: &Path) -> Result<Array2<f64>, HarnessError> {
    let text = std::fs::read_to_string(path).map_err(|e| HarnessError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut rows: Vec<Vec<f64>> = Vec::new();
    let mut width: Option<usize> = None;
    let mut first_content = true;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let cells: Vec<&str> = line.split(',').map(str::trim).collect();
        let parsed: Result<Vec<f64>, usize> = cells
            .iter()
            .enumerate()
            .map(|(c, cell)| cell.parse::<f64>().map_err(|_| c))
            .collect();
        let may_be_header = first_content;
        first_content = false;
        match parsed {
            Ok(values) => {
                if let Some(w) = width {
                    if values.len() != w {
                        return Err(csv_err(
                            path,
                            format!("row {lineno}: expected {w} columns, found {}", values.len()),
                        ));
                    }
                } else {
                    width = Some(values.len());
                }
                if let Some(c) = values.iter().position(|v| !v.is_finite()) {
                    return Err(csv_err(
                        path,
                        format!("row {lineno} col {}: non-finite value", c + 1),
                    ));
                }
                rows.push(values);
            }
            Err(col) => {
                // Only the very first content line may be a header.
                if may_be_header {
                    continue;
                }
                return Err(csv_err(
                    path,
                    format!(
                        "row {lineno} col {}: invalid number '{}'",
                        col + 1,
                        cells[col]
                    ),
                ));
            }
        }
    }
    if rows.is_empty() {
        return Err(csv_err(path, "no data rows"));
    }
    let n = rows.len();
    let d = rows[0].len();
    let flat: Vec<f64> = rows.into_iter().flatten().collect();
    Ok(Array2::from_shape_vec((n, d), flat).expect("validated shape"))
}

/// Loads an (X, Y) sample pair from two CSV files. Row order is preserved;
/// the two files must share one column count.
pub fn load_csv_pair(
    path_x: impl AsRef<Path>,
    path_y: impl AsRef<Path>,
) -> Result<(SampleSet, SampleSet), HarnessError> {
    let path_x = path_x.as_ref();
    let path_y = path_y.as_ref();
    let mx = load_matrix(path_x)?;
    let my = load_matrix(path_y)?;
    if mx.ncols() != my.ncols() {
        return Err(HarnessError::Csv {
            path: format!("{} / {}", path_x.display(), path_y.display()),
            message: format!(
                "dimension mismatch: {} has {} columns, {} has {}",
                path_x.display(),
                mx.ncols(),
                path_y.display(),
                my.ncols()
            ),
        });
    }
    let x = SampleSet::new(mx)?;
    let y = SampleSet::new(my)?;
    Ok((x, y))
}

/// Prints a float the shortest way that round-trips; integers drop the
/// trailing `.0` so sweep columns stay clean.
pub(crate) fn format_value(v: f64) -> String {
    if v.fract() == 0.0 && v.abs() < 1e15 {
        format!("{}", v as i64)
    } else {
        format!("{v}")
    }
}

/// Serializes a power curve: audit comments first, then the fixed header
/// `sweep,test,rate,...`, then one row per (sweep value, test).
pub fn write_rows(out: &mut dyn Write, curve: &PowerCurve) -> std::io::Result<()> {
    for line in &curve.audit_lines {
        writeln!(out, "# {line}")?;
    }
    writeln!(
        out,
        "sweep,test,rate,wald_low,wald_high,mean_elapsed_s,replications,flags"
    )?;
    for row in &curve.rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            format_value(row.sweep_value),
            row.test,
            row.rate,
            row.wald_low,
            row.wald_high,
            row.mean_elapsed_s,
            row.replications,
            row.flags.join(";")
        )?;
    }
    Ok(())
}
