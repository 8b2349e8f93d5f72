//! File ingestion and deterministic numeric serialization.
//!
//! Histogram files are CSV (one comma-separated row per histogram) or JSON
//! (an array of number arrays); the loader picks the format from the `.json`
//! extension or a leading `[`. Ingestion smooths every row: normalize, clamp
//! each bin to the configured ε, renormalize. Raw matrices (centroid points,
//! weights, natural parameters) load without smoothing.
//!
//! All numeric output goes through [`format_float`], which prints 17
//! significant digits so that written values reparse to bit-identical
//! doubles, and writes are byte-deterministic.

use std::fs;
use std::path::Path;

use crate::clustering::{ClassId, LabeledDataset};
use crate::divergences::Histogram;
use crate::{Error, Result};

/// Ingestion parameters.
#[derive(Debug, Clone, Copy)]
pub struct IngestionConfig {
    /// Smoothing floor applied to normalized bins.
    pub epsilon: f64,
    /// Accepted deviation of a smoothed histogram's mass from 1 (a pipeline
    /// sanity bound; smoothing renormalizes, so violations indicate a bug or
    /// a pathological row).
    pub normalization_tol: f64,
    /// Number of equal-width intensity bins over [0, 255].
    pub intensity_bins: usize,
}

impl Default for IngestionConfig {
    fn default() -> Self {
        IngestionConfig {
            epsilon: 1e-9,
            normalization_tol: 1e-9,
            intensity_bins: 256,
        }
    }
}

impl IngestionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon > 0.0) || !self.epsilon.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "smoothing epsilon must be positive and finite, got {}",
                self.epsilon
            )));
        }
        if !(self.normalization_tol > 0.0) {
            return Err(Error::InvalidConfig(format!(
                "normalization tolerance must be positive, got {}",
                self.normalization_tol
            )));
        }
        if self.intensity_bins < 2 {
            return Err(Error::InvalidConfig(format!(
                "need at least 2 intensity bins, got {}",
                self.intensity_bins
            )));
        }
        Ok(())
    }
}

fn read_file(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Writes `content` to `path`, wrapping failures with the path.
pub fn write_text(path: &Path, content: &str) -> Result<()> {
    fs::write(path, content).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

/// 17 significant digits: enough for f64 round trips, few enough to be
/// deterministic.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// A float as a JSON value. Infinities and NaN have no JSON number form and
/// are emitted as the strings "Infinity", "-Infinity", "NaN".
pub fn json_number(v: f64) -> String {
    if v.is_finite() {
        format_float(v)
    } else if v == f64::INFINITY {
        "\"Infinity\"".to_string()
    } else if v == f64::NEG_INFINITY {
        "\"-Infinity\"".to_string()
    } else {
        "\"NaN\"".to_string()
    }
}

/// A vector as a JSON array of numbers.
pub fn json_vector(values: &[f64]) -> String {
    let body: Vec<String> = values.iter().map(|&v| json_number(v)).collect();
    format!("[{}]", body.join(","))
}

fn parse_csv_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let mut rows: Vec<Vec<f64>> = Vec::new();
    for (line_index, line) in text.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let row = line_index + 1;
        let mut values = Vec::new();
        for (col_index, field) in trimmed.split(',').enumerate() {
            let col = col_index + 1;
            let v: f64 = field.trim().parse().map_err(|_| Error::Parse {
                row,
                col,
                message: format!("cannot parse {:?} as a number", field.trim()),
            })?;
            if !v.is_finite() {
                return Err(Error::Parse {
                    row,
                    col,
                    message: format!("non-finite value {v}"),
                });
            }
            values.push(v);
        }
        rows.push(values);
    }
    Ok(rows)
}

fn parse_json_matrix(text: &str) -> Result<Vec<Vec<f64>>> {
    let rows: Vec<Vec<f64>> =
        serde_json::from_str(text).map_err(|e| Error::Parse {
            row: e.line(),
            col: e.column(),
            message: format!("invalid JSON array of number arrays: {e}"),
        })?;
    for (i, r) in rows.iter().enumerate() {
        if let Some(&bad) = r.iter().find(|v| !v.is_finite()) {
            return Err(Error::Parse {
                row: i + 1,
                col: 0,
                message: format!("non-finite value {bad}"),
            });
        }
    }
    Ok(rows)
}

/// Loads a numeric matrix from `path`, choosing JSON or CSV by extension or
/// a leading `[`. Enforces nothing beyond finite numbers and a consistent
/// row length; use [`load_histograms`] for smoothed probability rows.
pub fn load_matrix(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = read_file(path)?;
    let looks_json = path.extension().is_some_and(|e| e == "json")
        || text.trim_start().starts_with('[');
    let rows = if looks_json {
        parse_json_matrix(&text)?
    } else {
        parse_csv_matrix(&text)?
    };
    if rows.is_empty() {
        return Err(Error::Parse {
            row: 0,
            col: 0,
            message: format!("{}: no data rows", path.display()),
        });
    }
    let width = rows[0].len();
    for (i, r) in rows.iter().enumerate() {
        if r.len() != width {
            return Err(Error::Parse {
                row: i + 1,
                col: 0,
                message: format!("row has {} values, expected {width}", r.len()),
            });
        }
    }
    Ok(rows)
}

/// Loads histogram rows and smooths each one per the config. Negative
/// entries are rejected with their location before any arithmetic runs.
pub fn load_histograms(path: &Path, config: &IngestionConfig) -> Result<Vec<Histogram>> {
    config.validate()?;
    let rows = load_matrix(path)?;
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        if let Some(j) = row.iter().position(|&v| v < 0.0) {
            return Err(Error::Parse {
                row: i + 1,
                col: j + 1,
                message: format!("negative entry {}", row[j]),
            });
        }
        let h = Histogram::smoothed(row, config.epsilon).map_err(|e| Error::Parse {
            row: i + 1,
            col: 0,
            message: e.to_string(),
        })?;
        let mass: f64 = h.bins().iter().sum();
        if (mass - 1.0).abs() > config.normalization_tol {
            return Err(Error::Parse {
                row: i + 1,
                col: 0,
                message: format!("smoothed row sums to {mass}, outside tolerance"),
            });
        }
        out.push(h);
    }
    Ok(out)
}

/// Loads a labeled dataset: class id in the first column (a non-negative
/// integer), histogram bins after.
pub fn load_labeled(path: &Path, config: &IngestionConfig) -> Result<LabeledDataset> {
    config.validate()?;
    let rows = load_matrix(path)?;
    let mut items = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let label = row.first().copied().ok_or_else(|| Error::Parse {
            row: i + 1,
            col: 1,
            message: "empty row".to_string(),
        })?;
        if label < 0.0 || label.fract() != 0.0 || label > ClassId::MAX as f64 {
            return Err(Error::Parse {
                row: i + 1,
                col: 1,
                message: format!("label {label} is not a non-negative integer"),
            });
        }
        let bins = &row[1..];
        if let Some(j) = bins.iter().position(|&v| v < 0.0) {
            return Err(Error::Parse {
                row: i + 1,
                col: j + 2,
                message: format!("negative entry {}", bins[j]),
            });
        }
        let h = Histogram::smoothed(bins, config.epsilon).map_err(|e| Error::Parse {
            row: i + 1,
            col: 0,
            message: e.to_string(),
        })?;
        items.push((h, label as ClassId));
    }
    LabeledDataset::new(items)
}

/// Histograms as CSV rows at full round-trip precision.
pub fn histograms_to_csv(histograms: &[Histogram]) -> String {
    let mut out = String::new();
    for h in histograms {
        let row: Vec<String> = h.bins().iter().map(|&v| format_float(v)).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

/// The intensity weights from the ingestion formula I = 0.3R + 0.596G +
/// 0.11B. They sum to 1.006, so a saturated pixel maps to 256.53, above the
/// nominal [0, 255] range; [`intensity_histogram`] clamps such values into
/// the top bin.
pub const INTENSITY_WEIGHTS: [f64; 3] = [0.3, 0.596, 0.11];

/// Bins per-pixel intensities I = 0.3R + 0.596G + 0.11B into
/// `config.intensity_bins` equal-width bins over [0, 255], then smooths the
/// counts into a histogram.
///
/// Channel values must lie in [0, 255]. Intensities at or above 255 land in
/// the top bin (see [`INTENSITY_WEIGHTS`] for why they can exceed 255).
pub fn intensity_histogram(pixels: &[[f64; 3]], config: &IngestionConfig) -> Result<Histogram> {
    config.validate()?;
    if pixels.is_empty() {
        return Err(Error::InvalidConfig(
            "intensity histogram needs at least one pixel".to_string(),
        ));
    }
    let bins = config.intensity_bins;
    let width = 255.0 / bins as f64;
    let mut counts = vec![0.0f64; bins];
    for (i, px) in pixels.iter().enumerate() {
        for (c, &v) in px.iter().enumerate() {
            if !v.is_finite() || !(0.0..=255.0).contains(&v) {
                return Err(Error::Parse {
                    row: i + 1,
                    col: c + 1,
                    message: format!("channel value {v} outside [0, 255]"),
                });
            }
        }
        let intensity = INTENSITY_WEIGHTS[0] * px[0]
            + INTENSITY_WEIGHTS[1] * px[1]
            + INTENSITY_WEIGHTS[2] * px[2];
        let bin = ((intensity / width) as usize).min(bins - 1);
        counts[bin] += 1.0;
    }
    Histogram::smoothed(&counts, config.epsilon)
}
