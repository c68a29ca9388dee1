//! The combined statistical report for one plain image under one key.

use serde::{Deserialize, Serialize};

use crate::analysis::one_pixel_change;
use crate::cipher::encrypt;
use crate::error::{Error, Result};
use crate::exec::{self, Execution};
use crate::image::GrayImage;
use crate::key::{SecretKey, KEY_BITS};
use crate::stats::{
    chi_square_uniformity, correlation, diff_metrics, entropy_of, histogram, sample_adjacent_pairs,
    DiffMetrics, Direction, DEFAULT_PAIR_COUNT, DEFAULT_SAMPLE_SEED,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalysisOptions {
    pub sample_seed: u64,
    pub pair_count: usize,
    /// `(row, col)` of the one-pixel change; image centre when `None`.
    pub change_position: Option<(usize, usize)>,
    pub exec: Execution,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            sample_seed: DEFAULT_SAMPLE_SEED,
            pair_count: DEFAULT_PAIR_COUNT,
            change_position: None,
            exec: Execution::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageStats {
    pub entropy: f64,
    pub chi_square: f64,
}

/// Correlation of adjacent pixels in one direction. `None` when a sampled
/// sequence is constant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionalCorrelation {
    pub direction: Direction,
    pub plain: Option<f64>,
    pub encrypted: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportParameters {
    pub key_fingerprint: String,
    pub width: usize,
    pub height: usize,
    pub sample_seed: u64,
    pub pair_count: usize,
    pub change_position: [usize; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub key_space_bits: u32,
    pub plain: ImageStats,
    pub encrypted: ImageStats,
    pub correlations: Vec<DirectionalCorrelation>,
    pub diff: DiffMetrics,
    pub parameters: ReportParameters,
}

impl AnalysisReport {
    /// Checks the range invariants of every contained metric.
    pub fn is_consistent(&self) -> bool {
        let stats_ok = |s: &ImageStats| {
            (0.0..=8.0).contains(&s.entropy) && s.chi_square >= 0.0 && s.chi_square.is_finite()
        };
        let corr_ok = |r: Option<f64>| r.is_none_or(|r| (-1.0..=1.0).contains(&r));
        self.key_space_bits == KEY_BITS
            && stats_ok(&self.plain)
            && stats_ok(&self.encrypted)
            && self.correlations.len() == Direction::ALL.len()
            && self
                .correlations
                .iter()
                .all(|c| corr_ok(c.plain) && corr_ok(c.encrypted))
            && self.diff.is_valid()
            && (self.diff.uaci - self.diff.mae / 255.0 * 100.0).abs() < 1e-9
    }
}

fn image_stats(image: &GrayImage) -> Result<ImageStats> {
    let hist = histogram(image);
    Ok(ImageStats {
        entropy: entropy_of(&hist)?,
        chi_square: chi_square_uniformity(&hist)?,
    })
}

fn sampled_correlation(
    image: &GrayImage,
    dir: Direction,
    opts: &AnalysisOptions,
) -> Result<Option<f64>> {
    let sample = sample_adjacent_pairs(image, dir, opts.pair_count, opts.sample_seed)?;
    match correlation(&sample) {
        Ok(r) => Ok(Some(r)),
        Err(Error::ZeroVariance) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Encrypts `plain` under `key` and runs the full metric battery. Images
/// need at least 2x2 pixels so that every direction has a pair.
pub fn analyze(
    plain: &GrayImage,
    key: &SecretKey,
    opts: &AnalysisOptions,
) -> Result<AnalysisReport> {
    let (row, col) = opts.change_position.unwrap_or_else(|| plain.center());
    plain.check_position(row, col)?;
    let changed = one_pixel_change(plain, row, col)?;
    let (cipher, changed_cipher) =
        exec::join(opts.exec, || encrypt(plain, key), || encrypt(&changed, key));
    let cipher = cipher?;
    let diff = diff_metrics(&cipher, &changed_cipher?)?;

    let correlations = Direction::ALL
        .iter()
        .map(|&direction| {
            Ok(DirectionalCorrelation {
                direction,
                plain: sampled_correlation(plain, direction, opts)?,
                encrypted: sampled_correlation(&cipher, direction, opts)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(AnalysisReport {
        key_space_bits: KEY_BITS,
        plain: image_stats(plain)?,
        encrypted: image_stats(&cipher)?,
        correlations,
        diff,
        parameters: ReportParameters {
            key_fingerprint: key.fingerprint(),
            width: plain.width(),
            height: plain.height(),
            sample_seed: opts.sample_seed,
            pair_count: opts.pair_count,
            change_position: [row, col],
        },
    })
}
