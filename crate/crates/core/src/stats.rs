//! Statistical measurements over grayscale images: histogram, chi-square
//! uniformity, Shannon entropy, adjacent-pixel correlation and the
//! differential metrics NPCR / UACI / MAE.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::image::GrayImage;
use crate::rng::Lcg64;

/// Pixel pairs sampled per direction in the reference correlation test.
pub const DEFAULT_PAIR_COUNT: usize = 2500;
pub const DEFAULT_SAMPLE_SEED: u64 = 42;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram256 {
    counts: [u64; 256],
}

impl Histogram256 {
    pub fn from_counts(counts: [u64; 256]) -> Self {
        Histogram256 { counts }
    }

    pub fn counts(&self) -> &[u64; 256] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }
}

pub fn histogram(image: &GrayImage) -> Histogram256 {
    let mut counts = [0u64; 256];
    for &p in image.pixels() {
        counts[p as usize] += 1;
    }
    Histogram256 { counts }
}

/// Pearson chi-square statistic against the uniform distribution on 256
/// values (255 degrees of freedom).
pub fn chi_square_uniformity(hist: &Histogram256) -> Result<f64> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::EmptyImage);
    }
    let expected = total as f64 / 256.0;
    Ok(hist
        .counts
        .iter()
        .map(|&c| {
            let d = c as f64 - expected;
            d * d / expected
        })
        .sum())
}

/// Shannon entropy of the pixel values in bits per pixel.
pub fn entropy(image: &GrayImage) -> Result<f64> {
    entropy_of(&histogram(image))
}

pub fn entropy_of(hist: &Histogram256) -> Result<f64> {
    let total = hist.total();
    if total == 0 {
        return Err(Error::EmptyImage);
    }
    let n = total as f64;
    let nats: f64 = hist
        .counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.ln()
        })
        .sum();
    Ok(nats / std::f64::consts::LN_2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    pub const ALL: [Direction; 3] = [
        Direction::Horizontal,
        Direction::Vertical,
        Direction::Diagonal,
    ];

    /// `(row, col)` offset of the neighbour.
    pub fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Direction::Horizontal => "horizontal",
            Direction::Vertical => "vertical",
            Direction::Diagonal => "diagonal",
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PixelPairSample {
    pub pairs: Vec<(u8, u8)>,
    pub direction: Direction,
    pub sample_seed: u64,
}

/// Draws `n` adjacent pairs with replacement.
///
/// The valid anchor positions (those whose neighbour is in bounds) are
/// numbered row-major; each draw advances an [`Lcg64`] seeded with
/// `sample_seed` and takes `state % count` as the anchor index.
pub fn sample_adjacent_pairs(
    image: &GrayImage,
    direction: Direction,
    n: usize,
    sample_seed: u64,
) -> Result<PixelPairSample> {
    let (dr, dc) = direction.offset();
    let rows = image.height().saturating_sub(dr);
    let cols = image.width().saturating_sub(dc);
    if rows == 0 || cols == 0 {
        return Err(Error::ImageTooSmall(direction.name()));
    }
    let count = (rows * cols) as u64;
    let mut rng = Lcg64::new(sample_seed);
    let pairs = (0..n)
        .map(|_| {
            let pos = rng.next_below(count) as usize;
            let (r, c) = (pos / cols, pos % cols);
            let x = image.get(r, c).expect("anchor in bounds");
            let y = image.get(r + dr, c + dc).expect("neighbour in bounds");
            (x, y)
        })
        .collect();
    Ok(PixelPairSample {
        pairs,
        direction,
        sample_seed,
    })
}

/// Correlation coefficient `cov(x, y) / (sqrt(D(x)) sqrt(D(y)))` with
/// population (1/N) moments.
pub fn correlation(sample: &PixelPairSample) -> Result<f64> {
    correlation_of(&sample.pairs)
}

pub fn correlation_of(pairs: &[(u8, u8)]) -> Result<f64> {
    if pairs.len() < 2 {
        return Err(Error::ZeroVariance);
    }
    let n = pairs.len() as f64;
    let (sx, sy) = pairs.iter().fold((0.0, 0.0), |(sx, sy), &(x, y)| {
        (sx + f64::from(x), sy + f64::from(y))
    });
    let (ex, ey) = (sx / n, sy / n);
    let (mut dx, mut dy, mut cov) = (0.0, 0.0, 0.0);
    for &(x, y) in pairs {
        let a = f64::from(x) - ex;
        let b = f64::from(y) - ey;
        dx += a * a;
        dy += b * b;
        cov += a * b;
    }
    let (dx, dy, cov) = (dx / n, dy / n, cov / n);
    if dx == 0.0 || dy == 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok((cov / (dx.sqrt() * dy.sqrt())).clamp(-1.0, 1.0))
}

/// NPCR, UACI (both percentages) and MAE between two same-sized images.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiffMetrics {
    pub npcr: f64,
    pub uaci: f64,
    pub mae: f64,
}

impl DiffMetrics {
    pub fn zero() -> Self {
        DiffMetrics {
            npcr: 0.0,
            uaci: 0.0,
            mae: 0.0,
        }
    }

    pub fn is_valid(&self) -> bool {
        (0.0..=100.0).contains(&self.npcr)
            && (0.0..=100.0).contains(&self.uaci)
            && (0.0..=255.0).contains(&self.mae)
    }
}

pub fn diff_metrics(c1: &GrayImage, c2: &GrayImage) -> Result<DiffMetrics> {
    c1.same_dimensions(c2)?;
    let mut changed = 0u64;
    let mut abs_sum = 0u64;
    for (&a, &b) in c1.pixels().iter().zip(c2.pixels()) {
        changed += u64::from(a != b);
        abs_sum += u64::from(a.abs_diff(b));
    }
    let n = c1.len() as f64;
    let mae = abs_sum as f64 / n;
    Ok(DiffMetrics {
        npcr: changed as f64 / n * 100.0,
        uaci: mae / 255.0 * 100.0,
        mae,
    })
}

pub fn npcr(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    diff_metrics(c1, c2).map(|d| d.npcr)
}

pub fn uaci(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    diff_metrics(c1, c2).map(|d| d.uaci)
}

pub fn mae(c1: &GrayImage, c2: &GrayImage) -> Result<f64> {
    diff_metrics(c1, c2).map(|d| d.mae)
}
