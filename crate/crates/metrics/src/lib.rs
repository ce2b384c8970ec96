//! Statistical metrics customarily reported for image ciphers.
//!
//! These numbers are necessary but not sufficient evidence of security: a
//! cipher that only permutes pixels keeps the plaintext histogram, and the
//! one-round cipher in this workspace reaches near-ideal entropy while
//! falling to five chosen plaintexts.

mod report;

use chaoscrack_image::Image;
use num_rational::Ratio;
use thiserror::Error;

pub use report::MetricReport;

#[derive(Debug, Error, PartialEq)]
pub enum MetricError {
    #[error("bit plane {0} is outside 0..=7")]
    PlaneOutOfRange(u8),
    #[error("images have different dimensions")]
    ShapeMismatch,
    #[error("correlation is undefined: {0}")]
    UndefinedCorrelation(&'static str),
    #[error("histogram has no bins")]
    EmptyHistogram,
}

/// Frequency of each byte value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Histogram {
    bins: [u64; 256],
}

impl Histogram {
    pub fn bins(&self) -> &[u64; 256] {
        &self.bins
    }

    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }
}

pub fn histogram(img: &Image) -> Histogram {
    let mut bins = [0u64; 256];
    for &p in img.pixels() {
        bins[usize::from(p)] += 1;
    }
    Histogram { bins }
}

/// Counts of 0-bits and 1-bits in bit `plane` (0 = least significant).
pub fn bitplane_histogram(img: &Image, plane: u8) -> Result<(u64, u64), MetricError> {
    if plane > 7 {
        return Err(MetricError::PlaneOutOfRange(plane));
    }
    let ones = img
        .pixels()
        .iter()
        .filter(|&&p| (p >> plane) & 1 == 1)
        .count() as u64;
    Ok((img.len() as u64 - ones, ones))
}

/// Population variance of the bin counts, exactly:
/// `(n * sum(h^2) - sum(h)^2) / n^2`.
pub fn histogram_variance_exact(bins: &[u64]) -> Result<Ratio<u128>, MetricError> {
    if bins.is_empty() {
        return Err(MetricError::EmptyHistogram);
    }
    let n = bins.len() as u128;
    let sum: u128 = bins.iter().map(|&h| u128::from(h)).sum();
    let sum_sq: u128 = bins.iter().map(|&h| u128::from(h) * u128::from(h)).sum();
    Ok(Ratio::new(n * sum_sq - sum * sum, n * n))
}

/// Population variance of the bin counts, `(1/n) * sum((h - mean)^2)`.
pub fn histogram_variance(bins: &[u64]) -> Result<f64, MetricError> {
    if bins.is_empty() {
        return Err(MetricError::EmptyHistogram);
    }
    let n = bins.len() as f64;
    let mean = bins.iter().map(|&h| h as f64).sum::<f64>() / n;
    Ok(bins.iter().map(|&h| (h as f64 - mean).powi(2)).sum::<f64>() / n)
}

/// Shannon entropy in bits per pixel, with `0 log 0 = 0`.
pub fn shannon_entropy(img: &Image) -> f64 {
    let total = img.len() as f64;
    histogram(img)
        .bins
        .iter()
        .filter(|&&h| h > 0)
        .map(|&h| {
            let p = h as f64 / total;
            -p * p.log2()
        })
        .sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Horizontal,
    Vertical,
    Diagonal,
}

impl Direction {
    fn offset(self) -> (usize, usize) {
        match self {
            Direction::Horizontal => (0, 1),
            Direction::Vertical => (1, 0),
            Direction::Diagonal => (1, 1),
        }
    }
}

/// Pearson correlation over every pair of neighbours along `direction`.
pub fn adjacent_correlation(img: &Image, direction: Direction) -> Result<f64, MetricError> {
    let (di, dj) = direction.offset();
    if img.height() <= di || img.width() <= dj {
        return Err(MetricError::UndefinedCorrelation(
            "image too small for any pair",
        ));
    }
    let (rows, cols) = (img.height() - di, img.width() - dj);
    let count = rows * cols;
    if count < 2 {
        return Err(MetricError::UndefinedCorrelation("fewer than two pairs"));
    }

    let pairs = || {
        (0..rows).flat_map(move |i| {
            (0..cols).map(move |j| (f64::from(img.get(i, j)), f64::from(img.get(i + di, j + dj))))
        })
    };
    let n = count as f64;
    let (sx, sy) = pairs().fold((0.0, 0.0), |(a, b), (x, y)| (a + x, b + y));
    let (mx, my) = (sx / n, sy / n);
    let (mut cov, mut vx, mut vy) = (0.0, 0.0, 0.0);
    for (x, y) in pairs() {
        cov += (x - mx) * (y - my);
        vx += (x - mx).powi(2);
        vy += (y - my).powi(2);
    }
    if vx == 0.0 || vy == 0.0 {
        return Err(MetricError::UndefinedCorrelation("zero variance"));
    }
    Ok((cov / (vx.sqrt() * vy.sqrt())).clamp(-1.0, 1.0))
}

fn check_pair(a: &Image, b: &Image) -> Result<(), MetricError> {
    if a.width() != b.width() || a.height() != b.height() {
        Err(MetricError::ShapeMismatch)
    } else {
        Ok(())
    }
}

/// Number of pixels change rate, in percent.
pub fn npcr(a: &Image, b: &Image) -> Result<f64, MetricError> {
    check_pair(a, b)?;
    let changed = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .filter(|(x, y)| x != y)
        .count();
    Ok(100.0 * changed as f64 / a.len() as f64)
}

/// Unified average changing intensity, in percent.
pub fn uaci(a: &Image, b: &Image) -> Result<f64, MetricError> {
    check_pair(a, b)?;
    let total: u64 = a
        .pixels()
        .iter()
        .zip(b.pixels())
        .map(|(&x, &y)| u64::from(x.abs_diff(y)))
        .sum();
    Ok(100.0 * total as f64 / (255.0 * a.len() as f64))
}

fn ceil_log2(x: u64) -> u64 {
    u64::from(x.next_power_of_two().trailing_zeros())
}

/// Fraction of the bits computed by `floor(10^m x) mod d` that survive the
/// reduction: `ceil(log2 d) / (m * ceil(log2 10))`.
///
/// ```
/// # use chaoscrack_metrics::keystream_utilization;
/// # use num_rational::Ratio;
/// assert_eq!(keystream_utilization(5, 256), Ratio::new(2, 5));
/// ```
pub fn keystream_utilization(m: u64, d: u64) -> Ratio<u64> {
    assert!(m >= 1 && d >= 2, "need m >= 1 and d >= 2");
    Ratio::new(ceil_log2(d), m * ceil_log2(10))
}
