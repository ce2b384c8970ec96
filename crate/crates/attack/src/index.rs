//! Recovering the permutation with two base-256 index images.
//!
//! Writing every linear index `k < 65536` as `256 * hi + lo`, one chosen
//! plaintext carries the `lo` digits and another the `hi` digits. After
//! unmasking both ciphers, `256 * hi' + lo'` at permuted position `t` names
//! the plaintext index that moved to `t`. The first pixel of each probe is
//! overwritten to keep the pixel sum at the target's `eta`, so the entry at
//! the first pixel's landing position is repaired from the known total
//! `0 + 1 + ... + (MN - 1)`.

use chaoscrack_image::{Image, MaskImage, WideImage};

use crate::mask::unmask;
use crate::AttackError;

/// Largest image for which two base-256 digits address every pixel.
pub const MAX_PIXELS: usize = 65_536;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexImages {
    /// Low digits, `k mod 256`.
    pub low: WideImage,
    /// High digits, `k / 256`.
    pub high: WideImage,
}

fn with_sum(mut img: WideImage, eta: i64) -> WideImage {
    let rest = img.pixel_sum() - img.get(0, 0);
    img.set(0, 0, eta - rest);
    img
}

/// Builds the two digit images, each with its first pixel set so the image
/// sums to `eta`. That pixel may be negative or exceed 255.
pub fn make_index_images(
    eta: i64,
    height: usize,
    width: usize,
) -> Result<IndexImages, AttackError> {
    let total = height.saturating_mul(width);
    if total > MAX_PIXELS || height == 0 || width == 0 {
        return Err(AttackError::UnsupportedSize { height, width });
    }
    let low = WideImage::new(
        width,
        height,
        (0..total).map(|k| (k % 256) as i64).collect(),
    )?;
    let high = WideImage::new(
        width,
        height,
        (0..total).map(|k| (k / 256) as i64).collect(),
    )?;
    Ok(IndexImages {
        low: with_sum(low, eta),
        high: with_sum(high, eta),
    })
}

/// Table from permuted linear index to plaintext linear index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredPermutation {
    source: Vec<usize>,
}

impl RecoveredPermutation {
    /// Accepts `source` only if it is a bijection on `0..source.len()`.
    pub fn from_table(source: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; source.len()];
        for &s in &source {
            if s >= source.len() || std::mem::replace(&mut seen[s], true) {
                return None;
            }
        }
        Some(RecoveredPermutation { source })
    }

    pub fn len(&self) -> usize {
        self.source.len()
    }

    pub fn is_empty(&self) -> bool {
        self.source.is_empty()
    }

    /// Plaintext index whose pixel sits at permuted index `t`.
    pub fn source(&self, t: usize) -> usize {
        self.source[t]
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.source
    }

    /// Puts every permuted pixel back at its plaintext position.
    pub fn unpermute(&self, permuted: &Image) -> Result<Image, AttackError> {
        if permuted.len() != self.source.len() {
            return Err(AttackError::ShapeMismatch);
        }
        let mut px = vec![0u8; permuted.len()];
        for (t, &s) in self.source.iter().enumerate() {
            px[s] = permuted.pixels()[t];
        }
        Ok(Image::new(permuted.width(), permuted.height(), px)?)
    }
}

/// Decodes the permutation from the ciphers of the two index images.
pub fn recover_permutation(
    c_low: &Image,
    c_high: &Image,
    mask: &MaskImage,
    (u, v): (usize, usize),
) -> Result<RecoveredPermutation, AttackError> {
    let low = unmask(c_low, mask)?;
    let high = unmask(c_high, mask)?;
    let width = low.width();
    let total = low.len();
    if total > MAX_PIXELS {
        return Err(AttackError::UnsupportedSize {
            height: low.height(),
            width,
        });
    }

    let mut combined: Vec<i64> = high
        .pixels()
        .iter()
        .zip(low.pixels())
        .map(|(&h, &l)| 256 * i64::from(h) + i64::from(l))
        .collect();

    let at = u * width + v;
    let others: i64 = combined.iter().sum::<i64>() - combined[at];
    let n = total as i64;
    combined[at] = n * (n - 1) / 2 - others;

    let table = combined
        .iter()
        .map(|&x| usize::try_from(x).ok())
        .collect::<Option<Vec<_>>>()
        .and_then(RecoveredPermutation::from_table);
    table.ok_or_else(|| AttackError::Permutation("decoded index table is not a permutation".into()))
}
