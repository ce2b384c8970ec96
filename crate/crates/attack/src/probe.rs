//! Locating where the plaintext's first pixel lands after permutation.

use chaoscrack_image::{Image, WideImage};

use crate::AttackError;

/// The three chosen plaintexts used to locate the first pixel, and their
/// ciphers once queried.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeSet {
    pub q1: WideImage,
    pub q2: WideImage,
    pub q3: WideImage,
}

/// Builds the location probes for target pixel sum `eta`.
///
/// `q1` is all zero except `q1(0,0) = eta`. `q2` and `q3` move one unit of
/// that sum to `(0,1)` and `(0,2)` respectively, so all three share the
/// target's keystream.
pub fn make_probe_images(eta: i64, height: usize, width: usize) -> Result<ProbeSet, AttackError> {
    if eta < 1 {
        return Err(AttackError::UnsupportedTarget { eta });
    }
    if height < 2 || width < 3 {
        return Err(AttackError::UnsupportedSize { height, width });
    }
    let zeros = WideImage::zeros(width, height)?;
    let mut q1 = zeros.clone();
    q1.set(0, 0, eta);
    let mut q2 = zeros.clone();
    q2.set(0, 0, eta - 1);
    q2.set(0, 1, 1);
    let mut q3 = zeros;
    q3.set(0, 0, eta - 1);
    q3.set(0, 2, 1);
    Ok(ProbeSet { q1, q2, q3 })
}

/// Positions `(row, col)` where two equally sized images differ.
pub fn diff_positions(a: &Image, b: &Image) -> Vec<(usize, usize)> {
    let width = a.width();
    a.pixels()
        .iter()
        .zip(b.pixels())
        .enumerate()
        .filter(|(_, (x, y))| x != y)
        .map(|(k, _)| (k / width, k % width))
        .collect()
}

/// Intersects the two-element difference sets `Q1 != Q2` and `Q1 != Q3`.
/// The single shared position is where plaintext entry `(0, 0)` lands.
pub fn locate_first_pixel(
    c1: &Image,
    c2: &Image,
    c3: &Image,
) -> Result<(usize, usize), AttackError> {
    if !c1.same_shape(c2) || !c1.same_shape(c3) {
        return Err(AttackError::ShapeMismatch);
    }
    let d12 = diff_positions(c1, c2);
    let d13 = diff_positions(c1, c3);
    if d12.len() != 2 || d13.len() != 2 {
        return Err(AttackError::Locate(format!(
            "expected two differing pixels per probe pair, found {} and {}",
            d12.len(),
            d13.len()
        )));
    }
    let common: Vec<_> = d12.iter().filter(|p| d13.contains(p)).copied().collect();
    match common.as_slice() {
        [pos] => Ok(*pos),
        _ => Err(AttackError::Locate(format!(
            "difference sets {d12:?} and {d13:?} do not share exactly one position"
        ))),
    }
}
