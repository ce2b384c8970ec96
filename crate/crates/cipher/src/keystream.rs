//! Logistic keystreams and the equivalent additive mask.

use chaoscrack_image::{Image, MaskImage};

use crate::chaos::{logistic_int_step, logistic_real_step, quantize_h1, quantize_h2};
use crate::schedule::{derive_schedule, ScheduleState};
use crate::{CipherError, KeyMaterial};

/// Orbit of the rescaled Logistic map from `seed`, quantized with `h1`.
/// The seed itself is not emitted.
pub fn generate_t_sequence(seed: f64, len: usize) -> Vec<u8> {
    let mut s = seed;
    (0..len)
        .map(|_| {
            s = logistic_int_step(s);
            quantize_h1(s)
        })
        .collect()
}

/// Orbit of the real Logistic map from `seed`, quantized with `h2`.
/// The seed itself is not emitted.
pub fn generate_m_sequence(seed: f64, r: f64, len: usize) -> Vec<u8> {
    let mut z = seed;
    (0..len)
        .map(|_| {
            z = logistic_real_step(z, r);
            quantize_h2(z)
        })
        .collect()
}

/// Additive keystream byte for one pixel.
#[inline]
pub fn mask_entry(m: u8, t: u8) -> u8 {
    let factor = if m == 255 { 255 } else { u32::from(m) + 1 };
    ((factor * u32::from(t)) % 256) as u8
}

/// A rectangular sub-image of the permuted image.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub row0: usize,
    pub rows: usize,
    pub col0: usize,
    pub cols: usize,
}

impl Block {
    pub fn len(&self) -> usize {
        self.rows * self.cols
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// The four sub-images cut at `(u, v)`: top-left, top-right, bottom-left,
/// bottom-right.
pub fn blocks(u: usize, v: usize, height: usize, width: usize) -> [Block; 4] {
    [
        Block {
            row0: 0,
            rows: u,
            col0: 0,
            cols: v,
        },
        Block {
            row0: 0,
            rows: u,
            col0: v,
            cols: width - v,
        },
        Block {
            row0: u,
            rows: height - u,
            col0: 0,
            cols: v,
        },
        Block {
            row0: u,
            rows: height - u,
            col0: v,
            cols: width - v,
        },
    ]
}

/// Mask for an already-derived schedule.
pub fn mask_from_schedule(
    key: &KeyMaterial,
    schedule: &ScheduleState,
    height: usize,
    width: usize,
) -> MaskImage {
    let parts = blocks(schedule.u, schedule.v, height, width);
    let longest = parts.iter().map(Block::len).max().unwrap_or(0);
    let t = generate_t_sequence(key.s0[0], longest);

    let mut pixels = vec![0u8; height * width];
    for (block, &z0) in parts.iter().zip(&schedule.z0) {
        let m = generate_m_sequence(z0, key.r, block.len());
        for i in 0..block.rows {
            for j in 0..block.cols {
                let p = i * block.cols + j;
                pixels[(block.row0 + i) * width + block.col0 + j] = mask_entry(m[p], t[p]);
            }
        }
    }
    MaskImage::new(Image::new(width, height, pixels).expect("dimensions already checked"))
}

/// The additive mask the cipher applies to any `M x N` plaintext with pixel
/// sum `eta`.
pub fn build_mask(
    key: &KeyMaterial,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<MaskImage, CipherError> {
    let schedule = derive_schedule(key, eta, height, width)?;
    Ok(mask_from_schedule(key, &schedule, height, width))
}
