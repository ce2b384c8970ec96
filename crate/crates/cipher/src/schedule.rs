//! Plaintext-dependent key schedule: Baker seed, block split and the four
//! Logistic seeds.

use crate::chaos::{baker_iterate, BakerState};
use crate::{CipherError, KeyMaterial};

/// Everything the keystream and permutation need besides the key itself.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScheduleState {
    /// Baker seed after coupling with the plaintext mean.
    pub baker_seed: BakerState,
    /// Row where the lower sub-images start, in `1..M`.
    pub u: usize,
    /// Column where the right sub-images start, in `1..N`.
    pub v: usize,
    /// Logistic seeds for sub-images 1 to 4.
    pub z0: [f64; 4],
    /// Exact plaintext pixel sum.
    pub eta: i64,
}

/// `(a + b) mod 1` with a floored result in `[0, 1)`.
fn frac(x: f64) -> f64 {
    let f = x.rem_euclid(1.0);
    // rem_euclid can round up to exactly 1.0 for tiny negative inputs
    if f >= 1.0 {
        0.0
    } else {
        f
    }
}

pub(crate) fn check_geometry(height: usize, width: usize) -> Result<(), CipherError> {
    if height != width {
        return Err(CipherError::NonSquare { height, width });
    }
    if width < 2 {
        return Err(CipherError::TooSmall { side: width });
    }
    Ok(())
}

/// Derives the schedule for an `M x N` plaintext whose pixels sum to `eta`.
pub fn derive_schedule(
    key: &KeyMaterial,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<ScheduleState, CipherError> {
    check_geometry(height, width)?;
    key.validate_for_side(width)?;

    let mean = eta as f64 / (height * width) as f64;
    let shift = mean / 256.0;
    let baker_seed = BakerState::new(frac(key.x0 + shift), frac(key.y0 + shift));
    let end = baker_iterate(baker_seed.x, baker_seed.y, key.mu, key.n)?;

    let u = ((height as f64 * end.x).floor() as usize).clamp(1, height - 1);
    let v = ((width as f64 * end.y).floor() as usize).clamp(1, width - 1);

    let z1 = frac(key.z0 + shift);
    let z2 = frac(z1 + 0.5);
    let z3 = frac(z1 + key.s0[1]);
    let z4 = frac(z2 + key.s0[2]);

    Ok(ScheduleState {
        baker_seed,
        u,
        v,
        z0: [z1, z2, z3, z4],
        eta,
    })
}
