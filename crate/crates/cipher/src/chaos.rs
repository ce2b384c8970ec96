//! The three chaotic maps and the two float-to-byte quantizers.
//!
//! Everything here is a pure function on `f64`. The cipher never rounds
//! differently from these definitions, so an encryption run is reproducible
//! bit-for-bit on any IEEE 754 platform.

use thiserror::Error;

#[derive(Debug, Error, Clone, Copy, PartialEq)]
pub enum ChaosError {
    #[error("Baker control parameter must lie strictly inside (0, 1), got {0}")]
    InvalidMu(f64),
}

/// A point of the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BakerState {
    pub x: f64,
    pub y: f64,
}

impl BakerState {
    pub fn new(x: f64, y: f64) -> Self {
        BakerState { x, y }
    }
}

fn check_mu(mu: f64) -> Result<(), ChaosError> {
    if mu > 0.0 && mu < 1.0 {
        Ok(())
    } else {
        Err(ChaosError::InvalidMu(mu))
    }
}

/// One step of the generalized Baker map with control parameter `mu`.
///
/// `x <= mu` (including `x == 0`) stretches by `1/mu` and squeezes `y` by
/// `mu`; otherwise the right strip `(mu, 1]` is stretched by `1/(1-mu)` and
/// stacked above.
pub fn baker_step(state: BakerState, mu: f64) -> Result<BakerState, ChaosError> {
    check_mu(mu)?;
    Ok(baker_step_unchecked(state, mu))
}

#[inline]
fn baker_step_unchecked(BakerState { x, y }: BakerState, mu: f64) -> BakerState {
    if x <= mu {
        BakerState {
            x: x / mu,
            y: mu * y,
        }
    } else {
        let mu_star = 1.0 - mu;
        BakerState {
            x: (x - mu) / mu_star,
            y: mu_star * y + mu,
        }
    }
}

/// Applies [`baker_step`] `n` times.
pub fn baker_iterate(x0: f64, y0: f64, mu: f64, n: u32) -> Result<BakerState, ChaosError> {
    check_mu(mu)?;
    let mut state = BakerState::new(x0, y0);
    for _ in 0..n {
        state = baker_step_unchecked(state, mu);
    }
    Ok(state)
}

/// Arnold cat-map position for pixel `(i, j)` of an `n x n` grid:
/// `(p, q) = ((i + b j) mod n, (a i + (a b + 1) j) mod n)`.
pub fn arnold_map(i: usize, j: usize, a: usize, b: usize, n: usize) -> (usize, usize) {
    let (i, j, a, b, n) = (i as u128, j as u128, a as u128, b as u128, n as u128);
    let p = (i + b * j) % n;
    let q = (a * i + ((a * b + 1) % n) * j) % n;
    (p as usize, q as usize)
}

/// Real Logistic map `r x (1 - x)`.
#[inline]
pub fn logistic_real_step(x: f64, r: f64) -> f64 {
    r * x * (1.0 - x)
}

/// Logistic map rescaled to `[0, 256]`: `4 x (256 - x) / 256`.
#[inline]
pub fn logistic_int_step(x: f64) -> f64 {
    4.0 * x * (256.0 - x) / 256.0
}

#[inline]
fn quantize(x: f64, scale: f64) -> u8 {
    ((x * scale).floor() as u64 % 256) as u8
}

/// `floor(x * 10^6) mod 256`, used on the rescaled Logistic orbit.
#[inline]
pub fn quantize_h1(x: f64) -> u8 {
    quantize(x, 1e6)
}

/// `floor(x * 10^5) mod 256`, used on the real Logistic orbit.
#[inline]
pub fn quantize_h2(x: f64) -> u8 {
    quantize(x, 1e5)
}
