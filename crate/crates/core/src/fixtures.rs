//! Deterministic keys and images for demos, docs and tests.

use chaoscrack_cipher::KeyMaterial;
use chaoscrack_image::Image;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The commonly cited example key for this cipher on 256 x 256 images.
///
/// The published parameter list has no Baker `mu` and no `s0[1]`, `s0[2]`;
/// this key fills them with `mu = 0.3`, `s0[1] = 0.25`, `s0[2] = 0.75`.
pub fn reference_key() -> KeyMaterial {
    KeyMaterial {
        a: 97,
        b: 111,
        x0: 0.123,
        y0: 0.456,
        z0: 0.147,
        mu: 0.3,
        r: 3.999,
        s0: [0.789, 0.25, 0.75],
        n: 10_000,
    }
}

/// [`reference_key`] with the Arnold parameters reduced mod 4, for 4 x 4
/// images.
pub fn toy_key() -> KeyMaterial {
    KeyMaterial {
        a: 97 % 4,
        b: 111 % 4,
        ..reference_key()
    }
}

/// A 4 x 4 image whose pixels sum to 575.
pub fn toy_image() -> Image {
    Image::new(
        4,
        4,
        vec![
            12, 45, 30, 60, 25, 50, 35, 40, 20, 33, 47, 28, 55, 15, 38, 42,
        ],
    )
    .expect("16 pixels")
}

/// A smooth, photo-like test image with mild noise, reproducible from `seed`.
pub fn synthetic_image(side: usize, seed: u64) -> Image {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let s = side as f64;
    let (cx, cy) = (rng.gen_range(0.3..0.7) * s, rng.gen_range(0.3..0.7) * s);
    Image::from_fn(side, side, |i, j| {
        let (x, y) = (j as f64, i as f64);
        let r = ((x - cx).powi(2) + (y - cy).powi(2)).sqrt() / s;
        let waves = 40.0 * (x / s * 7.0).sin() * (y / s * 5.0).cos();
        let v = 150.0 - 140.0 * r + waves + rng.gen_range(-6.0..6.0);
        v.clamp(0.0, 255.0) as u8
    })
    .expect("side is positive")
}

/// A valid key for `side x side` images drawn from `rng`.
pub fn random_key(rng: &mut impl Rng, side: usize) -> KeyMaterial {
    KeyMaterial {
        a: rng.gen_range(0..side as u64),
        b: rng.gen_range(0..side as u64),
        x0: rng.gen_range(0.0..=1.0),
        y0: rng.gen_range(0.0..=1.0),
        z0: rng.gen_range(0.0..=1.0),
        mu: rng.gen_range(0.01..0.99),
        r: rng.gen_range(3.57..=4.0),
        s0: [
            rng.gen_range(0.0..256.0),
            rng.gen_range(0.0..1.0),
            rng.gen_range(0.0..1.0),
        ],
        n: rng.gen_range(1..=10_000),
    }
}

/// A uniformly random `side x side` image drawn from `rng`.
pub fn random_image(rng: &mut impl Rng, side: usize) -> Image {
    Image::from_fn(side, side, |_, _| rng.gen()).expect("side is positive")
}
