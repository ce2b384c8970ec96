//! A one-round chaotic image block cipher.
//!
//! Encryption of a square `N x N` grayscale image `I`:
//!
//! 1. Couple the key to the plaintext through `mean(I) / 256`, iterate the
//!    Baker map `n` times from the shifted seed and read off a split point
//!    `(u, v)`.
//! 2. Move every pixel with the Arnold cat map, then swap entries `(0, 0)`
//!    and `(u, v)`.
//! 3. Cut the permuted image into four sub-images at `(u, v)`.
//! 4. Add a Logistic-map keystream to every sub-image, mod 256.
//!
//! Because the keystream depends on the plaintext only through its pixel
//! sum, the whole procedure collapses to `cipher = permute(I) + P (mod 256)`
//! for a mask `P` fixed by `(key, sum, N)`. [`encrypt`] uses that form,
//! [`encrypt_stepwise`] runs the steps literally.

pub mod chaos;
mod key;
pub mod keystream;
pub mod permutation;
pub mod schedule;

use chaoscrack_image::{mod256_add, Image, ImageError, MaskImage, WideImage};
use thiserror::Error;

pub use chaos::ChaosError;
pub use key::{KeyError, KeyMaterial, DEFAULT_BAKER_ITERATIONS};
pub use keystream::{build_mask, generate_m_sequence, generate_t_sequence};
pub use permutation::{build_permutation, PermutationMap};
pub use schedule::{derive_schedule, ScheduleState};

#[derive(Debug, Error)]
pub enum CipherError {
    #[error(
        "non-square image ({height} rows x {width} columns); only square images are supported"
    )]
    NonSquare { height: usize, width: usize },
    #[error("image side {side} is too small, need at least 2")]
    TooSmall { side: usize },
    #[error(transparent)]
    Key(#[from] KeyError),
    #[error(transparent)]
    Chaos(#[from] ChaosError),
    #[error(transparent)]
    Image(#[from] ImageError),
}

/// Cipher-image together with the plaintext pixel sum the receiver needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Encrypted {
    pub cipher: Image,
    pub eta: i64,
}

/// Encrypts an 8-bit plaintext.
pub fn encrypt(img: &Image, key: &KeyMaterial) -> Result<Encrypted, CipherError> {
    encrypt_wide(&img.to_wide(), key)
}

/// Encrypts a plaintext whose pixels may lie outside `0..=255`.
///
/// The pixel sum uses the true values; each pixel is reduced mod 256 only
/// when the keystream is added.
pub fn encrypt_wide(img: &WideImage, key: &KeyMaterial) -> Result<Encrypted, CipherError> {
    let (height, width) = (img.height(), img.width());
    let eta = img.pixel_sum();
    let schedule = derive_schedule(key, eta, height, width)?;
    let perm = build_permutation(key, &schedule, width);
    let mask = keystream::mask_from_schedule(key, &schedule, height, width);

    let permuted = perm.apply(img.pixels());
    let pixels = permuted
        .iter()
        .zip(mask.as_image().pixels())
        .map(|(&x, &p)| mod256_add(x, i64::from(p)))
        .collect();
    Ok(Encrypted {
        cipher: Image::new(width, height, pixels)?,
        eta,
    })
}

/// Encrypts by following the block procedure literally: Arnold move, swap,
/// cut into four sub-images, per-sub-image keystream, reassemble.
pub fn encrypt_stepwise(img: &WideImage, key: &KeyMaterial) -> Result<Encrypted, CipherError> {
    let (height, width) = (img.height(), img.width());
    let eta = img.pixel_sum();
    let schedule = derive_schedule(key, eta, height, width)?;
    let side = width;

    let mut permuted = vec![0i64; side * side];
    for i in 0..side {
        for j in 0..side {
            let (p, q) = chaos::arnold_map(i, j, key.a as usize, key.b as usize, side);
            permuted[p * side + q] = img.get(i, j);
        }
    }
    permuted.swap(0, schedule.u * side + schedule.v);

    let (u, v) = (schedule.u, schedule.v);
    let row_ranges = [0..u, 0..u, u..height, u..height];
    let col_ranges = [0..v, v..width, 0..v, v..width];
    let t = generate_t_sequence(key.s0[0], height * width);

    let mut out = vec![0u8; side * side];
    for k in 0..4 {
        let rows = row_ranges[k].clone();
        let cols = col_ranges[k].clone();
        let sub: Vec<i64> = rows
            .clone()
            .flat_map(|i| cols.clone().map(move |j| (i, j)))
            .map(|(i, j)| permuted[i * side + j])
            .collect();
        let local_width = cols.len();
        let m = generate_m_sequence(schedule.z0[k], key.r, sub.len());

        let encrypted: Vec<u8> = sub
            .iter()
            .enumerate()
            .map(|(p, &a)| {
                let (mp, tp) = (i64::from(m[p]), i64::from(t[p]));
                if mp == 255 {
                    mod256_add(a, mp * tp)
                } else {
                    mod256_add(a, (mp + 1) * tp)
                }
            })
            .collect();

        for (p, &c) in encrypted.iter().enumerate() {
            let (i, j) = (p / local_width, p % local_width);
            out[(rows.start + i) * side + cols.start + j] = c;
        }
    }
    Ok(Encrypted {
        cipher: Image::new(width, height, out)?,
        eta,
    })
}

/// Inverts [`encrypt`]. `eta` must be the pixel sum of the original
/// plaintext; the key alone does not determine the keystream.
pub fn decrypt(cipher: &Image, key: &KeyMaterial, eta: i64) -> Result<Image, CipherError> {
    let (height, width) = (cipher.height(), cipher.width());
    let schedule = derive_schedule(key, eta, height, width)?;
    let perm = build_permutation(key, &schedule, width);
    let mask = keystream::mask_from_schedule(key, &schedule, height, width);

    let unmasked: Vec<u8> = cipher
        .pixels()
        .iter()
        .zip(mask.as_image().pixels())
        .map(|(&c, &p)| mod256_add(i64::from(c), -i64::from(p)))
        .collect();
    Ok(Image::new(width, height, perm.unapply(&unmasked))?)
}

/// The permutation the cipher uses for plaintexts with pixel sum `eta`.
pub fn permutation_for(
    key: &KeyMaterial,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<PermutationMap, CipherError> {
    let schedule = derive_schedule(key, eta, height, width)?;
    Ok(build_permutation(key, &schedule, width))
}

/// Mask and permutation together: everything needed to decrypt any cipher
/// whose plaintext has pixel sum `eta`.
pub fn equivalent_key(
    key: &KeyMaterial,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<(MaskImage, PermutationMap), CipherError> {
    let schedule = derive_schedule(key, eta, height, width)?;
    Ok((
        keystream::mask_from_schedule(key, &schedule, height, width),
        build_permutation(key, &schedule, width),
    ))
}
