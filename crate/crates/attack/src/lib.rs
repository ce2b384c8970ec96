//! Chosen-plaintext recovery of an equivalent key for the chaotic image
//! block cipher.
//!
//! The cipher's keystream depends on the plaintext only through its pixel
//! sum `eta`. For a fixed `eta` every cipher is `permute(I) + P (mod 256)`,
//! and the pair `(P, permutation)` decrypts anything with that sum. Five
//! chosen plaintexts, all with pixel sum `eta`, reveal both:
//!
//! | query | plaintext | reveals |
//! |-------|-----------|---------|
//! | 1 | `eta` at `(0,0)` | mask, up to one entry |
//! | 2, 3 | one unit moved to `(0,1)` / `(0,2)` | landing spot of `(0,0)` |
//! | 4, 5 | base-256 index digits | permutation |
//!
//! This crate depends on nothing but the image types; the cipher is reached
//! only through [`EncryptionOracle`].

mod index;
mod mask;
mod oracle;
mod probe;

use chaoscrack_image::{Image, ImageError, MaskImage};
use thiserror::Error;

pub use index::{
    make_index_images, recover_permutation, IndexImages, RecoveredPermutation, MAX_PIXELS,
};
pub use mask::{recover_mask, unmask};
pub use oracle::{CountingOracle, EncryptionOracle, OracleError, ProcessOracle};
pub use probe::{diff_positions, locate_first_pixel, make_probe_images, ProbeSet};

/// Number of oracle queries a full key recovery makes.
pub const QUERY_BUDGET: usize = 5;

#[derive(Debug, Error)]
pub enum AttackError {
    #[error("cannot attack a target with pixel sum {eta}; the probes need a sum of at least 1")]
    UnsupportedTarget { eta: i64 },
    #[error("unsupported image size {height}x{width}: need at least 2 rows, 3 columns and at most {MAX_PIXELS} pixels")]
    UnsupportedSize { height: usize, width: usize },
    #[error("images passed to the attack have mismatched shapes")]
    ShapeMismatch,
    #[error("oracle query failed during {stage}: {source}")]
    Oracle {
        stage: &'static str,
        #[source]
        source: OracleError,
    },
    #[error("locating the first pixel failed: {0}")]
    Locate(String),
    #[error("recovering the permutation failed: {0}")]
    Permutation(String),
    #[error(transparent)]
    Image(#[from] ImageError),
}

impl AttackError {
    /// Short name of the pipeline stage that failed.
    pub fn stage(&self) -> &'static str {
        match self {
            AttackError::UnsupportedTarget { .. } | AttackError::UnsupportedSize { .. } => "setup",
            AttackError::Oracle { stage, .. } => stage,
            AttackError::Locate(_) => "locate",
            AttackError::Permutation(_) => "permutation",
            AttackError::ShapeMismatch | AttackError::Image(_) => "unmask",
        }
    }
}

/// The equivalent key: enough to decrypt every cipher whose plaintext had
/// pixel sum `eta`, without the real key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecoveredKey {
    pub mask: MaskImage,
    pub permutation: RecoveredPermutation,
    /// Where plaintext entry `(0, 0)` lands.
    pub position: (usize, usize),
    pub eta: i64,
}

impl RecoveredKey {
    /// Unmasks and unpermutes `cipher`.
    pub fn decrypt(&self, cipher: &Image) -> Result<Image, AttackError> {
        let permuted = unmask(cipher, &self.mask)?;
        self.permutation.unpermute(&permuted)
    }
}

/// Every intermediate of a key recovery, for inspection and reporting.
#[derive(Debug, Clone)]
pub struct AttackTranscript {
    pub probes: ProbeSet,
    pub probe_ciphers: [Image; 3],
    pub index_images: IndexImages,
    pub index_ciphers: [Image; 2],
    pub key: RecoveredKey,
}

fn query<O: EncryptionOracle>(
    oracle: &mut O,
    stage: &'static str,
    plain: &chaoscrack_image::WideImage,
) -> Result<Image, AttackError> {
    let cipher = oracle
        .encrypt_chosen(plain)
        .map_err(|source| AttackError::Oracle { stage, source })?;
    if !cipher.same_shape(plain) {
        return Err(AttackError::ShapeMismatch);
    }
    Ok(cipher)
}

/// Runs the five queries and recovers the equivalent key for pixel sum
/// `eta` on `height x width` images, keeping every intermediate.
pub fn run_attack<O: EncryptionOracle>(
    oracle: &mut O,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<AttackTranscript, AttackError> {
    if height * width > MAX_PIXELS {
        return Err(AttackError::UnsupportedSize { height, width });
    }
    let probes = make_probe_images(eta, height, width)?;
    let c1 = query(oracle, "locate", &probes.q1)?;
    let c2 = query(oracle, "locate", &probes.q2)?;
    let c3 = query(oracle, "locate", &probes.q3)?;
    let position = locate_first_pixel(&c1, &c2, &c3)?;

    let mask = recover_mask(&c1, eta, position)?;

    let index_images = make_index_images(eta, height, width)?;
    let c_low = query(oracle, "permutation", &index_images.low)?;
    let c_high = query(oracle, "permutation", &index_images.high)?;
    let permutation = recover_permutation(&c_low, &c_high, &mask, position)?;
    if permutation.source(position.0 * width + position.1) != 0 {
        return Err(AttackError::Permutation(
            "first pixel does not map back to the located position".into(),
        ));
    }

    Ok(AttackTranscript {
        probes,
        probe_ciphers: [c1, c2, c3],
        index_images,
        index_ciphers: [c_low, c_high],
        key: RecoveredKey {
            mask,
            permutation,
            position,
            eta,
        },
    })
}

/// [`run_attack`] without the intermediates.
pub fn recover_equivalent_key<O: EncryptionOracle>(
    oracle: &mut O,
    eta: i64,
    height: usize,
    width: usize,
) -> Result<RecoveredKey, AttackError> {
    run_attack(oracle, eta, height, width).map(|t| t.key)
}

/// Recovers the plaintext of `target`, which was encrypted by the oracle's
/// key from a plaintext with pixel sum `eta`.
pub fn attack_decrypt<O: EncryptionOracle>(
    oracle: &mut O,
    target: &Image,
    eta: i64,
) -> Result<Image, AttackError> {
    recover_equivalent_key(oracle, eta, target.height(), target.width())?.decrypt(target)
}
