//! Cryptanalysis workbench for a one-round chaotic image block cipher.
//!
//! The workspace is split so that the attack cannot see the key:
//!
//! - [`image`]: byte and wide-integer images, PGM and wide-text I/O.
//! - [`cipher`]: the cipher, its key schedule and its mask/permutation form.
//! - [`attack`]: equivalent-key recovery from five chosen plaintexts. It
//!   depends only on [`image`].
//! - [`metrics`]: histogram, entropy, correlation, NPCR/UACI.
//!
//! This crate glues them together with [`KeyedOracle`], which hands the
//! attack an encryption capability and nothing else.
//!
//! ```
//! use chaoscrack::{attack, cipher, fixtures, KeyedOracle};
//!
//! let mut key = fixtures::reference_key();
//! key.a %= 64;
//! key.b %= 64;
//! let plain = fixtures::synthetic_image(64, 1);
//! let enc = cipher::encrypt(&plain, &key)?;
//!
//! let mut oracle = attack::CountingOracle::new(KeyedOracle::new(key));
//! let recovered = attack::attack_decrypt(&mut oracle, &enc.cipher, enc.eta)?;
//! assert_eq!(recovered, plain);
//! assert_eq!(oracle.queries(), 5);
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub use chaoscrack_attack as attack;
pub use chaoscrack_cipher as cipher;
pub use chaoscrack_image as image;
pub use chaoscrack_metrics as metrics;

pub mod fixtures;

use chaoscrack_attack::{EncryptionOracle, OracleError};
use chaoscrack_cipher::KeyMaterial;
use chaoscrack_image::{Image, WideImage};

/// In-process encryption oracle holding a secret key.
///
/// The key is private; callers can only ask for encryptions.
pub struct KeyedOracle {
    key: KeyMaterial,
}

impl KeyedOracle {
    pub fn new(key: KeyMaterial) -> Self {
        KeyedOracle { key }
    }
}

impl std::fmt::Debug for KeyedOracle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("KeyedOracle").finish_non_exhaustive()
    }
}

impl EncryptionOracle for KeyedOracle {
    fn encrypt_chosen(&mut self, plain: &WideImage) -> Result<Image, OracleError> {
        chaoscrack_cipher::encrypt_wide(plain, &self.key)
            .map(|enc| enc.cipher)
            .map_err(|e| OracleError::Rejected(e.to_string()))
    }
}

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/images.md")]
    mod images {}
    #[doc = include_str!("../../../book/src/chaos.md")]
    mod chaos {}
    #[doc = include_str!("../../../book/src/cipher.md")]
    mod cipher {}
    #[doc = include_str!("../../../book/src/attack.md")]
    mod attack {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
