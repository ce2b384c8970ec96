//! Secret key material and its JSON form.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default number of Baker iterations before the block split is read off.
pub const DEFAULT_BAKER_ITERATIONS: u32 = 10_000;

#[derive(Debug, Error)]
pub enum KeyError {
    #[error("key field `{field}` = {value} is outside {range}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        range: &'static str,
    },
    #[error("Arnold parameter `{field}` = {value} must be below the image side {side}")]
    ArnoldParameter {
        field: &'static str,
        value: u64,
        side: usize,
    },
    #[error("invalid key document: {0}")]
    Parse(#[from] serde_json::Error),
}

/// The full secret key.
///
/// `s0[0]` seeds the rescaled Logistic map. It may be an integer in `0..=255`
/// or any real in `[0, 256)`. `s0[1]` and `s0[2]` offset the Logistic seeds of
/// the third and fourth sub-images.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KeyMaterial {
    pub a: u64,
    pub b: u64,
    pub x0: f64,
    pub y0: f64,
    pub z0: f64,
    pub mu: f64,
    pub r: f64,
    pub s0: [f64; 3],
    #[serde(default = "default_n")]
    pub n: u32,
}

fn default_n() -> u32 {
    DEFAULT_BAKER_ITERATIONS
}

fn in_range(
    field: &'static str,
    value: f64,
    range: &'static str,
    ok: impl Fn(f64) -> bool,
) -> Result<(), KeyError> {
    if value.is_finite() && ok(value) {
        Ok(())
    } else {
        Err(KeyError::OutOfRange {
            field,
            value,
            range,
        })
    }
}

impl KeyMaterial {
    /// Parses a JSON key document and range-checks every field.
    pub fn from_json(text: &str) -> Result<Self, KeyError> {
        let key: KeyMaterial = serde_json::from_str(text)?;
        key.validate()?;
        Ok(key)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("key serializes")
    }

    /// Checks every range that does not depend on the image size.
    pub fn validate(&self) -> Result<(), KeyError> {
        let unit = |v: f64| (0.0..=1.0).contains(&v);
        let half_open = |v: f64| (0.0..1.0).contains(&v);
        in_range("x0", self.x0, "[0, 1]", unit)?;
        in_range("y0", self.y0, "[0, 1]", unit)?;
        in_range("z0", self.z0, "[0, 1]", unit)?;
        in_range("mu", self.mu, "(0, 1)", |v| v > 0.0 && v < 1.0)?;
        in_range("r", self.r, "(3.5699, 4]", |v| v > 3.5699 && v <= 4.0)?;
        in_range("s0[0]", self.s0[0], "[0, 256)", |v| {
            (0.0..256.0).contains(&v)
        })?;
        in_range("s0[1]", self.s0[1], "[0, 1)", half_open)?;
        in_range("s0[2]", self.s0[2], "[0, 1)", half_open)?;
        if self.n == 0 {
            return Err(KeyError::OutOfRange {
                field: "n",
                value: 0.0,
                range: "[1, 2^32)",
            });
        }
        Ok(())
    }

    /// [`validate`](Self::validate) plus the Arnold bounds `a, b < side`.
    pub fn validate_for_side(&self, side: usize) -> Result<(), KeyError> {
        self.validate()?;
        for (field, value) in [("a", self.a), ("b", self.b)] {
            if value >= side as u64 {
                return Err(KeyError::ArnoldParameter { field, value, side });
            }
        }
        Ok(())
    }
}
