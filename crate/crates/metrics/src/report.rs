use chaoscrack_image::Image;
use serde::{Deserialize, Serialize};

use crate::{
    adjacent_correlation, bitplane_histogram, histogram, histogram_variance, npcr, shannon_entropy,
    uaci, Direction, MetricError,
};

/// Metrics for one image, optionally against a second image of equal size.
///
/// Correlations are `null` when undefined (a constant image). `npcr` and
/// `uaci` are `null` unless a pair image was supplied.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub source: String,
    pub pair_source: Option<String>,
    pub width: usize,
    pub height: usize,
    pub entropy: f64,
    pub hist_variance: f64,
    pub corr_h: Option<f64>,
    pub corr_v: Option<f64>,
    pub corr_d: Option<f64>,
    pub npcr: Option<f64>,
    pub uaci: Option<f64>,
    /// Number of 1-bits in each bit plane, least significant first.
    pub bitplane_ones: [u64; 8],
}

impl MetricReport {
    pub fn compute(
        source: impl Into<String>,
        img: &Image,
        pair: Option<(String, &Image)>,
    ) -> Result<Self, MetricError> {
        let corr = |d| adjacent_correlation(img, d).ok();
        let mut bitplane_ones = [0u64; 8];
        for (plane, slot) in bitplane_ones.iter_mut().enumerate() {
            *slot = bitplane_histogram(img, plane as u8)?.1;
        }
        let (pair_source, npcr, uaci) = match pair {
            Some((name, other)) => (Some(name), Some(npcr(img, other)?), Some(uaci(img, other)?)),
            None => (None, None, None),
        };
        Ok(MetricReport {
            source: source.into(),
            pair_source,
            width: img.width(),
            height: img.height(),
            entropy: shannon_entropy(img),
            hist_variance: histogram_variance(histogram(img).bins())?,
            corr_h: corr(Direction::Horizontal),
            corr_v: corr(Direction::Vertical),
            corr_d: corr(Direction::Diagonal),
            npcr,
            uaci,
            bitplane_ones,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_report() {
        let img = Image::filled(4, 4, 7).unwrap();
        let r = MetricReport::compute("flat", &img, Some(("flat".into(), &img))).unwrap();
        assert_eq!(r.entropy, 0.0);
        assert_eq!(r.corr_h, None);
        assert_eq!(r.npcr, Some(0.0));
        assert_eq!(r.uaci, Some(0.0));
        assert_eq!(r.bitplane_ones, [16, 16, 16, 0, 0, 0, 0, 0]);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        for field in [
            "entropy",
            "hist_variance",
            "corr_h",
            "corr_v",
            "corr_d",
            "npcr",
            "uaci",
        ] {
            assert!(json.get(field).is_some(), "{field}");
        }
    }

    #[test]
    fn mismatched_pair() {
        let a = Image::filled(4, 4, 7).unwrap();
        let b = Image::filled(5, 5, 7).unwrap();
        assert!(MetricReport::compute("a", &a, Some(("b".into(), &b))).is_err());
    }
}
