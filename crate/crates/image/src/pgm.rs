//! Binary graymap (`P5`, maxval 255) reading and writing.

use crate::{Image, ImageError};

/// Parses a binary `P5` graymap with maxval 255.
///
/// Header tokens are separated by whitespace and may be interleaved with
/// `#` comments. Exactly one whitespace byte separates the maxval from the
/// payload. Bytes past `width * height` are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<Image, ImageError> {
    let mut cursor = HeaderCursor { bytes, pos: 0 };

    let magic = cursor.token()?;
    if magic != b"P5" {
        return Err(ImageError::MalformedHeader(format!(
            "expected magic P5, found {:?}",
            String::from_utf8_lossy(magic)
        )));
    }
    let width = cursor.number("width")?;
    let height = cursor.number("height")?;
    let maxval = cursor.number("maxval")?;
    if maxval != 255 {
        return Err(ImageError::UnsupportedMaxval(maxval));
    }
    match bytes.get(cursor.pos) {
        Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
        _ => {
            return Err(ImageError::MalformedHeader(
                "missing whitespace after maxval".into(),
            ))
        }
    }

    let width = usize::try_from(width)
        .map_err(|_| ImageError::MalformedHeader("width too large".into()))?;
    let height = usize::try_from(height)
        .map_err(|_| ImageError::MalformedHeader("height too large".into()))?;
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| ImageError::MalformedHeader("dimensions overflow".into()))?;
    let payload = &bytes[cursor.pos..];
    if payload.len() < expected {
        return Err(ImageError::TruncatedPayload {
            expected,
            actual: payload.len(),
        });
    }
    Image::new(width, height, payload[..expected].to_vec())
}

/// Serializes as `P5\n<width> <height>\n255\n` followed by the raw pixels.
pub fn write_pgm(img: &Image) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", img.width(), img.height());
    let mut out = Vec::with_capacity(header.len() + img.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(img.pixels());
    out
}

struct HeaderCursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> HeaderCursor<'a> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() {
                self.pos += 1;
            } else if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' {
                        break;
                    }
                }
            } else {
                break;
            }
        }
    }

    fn token(&mut self) -> Result<&'a [u8], ImageError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while let Some(&b) = self.bytes.get(self.pos) {
            if b.is_ascii_whitespace() || b == b'#' {
                break;
            }
            self.pos += 1;
        }
        if start == self.pos {
            return Err(ImageError::MalformedHeader(
                "unexpected end of header".into(),
            ));
        }
        Ok(&self.bytes[start..self.pos])
    }

    fn number(&mut self, what: &str) -> Result<u64, ImageError> {
        let tok = self.token()?;
        std::str::from_utf8(tok)
            .ok()
            .filter(|s| s.bytes().all(|b| b.is_ascii_digit()))
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| {
                ImageError::MalformedHeader(format!(
                    "invalid {what} {:?}",
                    String::from_utf8_lossy(tok)
                ))
            })
    }
}
