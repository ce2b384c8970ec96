//! Plain-text matrix format for [`WideImage`].
//!
//! ```text
//! WIDE <M> <N>
//! <N space-separated integers>   (M lines)
//! ```
//!
//! `M` is the row count, `N` the column count. Every line ends in `\n`.

use crate::{ImageError, WideImage};

pub fn write_wide(img: &WideImage) -> String {
    let mut out = format!("WIDE {} {}\n", img.height(), img.width());
    for row in img.pixels().chunks(img.width()) {
        let line: Vec<String> = row.iter().map(i64::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

pub fn read_wide(text: &str) -> Result<WideImage, ImageError> {
    let bad = |msg: String| ImageError::MalformedWide(msg);
    let mut lines = text.lines();
    let header = lines.next().ok_or_else(|| bad("empty document".into()))?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (rows, cols) = match fields.as_slice() {
        ["WIDE", m, n] => (
            m.parse::<usize>()
                .map_err(|_| bad(format!("invalid row count {m:?}")))?,
            n.parse::<usize>()
                .map_err(|_| bad(format!("invalid column count {n:?}")))?,
        ),
        _ => {
            return Err(bad(format!(
                "expected header \"WIDE M N\", found {header:?}"
            )))
        }
    };

    let mut pixels = Vec::with_capacity(rows.saturating_mul(cols));
    for r in 0..rows {
        let line = lines
            .next()
            .ok_or_else(|| bad(format!("expected {rows} rows, found {r}")))?;
        let before = pixels.len();
        for tok in line.split_whitespace() {
            pixels.push(
                tok.parse::<i64>()
                    .map_err(|_| bad(format!("row {r}: invalid integer {tok:?}")))?,
            );
        }
        let got = pixels.len() - before;
        if got != cols {
            return Err(bad(format!("row {r}: expected {cols} values, found {got}")));
        }
    }
    if lines.any(|l| !l.trim().is_empty()) {
        return Err(bad("trailing data after last row".into()));
    }
    WideImage::new(cols, rows, pixels)
}
