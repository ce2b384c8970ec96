//! Recovering the additive mask and stripping it from a cipher.

use chaoscrack_image::{mod256_add, Image, MaskImage};

use crate::AttackError;

/// The cipher of the single-spike probe equals the mask everywhere except
/// at the spike's landing position, which carries an extra `eta`.
pub fn recover_mask(
    c1: &Image,
    eta: i64,
    (u, v): (usize, usize),
) -> Result<MaskImage, AttackError> {
    if u >= c1.height() || v >= c1.width() {
        return Err(AttackError::Locate(format!(
            "position ({u}, {v}) outside a {}x{} cipher",
            c1.height(),
            c1.width()
        )));
    }
    let mut px = c1.pixels().to_vec();
    let k = u * c1.width() + v;
    px[k] = mod256_add(i64::from(px[k]), -eta);
    Ok(MaskImage::new(Image::new(c1.width(), c1.height(), px)?))
}

/// `(cipher - mask) mod 256`, the permuted plaintext.
pub fn unmask(cipher: &Image, mask: &MaskImage) -> Result<Image, AttackError> {
    let mask = mask.as_image();
    if !cipher.same_shape(mask) {
        return Err(AttackError::ShapeMismatch);
    }
    let px = cipher
        .pixels()
        .iter()
        .zip(mask.pixels())
        .map(|(&c, &p)| mod256_add(i64::from(c), -i64::from(p)))
        .collect();
    Ok(Image::new(cipher.width(), cipher.height(), px)?)
}
