//! Grayscale image containers shared by the cipher, the attack and the
//! metrics crates.
//!
//! Two pixel domains exist. [`Image`] holds ordinary 8-bit pixels and is what
//! the cipher emits. [`WideImage`] holds signed 64-bit pixels; chosen probe
//! images place the whole plaintext pixel sum into one entry, so they do not
//! fit in a byte (a single pixel of 575 is a typical value).
//!
//! Every index in this workspace is 0-based and row-major: entry `(i, j)` of
//! an `M x N` image lives at linear index `i * N + j`.

mod error;
mod pgm;
mod wide_text;

pub use error::ImageError;
pub use pgm::{read_pgm, write_pgm};
pub use wide_text::{read_wide, write_wide};

/// Floored modular addition: `(a + b) mod 256`, always in `0..=255`.
///
/// ```
/// use chaoscrack_image::mod256_add;
/// assert_eq!(mod256_add(10, -575), 203);
/// assert_eq!(mod256_add(1, 510), 255);
/// ```
pub fn mod256_add(a: i64, b: i64) -> u8 {
    (a.wrapping_add(b)).rem_euclid(256) as u8
}

/// Row-major position inside an `M x N` grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinearIndex(pub usize);

impl LinearIndex {
    pub fn from_coords(row: usize, col: usize, width: usize) -> Self {
        LinearIndex(row * width + col)
    }

    pub fn coords(self, width: usize) -> (usize, usize) {
        (self.0 / width, self.0 % width)
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<(), ImageError> {
    if width == 0 || height == 0 {
        return Err(ImageError::EmptyDimensions { width, height });
    }
    let expected = width
        .checked_mul(height)
        .ok_or(ImageError::EmptyDimensions { width, height })?;
    if expected != len {
        return Err(ImageError::PixelCount {
            expected,
            actual: len,
        });
    }
    Ok(())
}

/// An `M x N` matrix of bytes.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Image {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl Image {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self, ImageError> {
        check_dims(width, height, pixels.len())?;
        Ok(Image {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, value: u8) -> Result<Self, ImageError> {
        Image::new(width, height, vec![value; width.saturating_mul(height)])
    }

    /// Builds an image by evaluating `f(row, col)` at every position.
    pub fn from_fn(
        width: usize,
        height: usize,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self, ImageError> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for i in 0..height {
            for j in 0..width {
                pixels.push(f(i, j));
            }
        }
        Image::new(width, height, pixels)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.width == self.height
    }

    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.pixels[row * self.width + col]
    }

    /// Exact sum of all pixel values.
    pub fn pixel_sum(&self) -> i64 {
        self.pixels.iter().map(|&p| i64::from(p)).sum()
    }

    pub fn same_shape<T>(&self, other: &T) -> bool
    where
        T: Shape,
    {
        self.width == other.width() && self.height == other.height()
    }

    pub fn to_wide(&self) -> WideImage {
        WideImage {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&p| i64::from(p)).collect(),
        }
    }
}

/// An `M x N` matrix of signed integers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WideImage {
    width: usize,
    height: usize,
    pixels: Vec<i64>,
}

impl WideImage {
    pub fn new(width: usize, height: usize, pixels: Vec<i64>) -> Result<Self, ImageError> {
        check_dims(width, height, pixels.len())?;
        Ok(WideImage {
            width,
            height,
            pixels,
        })
    }

    pub fn zeros(width: usize, height: usize) -> Result<Self, ImageError> {
        WideImage::new(width, height, vec![0; width.saturating_mul(height)])
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    pub fn is_square(&self) -> bool {
        self.width == self.height
    }

    pub fn pixels(&self) -> &[i64] {
        &self.pixels
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.pixels[row * self.width + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.pixels[row * self.width + col] = value;
    }

    /// Exact sum of all pixel values, no modular reduction.
    pub fn pixel_sum(&self) -> i64 {
        self.pixels.iter().sum()
    }

    /// Narrows to bytes; fails on the first out-of-range entry.
    pub fn to_image(&self) -> Result<Image, ImageError> {
        let pixels = self
            .pixels
            .iter()
            .enumerate()
            .map(|(index, &value)| {
                u8::try_from(value).map_err(|_| ImageError::OutOfRange { index, value })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Image {
            width: self.width,
            height: self.height,
            pixels,
        })
    }
}

impl From<&Image> for WideImage {
    fn from(img: &Image) -> Self {
        img.to_wide()
    }
}

impl TryFrom<&WideImage> for Image {
    type Error = ImageError;

    fn try_from(img: &WideImage) -> Result<Self, Self::Error> {
        img.to_image()
    }
}

/// The additive keystream of the cipher laid out as an image: the cipher is
/// the permuted plaintext plus this mask, entrywise mod 256.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MaskImage(Image);

impl MaskImage {
    pub fn new(image: Image) -> Self {
        MaskImage(image)
    }

    pub fn as_image(&self) -> &Image {
        &self.0
    }

    pub fn into_image(self) -> Image {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.pixels().iter().all(|&p| p == 0)
    }
}

/// Dimensions common to both image kinds.
pub trait Shape {
    fn width(&self) -> usize;
    fn height(&self) -> usize;
}

impl Shape for Image {
    fn width(&self) -> usize {
        self.width
    }
    fn height(&self) -> usize {
        self.height
    }
}

impl Shape for WideImage {
    fn width(&self) -> usize {
        self.width
    }
    fn height(&self) -> usize {
        self.height
    }
}
