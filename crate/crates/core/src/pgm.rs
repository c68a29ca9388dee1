//! Binary PGM (`P5`, maxval 255) codec.

use crate::error::{PgmError, Result};
use crate::image::GrayImage;

/// Decodes a `P5` file. Header tokens may be separated by any ASCII
/// whitespace and interleaved with `#` comments running to end of line;
/// exactly one whitespace byte separates the maxval from the raster.
/// Bytes after the raster are ignored.
pub fn read_pgm(bytes: &[u8]) -> Result<GrayImage> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic.into());
    }
    let mut cursor = Header { bytes, pos: 2 };
    let width = cursor.number("width")?;
    let height = cursor.number("height")?;
    let maxval = cursor.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PgmError::BadHeader(format!("zero dimension {width}x{height}")).into());
    }
    if maxval != 255 {
        return Err(PgmError::UnsupportedMaxval(maxval.min(u32::MAX as usize) as u32).into());
    }
    match bytes.get(cursor.pos) {
        Some(b) if b.is_ascii_whitespace() => cursor.pos += 1,
        _ => {
            return Err(PgmError::BadHeader("missing whitespace after maxval".into()).into());
        }
    }
    let expected = width
        .checked_mul(height)
        .ok_or_else(|| PgmError::BadHeader("dimensions overflow".into()))?;
    let data = &bytes[cursor.pos..];
    if data.len() < expected {
        return Err(PgmError::TruncatedData {
            expected,
            actual: data.len(),
        }
        .into());
    }
    GrayImage::new(width, height, data[..expected].to_vec())
}

/// Canonical encoding: `P5\n<w> <h>\n255\n` followed by the raster.
pub fn write_pgm(image: &GrayImage) -> Vec<u8> {
    let header = format!("P5\n{} {}\n255\n", image.width(), image.height());
    let mut out = Vec::with_capacity(header.len() + image.len());
    out.extend_from_slice(header.as_bytes());
    out.extend_from_slice(image.pixels());
    out
}

struct Header<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Header<'_> {
    fn skip_space_and_comments(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, field: &str) -> Result<usize, PgmError> {
        let start = self.pos;
        self.skip_space_and_comments();
        if self.pos == start {
            return Err(PgmError::BadHeader(format!(
                "expected whitespace before {field}"
            )));
        }
        let digits_start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if self.pos == digits_start {
            return Err(PgmError::BadHeader(format!("missing {field}")));
        }
        std::str::from_utf8(&self.bytes[digits_start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| PgmError::BadHeader(format!("{field} out of range")))
    }
}
