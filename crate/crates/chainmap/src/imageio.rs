//! Binary PGM (P5) reading and writing, and conversion to label maps.

use chainmap_core::LabelMap;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PgmError {
    #[error("not a binary PGM (expected P5 magic)")]
    BadMagic,
    #[error("malformed PGM header: {0}")]
    BadHeader(&'static str),
    #[error("PGM sample data truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("sample {value} exceeds maxval {maxval}")]
    SampleRange { value: u16, maxval: u16 },
    #[error("image {0}x{1} cannot be represented as a label map")]
    Dimensions(u32, u32),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PgmImage {
    pub width: u32,
    pub height: u32,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

struct HeaderReader<'a> {
    bytes: &'a [u8],
    at: usize,
}

impl HeaderReader<'_> {
    fn skip_space(&mut self) {
        while let Some(&b) = self.bytes.get(self.at) {
            if b == b'#' {
                while self.bytes.get(self.at).is_some_and(|&b| b != b'\n' && b != b'\r') {
                    self.at += 1;
                }
            } else if b.is_ascii_whitespace() {
                self.at += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &'static str) -> Result<u32, PgmError> {
        self.skip_space();
        let start = self.at;
        while self.bytes.get(self.at).is_some_and(u8::is_ascii_digit) {
            self.at += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.at])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or(PgmError::BadHeader(what))
    }
}

pub fn read_pgm(bytes: &[u8]) -> Result<PgmImage, PgmError> {
    if bytes.len() < 2 || &bytes[..2] != b"P5" {
        return Err(PgmError::BadMagic);
    }
    let mut r = HeaderReader { bytes, at: 2 };
    let width = r.number("width")?;
    let height = r.number("height")?;
    let maxval = r.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(PgmError::BadHeader("zero dimension"));
    }
    if maxval == 0 || maxval > 65535 {
        return Err(PgmError::BadHeader("maxval out of range"));
    }
    // exactly one whitespace byte separates the header from the raster
    match bytes.get(r.at) {
        Some(b) if b.is_ascii_whitespace() => r.at += 1,
        _ => return Err(PgmError::BadHeader("missing raster separator")),
    }
    let maxval = maxval as u16;
    let wide = maxval > 255;
    let count = width as usize * height as usize;
    let expected = count * if wide { 2 } else { 1 };
    let raster = &bytes[r.at..];
    if raster.len() < expected {
        return Err(PgmError::Truncated { expected, found: raster.len() });
    }
    let samples: Vec<u16> = if wide {
        raster[..expected].chunks_exact(2).map(|c| u16::from_be_bytes([c[0], c[1]])).collect()
    } else {
        raster[..expected].iter().map(|&b| b as u16).collect()
    };
    if let Some(&value) = samples.iter().find(|&&v| v > maxval) {
        return Err(PgmError::SampleRange { value, maxval });
    }
    Ok(PgmImage { width, height, maxval, samples })
}

/// Canonical form: `P5\n<w> <h>\n<maxval>\n` followed by the raster.
pub fn write_pgm(img: &PgmImage) -> Vec<u8> {
    let mut out = format!("P5\n{} {}\n{}\n", img.width, img.height, img.maxval).into_bytes();
    if img.maxval > 255 {
        for &s in &img.samples {
            out.extend_from_slice(&s.to_be_bytes());
        }
    } else {
        out.extend(img.samples.iter().map(|&s| s as u8));
    }
    out
}

/// Palette = distinct sample values ascending; the image's maxval is not
/// kept (see [`from_label_map`]).
pub fn to_label_map(img: &PgmImage) -> Result<LabelMap, PgmError> {
    LabelMap::from_values(img.width, img.height, &img.samples)
        .map_err(|_| PgmError::Dimensions(img.width, img.height))
}

/// Inverse of [`to_label_map`]. The maxval is the smallest of 255 and
/// 65535 that holds every palette value.
pub fn from_label_map(map: &LabelMap) -> PgmImage {
    let top = map.palette().iter().copied().max().unwrap_or(0);
    PgmImage {
        width: map.width(),
        height: map.height(),
        maxval: if top > 255 { 65535 } else { 255 },
        samples: map.values(),
    }
}
