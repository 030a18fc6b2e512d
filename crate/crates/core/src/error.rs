use core::fmt;

/// Reasons a label map cannot be constructed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MapError {
    /// Width or height is zero or exceeds 65535.
    BadDimensions { width: u32, height: u32 },
    /// Label grid length differs from `width * height`.
    SizeMismatch { expected: usize, actual: usize },
    /// A grid cell references a palette entry that does not exist.
    LabelOutOfRange { index: u16, label_count: usize },
    /// The palette holds the same value twice.
    DuplicatePalette(u16),
    /// Palette is empty or longer than 65535 entries.
    BadPaletteSize(usize),
}

impl fmt::Display for MapError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapError::BadDimensions { width, height } => {
                write!(f, "invalid map dimensions {width}x{height}")
            }
            MapError::SizeMismatch { expected, actual } => {
                write!(f, "label grid has {actual} cells, expected {expected}")
            }
            MapError::LabelOutOfRange { index, label_count } => {
                write!(f, "label index {index} out of range for {label_count} labels")
            }
            MapError::DuplicatePalette(v) => write!(f, "palette value {v} appears twice"),
            MapError::BadPaletteSize(n) => write!(f, "palette size {n} not in 1..=65535"),
        }
    }
}

impl core::error::Error for MapError {}

/// Failures while parsing a coded stream. Every variant means the stream is
/// corrupt or was not produced by this codec.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CodecError {
    BadMagic,
    UnsupportedVersion(u8),
    /// The container ended inside the fixed-size header.
    TruncatedHeader,
    /// The range decoder ran past the end of the payload.
    TruncatedPayload,
    /// Header fields describe an impossible map.
    InvalidHeader(MapError),
    /// A decoded contour step left the crack lattice.
    OutOfBounds,
    /// A decoded contour did not return to its start vertex in time.
    UnclosedContour,
    /// A skip walk found no shared edge to follow.
    BrokenSkip,
    /// A decoded value is outside its legal range.
    InvalidSymbol,
    /// The header announces more blobs than the map has pixels, or none.
    BadBlobCount,
}

impl fmt::Display for CodecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CodecError::BadMagic => f.write_str("bad magic, not a chainmap stream"),
            CodecError::UnsupportedVersion(v) => write!(f, "unsupported stream version {v}"),
            CodecError::TruncatedHeader => f.write_str("stream truncated inside header"),
            CodecError::TruncatedPayload => f.write_str("stream truncated inside payload"),
            CodecError::InvalidHeader(e) => write!(f, "invalid header: {e}"),
            CodecError::OutOfBounds => f.write_str("contour walk leaves the map"),
            CodecError::UnclosedContour => f.write_str("contour does not close"),
            CodecError::BrokenSkip => f.write_str("skip run has no shared edge to follow"),
            CodecError::InvalidSymbol => f.write_str("decoded symbol out of range"),
            CodecError::BadBlobCount => f.write_str("implausible blob count in header"),
        }
    }
}

impl core::error::Error for CodecError {}
