//! Contour-based lossless coding of multi-label semantic maps.
//!
//! Every 4-connected region ("blob") of a label map is represented only by
//! its outer crack contour. Contours are chain coded either with a 36-symbol
//! extended chain code (coded relative to the previous symbol under
//! context-adaptive range coding) or with a three-orthogonal fallback code,
//! whichever is cheaper for the blob. Boundary segments already emitted by
//! earlier blobs (or by the frame border) are skipped with a flag and a run
//! length instead of being coded again.
//!
//! The crate is `no_std` and only needs `alloc`.
//!
//! ```
//! use chainmap_core::{decode_map, encode_map, CodecConfig, LabelMap};
//!
//! let map = LabelMap::from_values(4, 3, &[
//!     7, 7, 9, 9,
//!     7, 3, 9, 9,
//!     7, 7, 7, 9,
//! ]).unwrap();
//! let bytes = encode_map(&map, &CodecConfig::default());
//! assert_eq!(decode_map(&bytes).unwrap(), map);
//! ```

#![no_std]

extern crate alloc;

pub mod chain;
pub mod codec;
pub mod entropy;
mod error;
pub mod lattice;

pub use codec::{
    decode_map, encode_map, encode_map_with_stats, CodecConfig, EncodeStats, ModePolicy,
};
pub use error::{CodecError, MapError};
pub use lattice::{Blob, BlobKind, BlobRegistry, Dir, Edge, LabelMap, Vertex};
