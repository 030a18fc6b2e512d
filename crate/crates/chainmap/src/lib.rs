//! File formats, synthetic corpora and benchmark harnesses around
//! [`chainmap_core`], plus the `chainmap` command-line tool.

pub mod bench;
pub mod corpus;
pub mod imageio;

pub use chainmap_core as core;
