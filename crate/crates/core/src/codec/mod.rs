//! Stream assembly: file header, per-blob coding in registration order,
//! and the inverse.
//!
//! Layout: `"SMC1"`, version byte, width and height (`u32` BE), label
//! count (`u16` BE), the palette (`u16` BE each), boundary and inner blob
//! counts (`u32` BE), then the range-coded payload to the end.

mod blob;
mod skip;
mod traced;

use alloc::vec::Vec;

pub use skip::{first_candidate, last_turn, matched_run, skip_candidates, walk_skip};
pub use traced::TracedEdgeSet;

use blob::{Allowed, BlobInput, Frame, Mode};
use crate::entropy::{ContextBank, RangeDecoder, RangeEncoder, TrialScratch};
use crate::error::{CodecError, MapError};
use crate::lattice::{fill_contour, register_blobs, BlobKind, LabelMap};

pub const MAGIC: [u8; 4] = *b"SMC1";
pub const VERSION: u8 = 1;

/// Which chain code each blob may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ModePolicy {
    /// Per blob, whichever codes it in fewer bits.
    #[default]
    Auto,
    EccOnly,
    ThreeOtOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodecConfig {
    pub mode: ModePolicy,
    /// Always allow the rare relative quadrant instead of switching it off
    /// per blob when unused.
    pub full_recc: bool,
    /// Skip edges shared with earlier blobs. When off, every decision point
    /// is answered with an empty run, so the stream format is unchanged.
    pub skip: bool,
}

impl Default for CodecConfig {
    fn default() -> Self {
        CodecConfig { mode: ModePolicy::Auto, full_recc: false, skip: true }
    }
}

/// Counters gathered while encoding one map.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EncodeStats {
    pub boundary_blobs: usize,
    pub inner_blobs: usize,
    pub ecc_blobs: usize,
    pub three_ot_blobs: usize,
    pub complete_skips: usize,
    pub partial_skips: usize,
    pub skipped_edges: usize,
    pub coded_symbols: usize,
    /// Distinct ECC context tables created.
    pub ecc_contexts: usize,
    pub header_bytes: usize,
    pub payload_bytes: usize,
}

impl EncodeStats {
    pub fn total_bytes(&self) -> usize {
        self.header_bytes + self.payload_bytes
    }
}

pub fn encode_map(map: &LabelMap, config: &CodecConfig) -> Vec<u8> {
    encode_map_with_stats(map, config).0
}

pub fn encode_map_with_stats(map: &LabelMap, config: &CodecConfig) -> (Vec<u8>, EncodeStats) {
    let (w, h) = (map.width(), map.height());
    let registry = register_blobs(map);
    let mut out = Vec::new();
    out.extend_from_slice(&MAGIC);
    out.push(VERSION);
    out.extend_from_slice(&w.to_be_bytes());
    out.extend_from_slice(&h.to_be_bytes());
    out.extend_from_slice(&(map.label_count() as u16).to_be_bytes());
    for &v in map.palette() {
        out.extend_from_slice(&v.to_be_bytes());
    }
    out.extend_from_slice(&(registry.boundary.len() as u32).to_be_bytes());
    out.extend_from_slice(&(registry.inner.len() as u32).to_be_bytes());

    let mut stats = EncodeStats {
        boundary_blobs: registry.boundary.len(),
        inner_blobs: registry.inner.len(),
        header_bytes: out.len(),
        ..EncodeStats::default()
    };
    let frame = Frame::new(w, h, map.label_count());
    let allowed = Allowed {
        ecc: config.mode != ModePolicy::ThreeOtOnly,
        three_ot: config.mode != ModePolicy::EccOnly,
        full_recc: config.full_recc,
        skip: config.skip,
    };
    let mut traced = TracedEdgeSet::with_border(w, h);
    let mut bank = ContextBank::new(map.label_count());
    let mut scratch = TrialScratch::new();
    let mut enc = RangeEncoder::new();
    for b in registry.iter() {
        let input = BlobInput {
            kind: b.kind,
            label: b.label_index,
            start: b.start(),
            dirs: &b.contour.dirs,
        };
        let choice = blob::select(&enc, &bank, &mut scratch, &frame, &input, &traced, allowed);
        let counts =
            blob::emit(&mut enc, &mut bank, &frame, &input, choice.mode, choice.rare, &choice.events);
        match choice.mode {
            Mode::Ecc => stats.ecc_blobs += 1,
            Mode::ThreeOt => stats.three_ot_blobs += 1,
        }
        stats.complete_skips += counts.complete_skips;
        stats.partial_skips += counts.partial_skips;
        stats.skipped_edges += counts.skipped_edges;
        stats.coded_symbols += counts.coded_symbols;
        blob::record(&mut traced, input.start, input.dirs);
    }
    stats.ecc_contexts = bank.ecc_contexts();
    let payload = enc.finish();
    stats.payload_bytes = payload.len();
    out.extend_from_slice(&payload);
    (out, stats)
}

struct Header {
    width: u32,
    height: u32,
    palette: Vec<u16>,
    n_boundary: u32,
    n_inner: u32,
    payload_offset: usize,
}

fn parse_header(bytes: &[u8]) -> Result<Header, CodecError> {
    let mut at = 0usize;
    let mut take = |n: usize| -> Result<&[u8], CodecError> {
        let s = bytes.get(at..at + n).ok_or(CodecError::TruncatedHeader)?;
        at += n;
        Ok(s)
    };
    let magic = take(4).map_err(|_| CodecError::BadMagic)?;
    if magic != MAGIC {
        return Err(CodecError::BadMagic);
    }
    let version = take(1)?[0];
    if version != VERSION {
        return Err(CodecError::UnsupportedVersion(version));
    }
    let u32_be = |s: &[u8]| u32::from_be_bytes([s[0], s[1], s[2], s[3]]);
    let width = u32_be(take(4)?);
    let height = u32_be(take(4)?);
    let s = take(2)?;
    let label_count = u16::from_be_bytes([s[0], s[1]]) as usize;
    if label_count == 0 {
        return Err(CodecError::InvalidHeader(MapError::BadPaletteSize(0)));
    }
    let palette = take(2 * label_count)?
        .chunks_exact(2)
        .map(|c| u16::from_be_bytes([c[0], c[1]]))
        .collect();
    let n_boundary = u32_be(take(4)?);
    let n_inner = u32_be(take(4)?);
    Ok(Header { width, height, palette, n_boundary, n_inner, payload_offset: at })
}

pub fn decode_map(bytes: &[u8]) -> Result<LabelMap, CodecError> {
    let header = parse_header(bytes)?;
    let (w, h) = (header.width, header.height);
    let mut map = LabelMap::blank(w, h, header.palette).map_err(CodecError::InvalidHeader)?;
    let blobs = header.n_boundary as u64 + header.n_inner as u64;
    if header.n_boundary == 0 || blobs > w as u64 * h as u64 {
        return Err(CodecError::BadBlobCount);
    }
    let frame = Frame::new(w, h, map.label_count());
    let mut traced = TracedEdgeSet::with_border(w, h);
    let mut bank = ContextBank::new(map.label_count());
    let mut dec = RangeDecoder::new(&bytes[header.payload_offset..]);
    let kinds = core::iter::repeat_n(BlobKind::Boundary, header.n_boundary as usize)
        .chain(core::iter::repeat_n(BlobKind::Inner, header.n_inner as usize));
    for kind in kinds {
        let (label, contour) = blob::decode(&mut dec, &mut bank, &frame, &traced, kind)?;
        fill_contour(&contour, label, &mut map)?;
        blob::record(&mut traced, contour.start, &contour.dirs);
    }
    Ok(map)
}
