//! Chain-code comparisons on binary shapes and timed codec runs over
//! corpora.

use std::collections::HashMap;
use std::time::Instant;

use chainmap_core::chain::{
    classic_symbols, ecc_tokenize, recc_map, relative_f8, tokenize_3ot, Scheme, ECC_SYMBOLS,
};
use chainmap_core::entropy::{
    cost_to_bits, ContextBank, ContextModel, EccContext, ModelStore, NullSink, RangeEncoder, Slot,
};
use chainmap_core::lattice::register_blobs;
use chainmap_core::{decode_map, encode_map_with_stats, Blob, CodecConfig, LabelMap};
use serde::Serialize;

/// Outer contours of every non-background blob of a two-label map. The
/// background is palette index 0.
pub fn shape_contours(map: &LabelMap) -> Result<Vec<Blob>, String> {
    if map.label_count() > 2 {
        return Err(format!("expected a binary shape image, found {} labels", map.label_count()));
    }
    Ok(register_blobs(map).iter().filter(|b| b.label_index == 1).cloned().collect())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SymbolCounts {
    pub f4: usize,
    pub f8: usize,
    pub vcc: usize,
    pub three_ot: usize,
    pub ecc: usize,
}

pub fn symbol_counts(blobs: &[Blob]) -> SymbolCounts {
    let mut n = SymbolCounts::default();
    for b in blobs {
        let d = &b.contour.dirs;
        n.f4 += classic_symbols(d, Scheme::F4).len();
        n.f8 += classic_symbols(d, Scheme::F8).len();
        n.vcc += classic_symbols(d, Scheme::Vcc).len();
        n.three_ot += d.len();
        n.ecc += ecc_tokenize(d).len();
    }
    n
}

/// Adaptive Markov models of a fixed maximum order over a small alphabet,
/// one table per distinct history (shorter histories at the start of a
/// contour get their own tables).
#[derive(Clone)]
pub struct MarkovCoder {
    alphabet: usize,
    order: usize,
    tables: HashMap<(usize, u64), ContextModel>,
}

impl MarkovCoder {
    pub fn new(alphabet: usize, order: usize) -> Self {
        MarkovCoder { alphabet, order, tables: HashMap::new() }
    }

    /// Codes one contour's symbols, returning the cost in bits.
    pub fn code(&mut self, symbols: &[u8]) -> f64 {
        let mut enc = RangeEncoder::with_sink(NullSink);
        let before = enc.cost();
        for (i, &s) in symbols.iter().enumerate() {
            let k = i.min(self.order);
            let key = symbols[i - k..i].iter().fold(0u64, |h, &x| h * self.alphabet as u64 + x as u64);
            let alphabet = self.alphabet;
            let m = self.tables.entry((k, key)).or_insert_with(|| ContextModel::new(alphabet));
            m.encode(&mut enc, s as usize);
        }
        cost_to_bits(enc.cost() - before)
    }
}

/// Relative ECC with the codec's two-symbol context: the first symbol of a
/// contour is uniform over 36, later ones use the previous relative value
/// and the self-reference of the symbol before it.
#[derive(Clone)]
pub struct ReccCoder {
    bank: ContextBank,
}

impl Default for ReccCoder {
    fn default() -> Self {
        ReccCoder { bank: ContextBank::new(1) }
    }
}

impl ReccCoder {
    pub fn code(&mut self, dirs: &[chainmap_core::Dir]) -> f64 {
        let symbols = ecc_tokenize(dirs);
        let mut enc = RangeEncoder::with_sink(NullSink);
        let before = enc.cost();
        let mut ctx = EccContext::start(0);
        let mut prev_self = 0;
        let mut last = dirs[0];
        for (i, &s) in symbols.iter().enumerate() {
            if i == 0 {
                enc.encode(s.index() as u32, 1, ECC_SYMBOLS as u32);
                ctx = EccContext::start(s.self_reference());
            } else {
                let r = recc_map(last, s).expect("contours never reverse");
                self.bank.model(Slot::Ecc(ctx)).encode(&mut enc, r.packed() as usize);
                ctx = EccContext { first: r.packed(), second: prev_self };
            }
            prev_self = s.self_reference();
            last = s.last_dir();
        }
        cost_to_bits(enc.cost() - before)
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct CodedBits {
    pub rf8: f64,
    pub vcc: f64,
    pub three_ot: f64,
    pub recc: f64,
}

/// Context-coded cost of each representation after priming.
#[derive(Clone)]
pub struct ShapeCoders {
    rf8: MarkovCoder,
    vcc: MarkovCoder,
    three_ot: MarkovCoder,
    recc: ReccCoder,
}

impl Default for ShapeCoders {
    fn default() -> Self {
        ShapeCoders {
            rf8: MarkovCoder::new(8, 4),
            vcc: MarkovCoder::new(3, 5),
            three_ot: MarkovCoder::new(3, 4),
            recc: ReccCoder::default(),
        }
    }
}

impl ShapeCoders {
    pub fn code(&mut self, blobs: &[Blob]) -> CodedBits {
        let mut bits = CodedBits::default();
        for b in blobs {
            let d = &b.contour.dirs;
            let vcc: Vec<u8> = classic_symbols(d, Scheme::Vcc).iter().map(|s| s - 1).collect();
            let rf8 = relative_f8(&classic_symbols(d, Scheme::F8));
            let (_, tri) = tokenize_3ot(d, b.kind).expect("valid contour");
            bits.rf8 += self.rf8.code(&rf8);
            bits.vcc += self.vcc.code(&vcc);
            // the initial direction of a 3OT chain is two raw bits
            bits.three_ot += 2.0 + self.three_ot.code(&tri);
            bits.recc += self.recc.code(d);
        }
        bits
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ShapeRow {
    pub name: String,
    pub f4: usize,
    pub f8: usize,
    pub vcc: usize,
    pub three_ot: usize,
    pub ecc: usize,
    pub rf8_bits: f64,
    pub vcc_bits: f64,
    pub three_ot_bits: f64,
    pub recc_bits: f64,
}

/// Per-shape counts and coded bits. Coders are first primed on `train`;
/// each evaluated shape then starts from that primed state.
pub fn bench_shapes(train: &[Vec<Blob>], eval: &[(String, Vec<Blob>)]) -> Vec<ShapeRow> {
    let mut primed = ShapeCoders::default();
    for blobs in train {
        primed.code(blobs);
    }
    eval.iter()
        .map(|(name, blobs)| {
            let bits = primed.clone().code(blobs);
            let n = symbol_counts(blobs);
            ShapeRow {
                name: name.clone(),
                f4: n.f4,
                f8: n.f8,
                vcc: n.vcc,
                three_ot: n.three_ot,
                ecc: n.ecc,
                rf8_bits: bits.rf8,
                vcc_bits: bits.vcc,
                three_ot_bits: bits.three_ot,
                recc_bits: bits.recc,
            }
        })
        .collect()
}

/// One row of a run report. Field order is the CSV column order.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub path: String,
    pub config: String,
    pub width: u32,
    pub height: u32,
    pub pixels: u64,
    pub labels: usize,
    pub boundary_blobs: usize,
    pub inner_blobs: usize,
    pub header_bytes: usize,
    pub payload_bytes: usize,
    pub total_bytes: usize,
    pub encode_ms: f64,
    pub decode_ms: f64,
    pub ecc_pct: f64,
    pub threeot_pct: f64,
    pub skip_complete: usize,
    pub skip_partial: usize,
    pub verified: bool,
}

pub fn config_name(c: &CodecConfig) -> String {
    let mode = match c.mode {
        chainmap_core::ModePolicy::Auto => "auto",
        chainmap_core::ModePolicy::EccOnly => "ecc",
        chainmap_core::ModePolicy::ThreeOtOnly => "3ot",
    };
    let mut s = mode.to_string();
    if c.full_recc {
        s.push_str("+full-recc");
    }
    if !c.skip {
        s.push_str("+no-skip");
    }
    s
}

/// Encodes, decodes and compares one map, timing both directions.
pub fn run_one(path: &str, map: &LabelMap, config: &CodecConfig) -> (RunReport, Vec<u8>) {
    let t = Instant::now();
    let (bytes, stats) = encode_map_with_stats(map, config);
    let encode_ms = t.elapsed().as_secs_f64() * 1e3;
    let t = Instant::now();
    let decoded = decode_map(&bytes);
    let decode_ms = t.elapsed().as_secs_f64() * 1e3;
    let blobs = (stats.ecc_blobs + stats.three_ot_blobs).max(1) as f64;
    let report = RunReport {
        path: path.to_string(),
        config: config_name(config),
        width: map.width(),
        height: map.height(),
        pixels: map.width() as u64 * map.height() as u64,
        labels: map.label_count(),
        boundary_blobs: stats.boundary_blobs,
        inner_blobs: stats.inner_blobs,
        header_bytes: stats.header_bytes,
        payload_bytes: stats.payload_bytes,
        total_bytes: stats.total_bytes(),
        encode_ms,
        decode_ms,
        ecc_pct: 100.0 * stats.ecc_blobs as f64 / blobs,
        threeot_pct: 100.0 * stats.three_ot_blobs as f64 / blobs,
        skip_complete: stats.complete_skips,
        skip_partial: stats.partial_skips,
        verified: decoded.as_ref() == Ok(map),
    };
    (report, bytes)
}

pub fn mean_bytes(rows: &[RunReport]) -> f64 {
    if rows.is_empty() {
        return 0.0;
    }
    rows.iter().map(|r| r.total_bytes as f64).sum::<f64>() / rows.len() as f64
}
