//! Per-blob coding: event planning, emission under either chain code,
//! trial-based mode selection, and the mirrored decoder.

use alloc::vec::Vec;

use super::skip::{first_candidate, last_turn, matched_run, walk_skip};
use super::traced::TracedEdgeSet;
use crate::chain::{
    longest_match, recc_map, recc_unmap, EccSymbol, ReccSymbol, ThreeOtState, Turn,
    ECC_SYMBOLS, RECC_COMMON_SYMBOLS, RECC_SYMBOLS,
};
use crate::entropy::{
    ByteSink, ContextBank, EccContext, ModelStore, RangeDecoder, RangeEncoder, Slot,
    ThreeOtContext, TrialBank, TrialScratch,
};
use crate::error::CodecError;
use crate::lattice::{BlobKind, Contour, Dir, Edge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Ecc,
    ThreeOt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Event {
    /// Answer at a decision point. `complete` runs to the end of the blob.
    Skip { complete: bool, len: u32 },
    Ecc(EccSymbol),
    /// One 3OT edge; implicit (uncoded) when it is the blob's first edge.
    Step,
}

/// Map-wide constants every blob header depends on.
pub(crate) struct Frame {
    pub width: u32,
    pub height: u32,
    pub x_bits: u32,
    pub y_bits: u32,
    pub label_count: usize,
    pub max_edges: usize,
}

impl Frame {
    pub fn new(width: u32, height: u32, label_count: usize) -> Self {
        let bits = |n: u32| 32 - n.leading_zeros();
        let (w, h) = (width as usize, height as usize);
        Frame {
            width,
            height,
            x_bits: bits(width),
            y_bits: bits(height),
            label_count,
            max_edges: 2 * w * h + w + h,
        }
    }
}

pub(crate) struct BlobInput<'a> {
    pub kind: BlobKind,
    pub label: u16,
    pub start: Vertex,
    pub dirs: &'a [Dir],
}

/// Splits a contour into skip events and chain-code symbols. Decision
/// points sit at every symbol boundary with a shared edge available, except
/// directly after a skip event (the run there is already maximal).
pub(crate) fn plan(
    blob: &BlobInput<'_>,
    traced: &TracedEdgeSet,
    mode: Mode,
    skip: bool,
) -> Vec<Event> {
    let dirs = blob.dirs;
    let (w, h) = (traced.width(), traced.height());
    let mut events = Vec::new();
    let mut pos = 0;
    let mut at = blob.start;
    let mut after_skip = false;
    while pos < dirs.len() {
        let incoming = pos.checked_sub(1).map(|i| dirs[i]);
        if !after_skip && first_candidate(traced, at, incoming).is_some() {
            let run = if skip { matched_run(traced, dirs, pos, at) } else { 0 };
            let complete = pos + run == dirs.len();
            events.push(Event::Skip { complete, len: run as u32 });
            if complete {
                return events;
            }
            for &d in &dirs[pos..pos + run] {
                at = at.step(d, w, h).expect("contour stays in frame");
            }
            pos += run;
            after_skip = true;
            continue;
        }
        after_skip = false;
        let steps = match mode {
            Mode::Ecc => {
                let s = longest_match(&dirs[pos..]);
                events.push(Event::Ecc(s));
                s.path()
            }
            Mode::ThreeOt => {
                events.push(Event::Step);
                &dirs[pos..pos + 1]
            }
        };
        for &d in steps {
            at = at.step(d, w, h).expect("contour stays in frame");
        }
        pos += steps.len();
    }
    debug_assert_eq!(at, blob.start);
    events
}

/// Whether an ECC plan needs the rare relative quadrant.
pub(crate) fn needs_rare(dirs: &[Dir], events: &[Event]) -> bool {
    let mut pos = 0;
    for e in events {
        match *e {
            Event::Skip { complete: true, .. } => break,
            Event::Skip { len, .. } => pos += len as usize,
            Event::Ecc(s) => {
                if pos > 0 && recc_map(dirs[pos - 1], s).is_ok_and(|r| r.is_rare()) {
                    return true;
                }
                pos += s.len();
            }
            Event::Step => pos += 1,
        }
    }
    false
}

/// Context state of the ECC symbol stream.
#[derive(Debug, Clone, Copy)]
struct EccChain {
    ctx: EccContext,
    prev_self: u8,
}

impl EccChain {
    /// After a run opener: the blob's first symbol, or the unit step that
    /// ends a skip walk.
    fn opened_by(s: EccSymbol) -> Self {
        EccChain { ctx: EccContext::start(s.self_reference()), prev_self: s.self_reference() }
    }

    fn after(self, r: ReccSymbol, s: EccSymbol) -> Self {
        EccChain {
            ctx: EccContext { first: r.packed(), second: self.prev_self },
            prev_self: s.self_reference(),
        }
    }
}

fn unit(d: Dir) -> EccSymbol {
    EccSymbol::new(d.index(), 0)
}

/// 3OT state once a skip of `len` edges ended at `dirs.len()`.
fn three_ot_after_skip(dirs: &[Dir], len: usize, kind: BlobKind) -> ThreeOtState {
    let from = (dirs.len() - len).saturating_sub(1);
    ThreeOtState {
        dir: *dirs.last().expect("skip walked at least one edge"),
        prev_change: last_turn(&dirs[from..]).unwrap_or(Turn::initial(kind)),
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct EventCounts {
    pub complete_skips: usize,
    pub partial_skips: usize,
    pub skipped_edges: usize,
    pub coded_symbols: usize,
}

fn limit(rare: bool) -> usize {
    if rare {
        RECC_SYMBOLS
    } else {
        RECC_COMMON_SYMBOLS
    }
}

/// Writes a blob header and its events.
pub(crate) fn emit<S: ByteSink, M: ModelStore>(
    enc: &mut RangeEncoder<S>,
    models: &mut M,
    frame: &Frame,
    blob: &BlobInput<'_>,
    mode: Mode,
    rare: bool,
    events: &[Event],
) -> EventCounts {
    let dirs = blob.dirs;
    enc.encode_bits(blob.start.x, frame.x_bits);
    enc.encode_bits(blob.start.y, frame.y_bits);
    if frame.label_count > 1 {
        models.model(Slot::Label).encode(enc, blob.label as usize);
    }
    models.model(Slot::ModeFlag).encode(enc, (mode == Mode::ThreeOt) as usize);
    match mode {
        Mode::Ecc => models.model(Slot::RareFlag).encode(enc, rare as usize),
        Mode::ThreeOt => enc.encode_bits(dirs[0].index() as u32, 2),
    }

    let mut counts = EventCounts::default();
    let mut pos = 0;
    let mut chain = EccChain::opened_by(unit(Dir::X));
    let mut tri = ThreeOtState::new(dirs[0], blob.kind);
    let mut history = ThreeOtContext::default();
    for e in events {
        match *e {
            Event::Skip { complete, len } => {
                models.model(Slot::CompleteSkip).encode(enc, complete as usize);
                if complete {
                    counts.complete_skips += 1;
                    counts.skipped_edges += dirs.len() - pos;
                    pos = dirs.len();
                    break;
                }
                enc.encode_eg0(len);
                counts.partial_skips += 1;
                if len > 0 {
                    pos += len as usize;
                    counts.skipped_edges += len as usize;
                    chain = EccChain::opened_by(unit(dirs[pos - 1]));
                    tri = three_ot_after_skip(&dirs[..pos], len as usize, blob.kind);
                }
            }
            Event::Ecc(s) => {
                if pos == 0 {
                    enc.encode(s.index() as u32, 1, ECC_SYMBOLS as u32);
                    chain = EccChain::opened_by(s);
                } else {
                    let r = recc_map(dirs[pos - 1], s).expect("contours never reverse");
                    debug_assert!(rare || !r.is_rare());
                    models.model(Slot::Ecc(chain.ctx)).encode_limited(
                        enc,
                        r.packed() as usize,
                        limit(rare),
                    );
                    chain = chain.after(r, s);
                }
                counts.coded_symbols += 1;
                pos += s.len();
            }
            Event::Step => {
                if pos > 0 {
                    let sym = tri.encode(dirs[pos]).expect("contours never reverse");
                    models.model(Slot::ThreeOt(history)).encode(enc, sym as usize);
                    history.push(sym);
                    counts.coded_symbols += 1;
                }
                pos += 1;
            }
        }
    }
    debug_assert_eq!(pos, dirs.len());
    counts
}

/// The coding chosen for one blob.
pub(crate) struct Choice {
    pub mode: Mode,
    pub rare: bool,
    pub events: Vec<Event>,
}

/// Which representations a blob may use.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Allowed {
    pub ecc: bool,
    pub three_ot: bool,
    pub full_recc: bool,
    pub skip: bool,
}

/// Trial-encodes every permitted option against the current coder and
/// model state and returns the cheapest. Ties go to ECC, and within ECC to
/// the rare quadrant switched on: a blob with no coded symbols then keeps
/// the flag statistics where the next full contour wants them.
pub(crate) fn select<S: ByteSink>(
    enc: &RangeEncoder<S>,
    bank: &ContextBank,
    scratch: &mut TrialScratch,
    frame: &Frame,
    blob: &BlobInput<'_>,
    traced: &TracedEdgeSet,
    allowed: Allowed,
) -> Choice {
    let mut options: Vec<(Mode, bool, usize)> = Vec::with_capacity(3);
    let mut plans: Vec<Vec<Event>> = Vec::with_capacity(2);
    if allowed.ecc {
        let events = plan(blob, traced, Mode::Ecc, allowed.skip);
        options.push((Mode::Ecc, true, plans.len()));
        if !allowed.full_recc && !needs_rare(blob.dirs, &events) {
            options.push((Mode::Ecc, false, plans.len()));
        }
        plans.push(events);
    }
    if allowed.three_ot {
        options.push((Mode::ThreeOt, false, plans.len()));
        plans.push(plan(blob, traced, Mode::ThreeOt, allowed.skip));
    }
    let mut best = 0;
    if options.len() > 1 {
        let mut best_cost = u64::MAX;
        for (i, &(mode, rare, p)) in options.iter().enumerate() {
            let mut trial = enc.trial();
            let before = trial.cost();
            let mut view = TrialBank::new(bank, scratch);
            emit(&mut trial, &mut view, frame, blob, mode, rare, &plans[p]);
            let cost = trial.cost() - before;
            if cost < best_cost {
                best_cost = cost;
                best = i;
            }
        }
    }
    let (mode, rare, p) = options[best];
    Choice { mode, rare, events: plans.swap_remove(p) }
}

/// Reads one blob and returns its label index and contour. The traced set
/// is not updated here.
pub(crate) fn decode(
    dec: &mut RangeDecoder<'_>,
    bank: &mut ContextBank,
    frame: &Frame,
    traced: &TracedEdgeSet,
    kind: BlobKind,
) -> Result<(u16, Contour), CodecError> {
    let (w, h) = (frame.width, frame.height);
    let x = dec.decode_bits(frame.x_bits);
    let y = dec.decode_bits(frame.y_bits);
    dec.check()?;
    if x > w || y > h {
        return Err(CodecError::OutOfBounds);
    }
    let start = Vertex::new(x, y);
    let label = if frame.label_count > 1 { bank.model(Slot::Label).decode(dec)? as u16 } else { 0 };
    let mode = match bank.model(Slot::ModeFlag).decode(dec)? {
        0 => Mode::Ecc,
        _ => Mode::ThreeOt,
    };
    let (rare, first_dir) = match mode {
        Mode::Ecc => (bank.model(Slot::RareFlag).decode(dec)? == 1, Dir::X),
        Mode::ThreeOt => {
            let d = Dir::from_index(dec.decode_bits(2) as u8);
            dec.check()?;
            (false, d)
        }
    };

    let mut dirs: Vec<Dir> = Vec::new();
    let mut at = start;
    let mut after_skip = false;
    let mut chain = EccChain::opened_by(unit(Dir::X));
    let mut tri = ThreeOtState::new(first_dir, kind);
    let mut history = ThreeOtContext::default();
    let step = |at: Vertex, d: Dir| at.step(d, w, h).ok_or(CodecError::OutOfBounds);
    loop {
        if !after_skip && first_candidate(traced, at, dirs.last().copied()).is_some() {
            if bank.model(Slot::CompleteSkip).decode(dec)? == 1 {
                walk_skip(traced, &mut dirs, at, start, None, frame.max_edges)?;
                break;
            }
            let len = dec.decode_eg0()?;
            if len as usize > frame.max_edges {
                return Err(CodecError::InvalidSymbol);
            }
            after_skip = true;
            if len > 0 {
                at = walk_skip(traced, &mut dirs, at, start, Some(len), frame.max_edges)?;
                if at == start {
                    break;
                }
                chain = EccChain::opened_by(unit(*dirs.last().unwrap()));
                tri = three_ot_after_skip(&dirs, len as usize, kind);
            }
            continue;
        }
        after_skip = false;
        match mode {
            Mode::Ecc => {
                let s = if let Some(&prev) = dirs.last() {
                    let m = bank.model(Slot::Ecc(chain.ctx));
                    let packed = m.decode_limited(dec, limit(rare))?;
                    let r = ReccSymbol::from_packed(packed as u8).ok_or(CodecError::InvalidSymbol)?;
                    let s = recc_unmap(prev, r);
                    chain = chain.after(r, s);
                    s
                } else {
                    let t = dec.decode_target(ECC_SYMBOLS as u32);
                    dec.decode_update(t, 1);
                    dec.check()?;
                    let s = EccSymbol::from_index(t as u8).ok_or(CodecError::InvalidSymbol)?;
                    chain = EccChain::opened_by(s);
                    s
                };
                let path = s.path();
                for (i, &d) in path.iter().enumerate() {
                    at = step(at, d)?;
                    dirs.push(d);
                    if at == start && i + 1 < path.len() {
                        return Err(CodecError::UnclosedContour);
                    }
                }
            }
            Mode::ThreeOt => {
                let d = if dirs.is_empty() {
                    first_dir
                } else {
                    let sym = bank.model(Slot::ThreeOt(history)).decode(dec)? as u8;
                    history.push(sym);
                    tri.decode(sym)?
                };
                at = step(at, d)?;
                dirs.push(d);
            }
        }
        if at == start {
            break;
        }
        if dirs.len() > frame.max_edges {
            return Err(CodecError::UnclosedContour);
        }
    }
    Ok((label, Contour::new(start, dirs)))
}

pub(crate) fn record(traced: &mut TracedEdgeSet, start: Vertex, dirs: &[Dir]) {
    let mut at = start;
    for &d in dirs {
        let e = Edge::new(at, d);
        traced.insert(e);
        at = e.to();
    }
}
