use alloc::vec::Vec;

use super::alphabet::{EccSymbol, LOCAL_SYMBOLS};
use crate::error::CodecError;
use crate::lattice::{Dir, Vertex};

/// Longest alphabet symbol whose canonical path is a prefix of `upcoming`
/// (smallest index on ties). `upcoming` must be non-empty.
pub fn longest_match(upcoming: &[Dir]) -> EccSymbol {
    let q = upcoming[0].index();
    let mut best = EccSymbol::new(q, 0);
    for l in 1..LOCAL_SYMBOLS as u8 {
        let s = EccSymbol::new(q, l);
        if s.len() > best.len() && upcoming.starts_with(s.path()) {
            best = s;
        }
    }
    best
}

/// Greedy longest-match tokenisation of a closed edge cycle. A symbol may
/// only touch the cycle's start vertex at its final vertex.
pub fn ecc_tokenize(cycle: &[Dir]) -> Vec<EccSymbol> {
    // indices k where the walk is back at the start vertex after k edges
    let mut at_start = Vec::with_capacity(cycle.len() + 1);
    let (mut x, mut y) = (0i64, 0i64);
    at_start.push(true);
    for d in cycle {
        let (dx, dy) = d.delta();
        x += dx as i64;
        y += dy as i64;
        at_start.push(x == 0 && y == 0);
    }
    let mut out = Vec::new();
    let mut pos = 0;
    while pos < cycle.len() {
        let limit = (pos + 1..=cycle.len()).find(|&k| at_start[k]).unwrap_or(cycle.len());
        let s = longest_match(&cycle[pos..limit]);
        out.push(s);
        pos += s.len();
    }
    out
}

/// Expands symbols back into unit steps starting from `start`, checking that
/// every vertex stays inside the `width x height` lattice.
pub fn ecc_detokenize(
    symbols: &[EccSymbol],
    start: Vertex,
    width: u32,
    height: u32,
) -> Result<Vec<Dir>, CodecError> {
    let mut dirs = Vec::new();
    let mut at = start;
    for s in symbols {
        for &d in s.path() {
            at = at.step(d, width, height).ok_or(CodecError::OutOfBounds)?;
            dirs.push(d);
        }
    }
    Ok(dirs)
}
