//! Three-orthogonal chain code: `0` keeps the direction, `1` turns the
//! opposite way to the previous turn, `2` repeats the previous turn.

use alloc::vec::Vec;

use crate::error::CodecError;
use crate::lattice::{BlobKind, Dir, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Turn {
    Left,
    Right,
}

impl Turn {
    /// Turn taken going from `from` to `to`; `None` when straight.
    /// Reversals are reported as `Err`.
    pub fn between(from: Dir, to: Dir) -> Result<Option<Turn>, CodecError> {
        match (to.index() + 4 - from.index()) % 4 {
            0 => Ok(None),
            1 => Ok(Some(Turn::Left)),
            3 => Ok(Some(Turn::Right)),
            _ => Err(CodecError::InvalidSymbol),
        }
    }

    pub fn apply(self, dir: Dir) -> Dir {
        match self {
            Turn::Left => dir.left(),
            Turn::Right => dir.right(),
        }
    }

    fn opposite(self) -> Turn {
        match self {
            Turn::Left => Turn::Right,
            Turn::Right => Turn::Left,
        }
    }

    /// Reference turn before the first change of a blob's contour.
    pub fn initial(kind: BlobKind) -> Turn {
        match kind {
            BlobKind::Boundary => Turn::Left,
            BlobKind::Inner => Turn::Right,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ThreeOtState {
    pub dir: Dir,
    pub prev_change: Turn,
}

impl ThreeOtState {
    pub fn new(dir: Dir, kind: BlobKind) -> Self {
        ThreeOtState { dir, prev_change: Turn::initial(kind) }
    }

    /// Symbol for stepping in `next`, advancing the state.
    pub fn encode(&mut self, next: Dir) -> Result<u8, CodecError> {
        let sym = match Turn::between(self.dir, next)? {
            None => 0,
            Some(t) if t != self.prev_change => 1,
            Some(_) => 2,
        };
        if let Some(t) = Turn::between(self.dir, next)? {
            self.prev_change = t;
        }
        self.dir = next;
        Ok(sym)
    }

    /// Direction selected by `symbol`, advancing the state.
    pub fn decode(&mut self, symbol: u8) -> Result<Dir, CodecError> {
        let turn = match symbol {
            0 => None,
            1 => Some(self.prev_change.opposite()),
            2 => Some(self.prev_change),
            _ => return Err(CodecError::InvalidSymbol),
        };
        if let Some(t) = turn {
            self.prev_change = t;
            self.dir = t.apply(self.dir);
        }
        Ok(self.dir)
    }
}

/// Initial direction plus one symbol per edge after the first.
pub fn tokenize_3ot(cycle: &[Dir], kind: BlobKind) -> Result<(Dir, Vec<u8>), CodecError> {
    let (&first, rest) = cycle.split_first().ok_or(CodecError::UnclosedContour)?;
    let mut state = ThreeOtState::new(first, kind);
    let symbols = rest.iter().map(|&d| state.encode(d)).collect::<Result<_, _>>()?;
    Ok((first, symbols))
}

pub fn detokenize_3ot(
    start: Vertex,
    first: Dir,
    symbols: &[u8],
    kind: BlobKind,
    width: u32,
    height: u32,
) -> Result<Vec<Dir>, CodecError> {
    let mut state = ThreeOtState::new(first, kind);
    let mut at = start.step(first, width, height).ok_or(CodecError::OutOfBounds)?;
    let mut dirs = Vec::with_capacity(symbols.len() + 1);
    dirs.push(first);
    for &s in symbols {
        let d = state.decode(s)?;
        at = at.step(d, width, height).ok_or(CodecError::OutOfBounds)?;
        dirs.push(d);
    }
    Ok(dirs)
}
