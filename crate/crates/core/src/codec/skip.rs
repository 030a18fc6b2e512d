use alloc::vec::Vec;

use super::traced::TracedEdgeSet;
use crate::chain::Turn;
use crate::error::CodecError;
use crate::lattice::{Dir, Vertex};

/// Outgoing edges at `at` that retrace an emitted edge backwards, in walk
/// priority order: left, straight, right of `incoming`, or `X, Y, NX, NY`
/// at a blob's start. The edge reversing `incoming` is never offered.
pub fn skip_candidates(traced: &TracedEdgeSet, at: Vertex, incoming: Option<Dir>) -> Vec<Dir> {
    order(incoming).filter(|&d| traced.shares(at, d)).collect()
}

fn order(incoming: Option<Dir>) -> impl Iterator<Item = Dir> {
    let dirs = match incoming {
        Some(d) => [Some(d.left()), Some(d), Some(d.right()), None],
        None => Dir::ALL.map(Some),
    };
    dirs.into_iter().flatten()
}

/// The edge a skip walk takes from `at`.
#[inline]
pub fn first_candidate(traced: &TracedEdgeSet, at: Vertex, incoming: Option<Dir>) -> Option<Dir> {
    order(incoming).find(|&d| traced.shares(at, d))
}

/// Length of the run the skip walk reproduces from `dirs[pos..]`, with the
/// walk standing at `at`.
pub fn matched_run(traced: &TracedEdgeSet, dirs: &[Dir], pos: usize, mut at: Vertex) -> usize {
    let mut incoming = pos.checked_sub(1).map(|i| dirs[i]);
    let mut k = pos;
    while k < dirs.len() {
        match first_candidate(traced, at, incoming) {
            Some(d) if d == dirs[k] => {
                at = at.step(d, traced.width(), traced.height()).expect("contour stays in frame");
                incoming = Some(d);
                k += 1;
            }
            _ => break,
        }
    }
    k - pos
}

/// Until the blob closes at `start` (`len = None`) or for `len` edges,
/// appends walked directions to `dirs` and returns the end vertex.
pub fn walk_skip(
    traced: &TracedEdgeSet,
    dirs: &mut Vec<Dir>,
    mut at: Vertex,
    start: Vertex,
    len: Option<u32>,
    max_edges: usize,
) -> Result<Vertex, CodecError> {
    let mut taken = 0u32;
    loop {
        if let Some(n) = len {
            if taken == n {
                return Ok(at);
            }
        }
        let d = first_candidate(traced, at, dirs.last().copied()).ok_or(CodecError::BrokenSkip)?;
        at = at.step(d, traced.width(), traced.height()).ok_or(CodecError::OutOfBounds)?;
        dirs.push(d);
        taken += 1;
        if at == start {
            return match len {
                Some(n) if taken != n => Err(CodecError::BrokenSkip),
                _ => Ok(at),
            };
        }
        if dirs.len() > max_edges {
            return Err(CodecError::UnclosedContour);
        }
    }
}

/// Last turn along `dirs`, scanning consecutive pairs.
pub fn last_turn(dirs: &[Dir]) -> Option<Turn> {
    dirs.windows(2).rev().find_map(|w| Turn::between(w[0], w[1]).ok().flatten())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::Edge;
    use alloc::vec;
    use Dir::*;

    #[test]
    fn open_interior_has_no_candidates() {
        let t = TracedEdgeSet::with_border(6, 6);
        assert!(skip_candidates(&t, Vertex::new(3, 3), None).is_empty());
        assert!(skip_candidates(&t, Vertex::new(3, 3), Some(X)).is_empty());
    }

    #[test]
    fn border_continuation_is_single() {
        let t = TracedEdgeSet::with_border(6, 6);
        // walking up the left column
        assert_eq!(skip_candidates(&t, Vertex::new(0, 4), Some(NY)), vec![NY]);
        // at the top-left corner the border turns right
        assert_eq!(skip_candidates(&t, Vertex::new(0, 0), Some(NY)), vec![X]);
    }

    #[test]
    fn pinch_offers_left_first() {
        let mut t = TracedEdgeSet::with_border(4, 4);
        // two earlier unit squares touching diagonally at (2,2):
        // pixel (1,1) and pixel (2,2), both traced interior-left
        for (c, r) in [(1u32, 1u32), (2, 2)] {
            let mut at = Vertex::new(c, r);
            for d in [X, Y, NX, NY] {
                t.insert(Edge::new(at, d));
                at = at.step(d, 4, 4).unwrap();
            }
        }
        // arriving at (2,2) along the bottom of pixel (1,1): both the left
        // side of (2,2) and the right side of (1,1) lead away from here
        let c = skip_candidates(&t, Vertex::new(2, 2), Some(X));
        assert_eq!(c, vec![Y, NY]);
        assert_eq!(first_candidate(&t, Vertex::new(2, 2), Some(X)), Some(Y));
    }

    #[test]
    fn uniform_walk_closes() {
        let t = TracedEdgeSet::with_border(3, 2);
        let mut dirs = Vec::new();
        let start = Vertex::new(0, 0);
        let end = walk_skip(&t, &mut dirs, start, start, None, 100).unwrap();
        assert_eq!(end, start);
        assert_eq!(dirs, vec![X, X, X, Y, Y, NX, NX, NX, NY, NY]);
    }

    #[test]
    fn zero_length_walk_is_empty() {
        let t = TracedEdgeSet::with_border(3, 2);
        let mut dirs = Vec::new();
        let v = Vertex::new(1, 1);
        assert_eq!(walk_skip(&t, &mut dirs, v, v, Some(0), 100).unwrap(), v);
        assert!(dirs.is_empty());
    }

    #[test]
    fn last_turn_scans_backwards() {
        assert_eq!(last_turn(&[X, Y, Y, X]), Some(Turn::Right));
        assert_eq!(last_turn(&[X, Y, Y]), Some(Turn::Left));
        assert_eq!(last_turn(&[X, X]), None);
        assert_eq!(last_turn(&[]), None);
    }
}
