use alloc::vec;
use alloc::vec::Vec;

use crate::lattice::{Dir, Edge, Vertex};

/// Oriented crack edges emitted so far, as a direction mask per vertex.
#[derive(Debug, Clone)]
pub struct TracedEdgeSet {
    width: u32,
    height: u32,
    masks: Vec<u8>,
}

impl TracedEdgeSet {
    /// A set holding the frame border, oriented with the outside of the
    /// frame on the left of every edge.
    pub fn with_border(width: u32, height: u32) -> Self {
        let cells = (width as usize + 1) * (height as usize + 1);
        let mut set = TracedEdgeSet { width, height, masks: vec![0; cells] };
        for r in 0..height {
            set.insert(Edge::new(Vertex::new(0, r), Dir::Y));
            set.insert(Edge::new(Vertex::new(width, r + 1), Dir::NY));
        }
        for c in 0..width {
            set.insert(Edge::new(Vertex::new(c, height), Dir::X));
            set.insert(Edge::new(Vertex::new(c + 1, 0), Dir::NX));
        }
        set
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    fn slot(&self, v: Vertex) -> usize {
        v.y as usize * (self.width as usize + 1) + v.x as usize
    }

    #[inline]
    pub fn insert(&mut self, e: Edge) {
        let i = self.slot(e.from);
        self.masks[i] |= 1 << e.dir.index();
    }

    #[inline]
    pub fn contains(&self, e: Edge) -> bool {
        self.masks[self.slot(e.from)] & (1 << e.dir.index()) != 0
    }

    /// Whether stepping from `at` along `dir` retraces an emitted edge
    /// backwards.
    #[inline]
    pub fn shares(&self, at: Vertex, dir: Dir) -> bool {
        match at.step(dir, self.width, self.height) {
            Some(to) => self.contains(Edge::new(to, dir.reverse())),
            None => false,
        }
    }

    /// Number of stored edges.
    pub fn len(&self) -> usize {
        self.masks.iter().map(|m| m.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.masks.iter().all(|&m| m == 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn border_has_perimeter_edges() {
        let t = TracedEdgeSet::with_border(5, 3);
        assert_eq!(t.len(), 16);
        // a blob in the top-left pixel runs down the left column backwards
        assert!(t.shares(Vertex::new(0, 1), Dir::NY));
        assert!(t.shares(Vertex::new(0, 0), Dir::X));
        assert!(!t.shares(Vertex::new(1, 0), Dir::NX));
        assert!(!t.shares(Vertex::new(0, 0), Dir::Y));
        assert!(!t.shares(Vertex::new(1, 1), Dir::X));
    }
}
