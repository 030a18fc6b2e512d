//! Classic chain codes, used for symbol-count comparisons.

use alloc::vec::Vec;

use crate::lattice::{Dir, Edge, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    /// One absolute direction (0..4) per crack edge.
    F4,
    /// One absolute 8-neighbour move (0..8) per step of the pixel-centre
    /// boundary cycle.
    F8,
    /// One vertex configuration per contour vertex: 1 convex, 2 straight,
    /// 3 concave.
    Vcc,
}

/// F8 move code for a unit pixel displacement: 0 = (1,0), then rotating
/// towards +y in 45 degree steps.
fn f8_code(dx: i64, dy: i64) -> u8 {
    match (dx, dy) {
        (1, 0) => 0,
        (1, 1) => 1,
        (0, 1) => 2,
        (-1, 1) => 3,
        (-1, 0) => 4,
        (-1, -1) => 5,
        (0, -1) => 6,
        (1, -1) => 7,
        _ => unreachable!("consecutive boundary pixels are 8-neighbours"),
    }
}

/// Symbols for the closed crack cycle `cycle` (starting anywhere).
pub fn classic_symbols(cycle: &[Dir], scheme: Scheme) -> Vec<u8> {
    match scheme {
        Scheme::F4 => cycle.iter().map(|d| d.index()).collect(),
        Scheme::Vcc => (0..cycle.len())
            .map(|i| {
                let prev = cycle[(i + cycle.len() - 1) % cycle.len()];
                match (cycle[i].index() + 4 - prev.index()) % 4 {
                    1 => 1,
                    0 => 2,
                    _ => 3,
                }
            })
            .collect(),
        Scheme::F8 => {
            // The pixel on the left of each crack edge walks the blob's
            // boundary pixels; a convex corner repeats the pixel.
            let mut at = Vertex::new(1 << 20, 1 << 20);
            let lefts: Vec<(i64, i64)> = cycle
                .iter()
                .map(|&d| {
                    let e = Edge::new(at, d);
                    at = e.to();
                    e.left_pixel()
                })
                .collect();
            let n = lefts.len();
            (0..n)
                .filter_map(|i| {
                    let (a, b) = (lefts[(i + n - 1) % n], lefts[i]);
                    (a != b).then(|| f8_code(b.0 - a.0, b.1 - a.1))
                })
                .collect()
        }
    }
}

/// Relative F8: each move expressed as the rotation (0..8) from the
/// previous move, cyclically.
pub fn relative_f8(f8: &[u8]) -> Vec<u8> {
    let n = f8.len();
    (0..n).map(|i| (f8[i] + 8 - f8[(i + n - 1) % n]) % 8).collect()
}
