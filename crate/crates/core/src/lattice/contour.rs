use alloc::vec::Vec;

use super::{Dir, Edge, LabelMap, Vertex};
use crate::error::CodecError;

/// A closed cycle of unit crack edges, stored as its start vertex plus the
/// direction of each step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Contour {
    pub start: Vertex,
    pub dirs: Vec<Dir>,
}

impl Contour {
    pub fn new(start: Vertex, dirs: Vec<Dir>) -> Self {
        Contour { start, dirs }
    }

    pub fn len(&self) -> usize {
        self.dirs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dirs.is_empty()
    }

    /// The edges in order, each starting where the previous one ended.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        let mut at = self.start;
        self.dirs.iter().map(move |&d| {
            let e = Edge::new(at, d);
            at = e.to();
            e
        })
    }

    /// True when the direction vectors sum to zero.
    pub fn is_closed(&self) -> bool {
        let (mut x, mut y) = (0i64, 0i64);
        for d in &self.dirs {
            let (dx, dy) = d.delta();
            x += dx as i64;
            y += dy as i64;
        }
        x == 0 && y == 0 && !self.dirs.is_empty()
    }
}

/// Traces the outer contour of a 4-connected pixel set from `start`.
///
/// `member(col, row)` reports blob membership and must return false outside
/// the frame. The first edge is the first of `X, Y, NX, NY` that has the blob
/// on its left and a non-member on its right; afterwards each step prefers a
/// left turn, then straight, then a right turn. Returns `None` when `start`
/// has no outgoing boundary edge.
pub fn trace_contour<F>(start: Vertex, member: F) -> Option<Contour>
where
    F: Fn(i64, i64) -> bool,
{
    let is_boundary = |e: Edge| {
        let (lc, lr) = e.left_pixel();
        let (rc, rr) = e.right_pixel();
        member(lc, lr) && !member(rc, rr)
    };
    let mut dir = Dir::ALL.into_iter().find(|&d| is_boundary(Edge::new(start, d)))?;
    let mut dirs = Vec::new();
    let mut at = start;
    loop {
        let e = Edge::new(at, dir);
        dirs.push(dir);
        at = e.to();
        if at == start {
            break;
        }
        dir = [dir.left(), dir, dir.right()]
            .into_iter()
            .find(|&d| is_boundary(Edge::new(at, d)))
            .expect("interior-left contour always continues");
    }
    Some(Contour::new(start, dirs))
}

/// Writes `label_index` into every pixel enclosed by `contour`.
///
/// Interior is decided per pixel row by even-odd parity of the vertical
/// edges crossing that row.
pub fn fill_contour(
    contour: &Contour,
    label_index: u16,
    canvas: &mut LabelMap,
) -> Result<(), CodecError> {
    let (width, height) = (canvas.width(), canvas.height());
    let mut crossings: Vec<(u32, u32)> = Vec::new();
    let mut at = contour.start;
    for &d in &contour.dirs {
        let next = at.step(d, width, height).ok_or(CodecError::OutOfBounds)?;
        match d {
            Dir::Y => crossings.push((at.y, at.x)),
            Dir::NY => crossings.push((next.y, at.x)),
            _ => {}
        }
        at = next;
    }
    if at != contour.start || contour.dirs.is_empty() {
        return Err(CodecError::UnclosedContour);
    }
    crossings.sort_unstable();
    let mut i = 0;
    while i < crossings.len() {
        let row = crossings[i].0;
        let mut j = i;
        while j < crossings.len() && crossings[j].0 == row {
            j += 1;
        }
        if (j - i) % 2 != 0 || row >= height {
            return Err(CodecError::UnclosedContour);
        }
        for pair in crossings[i..j].chunks_exact(2) {
            for col in pair[0].1..pair[1].1 {
                canvas.set(col, row, label_index);
            }
        }
        i = j;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rect_member(c0: i64, r0: i64, w: i64, h: i64) -> impl Fn(i64, i64) -> bool {
        move |c, r| c >= c0 && c < c0 + w && r >= r0 && r < r0 + h
    }

    #[test]
    fn single_pixel_has_four_edges() {
        let c = trace_contour(Vertex::new(2, 2), rect_member(2, 2, 1, 1)).unwrap();
        assert_eq!(c.dirs, vec![Dir::X, Dir::Y, Dir::NX, Dir::NY]);
    }

    #[test]
    fn bar_perimeter() {
        let c = trace_contour(Vertex::new(0, 0), rect_member(0, 0, 3, 1)).unwrap();
        assert_eq!(c.len(), 8);
        assert!(c.is_closed());
    }

    #[test]
    fn rectangle_perimeter_is_two_a_plus_b() {
        for (a, b) in [(1, 1), (4, 7), (9, 9), (13, 2)] {
            let c = trace_contour(Vertex::new(1, 1), rect_member(1, 1, a, b)).unwrap();
            assert_eq!(c.len() as i64, 2 * (a + b));
        }
    }

    #[test]
    fn start_off_boundary_is_rejected() {
        assert!(trace_contour(Vertex::new(5, 5), rect_member(0, 0, 2, 2)).is_none());
    }

    #[test]
    fn pinch_prefers_left_turn() {
        // Two diagonal pixels joined through a 4-connected path:
        //   . # #
        //   # . #     the pinch at vertex (1,1) separates (0,1) and (1,0)
        //   # # #
        let grid = [[0, 1, 1], [1, 0, 1], [1, 1, 1]];
        let member = |c: i64, r: i64| {
            (0..3).contains(&c) && (0..3).contains(&r) && grid[r as usize][c as usize] == 1
        };
        let c = trace_contour(Vertex::new(1, 0), member).unwrap();
        // Both non-blob pixels belong to the exterior, so all 16 boundary
        // edges are on the one outer cycle.
        assert!(c.is_closed());
        assert_eq!(c.len(), 16);
        for e in c.edges() {
            let (lc, lr) = e.left_pixel();
            let (rc, rr) = e.right_pixel();
            assert!(member(lc, lr) && !member(rc, rr));
        }
    }

    #[test]
    fn fill_unit_square() {
        let mut canvas = LabelMap::blank(5, 5, vec![0, 1]).unwrap();
        let c = Contour::new(Vertex::new(2, 2), vec![Dir::X, Dir::Y, Dir::NX, Dir::NY]);
        fill_contour(&c, 1, &mut canvas).unwrap();
        let ones: Vec<_> = (0..25).filter(|&i| canvas.labels()[i] == 1).collect();
        assert_eq!(ones, vec![12]);
    }

    #[test]
    fn fill_frame_and_nested_overwrite() {
        let mut canvas = LabelMap::blank(3, 3, vec![0, 1, 2]).unwrap();
        let frame = trace_contour(Vertex::new(0, 0), rect_member(0, 0, 3, 3)).unwrap();
        fill_contour(&frame, 1, &mut canvas).unwrap();
        assert!(canvas.labels().iter().all(|&l| l == 1));
        let centre = trace_contour(Vertex::new(1, 1), rect_member(1, 1, 1, 1)).unwrap();
        fill_contour(&centre, 2, &mut canvas).unwrap();
        assert_eq!(canvas.labels(), &[1, 1, 1, 1, 2, 1, 1, 1, 1]);
    }

    #[test]
    fn fill_rejects_open_path() {
        let mut canvas = LabelMap::blank(4, 4, vec![0, 1]).unwrap();
        let open = Contour::new(Vertex::new(0, 0), vec![Dir::X, Dir::Y]);
        assert_eq!(fill_contour(&open, 1, &mut canvas), Err(CodecError::UnclosedContour));
        let outside = Contour::new(Vertex::new(0, 0), vec![Dir::NX, Dir::X]);
        assert_eq!(fill_contour(&outside, 1, &mut canvas), Err(CodecError::OutOfBounds));
    }
}
