use alloc::vec;
use alloc::vec::Vec;

use super::{trace_contour, Blob, BlobKind, BlobRegistry, LabelMap, Vertex};

/// 4-connected components of equal label index.
#[derive(Debug, Clone)]
pub struct Components {
    /// Component id per pixel, row-major. Ids follow the raster order of
    /// each component's first pixel.
    pub grid: Vec<u32>,
    /// Row-major index of each component's raster-first pixel.
    pub first_pixel: Vec<usize>,
    pub touches_border: Vec<bool>,
}

impl Components {
    pub fn count(&self) -> usize {
        self.first_pixel.len()
    }
}

pub fn label_components(map: &LabelMap) -> Components {
    let (w, h) = (map.width() as usize, map.height() as usize);
    let labels = map.labels();
    let mut grid = vec![u32::MAX; w * h];
    let mut first_pixel = Vec::new();
    let mut touches_border = Vec::new();
    let mut stack = Vec::new();
    for seed in 0..w * h {
        if grid[seed] != u32::MAX {
            continue;
        }
        let id = first_pixel.len() as u32;
        let label = labels[seed];
        let mut border = false;
        grid[seed] = id;
        stack.push(seed);
        while let Some(p) = stack.pop() {
            let (col, row) = (p % w, p / w);
            border |= col == 0 || row == 0 || col + 1 == w || row + 1 == h;
            let mut visit = |q: usize| {
                if grid[q] == u32::MAX && labels[q] == label {
                    grid[q] = id;
                    stack.push(q);
                }
            };
            if col > 0 {
                visit(p - 1);
            }
            if col + 1 < w {
                visit(p + 1);
            }
            if row > 0 {
                visit(p - w);
            }
            if row + 1 < h {
                visit(p + w);
            }
        }
        first_pixel.push(seed);
        touches_border.push(border);
    }
    Components { grid, first_pixel, touches_border }
}

/// Frame-border walk: left column downward, bottom row rightward, right
/// column upward, top row leftward. Yields the origin vertex of each border
/// edge (oriented with the outside of the frame on its left) together with
/// the in-frame pixel it bounds.
pub(crate) fn border_walk(width: u32, height: u32) -> impl Iterator<Item = (Vertex, u32, u32)> {
    let left = (0..height).map(|r| (Vertex::new(0, r), 0, r));
    let bottom = (0..width).map(move |c| (Vertex::new(c, height), c, height - 1));
    let right = (0..height).rev().map(move |r| (Vertex::new(width, r + 1), width - 1, r));
    let top = (0..width).rev().map(|c| (Vertex::new(c + 1, 0), c, 0));
    left.chain(bottom).chain(right).chain(top)
}

/// Finds every blob, fixes its start vertex, and traces its contour.
///
/// Boundary blobs are listed in order of first contact on the border walk
/// and start at the first border vertex of that contact. Inner blobs follow
/// raster order of their first pixel and start at that pixel's top-left
/// corner.
pub fn register_blobs(map: &LabelMap) -> BlobRegistry {
    let comps = label_components(map);
    let (w, h) = (map.width(), map.height());
    let mut registered = vec![false; comps.count()];
    let mut registry = BlobRegistry::default();

    let add = |registry: &mut BlobRegistry, comp: u32, start: Vertex, kind: BlobKind| {
        let grid = &comps.grid;
        let member = |c: i64, r: i64| {
            c >= 0
                && r >= 0
                && c < w as i64
                && r < h as i64
                && grid[r as usize * w as usize + c as usize] == comp
        };
        let contour = trace_contour(start, member).expect("start vertex lies on the blob boundary");
        let first = comps.first_pixel[comp as usize];
        let blob = Blob {
            id: registry.len(),
            kind,
            label_index: map.labels()[first],
            contour,
        };
        match kind {
            BlobKind::Boundary => registry.boundary.push(blob),
            BlobKind::Inner => registry.inner.push(blob),
        }
    };

    for (start, col, row) in border_walk(w, h) {
        let comp = comps.grid[row as usize * w as usize + col as usize];
        if !core::mem::replace(&mut registered[comp as usize], true) {
            add(&mut registry, comp, start, BlobKind::Boundary);
        }
    }
    for comp in 0..comps.count() {
        if comps.touches_border[comp] {
            continue;
        }
        let p = comps.first_pixel[comp];
        let start = Vertex::new((p % w as usize) as u32, (p / w as usize) as u32);
        add(&mut registry, comp as u32, start, BlobKind::Inner);
    }
    registry
}
