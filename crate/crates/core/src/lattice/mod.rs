//! Label maps and the crack lattice their region boundaries live on.
//!
//! Pixel `(col, row)` occupies the unit square whose corners are the lattice
//! vertices `(col, row)` and `(col + 1, row + 1)`; `x` grows rightward and
//! `y` grows downward. A contour is a closed cycle of unit crack edges that
//! keeps its blob on the left, where "left of direction `d`" means the side
//! reached by rotating `d` once with `rot(x, y) = (-y, x)`.

mod blobs;
mod contour;

use alloc::vec;
use alloc::vec::Vec;

use crate::error::MapError;

pub use blobs::{label_components, register_blobs, Components};
pub use contour::{fill_contour, trace_contour, Contour};

/// Largest supported width or height.
pub const MAX_DIMENSION: u32 = 65535;

/// A `width x height` grid of palette indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMap {
    width: u32,
    height: u32,
    labels: Vec<u16>,
    palette: Vec<u16>,
}

impl LabelMap {
    pub fn new(
        width: u32,
        height: u32,
        labels: Vec<u16>,
        palette: Vec<u16>,
    ) -> Result<Self, MapError> {
        check_dimensions(width, height)?;
        let expected = width as usize * height as usize;
        if labels.len() != expected {
            return Err(MapError::SizeMismatch { expected, actual: labels.len() });
        }
        check_palette(&palette)?;
        if let Some(&index) = labels.iter().find(|&&l| l as usize >= palette.len()) {
            return Err(MapError::LabelOutOfRange { index, label_count: palette.len() });
        }
        Ok(LabelMap { width, height, labels, palette })
    }

    /// Builds a map from raw values; the palette becomes the distinct values
    /// in ascending order.
    pub fn from_values(width: u32, height: u32, values: &[u16]) -> Result<Self, MapError> {
        check_dimensions(width, height)?;
        let expected = width as usize * height as usize;
        if values.len() != expected {
            return Err(MapError::SizeMismatch { expected, actual: values.len() });
        }
        let mut seen = vec![false; 1 << 16];
        for &v in values {
            seen[v as usize] = true;
        }
        let mut rank = vec![0u16; 1 << 16];
        let mut palette = Vec::new();
        for (v, _) in seen.iter().enumerate().filter(|(_, &s)| s) {
            if palette.len() == u16::MAX as usize {
                return Err(MapError::BadPaletteSize(palette.len() + 1));
            }
            rank[v] = palette.len() as u16;
            palette.push(v as u16);
        }
        let labels = values.iter().map(|&v| rank[v as usize]).collect();
        Ok(LabelMap { width, height, labels, palette })
    }

    /// A map where every pixel holds `value`.
    pub fn uniform(width: u32, height: u32, value: u16) -> Result<Self, MapError> {
        check_dimensions(width, height)?;
        Ok(LabelMap {
            width,
            height,
            labels: vec![0; width as usize * height as usize],
            palette: vec![value],
        })
    }

    #[inline]
    pub fn width(&self) -> u32 {
        self.width
    }

    #[inline]
    pub fn height(&self) -> u32 {
        self.height
    }

    #[inline]
    pub fn label_count(&self) -> usize {
        self.palette.len()
    }

    pub fn palette(&self) -> &[u16] {
        &self.palette
    }

    /// Row-major palette indices.
    pub fn labels(&self) -> &[u16] {
        &self.labels
    }

    #[inline]
    pub fn get(&self, col: u32, row: u32) -> u16 {
        self.labels[row as usize * self.width as usize + col as usize]
    }

    #[inline]
    pub fn set(&mut self, col: u32, row: u32, label_index: u16) {
        debug_assert!((label_index as usize) < self.palette.len());
        self.labels[row as usize * self.width as usize + col as usize] = label_index;
    }

    /// Row-major original values (palette applied).
    pub fn values(&self) -> Vec<u16> {
        self.labels.iter().map(|&l| self.palette[l as usize]).collect()
    }

    pub(crate) fn blank(width: u32, height: u32, palette: Vec<u16>) -> Result<Self, MapError> {
        check_dimensions(width, height)?;
        check_palette(&palette)?;
        Ok(LabelMap {
            width,
            height,
            labels: vec![0; width as usize * height as usize],
            palette,
        })
    }
}

fn check_dimensions(width: u32, height: u32) -> Result<(), MapError> {
    if width == 0 || height == 0 || width > MAX_DIMENSION || height > MAX_DIMENSION {
        return Err(MapError::BadDimensions { width, height });
    }
    Ok(())
}

fn check_palette(palette: &[u16]) -> Result<(), MapError> {
    if palette.is_empty() || palette.len() > u16::MAX as usize {
        return Err(MapError::BadPaletteSize(palette.len()));
    }
    let mut seen = vec![false; 1 << 16];
    for &v in palette {
        if core::mem::replace(&mut seen[v as usize], true) {
            return Err(MapError::DuplicatePalette(v));
        }
    }
    Ok(())
}

/// Unit step directions. The discriminant is the rotation exponent:
/// `Y = rot(X)`, `NX = rot²(X)`, `NY = rot³(X)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Dir {
    X = 0,
    Y = 1,
    NX = 2,
    NY = 3,
}

impl Dir {
    pub const ALL: [Dir; 4] = [Dir::X, Dir::Y, Dir::NX, Dir::NY];

    #[inline]
    pub const fn from_index(i: u8) -> Dir {
        match i & 3 {
            0 => Dir::X,
            1 => Dir::Y,
            2 => Dir::NX,
            _ => Dir::NY,
        }
    }

    #[inline]
    pub const fn index(self) -> u8 {
        self as u8
    }

    #[inline]
    pub const fn delta(self) -> (i32, i32) {
        match self {
            Dir::X => (1, 0),
            Dir::Y => (0, 1),
            Dir::NX => (-1, 0),
            Dir::NY => (0, -1),
        }
    }

    /// Rotates `k` times by `rot`.
    #[inline]
    pub const fn rotate(self, k: u8) -> Dir {
        Dir::from_index(self as u8 + k)
    }

    /// The turn toward the contour interior.
    #[inline]
    pub const fn left(self) -> Dir {
        self.rotate(1)
    }

    #[inline]
    pub const fn right(self) -> Dir {
        self.rotate(3)
    }

    #[inline]
    pub const fn reverse(self) -> Dir {
        self.rotate(2)
    }
}

/// A crack-lattice corner, `0..=width` by `0..=height`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Vertex {
    pub x: u32,
    pub y: u32,
}

impl Vertex {
    #[inline]
    pub const fn new(x: u32, y: u32) -> Self {
        Vertex { x, y }
    }

    /// The neighbouring vertex in direction `dir`, if it stays inside a
    /// `width x height` map's lattice.
    #[inline]
    pub fn step(self, dir: Dir, width: u32, height: u32) -> Option<Vertex> {
        let (dx, dy) = dir.delta();
        let x = self.x as i64 + dx as i64;
        let y = self.y as i64 + dy as i64;
        if x < 0 || y < 0 || x > width as i64 || y > height as i64 {
            None
        } else {
            Some(Vertex::new(x as u32, y as u32))
        }
    }
}

/// A directed unit crack edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: Vertex,
    pub dir: Dir,
}

impl Edge {
    #[inline]
    pub const fn new(from: Vertex, dir: Dir) -> Self {
        Edge { from, dir }
    }

    /// End vertex. Unchecked: callers only build edges inside the lattice.
    #[inline]
    pub fn to(&self) -> Vertex {
        let (dx, dy) = self.dir.delta();
        Vertex::new(
            (self.from.x as i64 + dx as i64) as u32,
            (self.from.y as i64 + dy as i64) as u32,
        )
    }

    #[inline]
    pub fn reverse(&self) -> Edge {
        Edge::new(self.to(), self.dir.reverse())
    }

    /// Pixel `(col, row)` on the left of the edge; may lie outside the frame.
    #[inline]
    pub fn left_pixel(&self) -> (i64, i64) {
        let (dx, dy) = self.dir.delta();
        (
            self.from.x as i64 + ((dx - dy - 1) / 2) as i64,
            self.from.y as i64 + ((dy + dx - 1) / 2) as i64,
        )
    }

    /// Pixel `(col, row)` on the right of the edge; may lie outside the frame.
    #[inline]
    pub fn right_pixel(&self) -> (i64, i64) {
        let (dx, dy) = self.dir.delta();
        (
            self.from.x as i64 + ((dx + dy - 1) / 2) as i64,
            self.from.y as i64 + ((dy - dx - 1) / 2) as i64,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlobKind {
    /// Touches the frame border.
    Boundary,
    /// Fully enclosed by other blobs.
    Inner,
}

/// A registered 4-connected region and its outer contour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Blob {
    /// Registration index over both kinds, boundary blobs first.
    pub id: usize,
    pub kind: BlobKind,
    pub label_index: u16,
    pub contour: Contour,
}

impl Blob {
    #[inline]
    pub fn start(&self) -> Vertex {
        self.contour.start
    }
}

/// Blobs in coding order.
#[derive(Debug, Clone, Default)]
pub struct BlobRegistry {
    pub boundary: Vec<Blob>,
    pub inner: Vec<Blob>,
}

impl BlobRegistry {
    /// Boundary blobs followed by inner blobs.
    pub fn iter(&self) -> impl Iterator<Item = &Blob> {
        self.boundary.iter().chain(self.inner.iter())
    }

    pub fn len(&self) -> usize {
        self.boundary.len() + self.inner.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn left_and_right_pixels() {
        let v = Vertex::new(3, 5);
        assert_eq!(Edge::new(v, Dir::X).left_pixel(), (3, 5));
        assert_eq!(Edge::new(v, Dir::X).right_pixel(), (3, 4));
        assert_eq!(Edge::new(v, Dir::Y).left_pixel(), (2, 5));
        assert_eq!(Edge::new(v, Dir::Y).right_pixel(), (3, 5));
        assert_eq!(Edge::new(v, Dir::NX).left_pixel(), (2, 4));
        assert_eq!(Edge::new(v, Dir::NX).right_pixel(), (2, 5));
        assert_eq!(Edge::new(v, Dir::NY).left_pixel(), (3, 4));
        assert_eq!(Edge::new(v, Dir::NY).right_pixel(), (2, 4));
    }

    #[test]
    fn reverse_swaps_sides() {
        for d in Dir::ALL {
            let e = Edge::new(Vertex::new(4, 4), d);
            assert_eq!(e.reverse().left_pixel(), e.right_pixel());
            assert_eq!(e.reverse().reverse(), e);
        }
    }

    #[test]
    fn palette_is_sorted_distinct_values() {
        let m = LabelMap::from_values(3, 1, &[255, 0, 128]).unwrap();
        assert_eq!(m.palette(), &[0, 128, 255]);
        assert_eq!(m.labels(), &[2, 0, 1]);
        assert_eq!(m.values(), [255, 0, 128]);
    }

    #[test]
    fn rejects_bad_maps() {
        assert!(matches!(
            LabelMap::new(0, 1, vec![], vec![0]),
            Err(MapError::BadDimensions { .. })
        ));
        assert!(matches!(
            LabelMap::new(2, 1, vec![0, 1], vec![5]),
            Err(MapError::LabelOutOfRange { index: 1, .. })
        ));
        assert_eq!(
            LabelMap::new(1, 1, vec![0], vec![5, 5]),
            Err(MapError::DuplicatePalette(5))
        );
        assert!(matches!(
            LabelMap::new(2, 2, vec![0], vec![5]),
            Err(MapError::SizeMismatch { expected: 4, actual: 1 })
        ));
    }
}
