//! The 36-symbol extended chain code and its rotation-normalised form.
//!
//! Symbol `9q + l` is local entry `l` of quadrant 0 rotated `q` times.
//! Quadrant 0 covers displacements up to Chebyshev distance 3 whose
//! canonical unit path starts with `X` and otherwise uses `X` and `Y` steps:
//!
//! | l | end   | path        |
//! |---|-------|-------------|
//! | 0 | (1,0) | X           |
//! | 1 | (1,1) | XY          |
//! | 2 | (2,0) | XX          |
//! | 3 | (2,1) | XYX         |
//! | 4 | (2,2) | XYXY        |
//! | 5 | (3,0) | XXX         |
//! | 6 | (3,1) | XXYX        |
//! | 7 | (3,2) | XYXYX       |
//! | 8 | (3,3) | XYXYXY      |

use crate::lattice::Dir;

pub const ECC_SYMBOLS: usize = 36;
pub const RECC_SYMBOLS: usize = 27;
/// RECC values available when the rare quadrant is switched off.
pub const RECC_COMMON_SYMBOLS: usize = 18;
pub const LOCAL_SYMBOLS: usize = 9;
pub const MAX_PATH: usize = 6;

const X: u8 = 0;
const Y: u8 = 1;

const QUADRANT0: [(i8, i8, &[u8]); LOCAL_SYMBOLS] = [
    (1, 0, &[X]),
    (1, 1, &[X, Y]),
    (2, 0, &[X, X]),
    (2, 1, &[X, Y, X]),
    (2, 2, &[X, Y, X, Y]),
    (3, 0, &[X, X, X]),
    (3, 1, &[X, X, Y, X]),
    (3, 2, &[X, Y, X, Y, X]),
    (3, 3, &[X, Y, X, Y, X, Y]),
];

#[derive(Clone, Copy)]
struct Entry {
    len: u8,
    path: [Dir; MAX_PATH],
    end: (i8, i8),
}

const fn rotate_delta((dx, dy): (i8, i8), q: u8) -> (i8, i8) {
    let mut v = (dx, dy);
    let mut i = 0;
    while i < q {
        v = (-v.1, v.0);
        i += 1;
    }
    v
}

const fn build_table() -> [Entry; ECC_SYMBOLS] {
    let mut table = [Entry { len: 0, path: [Dir::X; MAX_PATH], end: (0, 0) }; ECC_SYMBOLS];
    let mut q = 0;
    while q < 4 {
        let mut l = 0;
        while l < LOCAL_SYMBOLS {
            let (dx, dy, steps) = QUADRANT0[l];
            let mut path = [Dir::X; MAX_PATH];
            let mut i = 0;
            while i < steps.len() {
                path[i] = Dir::from_index(steps[i] + q as u8);
                i += 1;
            }
            table[q * LOCAL_SYMBOLS + l] =
                Entry { len: steps.len() as u8, path, end: rotate_delta((dx, dy), q as u8) };
            l += 1;
        }
        q += 1;
    }
    table
}

static TABLE: [Entry; ECC_SYMBOLS] = build_table();

/// One of the 36 extended chain code symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EccSymbol(u8);

impl EccSymbol {
    pub fn new(quadrant: u8, local: u8) -> Self {
        assert!(quadrant < 4 && (local as usize) < LOCAL_SYMBOLS);
        EccSymbol(quadrant * LOCAL_SYMBOLS as u8 + local)
    }

    pub fn from_index(index: u8) -> Option<Self> {
        ((index as usize) < ECC_SYMBOLS).then_some(EccSymbol(index))
    }

    pub fn all() -> impl Iterator<Item = EccSymbol> {
        (0..ECC_SYMBOLS as u8).map(EccSymbol)
    }

    #[inline]
    pub fn index(self) -> u8 {
        self.0
    }

    #[inline]
    pub fn quadrant(self) -> u8 {
        self.0 / LOCAL_SYMBOLS as u8
    }

    #[inline]
    pub fn local(self) -> u8 {
        self.0 % LOCAL_SYMBOLS as u8
    }

    /// Canonical unit-edge path.
    #[inline]
    pub fn path(self) -> &'static [Dir] {
        let e = &TABLE[self.0 as usize];
        &e.path[..e.len as usize]
    }

    #[inline]
    pub fn len(self) -> usize {
        TABLE[self.0 as usize].len as usize
    }

    /// Endpoint displacement in vertex units.
    #[inline]
    pub fn displacement(self) -> (i32, i32) {
        let (dx, dy) = TABLE[self.0 as usize].end;
        (dx as i32, dy as i32)
    }

    #[inline]
    pub fn first_dir(self) -> Dir {
        TABLE[self.0 as usize].path[0]
    }

    #[inline]
    pub fn last_dir(self) -> Dir {
        let e = &TABLE[self.0 as usize];
        e.path[e.len as usize - 1]
    }

    /// The same shape rotated `k` quarter turns.
    #[inline]
    pub fn rotate(self, k: u8) -> Self {
        EccSymbol(((self.quadrant() + k) % 4) * LOCAL_SYMBOLS as u8 + self.local())
    }

    /// Local index after normalising the symbol by its own quadrant; used as
    /// the second-order context value.
    #[inline]
    pub fn self_reference(self) -> u8 {
        self.local()
    }
}

/// An ECC symbol expressed relative to the direction of the edge preceding
/// it. The relative quadrant 2 would start by reversing that edge and is
/// never produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReccSymbol(u8);

/// `recc_map` was asked to express a symbol that reverses the previous edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reversal;

impl ReccSymbol {
    pub fn from_packed(packed: u8) -> Option<Self> {
        ((packed as usize) < RECC_SYMBOLS).then_some(ReccSymbol(packed))
    }

    #[inline]
    pub fn packed(self) -> u8 {
        self.0
    }

    /// Relative quadrant: 0, 3 or 1, packed in that order.
    #[inline]
    pub fn relative_quadrant(self) -> u8 {
        match self.0 / LOCAL_SYMBOLS as u8 {
            0 => 0,
            1 => 3,
            _ => 1,
        }
    }

    #[inline]
    pub fn local(self) -> u8 {
        self.0 % LOCAL_SYMBOLS as u8
    }

    /// Whether the symbol lies in the rarely used quadrant (relative
    /// quadrant 1). Canonical paths already contain the left turns of a
    /// staircase, so junctions between symbols mostly go straight or turn
    /// right; a left turn at a junction is uncommon.
    #[inline]
    pub fn is_rare(self) -> bool {
        self.0 as usize >= RECC_COMMON_SYMBOLS
    }
}

/// Rotates `symbol` so that `prev_dir`, the last edge of the preceding
/// symbol, maps onto `X`.
pub fn recc_map(prev_dir: Dir, symbol: EccSymbol) -> Result<ReccSymbol, Reversal> {
    let q_rel = (symbol.quadrant() + 4 - prev_dir.index()) % 4;
    let slot = match q_rel {
        0 => 0,
        3 => 1,
        1 => 2,
        _ => return Err(Reversal),
    };
    Ok(ReccSymbol(slot * LOCAL_SYMBOLS as u8 + symbol.local()))
}

pub fn recc_unmap(prev_dir: Dir, recc: ReccSymbol) -> EccSymbol {
    let q = (recc.relative_quadrant() + prev_dir.index()) % 4;
    EccSymbol::new(q, recc.local())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sum(path: &[Dir]) -> (i32, i32) {
        path.iter().fold((0, 0), |(x, y), d| (x + d.delta().0, y + d.delta().1))
    }

    #[test]
    fn alphabet_shape() {
        assert_eq!(EccSymbol::all().count(), 36);
        for s in EccSymbol::all() {
            assert_eq!(s.first_dir().index(), s.quadrant());
            assert_eq!(sum(s.path()), s.displacement());
            assert_eq!(s.rotate(4), s);
            assert_eq!(s.rotate(1).quadrant(), (s.quadrant() + 1) % 4);
            assert_eq!(s.rotate(1).local(), s.local());
            // paths never double back
            assert!(s.path().windows(2).all(|w| w[1] != w[0].reverse()));
        }
        for q in 0..4 {
            assert_eq!(EccSymbol::all().filter(|s| s.quadrant() == q).count(), 9);
        }
    }

    #[test]
    fn ring_one_and_straight_runs_present() {
        let disps: alloc::vec::Vec<_> = EccSymbol::all().map(|s| s.displacement()).collect();
        for d in [(1, 0), (1, 1), (0, 1), (-1, 1), (-1, 0), (-1, -1), (0, -1), (1, -1)] {
            assert!(disps.contains(&d), "{d:?}");
        }
        for k in 1..=3 {
            for d in [(k, 0), (0, k), (-k, 0), (0, -k)] {
                assert!(disps.contains(&d));
            }
        }
    }

    #[test]
    fn quadrant_zero_table() {
        let expect = [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2), (3, 0), (3, 1), (3, 2), (3, 3)];
        for (l, &d) in expect.iter().enumerate() {
            assert_eq!(EccSymbol::new(0, l as u8).displacement(), d);
        }
        assert_eq!(EccSymbol::new(0, 6).path(), &[Dir::X, Dir::X, Dir::Y, Dir::X]);
        assert_eq!(EccSymbol::new(1, 0).path(), &[Dir::Y]);
        assert_eq!(EccSymbol::new(3, 4).path(), &[Dir::NY, Dir::X, Dir::NY, Dir::X]);
    }

    #[test]
    fn recc_examples() {
        let r = recc_map(Dir::X, EccSymbol::new(0, 0)).unwrap();
        assert_eq!((r.relative_quadrant(), r.local(), r.packed()), (0, 0, 0));
        let r = recc_map(Dir::Y, EccSymbol::new(1, 0)).unwrap();
        assert_eq!((r.relative_quadrant(), r.local()), (0, 0));
        let r = recc_map(Dir::X, EccSymbol::new(3, 0)).unwrap();
        assert_eq!((r.relative_quadrant(), r.packed()), (3, 9));
        let r = recc_map(Dir::X, EccSymbol::new(1, 2)).unwrap();
        assert_eq!((r.relative_quadrant(), r.packed(), r.is_rare()), (1, 20, true));
        assert_eq!(recc_map(Dir::X, EccSymbol::new(2, 3)), Err(Reversal));
        assert_eq!(recc_unmap(Dir::X, ReccSymbol::from_packed(0).unwrap()), EccSymbol::new(0, 0));
        assert_eq!(recc_unmap(Dir::Y, ReccSymbol::from_packed(0).unwrap()), EccSymbol::new(1, 0));
    }

    #[test]
    fn recc_round_trip_and_27_values() {
        let mut seen = [false; RECC_SYMBOLS];
        for d in Dir::ALL {
            for s in EccSymbol::all() {
                match recc_map(d, s) {
                    Ok(r) => {
                        assert_ne!(r.relative_quadrant(), 2);
                        assert_eq!(recc_unmap(d, r), s);
                        seen[r.packed() as usize] = true;
                    }
                    Err(Reversal) => assert_eq!(s.first_dir(), d.reverse()),
                }
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn self_reference_folds_quadrants() {
        assert_eq!(EccSymbol::new(2, 4).self_reference(), 4);
        assert_eq!(EccSymbol::new(0, 0).self_reference(), 0);
        let mut counts = [0; 9];
        for s in EccSymbol::all() {
            counts[s.self_reference() as usize] += 1;
        }
        assert_eq!(counts, [4; 9]);
    }
}
