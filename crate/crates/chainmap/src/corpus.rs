//! Seeded synthetic label maps: stand-ins for silhouette, street-scene and
//! occupancy datasets, plus adversarial maps for round-trip testing.

use std::fmt;
use std::str::FromStr;

use chainmap_core::LabelMap;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const FOREGROUND: u16 = 255;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorpusKind {
    /// One smooth foreground region built from overlapping disks.
    Silhouette,
    /// Nearest-site partitions with random labels per site.
    Voronoi,
    /// Checkerboards of random cell size.
    Checker,
    /// Scattered disks on a background.
    Disks,
}

impl CorpusKind {
    pub const ALL: [CorpusKind; 4] =
        [CorpusKind::Silhouette, CorpusKind::Voronoi, CorpusKind::Checker, CorpusKind::Disks];

    pub fn name(self) -> &'static str {
        match self {
            CorpusKind::Silhouette => "silhouette",
            CorpusKind::Voronoi => "voronoi",
            CorpusKind::Checker => "checker",
            CorpusKind::Disks => "disks",
        }
    }
}

impl fmt::Display for CorpusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CorpusKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        CorpusKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| format!("unknown corpus kind '{s}'"))
    }
}

/// Row-major grid of raw label values, converted to a map at the end.
#[derive(Clone)]
pub struct Canvas {
    pub width: u32,
    pub height: u32,
    pub values: Vec<u16>,
}

impl Canvas {
    pub fn new(width: u32, height: u32, fill: u16) -> Self {
        Canvas { width, height, values: vec![fill; width as usize * height as usize] }
    }

    #[inline]
    pub fn set(&mut self, c: u32, r: u32, v: u16) {
        self.values[r as usize * self.width as usize + c as usize] = v;
    }

    #[inline]
    pub fn get(&self, c: u32, r: u32) -> u16 {
        self.values[r as usize * self.width as usize + c as usize]
    }

    pub fn disk(&mut self, cx: f64, cy: f64, radius: f64, v: u16) {
        self.ellipse(cx, cy, radius, radius, 0.0, v);
    }

    /// Pixels whose centres fall inside the rotated ellipse.
    pub fn ellipse(&mut self, cx: f64, cy: f64, rx: f64, ry: f64, angle: f64, v: u16) {
        let reach = rx.max(ry);
        let (sin, cos) = angle.sin_cos();
        let r0 = (cy - reach).floor().max(0.0) as u32;
        let r1 = ((cy + reach).ceil() as i64).clamp(0, self.height as i64) as u32;
        let c0 = (cx - reach).floor().max(0.0) as u32;
        let c1 = ((cx + reach).ceil() as i64).clamp(0, self.width as i64) as u32;
        for r in r0..r1 {
            for c in c0..c1 {
                let (dx, dy) = (c as f64 + 0.5 - cx, r as f64 + 0.5 - cy);
                let u = dx * cos + dy * sin;
                let w = -dx * sin + dy * cos;
                if (u / rx).powi(2) + (w / ry).powi(2) <= 1.0 {
                    self.set(c, r, v);
                }
            }
        }
    }

    pub fn rect(&mut self, x: u32, y: u32, w: u32, h: u32, v: u16) {
        for r in y..(y + h).min(self.height) {
            for c in x..(x + w).min(self.width) {
                self.set(c, r, v);
            }
        }
    }

    /// Keeps only the largest 4-connected `v` region and fills its holes,
    /// leaving a single simply connected foreground.
    pub fn solidify(&mut self, v: u16, background: u16) {
        let (w, h) = (self.width as usize, self.height as usize);
        let mut comp = vec![u32::MAX; w * h];
        let mut best = (0usize, u32::MAX);
        let mut stack = Vec::new();
        let mut id = 0;
        for seed in 0..w * h {
            if self.values[seed] != v || comp[seed] != u32::MAX {
                continue;
            }
            let mut size = 0;
            comp[seed] = id;
            stack.push(seed);
            while let Some(p) = stack.pop() {
                size += 1;
                for q in neighbours(p, w, h) {
                    if self.values[q] == v && comp[q] == u32::MAX {
                        comp[q] = id;
                        stack.push(q);
                    }
                }
            }
            if size > best.0 {
                best = (size, id);
            }
            id += 1;
        }
        // background reachable from the frame without crossing the region
        let mut outside = vec![false; w * h];
        for p in 0..w * h {
            let (c, r) = (p % w, p / w);
            let on_frame = c == 0 || r == 0 || c + 1 == w || r + 1 == h;
            if on_frame && comp[p] != best.1 && !outside[p] {
                outside[p] = true;
                stack.push(p);
                while let Some(p) = stack.pop() {
                    for q in neighbours(p, w, h) {
                        if comp[q] != best.1 && !outside[q] {
                            outside[q] = true;
                            stack.push(q);
                        }
                    }
                }
            }
        }
        for p in 0..w * h {
            self.values[p] = if outside[p] { background } else { v };
        }
    }

    pub fn into_map(self) -> LabelMap {
        LabelMap::from_values(self.width, self.height, &self.values).expect("valid canvas")
    }
}

fn neighbours(p: usize, w: usize, h: usize) -> impl Iterator<Item = usize> {
    let (c, r) = (p % w, p / w);
    [
        (c > 0).then(|| p - 1),
        (c + 1 < w).then(|| p + 1),
        (r > 0).then(|| p - w),
        (r + 1 < h).then(|| p + w),
    ]
    .into_iter()
    .flatten()
}

pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ index)
}

/// Spreads label indices over the 8-bit range so maps are viewable.
pub fn label_value(index: u16, labels: u16) -> u16 {
    if labels <= 1 {
        0
    } else {
        index * (255 / (labels - 1))
    }
}

/// A person-like silhouette: a chain of overlapping disks (torso, head,
/// limbs) on an empty background. Single foreground region without holes.
pub fn silhouette(width: u32, height: u32, rng: &mut impl Rng) -> LabelMap {
    let mut canvas = Canvas::new(width, height, 0);
    let (w, h) = (width as f64, height as f64);
    let scale = (h / 240.0).min(w / 320.0) * rng.gen_range(0.85..1.1);
    let cx = w * rng.gen_range(0.4..0.6);
    let top = h * 0.12;
    let head = 14.0 * scale;
    canvas.disk(cx, top + head, head, FOREGROUND);
    // torso: a vertical run of disks
    let torso_top = top + 2.0 * head;
    let torso_len = 70.0 * scale;
    let torso_r = 18.0 * scale;
    let steps = 16;
    let lean: f64 = rng.gen_range(-0.08..0.08);
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let sway = lean * t * torso_len;
        canvas.disk(cx + sway, torso_top + t * torso_len, torso_r * (1.0 - 0.15 * t), FOREGROUND);
    }
    // limbs: tapered disk chains from shoulders and hips
    let limb = |canvas: &mut Canvas, rng: &mut dyn rand::RngCore, x0: f64, y0: f64, len: f64, r0: f64| {
        let angle: f64 = rng.gen_range(-0.45..0.45);
        let bend: f64 = rng.gen_range(-0.25..0.25);
        let n = 24;
        for i in 0..=n {
            let t = i as f64 / n as f64;
            let a = angle + bend * t;
            let x = x0 + a.sin() * len * t;
            let y = y0 + a.cos() * len * t;
            canvas.disk(x, y, r0 * (1.0 - 0.4 * t), FOREGROUND);
        }
    };
    let shoulder = torso_top + 6.0 * scale;
    limb(&mut canvas, rng, cx - 14.0 * scale, shoulder, 62.0 * scale, 7.0 * scale);
    limb(&mut canvas, rng, cx + 14.0 * scale, shoulder, 62.0 * scale, 7.0 * scale);
    let hip = torso_top + torso_len;
    let leg = (h - hip - 4.0).min(95.0 * scale);
    limb(&mut canvas, rng, cx - 8.0 * scale, hip, leg, 10.0 * scale);
    limb(&mut canvas, rng, cx + 8.0 * scale, hip, leg, 10.0 * scale);
    canvas.solidify(FOREGROUND, 0);
    canvas.into_map()
}

/// Nearest-site partition; sites get random labels out of `labels`.
pub fn voronoi(width: u32, height: u32, labels: u16, rng: &mut impl Rng) -> LabelMap {
    let area = width as f64 * height as f64;
    let sites = ((area / 6000.0) as usize).clamp(2, 400);
    let pts: Vec<(f64, f64, u16)> = (0..sites)
        .map(|_| {
            (
                rng.gen_range(0.0..width as f64),
                rng.gen_range(0.0..height as f64),
                label_value(rng.gen_range(0..labels.max(1)), labels),
            )
        })
        .collect();
    let mut canvas = Canvas::new(width, height, 0);
    for r in 0..height {
        for c in 0..width {
            let (x, y) = (c as f64 + 0.5, r as f64 + 0.5);
            let best = pts
                .iter()
                .min_by(|a, b| {
                    let da = (a.0 - x).powi(2) + (a.1 - y).powi(2);
                    let db = (b.0 - x).powi(2) + (b.1 - y).powi(2);
                    da.total_cmp(&db)
                })
                .unwrap();
            canvas.set(c, r, best.2);
        }
    }
    canvas.into_map()
}

pub fn checker(width: u32, height: u32, labels: u16, rng: &mut impl Rng) -> LabelMap {
    let cell = rng.gen_range(1..=16u32);
    let labels = labels.max(2);
    let mut canvas = Canvas::new(width, height, 0);
    for r in 0..height {
        for c in 0..width {
            let k = ((c / cell + r / cell) % labels as u32) as u16;
            canvas.set(c, r, label_value(k, labels));
        }
    }
    canvas.into_map()
}

/// Scattered disks of assorted radii; labels beyond the background are
/// drawn at random.
pub fn disks(width: u32, height: u32, labels: u16, rng: &mut impl Rng) -> LabelMap {
    let labels = labels.max(2);
    let mut canvas = Canvas::new(width, height, 0);
    let side = width.min(height) as f64;
    let count = rng.gen_range(3..=12);
    for _ in 0..count {
        let r = rng.gen_range(side * 0.04..side * 0.2).max(1.0);
        let x = rng.gen_range(0.0..width as f64);
        let y = rng.gen_range(0.0..height as f64);
        let v = label_value(rng.gen_range(1..labels), labels);
        canvas.disk(x, y, r, v);
    }
    canvas.into_map()
}

pub fn generate(kind: CorpusKind, width: u32, height: u32, labels: u16, rng: &mut impl Rng) -> LabelMap {
    match kind {
        CorpusKind::Silhouette => silhouette(width, height, rng),
        CorpusKind::Voronoi => voronoi(width, height, labels, rng),
        CorpusKind::Checker => checker(width, height, labels, rng),
        CorpusKind::Disks => disks(width, height, labels, rng),
    }
}

/// `count` maps of one kind; map `i` depends only on `(seed, i)`.
pub fn corpus(kind: CorpusKind, width: u32, height: u32, labels: u16, count: usize, seed: u64) -> Vec<LabelMap> {
    (0..count)
        .map(|i| generate(kind, width, height, labels, &mut rng_for(seed, i as u64)))
        .collect()
}

/// A single disk of radius `r` centred in a frame with a margin.
pub fn disk_map(r: u32) -> LabelMap {
    let side = 2 * r + 8;
    let mut canvas = Canvas::new(side, side, 0);
    canvas.disk(side as f64 / 2.0, side as f64 / 2.0, r as f64, FOREGROUND);
    canvas.into_map()
}

/// Background with two rectangles sharing one full vertical side.
pub fn abutting_rectangles(width: u32, height: u32) -> LabelMap {
    let mut canvas = Canvas::new(width, height, 0);
    let (x0, y0) = (width / 6, height / 4);
    let (rw, rh) = (width / 3, height / 2);
    canvas.rect(x0, y0, rw, rh, 100);
    canvas.rect(x0 + rw, y0, rw, rh, 200);
    canvas.into_map()
}

/// Binary, hole-free test shapes of varied character (smooth blobs,
/// polygons, elongated and jagged outlines), each a single region inside
/// the frame.
pub fn shape_set(count: usize, seed: u64) -> Vec<LabelMap> {
    (0..count)
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            let mut canvas = Canvas::new(160, 160, 0);
            match i % 4 {
                0 => {
                    for _ in 0..rng.gen_range(3..8) {
                        let r = rng.gen_range(12.0..34.0);
                        canvas.disk(rng.gen_range(50.0..110.0), rng.gen_range(50.0..110.0), r, FOREGROUND);
                    }
                }
                1 => {
                    for _ in 0..rng.gen_range(2..5) {
                        canvas.ellipse(
                            rng.gen_range(55.0..105.0),
                            rng.gen_range(55.0..105.0),
                            rng.gen_range(15.0..55.0),
                            rng.gen_range(6.0..25.0),
                            rng.gen_range(0.0..std::f64::consts::PI),
                            FOREGROUND,
                        );
                    }
                }
                2 => star(&mut canvas, &mut rng),
                _ => {
                    let mut boxes: Vec<(u32, u32, u32, u32)> = (0..rng.gen_range(3..7))
                        .map(|_| {
                            (rng.gen_range(30..90), rng.gen_range(30..90), rng.gen_range(10..50), rng.gen_range(10..50))
                        })
                        .collect();
                    boxes.shuffle(&mut rng);
                    for (x, y, w, h) in boxes {
                        canvas.rect(x, y, w, h, FOREGROUND);
                    }
                    canvas.disk(80.0, 80.0, 20.0, FOREGROUND);
                }
            }
            canvas.solidify(FOREGROUND, 0);
            canvas.into_map()
        })
        .collect()
}

fn star(canvas: &mut Canvas, rng: &mut impl Rng) {
    let points = rng.gen_range(4..9);
    let inner = rng.gen_range(15.0..30.0);
    let outer = rng.gen_range(40.0..70.0);
    let phase = rng.gen_range(0.0..std::f64::consts::TAU);
    let n = 2 * points;
    let verts: Vec<(f64, f64)> = (0..n)
        .map(|k| {
            let a = phase + k as f64 * std::f64::consts::PI / points as f64;
            let r = if k % 2 == 0 { outer } else { inner };
            (80.0 + r * a.cos(), 80.0 + r * a.sin())
        })
        .collect();
    for r in 0..canvas.height {
        for c in 0..canvas.width {
            if inside(&verts, c as f64 + 0.5, r as f64 + 0.5) {
                canvas.set(c, r, FOREGROUND);
            }
        }
    }
}

fn inside(poly: &[(f64, f64)], x: f64, y: f64) -> bool {
    let mut odd = false;
    let mut j = poly.len() - 1;
    for i in 0..poly.len() {
        let (xi, yi) = poly[i];
        let (xj, yj) = poly[j];
        if (yi > y) != (yj > y) && x < (xj - xi) * (y - yi) / (yj - yi) + xi {
            odd = !odd;
        }
        j = i;
    }
    odd
}

/// Map `index` of the randomized round-trip corpus: sizes from 1x1 to
/// 512x512, 1 to 27 labels, cycling through noise, blocks, checkerboards,
/// spirals, sparse single pixels, nested rings, uniform frames and the
/// generator kinds above.
pub fn stress_map(seed: u64, index: u64) -> LabelMap {
    let mut rng = rng_for(seed, index);
    let big = index % 50 == 0;
    let (w, h) = if big {
        (rng.gen_range(256..=512), rng.gen_range(256..=512))
    } else if index % 10 == 1 {
        (rng.gen_range(1..=3), rng.gen_range(1..=3))
    } else {
        (rng.gen_range(1..=96), rng.gen_range(1..=96))
    };
    let labels: u16 = rng.gen_range(1..=27);
    let mut canvas = Canvas::new(w, h, 0);
    match index % 9 {
        0 => {
            for v in canvas.values.iter_mut() {
                *v = rng.gen_range(0..labels);
            }
        }
        1 => {
            for _ in 0..rng.gen_range(1..20) {
                let (x, y) = (rng.gen_range(0..w), rng.gen_range(0..h));
                let (rw, rh) = (rng.gen_range(1..=w), rng.gen_range(1..=h));
                canvas.rect(x, y, rw, rh, rng.gen_range(0..labels));
            }
        }
        2 => {
            let cell = rng.gen_range(1..=4);
            let k = labels.max(2) as u32;
            for r in 0..h {
                for c in 0..w {
                    canvas.set(c, r, ((c / cell + r / cell) % k) as u16);
                }
            }
        }
        3 => spiral(&mut canvas, labels.max(2)),
        4 => {
            for v in canvas.values.iter_mut() {
                if rng.gen_bool(0.05) {
                    *v = rng.gen_range(1..labels.max(2));
                }
            }
        }
        5 => {
            let (cx, cy) = (rng.gen_range(0..w) as i64, rng.gen_range(0..h) as i64);
            let k = labels.max(2) as i64;
            let band = rng.gen_range(1..4);
            for r in 0..h {
                for c in 0..w {
                    let d = (c as i64 - cx).abs().max((r as i64 - cy).abs());
                    canvas.set(c, r, ((d / band) % k) as u16);
                }
            }
        }
        6 => canvas.values.fill(rng.gen_range(0..=u16::MAX)),
        7 => {
            let kind = CorpusKind::ALL[rng.gen_range(0..4)];
            return generate(kind, w.max(8), h.max(8), labels, &mut rng);
        }
        _ => {
            for _ in 0..rng.gen_range(1..10) {
                let r = rng.gen_range(0.5..(w.min(h) as f64 / 2.0).max(1.0));
                canvas.disk(rng.gen_range(0.0..w as f64), rng.gen_range(0.0..h as f64), r, rng.gen_range(0..labels));
            }
        }
    }
    canvas.into_map()
}

/// Square spiral wall with a one-pixel corridor, wall label cycling.
fn spiral(canvas: &mut Canvas, labels: u16) {
    let (w, h) = (canvas.width as i64, canvas.height as i64);
    let (mut x0, mut y0, mut x1, mut y1) = (0i64, 0i64, w - 1, h - 1);
    let mut k = 1u16;
    while x0 <= x1 && y0 <= y1 {
        let v = k % labels;
        for c in x0..=x1 {
            canvas.set(c as u32, y0 as u32, v);
        }
        for r in y0..=y1 {
            canvas.set(x1 as u32, r as u32, v);
        }
        if y1 > y0 {
            for c in x0..=x1 {
                canvas.set(c as u32, y1 as u32, v);
            }
        }
        if x1 > x0 {
            for r in (y0 + 2).min(y1 + 1)..=y1 {
                canvas.set(x0 as u32, r as u32, v);
            }
        }
        x0 += 2;
        y0 += 2;
        x1 -= 2;
        y1 -= 2;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use chainmap_core::lattice::register_blobs;

    #[test]
    fn seed_stable() {
        let a = corpus(CorpusKind::Voronoi, 64, 48, 5, 3, 7);
        let b = corpus(CorpusKind::Voronoi, 64, 48, 5, 3, 7);
        assert_eq!(a, b);
    }

    #[test]
    fn silhouettes_are_few_blobs() {
        for m in corpus(CorpusKind::Silhouette, 320, 240, 2, 5, 1) {
            assert!(register_blobs(&m).len() <= 3);
            assert_eq!(m.label_count(), 2);
        }
    }

    #[test]
    fn shapes_are_single_inner_regions() {
        for m in shape_set(28, 3) {
            let reg = register_blobs(&m);
            assert_eq!(reg.boundary.len(), 1);
            assert_eq!(reg.inner.len(), 1);
        }
    }

    #[test]
    fn kinds_parse() {
        for k in CorpusKind::ALL {
            assert_eq!(k.name().parse::<CorpusKind>().unwrap(), k);
        }
        assert!("nope".parse::<CorpusKind>().is_err());
    }
}
