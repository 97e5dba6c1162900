//! Assembly-mode counts over a window of the `(L2, L3)` plane.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::trace::SingularCurve;
use crate::directkin::{count_assembly_modes, ModeCounter};
use crate::error::{Error, Result};
use crate::geometry::ManipulatorGeometry;

/// Cells not counted: too close to a singular curve, or a failed query.
pub const UNCOUNTED: i32 = -1;

/// `(l2min, l2max, l3min, l3max)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Window {
    pub l2min: f64,
    pub l2max: f64,
    pub l3min: f64,
    pub l3max: f64,
}

impl Window {
    pub fn new(l2min: f64, l2max: f64, l3min: f64, l3max: f64) -> Result<Self> {
        let ok = [l2min, l2max, l3min, l3max].iter().all(|v| v.is_finite())
            && l2min > 0.0
            && l3min > 0.0
            && l2max > l2min
            && l3max > l3min;
        if !ok {
            return Err(Error::InvalidArgument(format!(
                "window must satisfy 0 < l2min < l2max and 0 < l3min < l3max, got {l2min}:{l2max}:{l3min}:{l3max}"
            )));
        }
        Ok(Self { l2min, l2max, l3min, l3max })
    }

    /// Bounding box of the curve images padded by 10% on each side, kept
    /// inside `L2, L3 > 0`. Without curves, the box of reachable lengths.
    pub fn around_curves(geom: &ManipulatorGeometry, l1: f64, curves: &[SingularCurve]) -> Self {
        let pts = curves.iter().flat_map(|c| c.samples.iter().map(|s| (s.l2, s.l3)));
        let (mut a, mut b, mut c, mut d) = (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
        for (l2, l3) in pts {
            a = a.min(l2);
            b = b.max(l2);
            c = c.min(l3);
            d = d.max(l3);
        }
        if !a.is_finite() {
            let [d1, _, d3] = geom.d();
            a = 0.0;
            c = 0.0;
            b = l1 + d1 + geom.a2x();
            d = l1 + d3 + geom.a3x().hypot(geom.a3y());
        }
        let (p2, p3) = (0.1 * (b - a), 0.1 * (d - c));
        let floor = 1e-3 * geom.scale();
        Self { l2min: (a - p2).max(floor), l2max: b + p2, l3min: (c - p3).max(floor), l3max: d + p3 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionGrid {
    pub window: Window,
    /// `(n2, n3)`.
    pub resolution: (usize, usize),
    /// `counts[i][j]` at the centre of cell `(i, j)`, `i` along `L2`.
    pub counts: Vec<Vec<i32>>,
}

impl RegionGrid {
    pub fn cell_size(&self) -> (f64, f64) {
        let w = &self.window;
        ((w.l2max - w.l2min) / self.resolution.0 as f64, (w.l3max - w.l3min) / self.resolution.1 as f64)
    }

    pub fn center(&self, i: usize, j: usize) -> (f64, f64) {
        let (h2, h3) = self.cell_size();
        (self.window.l2min + (i as f64 + 0.5) * h2, self.window.l3min + (j as f64 + 0.5) * h3)
    }

    /// Cell containing `(l2, l3)`.
    pub fn cell_of(&self, l2: f64, l3: f64) -> Option<(usize, usize)> {
        let (h2, h3) = self.cell_size();
        let i = ((l2 - self.window.l2min) / h2).floor();
        let j = ((l3 - self.window.l3min) / h3).floor();
        let inside = i >= 0.0 && j >= 0.0 && (i as usize) < self.resolution.0 && (j as usize) < self.resolution.1;
        inside.then_some((i as usize, j as usize))
    }

    /// 4-connected components of equal count, uncounted cells excluded.
    pub fn components(&self) -> Vec<RegionComponent> {
        let (n2, n3) = self.resolution;
        let mut label = vec![vec![usize::MAX; n3]; n2];
        let mut out = Vec::new();
        for i in 0..n2 {
            for j in 0..n3 {
                let count = self.counts[i][j];
                if count == UNCOUNTED || label[i][j] != usize::MAX {
                    continue;
                }
                let id = out.len();
                let mut cells = Vec::new();
                let mut queue = VecDeque::from([(i, j)]);
                label[i][j] = id;
                while let Some((a, b)) = queue.pop_front() {
                    cells.push((a, b));
                    for (x, y) in neighbours(a, b, n2, n3) {
                        if label[x][y] == usize::MAX && self.counts[x][y] == count {
                            label[x][y] = id;
                            queue.push_back((x, y));
                        }
                    }
                }
                out.push(RegionComponent { count, cells });
            }
        }
        out
    }

    /// Counts of the first counted cells met when leaving `comp` through
    /// uncounted cells, and whether that search reaches the window border.
    pub fn surroundings(&self, comp: &RegionComponent) -> (Vec<i32>, bool) {
        let (n2, n3) = self.resolution;
        let mut seen = vec![vec![false; n3]; n2];
        let mut queue: VecDeque<(usize, usize)> = comp.cells.iter().copied().collect();
        for &(i, j) in &comp.cells {
            seen[i][j] = true;
        }
        let mut found = Vec::new();
        let mut border = false;
        while let Some((a, b)) = queue.pop_front() {
            if a == 0 || b == 0 || a + 1 == n2 || b + 1 == n3 {
                border = true;
            }
            for (x, y) in neighbours(a, b, n2, n3) {
                if seen[x][y] {
                    continue;
                }
                seen[x][y] = true;
                let c = self.counts[x][y];
                if c == UNCOUNTED {
                    queue.push_back((x, y));
                } else if c != comp.count {
                    found.push(c);
                }
            }
        }
        found.sort_unstable();
        found.dedup();
        (found, border)
    }

    /// Number of components per positive count, sorted by count, ignoring
    /// components smaller than `min_cells`. Unreachable cells (count 0) are
    /// not assembly-mode regions and are left out.
    pub fn signature(&self, min_cells: usize) -> Vec<(i32, usize)> {
        let mut m: BTreeMap<i32, usize> = BTreeMap::new();
        for c in self.components() {
            if c.count > 0 && c.cells.len() >= min_cells {
                *m.entry(c.count).or_default() += 1;
            }
        }
        m.into_iter().collect()
    }
}

fn neighbours(a: usize, b: usize, n2: usize, n3: usize) -> impl Iterator<Item = (usize, usize)> {
    let cand = [
        (a.wrapping_sub(1), b),
        (a + 1, b),
        (a, b.wrapping_sub(1)),
        (a, b + 1),
    ];
    cand.into_iter().filter(move |&(x, y)| x < n2 && y < n3)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionComponent {
    pub count: i32,
    pub cells: Vec<(usize, usize)>,
}

fn segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let l2 = dx * dx + dy * dy;
    let s = if l2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / l2).clamp(0.0, 1.0) };
    (p.0 - a.0 - s * dx).hypot(p.1 - a.1 - s * dy)
}

/// Marks cells whose centre is within one cell diagonal of a curve image.
fn near_curves(grid: &RegionGrid, curves: &[SingularCurve]) -> Vec<Vec<bool>> {
    let (n2, n3) = grid.resolution;
    let (h2, h3) = grid.cell_size();
    let tol = h2.hypot(h3);
    let w = grid.window;
    let mut mask = vec![vec![false; n3]; n2];
    for c in curves {
        let n = c.samples.len();
        for k in 0..n {
            let (s, t) = (&c.samples[k], &c.samples[(k + 1) % n]);
            let (a, b) = ((s.l2, s.l3), (t.l2, t.l3));
            let lo2 = ((a.0.min(b.0) - tol - w.l2min) / h2 - 0.5).floor().max(0.0) as usize;
            let hi2 = ((a.0.max(b.0) + tol - w.l2min) / h2 - 0.5).ceil().min(n2 as f64 - 1.0);
            let lo3 = ((a.1.min(b.1) - tol - w.l3min) / h3 - 0.5).floor().max(0.0) as usize;
            let hi3 = ((a.1.max(b.1) + tol - w.l3min) / h3 - 0.5).ceil().min(n3 as f64 - 1.0);
            if hi2 < 0.0 || hi3 < 0.0 {
                continue;
            }
            for i in lo2..=hi2 as usize {
                for j in lo3..=hi3 as usize {
                    if !mask[i][j] && segment_distance(grid.center(i, j), a, b) <= tol {
                        mask[i][j] = true;
                    }
                }
            }
        }
    }
    mask
}

/// Mode counts at the cell centres of `window`; cells near a curve image
/// are [`UNCOUNTED`].
pub fn region_map(
    geom: &ManipulatorGeometry,
    l1: f64,
    window: Window,
    resolution: (usize, usize),
    curves: &[SingularCurve],
) -> RegionGrid {
    let (n2, n3) = (resolution.0.max(1), resolution.1.max(1));
    let mut grid = RegionGrid { window, resolution: (n2, n3), counts: vec![vec![UNCOUNTED; n3]; n2] };
    let mask = near_curves(&grid, curves);
    let counter = ModeCounter::new(geom, l1).ok();
    let counts: Vec<i32> = (0..n2 * n3)
        .into_par_iter()
        .map(|k| {
            let (i, j) = (k / n3, k % n3);
            if mask[i][j] {
                return UNCOUNTED;
            }
            let (l2, l3) = grid.center(i, j);
            let n = match &counter {
                Some(c) => c.count(l2, l3),
                None => count_assembly_modes(geom, [l1, l2, l3]),
            };
            n.map_or(UNCOUNTED, |n| n as i32)
        })
        .collect();
    for (k, c) in counts.into_iter().enumerate() {
        grid.counts[k / n3][k % n3] = c;
    }
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(counts: Vec<Vec<i32>>) -> RegionGrid {
        let (n2, n3) = (counts.len(), counts[0].len());
        RegionGrid { window: Window::new(1.0, 2.0, 1.0, 2.0).unwrap(), resolution: (n2, n3), counts }
    }

    #[test]
    fn components_and_signature() {
        let g = grid(vec![
            vec![2, 2, 2, 2, 2],
            vec![2, -1, -1, -1, 2],
            vec![2, -1, 4, -1, 2],
            vec![2, -1, -1, -1, 2],
            vec![2, 2, 2, 2, 0],
        ]);
        let comps = g.components();
        assert_eq!(comps.len(), 3);
        assert_eq!(g.signature(1), vec![(2, 1), (4, 1)]);
        assert_eq!(g.signature(2), vec![(2, 1)]);
        let four = comps.iter().find(|c| c.count == 4).unwrap();
        assert_eq!(g.surroundings(four), (vec![2], false));
    }

    #[test]
    fn unreachable_window_is_all_zero() {
        let g = ManipulatorGeometry::reference();
        let w = Window::new(200.0, 210.0, 200.0, 210.0).unwrap();
        let r = region_map(&g, 14.98, w, (8, 8), &[]);
        assert!(r.counts.iter().flatten().all(|&c| c == 0));
    }

    #[test]
    fn window_validation() {
        assert!(Window::new(0.0, 1.0, 1.0, 2.0).is_err());
        assert!(Window::new(2.0, 1.0, 1.0, 2.0).is_err());
        assert!(Window::new(1.0, 2.0, 1.0, f64::NAN).is_err());
    }

    #[test]
    fn cell_lookup() {
        let g = grid(vec![vec![0; 4]; 4]);
        assert_eq!(g.cell_of(1.3, 1.9), Some((1, 3)));
        assert_eq!(g.cell_of(2.1, 1.5), None);
        assert_eq!(g.center(0, 0), (1.125, 1.125));
    }
}
