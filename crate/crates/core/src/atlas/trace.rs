//! Marching squares on the periodic `(alpha, theta1)` grid.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::geometry::{config_from_slice, normalize_angle, ManipulatorGeometry, SlicePose};
use crate::kinecore::singularity_polynomial;

/// Smallest accepted grid size per axis.
pub const MIN_GRID: usize = 64;

/// Width of the bracket left by edge bisection, in radians.
pub const BISECTION_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub alpha: f64,
    pub theta1: f64,
    pub l2: f64,
    pub l3: f64,
}

/// A closed branch of the singular set, consecutive samples one grid cell
/// apart (the last sample connects back to the first).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SingularCurve {
    pub branch_id: usize,
    pub samples: Vec<CurveSample>,
}

/// Grid edge: `(vertical, i, j)`; horizontal edges join `(i, j)` and
/// `(i + 1, j)`, vertical ones `(i, j)` and `(i, j + 1)`.
type Edge = (bool, usize, usize);

struct Grid {
    na: usize,
    nt: usize,
    positive: Vec<bool>,
}

impl Grid {
    fn alpha(&self, i: usize) -> f64 {
        -PI + 2.0 * PI * i as f64 / self.na as f64
    }

    fn theta(&self, j: usize) -> f64 {
        -PI + 2.0 * PI * j as f64 / self.nt as f64
    }

    fn sign(&self, i: usize, j: usize) -> bool {
        self.positive[(i % self.na) * self.nt + j % self.nt]
    }
}

fn value(geom: &ManipulatorGeometry, l1: f64, alpha: f64, theta1: f64) -> f64 {
    singularity_polynomial(geom, &SlicePose { l1, alpha, theta1 }).0
}

/// Crossing on an edge whose end points have opposite signs.
fn bisect_edge(geom: &ManipulatorGeometry, l1: f64, grid: &Grid, e: Edge) -> (f64, f64) {
    let (vertical, i, j) = e;
    let (a0, t0) = (grid.alpha(i), grid.theta(j));
    let (da, dt) = if vertical {
        (0.0, 2.0 * PI / grid.nt as f64)
    } else {
        (2.0 * PI / grid.na as f64, 0.0)
    };
    let s0 = grid.sign(i, j);
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    let len = da.max(dt);
    while (hi - lo) * len > BISECTION_TOL {
        let mid = 0.5 * (lo + hi);
        if (value(geom, l1, a0 + mid * da, t0 + mid * dt) > 0.0) == s0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let m = 0.5 * (lo + hi);
    (normalize_angle(a0 + m * da), normalize_angle(t0 + m * dt))
}

/// Crossing segments of one cell, as pairs of edges.
fn cell_segments(geom: &ManipulatorGeometry, l1: f64, grid: &Grid, i: usize, j: usize) -> Vec<(Edge, Edge)> {
    let (na, nt) = (grid.na, grid.nt);
    let (ip, jp) = ((i + 1) % na, (j + 1) % nt);
    let s00 = grid.sign(i, j);
    let s10 = grid.sign(ip, j);
    let s11 = grid.sign(ip, jp);
    let s01 = grid.sign(i, jp);
    let bottom = (false, i, j);
    let top = (false, i, jp);
    let left = (true, i, j);
    let right = (true, ip, j);
    let mut cut = Vec::with_capacity(4);
    for (e, a, b) in [(bottom, s00, s10), (right, s10, s11), (top, s01, s11), (left, s00, s01)] {
        if a != b {
            cut.push(e);
        }
    }
    match cut.len() {
        2 => vec![(cut[0], cut[1])],
        4 => {
            // saddle: the centre sign decides which diagonal is connected
            let ac = grid.alpha(i) + PI / na as f64;
            let tc = grid.theta(j) + PI / nt as f64;
            if (value(geom, l1, ac, tc) > 0.0) == s00 {
                vec![(bottom, right), (left, top)]
            } else {
                vec![(bottom, left), (right, top)]
            }
        }
        _ => Vec::new(),
    }
}

/// Singular curves of the slice `L1 = l1` on an `na x nt` grid (each at
/// least [`MIN_GRID`]), in canonical order: each branch starts at its
/// smallest grid edge and branches are sorted by that edge.
pub fn trace_singular_curves(geom: &ManipulatorGeometry, l1: f64, grid: (usize, usize)) -> Vec<SingularCurve> {
    let (na, nt) = (grid.0.max(MIN_GRID), grid.1.max(MIN_GRID));
    let mut g = Grid { na, nt, positive: Vec::new() };
    g.positive = (0..na * nt)
        .into_par_iter()
        .map(|k| value(geom, l1, g.alpha(k / nt), g.theta(k % nt)) > 0.0)
        .collect();

    let segments: Vec<(Edge, Edge)> = (0..na * nt)
        .into_par_iter()
        .flat_map_iter(|k| cell_segments(geom, l1, &g, k / nt, k % nt))
        .collect();
    let mut adjacency: BTreeMap<Edge, Vec<Edge>> = BTreeMap::new();
    for &(a, b) in &segments {
        adjacency.entry(a).or_default().push(b);
        adjacency.entry(b).or_default().push(a);
    }
    for v in adjacency.values_mut() {
        v.sort();
    }
    let edges: Vec<Edge> = adjacency.keys().copied().collect();
    let points: BTreeMap<Edge, (f64, f64)> = edges
        .par_iter()
        .map(|&e| (e, bisect_edge(geom, l1, &g, e)))
        .collect::<Vec<_>>()
        .into_iter()
        .collect();

    let mut visited: BTreeMap<Edge, bool> = edges.iter().map(|&e| (e, false)).collect();
    let mut curves = Vec::new();
    for &start in &edges {
        if visited[&start] {
            continue;
        }
        let mut path = vec![start];
        visited.insert(start, true);
        let (mut prev, mut cur) = (start, adjacency[&start][0]);
        while cur != start {
            path.push(cur);
            visited.insert(cur, true);
            let next = adjacency[&cur].iter().copied().find(|&n| n != prev).unwrap_or(prev);
            (prev, cur) = (cur, next);
            if path.len() > edges.len() {
                break;
            }
        }
        let samples = path
            .iter()
            .map(|e| {
                let (alpha, theta1) = points[e];
                let c = config_from_slice(geom, &SlicePose::new(l1, alpha, theta1));
                CurveSample { alpha, theta1, l2: c.lengths[1], l3: c.lengths[2] }
            })
            .collect();
        curves.push(SingularCurve { branch_id: curves.len(), samples });
    }
    curves
}

/// Grid step in `(alpha, theta1)` for a grid size.
pub fn grid_step(grid: (usize, usize)) -> f64 {
    2.0 * PI / grid.0.max(MIN_GRID).min(grid.1.max(MIN_GRID)) as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_distance;

    #[test]
    fn samples_are_on_the_curve_and_adjacent() {
        let g = ManipulatorGeometry::reference();
        let grid = (128, 128);
        let curves = trace_singular_curves(&g, 14.98, grid);
        assert!(!curves.is_empty());
        let step = grid_step(grid);
        for c in &curves {
            let n = c.samples.len();
            for (k, s) in c.samples.iter().enumerate() {
                let (v, m) = singularity_polynomial(&g, &SlicePose::new(14.98, s.alpha, s.theta1));
                assert!(v.abs() < 1e-6 * m);
                let t = &c.samples[(k + 1) % n];
                let d = angle_distance(s.alpha, t.alpha).hypot(angle_distance(s.theta1, t.theta1));
                assert!(d < 2.0 * step, "{d}");
                let cf = config_from_slice(&g, &SlicePose::new(14.98, s.alpha, s.theta1));
                assert_eq!((cf.lengths[1], cf.lengths[2]), (s.l2, s.l3));
            }
        }
    }

    #[test]
    fn small_l1_gives_two_branches() {
        let g = ManipulatorGeometry::reference();
        assert_eq!(trace_singular_curves(&g, 0.05, (128, 128)).len(), 2);
    }

    #[test]
    fn tracing_is_deterministic() {
        let g = ManipulatorGeometry::reference();
        assert_eq!(trace_singular_curves(&g, 31.0, (96, 96)), trace_singular_curves(&g, 31.0, (96, 96)));
    }
}
