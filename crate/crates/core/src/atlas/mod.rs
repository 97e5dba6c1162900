//! Slice atlases: singular curves, cusps and assembly-mode regions of
//! fixed-`L1` slices, and sweeps over `L1`.

mod export;
mod regions;
mod trace;

pub use export::{atlas_json, curves_csv, cusps_json, slice_svg, sweep_csv, sweep_json};
pub use regions::{region_map, RegionComponent, RegionGrid, Window, UNCOUNTED};
pub use trace::{grid_step, trace_singular_curves, CurveSample, SingularCurve, BISECTION_TOL, MIN_GRID};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cuspfind::{find_cusps_report, CuspOptions, CuspPoint};
use crate::directkin::ModeCounter;
use crate::error::Result;
use crate::geometry::{angle_distance, ManipulatorGeometry};

#[derive(Debug, Clone, PartialEq)]
pub struct AtlasOptions {
    /// `(n_alpha, n_theta1)` of the tracing grid.
    pub grid: (usize, usize),
    /// `(n2, n3)` of the region map.
    pub region_resolution: (usize, usize),
    /// Region window; `None` sizes it around the curves.
    pub window: Option<Window>,
    /// Components with fewer cells are left out of the region signature.
    pub min_component_cells: usize,
    pub cusp: CuspOptions,
}

impl Default for AtlasOptions {
    fn default() -> Self {
        Self {
            grid: (512, 512),
            region_resolution: (128, 128),
            window: None,
            min_component_cells: 4,
            cusp: CuspOptions::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AtlasChecks {
    /// Largest `(alpha, theta1)` distance from a cusp to the nearest curve
    /// sample, in tracing grid steps.
    pub max_cusp_curve_distance: f64,
    /// Every cusp is within two grid steps of a curve.
    pub cusps_on_curves: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SliceAtlas {
    pub l1: f64,
    pub curves: Vec<SingularCurve>,
    pub cusps: Vec<CuspPoint>,
    /// Common zeros on a collapsed leg, never counted as cusps.
    pub excluded_axis: Vec<CuspPoint>,
    pub regions: RegionGrid,
    pub cusp_count: usize,
    pub region_signature: Vec<(i32, usize)>,
    pub checks: AtlasChecks,
}

fn curve_distance(curves: &[SingularCurve], alpha: f64, theta1: f64) -> f64 {
    curves
        .iter()
        .flat_map(|c| &c.samples)
        .map(|s| angle_distance(s.alpha, alpha).hypot(angle_distance(s.theta1, theta1)))
        .fold(f64::INFINITY, f64::min)
}

/// Curves, cusps and region map of the slice `L1 = l1`.
pub fn slice_atlas(geom: &ManipulatorGeometry, l1: f64, opts: &AtlasOptions) -> Result<SliceAtlas> {
    let report = find_cusps_report(geom, l1, &opts.cusp)?;
    let curves = trace_singular_curves(geom, l1, opts.grid);
    let window = opts.window.unwrap_or_else(|| Window::around_curves(geom, l1, &curves));
    let regions = region_map(geom, l1, window, opts.region_resolution, &curves);
    let step = grid_step(opts.grid);
    let max_d = report
        .cusps
        .iter()
        .map(|c| curve_distance(&curves, c.alpha, c.theta1) / step)
        .fold(0.0, f64::max);
    let region_signature = regions.signature(opts.min_component_cells);
    Ok(SliceAtlas {
        l1,
        cusp_count: report.cusps.len(),
        excluded_axis: report.excluded_axis().cloned().collect(),
        cusps: report.cusps,
        curves,
        regions,
        region_signature,
        checks: AtlasChecks { max_cusp_curve_distance: max_d, cusps_on_curves: max_d < 2.0 },
    })
}

/// Mode counts on both sides of the curve images.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CrossingStats {
    /// Samples whose normal probe crosses exactly one curve segment.
    pub checked: usize,
    /// Of those, the ones whose counts differ by exactly two.
    pub jump_two: usize,
    /// `(l2, l3, count_minus, count_plus)` of the others.
    pub failures: Vec<(f64, f64, usize, usize)>,
}

fn segments_cross(p: (f64, f64), q: (f64, f64), a: (f64, f64), b: (f64, f64)) -> bool {
    let orient = |o: (f64, f64), x: (f64, f64), y: (f64, f64)| (x.0 - o.0) * (y.1 - o.1) - (x.1 - o.1) * (y.0 - o.0);
    let (d1, d2) = (orient(p, q, a), orient(p, q, b));
    let (d3, d4) = (orient(a, b, p), orient(a, b, q));
    d1 * d2 < 0.0 && d3 * d4 < 0.0
}

/// Probes every `stride`-th curve sample at `offset` on both sides of the
/// curve image (along its normal) and compares the mode counts there.
/// Samples where the image turns sharply, or whose probe crosses other
/// curve segments, are skipped.
pub fn crossing_stats(
    geom: &ManipulatorGeometry,
    l1: f64,
    curves: &[SingularCurve],
    offset: f64,
    stride: usize,
) -> Result<CrossingStats> {
    let counter = ModeCounter::new(geom, l1)?;
    let segs: Vec<((f64, f64), (f64, f64))> = curves
        .iter()
        .flat_map(|c| {
            let n = c.samples.len();
            (0..n).map(move |k| {
                let (s, t) = (&c.samples[k], &c.samples[(k + 1) % n]);
                ((s.l2, s.l3), (t.l2, t.l3))
            })
        })
        .collect();
    let mut probes = Vec::new();
    for c in curves {
        let n = c.samples.len();
        if n < 3 {
            continue;
        }
        for k in (0..n).step_by(stride.max(1)) {
            let pt = |d: usize| {
                let c = &c.samples[(k + d) % n];
                (c.l2, c.l3)
            };
            let (p, s, q, r) = (pt(n - 1), pt(0), pt(1), pt(2));
            let dir = |a: (f64, f64), b: (f64, f64)| (b.0 - a.0, b.1 - a.1);
            let (u, v, w) = (dir(p, s), dir(s, q), dir(q, r));
            let len = |d: (f64, f64)| d.0.hypot(d.1);
            let smooth = |a: (f64, f64), b: (f64, f64)| a.0 * b.0 + a.1 * b.1 >= 0.9 * len(a) * len(b);
            // the chord must resolve the curve at the probe scale
            if len(v) == 0.0 || len(v) > 0.5 * offset || !smooth(u, v) || !smooth(v, w) {
                continue;
            }
            let m = (0.5 * (s.0 + q.0), 0.5 * (s.1 + q.1));
            let (nx, ny) = (-v.1 / len(v) * offset, v.0 / len(v) * offset);
            let lo = (m.0 - nx, m.1 - ny);
            let hi = (m.0 + nx, m.1 + ny);
            let eps = geom.eps_len();
            if lo.0 <= eps || lo.1 <= eps || hi.0 <= eps || hi.1 <= eps {
                continue;
            }
            let hits = segs.iter().filter(|(a, b)| segments_cross(lo, hi, *a, *b)).count();
            if hits == 1 {
                probes.push((m.0, m.1, lo, hi));
            }
        }
    }
    let results: Vec<(f64, f64, usize, usize)> = probes
        .par_iter()
        .map(|&(l2, l3, lo, hi)| Ok((l2, l3, counter.count(lo.0, lo.1)?, counter.count(hi.0, hi.1)?)))
        .collect::<Result<_>>()?;
    let mut stats = CrossingStats { checked: results.len(), ..Default::default() };
    for (l2, l3, a, b) in results {
        if a.abs_diff(b) == 2 {
            stats.jump_two += 1;
        } else {
            stats.failures.push((l2, l3, a, b));
        }
    }
    Ok(stats)
}

/// One slice of a sweep; `cusp_count` is `None` for a degenerate slice.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepEntry {
    pub l1: f64,
    pub cusp_count: Option<usize>,
    pub region_signature: Vec<(i32, usize)>,
    pub error: Option<String>,
}

impl SweepEntry {
    fn pattern(&self) -> Option<(usize, &[(i32, usize)])> {
        self.cusp_count.map(|c| (c, self.region_signature.as_slice()))
    }
}

/// Slice summaries for each `l1`, in input order.
pub fn sweep(geom: &ManipulatorGeometry, l1_values: &[f64], opts: &AtlasOptions) -> Vec<SweepEntry> {
    l1_values
        .par_iter()
        .map(|&l1| match slice_atlas(geom, l1, opts) {
            Ok(a) => SweepEntry { l1, cusp_count: Some(a.cusp_count), region_signature: a.region_signature, error: None },
            Err(e) => SweepEntry { l1, cusp_count: None, region_signature: Vec::new(), error: Some(e.to_string()) },
        })
        .collect()
}

/// `a, a + step, ...` up to `b`, each rounded to 12 significant digits so
/// that the values read back as the intended decimals.
pub fn sample_range(a: f64, b: f64, step: f64) -> Vec<f64> {
    if !(step > 0.0 && a.is_finite() && b.is_finite()) || b < a {
        return Vec::new();
    }
    let n = ((b - a) / step + 1e-9).floor() as usize;
    (0..=n)
        .map(|k| {
            let x = a + k as f64 * step;
            format!("{x:.12e}").parse().unwrap_or(x)
        })
        .collect()
}

/// Smallest sampled `l1` from which `(cusp_count, region_signature)` stays
/// constant to the end. A degenerate slice in that tail means no
/// stabilization.
pub fn stabilization_point(entries: &[SweepEntry]) -> Option<f64> {
    let last = entries.last()?.pattern()?;
    let mut k = entries.len() - 1;
    while k > 0 && entries[k - 1].pattern() == Some(last) {
        k -= 1;
    }
    Some(entries[k].l1)
}

/// Sweeps `[range.0, range.1]` at `step` and returns the stabilization
/// point together with the sweep.
pub fn find_stabilization(
    geom: &ManipulatorGeometry,
    range: (f64, f64),
    step: f64,
    opts: &AtlasOptions,
) -> (Option<f64>, Vec<SweepEntry>) {
    let entries = sweep(geom, &sample_range(range.0, range.1, step), opts);
    (stabilization_point(&entries), entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn entry(l1: f64, c: Option<usize>, sig: &[(i32, usize)]) -> SweepEntry {
        SweepEntry { l1, cusp_count: c, region_signature: sig.to_vec(), error: None }
    }

    #[test]
    fn ranges_are_clean_decimals() {
        let r = sample_range(0.5, 20.0, 0.5);
        assert_eq!(r.len(), 40);
        assert_eq!(r[5], 3.0);
        let r = sample_range(26.5, 27.5, 0.05);
        assert_eq!(r.len(), 21);
        assert_eq!(r[3], 26.65);
        assert_eq!(*r.last().unwrap(), 27.5);
        assert!(sample_range(1.0, 0.0, 0.1).is_empty());
        assert!(sample_range(0.0, 1.0, 0.0).is_empty());
    }

    #[test]
    fn constant_sweep_stabilizes_at_first_value() {
        let e: Vec<_> = (0..5).map(|k| entry(k as f64, Some(4), &[(2, 1), (4, 1)])).collect();
        assert_eq!(stabilization_point(&e), Some(0.0));
    }

    #[test]
    fn stabilization_is_the_start_of_the_constant_tail() {
        let e = vec![
            entry(1.0, Some(4), &[(2, 1)]),
            entry(2.0, Some(6), &[(2, 1)]),
            entry(3.0, Some(4), &[(2, 1)]),
            entry(4.0, Some(4), &[(2, 1)]),
        ];
        assert_eq!(stabilization_point(&e), Some(3.0));
        let e = vec![entry(1.0, Some(4), &[(2, 1)]), entry(2.0, Some(4), &[(2, 2)])];
        assert_eq!(stabilization_point(&e), Some(2.0));
    }

    #[test]
    fn degenerate_tail_never_stabilizes() {
        let e = vec![entry(1.0, None, &[]), entry(2.0, None, &[])];
        assert_eq!(stabilization_point(&e), None);
        assert_eq!(stabilization_point(&[]), None);
    }

    #[test]
    fn crossing_a_curve_changes_the_count_by_two() {
        let g = ManipulatorGeometry::reference();
        let curves = trace_singular_curves(&g, 14.98, (512, 512));
        let stats = crossing_stats(&g, 14.98, &curves, 0.5, 5).unwrap();
        assert!(stats.checked > 50, "{stats:?}");
        assert!(stats.failures.is_empty(), "{stats:?}");
    }

    #[test]
    fn reference_slice_atlas() {
        let g = ManipulatorGeometry::reference();
        let opts = AtlasOptions { grid: (256, 256), region_resolution: (64, 64), ..Default::default() };
        let a = slice_atlas(&g, 14.98, &opts).unwrap();
        assert_eq!(a.cusp_count, 6);
        assert!(a.checks.cusps_on_curves, "{:?}", a.checks);
        let counts: Vec<i32> = a.region_signature.iter().map(|x| x.0).collect();
        for c in [2, 4, 6] {
            assert!(counts.contains(&c), "{:?}", a.region_signature);
        }
        assert!(a.regions.counts.iter().flatten().all(|&c| c == UNCOUNTED || (0..=6).contains(&c) && c % 2 == 0));
    }
}
