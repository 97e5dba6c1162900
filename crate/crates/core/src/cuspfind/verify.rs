//! Numerical confirmation that three assembly modes coalesce at a cusp.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::CuspPoint;
use crate::directkin::assembly_modes;
use crate::geometry::{angle_distance, config_from_slice, ManipulatorGeometry, SlicePose};
use crate::kinecore::singularity_polynomial;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyOptions {
    /// Sample distances as multiples of the geometry scale.
    pub eps: Vec<f64>,
    /// Number of sampling directions, the first along the cusp tangent.
    pub directions: usize,
    /// Accepted range of the fitted diameter exponent.
    pub exponent_range: (f64, f64),
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self { eps: vec![1e-2, 1e-3, 1e-4], directions: 8, exponent_range: (0.18, 0.48) }
    }
}

/// Cluster measurements along one sampling direction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DirectionSample {
    /// Direction angle in the `(L2, L3)` plane.
    pub angle: f64,
    /// Number of assembly modes at each sample distance.
    pub mode_counts: Vec<usize>,
    /// Diameter of the three modes closest to the cusp pose, `None` when
    /// fewer than three modes exist.
    pub diameters: Vec<Option<f64>>,
    pub exponent: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspVerdict {
    pub confirmed: bool,
    /// Index into `samples` of the direction that confirmed the cusp.
    pub direction: Option<usize>,
    pub exponent: Option<f64>,
    /// Per-eps cluster diameters along the confirming (or tangent) direction.
    pub diameters: Vec<Option<f64>>,
    pub samples: Vec<DirectionSample>,
}

fn torus_distance(a: (f64, f64), b: (f64, f64)) -> f64 {
    angle_distance(a.0, b.0).hypot(angle_distance(a.1, b.1))
}

/// Least-squares slope of `log y` against `log x`.
fn log_log_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Point of the singular curve reached by moving `h` along its tangent from
/// `(alpha, theta1)`, projected back with Newton steps.
fn step_along_curve(geom: &ManipulatorGeometry, l1: f64, a: f64, th: f64, h: f64) -> (f64, f64) {
    let f = |a: f64, th: f64| singularity_polynomial(geom, &SlicePose::new(l1, a, th)).0;
    let d = 1e-7;
    let grad = |a: f64, th: f64| {
        (
            (f(a + d, th) - f(a - d, th)) / (2.0 * d),
            (f(a, th + d) - f(a, th - d)) / (2.0 * d),
        )
    };
    let (ga, gt) = grad(a, th);
    let n = ga.hypot(gt);
    let (mut pa, mut pt) = (a - h * gt / n, th + h * ga / n);
    for _ in 0..8 {
        let v = f(pa, pt);
        let (ga, gt) = grad(pa, pt);
        let g2 = ga * ga + gt * gt;
        pa -= v * ga / g2;
        pt -= v * gt / g2;
    }
    (pa, pt)
}

/// Direction in `(L2, L3)` along which both branches of the singular curve
/// leave the cusp.
fn cusp_tangent(geom: &ManipulatorGeometry, c: &CuspPoint) -> f64 {
    let h = 1e-3;
    let image = |(a, th): (f64, f64)| {
        let cf = config_from_slice(geom, &SlicePose::new(c.l1, a, th));
        (cf.lengths[1], cf.lengths[2])
    };
    let p = image(step_along_curve(geom, c.l1, c.alpha, c.theta1, h));
    let m = image(step_along_curve(geom, c.l1, c.alpha, c.theta1, -h));
    (p.1 + m.1 - 2.0 * c.l3).atan2(p.0 + m.0 - 2.0 * c.l2)
}

fn sample_direction(geom: &ManipulatorGeometry, c: &CuspPoint, angle: f64, opts: &VerifyOptions) -> DirectionSample {
    let scale = geom.scale();
    let mut mode_counts = Vec::new();
    let mut diameters = Vec::new();
    for &e in &opts.eps {
        let l2 = c.l2 + e * scale * angle.cos();
        let l3 = c.l3 + e * scale * angle.sin();
        let modes = assembly_modes(geom, [c.l1, l2, l3]).unwrap_or_default();
        mode_counts.push(modes.len());
        let mut near: Vec<(f64, f64)> = modes.iter().map(|m| (m.alpha, m.theta1)).collect();
        near.sort_by(|x, y| {
            torus_distance(*x, (c.alpha, c.theta1)).total_cmp(&torus_distance(*y, (c.alpha, c.theta1)))
        });
        diameters.push((near.len() >= 3).then(|| {
            let n = &near[..3];
            torus_distance(n[0], n[1]).max(torus_distance(n[1], n[2])).max(torus_distance(n[0], n[2]))
        }));
    }
    let exponent = diameters
        .iter()
        .all(|d| d.is_some_and(|d| d > 0.0))
        .then(|| log_log_slope(&opts.eps, &diameters.iter().map(|d| d.unwrap()).collect::<Vec<_>>()));
    DirectionSample { angle, mode_counts, diameters, exponent }
}

fn decreasing(d: &[Option<f64>]) -> bool {
    d.windows(2).all(|w| matches!((w[0], w[1]), (Some(a), Some(b)) if b < a))
}

/// Samples joint points near the cusp and checks that a cluster of three
/// assembly modes shrinks onto it.
pub fn verify_cusp(geom: &ManipulatorGeometry, c: &CuspPoint, opts: &VerifyOptions) -> CuspVerdict {
    let tangent = cusp_tangent(geom, c);
    let n = opts.directions.max(1);
    let samples: Vec<DirectionSample> = (0..n)
        .map(|k| sample_direction(geom, c, tangent + 2.0 * PI * k as f64 / n as f64, opts))
        .collect();
    let (lo, hi) = opts.exponent_range;
    let hit = samples
        .iter()
        .position(|s| decreasing(&s.diameters) && s.exponent.is_some_and(|e| e >= lo && e <= hi));
    let shown = &samples[hit.unwrap_or(0)];
    CuspVerdict {
        confirmed: hit.is_some(),
        direction: hit,
        exponent: shown.exponent,
        diameters: shown.diameters.clone(),
        samples,
    }
}
