//! Cusp points of a fixed-`L1` slice.
//!
//! The singularity condition and the triple-coalescence condition are turned
//! into exact polynomials in `(t, t1) = (tan(alpha/2), tan(theta1/2))`; `t` is
//! eliminated by a resultant and the common real zeros are recovered by
//! back-substitution into the quartic singularity polynomial.
//!
//! The resultant also carries roots that are not cusps. Zeros whose `t` is
//! complex fail the residual test. Real common zeros where the chosen adjugate
//! row or column vanishes (so the cusp polynomial vanishes for a trivial
//! reason) are removed by re-evaluating the condition with the largest
//! adjugate row and column. Zeros with a collapsed leg 2 or 3 are reported
//! separately and never counted.

mod diagnostic;
mod verify;

pub use diagnostic::{degree_diagnostic, DegreeDiagnostic};
pub use verify::{verify_cusp, CuspVerdict, VerifyOptions};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{angle_distance, collapsed_leg_poses, config_from_slice, ManipulatorGeometry, SlicePose};
use crate::kinecore::{k_factors, kernel_vectors, normalized_cusp_residual};
use crate::polysolve::system::{solve_trig_pair, tan_half, PairOptions, PairReport, PairRoot};
use crate::polysolve::{trig_to_bipoly, BiPoly, ResultantMethod};
use crate::slicepoly::ClosureTrig;

/// A common zero of the singularity and cusp conditions.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CuspPoint {
    pub l1: f64,
    pub alpha: f64,
    pub theta1: f64,
    pub l2: f64,
    pub l3: f64,
    pub t: f64,
    pub t1: f64,
    pub residual_singular: f64,
    pub residual_cusp: f64,
    #[serde(skip)]
    pub excluded_axis: bool,
}

impl CuspPoint {
    pub fn pose(&self) -> SlicePose {
        SlicePose::new(self.l1, self.alpha, self.theta1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspOptions {
    pub residual_tol: f64,
    pub dedupe_tol: f64,
    /// Threshold on the scale-free cusp condition (largest adjugate row and
    /// column, normalized) below which a common zero is a genuine cusp.
    pub kernel_tol: f64,
    pub method: ResultantMethod,
}

impl Default for CuspOptions {
    fn default() -> Self {
        Self { residual_tol: 1e-8, dedupe_tol: 1e-6, kernel_tol: 1e-6, method: ResultantMethod::default() }
    }
}

/// Why a common zero of the two polynomials was not reported as a cusp.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// Leg 2 or leg 3 has zero length.
    Axis,
    /// The first adjugate row or column vanishes there, not the condition.
    AdjugateVanishes,
    /// Every adjugate row or column vanishes (rank <= 1).
    RankDeficient,
}

#[derive(Debug, Clone)]
pub struct CuspReport {
    pub l1: f64,
    pub cusps: Vec<CuspPoint>,
    pub rejected: Vec<(CuspPoint, Rejection)>,
    /// Elimination passes (unshifted, quarter-turn shifted).
    pub pairs: PairReport,
}

impl CuspReport {
    pub fn excluded_axis(&self) -> impl Iterator<Item = &CuspPoint> {
        self.rejected.iter().filter(|(_, r)| *r == Rejection::Axis).map(|(c, _)| c)
    }
}

/// Tan-half form of the singularity condition (times `L2 L3`).
pub fn singularity_bipoly(geom: &ManipulatorGeometry, l1: f64) -> Result<BiPoly> {
    Ok(trig_to_bipoly(&ClosureTrig::for_slice(geom, l1)?.singularity()))
}

/// Tan-half form of the triple-coalescence condition with the first
/// adjugate row and column.
pub fn cusp_bipoly(geom: &ManipulatorGeometry, l1: f64) -> Result<BiPoly> {
    Ok(trig_to_bipoly(&ClosureTrig::for_slice(geom, l1)?.cusp()))
}

fn to_point(geom: &ManipulatorGeometry, l1: f64, r: &PairRoot) -> CuspPoint {
    let pose = SlicePose::new(l1, r.alpha, r.theta1);
    let c = config_from_slice(geom, &pose);
    CuspPoint {
        l1,
        alpha: pose.alpha,
        theta1: pose.theta1,
        l2: c.lengths[1],
        l3: c.lengths[2],
        t: tan_half(pose.alpha),
        t1: tan_half(pose.theta1),
        residual_singular: r.residual_a,
        residual_cusp: r.residual_b,
        excluded_axis: c.is_degenerate(),
    }
}

/// Common zeros on a collapsed leg have high multiplicity and are located
/// less accurately than simple ones; within this angular distance of an
/// analytic collapsed-leg pose they are identified with it.
pub const AXIS_SNAP: f64 = 1e-5;

fn classify(
    geom: &ManipulatorGeometry,
    p: &mut CuspPoint,
    axis: &[(usize, SlicePose)],
    kernel_tol: f64,
) -> Option<Rejection> {
    let snap = axis.iter().find(|(_, a)| {
        angle_distance(a.alpha, p.alpha) < AXIS_SNAP && angle_distance(a.theta1, p.theta1) < AXIS_SNAP
    });
    if let Some((_, a)) = snap {
        let r = PairRoot { alpha: a.alpha, theta1: a.theta1, ..Default::default() };
        let snapped = to_point(geom, p.l1, &r);
        *p = CuspPoint { residual_singular: p.residual_singular, residual_cusp: p.residual_cusp, excluded_axis: true, ..snapped };
    }
    if p.excluded_axis {
        return Some(Rejection::Axis);
    }
    let c = config_from_slice(geom, &p.pose());
    if kernel_vectors(&k_factors(geom, &c)).degenerate {
        return Some(Rejection::RankDeficient);
    }
    match normalized_cusp_residual(geom, &c) {
        Some(r) if r < kernel_tol => None,
        Some(_) => Some(Rejection::AdjugateVanishes),
        None => Some(Rejection::RankDeficient),
    }
}

/// Full cusp computation for one slice, with the rejected common zeros.
pub fn find_cusps_report(geom: &ManipulatorGeometry, l1: f64, opts: &CuspOptions) -> Result<CuspReport> {
    let cl = ClosureTrig::for_slice(geom, l1)?;
    let sing = cl.singularity();
    let cusp = cl.cusp();
    let pair_opts = PairOptions { residual_tol: opts.residual_tol, dedupe_tol: opts.dedupe_tol, method: opts.method };
    let pairs = match solve_trig_pair(&sing, &cusp, &pair_opts) {
        Err(Error::SharedFactor) | Err(Error::ZeroPolynomial) => return Err(Error::DegenerateSlice { l1 }),
        r => r?,
    };
    let axis = collapsed_leg_poses(geom, l1);
    let mut cusps = Vec::new();
    let mut rejected = Vec::new();
    for r in &pairs.roots {
        let mut p = to_point(geom, l1, r);
        match classify(geom, &mut p, &axis, opts.kernel_tol) {
            None => cusps.push(p),
            Some(why) => rejected.push((p, why)),
        }
    }
    Ok(CuspReport { l1, cusps, rejected, pairs })
}

/// Cusp points of the slice `L1 = l1`, sorted by `(t1, t)`.
pub fn find_cusps(geom: &ManipulatorGeometry, l1: f64) -> Result<Vec<CuspPoint>> {
    Ok(find_cusps_report(geom, l1, &CuspOptions::default())?.cusps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinecore::{cusp_scalar, singularity_polynomial};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn reference_degrees() {
        let g = ManipulatorGeometry::reference();
        let s = singularity_bipoly(&g, 14.98).unwrap();
        assert_eq!((s.deg_t(), s.deg_t1()), (Some(4), Some(4)));
        let c = cusp_bipoly(&g, 14.98).unwrap();
        assert!(c.deg_t().unwrap() <= 12 && c.deg_t1().unwrap() <= 12);
    }

    #[test]
    fn singularity_sign_matches_numeric() {
        let g = ManipulatorGeometry::reference();
        let s = singularity_bipoly(&g, 14.98).unwrap().to_float();
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..100 {
            let (a, th): (f64, f64) = (rng.gen_range(-3.1..3.1), rng.gen_range(-3.1..3.1));
            let v = s.eval((a / 2.0).tan(), (th / 2.0).tan());
            let (w, m) = singularity_polynomial(&g, &SlicePose::new(14.98, a, th));
            if w.abs() > 1e-9 * m {
                assert_eq!(v.signum(), w.signum());
            }
        }
    }

    #[test]
    fn congruent_platform_is_singular_for_every_translation() {
        // base and platform congruent: at alpha = 0 all legs are parallel
        let g = ManipulatorGeometry::new(5.0, 1.0, 4.0, [5.0, 32f64.sqrt(), 17f64.sqrt()], crate::BetaSign::Positive)
            .unwrap();
        let s = singularity_bipoly(&g, 3.0).unwrap().to_float();
        for t1 in [-3.0, -0.4, 0.0, 1.0, 2.5] {
            // the rationalized platform offset leaves a rounding-level remainder
            assert!(s.eval(0.0, t1).abs() < 1e-13 * s.magnitude(1.0, t1));
            assert!(s.residual(0.5, t1) > 1e-3);
        }
    }

    #[test]
    fn cusp_polynomial_sign_matches_scalar_with_first_row_and_column() {
        let g = ManipulatorGeometry::reference();
        let c = cusp_bipoly(&g, 14.98).unwrap().to_float();
        let mut rng = ChaCha8Rng::seed_from_u64(22);
        let mut checked = 0;
        for _ in 0..100 {
            let (a, th): (f64, f64) = (rng.gen_range(-3.1..3.1), rng.gen_range(-3.1..3.1));
            let conf = config_from_slice(&g, &SlicePose::new(14.98, a, th));
            let Ok(cs) = cusp_scalar(&g, &conf) else { continue };
            if cs.kernel.row != 0 || cs.kernel.col != 0 {
                continue;
            }
            let (t, t1) = ((a / 2.0).tan(), (th / 2.0).tan());
            let v = c.eval(t, t1);
            if v.abs() > 1e-9 * c.magnitude(t, t1) {
                assert_eq!(v.signum(), cs.value.signum());
                checked += 1;
            }
        }
        assert!(checked > 80);
    }

    #[test]
    fn reference_slice_has_six_cusps() {
        let g = ManipulatorGeometry::reference();
        let rep = find_cusps_report(&g, 14.98, &CuspOptions::default()).unwrap();
        assert_eq!(rep.cusps.len(), 6, "{:#?}", rep.cusps);
        for c in &rep.cusps {
            assert!(c.residual_singular < 1e-10 && c.residual_cusp < 1e-10);
            assert!(c.alpha >= -PI && c.alpha < PI);
            assert!(c.l2 > 0.0 && c.l3 > 0.0);
        }
        let mut sorted = rep.cusps.clone();
        sorted.sort_by(|a, b| a.t1.total_cmp(&b.t1).then(a.t.total_cmp(&b.t)));
        assert_eq!(sorted, rep.cusps);
    }
}
