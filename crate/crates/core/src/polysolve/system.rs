//! Real solutions of a pair of trigonometric polynomials in `(alpha, theta1)`.
//!
//! `t` is eliminated by a resultant, the real roots in `t1` are isolated
//! exactly, and each is back-substituted into the first polynomial. Every
//! candidate is kept only if both polynomials have small normalized residual.
//! The whole pipeline runs twice, the second time on the quarter-turn shifted
//! pair, so that solutions at `alpha = pi` or `theta1 = pi` are not lost.

use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use super::bipoly::{BiPoly, FloatBiPoly};
use super::resultant::{sylvester_resultant, ResultantMethod};
use super::roots::{real_roots, RealRoot};
use super::trig::{trig_to_bipoly, TrigPoly};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};
use crate::geometry::{angle_distance, normalize_angle};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairOptions {
    /// Normalized residual both polynomials must meet.
    pub residual_tol: f64,
    /// Solutions closer than this in both angles are merged.
    pub dedupe_tol: f64,
    pub method: ResultantMethod,
}

impl Default for PairOptions {
    fn default() -> Self {
        Self { residual_tol: 1e-8, dedupe_tol: 1e-6, method: ResultantMethod::default() }
    }
}

/// One accepted common root.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct PairRoot {
    pub alpha: f64,
    pub theta1: f64,
    /// Normalized residuals of the first and second polynomial.
    pub residual_a: f64,
    pub residual_b: f64,
    /// Multiplicity of the resultant root that produced this solution.
    pub multiplicity: usize,
    /// 0 for the unshifted pass, 1 for the quarter-turn pass.
    pub pass: u8,
}

/// Diagnostics of one elimination pass.
#[derive(Debug, Clone)]
pub struct PassReport {
    pub a: BiPoly,
    pub b: BiPoly,
    pub resultant: UniPoly,
    pub t1_roots: Vec<RealRoot>,
    /// Whether any solution was accepted at the corresponding `t1` root.
    pub accepted: Vec<bool>,
}

#[derive(Debug, Clone)]
pub struct PairReport {
    pub roots: Vec<PairRoot>,
    pub passes: Vec<PassReport>,
}

/// Largest relative change of `t1` allowed while polishing a candidate.
const T1_DRIFT: f64 = 1e-9;

struct Candidate {
    t: f64,
    t1: f64,
    residual_a: f64,
    residual_b: f64,
    multiplicity: usize,
}

/// Damped Newton on the 2x2 system; a step is halved until the larger
/// residual drops, and iteration stops when no halving helps.
fn polish(fa: &FloatBiPoly, fb: &FloatBiPoly, mut t: f64, mut t1: f64) -> (f64, f64, f64, f64) {
    let worst = |t: f64, t1: f64| (fa.residual(t, t1), fb.residual(t, t1));
    let (mut ra, mut rb) = worst(t, t1);
    'outer: for _ in 0..40 {
        let (a, at, at1) = fa.eval_grad(t, t1);
        let (b, bt, bt1) = fb.eval_grad(t, t1);
        let det = at * bt1 - at1 * bt;
        if det == 0.0 || !det.is_finite() {
            break;
        }
        let dt = (a * bt1 - at1 * b) / det;
        let dt1 = (at * b - a * bt) / det;
        let mut lambda = 1.0;
        for _ in 0..8 {
            let (nt, nt1) = (t - lambda * dt, t1 - lambda * dt1);
            let (na, nb) = worst(nt, nt1);
            if na.max(nb) < ra.max(rb) {
                (t, t1, ra, rb) = (nt, nt1, na, nb);
                continue 'outer;
            }
            lambda *= 0.5;
        }
        break;
    }
    (t, t1, ra, rb)
}

fn candidates_at(
    a: &BiPoly,
    da: &BiPoly,
    fa: &FloatBiPoly,
    fb: &FloatBiPoly,
    root: &RealRoot,
    tol: f64,
) -> Result<Vec<Candidate>> {
    let mid = root.midpoint();
    let t1 = root.value;
    let at = a.specialize_t1(&mid);
    if at.is_zero() {
        return Ok(Vec::new());
    }
    // critical points as well, so a near-double root pushed off the real
    // axis by the rational approximation of t1 is still seen
    let mut ts: Vec<f64> = real_roots(&at, None)?.iter().map(|r| r.value).collect();
    let dt = da.specialize_t1(&mid);
    if !dt.is_zero() && dt.degree().unwrap_or(0) > 0 {
        ts.extend(real_roots(&dt, None)?.iter().map(|r| r.value));
    }
    let mut out = Vec::new();
    for t in ts {
        let (t, t1p, ra, rb) = polish(fa, fb, t, t1);
        // polishing may only sharpen the isolated t1, never move to another zero
        let drift = (t1p - t1).abs() <= T1_DRIFT * t1.abs().max(1.0);
        if drift && ra < tol && rb < tol {
            out.push(Candidate { t, t1: t1p, residual_a: ra, residual_b: rb, multiplicity: root.multiplicity });
        }
    }
    Ok(out)
}

/// `d/dt` of a bivariate polynomial.
fn derivative_t(p: &BiPoly) -> BiPoly {
    BiPoly::new(
        p.rows()
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, r)| r.scale(&(i as i64).into()))
            .collect(),
    )
}

fn run_pass(a: &TrigPoly, b: &TrigPoly, opts: &PairOptions) -> Result<(PassReport, Vec<Candidate>)> {
    let ba = trig_to_bipoly(a);
    let bb = trig_to_bipoly(b);
    let resultant = match sylvester_resultant(&ba, &bb, opts.method) {
        Err(Error::SharedFactor) => return Err(Error::SharedFactor),
        r => r?,
    };
    let t1_roots = real_roots(&resultant, None)?;
    let fa = ba.to_float();
    let fb = bb.to_float();
    let da = derivative_t(&ba);
    let per_root: Vec<Vec<Candidate>> = t1_roots
        .par_iter()
        .map(|r| candidates_at(&ba, &da, &fa, &fb, r, opts.residual_tol))
        .collect::<Result<_>>()?;
    let accepted = per_root.iter().map(|c| !c.is_empty()).collect();
    let cands = per_root.into_iter().flatten().collect();
    Ok((PassReport { a: ba, b: bb, resultant, t1_roots, accepted }, cands))
}

/// Common real zeros of `a` and `b` on the torus, `a` being the polynomial
/// used for back-substitution. Sorted by `(theta1, alpha)`.
pub fn solve_trig_pair(a: &TrigPoly, b: &TrigPoly, opts: &PairOptions) -> Result<PairReport> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let shifted = (a.shift_quarter_turn(), b.shift_quarter_turn());
    let mut passes = Vec::new();
    let mut found: Vec<(f64, PairRoot)> = Vec::new();
    for (pass, (pa, pb)) in [(a.clone(), b.clone()), shifted].into_iter().enumerate() {
        let (report, cands) = run_pass(&pa, &pb, opts)?;
        let shift = if pass == 0 { 0.0 } else { FRAC_PI_2 };
        for c in cands {
            let alpha = normalize_angle(2.0 * c.t.atan() + shift);
            let theta1 = normalize_angle(2.0 * c.t1.atan() + shift);
            // larger tan-half coordinates are worse conditioned
            let conditioning = c.t.abs().max(c.t1.abs());
            found.push((
                conditioning,
                PairRoot {
                    alpha,
                    theta1,
                    residual_a: c.residual_a,
                    residual_b: c.residual_b,
                    multiplicity: c.multiplicity,
                    pass: pass as u8,
                },
            ));
        }
        passes.push(report);
    }
    found.sort_by(|x, y| x.0.total_cmp(&y.0));
    let mut roots: Vec<PairRoot> = Vec::new();
    for (_, r) in found {
        let dup = roots.iter().any(|k| {
            angle_distance(k.alpha, r.alpha) < opts.dedupe_tol
                && angle_distance(k.theta1, r.theta1) < opts.dedupe_tol
        });
        if !dup {
            roots.push(r);
        }
    }
    roots.sort_by(|x, y| x.theta1.total_cmp(&y.theta1).then(x.alpha.total_cmp(&y.alpha)));
    Ok(PairReport { roots, passes })
}

/// `tan(x / 2)` for an angle in `[-pi, pi)`.
pub fn tan_half(x: f64) -> f64 {
    if x == -PI {
        f64::NEG_INFINITY
    } else {
        (x / 2.0).tan()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_distance;

    fn ca() -> TrigPoly {
        TrigPoly::cos_alpha()
    }
    fn sa() -> TrigPoly {
        TrigPoly::sin_alpha()
    }
    fn c1() -> TrigPoly {
        TrigPoly::cos_theta1()
    }
    fn s1() -> TrigPoly {
        TrigPoly::sin_theta1()
    }

    #[test]
    fn intersecting_lines_in_cosines() {
        // cos(alpha) = 0 and cos(theta1) = 0: four points (+-pi/2, +-pi/2)
        let r = solve_trig_pair(&ca(), &c1(), &PairOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 4);
        for p in &r.roots {
            assert!(angle_distance(p.alpha.abs(), FRAC_PI_2) < 1e-12);
            assert!(angle_distance(p.theta1.abs(), FRAC_PI_2) < 1e-12);
        }
    }

    #[test]
    fn roots_at_pi_are_recovered() {
        // sin(alpha) = 0 and sin(theta1) = 0: alpha, theta1 in {0, -pi}
        let r = solve_trig_pair(&sa(), &s1(), &PairOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 4);
        assert!(r.roots.iter().any(|p| p.alpha == -PI && p.theta1 == -PI));
    }

    #[test]
    fn circle_meets_line() {
        // 2 cos(alpha) - 1 = 0 and cos(alpha) + 2 sin(theta1) = 0
        let a = ca().scale_i64(2).sub(&TrigPoly::from_i64(1));
        let b = ca().add(&s1().scale_i64(2));
        let r = solve_trig_pair(&a, &b, &PairOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 4);
        for p in &r.roots {
            assert!((p.alpha.cos() - 0.5).abs() < 1e-12);
            assert!((p.theta1.sin() + 0.25).abs() < 1e-12);
        }
        let mut s = r.roots.clone();
        s.sort_by(|x, y| x.theta1.total_cmp(&y.theta1).then(x.alpha.total_cmp(&y.alpha)));
        assert_eq!(s, r.roots);
    }

    #[test]
    fn tangential_contact_is_found() {
        // cos(alpha) + cos(theta1) = 2 touches (0, 0) only; b = sin(alpha)
        let a = ca().add(&c1()).sub(&TrigPoly::from_i64(2));
        let r = solve_trig_pair(&a, &sa().sub(&s1()), &PairOptions::default()).unwrap();
        assert_eq!(r.roots.len(), 1);
        assert!(r.roots[0].alpha.abs() < 1e-6 && r.roots[0].theta1.abs() < 1e-6);
    }

    #[test]
    fn shared_factor_is_reported() {
        let f = ca().add(&s1());
        let a = f.mul(&sa().add(&TrigPoly::from_i64(3)));
        let b = f.mul(&c1().sub(&TrigPoly::from_i64(5)));
        assert_eq!(solve_trig_pair(&a, &b, &PairOptions::default()).unwrap_err(), Error::SharedFactor);
    }

    #[test]
    fn no_real_solution() {
        let a = ca().add(&TrigPoly::from_i64(2));
        let r = solve_trig_pair(&a, &s1(), &PairOptions::default()).unwrap();
        assert!(r.roots.is_empty());
    }
}
