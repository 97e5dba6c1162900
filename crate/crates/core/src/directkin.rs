//! Assembly modes: every platform pose compatible with a joint vector.
//!
//! For fixed `(L1, L2, L3)` the closure of legs 2 and 3 gives two
//! trigonometric polynomials in `(alpha, theta1)`; their common zeros are the
//! assembly modes, found with the same elimination used for cusps.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{config_from_slice, Configuration, ManipulatorGeometry, SlicePose};
use crate::polysolve::system::{solve_trig_pair, PairOptions};
use crate::polysolve::numbers::rational_from_decimal;
use crate::polysolve::{count_real_roots, sylvester_resultant, trig_to_bipoly, ResultantMethod, TrigPoly, UniPoly};
use crate::slicepoly::{assembly_trig, ClosureTrig};

/// Largest number of assembly modes of a 3-RPR manipulator.
pub const MAX_ASSEMBLY_MODES: usize = 6;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssemblyMode {
    pub alpha: f64,
    pub theta1: f64,
    pub config: Configuration,
    /// Largest normalized residual of the two closure polynomials.
    pub residual: f64,
    /// Greater than one when the mode is a repeated solution (the joint
    /// vector lies on a singular curve).
    pub multiplicity: usize,
}

fn check_lengths(geom: &ManipulatorGeometry, lengths: [f64; 3]) -> Result<()> {
    let eps = geom.eps_len();
    for (i, l) in lengths.into_iter().enumerate() {
        if !l.is_finite() {
            return Err(Error::InvalidJoint(format!("L{} = {l}", i + 1)));
        }
        if l <= eps {
            return Err(Error::DegenerateConfiguration { leg: i + 1, length: l });
        }
    }
    Ok(())
}

/// All assembly modes for the joint vector `lengths`, sorted by
/// `(theta1, alpha)`. Unreachable joint vectors give an empty list.
pub fn assembly_modes(geom: &ManipulatorGeometry, lengths: [f64; 3]) -> Result<Vec<AssemblyMode>> {
    check_lengths(geom, lengths)?;
    let (f2, f3) = assembly_trig(geom, lengths)?;
    let report = solve_trig_pair(&f2, &f3, &PairOptions::default())?;
    let mut out = Vec::with_capacity(report.roots.len());
    for r in report.roots {
        let c = config_from_slice(geom, &SlicePose::new(lengths[0], r.alpha, r.theta1));
        let Ok(config) = Configuration::new(geom, lengths, c.angles) else {
            continue;
        };
        out.push(AssemblyMode {
            alpha: r.alpha,
            theta1: r.theta1,
            config,
            residual: r.residual_a.max(r.residual_b),
            multiplicity: r.multiplicity,
        });
    }
    Ok(out)
}

/// Number of assembly modes without locating them.
///
/// Both closure polynomials are linear in `(cos theta1, sin theta1)`, so for
/// a real `alpha` a common zero in `theta1` is unique and real whenever it
/// exists. Eliminating `theta1` instead of `alpha` therefore gives a
/// polynomial in `t = tan(alpha/2)` whose distinct real roots are in one-to-one
/// correspondence with the assembly modes; a drop below the generic degree
/// means one more mode at `alpha = pi`.
pub fn count_assembly_modes(geom: &ManipulatorGeometry, lengths: [f64; 3]) -> Result<usize> {
    check_lengths(geom, lengths)?;
    let (f2, f3) = assembly_trig(geom, lengths)?;
    let a = trig_to_bipoly(&f2).transpose();
    let b = trig_to_bipoly(&f3).transpose();
    let r = match sylvester_resultant(&a, &b, ResultantMethod::EvalInterp) {
        Ok(r) => r,
        // a shared factor means a continuum of modes; fall back to the
        // explicit solver, which reports the isolated ones
        Err(Error::SharedFactor) => return Ok(assembly_modes(geom, lengths)?.len()),
        Err(e) => return Err(e),
    };
    let at_infinity = usize::from(r.degree().unwrap_or(0) < GENERIC_DEGREE);
    Ok(count_real_roots(&r)? + at_infinity)
}

/// Degree in `t` of the `theta1`-eliminant of two closure polynomials.
const GENERIC_DEGREE: usize = 8;

fn scaled_square(x: f64, denominator: &BigInt) -> Result<(BigInt, BigInt)> {
    let r = rational_from_decimal(x)? * BigRational::from_integer(denominator.clone());
    Ok((r.numer() * r.numer(), r.denom() * r.denom()))
}

/// `2 M^2 l_a(N/M)` for the Lagrange basis `l_a` on the nodes `0, 1, 2`.
fn lagrange_weights(n: &BigInt, m: &BigInt) -> [BigInt; 3] {
    let (n1, n2): (BigInt, BigInt) = (n - m, n - m * BigInt::from(2));
    let mid = -(n * &n2 * BigInt::from(2));
    [&n1 * &n2, mid, n * &n1]
}

/// Mode counter for many joint points of one slice.
///
/// `L2` and `L3` enter the closure polynomials only through the constants
/// `-L2^2` and `-L3^2`, so the `theta1`-eliminant is a polynomial of degree at
/// most two in each of `L2^2` and `L3^2`. It is interpolated exactly from nine
/// integer nodes once, and each query evaluates it instead of recomputing a
/// resultant.
#[derive(Debug, Clone)]
pub struct ModeCounter {
    geom: ManipulatorGeometry,
    l1: f64,
    denominator: BigInt,
    nodes: Vec<Vec<UniPoly>>,
    /// `theta1`-leading coefficients of the two closure polynomials at the
    /// squared lengths 0 and 1.
    lead2: [UniPoly; 2],
    lead3: [UniPoly; 2],
}

fn leading_t1(p: &TrigPoly) -> UniPoly {
    trig_to_bipoly(p).transpose().rows().last().cloned().unwrap_or_default()
}

impl ModeCounter {
    pub fn new(geom: &ManipulatorGeometry, l1: f64) -> Result<Self> {
        let cl = ClosureTrig::for_slice(geom, l1)?;
        let base2 = cl.x2.square().add(&cl.y2.square());
        let base3 = cl.x3.square().add(&cl.y3.square());
        let at = |base: &TrigPoly, u: i64| base.sub(&TrigPoly::from_i64(u));
        let mut nodes = Vec::with_capacity(3);
        for u in 0..3 {
            let a = trig_to_bipoly(&at(&base2, u)).transpose();
            let mut row = Vec::with_capacity(3);
            for w in 0..3 {
                let b = trig_to_bipoly(&at(&base3, w)).transpose();
                if a.deg_t() != Some(2) || b.deg_t() != Some(2) {
                    return Err(Error::InvalidArgument("closure polynomials lose degree at an interpolation node".into()));
                }
                row.push(sylvester_resultant(&a, &b, ResultantMethod::EvalInterp)?);
            }
            nodes.push(row);
        }
        Ok(Self {
            geom: geom.clone(),
            l1,
            denominator: cl.consts.denominator.clone(),
            nodes,
            lead2: [leading_t1(&at(&base2, 0)), leading_t1(&at(&base2, 1))],
            lead3: [leading_t1(&at(&base3, 0)), leading_t1(&at(&base3, 1))],
        })
    }

    pub fn l1(&self) -> f64 {
        self.l1
    }

    /// Same result as [`count_assembly_modes`] at `(l1, l2, l3)`.
    pub fn count(&self, l2: f64, l3: f64) -> Result<usize> {
        let lengths = [self.l1, l2, l3];
        check_lengths(&self.geom, lengths)?;
        let (n2, m2) = scaled_square(l2, &self.denominator)?;
        let (n3, m3) = scaled_square(l3, &self.denominator)?;
        // the interpolation identity needs both polynomials at full degree in theta1
        let drops = |lead: &[UniPoly; 2], n: &BigInt, m: &BigInt| {
            lead[0].scale(m).add(&lead[1].sub(&lead[0]).scale(n)).is_zero()
        };
        if drops(&self.lead2, &n2, &m2) || drops(&self.lead3, &n3, &m3) {
            return count_assembly_modes(&self.geom, lengths);
        }
        let wa = lagrange_weights(&n2, &m2);
        let wb = lagrange_weights(&n3, &m3);
        let mut r = UniPoly::zero();
        for (a, row) in wa.iter().zip(&self.nodes) {
            for (b, node) in wb.iter().zip(row) {
                r = r.add(&node.scale(&(a * b)));
            }
        }
        if r.is_zero() {
            return count_assembly_modes(&self.geom, lengths);
        }
        let at_infinity = usize::from(r.degree().unwrap_or(0) < GENERIC_DEGREE);
        Ok(count_real_roots(&r)? + at_infinity)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{angle_distance, constraint_residuals, relative_residual};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    #[test]
    fn unreachable_is_empty() {
        let g = ManipulatorGeometry::reference();
        let l2 = 14.98 + 17.04 + 15.91 + 1.0;
        assert!(assembly_modes(&g, [14.98, l2, 20.0]).unwrap().is_empty());
        assert_eq!(count_assembly_modes(&g, [14.98, l2, 20.0]).unwrap(), 0);
    }

    #[test]
    fn collapsed_leg_is_an_error() {
        let g = ManipulatorGeometry::reference();
        assert!(matches!(
            assembly_modes(&g, [14.98, 0.0, 20.0]),
            Err(Error::DegenerateConfiguration { leg: 2, .. })
        ));
    }

    #[test]
    fn roundtrip_recovers_the_pose() {
        let g = ManipulatorGeometry::reference();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..20 {
            let l1 = rng.gen_range(1.0..30.0);
            let pose = SlicePose::new(l1, rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let c = config_from_slice(&g, &pose);
            let modes = assembly_modes(&g, c.lengths).unwrap();
            assert!(!modes.is_empty() && modes.len() <= MAX_ASSEMBLY_MODES);
            assert!(modes
                .iter()
                .any(|m| angle_distance(m.alpha, pose.alpha) < 1e-8 && angle_distance(m.theta1, pose.theta1) < 1e-8));
            for m in &modes {
                let res = constraint_residuals(&g, &m.config.lengths, &m.config.angles);
                assert!(relative_residual(&g, &res) < 1e-9);
                assert_eq!(m.config.lengths, c.lengths);
            }
        }
    }

    #[test]
    fn fast_count_agrees_with_solver() {
        let g = ManipulatorGeometry::reference();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for _ in 0..300 {
            let l = [rng.gen_range(0.5..35.0), rng.gen_range(0.5..50.0), rng.gen_range(0.5..50.0)];
            assert_eq!(count_assembly_modes(&g, l).unwrap(), assembly_modes(&g, l).unwrap().len(), "{l:?}");
        }
    }

    #[test]
    fn mode_counter_agrees_with_direct_count() {
        let g = ManipulatorGeometry::reference();
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for l1 in [2.0, 14.98, 31.0] {
            let mc = ModeCounter::new(&g, l1).unwrap();
            for _ in 0..100 {
                let (l2, l3) = (rng.gen_range(0.5..50.0), rng.gen_range(0.5..50.0));
                assert_eq!(mc.count(l2, l3).unwrap(), count_assembly_modes(&g, [l1, l2, l3]).unwrap(), "{l1} {l2} {l3}");
            }
        }
    }

    #[test]
    fn mode_counter_on_a_mode_at_alpha_pi() {
        let g = ManipulatorGeometry::reference();
        let c = config_from_slice(&g, &SlicePose::new(14.98, -PI, 0.4));
        let mc = ModeCounter::new(&g, 14.98).unwrap();
        assert_eq!(mc.count(c.lengths[1], c.lengths[2]).unwrap(), assembly_modes(&g, c.lengths).unwrap().len());
    }

    #[test]
    fn mode_at_alpha_pi_is_counted() {
        let g = ManipulatorGeometry::reference();
        let c = config_from_slice(&g, &SlicePose::new(14.98, -PI, 0.4));
        let modes = assembly_modes(&g, c.lengths).unwrap();
        assert!(modes.iter().any(|m| m.alpha == -PI || angle_distance(m.alpha, PI) < 1e-9));
        assert_eq!(count_assembly_modes(&g, c.lengths).unwrap(), modes.len());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(48))]

            #[test]
            fn every_pose_is_one_of_its_modes(l1 in 1.0f64..30.0, alpha in -PI..PI, theta1 in -PI..PI) {
                let g = ManipulatorGeometry::reference();
                let c = config_from_slice(&g, &SlicePose::new(l1, alpha, theta1));
                prop_assume!(c.lengths[1] > 0.5 && c.lengths[2] > 0.5);
                let modes = assembly_modes(&g, c.lengths).unwrap();
                prop_assert!(modes.len() <= MAX_ASSEMBLY_MODES);
                prop_assert!(modes
                    .iter()
                    .any(|m| angle_distance(m.alpha, alpha) < 1e-8 && angle_distance(m.theta1, theta1) < 1e-8));
            }

            #[test]
            fn generic_mode_counts_are_even(l1 in 0.5f64..35.0, l2 in 0.5f64..50.0, l3 in 0.5f64..50.0) {
                let g = ManipulatorGeometry::reference();
                let n = count_assembly_modes(&g, [l1, l2, l3]).unwrap();
                prop_assert!(n.is_multiple_of(2) && n <= MAX_ASSEMBLY_MODES, "{} modes", n);
            }
        }
    }
}
