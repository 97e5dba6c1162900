//! Exact trigonometric polynomials of a fixed-`L1` slice.
//!
//! Every length is converted to an exact rational and the whole set is put
//! over a common denominator, so the polynomials below have integer
//! coefficients. They are homogeneous in the lengths, so this uniform scaling
//! leaves their zero sets unchanged.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::{BetaSign, ManipulatorGeometry};
use crate::polysolve::numbers::{rational_from_decimal, rational_sqrt};
use crate::polysolve::TrigPoly;

/// Relative accuracy of the rational stand-in for `d3 sin(beta)`, the only
/// constant that is irrational in general.
pub const PLATFORM_REL_TOL: f64 = 1e-15;

/// Integer lengths sharing the common denominator `denominator`.
#[derive(Debug, Clone, PartialEq)]
pub struct SliceConstants {
    pub denominator: BigInt,
    pub a2x: BigInt,
    pub a3x: BigInt,
    pub a3y: BigInt,
    pub d1: BigInt,
    /// `d3 cos(beta)` (exact).
    pub p: BigInt,
    /// `d3 sin(beta)` (rationalised within `PLATFORM_REL_TOL`).
    pub q: BigInt,
    pub l1: BigInt,
    pub extra: Vec<BigInt>,
}

/// Exact platform offsets `(p, q)` of `B3` in the platform frame.
pub fn platform_offsets(geom: &ManipulatorGeometry) -> Result<(BigRational, BigRational)> {
    let [d1, d2, d3] = geom.d().map(rational_from_decimal);
    let (d1, d2, d3) = (d1?, d2?, d3?);
    let p = (&d1 * &d1 + &d3 * &d3 - &d2 * &d2) / (&d1 * BigInt::from(2));
    let q2 = &d3 * &d3 - &p * &p;
    let q = if q2.is_positive() {
        rational_sqrt(&q2, PLATFORM_REL_TOL)
    } else {
        BigRational::zero()
    };
    let q = match geom.beta_sign() {
        BetaSign::Positive => q,
        BetaSign::Negative => -q,
    };
    Ok((p, q))
}

impl SliceConstants {
    pub fn new(geom: &ManipulatorGeometry, l1: f64, extra: &[f64]) -> Result<Self> {
        let (p, q) = platform_offsets(geom)?;
        let mut vals = vec![
            rational_from_decimal(geom.a2x())?,
            rational_from_decimal(geom.a3x())?,
            rational_from_decimal(geom.a3y())?,
            rational_from_decimal(geom.d()[0])?,
            p,
            q,
            rational_from_decimal(l1)?,
        ];
        for &e in extra {
            vals.push(rational_from_decimal(e)?);
        }
        let den = vals.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let mut ints: Vec<BigInt> = vals
            .iter()
            .map(|v| v.numer() * (&den / v.denom()))
            .collect();
        let extra = ints.split_off(7);
        let mut it = ints.into_iter();
        let mut next = || it.next().expect("seven constants");
        Ok(Self {
            denominator: den,
            a2x: next(),
            a3x: next(),
            a3y: next(),
            d1: next(),
            p: next(),
            q: next(),
            l1: next(),
            extra,
        })
    }
}

fn k(c: &BigInt) -> TrigPoly {
    TrigPoly::constant(c.clone())
}

/// `X2, Y2, X3, Y3` (leg vectors of legs 2 and 3) plus `cos/sin theta1`.
#[derive(Debug, Clone)]
pub struct ClosureTrig {
    pub x2: TrigPoly,
    pub y2: TrigPoly,
    pub x3: TrigPoly,
    pub y3: TrigPoly,
    pub c1: TrigPoly,
    pub s1: TrigPoly,
    pub consts: SliceConstants,
}

impl ClosureTrig {
    pub fn new(consts: SliceConstants) -> Self {
        let ca = TrigPoly::cos_alpha();
        let sa = TrigPoly::sin_alpha();
        let c1 = TrigPoly::cos_theta1();
        let s1 = TrigPoly::sin_theta1();
        let c = &consts;
        let bx = c1.scale(&c.l1);
        let by = s1.scale(&c.l1);
        let x2 = bx.add(&ca.scale(&c.d1)).sub(&k(&c.a2x));
        let y2 = by.add(&sa.scale(&c.d1));
        let x3 = bx
            .add(&ca.scale(&c.p))
            .sub(&sa.scale(&c.q))
            .sub(&k(&c.a3x));
        let y3 = by
            .add(&sa.scale(&c.p))
            .add(&ca.scale(&c.q))
            .sub(&k(&c.a3y));
        Self { x2, y2, x3, y3, c1, s1, consts }
    }

    pub fn for_slice(geom: &ManipulatorGeometry, l1: f64) -> Result<Self> {
        if !(l1.is_finite() && l1 > 0.0) {
            return Err(Error::InvalidArgument(format!("l1 must be positive, got {l1}")));
        }
        Ok(Self::new(SliceConstants::new(geom, l1, &[])?))
    }

    /// Leg axes concurrent, times `L2 L3`:
    /// `A2x Y2 (Y3 c1 - X3 s1) + (A3x Y3 - A3y X3)(s1 X2 - c1 Y2)`.
    pub fn singularity(&self) -> TrigPoly {
        let c = &self.consts;
        let w3 = self.y3.mul(&self.c1).sub(&self.x3.mul(&self.s1));
        let w2 = self.s1.mul(&self.x2).sub(&self.c1.mul(&self.y2));
        let m3 = self.y3.scale(&c.a3x).sub(&self.x3.scale(&c.a3y));
        self.y2.scale(&c.a2x).mul(&w3).add(&m3.mul(&w2))
    }

    /// The k-factors written through the closure equations.
    pub fn k_factors(&self) -> [TrigPoly; 6] {
        let c = &self.consts;
        let (x2, y2, x3, y3, c1, s1) = (&self.x2, &self.y2, &self.x3, &self.y3, &self.c1, &self.s1);
        let two = |p: TrigPoly| p.scale_i64(2);
        let l1 = &c.l1;
        // L2 L3 s23, L2 s12, L3 s13
        let s23 = y2.mul(x3).sub(&x2.mul(y3));
        let s12 = s1.mul(x2).sub(&c1.mul(y2));
        let s13 = s1.mul(x3).sub(&c1.mul(y3));
        let d32 = &c.a3x - &c.a2x;
        let k1 = two(y2.scale(&d32).add(&s23).sub(&x2.scale(&c.a3y)));
        let k3 = two(y3.scale(&d32).add(&s23).sub(&x3.scale(&c.a3y))).neg();
        let k2 = two(s13.scale(l1).add(&y3.scale(&c.a3x)).sub(&x3.scale(&c.a3y))).neg();
        let k4 = two(s13.add(&s1.scale(&c.a3x)).sub(&c1.scale(&c.a3y))).scale(l1);
        let k5 = two(s12.scale(l1).add(&y2.scale(&c.a2x))).neg();
        let k6 = two(s12.add(&s1.scale(&c.a2x))).scale(l1);
        [k1, k2, k3, k4, k5, k6]
    }

    /// Adjugate of the constraint Jacobian from k-products.
    pub fn adjugate(&self) -> [[TrigPoly; 3]; 3] {
        let [k1, k2, k3, k4, k5, k6] = self.k_factors();
        [
            [k1.mul(&k2), k2.mul(&k5).neg(), k3.mul(&k5)],
            [k3.mul(&k4), k2.mul(&k6), k3.mul(&k6).neg()],
            [k1.mul(&k4).neg(), k4.mul(&k5), k1.mul(&k6)],
        ]
    }

    /// Hessians of the three constraints written through the closure equations.
    pub fn hessians(&self) -> [[[TrigPoly; 3]; 3]; 3] {
        let c = &self.consts;
        let (x2, y2, x3, y3, c1, s1) = (&self.x2, &self.y2, &self.x3, &self.y3, &self.c1, &self.s1);
        let l1 = &c.l1;
        let z = TrigPoly::zero;
        // L2 c21, L3 c31, L2 L3 c23
        let c21 = c1.mul(x2).add(&s1.mul(y2));
        let c31 = c1.mul(x3).add(&s1.mul(y3));
        let c23 = x2.mul(x3).add(&y2.mul(y3));
        let d23 = &c.a2x - &c.a3x;
        let h1 = [
            [c1.scale(&c.a2x).add(&c21).scale(l1), c21.scale(l1).neg(), z()],
            [c21.scale(l1).neg(), x2.scale(&c.a2x).sub(&c21.scale(l1)).neg(), z()],
            [z(), z(), z()],
        ];
        let h2 = [
            [z(), z(), z()],
            [z(), x2.scale(&d23).sub(&c23).sub(&y2.scale(&c.a3y)).neg(), c23.neg()],
            [z(), c23.neg(), x3.scale(&d23).add(&c23).sub(&y3.scale(&c.a3y))],
        ];
        let h3 = [
            [c1.scale(&c.a3x).add(&c31).add(&s1.scale(&c.a3y)).scale(l1), z(), c31.scale(l1).neg()],
            [z(), z(), z()],
            [c31.scale(l1).neg(), z(), c31.scale(l1).sub(&x3.scale(&c.a3x)).sub(&y3.scale(&c.a3y))],
        ];
        [h1, h2, h3].map(|h| h.map(|row| row.map(|e| e.scale_i64(2))))
    }

    /// `v^T (u1 H1 + u2 H2 + u3 H3) v` with `u` row `row` and `v` column `col`
    /// of the adjugate.
    pub fn cusp_with(&self, row: usize, col: usize) -> TrigPoly {
        let adj = self.adjugate();
        let h = self.hessians();
        let u = &adj[row];
        let v: Vec<&TrigPoly> = (0..3).map(|i| &adj[i][col]).collect();
        let mut total = TrigPoly::zero();
        for i in 0..3 {
            // w_i = sum_j M_ij v_j, M = sum_k u_k H_k
            let mut wi = TrigPoly::zero();
            for j in 0..3 {
                let mut mij = TrigPoly::zero();
                for kk in 0..3 {
                    if !h[kk][i][j].is_zero() {
                        mij = mij.add(&u[kk].mul(&h[kk][i][j]));
                    }
                }
                if !mij.is_zero() {
                    wi = wi.add(&mij.mul(v[j]));
                }
            }
            total = total.add(&v[i].mul(&wi));
        }
        total
    }

    /// The triple-coalescence condition with the first adjugate row and column.
    pub fn cusp(&self) -> TrigPoly {
        self.cusp_with(0, 0)
    }
}

/// Closure residuals of legs 2 and 3 for a joint vector `(L1, L2, L3)`:
/// `X2^2 + Y2^2 - L2^2` and `X3^2 + Y3^2 - L3^2`.
pub fn assembly_trig(geom: &ManipulatorGeometry, lengths: [f64; 3]) -> Result<(TrigPoly, TrigPoly)> {
    let consts = SliceConstants::new(geom, lengths[0], &lengths[1..])?;
    let l2 = consts.extra[0].clone();
    let l3 = consts.extra[1].clone();
    let cl = ClosureTrig::new(consts);
    let f2 = cl.x2.square().add(&cl.y2.square()).sub(&TrigPoly::constant(&l2 * &l2));
    let f3 = cl.x3.square().add(&cl.y3.square()).sub(&TrigPoly::constant(&l3 * &l3));
    Ok((f2, f3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{config_from_slice, leg_vectors, SlicePose};
    use crate::kinecore::{hessians_raw, k_factors, kernel_vectors_at, quadratic_form, singularity_polynomial};
    use crate::polysolve::roots::to_f64;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn den_f64(c: &SliceConstants) -> f64 {
        to_f64(&BigRational::from(c.denominator.clone()))
    }

    #[test]
    fn reference_constants() {
        let g = ManipulatorGeometry::reference();
        let c = SliceConstants::new(&g, 14.98, &[]).unwrap();
        let d = den_f64(&c);
        assert_eq!(to_f64(&BigRational::new(c.a2x.clone(), c.denominator.clone())), 15.91);
        let (p, q) = g.b3_platform();
        assert!(((to_f64(&BigRational::from(c.p.clone())) / d) - p).abs() < 1e-14 * p);
        assert!(((to_f64(&BigRational::from(c.q.clone())) / d) - q).abs() < 2e-15 * q);
        assert!(q > 0.0);
    }

    #[test]
    fn closure_matches_leg_vectors() {
        let g = ManipulatorGeometry::reference();
        let cl = ClosureTrig::for_slice(&g, 14.98).unwrap();
        let d = den_f64(&cl.consts);
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..50 {
            let (a, t) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let v = leg_vectors(&g, &SlicePose::new(14.98, a, t));
            for (poly, expect) in [(&cl.x2, v.x2), (&cl.y2, v.y2), (&cl.x3, v.x3), (&cl.y3, v.y3)] {
                let (val, _) = poly.eval_f64(a, t);
                assert!((val / d - expect).abs() < 1e-12 * 40.0);
            }
        }
    }

    #[test]
    fn singularity_matches_numeric_form() {
        let g = ManipulatorGeometry::reference();
        let cl = ClosureTrig::for_slice(&g, 14.98).unwrap();
        let p = cl.singularity();
        assert_eq!(p.orders(), (2, 2));
        let d3 = den_f64(&cl.consts).powi(3);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let (a, t) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let (v, m) = p.eval_f64(a, t);
            let (w, _) = singularity_polynomial(&g, &SlicePose::new(14.98, a, t));
            assert!((v / d3 - w).abs() <= 1e-10 * m / d3);
        }
    }

    #[test]
    fn k_factors_match_numeric() {
        let g = ManipulatorGeometry::reference();
        let cl = ClosureTrig::for_slice(&g, 7.5).unwrap();
        let ks = cl.k_factors();
        let d2 = den_f64(&cl.consts).powi(2);
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for _ in 0..50 {
            let (a, t) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let c = config_from_slice(&g, &SlicePose::new(7.5, a, t));
            let kf = k_factors(&g, &c);
            let num = [kf.k1, kf.k2, kf.k3, kf.k4, kf.k5, kf.k6];
            for (poly, expect) in ks.iter().zip(num) {
                let (v, m) = poly.eval_f64(a, t);
                assert!((v / d2 - expect).abs() <= 1e-10 * m / d2, "{} vs {expect}", v / d2);
            }
        }
    }

    #[test]
    fn cusp_matches_kinecore() {
        let g = ManipulatorGeometry::reference();
        let cl = ClosureTrig::for_slice(&g, 14.98).unwrap();
        let c00 = cl.cusp();
        // trig orders of the reduced cusp polynomial
        assert_eq!(c00.orders(), (6, 6));
        let d14 = den_f64(&cl.consts).powi(14);
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..100 {
            let (a, t) = (rng.gen_range(-PI..PI), rng.gen_range(-PI..PI));
            let c = config_from_slice(&g, &SlicePose::new(14.98, a, t));
            if c.lengths[1] < 1e-3 || c.lengths[2] < 1e-3 {
                continue;
            }
            let kv = kernel_vectors_at(&k_factors(&g, &c), 0, 0);
            let h = hessians_raw(&g, &c.lengths, &c.angles);
            let expect = quadratic_form(&h, &kv.u, &kv.v);
            let (v, m) = c00.eval_f64(a, t);
            assert!((v / d14 - expect).abs() <= 1e-9 * m / d14, "{} vs {expect}", v / d14);
        }
    }

    #[test]
    fn assembly_polynomials_vanish_on_roundtrip() {
        let g = ManipulatorGeometry::reference();
        let pose = SlicePose::new(12.0, 0.7, -1.2);
        let c = config_from_slice(&g, &pose);
        let (f2, f3) = assembly_trig(&g, c.lengths).unwrap();
        assert_eq!(f2.orders(), (1, 1));
        assert_eq!(f3.orders(), (1, 1));
        let (v2, m2) = f2.eval_f64(pose.alpha, pose.theta1);
        let (v3, m3) = f3.eval_f64(pose.alpha, pose.theta1);
        assert!(v2.abs() < 1e-12 * m2);
        assert!(v3.abs() < 1e-12 * m3);
    }
}
