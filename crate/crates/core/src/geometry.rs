//! Manipulator parameters and the closure equations of a fixed-`L1` slice.
//!
//! The base frame has `A1` at the origin and the x-axis through `A2`. The
//! moving platform is the triangle `B1 B2 B3`; its orientation is the angle
//! `alpha` of `B1 -> B2`, and `B1` sits on leg 1 at angle `theta1`. For a fixed
//! `L1` the pair `(alpha, theta1)` determines everything else.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance on the closure residuals of an on-manifold configuration.
pub const CLOSURE_TOL: f64 = 1e-9;

/// Platform chirality: which side of `B1 B2` the vertex `B3` lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "i8", into = "i8")]
pub enum BetaSign {
    /// Counter-clockwise labelling `B1 -> B2 -> B3`.
    Positive,
    Negative,
}

impl BetaSign {
    pub fn value(self) -> f64 {
        match self {
            BetaSign::Positive => 1.0,
            BetaSign::Negative => -1.0,
        }
    }
}

impl TryFrom<i8> for BetaSign {
    type Error = String;

    fn try_from(v: i8) -> std::result::Result<Self, String> {
        match v {
            1 => Ok(BetaSign::Positive),
            -1 => Ok(BetaSign::Negative),
            other => Err(format!("beta_sign must be 1 or -1, got {other}")),
        }
    }
}

impl From<BetaSign> for i8 {
    fn from(s: BetaSign) -> i8 {
        match s {
            BetaSign::Positive => 1,
            BetaSign::Negative => -1,
        }
    }
}

/// On-disk geometry description.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeometryFile {
    pub a2x: f64,
    pub a3x: f64,
    pub a3y: f64,
    pub d1: f64,
    pub d2: f64,
    pub d3: f64,
    #[serde(default = "default_sign")]
    pub beta_sign: BetaSign,
    /// Accept platforms whose three joints are collinear (`beta` = 0 or pi).
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub allow_collinear: bool,
}

fn default_sign() -> BetaSign {
    BetaSign::Positive
}

/// Validated 3-RPR geometry.
///
/// `d1 = |B1B2|`, `d2 = |B2B3|`, `d3 = |B3B1|`. The platform vertex `B3` has
/// platform-frame coordinates `(d3 cos beta, d3 sin beta)` relative to `B1`
/// with `B2` on the platform x-axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "GeometryFile", into = "GeometryFile")]
pub struct ManipulatorGeometry {
    a2x: f64,
    a3x: f64,
    a3y: f64,
    d1: f64,
    d2: f64,
    d3: f64,
    beta_sign: BetaSign,
    allow_collinear: bool,
    beta: f64,
}

impl ManipulatorGeometry {
    pub fn new(a2x: f64, a3x: f64, a3y: f64, d: [f64; 3], beta_sign: BetaSign) -> Result<Self> {
        GeometryFile {
            a2x,
            a3x,
            a3y,
            d1: d[0],
            d2: d[1],
            d3: d[2],
            beta_sign,
            allow_collinear: false,
        }
        .try_into()
    }

    /// The manipulator of the reference study: `A2 = (15.91, 0)`, `A3 = (0, 10)`,
    /// sides `(17.04, 16.54, 20.84)`.
    pub fn reference() -> Self {
        Self::new(15.91, 0.0, 10.0, [17.04, 16.54, 20.84], BetaSign::Positive)
            .expect("reference geometry is valid")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GeometryFile =
            serde_json::from_str(text).map_err(|e| Error::InvalidGeometry(e.to_string()))?;
        file.try_into()
    }

    pub fn to_file(&self) -> GeometryFile {
        self.clone().into()
    }

    pub fn a2x(&self) -> f64 {
        self.a2x
    }
    pub fn a3x(&self) -> f64 {
        self.a3x
    }
    pub fn a3y(&self) -> f64 {
        self.a3y
    }
    pub fn d(&self) -> [f64; 3] {
        [self.d1, self.d2, self.d3]
    }
    pub fn beta_sign(&self) -> BetaSign {
        self.beta_sign
    }
    pub fn beta(&self) -> f64 {
        self.beta
    }
    /// Length multiplying `cos(alpha)` in the closure equations (`= d1`).
    pub fn b1(&self) -> f64 {
        self.d1
    }
    /// Length multiplying `cos(alpha + beta)` in the closure equations (`= d3`).
    pub fn b3(&self) -> f64 {
        self.d3
    }

    /// Platform-frame coordinates of `B3` relative to `B1`.
    pub fn b3_platform(&self) -> (f64, f64) {
        let p = (self.d1 * self.d1 + self.d3 * self.d3 - self.d2 * self.d2) / (2.0 * self.d1);
        (p, self.d3 * self.beta.sin())
    }

    /// Largest geometric length; tolerances are relative to it.
    pub fn scale(&self) -> f64 {
        [self.a2x, self.a3x.abs(), self.a3y.abs(), self.d1, self.d2, self.d3]
            .into_iter()
            .fold(0.0, f64::max)
    }

    /// Leg lengths below this are treated as collapsed.
    pub fn eps_len(&self) -> f64 {
        1e-9 * self.scale()
    }

    /// Same geometry with every length multiplied by `k`.
    pub fn scaled(&self, k: f64) -> Result<Self> {
        let mut f = self.to_file();
        for v in [&mut f.a2x, &mut f.a3x, &mut f.a3y, &mut f.d1, &mut f.d2, &mut f.d3] {
            *v *= k;
        }
        f.try_into()
    }
}

impl TryFrom<GeometryFile> for ManipulatorGeometry {
    type Error = Error;

    fn try_from(f: GeometryFile) -> Result<Self> {
        let all = [f.a2x, f.a3x, f.a3y, f.d1, f.d2, f.d3];
        if all.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidGeometry("non-finite parameter".into()));
        }
        if f.a2x <= 0.0 {
            return Err(Error::InvalidGeometry(format!("a2x must be positive, got {}", f.a2x)));
        }
        if f.d1 <= 0.0 || f.d2 <= 0.0 || f.d3 <= 0.0 {
            return Err(Error::InvalidGeometry("platform sides must be positive".into()));
        }
        let beta = if f.allow_collinear {
            platform_angle_closed([f.d1, f.d2, f.d3], f.beta_sign)?
        } else {
            platform_angle([f.d1, f.d2, f.d3], f.beta_sign)?
        };
        Ok(Self {
            a2x: f.a2x,
            a3x: f.a3x,
            a3y: f.a3y,
            d1: f.d1,
            d2: f.d2,
            d3: f.d3,
            beta_sign: f.beta_sign,
            allow_collinear: f.allow_collinear,
            beta,
        })
    }
}

impl From<ManipulatorGeometry> for GeometryFile {
    fn from(g: ManipulatorGeometry) -> Self {
        GeometryFile {
            a2x: g.a2x,
            a3x: g.a3x,
            a3y: g.a3y,
            d1: g.d1,
            d2: g.d2,
            d3: g.d3,
            beta_sign: g.beta_sign,
            allow_collinear: g.allow_collinear,
        }
    }
}

fn cos_platform_angle(d: [f64; 3]) -> f64 {
    let [d1, d2, d3] = d;
    (d1 * d1 + d3 * d3 - d2 * d2) / (2.0 * d1 * d3)
}

/// Signed angle between `B1B2` and `B1B3` from the law of cosines.
///
/// Fails unless the sides satisfy the strict triangle inequality.
pub fn platform_angle(d: [f64; 3], sign: BetaSign) -> Result<f64> {
    let [d1, d2, d3] = d;
    let strict = (d1 - d3).abs() < d2 && d2 < d1 + d3;
    let c = cos_platform_angle(d);
    if !strict || c.abs() >= 1.0 {
        return Err(Error::DegeneratePlatform { d1, d2, d3 });
    }
    Ok(sign.value() * c.acos())
}

/// Like [`platform_angle`] but accepts collinear platforms (`beta` = 0 or pi).
pub fn platform_angle_closed(d: [f64; 3], sign: BetaSign) -> Result<f64> {
    let [d1, d2, d3] = d;
    let c = cos_platform_angle(d);
    // Collinear inputs such as (1.3, 0.9, 0.4) land a few ulps outside [-1, 1].
    if c.abs() > 1.0 + 1e-12 {
        return Err(Error::DegeneratePlatform { d1, d2, d3 });
    }
    Ok(sign.value() * c.clamp(-1.0, 1.0).acos())
}

/// Wraps an angle into `[-pi, pi)`.
pub fn normalize_angle(x: f64) -> f64 {
    let y = x - 2.0 * PI * ((x + PI) / (2.0 * PI)).floor();
    if y >= PI {
        y - 2.0 * PI
    } else {
        y
    }
}

/// Absolute angular difference modulo `2 pi`.
pub fn angle_distance(a: f64, b: f64) -> f64 {
    normalize_angle(a - b).abs()
}

/// Reduced slice coordinates `(L1, alpha, theta1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SlicePose {
    pub l1: f64,
    pub alpha: f64,
    pub theta1: f64,
}

impl SlicePose {
    pub fn new(l1: f64, alpha: f64, theta1: f64) -> Self {
        Self {
            l1,
            alpha: normalize_angle(alpha),
            theta1: normalize_angle(theta1),
        }
    }
}

/// Coordinates of a fixed-`L1` slice of joint space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointPoint {
    pub l2: f64,
    pub l3: f64,
}

/// `(L2 cos th2, L2 sin th2, L3 cos th3, L3 sin th3)` solved from the closure
/// equations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegVectors {
    pub x2: f64,
    pub y2: f64,
    pub x3: f64,
    pub y3: f64,
}

pub fn leg_vectors(geom: &ManipulatorGeometry, pose: &SlicePose) -> LegVectors {
    let (s1, c1) = pose.theta1.sin_cos();
    let (sa, ca) = pose.alpha.sin_cos();
    let (sab, cab) = (pose.alpha + geom.beta).sin_cos();
    let bx = pose.l1 * c1;
    let by = pose.l1 * s1;
    LegVectors {
        x2: bx + geom.b1() * ca - geom.a2x,
        y2: by + geom.b1() * sa,
        x3: bx + geom.b3() * cab - geom.a3x,
        y3: by + geom.b3() * sab - geom.a3y,
    }
}

/// Full configuration `(L, theta)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Configuration {
    pub lengths: [f64; 3],
    pub angles: [f64; 3],
    /// Legs whose length is below the geometry's `eps_len`; their angle is
    /// arbitrary and the constraints are not differentiable there.
    pub degenerate: [bool; 3],
}

impl Configuration {
    /// Checks the closure residuals before accepting `(lengths, angles)`.
    pub fn new(geom: &ManipulatorGeometry, lengths: [f64; 3], angles: [f64; 3]) -> Result<Self> {
        if lengths.iter().any(|l| !(l.is_finite() && *l >= 0.0)) {
            return Err(Error::InvalidJoint(format!("{lengths:?}")));
        }
        let res = constraint_residuals(geom, &lengths, &angles);
        let worst = relative_residual(geom, &res);
        if worst > CLOSURE_TOL {
            return Err(Error::OffManifold { residual: worst });
        }
        let eps = geom.eps_len();
        Ok(Self {
            lengths,
            angles: angles.map(normalize_angle),
            degenerate: lengths.map(|l| l < eps),
        })
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate.iter().any(|&d| d)
    }

    pub fn joint_point(&self) -> JointPoint {
        JointPoint {
            l2: self.lengths[1],
            l3: self.lengths[2],
        }
    }
}

/// Largest `|Gamma_i| / d_i^2`.
pub fn relative_residual(geom: &ManipulatorGeometry, res: &[f64; 3]) -> f64 {
    let d = geom.d();
    (0..3).map(|i| res[i].abs() / (d[i] * d[i])).fold(0.0, f64::max)
}

pub fn config_from_slice(geom: &ManipulatorGeometry, pose: &SlicePose) -> Configuration {
    let v = leg_vectors(geom, pose);
    let l2 = v.x2.hypot(v.y2);
    let l3 = v.x3.hypot(v.y3);
    let eps = geom.eps_len();
    Configuration {
        lengths: [pose.l1, l2, l3],
        angles: [
            normalize_angle(pose.theta1),
            normalize_angle(v.y2.atan2(v.x2)),
            normalize_angle(v.y3.atan2(v.x3)),
        ],
        degenerate: [pose.l1 < eps, l2 < eps, l3 < eps],
    }
}

/// Recovers `(L1, alpha, theta1)` from a configuration.
pub fn slice_pose(geom: &ManipulatorGeometry, config: &Configuration) -> SlicePose {
    let [b1, b2, _] = platform_vertices(geom, &config.lengths, &config.angles);
    SlicePose::new(config.lengths[0], (b2[1] - b1[1]).atan2(b2[0] - b1[0]), config.angles[0])
}

/// Positions of `B1, B2, B3` in the base frame.
pub fn platform_vertices(
    geom: &ManipulatorGeometry,
    lengths: &[f64; 3],
    angles: &[f64; 3],
) -> [[f64; 2]; 3] {
    let [l1, l2, l3] = *lengths;
    let [t1, t2, t3] = *angles;
    [
        [l1 * t1.cos(), l1 * t1.sin()],
        [geom.a2x + l2 * t2.cos(), l2 * t2.sin()],
        [geom.a3x + l3 * t3.cos(), geom.a3y + l3 * t3.sin()],
    ]
}

/// The three distance constraints `|b2-b1|^2 - d1^2`, `|b3-b2|^2 - d2^2`,
/// `|b1-b3|^2 - d3^2` at an arbitrary `(L, theta)`.
pub fn constraint_residuals(
    geom: &ManipulatorGeometry,
    lengths: &[f64; 3],
    angles: &[f64; 3],
) -> [f64; 3] {
    let [b1, b2, b3] = platform_vertices(geom, lengths, angles);
    let dist2 = |p: [f64; 2], q: [f64; 2]| (p[0] - q[0]).powi(2) + (p[1] - q[1]).powi(2);
    let d = geom.d();
    [
        dist2(b2, b1) - d[0] * d[0],
        dist2(b3, b2) - d[1] * d[1],
        dist2(b1, b3) - d[2] * d[2],
    ]
}

/// Points of `|P| = r0` at distance `r` from `c`.
fn circle_intersections(r0: f64, c: [f64; 2], r: f64) -> Vec<[f64; 2]> {
    let d2 = c[0] * c[0] + c[1] * c[1];
    let d = d2.sqrt();
    if d == 0.0 {
        return Vec::new();
    }
    // foot of the chord along c, then half-chord length
    let a = (r0 * r0 - r * r + d2) / (2.0 * d);
    let h2 = r0 * r0 - a * a;
    if h2 < 0.0 {
        return Vec::new();
    }
    let h = h2.sqrt();
    let (ux, uy) = (c[0] / d, c[1] / d);
    let mut out = vec![[a * ux - h * uy, a * uy + h * ux]];
    if h > 0.0 {
        out.push([a * ux + h * uy, a * uy - h * ux]);
    }
    out
}

/// Slice poses where leg 2 or leg 3 collapses (`B2 = A2` or `B3 = A3`),
/// tagged with the leg number.
pub fn collapsed_leg_poses(geom: &ManipulatorGeometry, l1: f64) -> Vec<(usize, SlicePose)> {
    let mut out = Vec::new();
    for b1 in circle_intersections(l1, [geom.a2x, 0.0], geom.d1) {
        let alpha = (-b1[1]).atan2(geom.a2x - b1[0]);
        out.push((2, SlicePose::new(l1, alpha, b1[1].atan2(b1[0]))));
    }
    for b1 in circle_intersections(l1, [geom.a3x, geom.a3y], geom.d3) {
        let alpha = (geom.a3y - b1[1]).atan2(geom.a3x - b1[0]) - geom.beta;
        out.push((3, SlicePose::new(l1, alpha, b1[1].atan2(b1[0]))));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn equilateral_platform_angle() {
        let b = platform_angle([1.0, 1.0, 1.0], BetaSign::Positive).unwrap();
        assert!((b - PI / 3.0).abs() < 1e-15);
    }

    #[test]
    fn collinear_platform_is_rejected() {
        assert!(matches!(
            platform_angle([1.0, 2.0, 1.0], BetaSign::Positive),
            Err(Error::DegeneratePlatform { .. })
        ));
        assert!(ManipulatorGeometry::new(3.0, 1.1, 2.7, [1.3, 0.9, 0.4], BetaSign::Positive).is_err());
    }

    #[test]
    fn collinear_platform_opt_in() {
        let g = ManipulatorGeometry::from_json(
            r#"{"a2x":3,"a3x":1.1,"a3y":2.7,"d1":1.3,"d2":0.9,"d3":0.4,"allow_collinear":true}"#,
        )
        .unwrap();
        assert_eq!(g.beta(), 0.0);
    }

    #[test]
    fn reference_platform_angle() {
        // law of cosines: acos(451.0956 / 710.2272), evaluated independently
        let c = (17.04f64.powi(2) + 20.84f64.powi(2) - 16.54f64.powi(2)) / (2.0 * 17.04 * 20.84);
        assert!((c - 451.0956 / 710.2272).abs() < 1e-15);
        let b = platform_angle([17.04, 16.54, 20.84], BetaSign::Positive).unwrap();
        assert!((b - 0.882_603_109_764_431_55).abs() < 1e-14, "{b}");
        let neg = platform_angle([17.04, 16.54, 20.84], BetaSign::Negative).unwrap();
        assert_eq!(neg, -b);
    }

    #[test]
    fn geometry_json_round_trip() {
        let text = r#"{"a2x": 15.91, "a3x": 0.0, "a3y": 10.0, "d1": 17.04, "d2": 16.54, "d3": 20.84, "beta_sign": 1}"#;
        let g = ManipulatorGeometry::from_json(text).unwrap();
        assert_eq!(g, ManipulatorGeometry::reference());
        let back = serde_json::to_string(&g).unwrap();
        assert_eq!(ManipulatorGeometry::from_json(&back).unwrap(), g);
        assert!(ManipulatorGeometry::from_json(&text.replace("\"beta_sign\": 1", "\"beta_sign\": 2")).is_err());
    }

    #[test]
    fn collapsed_leg_two() {
        // a2x = b1 with L1 = 0 and alpha = 0 puts B2 on A2
        let g = ManipulatorGeometry::new(2.0, 0.5, 3.0, [2.0, 2.5, 2.2], BetaSign::Positive).unwrap();
        for th in [-2.0, 0.3, 1.7] {
            let pose = SlicePose::new(0.0, 0.0, th);
            let v = leg_vectors(&g, &pose);
            assert_eq!((v.x2, v.y2), (0.0, 0.0));
            let c = config_from_slice(&g, &pose);
            assert!(c.degenerate[1]);
            assert!(!c.degenerate[2]);
        }
    }

    #[test]
    fn reference_leg_vectors() {
        let g = ManipulatorGeometry::reference();
        let v = leg_vectors(&g, &SlicePose::new(14.98, 0.0, PI / 2.0));
        let beta = g.beta();
        // direct evaluation of the four closure formulas
        let expect = [
            14.98 * (PI / 2.0).cos() + 17.04 - 15.91,
            14.98,
            14.98 * (PI / 2.0).cos() + 20.84 * beta.cos(),
            14.98 + 20.84 * beta.sin() - 10.0,
        ];
        for (a, b) in [v.x2, v.y2, v.x3, v.y3].iter().zip(expect) {
            assert!((a - b).abs() < 1e-12, "{a} vs {b}");
        }
    }

    #[test]
    fn reference_config_from_slice() {
        let g = ManipulatorGeometry::reference();
        let c = config_from_slice(&g, &SlicePose::new(14.98, 0.3, 1.1));
        let b = g.beta();
        let x2 = 14.98 * 1.1f64.cos() + 17.04 * 0.3f64.cos() - 15.91;
        let y2 = 14.98 * 1.1f64.sin() + 17.04 * 0.3f64.sin();
        let x3 = 14.98 * 1.1f64.cos() + 20.84 * (0.3 + b).cos();
        let y3 = 14.98 * 1.1f64.sin() + 20.84 * (0.3 + b).sin() - 10.0;
        assert!((c.lengths[1] - x2.hypot(y2)).abs() < 1e-12);
        assert!((c.lengths[2] - x3.hypot(y3)).abs() < 1e-12);
        assert!((c.angles[1] - y2.atan2(x2)).abs() < 1e-12);
        assert!((c.angles[2] - y3.atan2(x3)).abs() < 1e-12);
        let res = constraint_residuals(&g, &c.lengths, &c.angles);
        assert!(relative_residual(&g, &res) < 1e-12);
    }

    #[test]
    fn parallel_legs_residual() {
        let g = ManipulatorGeometry::reference();
        let half = PI / 2.0;
        let r = constraint_residuals(&g, &[10.0; 3], &[half; 3]);
        // 15.91^2 - 17.04^2 = 253.1281 - 290.3616
        assert!((r[0] - (-37.2335)).abs() < 1e-9, "{}", r[0]);
    }

    #[test]
    fn perturbed_config_leaves_manifold() {
        let g = ManipulatorGeometry::reference();
        let c = config_from_slice(&g, &SlicePose::new(14.98, 0.3, 1.1));
        let mut angles = c.angles;
        angles[0] += 0.1;
        let r = constraint_residuals(&g, &c.lengths, &angles);
        assert!(r.iter().any(|v| v.abs() > 1e-3));
        assert!(matches!(Configuration::new(&g, c.lengths, angles), Err(Error::OffManifold { .. })));
        assert!(Configuration::new(&g, c.lengths, c.angles).is_ok());
    }

    #[test]
    fn normalize_range() {
        assert_eq!(normalize_angle(PI), -PI);
        assert_eq!(normalize_angle(-PI), -PI);
        assert!((normalize_angle(3.0 * PI + 0.5) - (-PI + 0.5)).abs() < 1e-12);
        assert!((angle_distance(PI - 0.1, -PI + 0.1) - 0.2).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn slice_round_trip(l1 in 0.5f64..40.0, a in -PI..PI, t in -PI..PI) {
            let g = ManipulatorGeometry::reference();
            let pose = SlicePose::new(l1, a, t);
            let c = config_from_slice(&g, &pose);
            prop_assume!(!c.is_degenerate());
            let res = constraint_residuals(&g, &c.lengths, &c.angles);
            prop_assert!(relative_residual(&g, &res) < 1e-9);
            let back = slice_pose(&g, &c);
            prop_assert_eq!(back.l1, l1);
            prop_assert!(angle_distance(back.alpha, pose.alpha) < 1e-12);
            prop_assert!(angle_distance(back.theta1, pose.theta1) < 1e-15);
            let v = leg_vectors(&g, &pose);
            let l2 = c.lengths[1];
            prop_assert!((v.x2 * v.x2 + v.y2 * v.y2 - l2 * l2).abs() <= 1e-12 * l2 * l2.max(1.0));
        }

        #[test]
        fn platform_angle_scale_invariant(d1 in 0.5f64..5.0, d3 in 0.5f64..5.0, f in 0.05f64..0.95, k in 0.01f64..100.0) {
            let lo = (d1 - d3).abs();
            let d2 = lo + f * (d1 + d3 - lo);
            let a = platform_angle([d1, d2, d3], BetaSign::Positive).unwrap();
            let b = platform_angle([k * d1, k * d2, k * d3], BetaSign::Positive).unwrap();
            prop_assert!((a - b).abs() < 1e-9);
            prop_assert!(a > 0.0 && a < PI);
        }
    }

    #[test]
    fn collapsed_leg_poses_close_the_leg() {
        let g = ManipulatorGeometry::reference();
        for (l1, n) in [(2.0, 2), (14.98, 4), (31.0, 2)] {
            let poses = collapsed_leg_poses(&g, l1);
            assert_eq!(poses.len(), n);
            for (leg, p) in poses {
                let v = leg_vectors(&g, &p);
                let len = if leg == 2 { v.x2.hypot(v.y2) } else { v.x3.hypot(v.y3) };
                assert!(len < 1e-12 * g.scale(), "{leg} {len}");
            }
        }
        assert!(collapsed_leg_poses(&g, 100.0).is_empty());
    }
}
