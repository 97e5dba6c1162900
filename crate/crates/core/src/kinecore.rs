//! First- and second-order constraint derivatives with respect to the leg
//! angles, and the two scalar conditions built from them: the singularity
//! condition (leg axes concurrent) and the triple-coalescence condition.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{leg_vectors, Configuration, ManipulatorGeometry, SlicePose};

pub type Mat3 = [[f64; 3]; 3];

/// `dGamma/dtheta`. Entries `[0][2]`, `[1][0]` and `[2][1]` are structurally zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobianMatrix(pub Mat3);

/// `d2Gamma_i/dtheta2` for the three constraints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HessianTriple(pub [Mat3; 3]);

/// The six factors whose pairwise products make up the adjugate of the
/// constraint Jacobian, which equals `[[k6, k5, 0], [0, k1, k3], [k4, 0, k2]]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct KFactors {
    pub k1: f64,
    pub k2: f64,
    pub k3: f64,
    pub k4: f64,
    pub k5: f64,
    pub k6: f64,
}

impl KFactors {
    pub fn jacobian(&self) -> JacobianMatrix {
        let k = self;
        JacobianMatrix([[k.k6, k.k5, 0.0], [0.0, k.k1, k.k3], [k.k4, 0.0, k.k2]])
    }

    /// Adjugate of [`KFactors::jacobian`] written in k-products.
    pub fn adjugate(&self) -> Mat3 {
        let KFactors { k1, k2, k3, k4, k5, k6 } = *self;
        [
            [k1 * k2, -k2 * k5, k3 * k5],
            [k3 * k4, k2 * k6, -k3 * k6],
            [-k1 * k4, k4 * k5, k1 * k6],
        ]
    }

    /// `k1 k2 k6 + k3 k4 k5`.
    pub fn determinant(&self) -> f64 {
        self.k1 * self.k2 * self.k6 + self.k3 * self.k4 * self.k5
    }

    pub fn max_abs(&self) -> f64 {
        [self.k1, self.k2, self.k3, self.k4, self.k5, self.k6]
            .iter()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

fn require_nondegenerate(config: &Configuration) -> Result<()> {
    for (leg, &deg) in config.degenerate.iter().enumerate() {
        if deg {
            return Err(Error::DegenerateConfiguration {
                leg: leg + 1,
                length: config.lengths[leg],
            });
        }
    }
    Ok(())
}

struct Trig {
    s: [f64; 3],
    c: [f64; 3],
}

impl Trig {
    fn new(angles: &[f64; 3]) -> Self {
        Self {
            s: angles.map(f64::sin),
            c: angles.map(f64::cos),
        }
    }
}

fn sin_diff(a: &[f64; 3], i: usize, j: usize) -> f64 {
    (a[i] - a[j]).sin()
}

fn cos_diff(a: &[f64; 3], i: usize, j: usize) -> f64 {
    (a[i] - a[j]).cos()
}

pub fn constraint_jacobian(geom: &ManipulatorGeometry, config: &Configuration) -> Result<JacobianMatrix> {
    require_nondegenerate(config)?;
    Ok(jacobian_raw(geom, &config.lengths, &config.angles))
}

pub(crate) fn jacobian_raw(geom: &ManipulatorGeometry, lengths: &[f64; 3], a: &[f64; 3]) -> JacobianMatrix {
    let [l1, l2, l3] = *lengths;
    let (a2x, a3x, a3y) = (geom.a2x(), geom.a3x(), geom.a3y());
    let Trig { s, c } = Trig::new(a);
    let s12 = sin_diff(a, 0, 1);
    let s21 = -s12;
    let s23 = sin_diff(a, 1, 2);
    let s31 = sin_diff(a, 2, 0);
    JacobianMatrix([
        [
            2.0 * l1 * (a2x * s[0] + l2 * s12),
            2.0 * l2 * (l1 * s21 - a2x * s[1]),
            0.0,
        ],
        [
            0.0,
            -2.0 * l2 * ((a2x - a3x) * s[1] - l3 * s23 + a3y * c[1]),
            2.0 * l3 * ((a2x - a3x) * s[2] - l2 * s23 + a3y * c[2]),
        ],
        [
            2.0 * l1 * (a3x * s[0] - l3 * s31 - a3y * c[0]),
            0.0,
            -2.0 * l3 * (a3x * s[2] - l1 * s31 - a3y * c[2]),
        ],
    ])
}

pub fn constraint_hessians(geom: &ManipulatorGeometry, config: &Configuration) -> Result<HessianTriple> {
    require_nondegenerate(config)?;
    Ok(hessians_raw(geom, &config.lengths, &config.angles))
}

pub(crate) fn hessians_raw(geom: &ManipulatorGeometry, lengths: &[f64; 3], a: &[f64; 3]) -> HessianTriple {
    let [l1, l2, l3] = *lengths;
    let (a2x, a3x, a3y) = (geom.a2x(), geom.a3x(), geom.a3y());
    let Trig { s, c } = Trig::new(a);
    let c21 = cos_diff(a, 1, 0);
    let c23 = cos_diff(a, 1, 2);
    let c31 = cos_diff(a, 2, 0);

    let h1 = [
        [l1 * (a2x * c[0] + l2 * c21), -l1 * l2 * c21, 0.0],
        [-l1 * l2 * c21, -l2 * (a2x * c[1] - l1 * c21), 0.0],
        [0.0, 0.0, 0.0],
    ];
    let h2 = [
        [0.0, 0.0, 0.0],
        [0.0, -l2 * ((a2x - a3x) * c[1] - l3 * c23 - a3y * s[1]), -l2 * l3 * c23],
        [0.0, -l2 * l3 * c23, l3 * ((a2x - a3x) * c[2] + l2 * c23 - a3y * s[2])],
    ];
    let h3 = [
        [l1 * (a3x * c[0] + l3 * c31 + a3y * s[0]), 0.0, -l1 * l3 * c31],
        [0.0, 0.0, 0.0],
        [-l1 * l3 * c31, 0.0, l3 * (l1 * c31 - a3x * c[2] - a3y * s[2])],
    ];
    HessianTriple([h1, h2, h3].map(|h| h.map(|row| row.map(|v| 2.0 * v))))
}

pub fn k_factors(geom: &ManipulatorGeometry, config: &Configuration) -> KFactors {
    k_factors_raw(geom, &config.lengths, &config.angles)
}

pub(crate) fn k_factors_raw(geom: &ManipulatorGeometry, lengths: &[f64; 3], a: &[f64; 3]) -> KFactors {
    let [l1, l2, l3] = *lengths;
    let (a2x, a3x, a3y) = (geom.a2x(), geom.a3x(), geom.a3y());
    let Trig { s, c } = Trig::new(a);
    let s12 = sin_diff(a, 0, 1);
    let s13 = sin_diff(a, 0, 2);
    let s23 = sin_diff(a, 1, 2);
    KFactors {
        k1: 2.0 * l2 * ((a3x - a2x) * s[1] + l3 * s23 - a3y * c[1]),
        k2: -2.0 * l3 * (l1 * s13 + a3x * s[2] - a3y * c[2]),
        k3: -2.0 * l3 * ((a3x - a2x) * s[2] + l2 * s23 - a3y * c[2]),
        k4: 2.0 * l1 * (l3 * s13 + a3x * s[0] - a3y * c[0]),
        k5: -2.0 * l2 * (l1 * s12 + a2x * s[1]),
        k6: 2.0 * l1 * (l2 * s12 + a2x * s[0]),
    }
}

/// Left and right kernel candidates taken from the adjugate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelVectors {
    /// Row of the adjugate (left kernel at a singularity).
    pub u: [f64; 3],
    /// Column of the adjugate (right kernel at a singularity).
    pub v: [f64; 3],
    pub row: usize,
    pub col: usize,
    /// Every row or every column of the adjugate vanished (rank <= 1).
    pub degenerate: bool,
}

fn norm3(v: &[f64; 3]) -> f64 {
    (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt()
}

/// First adjugate row/column, falling back to the next one whose norm
/// exceeds `1e-10 * max|k|^2`.
pub fn kernel_vectors(kf: &KFactors) -> KernelVectors {
    let adj = kf.adjugate();
    let eps = 1e-10 * kf.max_abs().powi(2);
    let rows: [[f64; 3]; 3] = adj;
    let cols: [[f64; 3]; 3] = [0, 1, 2].map(|j| [adj[0][j], adj[1][j], adj[2][j]]);
    let pick = |set: &[[f64; 3]; 3]| (0..3).find(|&i| norm3(&set[i]) >= eps && norm3(&set[i]) > 0.0);
    match (pick(&rows), pick(&cols)) {
        (Some(r), Some(c)) => KernelVectors {
            u: rows[r],
            v: cols[c],
            row: r,
            col: c,
            degenerate: false,
        },
        (r, c) => KernelVectors {
            u: [0.0; 3],
            v: [0.0; 3],
            row: r.unwrap_or(0),
            col: c.unwrap_or(0),
            degenerate: true,
        },
    }
}

/// Kernel vectors forced to a given adjugate row and column.
pub fn kernel_vectors_at(kf: &KFactors, row: usize, col: usize) -> KernelVectors {
    let adj = kf.adjugate();
    KernelVectors {
        u: adj[row],
        v: [adj[0][col], adj[1][col], adj[2][col]],
        row,
        col,
        degenerate: false,
    }
}

/// `A2x s2 s31 + (A3x s3 - A3y c3) s12`; vanishes exactly when the three leg
/// axes are concurrent.
pub fn singularity_scalar(geom: &ManipulatorGeometry, config: &Configuration) -> f64 {
    let a = &config.angles;
    let s31 = sin_diff(a, 2, 0);
    let s12 = sin_diff(a, 0, 1);
    geom.a2x() * a[1].sin() * s31 + (geom.a3x() * a[2].sin() - geom.a3y() * a[2].cos()) * s12
}

/// The singularity condition multiplied by `L2 L3` and written through the
/// closure equations, so that it is a trigonometric polynomial in
/// `(alpha, theta1)`. Returns the value and the sum of absolute term values.
pub fn singularity_polynomial(geom: &ManipulatorGeometry, pose: &SlicePose) -> (f64, f64) {
    let v = leg_vectors(geom, pose);
    let (s1, c1) = pose.theta1.sin_cos();
    let (a2x, a3x, a3y) = (geom.a2x(), geom.a3x(), geom.a3y());
    let w3 = v.y3 * c1 - v.x3 * s1;
    let w2 = s1 * v.x2 - c1 * v.y2;
    let m3 = a3x * v.y3 - a3y * v.x3;
    let value = a2x * v.y2 * w3 + m3 * w2;
    let scale = a2x * v.y2.abs() * (v.y3.abs() + v.x3.abs())
        + (a3x.abs() * v.y3.abs() + a3y.abs() * v.x3.abs()) * (v.x2.abs() + v.y2.abs());
    (value, scale)
}

/// `v^T (u1 H1 + u2 H2 + u3 H3) v`.
pub fn quadratic_form(h: &HessianTriple, u: &[f64; 3], v: &[f64; 3]) -> f64 {
    let mut total = 0.0;
    for i in 0..3 {
        for j in 0..3 {
            let m = u[0] * h.0[0][i][j] + u[1] * h.0[1][i][j] + u[2] * h.0[2][i][j];
            total += v[i] * m * v[j];
        }
    }
    total
}

/// Value of the triple-coalescence condition together with the kernel choice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CuspScalar {
    pub value: f64,
    pub kernel: KernelVectors,
}

pub fn cusp_scalar(geom: &ManipulatorGeometry, config: &Configuration) -> Result<CuspScalar> {
    require_nondegenerate(config)?;
    let kf = k_factors(geom, config);
    let kernel = kernel_vectors(&kf);
    if kernel.degenerate {
        return Ok(CuspScalar { value: 0.0, kernel });
    }
    let h = hessians_raw(geom, &config.lengths, &config.angles);
    Ok(CuspScalar {
        value: quadratic_form(&h, &kernel.u, &kernel.v),
        kernel,
    })
}

fn frobenius(m: &Mat3) -> f64 {
    m.iter().flatten().map(|v| v * v).sum::<f64>().sqrt()
}

/// Scale-free version of the triple-coalescence condition.
///
/// Uses the largest adjugate row and column, both normalised, and divides by
/// the Hessian magnitude, so the result does not depend on which row/column
/// happens to vanish at the point. Returns `None` when the adjugate vanishes.
pub fn normalized_cusp_residual(geom: &ManipulatorGeometry, config: &Configuration) -> Option<f64> {
    if config.is_degenerate() {
        return None;
    }
    let kf = k_factors(geom, config);
    let adj = kf.adjugate();
    let rows = adj;
    let cols: [[f64; 3]; 3] = [0, 1, 2].map(|j| [adj[0][j], adj[1][j], adj[2][j]]);
    let best = |set: &[[f64; 3]; 3]| {
        let i = (0..3)
            .max_by(|&a, &b| norm3(&set[a]).total_cmp(&norm3(&set[b])))
            .unwrap_or(0);
        let n = norm3(&set[i]);
        (n > 0.0).then(|| set[i].map(|x| x / n))
    };
    let (u, v) = (best(&rows)?, best(&cols)?);
    let h = hessians_raw(geom, &config.lengths, &config.angles);
    let hscale = h.0.iter().map(frobenius).fold(0.0, f64::max);
    if hscale == 0.0 {
        return None;
    }
    Some(quadratic_form(&h, &u, &v).abs() / hscale)
}

pub fn determinant(m: &Mat3) -> f64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}
