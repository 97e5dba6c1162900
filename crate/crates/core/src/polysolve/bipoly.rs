//! Bivariate integer polynomials in `(t, t1)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::roots::to_f64;
use super::unipoly::UniPoly;

/// `sum c[i][j] t^i t1^j`, stored as one t1-polynomial per power of `t`.
/// Trailing zero rows are trimmed, so `deg_t` is exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    rows: Vec<UniPoly>,
}

impl BiPoly {
    pub fn new(mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(UniPoly::is_zero) {
            rows.pop();
        }
        Self { rows }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// From `c[i][j]` (coefficient of `t^i t1^j`).
    pub fn from_i64(c: &[&[i64]]) -> Self {
        Self::new(c.iter().map(|r| UniPoly::from_i64(r)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Coefficients of `t^i` as polynomials in `t1`.
    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn deg_t(&self) -> Option<usize> {
        self.rows.len().checked_sub(1)
    }

    pub fn deg_t1(&self) -> Option<usize> {
        self.rows.iter().filter_map(UniPoly::degree).max()
    }

    pub fn coeff(&self, i: usize, j: usize) -> BigInt {
        self.rows.get(i).map(|r| r.coeff(j)).unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.rows.len().max(other.rows.len());
        let zero = UniPoly::zero();
        Self::new(
            (0..n)
                .map(|i| {
                    self.rows.get(i).unwrap_or(&zero).add(other.rows.get(i).unwrap_or(&zero))
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![UniPoly::zero(); self.rows.len() + other.rows.len() - 1];
        for (i, a) in self.rows.iter().enumerate() {
            for (j, b) in other.rows.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Self::new(out)
    }

    /// Swaps the roles of `t` and `t1`.
    pub fn transpose(&self) -> Self {
        let n = self.deg_t1().map_or(0, |d| d + 1);
        Self::new(
            (0..n)
                .map(|j| UniPoly::new(self.rows.iter().map(|r| r.coeff(j)).collect()))
                .collect(),
        )
    }

    /// `p(t, t1*)` as a polynomial in `t`, scaled by a positive power of the
    /// denominator of `t1*`.
    pub fn specialize_t1(&self, t1: &BigRational) -> UniPoly {
        let d = self.deg_t1().unwrap_or(0);
        let den = t1.denom();
        UniPoly::new(
            self.rows
                .iter()
                .map(|r| {
                    let v = r.eval_homogeneous(t1.numer(), den);
                    let extra = d - r.degree().unwrap_or(0);
                    if r.is_zero() {
                        BigInt::zero()
                    } else {
                        v * num_traits::pow(den.clone(), extra)
                    }
                })
                .collect(),
        )
    }

    /// `p(t*, t1)` as a polynomial in `t1`, scaled by a positive power of the
    /// denominator of `t*`.
    pub fn specialize_t(&self, t: &BigRational) -> UniPoly {
        self.transpose().specialize_t1(t)
    }

    pub fn eval_rational(&self, t: &BigRational, t1: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for r in self.rows.iter().rev() {
            acc = acc * t + r.eval_rational(t1);
        }
        acc
    }

    /// Floating copy for fast evaluation, scaled by a power of two so the
    /// largest coefficient is near one.
    pub fn to_float(&self) -> FloatBiPoly {
        let bits = self.rows.iter().map(UniPoly::max_bits).max().unwrap_or(0);
        let den = BigInt::one() << bits;
        FloatBiPoly {
            c: self
                .rows
                .iter()
                .map(|r| {
                    r.coeffs()
                        .iter()
                        .map(|c| to_f64(&BigRational::new(c.clone(), den.clone())))
                        .collect()
                })
                .collect(),
        }
    }

    pub fn eval_f64(&self, t: f64, t1: f64) -> f64 {
        self.to_float().eval(t, t1)
    }
}

/// Floating coefficients, normalised so the largest is near one.
#[derive(Debug, Clone, PartialEq)]
pub struct FloatBiPoly {
    pub c: Vec<Vec<f64>>,
}

impl FloatBiPoly {
    pub fn eval(&self, t: f64, t1: f64) -> f64 {
        self.c.iter().rev().fold(0.0, |acc, row| {
            acc * t + row.iter().rev().fold(0.0, |a, &c| a * t1 + c)
        })
    }

    /// Value and the two partial derivatives `(p, dp/dt, dp/dt1)`.
    pub fn eval_grad(&self, t: f64, t1: f64) -> (f64, f64, f64) {
        let (mut v, mut dt, mut dt1) = (0.0, 0.0, 0.0);
        for row in self.c.iter().rev() {
            let (mut r, mut dr) = (0.0, 0.0);
            for &c in row.iter().rev() {
                dr = dr * t1 + r;
                r = r * t1 + c;
            }
            dt = dt * t + v;
            v = v * t + r;
            dt1 = dt1 * t + dr;
        }
        (v, dt, dt1)
    }

    /// `sum |c_ij| |t|^i |t1|^j`.
    pub fn magnitude(&self, t: f64, t1: f64) -> f64 {
        let (t, t1) = (t.abs(), t1.abs());
        self.c.iter().rev().fold(0.0, |acc, row| {
            acc * t + row.iter().rev().fold(0.0, |a, &c| a * t1 + c.abs())
        })
    }

    /// `|p| / sum |terms|`; zero where every term vanishes.
    pub fn residual(&self, t: f64, t1: f64) -> f64 {
        let m = self.magnitude(t, t1);
        if m == 0.0 {
            0.0
        } else {
            self.eval(t, t1).abs() / m
        }
    }
}
