//! Sylvester resultants of bivariate polynomials, eliminating `t`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::bipoly::BiPoly;
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ResultantMethod {
    /// Evaluate at integer nodes, take integer determinants, interpolate.
    #[default]
    EvalInterp,
    /// Fraction-free elimination directly on the polynomial-entried matrix.
    BareissPoly,
}

/// Sylvester matrix with respect to `t`; entries are polynomials in `t1`.
pub fn sylvester_matrix(a: &BiPoly, b: &BiPoly) -> Vec<Vec<UniPoly>> {
    let m = a.deg_t().unwrap_or(0);
    let n = b.deg_t().unwrap_or(0);
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for (deg, poly, count) in [(m, a, n), (n, b, m)] {
        for r in 0..count {
            let mut row = vec![UniPoly::zero(); size];
            for k in 0..=deg {
                // highest power first
                row[r + k] = poly.rows()[deg - k].clone();
            }
            rows.push(row);
        }
    }
    rows
}

/// Fraction-free determinant of an integer matrix.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[k][k] * &m[i][j] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        -d
    } else {
        d
    }
}

/// Fraction-free determinant over `Z[t1]`.
fn bareiss_det_poly(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    if n == 0 {
        return UniPoly::constant(BigInt::one());
    }
    let mut sign = false;
    let mut prev = UniPoly::constant(BigInt::one());
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = !sign;
                }
                None => return UniPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign {
        d.neg()
    } else {
        d
    }
}

/// Interpolation nodes `0, 1, -1, 2, -2, ...`.
fn node(k: usize) -> i64 {
    let h = k.div_ceil(2) as i64;
    if k % 2 == 1 {
        h
    } else {
        -h
    }
}

/// Newton interpolation through `(x_k, y_k)`, returned in monomial form.
fn interpolate(xs: &[i64], ys: &[BigInt]) -> UniPoly {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = BigInt::from(xs[i] - xs[i - level]);
            dd[i] = num / den;
        }
    }
    // Horner on the Newton basis
    let mut coeffs = vec![BigRational::zero(); n];
    for i in (0..n).rev() {
        // coeffs <- coeffs * (x - x_i) + dd[i]
        let xi = BigRational::from(BigInt::from(xs[i]));
        let mut next = vec![BigRational::zero(); n];
        for j in 0..n {
            if coeffs[j].is_zero() {
                continue;
            }
            if j + 1 < n {
                next[j + 1] += &coeffs[j];
            }
            next[j] -= &coeffs[j] * &xi;
        }
        next[0] += &dd[i];
        coeffs = next;
    }
    assert!(coeffs.iter().all(|c| c.is_integer()), "integer resultant");
    UniPoly::new(coeffs.into_iter().map(|c| c.to_integer()).collect())
}

fn det_eval_interp(mat: &[Vec<UniPoly>], bound: usize) -> UniPoly {
    let xs: Vec<i64> = (0..=bound).map(node).collect();
    let ys: Vec<BigInt> = xs
        .par_iter()
        .map(|&x| {
            let xb = BigInt::from(x);
            let one = BigInt::one();
            let m = mat
                .iter()
                .map(|row| row.iter().map(|e| e.eval_homogeneous(&xb, &one)).collect())
                .collect();
            bareiss_det(m)
        })
        .collect();
    interpolate(&xs, &ys)
}

/// Resultant of `a` and `b` with respect to `t`, a polynomial in `t1`.
///
/// An identically zero resultant means the inputs share a factor of positive
/// degree in `t` and is reported as [`Error::SharedFactor`].
pub fn sylvester_resultant(a: &BiPoly, b: &BiPoly, method: ResultantMethod) -> Result<UniPoly> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mat = sylvester_matrix(a, b);
    let m = a.deg_t().unwrap();
    let n = b.deg_t().unwrap();
    let bound = n * a.deg_t1().unwrap_or(0) + m * b.deg_t1().unwrap_or(0);
    let r = match method {
        ResultantMethod::EvalInterp => det_eval_interp(&mat, bound),
        ResultantMethod::BareissPoly => bareiss_det_poly(mat),
    };
    if r.is_zero() {
        return Err(Error::SharedFactor);
    }
    Ok(r)
}
