//! Real-root isolation (Descartes rule with bisection) and exact-sign
//! refinement.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Relative width to which every isolating interval is refined.
pub const ROOT_REL_WIDTH: f64 = 1e-13;

/// A real root bracketed by exact rationals. `lo == hi` for exact roots;
/// otherwise the polynomial changes sign strictly inside `(lo, hi)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RealRoot {
    pub lo: BigRational,
    pub hi: BigRational,
    pub value: f64,
    pub multiplicity: usize,
}

impl RealRoot {
    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    /// Exact midpoint of the bracket.
    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn width(&self) -> f64 {
        to_f64(&(&self.hi - &self.lo))
    }
}

pub fn to_f64(x: &BigRational) -> f64 {
    if let (Some(n), Some(d)) = (x.numer().to_f64(), x.denom().to_f64()) {
        if n.is_finite() && d.is_finite() && d != 0.0 {
            return n / d;
        }
    }
    let shift = x.numer().bits().max(x.denom().bits()).saturating_sub(1000);
    let n = (x.numer() >> shift).to_f64().unwrap_or(0.0);
    let d = (x.denom() >> shift).to_f64().unwrap_or(0.0);
    n / d
}

/// Exact rational value of a finite `f64`.
pub fn from_f64_exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite value")
}

fn dyadic(num: BigInt, k: u64) -> BigRational {
    BigRational::new(num, BigInt::one() << k)
}

/// Positive-root isolating intervals of a square-free polynomial with
/// nonzero constant term, via Descartes' rule of signs on (0, 2^b). Returns
/// the open intervals and, separately, roots hit exactly at split points
/// (interval endpoints may coincide with those).
fn isolate_positive(p: &UniPoly) -> (Vec<(BigRational, BigRational)>, Vec<BigRational>) {
    let n = match p.degree() {
        Some(n) if n > 0 => n,
        _ => return (Vec::new(), Vec::new()),
    };
    let lead_bits = p.leading().unwrap().bits() as i64;
    let mut b: i64 = 0;
    for (i, c) in p.coeffs().iter().enumerate().take(n) {
        if c.is_zero() {
            continue;
        }
        let k = (n - i) as i64;
        let ratio_bits = c.bits() as i64 - lead_bits + 1;
        let e = if ratio_bits <= 0 { 0 } else { (ratio_bits + k - 1) / k };
        b = b.max(e + 1);
    }
    let b = b as u64;
    let root = p.scale_arg_pow2(b);

    let mut out = Vec::new();
    let mut exact = Vec::new();
    // (q, c, k): q(x) is proportional to p(2^b (c + x) / 2^k) on x in (0, 1)
    let mut stack = vec![(root, BigInt::zero(), 0u64)];
    while let Some((q, c, k)) = stack.pop() {
        let var = q.reversed().taylor_shift_one().sign_variations();
        if var == 0 {
            continue;
        }
        if var == 1 {
            out.push((c, k));
            continue;
        }
        let deg = q.degree().unwrap();
        let left = UniPoly::new(
            q.coeffs()
                .iter()
                .enumerate()
                .map(|(i, a)| a << ((deg - i) as u64))
                .collect(),
        );
        let mut right = left.taylor_shift_one();
        let c2 = &c * 2;
        if right.coeffs()[0].is_zero() {
            exact.push((&c2 + 1, k + 1));
            right = right.strip_zero_roots().0;
        }
        let left = strip_pow2(left);
        let right = strip_pow2(right);
        stack.push((right, &c2 + 1, k + 1));
        stack.push((left, c2, k + 1));
    }
    let intervals = out
        .into_iter()
        .map(|(c, k)| (dyadic(&c << b, k), dyadic((&c + 1) << b, k)))
        .collect();
    let exact = exact.into_iter().map(|(c, k)| dyadic(c << b, k)).collect();
    (intervals, exact)
}

/// Divides out the linear factors of exact rational roots.
fn deflate(p: &UniPoly, exact: &[BigRational]) -> UniPoly {
    exact.iter().fold(p.clone(), |acc, r| {
        let lin = UniPoly::new(vec![-r.numer().clone(), r.denom().clone()]);
        acc.div_exact(&lin).expect("exact root divides")
    })
}

fn exact_root(x: BigRational, multiplicity: usize) -> RealRoot {
    let value = to_f64(&x);
    RealRoot { lo: x.clone(), hi: x, value, multiplicity }
}

fn strip_pow2(p: UniPoly) -> UniPoly {
    let tz = p
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| c.trailing_zeros().unwrap_or(0))
        .min()
        .unwrap_or(0);
    if tz == 0 {
        p
    } else {
        UniPoly::new(p.coeffs().iter().map(|c| c >> tz).collect())
    }
}

/// Newton iterations in floating point from `x0`; `None` if they do not settle.
fn newton_f64(coeffs: &[f64], x0: f64) -> Option<f64> {
    let mut x = x0;
    for _ in 0..60 {
        let (mut v, mut d) = (0.0, 0.0);
        for &c in coeffs.iter().rev() {
            d = d * x + v;
            v = v * x + c;
        }
        if !v.is_finite() || !d.is_finite() || d == 0.0 {
            return None;
        }
        let step = v / d;
        x -= step;
        if step.abs() <= 1e-16 * x.abs() {
            return Some(x);
        }
    }
    x.is_finite().then_some(x)
}

/// Shrinks a sign-change bracket of `p` to relative width `ROOT_REL_WIDTH`.
/// Floating Newton proposes a tight bracket, which is accepted only after an
/// exact sign check; bisection is the fallback.
fn refine(p: &UniPoly, fcoeffs: &[f64], mut lo: BigRational, mut hi: BigRational) -> (BigRational, BigRational) {
    if lo == hi {
        return (lo, hi);
    }
    let mut s_lo = p.sign_at(&lo);
    debug_assert!(s_lo != Sign::NoSign);
    let narrow = |lo: &BigRational, hi: &BigRational| {
        let w = to_f64(&(hi - lo));
        let m = to_f64(lo).abs().min(to_f64(hi).abs());
        w <= ROOT_REL_WIDTH * m
    };
    let mut tries = 0;
    while !narrow(&lo, &hi) {
        if tries < 3 {
            tries += 1;
            let (l, h) = (to_f64(&lo), to_f64(&hi));
            if let Some(x) = newton_f64(fcoeffs, 0.5 * (l + h)) {
                if x > l && x < h && x != 0.0 {
                    let delta = 0.25 * ROOT_REL_WIDTH * x.abs();
                    let (a, b) = (from_f64_exact(x - delta), from_f64_exact(x + delta));
                    if a > lo && b < hi && a < b {
                        let (sa, sb) = (p.sign_at(&a), p.sign_at(&b));
                        if sa == Sign::NoSign {
                            return (a.clone(), a);
                        }
                        if sb == Sign::NoSign {
                            return (b.clone(), b);
                        }
                        if sa == s_lo && sb != s_lo {
                            return (a, b);
                        }
                    }
                }
            }
        }
        let mid = (&lo + &hi) / BigInt::from(2);
        let s = p.sign_at(&mid);
        if s == Sign::NoSign {
            return (mid.clone(), mid);
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    (lo, hi)
}

/// Isolated and refined real roots of a square-free polynomial.
fn roots_square_free(p: &UniPoly, multiplicity: usize) -> Vec<RealRoot> {
    let (p, zero_mult) = p.strip_zero_roots();
    let mut out = Vec::new();
    if zero_mult > 0 {
        out.push(exact_root(BigRational::zero(), multiplicity));
    }
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    for negative in [false, true] {
        let q = if negative { p.reflect() } else { p.clone() };
        let (intervals, exact) = isolate_positive(&q);
        let q = deflate(&q, &exact);
        let fq = q.to_f64_scaled();
        for x in exact {
            out.push(exact_root(if negative { -x } else { x }, multiplicity));
        }
        for (lo, hi) in intervals {
            let (lo, hi) = refine(&q, &fq, lo, hi);
            let (lo, hi) = if negative { (-hi, -lo) } else { (lo, hi) };
            let value = to_f64(&((&lo + &hi) / BigInt::from(2)));
            out.push(RealRoot { lo, hi, value, multiplicity });
        }
    }
    out
}

/// All real roots, sorted, with multiplicities from the exact square-free
/// decomposition. `domain` keeps roots whose value lies in `[a, b]`.
pub fn real_roots(q: &UniPoly, domain: Option<(f64, f64)>) -> Result<Vec<RealRoot>> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (i, f) in q.square_free_decomposition().iter().enumerate() {
        if f.degree().unwrap_or(0) > 0 {
            out.extend(roots_square_free(f, i + 1));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    if let Some((a, b)) = domain {
        out.retain(|r| r.value >= a && r.value <= b);
    }
    Ok(out)
}

/// Number of real roots of `q`, counted without multiplicity.
pub fn count_real_roots(q: &UniPoly) -> Result<usize> {
    if q.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sf = q.square_free_part();
    let (p, z) = sf.strip_zero_roots();
    if p.degree().unwrap_or(0) == 0 {
        return Ok(z.min(1));
    }
    let count = |q: &UniPoly| {
        let (i, e) = isolate_positive(q);
        i.len() + e.len()
    };
    Ok(z.min(1) + count(&p) + count(&p.reflect()))
}

/// Real roots of a polynomial known to be square-free, without the gcd chain.
pub fn real_roots_square_free(q: &UniPoly) -> Vec<RealRoot> {
    let mut out = roots_square_free(&q.primitive(), 1);
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

/// Sturm-sequence count of distinct real roots, used as an independent check.
pub fn sturm_count(q: &UniPoly) -> usize {
    let sf = q.square_free_part();
    if sf.degree().unwrap_or(0) == 0 {
        return 0;
    }
    // signed remainder sequence with rational arithmetic
    let to_rat = |p: &UniPoly| -> Vec<BigRational> {
        p.coeffs().iter().map(|c| BigRational::from(c.clone())).collect()
    };
    let mut seq = vec![to_rat(&sf), to_rat(&sf.derivative())];
    loop {
        let a = &seq[seq.len() - 2];
        let b = &seq[seq.len() - 1];
        let mut r = a.clone();
        while r.len() >= b.len() && !r.is_empty() {
            let f = r.last().unwrap() / b.last().unwrap();
            let shift = r.len() - b.len();
            for (j, bj) in b.iter().enumerate() {
                r[shift + j] -= &f * bj;
            }
            r.pop();
            while r.last().is_some_and(Zero::is_zero) {
                r.pop();
            }
        }
        if r.is_empty() {
            break;
        }
        seq.push(r.into_iter().map(|c| -c).collect());
    }
    let lead_signs = |at_pos: bool| -> usize {
        let signs: Vec<bool> = seq
            .iter()
            .map(|p| {
                let deg = p.len() - 1;
                let l = p.last().unwrap().is_positive();
                if at_pos || deg % 2 == 0 {
                    l
                } else {
                    !l
                }
            })
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    };
    lead_signs(false) - lead_signs(true)
}
