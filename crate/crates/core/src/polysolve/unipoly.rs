//! Dense univariate polynomials over the integers.

use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modular;

/// Polynomial with exact integer coefficients, `coeffs[i]` multiplying `x^i`.
///
/// Rational inputs are cleared to an integer multiple, which has the same
/// zero set; [`UniPoly::from_rationals`] does this.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "UniPoly(0)");
        }
        write!(f, "UniPoly(")?;
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*x")?,
                _ => write!(f, "{c}*x^{i}")?,
            }
        }
        write!(f, ")")
    }
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Multiplies through by the lcm of the denominators.
    pub fn from_rationals(coeffs: &[BigRational]) -> Self {
        let den = coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        Self::new(
            coeffs
                .iter()
                .map(|c| c.numer() * (&den / c.denom()))
                .collect(),
        )
    }

    /// `prod (x - r_i)` for rational roots, cleared to integers.
    pub fn from_rational_roots(roots: &[BigRational]) -> Self {
        roots.iter().fold(Self::constant(BigInt::one()), |acc, r| {
            acc.mul(&Self::new(vec![-r.numer().clone(), r.denom().clone()]))
        })
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * k).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Non-negative gcd of the coefficients.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divided by its content, with positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut g = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            g = -g;
        }
        Self::new(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Quotient when `divisor` divides `self` exactly over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let dd = divisor.degree()?;
        if self.is_zero() {
            return Some(Self::zero());
        }
        let n = self.degree()?;
        if n < dd {
            return None;
        }
        let lead = divisor.leading()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); n - dd + 1];
        for k in (0..=n - dd).rev() {
            let top = &rem[k + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, d) in divisor.coeffs.iter().enumerate() {
                if !d.is_zero() {
                    rem[k + j] -= &q * d;
                }
            }
            quot[k] = q;
        }
        rem.iter().all(Zero::is_zero).then(|| Self::new(quot))
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let (num, den) = (x.numer(), x.denom());
        let n = self.coeffs.len();
        if n == 0 {
            return BigRational::zero();
        }
        let value = self.eval_homogeneous(num, den);
        BigRational::new(value, num_traits::pow(den.clone(), n - 1))
    }

    /// `den^deg * p(num/den)`, whose sign equals the sign of `p(num/den)` for
    /// `den > 0`.
    pub fn eval_homogeneous(&self, num: &BigInt, den: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        let mut den_pow = BigInt::one();
        let n = self.coeffs.len();
        for (k, c) in self.coeffs.iter().rev().enumerate() {
            if k == 0 {
                acc = c.clone();
            } else {
                den_pow *= den;
                acc = acc * num + c * &den_pow;
            }
        }
        debug_assert!(n == 0 || den_pow.bits() <= den.bits() * (n as u64));
        acc
    }

    pub fn sign_at(&self, x: &BigRational) -> Sign {
        self.eval_homogeneous(x.numer(), x.denom()).sign()
    }

    /// Floating evaluation with the coefficients rounded to `f64`.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Coefficients divided by a power of two so the largest has magnitude
    /// near one. Only the ratios are meaningful.
    pub fn to_f64_scaled(&self) -> Vec<f64> {
        let bits = self.coeffs.iter().map(BigInt::bits).max().unwrap_or(0);
        let shift = bits.saturating_sub(60);
        self.coeffs
            .iter()
            .map(|c| {
                let v = (c >> shift).to_f64().unwrap_or(0.0);
                v * 2f64.powi(-(60.min(bits) as i32))
            })
            .collect()
    }

    pub fn max_bits(&self) -> u64 {
        self.coeffs.iter().map(BigInt::bits).max().unwrap_or(0)
    }

    /// Greatest common divisor (primitive, positive leading coefficient, times
    /// the gcd of the contents).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive().scale(&other.content());
        }
        if other.is_zero() {
            return self.primitive().scale(&self.content());
        }
        let cont = self.content().gcd(&other.content());
        let (a, b) = (self.primitive(), other.primitive());
        let g = if a.degree() == Some(0) || b.degree() == Some(0) {
            Self::constant(BigInt::one())
        } else {
            modular::gcd_primitive(&a, &b)
        };
        g.scale(&cont)
    }

    /// Yun square-free decomposition of the primitive part: returns `f_1,
    /// f_2, ...` with `primitive(self) = prod f_i^i`, each `f_i` square-free and
    /// pairwise coprime (entries may be constant 1).
    pub fn square_free_decomposition(&self) -> Vec<Self> {
        let a = self.primitive();
        if a.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let one = Self::constant(BigInt::one());
        let da = a.derivative();
        let g = a.gcd(&da).primitive();
        let mut b = a.div_exact(&g).expect("gcd divides input");
        let mut c = da.div_exact(&g).expect("gcd divides derivative");
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        while b.degree().unwrap_or(0) > 0 {
            let ai = b.gcd(&d).primitive();
            b = b.div_exact(&ai).expect("factor divides b");
            c = d.div_exact(&ai).expect("factor divides d");
            d = c.sub(&b.derivative());
            out.push(if ai.degree() == Some(0) { one.clone() } else { ai });
        }
        while out.last().is_some_and(|f| f.degree() == Some(0)) {
            out.pop();
        }
        out
    }

    /// Product of the square-free factors.
    pub fn square_free_part(&self) -> Self {
        self.square_free_decomposition()
            .iter()
            .fold(Self::constant(BigInt::one()), |acc, f| acc.mul(f))
    }

    /// Strips the factor `x^k`, returning `k`.
    pub fn strip_zero_roots(&self) -> (Self, usize) {
        let k = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        (Self::new(self.coeffs[k..].to_vec()), k)
    }

    /// `p(x + 1)`, by repeated synthetic division.
    pub fn taylor_shift_one(&self) -> Self {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let next = a[j + 1].clone();
                a[j] += next;
            }
        }
        Self::new(a)
    }

    /// `x^n p(1/x)` keeping the formal degree.
    pub fn reversed(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        Self::new(c)
    }

    /// `p(2^k x)`.
    pub fn scale_arg_pow2(&self, k: u64) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| c << (k * i as u64))
                .collect(),
        )
    }

    /// Number of sign changes in the coefficient sequence, zeros skipped.
    pub fn sign_variations(&self) -> usize {
        let mut last = Sign::NoSign;
        let mut count = 0;
        for c in &self.coeffs {
            let s = c.sign();
            if s == Sign::NoSign {
                continue;
            }
            if last != Sign::NoSign && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_i64(c)
    }

    #[test]
    fn trims_and_degree() {
        assert_eq!(p(&[1, 2, 0, 0]).degree(), Some(1));
        assert_eq!(p(&[0, 0]).degree(), None);
        assert!(p(&[]).is_zero());
    }

    #[test]
    fn exact_division() {
        let a = p(&[-1, 0, 1]);
        let b = p(&[-1, 1]);
        assert_eq!(a.div_exact(&b), Some(p(&[1, 1])));
        assert_eq!(a.div_exact(&p(&[1, 2])), None);
        assert_eq!(p(&[1, 0, 2]).div_exact(&p(&[0, 2])), None);
    }

    #[test]
    fn gcd_of_products() {
        let f = p(&[3, -1, 2]);
        let g = p(&[-5, 7]);
        let h = p(&[2, 0, 0, 1]);
        let a = f.mul(&g).mul(&g);
        let b = f.mul(&h).scale(&BigInt::from(6));
        assert_eq!(a.gcd(&b).primitive(), f);
        assert_eq!(p(&[1, 1]).gcd(&p(&[2, 1])), p(&[1]));
        assert_eq!(p(&[4, 8]).gcd(&p(&[6, 12])), p(&[2, 4]));
    }

    #[test]
    fn yun_multiplicities() {
        let a = p(&[-1, 1]);
        let b = p(&[2, 0, 1]);
        let c = p(&[3, 5]);
        let q = a.pow(3).mul(&b).mul(&c.pow(2));
        let d = q.square_free_decomposition();
        assert_eq!(d.len(), 3);
        assert_eq!(d[0], b);
        assert_eq!(d[1], c);
        assert_eq!(d[2], a);
        assert_eq!(p(&[-1, 1]).pow(3).square_free_decomposition(), vec![p(&[1]), p(&[1]), p(&[-1, 1])]);
    }

    #[test]
    fn taylor_shift_and_reflect() {
        // (x+1)^2 = x^2 + 2x + 1
        assert_eq!(p(&[0, 0, 1]).taylor_shift_one(), p(&[1, 2, 1]));
        assert_eq!(p(&[1, 1, 1, 1]).reflect(), p(&[1, -1, 1, -1]));
    }

    #[test]
    fn homogeneous_evaluation() {
        let q = p(&[-2, 0, 1]);
        let half = BigRational::new(3.into(), 2.into());
        assert_eq!(q.eval_rational(&half), BigRational::new(1.into(), 4.into()));
        assert_eq!(q.sign_at(&half), Sign::Plus);
    }

    fn small_poly() -> impl Strategy<Value = UniPoly> {
        proptest::collection::vec(-20i64..20, 1..6).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn gcd_divides_both(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assume!(!c.is_zero() && !a.is_zero() && !b.is_zero());
            let (x, y) = (a.mul(&c), b.mul(&c));
            let g = x.gcd(&y);
            prop_assert!(x.div_exact(&g).is_some());
            prop_assert!(y.div_exact(&g).is_some());
            prop_assert!(g.degree() >= c.degree());
        }

        #[test]
        fn square_free_product_reassembles(a in small_poly(), b in small_poly()) {
            prop_assume!(a.degree().unwrap_or(0) > 0);
            let q = a.mul(&a).mul(&b);
            prop_assume!(!q.is_zero());
            let d = q.square_free_decomposition();
            let mut prod = UniPoly::constant(BigInt::one());
            for (i, f) in d.iter().enumerate() {
                prod = prod.mul(&f.pow(i as u32 + 1));
            }
            prop_assert_eq!(prod, q.primitive());
        }
    }
}
