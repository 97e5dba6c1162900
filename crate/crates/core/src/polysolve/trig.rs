//! Trigonometric polynomials in `(alpha, theta1)` and their tan-half form.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use super::bipoly::BiPoly;
use super::unipoly::UniPoly;

/// Exponents of `cos(alpha)^ca sin(alpha)^sa cos(theta1)^c1 sin(theta1)^s1`,
/// with `sa, s1 <= 1` (squares of sines are rewritten as `1 - cos^2`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    pub ca: u16,
    pub sa: u8,
    pub c1: u16,
    pub s1: u8,
}

/// Integer-coefficient polynomial in `cos/sin` of two angles, kept in the
/// canonical basis above so that orders are exact.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TrigPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl TrigPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut p = Self::zero();
        p.insert(Monomial { ca: 0, sa: 0, c1: 0, s1: 0 }, c);
        p
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigInt::from(c))
    }

    fn unit(m: Monomial) -> Self {
        let mut p = Self::zero();
        p.insert(m, BigInt::one());
        p
    }

    pub fn cos_alpha() -> Self {
        Self::unit(Monomial { ca: 1, sa: 0, c1: 0, s1: 0 })
    }

    pub fn sin_alpha() -> Self {
        Self::unit(Monomial { ca: 0, sa: 1, c1: 0, s1: 0 })
    }

    pub fn cos_theta1() -> Self {
        Self::unit(Monomial { ca: 0, sa: 0, c1: 1, s1: 0 })
    }

    pub fn sin_theta1() -> Self {
        Self::unit(Monomial { ca: 0, sa: 0, c1: 0, s1: 1 })
    }

    fn insert(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(order in alpha, order in theta1)`; `(0, 0)` for constants and zero.
    pub fn orders(&self) -> (usize, usize) {
        self.terms.keys().fold((0, 0), |(a, b), m| {
            (a.max((m.ca + m.sa as u16) as usize), b.max((m.c1 + m.s1 as u16) as usize))
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.insert(*m, -c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect() }
    }

    pub fn scale_i64(&self, k: i64) -> Self {
        self.scale(&BigInt::from(k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                let c = ca * cb;
                let ca_pow = a.ca + b.ca;
                let c1_pow = a.c1 + b.c1;
                // sin^2 = 1 - cos^2 in each angle
                let alpha_parts: &[(u16, u8, i8)] = if a.sa + b.sa == 2 {
                    &[(0, 0, 1), (2, 0, -1)]
                } else {
                    &[(0, a.sa + b.sa, 1)]
                };
                let theta_parts: &[(u16, u8, i8)] = if a.s1 + b.s1 == 2 {
                    &[(0, 0, 1), (2, 0, -1)]
                } else {
                    &[(0, a.s1 + b.s1, 1)]
                };
                for &(dca, sa, sga) in alpha_parts {
                    for &(dc1, s1, sgt) in theta_parts {
                        let m = Monomial { ca: ca_pow + dca, sa, c1: c1_pow + dc1, s1 };
                        if sga * sgt > 0 {
                            out.insert(m, c.clone());
                        } else {
                            out.insert(m, -&c);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn square(&self) -> Self {
        self.mul(self)
    }

    /// Floating evaluation; also returns the sum of absolute term values.
    pub fn eval_f64(&self, alpha: f64, theta1: f64) -> (f64, f64) {
        let (sa, ca) = alpha.sin_cos();
        let (s1, c1) = theta1.sin_cos();
        let mut v = 0.0;
        let mut m = 0.0;
        for (k, c) in &self.terms {
            let term = c.to_f64().unwrap_or(f64::NAN)
                * ca.powi(k.ca as i32)
                * sa.powi(k.sa as i32)
                * c1.powi(k.c1 as i32)
                * s1.powi(k.s1 as i32);
            v += term;
            m += term.abs();
        }
        (v, m)
    }

    /// Substitutes `alpha -> alpha + pi/2` and `theta1 -> theta1 + pi/2`
    /// exactly (`cos -> -sin`, `sin -> cos`).
    pub fn shift_quarter_turn(&self) -> Self {
        let ca = TrigPoly::sin_alpha().neg();
        let sa = TrigPoly::cos_alpha();
        let c1 = TrigPoly::sin_theta1().neg();
        let s1 = TrigPoly::cos_theta1();
        let mut out = Self::zero();
        for (m, c) in &self.terms {
            let term = ca
                .pow(m.ca as u32)
                .mul(&sa.pow(m.sa as u32))
                .mul(&c1.pow(m.c1 as u32))
                .mul(&s1.pow(m.s1 as u32))
                .scale(c);
            out = out.add(&term);
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::from_i64(1), |acc, _| acc.mul(self))
    }
}

/// `(1 - t^2)^c (2t)^s (1 + t^2)^(d - c - s)`.
fn half_angle_factor(c: usize, s: usize, d: usize) -> UniPoly {
    let one_minus = UniPoly::from_i64(&[1, 0, -1]);
    let one_plus = UniPoly::from_i64(&[1, 0, 1]);
    let two_t = UniPoly::from_i64(&[0, 2]);
    one_minus
        .pow(c as u32)
        .mul(&two_t.pow(s as u32))
        .mul(&one_plus.pow((d - c - s) as u32))
}

/// Tan-half form: `cos = (1 - t^2)/(1 + t^2)`, `sin = 2t/(1 + t^2)` in both
/// angles (`t = tan(alpha/2)`, `t1 = tan(theta1/2)`), cleared by
/// `(1 + t^2)^da (1 + t1^2)^d1` with `(da, d1)` the orders of `p`.
pub fn trig_to_bipoly(p: &TrigPoly) -> BiPoly {
    let (da, d1) = p.orders();
    let mut by_alpha: BTreeMap<(u16, u8), UniPoly> = BTreeMap::new();
    let mut theta_cache: BTreeMap<(u16, u8), UniPoly> = BTreeMap::new();
    for (m, c) in p.terms() {
        let th = theta_cache
            .entry((m.c1, m.s1))
            .or_insert_with(|| half_angle_factor(m.c1 as usize, m.s1 as usize, d1))
            .scale(c);
        let e = by_alpha.entry((m.ca, m.sa)).or_default();
        *e = e.add(&th);
    }
    let mut rows = vec![UniPoly::zero(); 2 * da + 1];
    for ((ca, sa), t1poly) in by_alpha {
        let a = half_angle_factor(ca as usize, sa as usize, da);
        for (i, ai) in a.coeffs().iter().enumerate() {
            if !ai.is_zero() {
                rows[i] = rows[i].add(&t1poly.scale(ai));
            }
        }
    }
    BiPoly::new(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn cos_alpha_tan_half() {
        let b = trig_to_bipoly(&TrigPoly::cos_alpha());
        assert_eq!(b, BiPoly::from_i64(&[&[1], &[0], &[-1]]));
    }

    #[test]
    fn pythagorean_identity_vanishes() {
        let p = TrigPoly::sin_alpha()
            .square()
            .add(&TrigPoly::cos_alpha().square())
            .sub(&TrigPoly::from_i64(1));
        assert!(p.is_zero());
        assert!(trig_to_bipoly(&p).is_zero());
        let q = TrigPoly::sin_theta1().square().add(&TrigPoly::cos_theta1().square());
        assert_eq!(q, TrigPoly::from_i64(1));
    }

    #[test]
    fn orders_are_exact_after_reduction() {
        // sin(a)^2 cos(t) has order (2, 1)
        let p = TrigPoly::sin_alpha().square().mul(&TrigPoly::cos_theta1());
        assert_eq!(p.orders(), (2, 1));
        // sin^2 = 4t^2 / (1 + t^2)^2 leaves no t^4 term
        let b = trig_to_bipoly(&p);
        assert_eq!(b, BiPoly::from_i64(&[&[0], &[0], &[4, 0, -4]]));
        let q = TrigPoly::cos_alpha().square().mul(&TrigPoly::cos_theta1());
        let b = trig_to_bipoly(&q);
        assert_eq!((b.deg_t(), b.deg_t1()), (Some(4), Some(2)));
    }

    fn random_trig(rng: &mut ChaCha8Rng) -> TrigPoly {
        let gens = [
            TrigPoly::cos_alpha(),
            TrigPoly::sin_alpha(),
            TrigPoly::cos_theta1(),
            TrigPoly::sin_theta1(),
        ];
        let mut p = TrigPoly::zero();
        for _ in 0..6 {
            let mut term = TrigPoly::from_i64(rng.gen_range(-9..10));
            for _ in 0..rng.gen_range(0..4) {
                term = term.mul(&gens[rng.gen_range(0..4)]);
            }
            p = p.add(&term);
        }
        p
    }

    #[test]
    fn tan_half_back_substitution() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..20 {
            let p = random_trig(&mut rng);
            let (da, d1) = p.orders();
            let b = trig_to_bipoly(&p);
            let f = b.to_float();
            let unscaled = |t: f64, t1: f64| -> f64 {
                // undo the power-of-two normalisation of to_float
                let bits = b.rows().iter().map(UniPoly::max_bits).max().unwrap_or(0);
                f.eval(t, t1) * 2f64.powi(bits as i32)
            };
            for _ in 0..100 {
                let a = rng.gen_range(-3.0..3.0);
                let th = rng.gen_range(-3.0..3.0);
                let (t, t1) = ((a / 2.0f64).tan(), (th / 2.0f64).tan());
                let clear = (1.0 + t * t).powi(da as i32) * (1.0 + t1 * t1).powi(d1 as i32);
                let (v, m) = p.eval_f64(a, th);
                let got = unscaled(t, t1);
                assert!((got - v * clear).abs() <= 1e-10 * (m * clear).max(1.0), "{got} vs {}", v * clear);
            }
        }
    }

    #[test]
    fn quarter_turn_shift() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let p = random_trig(&mut rng);
        let q = p.shift_quarter_turn();
        for _ in 0..20 {
            let a = rng.gen_range(-3.0..3.0);
            let th = rng.gen_range(-3.0..3.0);
            let (v, m) = p.eval_f64(a + std::f64::consts::FRAC_PI_2, th + std::f64::consts::FRAC_PI_2);
            let (w, _) = q.eval_f64(a, th);
            assert!((v - w).abs() <= 1e-12 * m.max(1.0));
        }
    }
}
