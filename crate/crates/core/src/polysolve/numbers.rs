//! Conversions between floating inputs and exact rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The exact value of the shortest decimal string that round-trips `x`
/// (`15.91 -> 1591/100`).
pub fn rational_from_decimal(x: f64) -> Result<BigRational> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite value {x}")));
    }
    let s = format!("{x}");
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.as_str()),
    };
    let (int, frac) = body.split_once('.').unwrap_or((body, ""));
    let digits: BigInt = format!("{int}{frac}").parse().expect("decimal digits");
    let den = num_traits::pow(BigInt::from(10), frac.len());
    let v = BigRational::new(digits, den);
    Ok(if neg { -v } else { v })
}

/// Rational approximation of `sqrt(x)` for rational `x >= 0`, chosen as the
/// continued-fraction convergent of smallest denominator within relative
/// error `rel_tol`.
pub fn rational_sqrt(x: &BigRational, rel_tol: f64) -> BigRational {
    assert!(!x.is_negative(), "square root of a negative value");
    if x.is_zero() {
        return BigRational::zero();
    }
    // 120 extra decimal digits of a fixed-point square root
    let scale = num_traits::pow(BigInt::from(10), 120);
    let n = x.numer() * &scale * &scale / x.denom();
    let root = BigRational::new(n.sqrt(), scale);
    let tol = super::roots::from_f64_exact(rel_tol) * &root;

    // convergents h/k of root
    let (mut h0, mut h1) = (BigInt::zero(), BigInt::one());
    let (mut k0, mut k1) = (BigInt::one(), BigInt::zero());
    let mut rem = root.clone();
    loop {
        let a = rem.floor().to_integer();
        let h2 = &a * &h1 + &h0;
        let k2 = &a * &k1 + &k0;
        let cand = BigRational::new(h2.clone(), k2.clone());
        if (&cand - &root).abs() <= tol {
            return cand;
        }
        let frac = &rem - BigRational::from(a);
        if frac.is_zero() {
            return cand;
        }
        rem = frac.recip();
        (h0, h1, k0, k1) = (h1, h2, k1, k2);
    }
}
