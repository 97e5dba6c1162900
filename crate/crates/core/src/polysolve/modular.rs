//! Multi-modular gcd for primitive integer polynomials.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::unipoly::UniPoly;

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    // deterministic for n < 3.2e9
    'bases: for a in [2u64, 3, 5, 7] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = x * x % n;
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1u64;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// Primes below 2^31 in descending order.
fn primes() -> &'static [u64] {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let mut out = Vec::with_capacity(4096);
        let mut n = (1u64 << 31) - 1;
        while out.len() < 4096 {
            if is_prime(n) {
                out.push(n);
            }
            n -= 2;
        }
        out
    })
}

fn reduce(a: &UniPoly, p: u64) -> Vec<u64> {
    let pb = BigInt::from(p);
    a.coeffs()
        .iter()
        .map(|c| c.mod_floor(&pb).to_u64().expect("residue fits"))
        .collect()
}

fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv(a: u64, p: u64) -> u64 {
    pow_mod(a, p - 2, p)
}

/// Monic gcd over `Z/p`.
fn gcd_mod(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        // a <- a mod b
        let lb = inv(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let shift = a.len() - b.len();
            let f = a.last().unwrap() * lb % p;
            for (j, &bj) in b.iter().enumerate() {
                a[shift + j] = (a[shift + j] + p - f * bj % p) % p;
            }
            trim(&mut a);
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&l) = a.last() {
        let li = inv(l, p);
        for c in a.iter_mut() {
            *c = *c * li % p;
        }
    }
    a
}

fn symmetric(c: &BigInt, m: &BigInt) -> BigInt {
    let r = c.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// gcd of two primitive polynomials of positive degree; primitive result with
/// positive leading coefficient.
pub(crate) fn gcd_primitive(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let la = a.leading().expect("nonzero");
    let lb = b.leading().expect("nonzero");
    let lc = la.gcd(lb);
    let mut best_deg = usize::MAX;
    let mut acc: Vec<BigInt> = Vec::new();
    let mut modulus = BigInt::one();
    let mut last_lift: Option<UniPoly> = None;
    for &p in primes() {
        let pb = BigInt::from(p);
        if (la % &pb).is_zero() || (lb % &pb).is_zero() {
            continue;
        }
        let g = gcd_mod(reduce(a, p), reduce(b, p), p);
        let deg = g.len() - 1;
        if deg == 0 {
            return UniPoly::constant(BigInt::one());
        }
        if deg > best_deg {
            continue;
        }
        let lcp = lc.mod_floor(&pb).to_u64().unwrap();
        let g: Vec<u64> = g.iter().map(|c| c * lcp % p).collect();
        if deg < best_deg {
            best_deg = deg;
            acc = g.iter().map(|&c| BigInt::from(c)).collect();
            modulus = pb;
            last_lift = None;
            continue;
        }
        // CRT: x = acc mod M, x = g mod p
        let m_mod_p = (&modulus % &pb).to_u64().unwrap();
        let m_inv = inv(m_mod_p, p);
        for (x, &gi) in acc.iter_mut().zip(&g) {
            let xp = (&*x % &pb).to_u64().unwrap();
            let t = (gi + p - xp) % p * m_inv % p;
            *x += &modulus * t;
        }
        modulus *= &pb;
        let lift = UniPoly::new(acc.iter().map(|c| symmetric(c, &modulus)).collect());
        if last_lift.as_ref() == Some(&lift) {
            let cand = lift.primitive();
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        }
        last_lift = Some(lift);
    }
    unreachable!("prime supply exhausted in modular gcd")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_prime() {
        let ps = primes();
        assert_eq!(ps[0], 2_147_483_647);
        assert!(ps.windows(2).all(|w| w[0] > w[1]));
        for &p in ps.iter().take(5) {
            assert!((2..=46341u64).all(|d| p % d != 0));
        }
    }

    #[test]
    fn gcd_with_large_coefficients() {
        let big: BigInt = num_traits::pow(BigInt::from(10), 60) + 7;
        let f = UniPoly::new(vec![big.clone(), BigInt::from(3), -big.clone()]);
        let g = UniPoly::new(vec![BigInt::from(1), big.clone()]);
        let h = UniPoly::new(vec![-big.clone() * 3, BigInt::from(1)]);
        let a = f.mul(&g);
        let b = f.mul(&h);
        assert_eq!(gcd_primitive(&a.primitive(), &b.primitive()), f.primitive());
    }
}
