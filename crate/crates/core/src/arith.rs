//! Small-integer arithmetic shared by the homology and bound computations.

use num_bigint::BigUint;
use num_traits::{One, Pow};

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Prime factorization by trial division, primes ascending with multiplicity.
/// `factorize(1)` is empty.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    assert!(n >= 1, "factorize(0) is undefined");
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest `e` with `p^e | m`.
pub fn padic_valuation(p: u64, m: u64) -> u32 {
    assert!(p >= 2, "valuation base must be at least 2");
    assert!(m >= 1, "valuation of zero is infinite");
    let mut m = m;
    let mut e = 0;
    while m.is_multiple_of(p) {
        m /= p;
        e += 1;
    }
    e
}

/// `v_p(m!)` by Legendre's formula `Σ floor(m / p^i)`.
pub fn legendre_valuation(p: u64, m: u64) -> u64 {
    assert!(p >= 2, "valuation base must be at least 2");
    let mut total = 0;
    let mut q = m / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

pub fn factorial(m: u64) -> BigUint {
    (2..=m).fold(BigUint::one(), |acc, j| acc * j)
}

pub fn big_pow(base: u64, exp: u64) -> BigUint {
    Pow::pow(BigUint::from(base), exp)
}

/// The prime `p` and exponent `f` with `p^f = q`, if `q` is a prime power.
pub fn prime_power_root(q: u64) -> Option<(u64, u32)> {
    match factorize(q.max(1)).as_slice() {
        [(p, f)] => Some((*p, *f)),
        _ => None,
    }
}
