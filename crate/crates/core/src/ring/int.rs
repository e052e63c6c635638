//! Integer helpers shared by the `Int` and `QuadInt` backends.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g` and `g ≥ 0`.
pub fn egcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// Product of the distinct prime factors of `|n|`, found by trial division.
/// Gives up (returning `|n|`) when the cofactor is too large to finish.
pub fn radical(n: &BigInt) -> BigInt {
    let mut m = n.abs();
    if m.is_zero() || m.is_one() {
        return m;
    }
    let mut rad = BigInt::one();
    let mut p = BigInt::from(2u32);
    let limit = BigInt::from(1u64 << 20);
    while &p * &p <= m {
        if p > limit {
            // cofactor not fully factored; its own radical is unknown
            return rad * m;
        }
        if m.is_multiple_of(&p) {
            rad *= &p;
            while m.is_multiple_of(&p) {
                m /= &p;
            }
        }
        p += if p == BigInt::from(2u32) { 1u32 } else { 2u32 };
    }
    if !m.is_one() {
        rad *= m;
    }
    rad
}

/// True if `|n|` has no repeated prime factor (`n ≠ 0`).
pub fn is_squarefree_i64(n: i64) -> bool {
    if n == 0 {
        return false;
    }
    let mut m = n.unsigned_abs();
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p * p) {
            return false;
        }
        if m.is_multiple_of(p) {
            m /= p;
        }
        p += 1;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let (mut d, mut s) = (n - 1, 0);
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'outer: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'outer;
            }
        }
        return false;
    }
    true
}

pub fn to_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

pub fn inv_mod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        return None;
    }
    let (g, s, _) = egcd(&BigInt::from(a), &BigInt::from(p));
    g.is_one().then(|| to_mod(&s, p))
}

/// `x` reduced into `[0, |m|)`; unchanged when `m = 0`.
pub fn reduce_mod(x: &BigInt, m: &BigInt) -> BigInt {
    if m.is_zero() {
        x.clone()
    } else {
        x.mod_floor(&m.abs())
    }
}

pub fn bitlen(n: &BigInt) -> u64 {
    n.bits()
}


/// `Z` on `i128`, panicking on overflow. Used for bulk sweeps over small
/// coefficients.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SmallInt;

impl super::CommRing for SmallInt {
    type Elem = i128;

    fn zero(&self) -> i128 {
        0
    }

    fn one(&self) -> i128 {
        1
    }

    fn from_i64(&self, n: i64) -> i128 {
        n as i128
    }

    fn add(&self, x: &i128, y: &i128) -> i128 {
        x.checked_add(*y).expect("i128 overflow")
    }

    fn neg(&self, x: &i128) -> i128 {
        x.checked_neg().expect("i128 overflow")
    }

    fn mul(&self, x: &i128, y: &i128) -> i128 {
        x.checked_mul(*y).expect("i128 overflow")
    }

    fn is_zero(&self, x: &i128) -> bool {
        *x == 0
    }
}
