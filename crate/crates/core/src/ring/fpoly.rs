//! Dense univariate polynomials over a field backend (`Q` or `F_p`), used as
//! the element type of `PolyOverField`. Coefficient vectors are ascending and
//! trimmed.

use super::{CommRing, Elem, Ring};

pub(super) fn trim(k: &Ring, mut f: Vec<Elem>) -> Vec<Elem> {
    while f.last().is_some_and(|c| k.is_zero(c)) {
        f.pop();
    }
    f
}

pub(super) fn add(k: &Ring, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    let n = f.len().max(g.len());
    let z = k.zero();
    let v = (0..n).map(|i| k.add(f.get(i).unwrap_or(&z), g.get(i).unwrap_or(&z))).collect();
    trim(k, v)
}

pub(super) fn neg(k: &Ring, f: &[Elem]) -> Vec<Elem> {
    f.iter().map(|c| k.neg(c)).collect()
}

pub(super) fn sub(k: &Ring, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    add(k, f, &neg(k, g))
}

pub(super) fn mul(k: &Ring, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![k.zero(); f.len() + g.len() - 1];
    for (i, a) in f.iter().enumerate() {
        if k.is_zero(a) {
            continue;
        }
        for (j, b) in g.iter().enumerate() {
            out[i + j] = k.add(&out[i + j], &k.mul(a, b));
        }
    }
    trim(k, out)
}

pub(super) fn scale(k: &Ring, f: &[Elem], c: &Elem) -> Vec<Elem> {
    trim(k, f.iter().map(|a| k.mul(a, c)).collect())
}

/// Euclidean division; `g` must be nonzero.
pub(super) fn divmod(k: &Ring, f: &[Elem], g: &[Elem]) -> (Vec<Elem>, Vec<Elem>) {
    let lc_inv = k.inverse(g.last().expect("nonzero divisor")).expect("field coefficient");
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    if r.len() < g.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![k.zero(); r.len() - dg];
    while r.len() >= g.len() {
        let shift = r.len() - g.len();
        let c = k.mul(r.last().unwrap(), &lc_inv);
        for (j, b) in g.iter().enumerate() {
            r[shift + j] = k.sub(&r[shift + j], &k.mul(&c, b));
        }
        q[shift] = c;
        // the leading term cancels exactly
        r.pop();
        r = trim(k, r);
    }
    (trim(k, q), r)
}

pub(super) fn monic(k: &Ring, f: &[Elem]) -> Vec<Elem> {
    match f.last() {
        Some(c) => scale(k, f, &k.inverse(c).expect("field coefficient")),
        None => Vec::new(),
    }
}

/// Extended Euclid: `(g, s, t)` with `s·f + t·h = g`, `g` monic (or zero).
pub(super) fn ext_gcd(k: &Ring, f: &[Elem], h: &[Elem]) -> (Vec<Elem>, Vec<Elem>, Vec<Elem>) {
    let (mut r0, mut r1) = (f.to_vec(), h.to_vec());
    let (mut s0, mut s1) = (vec![k.one()], Vec::new());
    let (mut t0, mut t1) = (Vec::new(), vec![k.one()]);
    while !r1.is_empty() {
        let (q, r) = divmod(k, &r0, &r1);
        let s2 = sub(k, &s0, &mul(k, &q, &s1));
        let t2 = sub(k, &t0, &mul(k, &q, &t1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match r0.last() {
        Some(c) => {
            let inv = k.inverse(c).expect("field coefficient");
            (scale(k, &r0, &inv), scale(k, &s0, &inv), scale(k, &t0, &inv))
        }
        None => (r0, s0, t0),
    }
}

pub(super) fn gcd(k: &Ring, f: &[Elem], h: &[Elem]) -> Vec<Elem> {
    ext_gcd(k, f, h).0
}

pub(super) fn derivative(k: &Ring, f: &[Elem]) -> Vec<Elem> {
    let v = f.iter().enumerate().skip(1).map(|(i, c)| k.mul(&k.from_i64(i as i64), c)).collect();
    trim(k, v)
}

pub(super) fn pow_mod(k: &Ring, base: &[Elem], mut e: u64, m: &[Elem]) -> Vec<Elem> {
    let mut acc = divmod(k, &[k.one()], m).1;
    let mut b = divmod(k, base, m).1;
    while e > 0 {
        if e & 1 == 1 {
            acc = divmod(k, &mul(k, &acc, &b), m).1;
        }
        e >>= 1;
        if e > 0 {
            b = divmod(k, &mul(k, &b, &b), m).1;
        }
    }
    acc
}
