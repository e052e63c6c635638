//! Universal orbit relations. For `f = Xⁿ + b₁Xⁿ⁻¹ + ⋯ + bₙ = ∏(X − tⱼ)`
//! and the `C(n, m)` values `yₛ = (−1)ᵏ·e_k(t_S)`, `|S| = m`, this computes
//! `∏ₛ (Z − yₛ) = Zˡ + p₁Zˡ⁻¹ + ⋯ + p_l` with every `pᵢ` an integer
//! polynomial in `b₁, …, bₙ`.
//!
//! Route: orbit power sums `Σₛ e_k(t_S)ʳ` are expanded over monomial
//! symmetric functions of `t`, rewritten in power sums of `t` by Möbius
//! inversion on set partitions, and then in `b` by Newton's identities.
//! Newton's identities once more turn orbit power sums into the `pᵢ`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::grobner::MPoly;
use crate::ring::CommRing;

/// 16-bit exponent fields, variable `i` at bits `16i..16i+16`.
type Key = u128;
const FIELD: u32 = 16;

fn unit_key(i: usize) -> Key {
    1u128 << (FIELD * i as u32)
}

fn unpack(key: Key, n: usize) -> Vec<u32> {
    (0..n).map(|i| ((key >> (FIELD * i as u32)) & 0xffff) as u32).collect()
}

#[derive(Clone, Debug, Default)]
struct ZPoly(HashMap<Key, BigInt>);

impl ZPoly {
    fn constant(c: BigInt) -> Self {
        let mut m = HashMap::new();
        if !c.is_zero() {
            m.insert(0, c);
        }
        ZPoly(m)
    }

    fn term(key: Key, c: BigInt) -> Self {
        let mut m = HashMap::new();
        m.insert(key, c);
        ZPoly(m)
    }

    fn add_mul(&mut self, other: &ZPoly, c: &BigInt) {
        for (k, v) in &other.0 {
            *self.0.entry(*k).or_default() += v * c;
        }
    }

    /// `self += a·b·sign`
    fn add_product(&mut self, a: &ZPoly, b: &ZPoly, negate: bool) {
        for (ka, va) in &a.0 {
            for (kb, vb) in &b.0 {
                let e = self.0.entry(ka + kb).or_default();
                if negate {
                    *e -= va * vb;
                } else {
                    *e += va * vb;
                }
            }
        }
    }

    fn mul(&self, other: &ZPoly) -> ZPoly {
        let mut out = ZPoly::default();
        out.add_product(self, other, false);
        out.prune();
        out
    }

    fn mul_key(&self, key: Key, c: &BigInt) -> ZPoly {
        ZPoly(self.0.iter().map(|(k, v)| (k + key, v * c)).collect())
    }

    fn prune(&mut self) {
        self.0.retain(|_, v| !v.is_zero());
    }

    fn div_exact(&mut self, d: &BigInt) {
        for v in self.0.values_mut() {
            let (q, r) = v.div_rem(d);
            debug_assert!(r.is_zero());
            *v = q;
        }
    }
}

/// Power sums `p₀ … p_upto` of the roots, as polynomials in `b`.
fn root_power_sums(n: usize, upto: usize) -> Vec<ZPoly> {
    let mut p = vec![ZPoly::constant(BigInt::from(n))];
    for j in 1..=upto {
        let mut s = ZPoly::default();
        for i in 1..=n.min(j) {
            if i == j {
                s.add_mul(&ZPoly::term(unit_key(i - 1), BigInt::from(j)), &BigInt::one());
            } else {
                s.add_mul(&p[j - i].mul_key(unit_key(i - 1), &BigInt::one()), &BigInt::one());
            }
        }
        s.prune();
        for v in s.0.values_mut() {
            *v = -&*v;
        }
        p.push(s);
    }
    p
}

fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

fn factorial(n: usize) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, i| a * BigInt::from(i))
}

pub(crate) fn orbit_size(n: usize, m: usize) -> usize {
    let mut acc: u128 = 1;
    for i in 0..m.min(n) {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    if m > n {
        0
    } else {
        acc.min(usize::MAX as u128) as usize
    }
}

/// Set partitions of `0..len` as block lists.
fn set_partitions(len: usize) -> Vec<Vec<Vec<usize>>> {
    let mut out = Vec::new();
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    fn rec(i: usize, len: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<Vec<Vec<usize>>>) {
        if i == len {
            out.push(blocks.clone());
            return;
        }
        for b in 0..blocks.len() {
            blocks[b].push(i);
            rec(i + 1, len, blocks, out);
            blocks[b].pop();
        }
        blocks.push(vec![i]);
        rec(i + 1, len, blocks, out);
        blocks.pop();
    }
    rec(0, len, &mut blocks, &mut out);
    out
}

/// Monomials of `e_k(u₁, …, u_m)ʳ` keyed by exponent vectors.
fn ek_power(m: usize, k: usize, r: usize) -> HashMap<Vec<u32>, BigInt> {
    let mut ek: Vec<Vec<u32>> = Vec::new();
    for mask in 0u32..(1 << m) {
        if mask.count_ones() as usize == k {
            ek.push((0..m).map(|i| (mask >> i) & 1).collect());
        }
    }
    let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
    acc.insert(vec![0; m], BigInt::one());
    for _ in 0..r {
        let mut next: HashMap<Vec<u32>, BigInt> = HashMap::new();
        for (e, c) in &acc {
            for s in &ek {
                let key: Vec<u32> = e.iter().zip(s).map(|(a, b)| a + b).collect();
                *next.entry(key).or_default() += c;
            }
        }
        acc = next;
    }
    acc
}

/// `Σₛ e_k(t_S)ʳ` as a combination of products of root power sums, keyed
/// by the (descending) list of power-sum indices.
fn orbit_power_sum_in_p(n: usize, m: usize, k: usize, r: usize) -> HashMap<Vec<u32>, BigRational> {
    let mut out: HashMap<Vec<u32>, BigRational> = HashMap::new();
    let mut partitions: HashMap<usize, Vec<Vec<Vec<usize>>>> = HashMap::new();
    for (expo, coeff) in ek_power(m, k, r) {
        if expo.windows(2).any(|w| w[0] < w[1]) {
            continue;
        }
        let parts: Vec<u32> = expo.into_iter().filter(|&e| e > 0).collect();
        let l = parts.len();
        let mut aut = BigInt::one();
        let mut i = 0;
        while i < l {
            let j = (i..l).find(|&j| parts[j] != parts[i]).unwrap_or(l);
            aut *= factorial(j - i);
            i = j;
        }
        let base = BigRational::new(coeff * binomial(n - l, m - l), aut);
        let sps = partitions.entry(l).or_insert_with(|| set_partitions(l));
        for pi in sps.iter() {
            let mut mu = BigInt::one();
            let mut idx = Vec::with_capacity(pi.len());
            for block in pi {
                let s = block.len();
                mu *= factorial(s - 1);
                if s % 2 == 0 {
                    mu = -mu;
                }
                idx.push(block.iter().map(|&b| parts[b]).sum::<u32>());
            }
            idx.sort_unstable_by(|a, b| b.cmp(a));
            *out.entry(idx).or_insert_with(BigRational::zero) += &base * BigRational::from_integer(mu);
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

struct ProductCache<'a> {
    p: &'a [ZPoly],
    memo: HashMap<Vec<u32>, ZPoly>,
}

impl ProductCache<'_> {
    fn get(&mut self, idx: &[u32]) -> ZPoly {
        if idx.is_empty() {
            return ZPoly::constant(BigInt::one());
        }
        if idx.len() == 1 {
            return self.p[idx[0] as usize].clone();
        }
        if let Some(v) = self.memo.get(idx) {
            return v.clone();
        }
        let head = self.get(&idx[..idx.len() - 1]);
        let v = head.mul(&self.p[idx[idx.len() - 1] as usize]);
        self.memo.insert(idx.to_vec(), v.clone());
        v
    }
}

fn orbit_relation(n: usize, m: usize, k: usize) -> Vec<ZPoly> {
    let l = orbit_size(n, m);
    let p = root_power_sums(n, l * k);
    let mut cache = ProductCache { p: &p, memo: HashMap::new() };
    let mut power_sums = vec![ZPoly::default()];
    for r in 1..=l {
        let combo = orbit_power_sum_in_p(n, m, k, r);
        let den = combo.values().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let mut keys: Vec<&Vec<u32>> = combo.keys().collect();
        keys.sort();
        let mut acc = ZPoly::default();
        for idx in keys {
            let c = &combo[idx];
            let scaled = c.numer() * (&den / c.denom());
            acc.add_mul(&cache.get(idx), &scaled);
        }
        acc.prune();
        acc.div_exact(&den);
        power_sums.push(acc);
    }
    drop(cache);
    // Newton: i·Eᵢ = Σ_{r=1}^{i} (−1)^{r−1} E_{i−r}·P_r
    let mut e = vec![ZPoly::constant(BigInt::one())];
    for i in 1..=l {
        let mut acc = ZPoly::default();
        for r in 1..=i {
            acc.add_product(&e[i - r], &power_sums[r], r % 2 == 0);
        }
        acc.prune();
        acc.div_exact(&BigInt::from(i));
        e.push(acc);
    }
    // coefficient of Z^{l−i} for the values (−1)ᵏ·e_k(t_S)
    e.into_iter()
        .enumerate()
        .skip(1)
        .map(|(i, mut ei)| {
            if (i * (k + 1)) % 2 == 1 {
                for v in ei.0.values_mut() {
                    *v = -&*v;
                }
            }
            ei
        })
        .collect()
}

/// Relation `p₁ … p_l` for the orbit `(n, m, k)`, with integer coefficients.
#[derive(Debug)]
pub struct UniversalRelation {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// `terms[i]` lists `(exponents of b₁..bₙ, coefficient)` of `p_{i+1}`.
    pub terms: Vec<Vec<(Vec<u32>, BigInt)>>,
    mpolys: OnceLock<Arc<Vec<MPoly>>>,
}

impl UniversalRelation {
    pub fn degree(&self) -> usize {
        self.terms.len()
    }

    /// `p₁ … p_l` as polynomials in `b₁, …, bₙ`.
    pub fn polys(&self) -> Arc<Vec<MPoly>> {
        self.mpolys
            .get_or_init(|| {
                let ps = self.terms.iter().map(|t| {
                    MPoly::from_terms(self.n, t.iter().map(|(e, c)| (e.clone(), BigRational::from_integer(c.clone()))))
                });
                Arc::new(ps.collect())
            })
            .clone()
    }

    /// `pᵢ(b)` for `i = 1 … l` in any ring, given the integer embedding.
    pub fn eval<R: CommRing>(&self, r: &R, b: &[R::Elem], int: impl Fn(&BigInt) -> R::Elem) -> Vec<R::Elem> {
        let maxexp = self.terms.iter().flatten().flat_map(|(e, _)| e.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<R::Elem>> = b
            .iter()
            .map(|bj| {
                let mut v = vec![r.one()];
                for _ in 0..maxexp {
                    v.push(r.mul(v.last().unwrap(), bj));
                }
                v
            })
            .collect();
        self.terms
            .iter()
            .map(|p| {
                p.iter().fold(r.zero(), |acc, (e, c)| {
                    let t = e.iter().enumerate().fold(int(c), |t, (j, &x)| {
                        if x == 0 {
                            t
                        } else {
                            r.mul(&t, &powers[j][x as usize])
                        }
                    });
                    r.add(&acc, &t)
                })
            })
            .collect()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.iter().map(Vec::len).sum()
    }
}

type Cache = Mutex<HashMap<(usize, usize, usize), Arc<UniversalRelation>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The relation for `(n, m, k)`, computed once per process.
pub fn universal_relation(n: usize, m: usize, k: usize) -> Arc<UniversalRelation> {
    assert!(1 <= k && k <= m && m <= n && n <= 8);
    if let Some(r) = cache().lock().unwrap().get(&(n, m, k)) {
        return r.clone();
    }
    let terms = orbit_relation(n, m, k)
        .into_iter()
        .map(|p| {
            let mut t: Vec<(Vec<u32>, BigInt)> = p.0.into_iter().map(|(key, c)| (unpack(key, n), c)).collect();
            t.sort();
            t
        })
        .collect();
    let rel = Arc::new(UniversalRelation { n, m, k, terms, mpolys: OnceLock::new() });
    cache().lock().unwrap().entry((n, m, k)).or_insert(rel).clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn term(e: &[u32], c: i64) -> (Vec<u32>, BigInt) {
        (e.to_vec(), BigInt::from(c))
    }

    #[test]
    fn quadratic_root_relation() {
        // the orbit of −t over the two roots: Z² − b₁Z + b₂
        let r = universal_relation(2, 1, 1);
        assert_eq!(r.terms, vec![vec![term(&[1, 0], -1)], vec![term(&[0, 1], 1)]]);
    }

    #[test]
    fn full_subset_is_tautological() {
        // m = n: the single value (−1)ᵏ·e_k = b_k
        for k in 1..=3 {
            let r = universal_relation(3, 3, k);
            let mut e = vec![0; 3];
            e[k - 1] = 1;
            assert_eq!(r.terms, vec![vec![term(&e, -1)]]);
        }
    }

    #[test]
    fn weights_are_multiples_of_k() {
        for (n, m, k) in [(4, 2, 1), (4, 2, 2), (5, 2, 2), (5, 3, 1)] {
            let r = universal_relation(n, m, k);
            assert_eq!(r.degree(), orbit_size(n, m));
            for (i, p) in r.terms.iter().enumerate() {
                for (e, _) in p {
                    let w: usize = e.iter().enumerate().map(|(j, &x)| (j + 1) * x as usize).sum();
                    assert_eq!(w, (i + 1) * k);
                }
            }
        }
    }

    /// Direct expansion of `∏ₛ (Z − (−1)ᵏ·e_k(t_S))` for integer roots.
    fn direct(roots: &[i64], m: usize, k: usize) -> Vec<BigInt> {
        let n = roots.len();
        let mut poly = vec![BigInt::one()];
        for mask in 0u32..(1 << n) {
            if mask.count_ones() as usize != m {
                continue;
            }
            let sub: Vec<i64> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| roots[i]).collect();
            let mut ek = BigInt::zero();
            for inner in 0u32..(1 << m) {
                if inner.count_ones() as usize == k {
                    ek += (0..m).filter(|i| inner >> i & 1 == 1).fold(BigInt::one(), |a, i| a * sub[i]);
                }
            }
            let y = if k % 2 == 1 { -ek } else { ek };
            let mut next = vec![BigInt::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i] += c;
                next[i + 1] -= c * &y;
            }
            poly = next;
        }
        poly
    }

    fn eval(terms: &[(Vec<u32>, BigInt)], b: &[BigInt]) -> BigInt {
        terms.iter().fold(BigInt::zero(), |acc, (e, c)| {
            acc + e.iter().zip(b).fold(c.clone(), |x, (&d, bj)| x * num_traits::pow(bj.clone(), d as usize))
        })
    }

    #[test]
    fn matches_direct_expansion() {
        let roots = [2i64, -1, 3, 0, 5, -4];
        for (n, m, k) in [(3, 1, 1), (4, 2, 1), (4, 2, 2), (5, 2, 2), (5, 3, 2), (5, 3, 3), (6, 2, 1), (6, 5, 3)] {
            let t = &roots[..n];
            // b from ∏(X − tⱼ)
            let mut f = vec![BigInt::one()];
            for &tj in t {
                let mut next = vec![BigInt::zero(); f.len() + 1];
                for (i, c) in f.iter().enumerate() {
                    next[i] += c;
                    next[i + 1] -= c * tj;
                }
                f = next;
            }
            let rel = universal_relation(n, m, k);
            let want = direct(t, m, k);
            for (i, p) in rel.terms.iter().enumerate() {
                assert_eq!(eval(p, &f[1..]), want[i + 1], "{:?} p{}", (n, m, k), i + 1);
            }
        }
    }

    #[test]
    fn sizes() {
        assert_eq!(orbit_size(6, 3), 20);
        assert_eq!(orbit_size(8, 4), 70);
        assert_eq!(orbit_size(2, 3), 0);
        assert_eq!(set_partitions(3).len(), 5);
        assert_eq!(set_partitions(4).len(), 15);
    }
}
