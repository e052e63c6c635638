//! Sparse multivariate polynomials over the rationals and a plain Buchberger
//! engine. This backs the `MPolyQ` ring: ideal membership, radical membership
//! (Rabinowitsch) and exact division.
//!
//! Terms are kept in a `BTreeMap` keyed by [`Mono`], whose `Ord` is graded
//! reverse lexicographic, so the leading term is always the last entry.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Exponent vector ordered by grevlex (variables in declaration order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mono(pub Vec<u32>);

impl Mono {
    pub fn one(nvars: usize) -> Self {
        Mono(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self.divides(other)`.
    pub fn quotient_of(&self, other: &Mono) -> Mono {
        Mono(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Mono) -> Mono {
        Mono(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Mono) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            o => return o,
        }
        for (a, b) in self.0.iter().zip(&other.0).rev() {
            if a != b {
                // smaller exponent in the last differing variable wins
                return b.cmp(a);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A polynomial in `nvars` variables with rational coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Mono, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Mono::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, BigRational::one())
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(Mono(e), BigRational::one())
    }

    pub fn monomial(m: Mono, c: BigRational) -> Self {
        let nvars = m.0.len();
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigRational)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Mono(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().next().is_some_and(|(m, c)| m.degree() == 0 && c.is_one())
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Mono, &BigRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Mono::degree).max()
    }

    /// Constant term value if the polynomial is constant.
    pub fn as_constant(&self) -> Option<BigRational> {
        match self.terms.len() {
            0 => Some(BigRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                (m.degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Mono, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn neg(&self) -> MPoly {
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        let mut r = MPoly::zero(self.nvars);
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                r.add_term(m1.mul(m2), c1 * c2);
            }
        }
        r
    }

    pub fn scale(&self, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_term(&self, m: &Mono, c: &BigRational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn monic(&self) -> MPoly {
        match self.leading() {
            Some((_, c)) => {
                let inv = c.recip();
                self.scale(&inv)
            }
            None => self.clone(),
        }
    }

    /// Adds `extra` fresh variables after the existing ones.
    pub fn embed(&self, extra: usize) -> MPoly {
        let nvars = self.nvars + extra;
        MPoly {
            nvars,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(nvars, 0);
                    (Mono(e), c.clone())
                })
                .collect(),
        }
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.nvars);
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Exact quotient `self / divisor`, or `None` when the divisor does not
    /// divide. A single polynomial is its own Gröbner basis, so plain
    /// leading-term division decides divisibility.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading()?;
        let (lm, lc_inv) = (lm.clone(), lc.recip());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading() {
            if !lm.divides(m) {
                return None;
            }
            let qm = lm.quotient_of(m);
            let qc = c * &lc_inv;
            rem = rem.sub(&divisor.mul_term(&qm, &qc));
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Clears denominators and content so the result has coprime integer
    /// coefficients and a positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        use num_integer::Integer;
        if self.is_zero() {
            return self.clone();
        }
        let mut den = BigInt::one();
        for c in self.terms.values() {
            den = den.lcm(c.denom());
        }
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(&(c.numer() * (&den / c.denom())));
        }
        let mut f = BigRational::new(den, g);
        if self.leading().unwrap().1.is_negative() {
            f = -f;
        }
        self.scale(&f)
    }
}

/// `Q[x₁, …, xₙ]` as a [`CommRing`], without the variable-count cap of the
/// `MPolyQ` backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MPolys(pub usize);

impl crate::ring::CommRing for MPolys {
    type Elem = MPoly;

    fn zero(&self) -> MPoly {
        MPoly::zero(self.0)
    }

    fn one(&self) -> MPoly {
        MPoly::one(self.0)
    }

    fn from_i64(&self, n: i64) -> MPoly {
        MPoly::constant(self.0, BigRational::from_integer(BigInt::from(n)))
    }

    fn add(&self, x: &MPoly, y: &MPoly) -> MPoly {
        x.add(y)
    }

    fn neg(&self, x: &MPoly) -> MPoly {
        x.neg()
    }

    fn mul(&self, x: &MPoly, y: &MPoly) -> MPoly {
        x.mul(y)
    }

    fn is_zero(&self, x: &MPoly) -> bool {
        x.is_zero()
    }
}

/// Reduced, monic Gröbner basis under grevlex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    nvars: usize,
    generators: Vec<MPoly>,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[MPoly] {
        &self.generators
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.generators.iter().any(MPoly::is_one)
    }
}

/// Remainder of `p` after full reduction by `basis`.
fn reduce(p: &MPoly, basis: &[MPoly]) -> MPoly {
    let mut rem = MPoly::zero(p.nvars);
    let mut work = p.clone();
    'outer: while let Some((m, c)) = work.leading() {
        let (m, c) = (m.clone(), c.clone());
        for g in basis {
            let (gm, gc) = g.leading().expect("basis elements are nonzero");
            if gm.divides(&m) {
                let q = gm.quotient_of(&m);
                let coef = &c / gc;
                work = work.sub(&g.mul_term(&q, &coef));
                continue 'outer;
            }
        }
        work.terms.remove(&m);
        rem.add_term(m, c);
    }
    rem
}

fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let (fm, fc) = f.leading().unwrap();
    let (gm, gc) = g.leading().unwrap();
    let l = fm.lcm(gm);
    let a = f.mul_term(&fm.quotient_of(&l), &fc.recip());
    let b = g.mul_term(&gm.quotient_of(&l), &gc.recip());
    a.sub(&b)
}

/// Buchberger's algorithm with the coprime-leading-monomial criterion and
/// the normal selection strategy. Fails with `ResourceLimit` once more than
/// `max_pairs` pairs have been processed.
pub fn buchberger(gens: &[MPoly], max_pairs: usize) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, MPoly::nvars);
    let mut basis: Vec<MPoly> = Vec::new();
    for g in gens {
        if g.nvars != nvars {
            return Err(Error::PreconditionViolated("generators in different rings".into()));
        }
        let r = reduce(g, &basis);
        if !r.is_zero() {
            basis.push(r.monic());
        }
    }
    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for j in 0..basis.len() {
        for i in 0..j {
            pairs.push((i, j));
        }
    }
    let mut processed = 0usize;
    while !pairs.is_empty() {
        // normal strategy: smallest lcm first
        let (idx, _) = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                let la = basis[a.0].leading().unwrap().0.lcm(basis[a.1].leading().unwrap().0);
                let lb = basis[b.0].leading().unwrap().0.lcm(basis[b.1].leading().unwrap().0);
                la.cmp(&lb)
            })
            .unwrap();
        let (i, j) = pairs.swap_remove(idx);
        processed += 1;
        if processed > max_pairs {
            return Err(Error::ResourceLimit(format!("Buchberger exceeded {max_pairs} pairs")));
        }
        let (mi, mj) = (basis[i].leading().unwrap().0, basis[j].leading().unwrap().0);
        if mi.coprime(mj) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if !r.is_zero() {
            let r = r.monic();
            if r.is_one() {
                return Ok(GroebnerBasis { nvars, generators: vec![MPoly::one(nvars)] });
            }
            let k = basis.len();
            basis.push(r);
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }
    Ok(GroebnerBasis { nvars, generators: interreduce(basis) })
}

fn interreduce(mut basis: Vec<MPoly>) -> Vec<MPoly> {
    // drop generators whose leading monomial is divisible by another's
    let mut keep: Vec<MPoly> = Vec::new();
    basis.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    for g in basis {
        let lm = g.leading().unwrap().0.clone();
        if keep.iter().any(|h| h.leading().unwrap().0.divides(&lm)) {
            continue;
        }
        keep.push(g);
    }
    let mut out = Vec::with_capacity(keep.len());
    for i in 0..keep.len() {
        let others: Vec<MPoly> =
            keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, g)| g.clone()).collect();
        let lead = MPoly::monomial(keep[i].leading().unwrap().0.clone(), BigRational::one());
        let tail = keep[i].monic().sub(&lead);
        out.push(lead.add(&reduce(&tail, &others)));
    }
    out.sort_by(|a, b| a.leading().unwrap().0.cmp(b.leading().unwrap().0));
    out
}

pub fn normal_form(p: &MPoly, gb: &GroebnerBasis) -> MPoly {
    reduce(p, &gb.generators)
}

pub fn ideal_member(p: &MPoly, gb: &GroebnerBasis) -> bool {
    normal_form(p, gb).is_zero()
}

/// Decides `p ∈ √⟨gens⟩` with one extra variable `t`:
/// `p` is in the radical iff `1 ∈ ⟨gens, 1 − t·p⟩`.
pub fn radical_member(p: &MPoly, gens: &[MPoly], max_pairs: usize) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if gens.iter().all(MPoly::is_zero) {
        // ℚ[x] is reduced: only 0 lies in the radical of the zero ideal
        return Ok(false);
    }
    let n = p.nvars();
    let t = MPoly::var(n + 1, n);
    let mut ext: Vec<MPoly> = gens.iter().map(|g| g.embed(1)).collect();
    ext.push(MPoly::one(n + 1).sub(&t.mul(&p.embed(1))));
    let gb = buchberger(&ext, max_pairs)?;
    Ok(gb.is_unit_ideal())
}
