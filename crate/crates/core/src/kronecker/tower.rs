//! Splitting algebras as triangular towers `R → R[x₁] → ⋯ → R[x₁,…,xₙ]`.
//! Stage `i` is the monic polynomial whose root `xᵢ` is adjoined; its
//! coefficients live in the previous stages.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::CommRing;

/// 8-bit exponent fields, root `i` at bits `8i..8i+8`.
type Key = u64;

fn unit(i: usize) -> Key {
    1u64 << (8 * i)
}

fn exponent(key: Key, i: usize) -> usize {
    ((key >> (8 * i)) & 0xff) as usize
}

/// An element in normal form: the exponent of `xᵢ` is below the degree of
/// stage `i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerElem<E> {
    terms: BTreeMap<Key, E>,
}

impl<E> TowerElem<E> {
    /// `(exponents, coefficient)` pairs.
    pub fn terms(&self, n: usize) -> impl Iterator<Item = (Vec<usize>, &E)> {
        self.terms.iter().map(move |(k, c)| ((0..n).map(|i| exponent(*k, i)).collect(), c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }
}

#[derive(Clone, Debug)]
pub struct SplittingTower<R: CommRing> {
    base: R,
    stages: Vec<Vec<TowerElem<R::Elem>>>,
}

impl<R: CommRing> SplittingTower<R> {
    /// The tower of a monic `f` of degree at most 8.
    pub fn new(base: R, f: &Poly<R::Elem>) -> Result<Self> {
        let n = f.degree().ok_or(Error::NotMonic)?;
        if !base.is_one(f.lc().unwrap()) {
            return Err(Error::NotMonic);
        }
        if n > 8 {
            return Err(Error::ResourceLimit(format!("splitting tower of degree {n}")));
        }
        let mut tower = SplittingTower { base, stages: Vec::with_capacity(n) };
        let first: Vec<_> = f.coeffs().iter().map(|c| tower.constant(c.clone())).collect();
        tower.stages.push(first);
        for i in 0..n.saturating_sub(1) {
            let s = &tower.stages[i];
            let d = s.len() - 1;
            let xi = tower.root(i);
            let mut q = vec![tower.zero(); d];
            q[d - 1] = tower.one();
            for j in (1..d).rev() {
                q[j - 1] = tower.add(&tower.stages[i][j], &tower.mul(&xi, &q[j]));
            }
            tower.stages.push(q);
        }
        if n == 0 {
            tower.stages.clear();
        }
        Ok(tower)
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// Number of adjoined roots.
    pub fn degree(&self) -> usize {
        self.stages.len()
    }

    /// Rank over the base, `n!`.
    pub fn rank(&self) -> usize {
        (1..=self.degree()).product()
    }

    /// Ascending coefficients of stage `i` (0-based).
    pub fn stage(&self, i: usize) -> &[TowerElem<R::Elem>] {
        &self.stages[i]
    }

    pub fn constant(&self, c: R::Elem) -> TowerElem<R::Elem> {
        let mut terms = BTreeMap::new();
        if !self.base.is_zero(&c) {
            terms.insert(0, c);
        }
        TowerElem { terms }
    }

    /// The root `xᵢ` (0-based), reduced when its stage is linear.
    pub fn root(&self, i: usize) -> TowerElem<R::Elem> {
        let mut terms = BTreeMap::new();
        terms.insert(unit(i), self.base.one());
        self.normal_form(terms)
    }

    /// The base element represented by `x`, if it has degree 0.
    pub fn as_base(&self, x: &TowerElem<R::Elem>) -> Option<R::Elem> {
        match x.terms.len() {
            0 => Some(self.base.zero()),
            1 => x.terms.get(&0).cloned(),
            _ => None,
        }
    }

    /// Rewrites a sum of monomials into normal form, eliminating the last
    /// roots first.
    fn normal_form(&self, mut terms: BTreeMap<Key, R::Elem>) -> TowerElem<R::Elem> {
        let r = &self.base;
        for i in (0..self.stages.len()).rev() {
            let d = self.stages[i].len() - 1;
            loop {
                let high: Vec<Key> = terms.keys().copied().filter(|k| exponent(*k, i) >= d).collect();
                if high.is_empty() {
                    break;
                }
                for key in high {
                    let c = terms.remove(&key).unwrap();
                    let rest = key - d as u64 * unit(i);
                    // xᵢᵈ = −Σ_{j<d} s_j·xᵢʲ
                    for (j, sj) in self.stages[i][..d].iter().enumerate() {
                        for (sk, sv) in &sj.terms {
                            let k = rest + j as u64 * unit(i) + sk;
                            let v = r.neg(&r.mul(&c, sv));
                            accumulate(r, &mut terms, k, v);
                        }
                    }
                }
            }
        }
        TowerElem { terms }
    }

    /// `h(xᵢ)` for a polynomial over the base.
    pub fn eval_at_root(&self, h: &Poly<R::Elem>, i: usize) -> TowerElem<R::Elem> {
        let xi = self.root(i);
        h.coeffs().iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, &xi), &self.constant(c.clone())))
    }

    /// `∏(X − xᵢ)` expanded in `T[X]`.
    pub fn linear_factor_product(&self) -> Poly<TowerElem<R::Elem>>
    where
        R: Clone,
    {
        let pr = PolyRing::new(self.clone());
        (0..self.degree()).fold(pr.one(), |acc, i| {
            let lin = pr.from_coeffs(vec![self.neg(&self.root(i)), self.one()]);
            pr.mul(&acc, &lin)
        })
    }
}

fn accumulate<R: CommRing>(r: &R, terms: &mut BTreeMap<Key, R::Elem>, k: Key, v: R::Elem) {
    if r.is_zero(&v) {
        return;
    }
    match terms.get_mut(&k) {
        Some(old) => {
            let s = r.add(old, &v);
            if r.is_zero(&s) {
                terms.remove(&k);
            } else {
                *old = s;
            }
        }
        None => {
            terms.insert(k, v);
        }
    }
}

impl<R: CommRing> CommRing for SplittingTower<R> {
    type Elem = TowerElem<R::Elem>;

    fn zero(&self) -> Self::Elem {
        TowerElem { terms: BTreeMap::new() }
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut terms = x.terms.clone();
        for (k, v) in &y.terms {
            accumulate(&self.base, &mut terms, *k, v.clone());
        }
        TowerElem { terms }
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        TowerElem { terms: x.terms.iter().map(|(k, v)| (*k, self.base.neg(v))).collect() }
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        let mut terms = BTreeMap::new();
        for (kx, vx) in &x.terms {
            for (ky, vy) in &y.terms {
                accumulate(&self.base, &mut terms, kx + ky, self.base.mul(vx, vy));
            }
        }
        self.normal_form(terms)
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.terms.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::Ring;
    use proptest::prelude::*;

    fn zpoly(c: &[i64]) -> Poly<crate::ring::Elem> {
        PolyRing::new(Ring::Int).from_coeffs(c.iter().map(|&x| Ring::Int.from_i64(x)).collect())
    }

    #[test]
    fn quadratic_tower() {
        let t = SplittingTower::new(Ring::Int, &zpoly(&[6, -5, 1])).unwrap();
        assert_eq!(t.rank(), 2);
        // stage 2 is X − (5 − x₁)
        let x1 = t.root(0);
        assert_eq!(t.stage(1)[0], t.sub(&x1, &t.from_i64(5)));
        let x2 = t.root(1);
        assert_eq!(t.as_base(&t.add(&x1, &x2)), Some(Ring::Int.from_i64(5)));
        assert_eq!(t.as_base(&t.mul(&x1, &x2)), Some(Ring::Int.from_i64(6)));
    }

    #[test]
    fn linear_and_pure_quadratic() {
        let t = SplittingTower::new(Ring::Int, &zpoly(&[-7, 1])).unwrap();
        assert_eq!(t.as_base(&t.root(0)), Some(Ring::Int.from_i64(7)));
        let t = SplittingTower::new(Ring::Int, &zpoly(&[-2, 0, 1])).unwrap();
        let x1 = t.root(0);
        assert_eq!(t.as_base(&t.mul(&x1, &x1)), Some(Ring::Int.from_i64(2)));
        assert_eq!(SplittingTower::new(Ring::Int, &zpoly(&[1, 2])).unwrap_err(), Error::NotMonic);
    }

    #[test]
    fn cubic_symmetric_functions() {
        // X³ − 2X + 5: e₁ = 0, e₂ = −2, e₃ = −5
        let t = SplittingTower::new(Ring::Int, &zpoly(&[5, -2, 0, 1])).unwrap();
        let x: Vec<_> = (0..3).map(|i| t.root(i)).collect();
        let e2 = t.add(&t.add(&t.mul(&x[0], &x[1]), &t.mul(&x[0], &x[2])), &t.mul(&x[1], &x[2]));
        assert_eq!(t.as_base(&e2), Some(Ring::Int.from_i64(-2)));
        let e3 = t.mul(&t.mul(&x[0], &x[1]), &x[2]);
        assert_eq!(t.as_base(&e3), Some(Ring::Int.from_i64(-5)));
        assert_eq!(t.as_base(&x[0]), None);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn linear_factors_reproduce_f(c in proptest::collection::vec(-9i64..=9, 0..=6)) {
            let mut coeffs = c.clone();
            coeffs.push(1);
            let f = zpoly(&coeffs);
            let t = SplittingTower::new(Ring::Int, &f).unwrap();
            let prod = t.linear_factor_product();
            let back: Vec<_> = prod.coeffs().iter().map(|e| t.as_base(e).unwrap()).collect();
            prop_assert_eq!(back, f.coeffs().to_vec());
        }
    }
}
