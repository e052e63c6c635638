use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{CommRing, Elem, Ring};

use super::frac::{Frac, FracRing};

/// `base[1/∏inverted] / √⟨radical_gens⟩`, located in its tree by `path`
/// (`0` = localization branch, `1` = quotient branch).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NodeRing {
    pub base: Ring,
    pub inverted: Vec<Elem>,
    pub radical_gens: Vec<Elem>,
    pub path: String,
}

/// Status of an element in a node ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    Zero,
    Unit,
    Unknown,
}

impl NodeRing {
    pub fn root(base: Ring) -> Self {
        NodeRing { base, inverted: Vec::new(), radical_gens: Vec::new(), path: String::new() }
    }

    /// The pure localization `base[1/∏inverted]`.
    pub fn localized(base: Ring, inverted: Vec<Elem>) -> Self {
        NodeRing { base, inverted, radical_gens: Vec::new(), path: String::new() }
    }

    pub fn fracs(&self) -> FracRing {
        FracRing::new(self.base.clone(), self.inverted.clone())
    }

    pub fn polys(&self) -> PolyRing<FracRing> {
        PolyRing::new(self.fracs())
    }

    pub fn is_trivial(&self) -> Result<bool> {
        self.base.is_trivial(&self.inverted, &self.radical_gens)
    }

    pub fn is_zero(&self, x: &Frac) -> Result<bool> {
        self.base.saturation_zero_test(&x.num, &self.inverted, &self.radical_gens)
    }

    pub fn elem_is_zero(&self, x: &Elem) -> Result<bool> {
        self.base.saturation_zero_test(x, &self.inverted, &self.radical_gens)
    }

    pub fn is_unit(&self, x: &Frac) -> Result<bool> {
        let mut gens = self.radical_gens.clone();
        gens.push(x.num.clone());
        self.base.is_trivial(&self.inverted, &gens)
    }

    pub fn classify(&self, x: &Frac) -> Result<Class> {
        Ok(if self.is_zero(x)? {
            Class::Zero
        } else if self.is_unit(x)? {
            Class::Unit
        } else {
            Class::Unknown
        })
    }

    /// Left child inverts `a`, right child adjoins `a` to the radical
    /// generators.
    pub fn branch(&self, a: &Elem) -> Result<(NodeRing, NodeRing)> {
        if self.elem_is_zero(a)? {
            return Err(Error::DegenerateBranch);
        }
        Ok(self.split(a))
    }

    pub(crate) fn split(&self, a: &Elem) -> (NodeRing, NodeRing) {
        let mut left = self.clone();
        left.inverted.push(a.clone());
        left.path.push('0');
        let mut right = self.clone();
        right.radical_gens.push(a.clone());
        right.path.push('1');
        (left, right)
    }

    /// Removes inverted factors from `n`: returns `n'` and exponents `e`
    /// with `n = n'·∏inverted^e`.
    pub fn strip_inverted(&self, n: &Elem) -> (Elem, Vec<u32>) {
        let r = &self.base;
        let mut n = n.clone();
        let mut exps = vec![0u32; self.inverted.len()];
        if r.is_zero(&n) {
            return (n, Vec::new());
        }
        for (i, v) in self.inverted.iter().enumerate() {
            if r.is_unit(v) {
                continue;
            }
            // a zero divisor can divide without making progress, e.g.
            // (1,0) = (-1,0)·(-1,0) in a product, so stop on any repeat
            let mut seen = vec![n.clone()];
            for _ in 0..256 {
                match r.divide(&n, v) {
                    Some(q) if !seen.contains(&q) => {
                        seen.push(q.clone());
                        n = q;
                        exps[i] += 1;
                    }
                    _ => break,
                }
            }
        }
        while exps.last() == Some(&0) {
            exps.pop();
        }
        (n, exps)
    }

    /// The element to branch on for an undecided coefficient: its numerator
    /// with inverted factors removed and repeated factors dropped.
    pub fn branch_element(&self, x: &Frac) -> Elem {
        let (n, _) = self.strip_inverted(&x.num);
        self.base.squarefree_hint(&n)
    }

    /// Inverse of an element known to be a unit of this node. A numerator
    /// that is neither a base unit nor already inverted is appended to
    /// `inverted`; this does not change the ring.
    pub fn inverse(&mut self, x: &Frac) -> Result<Frac> {
        let r = self.base.clone();
        let (n, exps) = self.strip_inverted(&x.num);
        let fr = self.fracs();
        let dval = fr.den_value(&x.den);
        if let Some(ni) = r.inverse(&n) {
            return Ok(fr.make(r.mul(&ni, &dval), exps));
        }
        let idx = match self.inverted.iter().position(|v| *v == n) {
            Some(i) => i,
            None => {
                self.inverted.push(n);
                self.inverted.len() - 1
            }
        };
        let mut den = exps;
        den.resize(den.len().max(idx + 1), 0);
        den[idx] += 1;
        Ok(self.fracs().make(dval, den))
    }

    /// Drops radical generators that vanish in the pure localization.
    pub fn pure_equivalent(&self) -> Result<NodeRing> {
        let mut out = self.clone();
        let mut kept = Vec::new();
        for g in &self.radical_gens {
            if !self.base.saturation_zero_test(g, &self.inverted, &[])? {
                kept.push(g.clone());
            }
        }
        out.radical_gens = kept;
        Ok(out)
    }

    pub fn poly_is_zero(&self, f: &Poly<Frac>) -> Result<bool> {
        for c in f.coeffs() {
            if !self.is_zero(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Replaces coefficients that vanish in this node by literal zeros.
    pub fn clean(&self, f: &Poly<Frac>) -> Result<Poly<Frac>> {
        let fr = self.fracs();
        let mut v = Vec::with_capacity(f.len());
        for c in f.coeffs() {
            v.push(if self.is_zero(c)? { fr.zero() } else { c.clone() });
        }
        Ok(PolyRing::new(fr).from_coeffs(v))
    }

    /// Some `q` with `h = c·q` in the pure localization, found by testing
    /// `num(h)·wᵏ ∈ ⟨c⟩` in the base for growing `k` (`w` = product of the
    /// inverted elements).
    pub fn divide(&self, h: &Frac, c: &Elem, max_power: u32) -> Option<Frac> {
        let r = &self.base;
        let fr = self.fracs();
        let w = r.product(&self.inverted);
        let mut num = h.num.clone();
        for k in 0..=max_power {
            if let Some(q) = r.divide(&num, c) {
                let mut den = h.den.clone();
                den.resize(self.inverted.len().max(den.len()), 0);
                for e in den.iter_mut().take(self.inverted.len()) {
                    *e += k;
                }
                return Some(fr.make(q, den));
            }
            if self.inverted.is_empty() {
                return None;
            }
            num = r.mul(&num, &w);
        }
        None
    }
}
