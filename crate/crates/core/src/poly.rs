//! Dense univariate polynomials over any [`CommRing`], and bivariate
//! polynomials as polynomials over a polynomial ring.

use crate::error::{Error, Result};
use crate::ring::{Capabilities, CommRing, Elem, Ring};

/// Ascending coefficients; trailing zeros trimmed, so the zero polynomial is
/// the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E> Poly<E> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    /// Wraps coefficients that are already trimmed.
    pub(crate) fn from_vec(coeffs: Vec<E>) -> Self {
        Poly { coeffs }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Number of stored coefficients (`degree + 1`, or 0).
    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

/// Bivariate polynomial in `Y` with coefficients in `R[X]`.
pub type BiPoly<E> = Poly<Poly<E>>;

/// The ring `R[X]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<R> {
    pub base: R,
}

/// Which factor of a vanishing product is zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl<R: CommRing> PolyRing<R> {
    pub fn new(base: R) -> Self {
        PolyRing { base }
    }

    /// Builds a polynomial, trimming zero leading coefficients.
    pub fn from_coeffs(&self, mut coeffs: Vec<R::Elem>) -> Poly<R::Elem> {
        while coeffs.last().is_some_and(|c| self.base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn constant(&self, c: R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(vec![c])
    }

    /// `c·Xᵏ`
    pub fn monomial(&self, c: R::Elem, k: usize) -> Poly<R::Elem> {
        let mut v = vec![self.base.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn x(&self) -> Poly<R::Elem> {
        self.monomial(self.base.one(), 1)
    }

    pub fn scale(&self, f: &Poly<R::Elem>, c: &R::Elem) -> Poly<R::Elem> {
        self.from_coeffs(f.coeffs.iter().map(|a| self.base.mul(a, c)).collect())
    }

    /// `f·Xᵏ`
    pub fn shift(&self, f: &Poly<R::Elem>, k: usize) -> Poly<R::Elem> {
        if f.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); k];
        v.extend(f.coeffs.iter().cloned());
        Poly { coeffs: v }
    }

    pub fn eval(&self, f: &Poly<R::Elem>, x: &R::Elem) -> R::Elem {
        f.coeffs.iter().rev().fold(self.base.zero(), |acc, c| self.base.add(&self.base.mul(&acc, x), c))
    }

    pub fn derivative(&self, f: &Poly<R::Elem>) -> Poly<R::Elem> {
        self.from_coeffs(
            f.coeffs.iter().enumerate().skip(1).map(|(i, c)| self.base.mul(&self.base.from_i64(i as i64), c)).collect(),
        )
    }

    /// `f(g(X))`
    pub fn compose(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Poly<R::Elem> {
        f.coeffs.iter().rev().fold(Poly::zero(), |acc, c| self.add(&self.mul(&acc, g), &self.constant(c.clone())))
    }

    pub fn is_monic(&self, g: &Poly<R::Elem>) -> bool {
        g.lc().is_some_and(|c| self.base.is_one(c))
    }

    /// `f = g·q + r` with `deg r < deg g`, for monic `g`.
    pub fn monic_divmod(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<(Poly<R::Elem>, Poly<R::Elem>)> {
        if !self.is_monic(g) {
            return Err(Error::NotMonic);
        }
        let dg = g.coeffs.len() - 1;
        let mut r = f.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(), f.clone()));
        }
        let mut q = vec![self.base.zero(); r.len() - dg];
        for k in (0..q.len()).rev() {
            let c = r[k + dg].clone();
            if self.base.is_zero(&c) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                r[k + j] = self.base.sub(&r[k + j], &self.base.mul(&c, b));
            }
            q[k] = c;
        }
        r.truncate(dg);
        let (q, r) = (self.from_coeffs(q), self.from_coeffs(r));
        Ok((q, r))
    }

    /// Quotient of an exact division by a monic polynomial.
    pub fn exact_monic_div(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> Result<Poly<R::Elem>> {
        let (q, r) = self.monic_divmod(f, g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(Error::ExactDivisionFailed)
        }
    }

    /// `(e, q, r)` with `lc(g)ᵉ·f = q·g + r`, `deg r < deg g`. `g ≠ 0`.
    pub fn pseudo_divmod(&self, f: &Poly<R::Elem>, g: &Poly<R::Elem>) -> (u32, Poly<R::Elem>, Poly<R::Elem>) {
        let lc = g.lc().expect("pseudo-division by zero").clone();
        let dg = g.coeffs.len() - 1;
        let mut r = f.clone();
        let mut q = Poly::zero();
        let mut e = 0;
        while let Some(dr) = r.degree() {
            if dr < dg {
                break;
            }
            let t = self.monomial(r.lc().unwrap().clone(), dr - dg);
            r = self.sub(&self.scale(&r, &lc), &self.mul(&t, g));
            q = self.add(&self.scale(&q, &lc), &t);
            e += 1;
        }
        (e, q, r)
    }

    /// Divides `M(Y)` (monic in `Y`) by `Y − h`, returning `S` with
    /// `M = (Y − h)·S`.
    pub fn linear_factor_divide(&self, m: &Poly<R::Elem>, h: &R::Elem) -> Result<Poly<R::Elem>> {
        let (s, rem) = self.linear_factor_divmod(m, h)?;
        if !self.base.is_zero(&rem) {
            return Err(Error::ExactDivisionFailed);
        }
        Ok(s)
    }

    /// Synthetic division by `Y − h`: `M = (Y − h)·S + M(h)`.
    pub fn linear_factor_divmod(&self, m: &Poly<R::Elem>, h: &R::Elem) -> Result<(Poly<R::Elem>, R::Elem)> {
        if !self.is_monic(m) {
            return Err(Error::NotMonic);
        }
        let n = m.coeffs.len() - 1;
        let mut s = vec![self.base.zero(); n];
        let mut carry = self.base.zero();
        for k in (1..=n).rev() {
            carry = self.base.add(&m.coeffs[k], &self.base.mul(h, &carry));
            s[k - 1] = carry.clone();
        }
        let rem = self.base.add(&m.coeffs[0], &self.base.mul(h, &carry));
        Ok((self.from_coeffs(s), rem))
    }

    /// Maps coefficients through `f`.
    pub fn map<S: CommRing>(&self, target: &PolyRing<S>, p: &Poly<R::Elem>, f: impl Fn(&R::Elem) -> S::Elem) -> Poly<S::Elem> {
        target.from_coeffs(p.coeffs.iter().map(f).collect())
    }
}

impl<R: CommRing> CommRing for PolyRing<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.constant(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.constant(self.base.from_i64(n))
    }

    fn add(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        let (long, short) = if f.coeffs.len() >= g.coeffs.len() { (f, g) } else { (g, f) };
        let mut v = long.coeffs.clone();
        for (a, b) in v.iter_mut().zip(&short.coeffs) {
            *a = self.base.add(a, b);
        }
        self.from_coeffs(v)
    }

    fn neg(&self, f: &Self::Elem) -> Self::Elem {
        Poly { coeffs: f.coeffs.iter().map(|c| self.base.neg(c)).collect() }
    }

    fn mul(&self, f: &Self::Elem, g: &Self::Elem) -> Self::Elem {
        if f.is_zero() || g.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.base.zero(); f.coeffs.len() + g.coeffs.len() - 1];
        for (i, a) in f.coeffs.iter().enumerate() {
            if self.base.is_zero(a) {
                continue;
            }
            for (j, b) in g.coeffs.iter().enumerate() {
                v[i + j] = self.base.add(&v[i + j], &self.base.mul(a, b));
            }
        }
        self.from_coeffs(v)
    }

    fn is_zero(&self, f: &Self::Elem) -> bool {
        f.coeffs.iter().all(|c| self.base.is_zero(c))
    }
}

impl PolyRing<Ring> {
    /// Parses ascending coefficient strings.
    pub fn parse(&self, coeffs: &[&str]) -> Result<Poly<Elem>> {
        Ok(self.from_coeffs(coeffs.iter().map(|s| self.base.parse_elem(s)).collect::<Result<_>>()?))
    }

    /// Human-readable form in the variable `X`.
    pub fn show(&self, f: &Poly<Elem>) -> String {
        self.show_in(f, "X")
    }

    pub fn show_in(&self, f: &Poly<Elem>, var: &str) -> String {
        if f.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, c) in f.coeffs.iter().enumerate().rev() {
            if self.base.is_zero(c) {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let cs = self.base.show(c);
            let part = if mono.is_empty() {
                cs
            } else if self.base.is_one(c) {
                mono
            } else if cs[1..].contains(['+', '-']) {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            };
            parts.push(part);
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i > 0 && !p.starts_with('-') {
                out.push('+');
            }
            out += p;
        }
        out
    }

    /// Decides which factor of a vanishing product is zero, over a ring
    /// without zero divisors: `lc(f)·lc(g) = 0` forces one leading
    /// coefficient to vanish, which is stripped before retrying.
    pub fn nzd_poly_split(&self, f: &Poly<Elem>, g: &Poly<Elem>) -> Result<Side> {
        self.base.require(Capabilities::WITHOUT_ZERO_DIVISORS | Capabilities::DISCRETE, "nzd_poly_split")?;
        if !self.is_zero(&self.mul(f, g)) {
            return Err(Error::PreconditionViolated("nzd_poly_split needs f·g = 0".into()));
        }
        let (mut f, mut g) = (f.coeffs.clone(), g.coeffs.clone());
        loop {
            match (f.last(), g.last()) {
                (None, _) => return Ok(Side::Left),
                (_, None) => return Ok(Side::Right),
                (Some(a), Some(b)) => {
                    if !self.base.is_zero(&self.base.mul(a, b)) {
                        return Err(Error::NotNormalWitnessFailure("zero divisor in a ring without zero divisors".into()));
                    }
                    if self.base.is_zero(a) {
                        f.pop();
                    } else {
                        g.pop();
                    }
                }
            }
        }
    }

    /// Subresultant remainder sequence of `f` (monic) and `g`. It ends with
    /// the zero polynomial when a remainder vanishes, or with a constant.
    pub fn subresultant_prs(&self, f: &Poly<Elem>, g: &Poly<Elem>) -> Result<Vec<Poly<Elem>>> {
        if !self.is_monic(f) {
            return Err(Error::NotMonic);
        }
        let mut seq = vec![f.clone(), g.clone()];
        if g.is_zero() {
            return Ok(seq);
        }
        if g.degree() > f.degree() {
            return Err(Error::PreconditionViolated("subresultant_prs needs deg g ≤ deg f".into()));
        }
        let r = &self.base;
        let (mut f1, mut f2) = (f.clone(), g.clone());
        let (mut gc, mut h) = (r.one(), r.one());
        while f2.degree() > Some(0) {
            let d = (f1.degree().unwrap() - f2.degree().unwrap()) as u32;
            let (_, _, rem) = self.pseudo_divmod_full(&f1, &f2);
            if rem.is_zero() {
                seq.push(rem);
                break;
            }
            let divisor = r.mul(&gc, &r.pow(&h, d));
            let f3 = self.exact_scalar_div(&rem, &divisor)?;
            gc = f2.lc().unwrap().clone();
            // h ← gcᵈ / hᵈ⁻¹
            h = if d == 0 {
                h
            } else {
                r.divide(&r.pow(&gc, d), &r.pow(&h, d - 1)).ok_or(Error::ExactDivisionFailed)?
            };
            seq.push(f3.clone());
            f1 = std::mem::replace(&mut f2, f3);
        }
        Ok(seq)
    }

    /// Pseudo-division with the full exponent `deg f − deg g + 1`.
    fn pseudo_divmod_full(&self, f: &Poly<Elem>, g: &Poly<Elem>) -> (u32, Poly<Elem>, Poly<Elem>) {
        let (e, q, rem) = self.pseudo_divmod(f, g);
        let full = (f.degree().unwrap() - g.degree().unwrap() + 1) as u32;
        let pad = self.base.pow(g.lc().unwrap(), full - e);
        (full, self.scale(&q, &pad), self.scale(&rem, &pad))
    }

    pub fn exact_scalar_div(&self, f: &Poly<Elem>, c: &Elem) -> Result<Poly<Elem>> {
        let v = f.coeffs.iter().map(|a| self.base.divide(a, c).ok_or(Error::ExactDivisionFailed)).collect::<Result<_>>()?;
        Ok(self.from_coeffs(v))
    }

    /// Polynomial JSON: ascending array of element strings.
    pub fn to_json(&self, f: &Poly<Elem>) -> serde_json::Value {
        serde_json::Value::Array(f.coeffs.iter().map(|c| self.base.elem_to_json(c)).collect())
    }

    pub fn from_json(&self, v: &serde_json::Value) -> Result<Poly<Elem>> {
        let arr = v.as_array().ok_or_else(|| Error::parse(format!("expected a coefficient array, got {v}")))?;
        Ok(self.from_coeffs(arr.iter().map(|c| self.base.elem_from_json(c)).collect::<Result<_>>()?))
    }
}
