use crate::config::Limits;
use crate::error::{Error, Result};
use crate::kronecker::universal_relation;
use crate::poly::{Poly, PolyRing};
use crate::ring::{relation_value, Capabilities, CommRing, Elem, IntegralRelation, Ring};
use crate::tree::{gcd_tree, Frac, FracRing, GcdTree, LeafData, NodeRing};

use super::QuotientAlg;

/// `num / f′(x)^fprime_exp` in `R{f}`.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaleElement<E> {
    pub num: Poly<E>,
    pub fprime_exp: u32,
}

impl<E> EtaleElement<E> {
    pub fn new(num: Poly<E>, fprime_exp: u32) -> Self {
        EtaleElement { num, fprime_exp }
    }
}

impl<R: CommRing + Clone> QuotientAlg<R> {
    /// `s/uᴺ = t/uᴹ` in `S[1/u]`: `uᵏ(s·uᴹ − t·uᴺ) = 0` for some `k ≤ n`.
    /// The bound is exact over a domain, where the kernels of `uᵏ` on the
    /// free module `S` stop growing after `n` steps.
    pub fn fraction_equal(&self, u: &Poly<R::Elem>, s: (&Poly<R::Elem>, u32), t: (&Poly<R::Elem>, u32)) -> bool {
        let mut diff = self.sub(&self.mul(s.0, &self.pow(u, t.1)), &self.mul(t.0, &self.pow(u, s.1)));
        for _ in 0..=self.degree() {
            if self.is_zero(&diff) {
                return true;
            }
            diff = self.mul(&diff, u);
        }
        false
    }

    pub fn etale_equal(&self, s: &EtaleElement<R::Elem>, t: &EtaleElement<R::Elem>) -> bool {
        self.fraction_equal(&self.fprime(), (&s.num, s.fprime_exp), (&t.num, t.fprime_exp))
    }

    pub fn etale_mul(&self, s: &EtaleElement<R::Elem>, t: &EtaleElement<R::Elem>) -> EtaleElement<R::Elem> {
        EtaleElement::new(self.mul(&s.num, &t.num), s.fprime_exp + t.fprime_exp)
    }

    pub fn etale_add(&self, s: &EtaleElement<R::Elem>, t: &EtaleElement<R::Elem>) -> EtaleElement<R::Elem> {
        let fp = self.fprime();
        let a = self.mul(&s.num, &self.pow(&fp, t.fprime_exp));
        let b = self.mul(&t.num, &self.pow(&fp, s.fprime_exp));
        EtaleElement::new(self.add(&a, &b), s.fprime_exp + t.fprime_exp)
    }

    /// Is `R{f}` the zero ring, i.e. `f′(x)ⁿ = 0`?
    pub fn etale_is_trivial(&self) -> bool {
        self.is_zero(&self.pow(&self.fprime(), self.degree() as u32))
    }
}

/// `R{f} ≅ R{g}[1/f₁(x)] × R{f₁}[1/g(x)]` for `f = g·f₁`, through the
/// idempotents `e₁ = g′f₁/f′` and `e₂ = g·f₁′/f′`.
#[derive(Clone, Debug, PartialEq)]
pub struct Decomposition {
    pub f: Poly<Elem>,
    pub g: Poly<Elem>,
    pub f1: Poly<Elem>,
    pub e1: EtaleElement<Elem>,
    pub e2: EtaleElement<Elem>,
    /// `R{f}` is the zero ring; all identities hold vacuously.
    pub trivial: bool,
}

/// An element of `R{h}[1/c(x)]`, stored as `num / (h′·c)ᴺ`.
#[derive(Clone, Debug, PartialEq)]
pub struct Projected {
    pub modulus: Poly<Elem>,
    pub cofactor: Poly<Elem>,
    pub num: Poly<Elem>,
    pub exp: u32,
}

impl Decomposition {
    pub fn algebra(&self, r: &Ring) -> Result<QuotientAlg<Ring>> {
        QuotientAlg::new(r.clone(), self.f.clone())
    }

    fn project(&self, r: &Ring, v: &EtaleElement<Elem>, first: bool) -> Result<Projected> {
        let (h, c) = if first { (&self.g, &self.f1) } else { (&self.f1, &self.g) };
        let sh = QuotientAlg::new(r.clone(), h.clone())?;
        // f′ ≡ h′·c mod h
        Ok(Projected { modulus: h.clone(), cofactor: c.clone(), num: sh.reduce(&v.num), exp: v.fprime_exp })
    }

    /// Image in `R{g}[1/f₁(x)]`.
    pub fn project_first(&self, r: &Ring, v: &EtaleElement<Elem>) -> Result<Projected> {
        self.project(r, v, true)
    }

    /// Image in `R{f₁}[1/g(x)]`.
    pub fn project_second(&self, r: &Ring, v: &EtaleElement<Elem>) -> Result<Projected> {
        self.project(r, v, false)
    }

    /// The idempotent laws and multiplicativity of both projections on the
    /// generators `x`, `1/f′(x)`, `e₁`, `e₂`.
    pub fn verify(&self, r: &Ring) -> Result<bool> {
        let s = self.algebra(r)?;
        let one = EtaleElement::new(s.one(), 0);
        let zero = EtaleElement::new(s.zero(), 0);
        let (e1, e2) = (&self.e1, &self.e2);
        let laws = s.etale_equal(&s.etale_mul(e1, e1), e1)
            && s.etale_equal(&s.etale_mul(e2, e2), e2)
            && s.etale_equal(&s.etale_mul(e1, e2), &zero)
            && s.etale_equal(&s.etale_add(e1, e2), &one);
        if !laws {
            return Ok(false);
        }
        let gens = [EtaleElement::new(s.x(), 0), EtaleElement::new(s.one(), 1), e1.clone(), e2.clone()];
        for first in [true, false] {
            let eq = |a: &Projected, b: &Projected| -> Result<bool> {
                let sh = QuotientAlg::new(r.clone(), a.modulus.clone())?;
                let u = sh.reduce(&sh.polys().mul(&sh.polys().derivative(&a.modulus), &a.cofactor));
                Ok(sh.fraction_equal(&u, (&a.num, a.exp), (&b.num, b.exp)))
            };
            let pe1 = self.project(r, e1, first)?;
            let pe2 = self.project(r, e2, first)?;
            let unit = Projected { num: QuotientAlg::new(r.clone(), pe1.modulus.clone())?.one(), exp: 0, ..pe1.clone() };
            let nil = Projected { num: Poly::zero(), exp: 0, ..pe1.clone() };
            let (want1, want2) = if first { (&unit, &nil) } else { (&nil, &unit) };
            if !eq(&pe1, want1)? || !eq(&pe2, want2)? {
                return Ok(false);
            }
            for a in &gens {
                for b in &gens {
                    let pab = self.project(r, &s.etale_mul(a, b), first)?;
                    let (pa, pb) = (self.project(r, a, first)?, self.project(r, b, first)?);
                    let sh = QuotientAlg::new(r.clone(), pa.modulus.clone())?;
                    let prod = Projected { num: sh.mul(&pa.num, &pb.num), exp: pa.exp + pb.exp, ..pa.clone() };
                    if !eq(&pab, &prod)? {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }
}

/// Idempotents splitting `R{f}` along `f = g·f₁`.
pub fn rf_decompose(r: &Ring, f: &Poly<Elem>, g: &Poly<Elem>, f1: &Poly<Elem>) -> Result<Decomposition> {
    let pr = PolyRing::new(r.clone());
    if !pr.is_monic(f) || !pr.is_monic(g) || !pr.is_monic(f1) {
        return Err(Error::NotMonic);
    }
    if g.degree() == Some(0) || f1.degree() == Some(0) {
        return Err(Error::PreconditionViolated("rf_decompose needs two factors of positive degree".into()));
    }
    if pr.mul(g, f1) != *f {
        return Err(Error::PreconditionViolated("f ≠ g·f₁".into()));
    }
    let s = QuotientAlg::new(r.clone(), f.clone())?;
    let e1 = EtaleElement::new(s.reduce(&pr.mul(&pr.derivative(g), f1)), 1);
    let e2 = EtaleElement::new(s.reduce(&pr.mul(g, &pr.derivative(f1))), 1);
    let d = Decomposition { f: f.clone(), g: g.clone(), f1: f1.clone(), e1, e2, trivial: s.etale_is_trivial() };
    if !d.verify(r)? {
        return Err(Error::PreconditionViolated("idempotent identities fail".into()));
    }
    Ok(d)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Crucial {
    InR { g: Poly<Elem>, f1: Poly<Elem> },
    AIsZero,
}

fn clear_factor(r: &Ring, fr: &FracRing, f: &Poly<Elem>, h: &Poly<Frac>, limits: &Limits) -> Result<Poly<Elem>> {
    let n = f.degree().unwrap();
    let m = h.degree().ok_or_else(|| Error::PreconditionViolated("zero factor".into()))?;
    let b: Vec<Elem> = (1..=n).map(|j| f.coeffs()[n - j].clone()).collect();
    let orbit_ok = n <= limits.orbit_max_n.min(8) && crate::kronecker::orbit_size(n, m) <= limits.orbit_max_size;
    let mut out = Vec::with_capacity(m + 1);
    for (i, c) in h.coeffs().iter().enumerate() {
        if c.is_integral() {
            out.push(c.num.clone());
            continue;
        }
        let den = fr.den_value(&c.den);
        let q = if orbit_ok && i < m {
            // the coefficient of X^{m−k} satisfies the orbit relation, so
            // num is integral over ⟨den⟩
            let rel = universal_relation(n, m, m - i).eval(r, &b, |z| r.from_bigint(z));
            r.normality_witness(&c.num, &den, &IntegralRelation::new(rel))?
        } else {
            r.divide(&c.num, &den).ok_or_else(|| {
                Error::NotNormalWitnessFailure(format!("coefficient {} / {} of a monic factor is not in R", r.show(&c.num), r.show(&den)))
            })?
        };
        out.push(q);
    }
    Ok(PolyRing::new(r.clone()).from_coeffs(out))
}

/// Monic factors `f = g·f₁` over `R[1/a]` (`a` = product of the inverted
/// elements of `fr`) have coefficients in `R`, unless `a = 0`.
pub fn crucial_factor(r: &Ring, fr: &FracRing, f: &Poly<Elem>, g: &Poly<Frac>, f1: &Poly<Frac>, limits: &Limits) -> Result<Crucial> {
    r.require(Capabilities::NORMAL | Capabilities::WITHOUT_ZERO_DIVISORS, "crucial_factor")?;
    if r.is_zero(&r.product(fr.inverted())) {
        return Ok(Crucial::AIsZero);
    }
    let pr = PolyRing::new(r.clone());
    if !pr.is_monic(f) {
        return Err(Error::NotMonic);
    }
    let gi = clear_factor(r, fr, f, g, limits)?;
    let fi = clear_factor(r, fr, f, f1, limits)?;
    if !pr.is_monic(&gi) || !pr.is_monic(&fi) || pr.mul(&gi, &fi) != *f {
        return Err(Error::PreconditionViolated("g·f₁ ≠ f after clearing denominators".into()));
    }
    Ok(Crucial::InR { g: gi, f1: fi })
}

/// `f′(x)ᴺ·dᴰ·p(x) = q(x)·w` in `S`, `d` the product of the extra
/// denominators.
#[derive(Clone, Debug, PartialEq)]
pub struct RfWitness {
    pub w: Poly<Elem>,
    pub fprime_exp: u32,
    pub extra_exp: u32,
}

impl RfWitness {
    pub fn verify(&self, r: &Ring, f: &Poly<Elem>, p: &Poly<Elem>, q: &Poly<Elem>, extra: &[Poly<Elem>]) -> Result<bool> {
        let s = QuotientAlg::new(r.clone(), f.clone())?;
        let d = extra.iter().fold(s.one(), |acc, e| s.mul(&acc, &s.reduce(e)));
        let lhs = s.mul(&s.mul(&s.pow(&s.fprime(), self.fprime_exp), &s.pow(&d, self.extra_exp)), &s.reduce(p));
        Ok(lhs == s.mul(&s.reduce(q), &s.reduce(&self.w)))
    }
}

fn det(r: &Ring, mut m: Vec<Vec<Elem>>) -> Elem {
    // fraction-free elimination
    let n = m.len();
    let mut sign = false;
    let mut prev = r.one();
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| !r.is_zero(&m[i][k])) else {
            return r.zero();
        };
        if piv != k {
            m.swap(piv, k);
            sign = !sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = r.sub(&r.mul(&m[k][k], &m[i][j]), &r.mul(&m[i][k], &m[k][j]));
                m[i][j] = r.divide(&t, &prev).expect("Bareiss step is exact");
            }
        }
        prev = m[k][k].clone();
    }
    if sign {
        r.neg(&prev)
    } else {
        prev
    }
}

/// `w` with `q·w = p` in `S`, by Cramer's rule over the domain `R`.
fn divide_in_s(s: &QuotientAlg<Ring>, p: &Poly<Elem>, q: &Poly<Elem>) -> Option<Poly<Elem>> {
    let r = s.base();
    let n = s.degree();
    let cols: Vec<Vec<Elem>> = (0..n).map(|j| s.coords(&s.mul(q, &s.basis(j)))).collect();
    let matrix = |replace: Option<usize>| -> Vec<Vec<Elem>> {
        let pc = s.coords(p);
        (0..n).map(|i| (0..n).map(|j| if Some(j) == replace { pc[i].clone() } else { cols[j][i].clone() }).collect()).collect()
    };
    let dm = det(r, matrix(None));
    if r.is_zero(&dm) {
        return None;
    }
    let w: Option<Vec<Elem>> = (0..n).map(|i| r.divide(&det(r, matrix(Some(i))), &dm)).collect();
    let w = s.polys().from_coeffs(w?);
    (s.mul(q, &w) == *p).then_some(w)
}

struct RfCtx<'a> {
    r: &'a Ring,
    limits: &'a Limits,
}

impl RfCtx<'_> {
    fn run(&self, f: &Poly<Elem>, p: &Poly<Elem>, q: &Poly<Elem>, rel: &[Poly<Elem>], extra: &[Poly<Elem>], depth: usize) -> Result<RfWitness> {
        if depth > self.limits.max_depth {
            return Err(Error::ResourceLimit("R{f} recursion depth".into()));
        }
        let r = self.r;
        let s = QuotientAlg::new(r.clone(), f.clone())?;
        let (p, q) = (s.reduce(p), s.reduce(q));
        let rel: Vec<Poly<Elem>> = rel.iter().map(|u| s.reduce(u)).collect();
        let done = |w: Poly<Elem>, n: u32, d: u32| -> Result<RfWitness> {
            let wit = RfWitness { w: s.reduce(&w), fprime_exp: n, extra_exp: d };
            if !wit.verify(r, f, &p, &q, extra)? {
                return Err(Error::NotNormalWitnessFailure("R{f} witness identity fails".into()));
            }
            Ok(wit)
        };
        if p.is_zero() {
            return done(Poly::zero(), 0, 0);
        }
        if let Some(w) = divide_in_s(&s, &p, &q) {
            return done(w, 0, 0);
        }
        let n = s.degree();
        if n == 1 {
            let root = r.neg(&f.coeffs()[0]);
            let pr = s.polys();
            let (p0, q0) = (pr.eval(&p, &root), pr.eval(&q, &root));
            if r.is_zero(&q0) {
                return Err(Error::NotNormalWitnessFailure("p(x) is nilpotent but nonzero".into()));
            }
            let u: Vec<Elem> = rel.iter().map(|u| pr.eval(u, &root)).collect();
            let w0 = r.normality_witness(&p0, &q0, &IntegralRelation::new(u))?;
            return done(pr.constant(w0), 0, 0);
        }
        if q.is_zero() {
            return self.killed_by_fprime(&s, &p, done);
        }
        let tree = gcd_tree(f, &q, NodeRing::root(r.clone()), self.limits)?;
        let leaves = tree.leaves();
        let (node, cert) = match leaves.first() {
            Some(GcdTree::Leaf { node, data: LeafData::Cert(c) }) => (node, c),
            _ => return Err(Error::PreconditionViolated("leftmost leaf carries no gcd".into())),
        };
        let fr = node.fracs();
        match cert.g.degree() {
            Some(0) => {
                // c = A′f + B′q with c ∈ R, so c = B′(x)q(x) in S
                let mut all: Vec<Frac> = cert.a.coeffs().to_vec();
                all.extend(cert.b.coeffs().iter().cloned());
                let (nums, den) = fr.common_denominator(&all);
                let c = fr.den_value(&den);
                let la = cert.a.len();
                let a1 = s.polys().from_coeffs(nums[..la].to_vec());
                let b1 = s.polys().from_coeffs(nums[la..].to_vec());
                let pr = s.polys();
                if pr.add(&pr.mul(&a1, f), &pr.mul(&b1, &q)) != pr.constant(c.clone()) {
                    return Err(Error::PreconditionViolated("Bézout identity fails after clearing denominators".into()));
                }
                let v = s.mul(&p, &b1);
                let l = s.tate_lemma_witness(&v, &c, &rel)?;
                // c·(f′p − lq) = 0 and c is a nonzerodivisor on the free module S
                done(l, 1, 0)
            }
            Some(k) if k == n => self.killed_by_fprime(&s, &p, done),
            Some(_) => {
                let (g, f1) = match crucial_factor(r, &fr, f, &cert.g, &cert.p1, self.limits)? {
                    Crucial::InR { g, f1 } => (g, f1),
                    Crucial::AIsZero => return Err(Error::PreconditionViolated("inverted element is zero".into())),
                };
                let dec = rf_decompose(r, f, &g, &f1)?;
                let pr = s.polys();
                let with = |c: &Poly<Elem>| -> Vec<Poly<Elem>> {
                    let mut e = extra.to_vec();
                    e.push(c.clone());
                    e
                };
                let w1 = self.run(&g, &p, &q, &rel, &with(&f1), depth + 1)?;
                let w2 = self.run(&f1, &p, &q, &rel, &with(&g), depth + 1)?;
                let (k1, k2) = (w1.fprime_exp + w1.extra_exp, w2.fprime_exp + w2.extra_exp);
                let k = k1.max(k2);
                let d_exp = w1.extra_exp.max(w2.extra_exp);
                let fp = s.fprime();
                let d = extra.iter().fold(s.one(), |acc, e| s.mul(&acc, &s.reduce(e)));
                let lift = |wit: &RfWitness, own: &Poly<Elem>, other: &Poly<Elem>, kk: u32| -> Poly<Elem> {
                    // g′^{D₁}·f₁^{N₁} turns g′^{N₁}(d·f₁)^{D₁} into f′^{N₁+D₁}dᴰ¹ mod g
                    let t = s.mul(&s.pow(&s.reduce(&pr.derivative(own)), wit.extra_exp), &s.pow(&s.reduce(other), wit.fprime_exp));
                    let t = s.mul(&t, &s.mul(&s.pow(&fp, k - kk), &s.pow(&d, d_exp - wit.extra_exp)));
                    s.mul(&t, &s.reduce(&wit.w))
                };
                let wg = lift(&w1, &g, &f1, k1);
                let wf = lift(&w2, &f1, &g, k2);
                let t = s.add(&s.mul(&dec.e1.num, &wg), &s.mul(&dec.e2.num, &wf));
                done(s.mul(&fp, &t), k + 2, d_exp)
            }
            None => Err(Error::PreconditionViolated("zero gcd".into())),
        }
    }

    /// `q = 0` in `S`, so `pⁿ = 0` and `p` dies in the reduced ring `R{f}`.
    fn killed_by_fprime(
        &self,
        s: &QuotientAlg<Ring>,
        p: &Poly<Elem>,
        done: impl Fn(Poly<Elem>, u32, u32) -> Result<RfWitness>,
    ) -> Result<RfWitness> {
        let fp = s.fprime();
        let mut v = p.clone();
        for k in 0..=s.degree() as u32 {
            if v.is_zero() {
                return done(Poly::zero(), k, 0);
            }
            v = s.mul(&v, &fp);
        }
        Err(Error::NotNormalWitnessFailure("p(x) is not killed by a power of f′(x)".into()))
    }
}

/// `(w, N, D)` with `f′(x)ᴺ·dᴰ·p(x) = q(x)·w` in `S = R[X]/⟨f⟩`, given
/// `pⁿ + Σ uᵢ·qⁱ·pⁿ⁻ⁱ = 0` in `S`. The base must be normal and without zero
/// divisors.
pub fn rf_normality_witness(
    r: &Ring,
    f: &Poly<Elem>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    rel: &[Poly<Elem>],
    extra: &[Poly<Elem>],
    limits: &Limits,
) -> Result<RfWitness> {
    r.require(Capabilities::NORMAL | Capabilities::WITHOUT_ZERO_DIVISORS, "rf_normality_witness")?;
    let s = QuotientAlg::new(r.clone(), f.clone())?;
    let red: Vec<Poly<Elem>> = rel.iter().map(|u| s.reduce(u)).collect();
    if red.is_empty() || !s.is_zero(&relation_value(&s, &s.reduce(p), &s.reduce(q), &red)) {
        return Err(Error::RelationInvalid);
    }
    RfCtx { r, limits }.run(f, p, q, &red, extra, 0)
}
