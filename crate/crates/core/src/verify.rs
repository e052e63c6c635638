//! Independent checker for [`Certificate`]s. It re-expands every identity
//! with ring and polynomial arithmetic only; none of the solvers is used.

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use serde_json::Value;

use crate::cert::{Certificate, Kind};
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{relation_value, CommRing, Elem, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub identity: String,
    pub ok: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub kind: Kind,
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.ok)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.ok)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?}", self.kind)?;
        for c in &self.checks {
            writeln!(f, "  [{}] {}", if c.ok { "pass" } else { "FAIL" }, c.identity)?;
        }
        write!(f, "{}", if self.passed() { "verified" } else { "verification failed" })
    }
}

struct Reader<'a> {
    r: &'a Ring,
    pr: PolyRing<Ring>,
    payload: &'a Value,
}

impl<'a> Reader<'a> {
    fn field(&self, name: &str) -> Result<&'a Value> {
        self.payload.get(name).ok_or_else(|| Error::parse(format!("payload is missing `{name}`")))
    }

    fn elem(&self, name: &str) -> Result<Elem> {
        self.r.elem_from_json(self.field(name)?)
    }

    fn poly(&self, name: &str) -> Result<Poly<Elem>> {
        self.pr.from_json(self.field(name)?)
    }

    fn elems_of(&self, v: &Value) -> Result<Vec<Elem>> {
        let arr = v.as_array().ok_or_else(|| Error::parse("expected an array of elements"))?;
        arr.iter().map(|x| self.r.elem_from_json(x)).collect()
    }

    fn elems(&self, name: &str) -> Result<Vec<Elem>> {
        self.elems_of(self.field(name)?)
    }

    fn polys(&self, name: &str) -> Result<Vec<Poly<Elem>>> {
        let arr = self.field(name)?.as_array().ok_or_else(|| Error::parse(format!("`{name}` must be an array")))?;
        arr.iter().map(|x| self.pr.from_json(x)).collect()
    }

    fn nat(&self, name: &str) -> Result<u32> {
        self.field(name)?
            .as_u64()
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| Error::parse(format!("`{name}` must be a natural number")))
    }

    /// A polynomial over a formal localization: `[{num, den}, …]`.
    fn scaled(&self, name: &str, inverted: &[Elem]) -> Result<Scaled> {
        let arr = self.field(name)?.as_array().ok_or_else(|| Error::parse(format!("`{name}` must be an array")))?;
        let mut terms = Vec::with_capacity(arr.len());
        for c in arr {
            let num = self.r.elem_from_json(c.get("num").ok_or_else(|| Error::parse("fraction without `num`"))?)?;
            let den: Vec<u32> = serde_json::from_value(c.get("den").cloned().unwrap_or(Value::Array(vec![])))
                .map_err(|e| Error::parse(format!("fraction denominator: {e}")))?;
            if den.len() > inverted.len() {
                return Err(Error::parse("denominator refers to an element that is not inverted"));
            }
            terms.push((num, den));
        }
        Ok(Scaled::from_fracs(self.r, inverted, &terms))
    }
}

/// `num / ∏ inverted^den` with a polynomial numerator.
#[derive(Clone)]
struct Scaled {
    num: Poly<Elem>,
    den: Vec<u32>,
}

fn den_value(r: &Ring, inverted: &[Elem], den: &[u32]) -> Elem {
    den.iter().zip(inverted).fold(r.one(), |acc, (&e, v)| r.mul(&acc, &r.pow(v, e)))
}

impl Scaled {
    fn from_fracs(r: &Ring, inverted: &[Elem], terms: &[(Elem, Vec<u32>)]) -> Scaled {
        let den: Vec<u32> = (0..inverted.len()).map(|i| terms.iter().map(|t| t.1.get(i).copied().unwrap_or(0)).max().unwrap_or(0)).collect();
        let coeffs = terms
            .iter()
            .map(|(n, d)| {
                let extra: Vec<u32> = den.iter().enumerate().map(|(i, &e)| e - d.get(i).copied().unwrap_or(0)).collect();
                r.mul(n, &den_value(r, inverted, &extra))
            })
            .collect();
        Scaled { num: PolyRing::new(r.clone()).from_coeffs(coeffs), den }
    }

    fn integral(f: Poly<Elem>, len: usize) -> Scaled {
        Scaled { num: f, den: vec![0; len] }
    }

    fn mul(&self, o: &Scaled, pr: &PolyRing<Ring>) -> Scaled {
        Scaled { num: pr.mul(&self.num, &o.num), den: self.den.iter().zip(&o.den).map(|(a, b)| a + b).collect() }
    }

    fn add(&self, o: &Scaled, pr: &PolyRing<Ring>, inverted: &[Elem]) -> Scaled {
        let r = &pr.base;
        let den: Vec<u32> = self.den.iter().zip(&o.den).map(|(a, b)| *a.max(b)).collect();
        let lift = |s: &Scaled| {
            let extra: Vec<u32> = den.iter().zip(&s.den).map(|(d, e)| d - e).collect();
            pr.scale(&s.num, &den_value(r, inverted, &extra))
        };
        Scaled { num: pr.add(&lift(self), &lift(o)), den }
    }

    fn neg(&self, pr: &PolyRing<Ring>) -> Scaled {
        Scaled { num: pr.neg(&self.num), den: self.den.clone() }
    }
}

/// Arithmetic in `R[X]/⟨f⟩` by plain monic division.
struct Quot {
    pr: PolyRing<Ring>,
    f: Poly<Elem>,
}

impl Quot {
    fn new(pr: &PolyRing<Ring>, f: Poly<Elem>) -> Option<Quot> {
        (f.degree().is_some() && pr.is_monic(&f)).then(|| Quot { pr: pr.clone(), f })
    }

    fn n(&self) -> usize {
        self.f.degree().unwrap()
    }

    fn red(&self, h: &Poly<Elem>) -> Poly<Elem> {
        self.pr.monic_divmod(h, &self.f).expect("modulus is monic").1
    }

    fn mul(&self, a: &Poly<Elem>, b: &Poly<Elem>) -> Poly<Elem> {
        self.red(&self.pr.mul(a, b))
    }

    fn pow(&self, a: &Poly<Elem>, e: u32) -> Poly<Elem> {
        (0..e).fold(self.red(&self.pr.one()), |acc, _| self.mul(&acc, a))
    }

    fn fprime(&self) -> Poly<Elem> {
        self.red(&self.pr.derivative(&self.f))
    }

    fn eq(&self, a: &Poly<Elem>, b: &Poly<Elem>) -> bool {
        self.pr.is_zero(&self.red(&self.pr.sub(a, b)))
    }

    /// Diagonal of the matrix of multiplication by `v` on `1, x, …`.
    fn trace(&self, v: &Poly<Elem>) -> Elem {
        let r = &self.pr.base;
        let mut acc = r.zero();
        let mut col = self.red(v);
        for j in 0..self.n() {
            if let Some(c) = col.coeff(j) {
                acc = r.add(&acc, c);
            }
            col = self.mul(&col, &self.pr.x());
        }
        acc
    }

    /// `s/uᴺ = t/uᴹ` in `S[1/u]`, searching `uᵏ` up to `k = n`.
    fn frac_eq(&self, u: &Poly<Elem>, s: (&Poly<Elem>, u32), t: (&Poly<Elem>, u32)) -> bool {
        let mut d = self.red(&self.pr.sub(&self.mul(s.0, &self.pow(u, t.1)), &self.mul(t.0, &self.pow(u, s.1))));
        for _ in 0..=self.n() {
            if self.pr.is_zero(&d) {
                return true;
            }
            d = self.mul(&d, u);
        }
        false
    }
}

struct Checks(Vec<Check>);

impl Checks {
    fn push(&mut self, identity: impl Into<String>, ok: bool) {
        self.0.push(Check { identity: identity.into(), ok });
    }
}

/// Re-checks every identity the certificate asserts. Errors are parse
/// errors; a false identity is reported in the returned report.
pub fn verify(cert: &Certificate) -> Result<VerifyReport> {
    let r = cert.ring()?;
    let rd = Reader { r: &r, pr: PolyRing::new(r.clone()), payload: &cert.payload };
    let mut out = Checks(Vec::new());
    match cert.kind {
        Kind::LeafCert => leaf(&rd, &mut out)?,
        Kind::IntegralCert => integral(&rd, &mut out)?,
        Kind::MembershipWitness => membership(&rd, &mut out)?,
        Kind::ComaximalCert => comaximal(&rd, &mut out)?,
        Kind::TateWitness => tate(&rd, &mut out)?,
        Kind::RfWitness => rf(&rd, &mut out)?,
        Kind::Decomposition => decomposition(&rd, &mut out)?,
    }
    Ok(VerifyReport { kind: cert.kind, checks: out.0 })
}

fn leaf(rd: &Reader, out: &mut Checks) -> Result<()> {
    let (r, pr) = (rd.r, &rd.pr);
    let node = rd.field("node")?;
    let inv = rd.elems_of(node.get("inverted").ok_or_else(|| Error::parse("node without `inverted`"))?)?;
    let gens = rd.elems_of(node.get("radical_gens").ok_or_else(|| Error::parse("node without `radical_gens`"))?)?;
    let zero = |s: &Scaled| -> Result<bool> {
        for c in s.num.coeffs() {
            if !r.saturation_zero_test(c, &inv, &gens)? {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let (p, q) = (Scaled::integral(rd.poly("p")?, inv.len()), Scaled::integral(rd.poly("q")?, inv.len()));
    let [g, p1, q1, a, b] = ["g", "p1", "q1", "a", "b"].map(|k| rd.scaled(k, &inv));
    let (g, p1, q1, a, b) = (g?, p1?, q1?, a?, b?);
    let monic = match g.num.lc() {
        Some(lc) => r.saturation_zero_test(&r.sub(lc, &den_value(r, &inv, &g.den)), &inv, &gens)?,
        None => false,
    };
    out.push("G is monic", monic);
    let one = Scaled::integral(pr.one(), inv.len());
    let bez = a.mul(&p1, pr).add(&b.mul(&q1, pr), pr, &inv).add(&one.neg(pr), pr, &inv);
    out.push("A·P₁ + B·Q₁ = 1", zero(&bez)?);
    out.push("P = G·P₁", zero(&p.add(&g.mul(&p1, pr).neg(pr), pr, &inv))?);
    out.push("Q = G·Q₁", zero(&q.add(&g.mul(&q1, pr).neg(pr), pr, &inv))?);
    Ok(())
}

fn integral(rd: &Reader, out: &mut Checks) -> Result<()> {
    let r = rd.r;
    let (subject, modulus, coeffs) = (rd.elem("subject")?, rd.elem("modulus")?, rd.elems("coeffs")?);
    out.push("relation expands to zero", !coeffs.is_empty() && r.is_zero(&relation_value(r, &subject, &modulus, &coeffs)));
    let Some(w) = rd.payload.get("weighted") else {
        return Ok(());
    };
    let sw = w.get("subject_weight").and_then(Value::as_u64).ok_or_else(|| Error::parse("weighted form without `subject_weight`"))?;
    let p = w.get("p").and_then(Value::as_array).ok_or_else(|| Error::parse("weighted form without `p`"))?;
    let mut forms: Vec<Vec<(Vec<u32>, BigRational)>> = Vec::with_capacity(p.len());
    for pi in p {
        let terms = pi.as_array().ok_or_else(|| Error::parse("weighted polynomial must be a term list"))?;
        let mut v = Vec::with_capacity(terms.len());
        for t in terms {
            let (e, c) = serde_json::from_value::<(Vec<u32>, String)>(t.clone()).map_err(|e| Error::parse(format!("weighted term: {e}")))?;
            let c = BigRational::from_str(&c).map_err(|e| Error::parse(format!("weighted coefficient: {e}")))?;
            v.push((e, c));
        }
        forms.push(v);
    }
    let homogeneous = forms.len() == coeffs.len()
        && forms.iter().enumerate().all(|(i, terms)| {
            terms.iter().all(|(e, _)| e.iter().enumerate().map(|(j, &k)| (j as u64 + 1) * k as u64).sum::<u64>() == (i as u64 + 1) * sw)
        });
    out.push("every pᵢ is weighted homogeneous of weight i·w", homogeneous);
    if let Some(point) = w.get("point").filter(|v| !v.is_null()) {
        let b = rd.elems_of(point)?;
        let mut ok = forms.len() == coeffs.len();
        for (terms, u) in forms.iter().zip(&coeffs) {
            let mut acc = r.zero();
            for (e, c) in terms {
                let Some(c) = r.from_rational(c) else {
                    ok = false;
                    break;
                };
                let m = e.iter().zip(&b).fold(c, |m, (&k, bj)| r.mul(&m, &r.pow(bj, k)));
                acc = r.add(&acc, &m);
            }
            ok &= r.equal(&acc, u);
        }
        out.push("uᵢ = pᵢ(b)", ok);
    }
    Ok(())
}

fn membership(rd: &Reader, out: &mut Checks) -> Result<()> {
    let pr = &rd.pr;
    let (p, q, rel, h1) = (rd.poly("p")?, rd.poly("q")?, rd.polys("rel")?, rd.poly("h1")?);
    out.push("Pᵏ + Σ Aᵢ·Qⁱ·Pᵏ⁻ⁱ = 0", !rel.is_empty() && pr.is_zero(&relation_value(pr, &p, &q, &rel)));
    match rd.payload.get("denominators").filter(|v| !v.is_null()) {
        None => out.push("P = Q·H₁", pr.is_zero(&pr.sub(&p, &pr.mul(&q, &h1)))),
        Some(d) => {
            let u = rd.r.elem_from_json(d.get("u").ok_or_else(|| Error::parse("denominators without `u`"))?)?;
            let n = d.get("n").and_then(Value::as_u64).ok_or_else(|| Error::parse("denominators without `n`"))? as u32;
            out.push("uᴺ·P = Q·H₁", pr.is_zero(&pr.sub(&pr.scale(&p, &rd.r.pow(&u, n)), &pr.mul(&q, &h1))));
        }
    }
    Ok(())
}

fn comaximal(rd: &Reader, out: &mut Checks) -> Result<()> {
    let (r, pr) = (rd.r, &rd.pr);
    let (p, q) = (rd.poly("p")?, rd.poly("q")?);
    let (us, cs, hs, n) = (rd.elems("elements")?, rd.elems("coeffs")?, rd.polys("locals")?, rd.nat("exponent")?);
    let shapes = !us.is_empty() && us.len() == cs.len() && us.len() == hs.len();
    out.push("one coefficient and one local witness per element", shapes);
    let sum = us.iter().zip(&cs).fold(r.zero(), |acc, (u, c)| r.add(&acc, &r.mul(c, &r.pow(u, n))));
    out.push("Σ cᵢ·uᵢᴺ = 1", shapes && r.is_one(&sum));
    for (i, (u, h)) in us.iter().zip(&hs).enumerate() {
        out.push(format!("u{i}ᴺ·P = Q·H{i}"), pr.is_zero(&pr.sub(&pr.scale(&p, &r.pow(u, n)), &pr.mul(&q, h))));
    }
    let glued = cs.iter().zip(&hs).fold(pr.zero(), |acc, (c, h)| pr.add(&acc, &pr.scale(h, c)));
    out.push("P = Q·Σ cᵢHᵢ", pr.is_zero(&pr.sub(&p, &pr.mul(&q, &glued))));
    Ok(())
}

fn tate(rd: &Reader, out: &mut Checks) -> Result<()> {
    let (r, pr) = (rd.r, &rd.pr);
    let f = rd.poly("f")?;
    let Some(s) = Quot::new(pr, f.clone()) else {
        out.push("f is monic of positive degree", false);
        return Ok(());
    };
    let (v, a, w, rel, traces) = (rd.poly("v")?, rd.elem("a")?, rd.poly("w")?, rd.polys("rel")?, rd.elems("traces")?);
    let n = s.n();
    // gᵢ(Y) = Σ_{k>i} f_k·Y^{k−1−i}
    let g = |i: usize| pr.from_coeffs(f.coeffs()[i + 1..].to_vec());
    let ok = traces.len() == n && (0..n).all(|i| r.equal(&traces[i], &s.trace(&s.mul(&g(i), &v))));
    out.push("tᵢ = tr(gᵢ(x)·v)", ok);
    let t = pr.from_coeffs(traces.clone());
    out.push("f′(x)·v = Σ tᵢ·xⁱ", s.eq(&s.mul(&s.fprime(), &v), &t));
    out.push("Σ tᵢ·xⁱ = a·w", s.eq(&t, &pr.scale(&w, &a)));
    if !rel.is_empty() {
        let sr = QuotRing(&s);
        let rel: Vec<Poly<Elem>> = rel.iter().map(|u| s.red(u)).collect();
        let val = relation_value(&sr, &s.red(&v), &pr.constant(a.clone()), &rel);
        out.push("vⁿ + Σ uᵢ·aⁱ·vⁿ⁻ⁱ = 0 in S", pr.is_zero(&val));
    }
    Ok(())
}

/// [`Quot`] as a [`CommRing`], for relation expansion.
struct QuotRing<'a>(&'a Quot);

impl CommRing for QuotRing<'_> {
    type Elem = Poly<Elem>;
    fn zero(&self) -> Poly<Elem> {
        Poly::zero()
    }
    fn one(&self) -> Poly<Elem> {
        self.0.red(&self.0.pr.one())
    }
    fn from_i64(&self, n: i64) -> Poly<Elem> {
        self.0.red(&self.0.pr.from_i64(n))
    }
    fn add(&self, x: &Poly<Elem>, y: &Poly<Elem>) -> Poly<Elem> {
        self.0.pr.add(x, y)
    }
    fn neg(&self, x: &Poly<Elem>) -> Poly<Elem> {
        self.0.pr.neg(x)
    }
    fn mul(&self, x: &Poly<Elem>, y: &Poly<Elem>) -> Poly<Elem> {
        self.0.mul(x, y)
    }
    fn is_zero(&self, x: &Poly<Elem>) -> bool {
        x.is_zero()
    }
}

fn rf(rd: &Reader, out: &mut Checks) -> Result<()> {
    let pr = &rd.pr;
    let Some(s) = Quot::new(pr, rd.poly("f")?) else {
        out.push("f is monic of positive degree", false);
        return Ok(());
    };
    let (p, q, rel, extra, w) = (rd.poly("p")?, rd.poly("q")?, rd.polys("rel")?, rd.polys("extra")?, rd.poly("w")?);
    let (n, d) = (rd.nat("n")?, rd.nat("d")?);
    let sr = QuotRing(&s);
    let red: Vec<Poly<Elem>> = rel.iter().map(|u| s.red(u)).collect();
    out.push("pⁿ + Σ uᵢ·qⁱ·pⁿ⁻ⁱ = 0 in S", !red.is_empty() && pr.is_zero(&relation_value(&sr, &s.red(&p), &s.red(&q), &red)));
    let dd = extra.iter().fold(sr.one(), |acc, e| s.mul(&acc, e));
    let lhs = s.mul(&s.mul(&s.pow(&s.fprime(), n), &s.pow(&dd, d)), &p);
    out.push("f′(x)ᴺ·dᴰ·p(x) = q(x)·w", s.eq(&lhs, &s.mul(&q, &w)));
    Ok(())
}

fn decomposition(rd: &Reader, out: &mut Checks) -> Result<()> {
    let pr = &rd.pr;
    let (f, g, f1) = (rd.poly("f")?, rd.poly("g")?, rd.poly("f1")?);
    let monic = [&f, &g, &f1].iter().all(|h| h.degree().is_some_and(|d| d > 0) && pr.is_monic(h));
    out.push("f, g, f₁ monic of positive degree", monic);
    out.push("f = g·f₁", pr.is_zero(&pr.sub(&f, &pr.mul(&g, &f1))));
    let Some(s) = Quot::new(pr, f).filter(|_| monic) else {
        return Ok(());
    };
    let et = |k: &str| -> Result<(Poly<Elem>, u32)> {
        let v = rd.field(k)?;
        let num = pr.from_json(v.get("num").ok_or_else(|| Error::parse("étale element without `num`"))?)?;
        let e = v.get("exp").and_then(Value::as_u64).ok_or_else(|| Error::parse("étale element without `exp`"))? as u32;
        Ok((s.red(&num), e))
    };
    let (e1, e2) = (et("e1")?, et("e2")?);
    let fp = s.fprime();
    let eq = |a: (&Poly<Elem>, u32), b: (&Poly<Elem>, u32)| s.frac_eq(&fp, a, b);
    let sq = |e: &(Poly<Elem>, u32)| (s.mul(&e.0, &e.0), 2 * e.1);
    let (s1, s2) = (sq(&e1), sq(&e2));
    out.push("e₁² = e₁", eq((&s1.0, s1.1), (&e1.0, e1.1)));
    out.push("e₂² = e₂", eq((&s2.0, s2.1), (&e2.0, e2.1)));
    let prod = s.mul(&e1.0, &e2.0);
    out.push("e₁·e₂ = 0", eq((&prod, e1.1 + e2.1), (&Poly::zero(), 0)));
    let sum = pr.add(&s.mul(&e1.0, &s.pow(&fp, e2.1)), &s.mul(&e2.0, &s.pow(&fp, e1.1)));
    out.push("e₁ + e₂ = 1", eq((&sum, e1.1 + e2.1), (&s.red(&pr.one()), 0)));
    // e₁ lives on the g-factor: e₁·g(x) = 0, e₂·f₁(x) = 0
    out.push("e₁·g(x) = 0", eq((&s.mul(&e1.0, &g), e1.1), (&Poly::zero(), 0)));
    out.push("e₂·f₁(x) = 0", eq((&s.mul(&e2.0, &f1), e2.1), (&Poly::zero(), 0)));
    if let Some(t) = rd.payload.get("trivial").and_then(Value::as_bool) {
        out.push("trivial ⇔ f′(x)ⁿ = 0", t == pr.is_zero(&s.pow(&fp, s.n() as u32)));
    }
    Ok(())
}
