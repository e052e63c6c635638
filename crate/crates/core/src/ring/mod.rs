//! Computable commutative rings.
//!
//! A [`Ring`] is a validated constructor tree (it doubles as the JSON ring
//! spec) and [`Elem`] is the canonical payload of one of its elements. All
//! backends decide equality, so elements compare structurally.

mod fpoly;
pub mod int;
mod quad;
mod text;

use std::fmt;
use std::ops::{BitAnd, BitOr};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grobner::{radical_member, MPoly};

pub use int::SmallInt;
pub use quad::Lattice2;

/// Structural ring operations. Implemented by [`Ring`], by polynomial rings
/// over any `CommRing`, and by formal localizations in the tree engine.
pub trait CommRing {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, x: &Self::Elem) -> bool;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_one(&self, x: &Self::Elem) -> bool {
        self.is_zero(&self.sub(x, &self.one()))
    }

    fn equal(&self, x: &Self::Elem, y: &Self::Elem) -> bool {
        self.is_zero(&self.sub(x, y))
    }

    fn pow(&self, x: &Self::Elem, mut e: u32) -> Self::Elem {
        let mut acc = self.one();
        let mut base = x.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    fn sum<'a, I>(&self, xs: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        xs.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    fn product<'a, I>(&self, xs: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        xs.into_iter().fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Capability flags advertised by a backend.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Capabilities(u16);

impl Capabilities {
    pub const NONE: Capabilities = Capabilities(0);
    pub const DISCRETE: Capabilities = Capabilities(1);
    pub const DOMAIN: Capabilities = Capabilities(1 << 1);
    pub const WITHOUT_ZERO_DIVISORS: Capabilities = Capabilities(1 << 2);
    pub const PF: Capabilities = Capabilities(1 << 3);
    pub const NORMAL: Capabilities = Capabilities(1 << 4);
    pub const FIELD: Capabilities = Capabilities(1 << 5);
    pub const COMAXIMAL_SOLVER: Capabilities = Capabilities(1 << 6);
    pub const SATURATION_TEST: Capabilities = Capabilities(1 << 7);

    const NAMES: [(Capabilities, &'static str); 8] = [
        (Self::DISCRETE, "DISCRETE"),
        (Self::DOMAIN, "DOMAIN"),
        (Self::WITHOUT_ZERO_DIVISORS, "WITHOUT_ZERO_DIVISORS"),
        (Self::PF, "PF"),
        (Self::NORMAL, "NORMAL"),
        (Self::FIELD, "FIELD"),
        (Self::COMAXIMAL_SOLVER, "COMAXIMAL_SOLVER"),
        (Self::SATURATION_TEST, "SATURATION_TEST"),
    ];

    pub fn contains(self, other: Capabilities) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn names(self) -> Vec<&'static str> {
        Self::NAMES.iter().filter(|(c, _)| self.contains(*c)).map(|(_, n)| *n).collect()
    }
}

impl BitOr for Capabilities {
    type Output = Capabilities;
    fn bitor(self, rhs: Self) -> Self {
        Capabilities(self.0 | rhs.0)
    }
}

impl BitAnd for Capabilities {
    type Output = Capabilities;
    fn bitand(self, rhs: Self) -> Self {
        Capabilities(self.0 & rhs.0)
    }
}

impl fmt::Debug for Capabilities {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.names().join(", "))
    }
}

/// A computable ring. The serde form is the JSON ring spec, e.g.
/// `{"ring":"QuadInt","d":-5}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "ring")]
pub enum Ring {
    Int,
    #[serde(rename = "Q", alias = "Rat")]
    Rat,
    PrimeField { p: u64 },
    /// `Z[ω]` with `ω² = d`.
    QuadInt { d: i64 },
    /// `K[var]` for a field `K` (`Q` or a prime field).
    PolyOverField { base: Box<Ring>, var: String },
    MPolyQ { vars: Vec<String> },
    Product { factors: Vec<Ring> },
}

/// Canonical element payloads.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Elem {
    Int(BigInt),
    Rat(BigRational),
    Fp(u64),
    /// `a + b·ω`
    Quad(BigInt, BigInt),
    /// ascending coefficients over the base field, trimmed
    UPoly(Vec<Elem>),
    MPoly(MPoly),
    Tuple(Vec<Elem>),
}

/// `bⁿ + u₁·a·bⁿ⁻¹ + ⋯ + uₙ·aⁿ = 0`, stored as `[u₁, …, uₙ]`. Also used with
/// polynomial coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegralRelation<E> {
    pub coeffs: Vec<E>,
}

impl<E> IntegralRelation<E> {
    pub fn new(coeffs: Vec<E>) -> Self {
        IntegralRelation { coeffs }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }
}

/// Value of `bⁿ + Σ uᵢ·aⁱ·bⁿ⁻ⁱ` in any ring.
pub fn relation_value<R: CommRing>(r: &R, b: &R::Elem, a: &R::Elem, coeffs: &[R::Elem]) -> R::Elem {
    let n = coeffs.len() as u32;
    let mut acc = r.pow(b, n);
    let mut apow = r.one();
    for (i, u) in coeffs.iter().enumerate() {
        apow = r.mul(&apow, a);
        let bpow = r.pow(b, n - 1 - i as u32);
        acc = r.add(&acc, &r.mul(u, &r.mul(&apow, &bpow)));
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

fn foreign() -> ! {
    panic!("element does not belong to this ring")
}

fn is_ident(s: &str) -> bool {
    let mut cs = s.chars();
    matches!(cs.next(), Some(c) if c.is_alphabetic())
        && cs.all(|c| c.is_alphanumeric() || c == '_')
}

impl Ring {
    pub fn quad_int(d: i64) -> Result<Ring> {
        let r = Ring::QuadInt { d };
        r.validate()?;
        Ok(r)
    }

    pub fn prime_field(p: u64) -> Result<Ring> {
        let r = Ring::PrimeField { p };
        r.validate()?;
        Ok(r)
    }

    pub fn poly_over(base: Ring, var: &str) -> Result<Ring> {
        let r = Ring::PolyOverField { base: Box::new(base), var: var.to_string() };
        r.validate()?;
        Ok(r)
    }

    pub fn mpoly_q(vars: &[&str]) -> Result<Ring> {
        let r = Ring::MPolyQ { vars: vars.iter().map(|v| v.to_string()).collect() };
        r.validate()?;
        Ok(r)
    }

    pub fn product(factors: Vec<Ring>) -> Result<Ring> {
        let r = Ring::Product { factors };
        r.validate()?;
        Ok(r)
    }

    /// Rejects constructor trees outside the shipped backends.
    pub fn validate(&self) -> Result<()> {
        match self {
            Ring::Int | Ring::Rat => Ok(()),
            Ring::PrimeField { p } => {
                if int::is_prime_u64(*p) {
                    Ok(())
                } else {
                    Err(Error::parse(format!("PrimeField: {p} is not prime")))
                }
            }
            Ring::QuadInt { d } => {
                if !int::is_squarefree_i64(*d) || *d == 1 {
                    return Err(Error::parse(format!("QuadInt: d = {d} must be squarefree and not 1")));
                }
                if d.rem_euclid(4) == 1 {
                    return Err(Error::UnsupportedCapability(format!(
                        "QuadInt: d = {d} ≡ 1 mod 4, so Z[√d] is not the maximal order and not normal"
                    )));
                }
                Ok(())
            }
            Ring::PolyOverField { base, var } => {
                if !matches!(**base, Ring::Rat | Ring::PrimeField { .. }) {
                    return Err(Error::parse("PolyOverField: base must be Q or a prime field"));
                }
                if !is_ident(var) || var == "w" {
                    return Err(Error::parse(format!("PolyOverField: bad variable name {var:?}")));
                }
                base.validate()
            }
            Ring::MPolyQ { vars } => {
                if vars.is_empty() || vars.len() > 4 {
                    return Err(Error::parse("MPolyQ: between 1 and 4 variables"));
                }
                for (i, v) in vars.iter().enumerate() {
                    if !is_ident(v) || vars[..i].contains(v) {
                        return Err(Error::parse(format!("MPolyQ: bad variable name {v:?}")));
                    }
                }
                Ok(())
            }
            Ring::Product { factors } => {
                if factors.is_empty() {
                    return Err(Error::parse("Product: needs at least one factor"));
                }
                factors.iter().try_for_each(Ring::validate)
            }
        }
    }

    pub fn from_json_value(v: &serde_json::Value) -> Result<Ring> {
        let r: Ring = serde_json::from_value(v.clone()).map_err(|e| Error::parse(format!("ring spec: {e}")))?;
        r.validate()?;
        Ok(r)
    }

    pub fn from_json_str(s: &str) -> Result<Ring> {
        let v: serde_json::Value = serde_json::from_str(s).map_err(|e| Error::parse(format!("ring spec: {e}")))?;
        Ring::from_json_value(&v)
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("ring spec serializes")
    }

    pub fn capabilities(&self) -> Capabilities {
        use Capabilities as C;
        let base = C::DISCRETE | C::DOMAIN | C::WITHOUT_ZERO_DIVISORS | C::PF | C::NORMAL | C::SATURATION_TEST;
        match self {
            Ring::Int | Ring::QuadInt { .. } | Ring::PolyOverField { .. } => base | C::COMAXIMAL_SOLVER,
            Ring::Rat | Ring::PrimeField { .. } => base | C::COMAXIMAL_SOLVER | C::FIELD,
            Ring::MPolyQ { .. } => base,
            Ring::Product { factors } => {
                let common = factors.iter().fold(base | C::COMAXIMAL_SOLVER | C::FIELD, |acc, f| acc & f.capabilities());
                if factors.len() == 1 {
                    return common;
                }
                let kept = C::DISCRETE | C::NORMAL | C::COMAXIMAL_SOLVER | C::SATURATION_TEST;
                // a product of normal domains is a normal pf-ring with zero divisors
                (common & kept) | C::PF
            }
        }
    }

    pub fn require(&self, caps: Capabilities, op: &str) -> Result<()> {
        let have = self.capabilities();
        if have.contains(caps) {
            Ok(())
        } else {
            let missing = Capabilities(caps.0 & !have.0);
            Err(Error::UnsupportedCapability(format!("{op} needs {:?} on {}", missing, self.name())))
        }
    }

    /// Short human-readable name.
    pub fn name(&self) -> String {
        match self {
            Ring::Int => "Z".into(),
            Ring::Rat => "Q".into(),
            Ring::PrimeField { p } => format!("F_{p}"),
            Ring::QuadInt { d } => format!("Z[√{d}]"),
            Ring::PolyOverField { base, var } => format!("{}[{var}]", base.name()),
            Ring::MPolyQ { vars } => format!("Q[{}]", vars.join(",")),
            Ring::Product { factors } => factors.iter().map(Ring::name).collect::<Vec<_>>().join(" × "),
        }
    }

    /// Shape check: does `x` carry a payload of this backend?
    pub fn contains(&self, x: &Elem) -> bool {
        match (self, x) {
            (Ring::Int, Elem::Int(_)) | (Ring::Rat, Elem::Rat(_)) | (Ring::QuadInt { .. }, Elem::Quad(..)) => true,
            (Ring::PrimeField { p }, Elem::Fp(a)) => a < p,
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f)) => {
                f.iter().all(|c| base.contains(c)) && f.last().is_none_or(|c| !base.is_zero(c))
            }
            (Ring::MPolyQ { vars }, Elem::MPoly(f)) => f.nvars() == vars.len(),
            (Ring::Product { factors }, Elem::Tuple(xs)) => {
                xs.len() == factors.len() && factors.iter().zip(xs).all(|(r, x)| r.contains(x))
            }
            _ => false,
        }
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Int => Elem::Int(n.clone()),
            Ring::Rat => Elem::Rat(BigRational::from_integer(n.clone())),
            Ring::PrimeField { p } => Elem::Fp(int::to_mod(n, *p)),
            Ring::QuadInt { .. } => Elem::Quad(n.clone(), BigInt::zero()),
            Ring::PolyOverField { base, .. } => Elem::UPoly(fpoly::trim(base, vec![base.from_bigint(n)])),
            Ring::MPolyQ { vars } => Elem::MPoly(MPoly::constant(vars.len(), BigRational::from_integer(n.clone()))),
            Ring::Product { factors } => Elem::Tuple(factors.iter().map(|r| r.from_bigint(n)).collect()),
        }
    }

    /// Checked arithmetic for untrusted inputs.
    pub fn arith(&self, op: ArithOp, x: &Elem, y: &Elem) -> Result<Elem> {
        if !self.contains(x) || !self.contains(y) {
            return Err(Error::MixedBackends);
        }
        Ok(match op {
            ArithOp::Add => self.add(x, y),
            ArithOp::Sub => self.sub(x, y),
            ArithOp::Mul => self.mul(x, y),
            ArithOp::Neg => self.neg(x),
        })
    }

    /// Multiplicative inverse, if `x` is a unit.
    pub fn inverse(&self, x: &Elem) -> Option<Elem> {
        match (self, x) {
            (Ring::Int, Elem::Int(a)) => (a.abs().is_one()).then(|| Elem::Int(a.clone())),
            (Ring::Rat, Elem::Rat(a)) => (!a.is_zero()).then(|| Elem::Rat(a.recip())),
            (Ring::PrimeField { p }, Elem::Fp(a)) => int::inv_mod(*a, *p).map(Elem::Fp),
            (Ring::QuadInt { d }, Elem::Quad(a, b)) => {
                let n = a * a - BigInt::from(*d) * b * b;
                if n.abs().is_one() {
                    Some(Elem::Quad(a * &n, -(b * &n)))
                } else {
                    None
                }
            }
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f)) => {
                if f.len() == 1 {
                    base.inverse(&f[0]).map(|c| Elem::UPoly(vec![c]))
                } else {
                    None
                }
            }
            (Ring::MPolyQ { vars }, Elem::MPoly(f)) => match f.as_constant() {
                Some(c) if !c.is_zero() => Some(Elem::MPoly(MPoly::constant(vars.len(), c.recip()))),
                _ => None,
            },
            (Ring::Product { factors }, Elem::Tuple(xs)) => {
                factors.iter().zip(xs).map(|(r, x)| r.inverse(x)).collect::<Option<Vec<_>>>().map(Elem::Tuple)
            }
            _ => foreign(),
        }
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.inverse(x).is_some()
    }

    /// Exact division: some `q` with `b = a·q`, if one exists. For `a = 0`
    /// this is `Some(0)` exactly when `b = 0`.
    pub fn divide(&self, b: &Elem, a: &Elem) -> Option<Elem> {
        if let (Ring::Product { factors }, Elem::Tuple(bs), Elem::Tuple(as_)) = (self, b, a) {
            return factors
                .iter()
                .zip(bs.iter().zip(as_))
                .map(|(r, (b, a))| r.divide(b, a))
                .collect::<Option<Vec<_>>>()
                .map(Elem::Tuple);
        }
        if self.is_zero(a) {
            return self.is_zero(b).then(|| self.zero());
        }
        match (self, b, a) {
            (Ring::Int, Elem::Int(b), Elem::Int(a)) => {
                let (q, r) = b.div_rem(a);
                r.is_zero().then_some(Elem::Int(q))
            }
            (Ring::Rat | Ring::PrimeField { .. }, _, _) => Some(self.mul(b, &self.inverse(a)?)),
            (Ring::QuadInt { d }, Elem::Quad(b0, b1), Elem::Quad(a0, a1)) => {
                let d = BigInt::from(*d);
                let n = a0 * a0 - &d * a1 * a1;
                // b·conj(a) = (b0 + b1ω)(a0 − a1ω)
                let x = b0 * a0 - &d * b1 * a1;
                let y = b1 * a0 - b0 * a1;
                let (qx, rx) = x.div_rem(&n);
                let (qy, ry) = y.div_rem(&n);
                (rx.is_zero() && ry.is_zero()).then_some(Elem::Quad(qx, qy))
            }
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f), Elem::UPoly(g)) => {
                let (q, r) = fpoly::divmod(base, f, g);
                r.is_empty().then_some(Elem::UPoly(q))
            }
            (Ring::MPolyQ { .. }, Elem::MPoly(f), Elem::MPoly(g)) => f.div_exact(g).map(Elem::MPoly),
            _ => foreign(),
        }
    }

    /// Division in the fraction field, reporting whether the quotient lies in
    /// the ring.
    pub fn fraction_divide(&self, b: &Elem, a: &Elem) -> Result<Option<Elem>> {
        self.require(Capabilities::DOMAIN, "fraction_divide")?;
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(self.divide(b, a))
    }

    pub fn verify_relation(&self, b: &Elem, a: &Elem, rel: &IntegralRelation<Elem>) -> bool {
        !rel.coeffs.is_empty() && self.is_zero(&relation_value(self, b, a, &rel.coeffs))
    }

    /// `q` with `b = a·q`, given that `b` is integral over `⟨a⟩`.
    pub fn normality_witness(&self, b: &Elem, a: &Elem, rel: &IntegralRelation<Elem>) -> Result<Elem> {
        self.require(Capabilities::NORMAL, "normality_witness")?;
        if !self.verify_relation(b, a, rel) {
            return Err(Error::RelationInvalid);
        }
        self.divide(b, a).ok_or_else(|| {
            Error::NotNormalWitnessFailure(format!("{} is integral over ⟨{}⟩ but not divisible", self.show(b), self.show(a)))
        })
    }

    /// `u` with `u·a = 0` and `(1 − u)·b = 0`, given `a·b = 0`.
    pub fn pf_split(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        self.require(Capabilities::PF, "pf_split")?;
        if !self.is_zero(&self.mul(a, b)) {
            return Err(Error::PreconditionViolated("pf_split needs a·b = 0".into()));
        }
        self.require(Capabilities::NORMAL, "pf_split")?;
        // b² − (a+b)·b = −ab = 0, so b is integral over ⟨a + b⟩
        let rel = IntegralRelation::new(vec![self.from_i64(-1), self.zero()]);
        let u = self.normality_witness(b, &self.add(a, b), &rel)?;
        let ok = self.is_zero(&self.mul(&u, a)) && self.is_zero(&self.mul(&self.sub(&self.one(), &u), b));
        if ok {
            Ok(u)
        } else {
            Err(Error::NotNormalWitnessFailure("pf_split law fails".into()))
        }
    }

    /// Decides `c = 0` in `R[1/∏inverted]/√⟨radical_gens⟩`, i.e. whether
    /// `c·(∏inverted)ᵏ ∈ √⟨radical_gens⟩` for some `k`.
    pub fn saturation_zero_test(&self, c: &Elem, inverted: &[Elem], gens: &[Elem]) -> Result<bool> {
        self.require(Capabilities::SATURATION_TEST, "saturation_zero_test")?;
        if self.is_zero(c) {
            return Ok(true);
        }
        // c·uᵏ ∈ √I for some k iff c·u ∈ √I
        let x = self.mul(c, &self.product(inverted));
        self.in_radical(&x, gens)
    }

    /// Is the node ring `R[1/∏inverted]/√⟨gens⟩` the zero ring?
    pub fn is_trivial(&self, inverted: &[Elem], gens: &[Elem]) -> Result<bool> {
        self.saturation_zero_test(&self.one(), inverted, gens)
    }

    fn in_radical(&self, x: &Elem, gens: &[Elem]) -> Result<bool> {
        let gens: Vec<&Elem> = gens.iter().filter(|g| !self.is_zero(g)).collect();
        if self.is_zero(x) {
            return Ok(true);
        }
        match (self, x) {
            (Ring::Product { factors }, Elem::Tuple(xs)) => {
                for (i, (r, xi)) in factors.iter().zip(xs).enumerate() {
                    let gi: Vec<Elem> = gens.iter().map(|g| component(g, i).clone()).collect();
                    if !r.in_radical(xi, &gi)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            // a reduced ring: only 0 is nilpotent
            _ if gens.is_empty() => Ok(false),
            (Ring::Rat | Ring::PrimeField { .. }, _) => Ok(true),
            (Ring::Int, Elem::Int(x)) => {
                let g = gens.iter().fold(BigInt::zero(), |acc, g| acc.gcd(int_of(g)));
                let k = BigInt::from(int::bitlen(&g));
                Ok(x.modpow(&k, &g).is_zero())
            }
            (Ring::QuadInt { d }, Elem::Quad(x0, x1)) => {
                let lattice = self.quad_ideal(gens.iter().copied());
                let s = lattice.index().expect("nonzero ideal of Z[ω] has finite index");
                let k = int::bitlen(&s) + 1;
                let d = BigInt::from(*d);
                let (mut y0, mut y1) = (BigInt::one(), BigInt::zero());
                for _ in 0..k {
                    let t0 = &y0 * x0 + &d * &y1 * x1;
                    let t1 = &y0 * x1 + &y1 * x0;
                    y0 = int::reduce_mod(&t0, &s);
                    y1 = int::reduce_mod(&t1, &s);
                }
                Ok(lattice.contains(&y0, &y1))
            }
            (Ring::PolyOverField { base, .. }, Elem::UPoly(x)) => {
                let g = gens.iter().fold(Vec::new(), |acc, g| fpoly::gcd(base, &acc, upoly_of(g)));
                let deg = g.len() as u64 - 1;
                Ok(deg == 0 || fpoly::pow_mod(base, x, deg, &g).is_empty())
            }
            (Ring::MPolyQ { .. }, Elem::MPoly(x)) => {
                let gs: Vec<MPoly> = gens.iter().map(|g| mpoly_of(g).clone()).collect();
                radical_member(x, &gs, Limits::default().max_pairs)
            }
            _ => foreign(),
        }
    }

    fn quad_ideal<'a>(&self, gens: impl Iterator<Item = &'a Elem>) -> Lattice2 {
        let Ring::QuadInt { d } = self else { foreign() };
        let d = BigInt::from(*d);
        let mut vs = Vec::new();
        for g in gens {
            let Elem::Quad(a, b) = g else { foreign() };
            vs.push((a.clone(), b.clone()));
            // g·ω = d·b + a·ω
            vs.push((&d * b, a.clone()));
        }
        Lattice2::span(&vs)
    }

    /// `c` with `Σ cᵢ·elemsᵢ = 1`.
    pub fn comaximal_coefficients(&self, elems: &[Elem]) -> Result<Vec<Elem>> {
        self.require(Capabilities::COMAXIMAL_SOLVER, "comaximal_coefficients")?;
        let cs = self.comaximal_raw(elems).ok_or(Error::NotComaximal)?;
        let total = self.sum(cs.iter().zip(elems).map(|(c, e)| self.mul(c, e)).collect::<Vec<_>>().iter());
        if !self.is_one(&total) {
            return Err(Error::NotComaximal);
        }
        Ok(cs)
    }

    fn comaximal_raw(&self, elems: &[Elem]) -> Option<Vec<Elem>> {
        match self {
            Ring::Int => {
                let mut g = BigInt::zero();
                let mut cs: Vec<BigInt> = Vec::new();
                for e in elems {
                    let (g2, s, t) = int::egcd(&g, int_of(e));
                    cs.iter_mut().for_each(|c| *c *= &s);
                    cs.push(t);
                    g = g2;
                }
                g.is_one().then(|| cs.into_iter().map(Elem::Int).collect())
            }
            Ring::Rat | Ring::PrimeField { .. } => {
                let i = elems.iter().position(|e| !self.is_zero(e))?;
                let mut cs = vec![self.zero(); elems.len()];
                cs[i] = self.inverse(&elems[i])?;
                Some(cs)
            }
            Ring::QuadInt { .. } => {
                let k = self.quad_ideal(elems.iter()).solve(&BigInt::one(), &BigInt::zero())?;
                Some(k.chunks(2).map(|c| Elem::Quad(c[0].clone(), c[1].clone())).collect())
            }
            Ring::PolyOverField { base, .. } => {
                let mut g: Vec<Elem> = Vec::new();
                let mut cs: Vec<Vec<Elem>> = Vec::new();
                for e in elems {
                    let (g2, s, t) = fpoly::ext_gcd(base, &g, upoly_of(e));
                    cs.iter_mut().for_each(|c| *c = fpoly::mul(base, c, &s));
                    cs.push(t);
                    g = g2;
                }
                (g.len() == 1).then(|| cs.into_iter().map(Elem::UPoly).collect())
            }
            Ring::MPolyQ { .. } => None,
            Ring::Product { factors } => {
                let mut per: Vec<Vec<Elem>> = Vec::new();
                for (i, r) in factors.iter().enumerate() {
                    let ei: Vec<Elem> = elems.iter().map(|e| component(e, i).clone()).collect();
                    per.push(r.comaximal_raw(&ei)?);
                }
                Some((0..elems.len()).map(|j| Elem::Tuple(per.iter().map(|c| c[j].clone()).collect())).collect())
            }
        }
    }

    /// An element generating the same radical and the same localization as
    /// `x`, with repeated factors removed where that is cheap.
    pub fn squarefree_hint(&self, x: &Elem) -> Elem {
        if self.is_zero(x) {
            return x.clone();
        }
        match (self, x) {
            (Ring::Int, Elem::Int(n)) => Elem::Int(int::radical(n)),
            (Ring::Rat | Ring::PrimeField { .. }, _) => self.one(),
            (Ring::QuadInt { .. }, _) => x.clone(),
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f)) => {
                let df = fpoly::derivative(base, f);
                if matches!(**base, Ring::Rat) && !df.is_empty() {
                    let g = fpoly::gcd(base, f, &df);
                    Elem::UPoly(fpoly::monic(base, &fpoly::divmod(base, f, &g).0))
                } else {
                    Elem::UPoly(fpoly::monic(base, f))
                }
            }
            (Ring::MPolyQ { vars }, Elem::MPoly(f)) => {
                if f.num_terms() == 1 {
                    let (m, _) = f.leading().unwrap();
                    let e: Vec<u32> = m.0.iter().map(|&k| k.min(1)).collect();
                    Elem::MPoly(MPoly::from_terms(vars.len(), [(e, BigRational::one())]))
                } else {
                    Elem::MPoly(f.primitive())
                }
            }
            (Ring::Product { factors }, Elem::Tuple(xs)) => {
                Elem::Tuple(factors.iter().zip(xs).map(|(r, x)| r.squarefree_hint(x)).collect())
            }
            _ => foreign(),
        }
    }

    /// Names usable as generators in element syntax.
    pub fn generator_names(&self) -> Vec<String> {
        match self {
            Ring::QuadInt { .. } => vec!["w".into()],
            Ring::PolyOverField { var, .. } => vec![var.clone()],
            Ring::MPolyQ { vars } => vars.clone(),
            _ => Vec::new(),
        }
    }

    pub fn generator(&self, name: &str) -> Option<Elem> {
        match self {
            Ring::QuadInt { .. } if name == "w" => Some(Elem::Quad(BigInt::zero(), BigInt::one())),
            Ring::PolyOverField { base, var } if name == var => Some(Elem::UPoly(vec![base.zero(), base.one()])),
            Ring::MPolyQ { vars } => vars.iter().position(|v| v == name).map(|i| Elem::MPoly(MPoly::var(vars.len(), i))),
            _ => None,
        }
    }

    pub fn factors(&self) -> Option<&[Ring]> {
        match self {
            Ring::Product { factors } => Some(factors),
            _ => None,
        }
    }

    /// Rational number as an element, when the ring contains `Q`.
    pub fn from_rational(&self, q: &BigRational) -> Option<Elem> {
        if q.is_integer() {
            return Some(self.from_bigint(q.numer()));
        }
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.inverse(&d).map(|di| self.mul(&n, &di))
    }

    pub fn show(&self, x: &Elem) -> String {
        text::format(self, x)
    }

    pub fn parse_elem(&self, s: &str) -> Result<Elem> {
        text::parse(self, s)
    }

    pub fn elem_from_json(&self, v: &serde_json::Value) -> Result<Elem> {
        match v {
            serde_json::Value::String(s) => self.parse_elem(s),
            serde_json::Value::Number(n) => self.parse_elem(&n.to_string()),
            _ => Err(Error::parse(format!("expected an element string, got {v}"))),
        }
    }

    pub fn elem_to_json(&self, x: &Elem) -> serde_json::Value {
        serde_json::Value::String(self.show(x))
    }
}

fn component(x: &Elem, i: usize) -> &Elem {
    match x {
        Elem::Tuple(xs) => &xs[i],
        _ => foreign(),
    }
}

fn int_of(x: &Elem) -> &BigInt {
    match x {
        Elem::Int(n) => n,
        _ => foreign(),
    }
}

fn upoly_of(x: &Elem) -> &[Elem] {
    match x {
        Elem::UPoly(f) => f,
        _ => foreign(),
    }
}

fn mpoly_of(x: &Elem) -> &MPoly {
    match x {
        Elem::MPoly(f) => f,
        _ => foreign(),
    }
}

impl Elem {
    /// Integer value of an `Int` element.
    pub fn as_int(&self) -> Option<&BigInt> {
        match self {
            Elem::Int(n) => Some(n),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        self.as_int().and_then(|n| n.to_i64())
    }

    pub fn components(&self) -> Option<&[Elem]> {
        match self {
            Elem::Tuple(xs) => Some(xs),
            _ => None,
        }
    }
}

impl CommRing for Ring {
    type Elem = Elem;

    fn zero(&self) -> Elem {
        self.from_bigint(&BigInt::zero())
    }

    fn one(&self) -> Elem {
        self.from_bigint(&BigInt::one())
    }

    fn from_i64(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    fn add(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Int, Elem::Int(a), Elem::Int(b)) => Elem::Int(a + b),
            (Ring::Rat, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a + b),
            (Ring::PrimeField { p }, Elem::Fp(a), Elem::Fp(b)) => Elem::Fp(((*a as u128 + *b as u128) % *p as u128) as u64),
            (Ring::QuadInt { .. }, Elem::Quad(a, b), Elem::Quad(c, d)) => Elem::Quad(a + c, b + d),
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f), Elem::UPoly(g)) => Elem::UPoly(fpoly::add(base, f, g)),
            (Ring::MPolyQ { .. }, Elem::MPoly(f), Elem::MPoly(g)) => Elem::MPoly(f.add(g)),
            (Ring::Product { factors }, Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(factors.iter().zip(a.iter().zip(b)).map(|(r, (x, y))| r.add(x, y)).collect())
            }
            _ => foreign(),
        }
    }

    fn neg(&self, x: &Elem) -> Elem {
        match (self, x) {
            (Ring::Int, Elem::Int(a)) => Elem::Int(-a),
            (Ring::Rat, Elem::Rat(a)) => Elem::Rat(-a),
            (Ring::PrimeField { p }, Elem::Fp(a)) => Elem::Fp(if *a == 0 { 0 } else { p - a }),
            (Ring::QuadInt { .. }, Elem::Quad(a, b)) => Elem::Quad(-a, -b),
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f)) => Elem::UPoly(fpoly::neg(base, f)),
            (Ring::MPolyQ { .. }, Elem::MPoly(f)) => Elem::MPoly(f.neg()),
            (Ring::Product { factors }, Elem::Tuple(a)) => Elem::Tuple(factors.iter().zip(a).map(|(r, x)| r.neg(x)).collect()),
            _ => foreign(),
        }
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        match (self, x, y) {
            (Ring::Int, Elem::Int(a), Elem::Int(b)) => Elem::Int(a * b),
            (Ring::Rat, Elem::Rat(a), Elem::Rat(b)) => Elem::Rat(a * b),
            (Ring::PrimeField { p }, Elem::Fp(a), Elem::Fp(b)) => Elem::Fp(((*a as u128 * *b as u128) % *p as u128) as u64),
            (Ring::QuadInt { d }, Elem::Quad(a, b), Elem::Quad(c, e)) => {
                Elem::Quad(a * c + BigInt::from(*d) * b * e, a * e + b * c)
            }
            (Ring::PolyOverField { base, .. }, Elem::UPoly(f), Elem::UPoly(g)) => Elem::UPoly(fpoly::mul(base, f, g)),
            (Ring::MPolyQ { .. }, Elem::MPoly(f), Elem::MPoly(g)) => Elem::MPoly(f.mul(g)),
            (Ring::Product { factors }, Elem::Tuple(a), Elem::Tuple(b)) => {
                Elem::Tuple(factors.iter().zip(a.iter().zip(b)).map(|(r, (x, y))| r.mul(x, y)).collect())
            }
            _ => foreign(),
        }
    }

    fn is_zero(&self, x: &Elem) -> bool {
        match x {
            Elem::Int(a) => a.is_zero(),
            Elem::Rat(a) => a.is_zero(),
            Elem::Fp(a) => *a == 0,
            Elem::Quad(a, b) => a.is_zero() && b.is_zero(),
            Elem::UPoly(f) => f.is_empty(),
            Elem::MPoly(f) => f.is_zero(),
            Elem::Tuple(xs) => match self {
                Ring::Product { factors } => factors.iter().zip(xs).all(|(r, x)| r.is_zero(x)),
                _ => foreign(),
            },
        }
    }

    fn equal(&self, x: &Elem, y: &Elem) -> bool {
        x == y
    }
}
