//! Witnesses `P = Q·H` in `R[X]` from an integral relation
//! `Pⁿ + A₁QPⁿ⁻¹ + ⋯ + AₙQⁿ = 0`, over normal rings.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::kronecker::ideal_integral_divide;
use crate::poly::{Poly, PolyRing};
use crate::ring::{Capabilities, CommRing, Elem, IntegralRelation, Ring};
use crate::tree::{collapse_mode, collapse_tree, gcd_tree, Frac, Mode, NodeRing, Outcome};

/// `H1` with `P = Q·H1`, or `uᴺ·P = Q·H1` when `denominators` is set.
#[derive(Clone, Debug, PartialEq)]
pub struct MembershipWitness {
    pub h1: Poly<Elem>,
    pub denominators: Option<(Elem, u32)>,
}

/// `Σ cᵢ·uᵢᴺ = 1` and `uᵢᴺ·P = Q·Hᵢ` for every `i`.
#[derive(Clone, Debug, PartialEq)]
pub struct ComaximalCert {
    pub elements: Vec<Elem>,
    pub exponent: u32,
    pub coeffs: Vec<Elem>,
    pub locals: Vec<Poly<Elem>>,
}

/// Expands `Pⁿ + Σ Aᵢ·Qⁱ·Pⁿ⁻ⁱ` and tests it for zero. The empty relation
/// never holds.
pub fn verify_integral_relation(r: &Ring, p: &Poly<Elem>, q: &Poly<Elem>, rel: &IntegralRelation<Poly<Elem>>) -> bool {
    if rel.coeffs.is_empty() {
        return false;
    }
    let pr = PolyRing::new(r.clone());
    pr.is_zero(&crate::ring::relation_value(&pr, p, q, &rel.coeffs))
}

/// The relation of `(P − Q·H)ᵏ` for `P = Q·H`: `Aᵢ = C(k, i)·(−H)ⁱ`.
pub fn relation_from_quotient(r: &Ring, h: &Poly<Elem>, k: u32) -> IntegralRelation<Poly<Elem>> {
    let pr = PolyRing::new(r.clone());
    let neg = pr.neg(h);
    let mut binom = 1i64;
    let coeffs = (1..=k)
        .map(|i| {
            binom = binom * (k - i + 1) as i64 / i as i64;
            pr.scale(&pr.pow(&neg, i), &r.from_i64(binom))
        })
        .collect();
    IntegralRelation::new(coeffs)
}

fn check_inputs(r: &Ring, p: &Poly<Elem>, q: &Poly<Elem>, rel: &IntegralRelation<Poly<Elem>>) -> Result<()> {
    let ok = p.coeffs().iter().chain(q.coeffs()).chain(rel.coeffs.iter().flat_map(|a| a.coeffs())).all(|c| r.contains(c));
    if !ok {
        return Err(Error::MixedBackends);
    }
    if !verify_integral_relation(r, p, q, rel) {
        return Err(Error::RelationInvalid);
    }
    Ok(())
}

fn integral(h: &Poly<Frac>) -> Result<Poly<Elem>> {
    if h.coeffs().iter().any(|c| !c.is_integral()) {
        return Err(Error::PreconditionViolated("witness over the root still has denominators".into()));
    }
    Ok(Poly::from_vec(h.coeffs().iter().map(|c| c.num.clone()).collect()))
}

/// Tree path: `gcd_tree(P, Q)`, leaf witnesses, collapse to the root.
pub fn membership_witness_nzd(
    r: &Ring,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    rel: &IntegralRelation<Poly<Elem>>,
    limits: &Limits,
) -> Result<MembershipWitness> {
    r.require(Capabilities::NORMAL | Capabilities::WITHOUT_ZERO_DIVISORS, "membership_witness_nzd")?;
    check_inputs(r, p, q, rel)?;
    let tree = gcd_tree(p, q, NodeRing::root(r.clone()), limits)?;
    let h = integral(&collapse_tree(&tree, rel, p, q, limits)?)?;
    let pr = PolyRing::new(r.clone());
    if pr.sub(p, &pr.mul(q, &h)) != pr.zero() {
        return Err(Error::NotNormalWitnessFailure("collapsed witness does not satisfy P = Q·H".into()));
    }
    Ok(MembershipWitness { h1: h, denominators: None })
}

/// Some `k ≤ limit` with `w^k·x = 0`.
fn annihilating_power(r: &Ring, w: &Elem, x: &Elem, limit: u32) -> Result<u32> {
    let mut cur = x.clone();
    for k in 0..=limit {
        if r.is_zero(&cur) {
            return Ok(k);
        }
        cur = r.mul(&cur, w);
    }
    Err(Error::ResourceLimit("no power of the inverted product kills the pair".into()))
}

/// `H` over `R[1/∏ctx]` made integral: `(v^N, G)` with `v^N·P = Q·G` in
/// `R[X]`, `v = ∏ctx`.
fn clear_local(
    r: &Ring,
    ctx: &[Elem],
    h: &Poly<Frac>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    limits: &Limits,
) -> Result<(u32, Poly<Elem>)> {
    let pr = PolyRing::new(r.clone());
    let v = r.product(ctx);
    let e = h.coeffs().iter().flat_map(|c| c.den.iter().copied()).max().unwrap_or(0);
    let fr = NodeRing::localized(r.clone(), ctx.to_vec()).fracs();
    let g: Vec<Elem> = h
        .coeffs()
        .iter()
        .map(|c| {
            let extra: Vec<u32> = (0..ctx.len()).map(|i| e - c.den_exp(i)).collect();
            r.mul(&c.num, &fr.den_value(&extra))
        })
        .collect();
    let g = pr.from_coeffs(g);
    // vᵏ·(vᵉP − QG) = 0 in R[X]
    let diff = pr.sub(&pr.scale(p, &r.pow(&v, e)), &pr.mul(q, &g));
    let mut k = 0;
    let mut cur = diff;
    while !pr.is_zero(&cur) {
        k += 1;
        if k > limits.max_lift_power {
            return Err(Error::ResourceLimit("clearing a local witness".into()));
        }
        cur = pr.scale(&cur, &v);
    }
    Ok((e + k, pr.scale(&g, &r.pow(&v, k))))
}

/// General path for normal pf-rings: each undecidable `x·y = 0` splits the
/// current ring `R[1/v]` into `R[1/vu]` and `R[1/v(1−u)]`; the local
/// witnesses are glued with comaximal coefficients.
pub fn membership_witness_pf(
    r: &Ring,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    rel: &IntegralRelation<Poly<Elem>>,
    limits: &Limits,
) -> Result<(MembershipWitness, ComaximalCert)> {
    r.require(Capabilities::NORMAL | Capabilities::PF, "membership_witness_pf")?;
    check_inputs(r, p, q, rel)?;
    let mut pending: Vec<Vec<Elem>> = vec![Vec::new()];
    let mut done: Vec<(Vec<Elem>, Poly<Frac>)> = Vec::new();
    while let Some(ctx) = pending.pop() {
        if r.is_trivial(&ctx, &[])? {
            continue;
        }
        if ctx.len() > limits.max_depth {
            return Err(Error::ResourceLimit("pf splitting depth".into()));
        }
        let tree = gcd_tree(p, q, NodeRing::localized(r.clone(), ctx.clone()), limits)?;
        match collapse_mode(&tree, rel, p, q, Mode::Pf, ctx.len(), limits)? {
            Outcome::Done(h) => done.push((ctx, h)),
            Outcome::Fork { inverted, x, y } => {
                let w = r.product(&inverted);
                let k = annihilating_power(r, &w, &r.mul(&x, &y), limits.max_lift_power)?;
                let u = r.pf_split(&r.mul(&r.pow(&w, k), &x), &y)?;
                let mut left = ctx.clone();
                left.push(r.sub(&r.one(), &u));
                let mut right = ctx;
                right.push(u);
                // popped in split order: the u-branch first
                pending.push(left);
                pending.push(right);
            }
        }
    }
    if done.is_empty() {
        return Err(Error::PreconditionViolated("every branch of the split is trivial; R = 0".into()));
    }
    let mut locals = Vec::with_capacity(done.len());
    for (ctx, h) in &done {
        locals.push(clear_local(r, ctx, h, p, q, limits)?);
    }
    let n = locals.iter().map(|(e, _)| *e).max().unwrap();
    let pr = PolyRing::new(r.clone());
    let elements: Vec<Elem> = done.iter().map(|(ctx, _)| r.product(ctx)).collect();
    let locals: Vec<Poly<Elem>> = locals
        .into_iter()
        .zip(&elements)
        .map(|((e, g), v)| pr.scale(&g, &r.pow(v, n - e)))
        .collect();
    let powers: Vec<Elem> = elements.iter().map(|v| r.pow(v, n)).collect();
    let coeffs = if powers.len() == 1 && r.is_one(&powers[0]) {
        vec![r.one()]
    } else {
        r.comaximal_coefficients(&powers)?
    };
    let h1 = coeffs.iter().zip(&locals).fold(pr.zero(), |acc, (c, h)| pr.add(&acc, &pr.scale(h, c)));
    if pr.sub(p, &pr.mul(q, &h1)) != pr.zero() {
        return Err(Error::NotComaximal);
    }
    let cert = ComaximalCert { elements, exponent: n, coeffs, locals };
    Ok((MembershipWitness { h1, denominators: None }, cert))
}

/// Fraction-field path for normal domains: `c·P = H·Q` by pseudo-division,
/// then `H = c·H1` since `Hⁿ + Σ Aᵢcⁱ·Hⁿ⁻ⁱ = 0`.
pub fn membership_witness_domain(
    r: &Ring,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    rel: &IntegralRelation<Poly<Elem>>,
) -> Result<MembershipWitness> {
    r.require(Capabilities::DOMAIN | Capabilities::NORMAL, "membership_witness_domain")?;
    check_inputs(r, p, q, rel)?;
    let pr = PolyRing::new(r.clone());
    if q.is_zero() {
        // Pⁿ = 0 in a domain
        return Ok(MembershipWitness { h1: pr.zero(), denominators: None });
    }
    let (e, h, rem) = pr.pseudo_divmod(p, q);
    if !rem.is_zero() {
        return Err(Error::NotNormalWitnessFailure("Q does not divide P over the fraction field".into()));
    }
    let c = r.pow(q.lc().unwrap(), e);
    let h1 = ideal_integral_divide(r, &h, &c, &rel.coeffs)?;
    Ok(MembershipWitness { h1, denominators: None })
}

/// Lemma for `R[1/a]`: from `aᵖ·(cⁿ + Σ uᵢbⁱcⁿ⁻ⁱ) = 0` in `R`, returns
/// `(N, q)` with `aᴺ·c = b·q`.
pub fn localized_normality_witness(r: &Ring, a: &Elem, b: &Elem, c: &Elem, u: &[Elem], p: u32) -> Result<(u32, Elem)> {
    let ap = r.pow(a, p);
    let coeffs: Vec<Elem> = u.iter().enumerate().map(|(i, ui)| r.mul(ui, &r.pow(&ap, i as u32 + 1))).collect();
    let q = r.normality_witness(&r.mul(&ap, c), b, &IntegralRelation::new(coeffs))?;
    Ok((p, q))
}

/// Lemma for `R[1/a]` over a ring without zero divisors: from `aᵖ·v·w = 0`,
/// decides which factor vanishes in `R[1/a]` (`true` for `v`).
pub fn localized_zero_factor(r: &Ring, a: &Elem, v: &Elem, w: &Elem, p: u32) -> Result<bool> {
    r.require(Capabilities::WITHOUT_ZERO_DIVISORS, "localized_zero_factor")?;
    let ap = r.pow(a, p);
    if !r.is_zero(&r.mul(&ap, &r.mul(v, w))) {
        return Err(Error::PreconditionViolated("aᵖ·v·w ≠ 0".into()));
    }
    if r.is_zero(&r.mul(&ap, v)) {
        Ok(true)
    } else if r.is_zero(&r.mul(&ap, w)) {
        Ok(false)
    } else {
        Err(Error::PreconditionViolated("a ring without zero divisors has a zero divisor pair".into()))
    }
}
