//! Pulling leaf witnesses `P ∈ ⟨Q⟩` back to the root of a gcd tree, one
//! inverted element at a time along the leftmost branch.

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{CommRing, Elem, IntegralRelation};

use super::frac::{Frac, FracRing};
use super::gcd::{embed, GcdTree, LeafCert, LeafData};
use super::node::NodeRing;

/// How a vanishing product `x·y = 0` with both factors nonzero is handled.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    /// The ring has no zero divisors, so this is a broken precondition.
    Nzd,
    /// Hand the pair back so the caller can split the ring.
    Pf,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Collapse {
    /// `P = Q·H₁` in the parent ring.
    Collapsed(Poly<Frac>),
    /// The branch element is zero in the parent ring.
    BranchElementZero,
}

/// Result of a collapse that may stop at a zero-divisor pair.
#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Outcome {
    Done(Poly<Frac>),
    /// `x·y = 0` in `base[1/∏inverted]`, neither factor zero there.
    Fork { inverted: Vec<Elem>, x: Elem, y: Elem },
}

enum Flow {
    Fork { inverted: Vec<Elem>, x: Elem, y: Elem },
    Fail(Error),
}

impl From<Error> for Flow {
    fn from(e: Error) -> Self {
        Flow::Fail(e)
    }
}

type Step<T> = std::result::Result<T, Flow>;

fn into_result<T>(r: Step<T>) -> Result<T> {
    r.map_err(|f| match f {
        Flow::Fail(e) => e,
        Flow::Fork { .. } => Error::PreconditionViolated("zero divisors in a ring flagged without zero divisors".into()),
    })
}

fn binomial(n: usize, k: usize) -> i64 {
    (0..k).fold(1i64, |acc, i| acc * (n - i) as i64 / (i + 1) as i64)
}

fn embed_rel(rel: &IntegralRelation<Poly<Elem>>) -> Vec<Poly<Frac>> {
    rel.coeffs.iter().map(embed).collect()
}

/// `H` with `P = Q·H` at a leaf. `Q₁⁻¹` comes from expanding
/// `(A·P₁ + B·Q₁)ⁿ = 1` and replacing `P₁ⁿ` by `Q₁·C`.
pub fn leaf_witness(
    node: &NodeRing,
    cert: &LeafCert,
    rel: &IntegralRelation<Poly<Elem>>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
) -> Result<Poly<Frac>> {
    let fr = node.fracs();
    let px = PolyRing::new(fr.clone());
    let n = rel.degree();
    let (p1, q1) = (&cert.p1, &cert.q1);
    let coeffs = embed_rel(rel);
    let mut c = px.zero();
    for (i, ai) in coeffs.iter().enumerate().map(|(i, a)| (i + 1, a)) {
        let t = px.mul(&px.mul(ai, &px.pow(q1, i as u32 - 1)), &px.pow(p1, (n - i) as u32));
        c = px.sub(&c, &t);
    }
    let mut qinv = px.mul(&px.pow(&cert.a, n as u32), &c);
    for i in 1..=n {
        let t = [
            px.pow(&cert.a, (n - i) as u32),
            px.pow(p1, (n - i) as u32),
            px.pow(&cert.b, i as u32),
            px.pow(q1, i as u32 - 1),
        ]
        .iter()
        .fold(px.from_i64(binomial(n, i)), |acc, f| px.mul(&acc, f));
        qinv = px.add(&qinv, &t);
    }
    let h = node.clean(&px.mul(p1, &qinv))?;
    let d = px.sub(&embed(p), &px.mul(&embed(q), &h));
    if !node.poly_is_zero(&d)? {
        return Err(Error::NotNormalWitnessFailure(format!("leaf S{}: P − Q·H ≠ 0", node.path)));
    }
    Ok(h)
}

/// One collapse step over a ring without zero divisors: from
/// `aᴺ·P = Q·H` in `parent`, either `P = Q·H₁` there or `a = 0` there.
pub fn collapse_step(
    parent: &NodeRing,
    a: &Elem,
    n: u32,
    h: &Poly<Frac>,
    rel: &IntegralRelation<Poly<Elem>>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    limits: &Limits,
) -> Result<Collapse> {
    let fr = parent.fracs();
    let px = PolyRing::new(fr.clone());
    let c = Frac::integral(parent.base.pow(a, n));
    let lhs = px.sub(&px.scale(&embed(p), &c), &px.mul(&embed(q), h));
    if !parent.poly_is_zero(&lhs)? {
        return Err(Error::PreconditionViolated("aᴺ·P ≠ Q·H in the parent ring".into()));
    }
    into_result(step(parent, a, n, h, rel, p, q, Mode::Nzd, limits))
}

/// Highest coefficient that is nonzero in `node`, as a base numerator.
fn top_nonzero(node: &NodeRing, f: &Poly<Frac>) -> Result<Option<Elem>> {
    for c in f.coeffs().iter().rev() {
        if !node.is_zero(c)? {
            return Ok(Some(c.num.clone()));
        }
    }
    Ok(None)
}

fn split(mode: Mode, node: &NodeRing, x: Elem, y: Elem, what: &str) -> Flow {
    match mode {
        Mode::Nzd => Flow::Fail(Error::PreconditionViolated(format!(
            "{what}: both factors nonzero in a ring flagged without zero divisors"
        ))),
        Mode::Pf => Flow::Fork { inverted: node.inverted.clone(), x, y },
    }
}

#[allow(clippy::too_many_arguments)]
fn step(
    parent: &NodeRing,
    a: &Elem,
    n: u32,
    h: &Poly<Frac>,
    rel: &IntegralRelation<Poly<Elem>>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    mode: Mode,
    limits: &Limits,
) -> Step<Collapse> {
    if parent.is_trivial()? {
        return Ok(Collapse::Collapsed(Poly::zero()));
    }
    if parent.elem_is_zero(a)? {
        return Ok(Collapse::BranchElementZero);
    }
    let r = &parent.base;
    let fr = parent.fracs();
    let px = PolyRing::new(fr.clone());
    let c = r.pow(a, n);
    let cf = Frac::integral(c.clone());
    let qf = embed(q);

    // M(Y) = Yⁿ + A₁c·Yⁿ⁻¹ + … + Aₙcⁿ, and Qⁿ·M(H) = 0
    let deg = rel.degree();
    let mut m = vec![px.zero(); deg + 1];
    for (i, ai) in embed_rel(rel).iter().enumerate().map(|(i, x)| (i + 1, x)) {
        m[deg - i] = px.scale(ai, &fr.pow(&cf, i as u32));
    }
    m[deg] = px.one();
    let m = PolyRing::new(px.clone()).from_coeffs(m);
    let (_, mh) = PolyRing::new(px.clone()).linear_factor_divmod(&m, h)?;

    let h1 = if parent.poly_is_zero(&qf)? {
        Poly::zero()
    } else {
        if let Some(y) = top_nonzero(parent, &mh)? {
            if !parent.poly_is_zero(&px.mul(&qf, &mh))? {
                return Err(Flow::Fail(Error::PreconditionViolated("Qⁿ·M(H) ≠ 0: relation and witness disagree".into())));
            }
            let x = top_nonzero(parent, &qf)?.expect("Q is nonzero");
            return Err(split(mode, parent, x, y, "Q·M(H) = 0"));
        }
        // every coefficient of H is integral over ⟨c⟩, hence in ⟨c⟩
        let mut v = Vec::with_capacity(h.len());
        for hi in h.coeffs() {
            v.push(parent.divide(hi, &c, limits.max_lift_power).ok_or_else(|| {
                Flow::Fail(Error::NotNormalWitnessFailure(format!(
                    "coefficient {} of H is not divisible by {}",
                    r.show(&hi.num),
                    r.show(&c)
                )))
            })?);
        }
        parent.clean(&px.from_coeffs(v))?
    };

    // c·(P − Q·H₁) = 0
    let d = px.sub(&embed(p), &px.mul(&qf, &h1));
    for dj in d.coeffs() {
        if parent.is_zero(dj)? {
            continue;
        }
        if !parent.is_zero(&fr.mul(&cf, dj))? {
            return Err(Flow::Fail(Error::NotNormalWitnessFailure("c·(P − Q·H₁) ≠ 0".into())));
        }
        return Err(split(mode, parent, c, dj.num.clone(), "c·(P − Q·H₁) = 0"));
    }
    Ok(Collapse::Collapsed(h1))
}

fn leftmost(tree: &GcdTree) -> &GcdTree {
    match tree {
        GcdTree::Branch { left, .. } => leftmost(left),
        t => t,
    }
}

/// Replaces the branch node on the leftmost path that introduced inverted
/// index `j` by its right subtree.
fn graft(tree: &mut GcdTree, j: usize) -> bool {
    match tree {
        GcdTree::Branch { split_index, left, right, .. } => {
            if *split_index == j {
                let r = std::mem::replace(right.as_mut(), GcdTree::Trivial { node: NodeRing::root(crate::ring::Ring::Int) });
                *tree = r;
                true
            } else {
                graft(left, j)
            }
        }
        _ => false,
    }
}

/// `v^e·H` with index `j` of every denominator cleared, as an element over
/// `parent`, where `e` is the largest exponent of `v` in `H`.
fn lift(parent: &FracRing, v: &Elem, j: usize, h: &Poly<Frac>) -> (u32, Poly<Frac>) {
    let r = parent.base();
    let e = h.coeffs().iter().map(|c| c.den_exp(j)).max().unwrap_or(0);
    let cs = h
        .coeffs()
        .iter()
        .map(|c| {
            let num = r.mul(&c.num, &r.pow(v, e - c.den_exp(j)));
            let mut den = c.den.clone();
            den.truncate(j);
            parent.make(num, den)
        })
        .collect();
    (e, PolyRing::new(parent.clone()).from_coeffs(cs))
}

pub(crate) fn collapse_mode(
    tree: &GcdTree,
    rel: &IntegralRelation<Poly<Elem>>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    mode: Mode,
    ctx_len: usize,
    limits: &Limits,
) -> Result<Outcome> {
    // the root's own inverted list may have grown with node units, so the
    // context length comes from the caller
    let mut tree = tree.clone();
    let base = tree.node().base.clone();
    'restart: loop {
        let (leaf, mut h) = match leftmost(&tree) {
            GcdTree::Trivial { node } | GcdTree::Leaf { node, data: LeafData::BothZero } => (node.clone(), Poly::zero()),
            GcdTree::Leaf { node, data: LeafData::Cert(cert) } => (node.clone(), leaf_witness(node, cert, rel, p, q)?),
            GcdTree::Branch { .. } => unreachable!(),
        };
        let inv = leaf.inverted;
        for j in (ctx_len..inv.len()).rev() {
            let parent = NodeRing::localized(base.clone(), inv[..j].to_vec());
            let fr = parent.fracs();
            let px = PolyRing::new(fr.clone());
            let v = &inv[j];
            let (mut e, mut hl) = lift(&fr, v, j, &h);
            let target = px.sub(&px.scale(&embed(p), &Frac::integral(base.pow(v, e))), &px.mul(&embed(q), &hl));
            let mut k = 0;
            while !parent.poly_is_zero(&px.scale(&target, &Frac::integral(base.pow(v, k))))? {
                k += 1;
                if k > limits.max_lift_power {
                    return Err(Error::ResourceLimit("lifting a witness through a localization".into()));
                }
            }
            e += k;
            hl = px.scale(&hl, &Frac::integral(base.pow(v, k)));
            match step(&parent, v, e, &hl, rel, p, q, mode, limits) {
                Ok(Collapse::Collapsed(h1)) => h = h1,
                Ok(Collapse::BranchElementZero) => {
                    if graft(&mut tree, j) {
                        continue 'restart;
                    }
                    return Err(Error::PreconditionViolated(format!("inverted element {} vanishes", base.show(v))));
                }
                Err(Flow::Fail(err)) => return Err(err),
                Err(Flow::Fork { inverted, x, y }) => return Ok(Outcome::Fork { inverted, x, y }),
            }
        }
        return Ok(Outcome::Done(h));
    }
}

/// Collapses a whole gcd tree over a ring without zero divisors: given
/// `P ∈ ⟨Q⟩` at every leaf, returns `H₁` with `P = Q·H₁` over the base
/// ring, with no inverted elements left.
pub fn collapse_tree(
    tree: &GcdTree,
    rel: &IntegralRelation<Poly<Elem>>,
    p: &Poly<Elem>,
    q: &Poly<Elem>,
    limits: &Limits,
) -> Result<Poly<Frac>> {
    match collapse_mode(tree, rel, p, q, Mode::Nzd, 0, limits)? {
        Outcome::Done(h) => Ok(h),
        Outcome::Fork { .. } => unreachable!("nzd mode never forks"),
    }
}
