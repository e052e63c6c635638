use crate::config::Limits;
use crate::error::{Error, Result};
use crate::poly::{Poly, PolyRing};
use crate::ring::{CommRing, Elem};

use super::frac::{Frac, FracRing};
use super::node::{Class, NodeRing};

/// Bézout data at a leaf: `A·P₁ + B·Q₁ = 1`, `P = G·P₁`, `Q = G·Q₁` in the
/// leaf ring, `G` monic.
#[derive(Clone, Debug, PartialEq)]
pub struct LeafCert {
    pub g: Poly<Frac>,
    pub p1: Poly<Frac>,
    pub q1: Poly<Frac>,
    pub a: Poly<Frac>,
    pub b: Poly<Frac>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LeafData {
    Cert(LeafCert),
    /// `P = Q = 0` in the leaf ring.
    BothZero,
}

#[derive(Clone, Debug, PartialEq)]
pub enum GcdTree {
    Trivial { node: NodeRing },
    Leaf { node: NodeRing, data: LeafData },
    Branch { node: NodeRing, a: Elem, split_index: usize, left: Box<GcdTree>, right: Box<GcdTree> },
}

pub(crate) fn embed(f: &Poly<Elem>) -> Poly<Frac> {
    Poly::from_vec(f.coeffs().iter().map(|c| Frac::integral(c.clone())).collect())
}

fn drop_top(f: &Poly<Frac>, fr: &FracRing) -> Poly<Frac> {
    let mut v = f.coeffs().to_vec();
    v.pop();
    PolyRing::new(fr.clone()).from_coeffs(v)
}

/// `inv·f` with the leading coefficient replaced by an exact one.
fn normalize(f: &Poly<Frac>, inv: &Frac, fr: &FracRing) -> Poly<Frac> {
    let px = PolyRing::new(fr.clone());
    let mut v = px.scale(f, inv).into_coeffs();
    v.resize(f.len(), fr.zero());
    *v.last_mut().expect("nonzero polynomial") = fr.one();
    px.from_coeffs(v)
}

impl LeafCert {
    /// Checks the three identities and monicity in `node`.
    pub fn verify(&self, node: &NodeRing, p: &Poly<Elem>, q: &Poly<Elem>) -> Result<bool> {
        let px = node.polys();
        if !px.is_monic(&self.g) {
            return Ok(false);
        }
        let bez = px.sub(&px.add(&px.mul(&self.a, &self.p1), &px.mul(&self.b, &self.q1)), &px.one());
        let dp = px.sub(&embed(p), &px.mul(&self.g, &self.p1));
        let dq = px.sub(&embed(q), &px.mul(&self.g, &self.q1));
        Ok(node.poly_is_zero(&bez)? && node.poly_is_zero(&dp)? && node.poly_is_zero(&dq)?)
    }
}

#[derive(Clone)]
struct State {
    r0: Poly<Frac>,
    r1: Poly<Frac>,
    s0: Poly<Frac>,
    t0: Poly<Frac>,
    s1: Poly<Frac>,
    t1: Poly<Frac>,
}

enum Trim {
    Done,
    Split(Elem),
}

struct Builder<'a> {
    p: &'a Poly<Elem>,
    q: &'a Poly<Elem>,
    limits: &'a Limits,
    nodes: usize,
}

/// Gcd tree of `P` and `Q` over `root`, by Euclid's algorithm with a
/// branch at every leading coefficient that is neither zero nor a unit.
pub fn gcd_tree(p: &Poly<Elem>, q: &Poly<Elem>, root: NodeRing, limits: &Limits) -> Result<GcdTree> {
    let one = Poly::from_vec(vec![root.fracs().one()]);
    let st = State { r0: embed(p), r1: embed(q), s0: one.clone(), t0: Poly::zero(), s1: Poly::zero(), t1: one };
    let mut b = Builder { p, q, limits, nodes: 1 };
    b.grow(root, st, 0)
}

impl Builder<'_> {
    /// Drops leading coefficients that vanish; stops at a unit.
    fn trim(&self, node: &NodeRing, f: &mut Poly<Frac>) -> Result<Trim> {
        let fr = node.fracs();
        while let Some(lc) = f.lc() {
            match node.classify(lc)? {
                Class::Zero => *f = drop_top(f, &fr),
                Class::Unit => break,
                Class::Unknown => return Ok(Trim::Split(node.branch_element(lc))),
            }
        }
        Ok(Trim::Done)
    }

    fn grow(&mut self, mut node: NodeRing, mut st: State, depth: usize) -> Result<GcdTree> {
        loop {
            if node.is_trivial()? {
                return Ok(GcdTree::Trivial { node });
            }
            let mut split = self.trim(&node, &mut st.r1)?;
            if matches!(split, Trim::Done) && st.r1.is_zero() {
                split = self.trim(&node, &mut st.r0)?;
                if matches!(split, Trim::Done) {
                    let data = if st.r0.is_zero() { LeafData::BothZero } else { LeafData::Cert(self.leaf(&mut node, &st)?) };
                    return Ok(GcdTree::Leaf { node, data });
                }
            }
            if let Trim::Split(a) = split {
                return self.branch(node, a, st, depth);
            }
            self.step(&mut node, &mut st)?;
        }
    }

    fn branch(&mut self, node: NodeRing, a: Elem, st: State, depth: usize) -> Result<GcdTree> {
        self.nodes += 2;
        if self.nodes > self.limits.node_budget {
            return Err(Error::ResourceLimit(format!("gcd tree exceeds {} nodes", self.limits.node_budget)));
        }
        if depth >= self.limits.max_depth {
            return Err(Error::ResourceLimit(format!("gcd tree deeper than {}", self.limits.max_depth)));
        }
        let (l, r) = node.branch(&a)?;
        let split_index = node.inverted.len();
        let left = Box::new(self.grow(l, st.clone(), depth + 1)?);
        let right = Box::new(self.grow(r, st, depth + 1)?);
        Ok(GcdTree::Branch { node, a, split_index, left, right })
    }

    /// One Euclidean division `r₀ = q·r₁ + r₂`; `lc(r₁)` is a unit.
    fn step(&mut self, node: &mut NodeRing, st: &mut State) -> Result<()> {
        let inv = node.inverse(st.r1.lc().expect("nonzero divisor"))?;
        let fr = node.fracs();
        let px = PolyRing::new(fr.clone());
        let m = normalize(&st.r1, &inv, &fr);
        let (q, r2) = px.monic_divmod(&st.r0, &m)?;
        let q = px.scale(&q, &inv);
        let s2 = px.sub(&st.s0, &px.mul(&q, &st.s1));
        let t2 = px.sub(&st.t0, &px.mul(&q, &st.t1));
        st.r0 = std::mem::replace(&mut st.r1, r2);
        st.s0 = std::mem::replace(&mut st.s1, s2);
        st.t0 = std::mem::replace(&mut st.t1, t2);
        Ok(())
    }

    fn leaf(&self, node: &mut NodeRing, st: &State) -> Result<LeafCert> {
        let inv = node.inverse(st.r0.lc().expect("nonzero gcd"))?;
        let fr = node.fracs();
        let px = PolyRing::new(fr.clone());
        let g = node.clean(&normalize(&st.r0, &inv, &fr))?;
        let a = node.clean(&px.scale(&st.s0, &inv))?;
        let mut b = node.clean(&px.scale(&st.t0, &inv))?;
        let (p1, rp) = px.monic_divmod(&embed(self.p), &g)?;
        let (q1, rq) = px.monic_divmod(&embed(self.q), &g)?;
        if !node.poly_is_zero(&rp)? || !node.poly_is_zero(&rq)? {
            return Err(Error::ExactDivisionFailed);
        }
        let (p1, q1) = (node.clean(&p1)?, node.clean(&q1)?);
        if q1.is_zero() {
            b = Poly::zero();
        }
        let cert = LeafCert { g, p1, q1, a, b };
        debug_assert!(cert.verify(node, self.p, self.q)?);
        Ok(cert)
    }
}

impl GcdTree {
    pub fn node(&self) -> &NodeRing {
        match self {
            GcdTree::Trivial { node } | GcdTree::Leaf { node, .. } | GcdTree::Branch { node, .. } => node,
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            GcdTree::Branch { left, right, .. } => 1 + left.node_count() + right.node_count(),
            _ => 1,
        }
    }

    /// All leaves, trivial ones included, in path order.
    pub fn leaves(&self) -> Vec<&GcdTree> {
        match self {
            GcdTree::Branch { left, right, .. } => {
                let mut v = left.leaves();
                v.extend(right.leaves());
                v
            }
            _ => vec![self],
        }
    }

    /// Non-trivial leaves with their data, in path order.
    pub fn live_leaves(&self) -> Vec<(&NodeRing, &LeafData)> {
        self.leaves()
            .into_iter()
            .filter_map(|t| match t {
                GcdTree::Leaf { node, data } => Some((node, data)),
                _ => None,
            })
            .collect()
    }

    /// Graphviz rendering: branch elements on internal nodes, monic gcds on
    /// leaves.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph gcdtree {\n  node [shape=box];\n");
        self.dot_into(&mut out);
        out.push_str("}\n");
        out
    }

    fn dot_into(&self, out: &mut String) {
        let node = self.node();
        let id = format!("\"S{}\"", node.path);
        let r = &node.base;
        let label = match self {
            GcdTree::Trivial { .. } => "trivial".to_string(),
            GcdTree::Leaf { data: LeafData::BothZero, .. } => "P = Q = 0".to_string(),
            GcdTree::Leaf { data: LeafData::Cert(c), .. } => format!("G = {}", show_frac_poly(r, &c.g)),
            GcdTree::Branch { a, .. } => format!("a = {}", r.show(a)),
        };
        out.push_str(&format!("  {id} [label=\"S{}\\n{}\"];\n", node.path, label));
        if let GcdTree::Branch { left, right, .. } = self {
            for (child, tag) in [(left, "invert"), (right, "kill")] {
                out.push_str(&format!("  {id} -> \"S{}\" [label=\"{tag}\"];\n", child.node().path));
                child.dot_into(out);
            }
        }
    }
}

/// `num/den` rendering of a fraction; `den` lists powers of inverted
/// elements as `v0^2*v1`.
pub fn show_frac(r: &crate::ring::Ring, node: &NodeRing, x: &Frac) -> String {
    let n = r.show(&x.num);
    if x.is_integral() {
        return n;
    }
    let den: Vec<String> = x
        .den
        .iter()
        .enumerate()
        .filter(|(_, e)| **e > 0)
        .map(|(i, e)| {
            let v = r.show(&node.inverted[i]);
            let v = if v.contains(['+', '-', '*']) { format!("({v})") } else { v };
            if *e == 1 {
                v
            } else {
                format!("{v}^{e}")
            }
        })
        .collect();
    format!("({n})/({})", den.join("*"))
}

fn show_frac_poly(r: &crate::ring::Ring, f: &Poly<Frac>) -> String {
    // gcds at leaves are usually integral; fall back to a coefficient list
    let integral: Option<Vec<Elem>> = f.coeffs().iter().map(|c| c.is_integral().then(|| c.num.clone())).collect();
    match integral {
        Some(cs) => PolyRing::new(r.clone()).show(&Poly::from_vec(cs)),
        None => format!("{:?}", f.coeffs().iter().map(|c| r.show(&c.num)).collect::<Vec<_>>()),
    }
}
