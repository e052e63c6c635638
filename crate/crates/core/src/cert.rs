//! Certificate files: `{kind, ring_spec, payload}` with elements written in
//! the backend's own syntax.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::etale::{Decomposition, EtaleElement, RfWitness};
use crate::kronecker::IntegralCert;
use crate::normality::{ComaximalCert, MembershipWitness};
use crate::poly::{Poly, PolyRing};
use crate::ring::{CommRing, Elem, Ring};
use crate::tree::{Frac, GcdTree, LeafCert, LeafData, NodeRing};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Kind {
    LeafCert,
    IntegralCert,
    MembershipWitness,
    ComaximalCert,
    TateWitness,
    RfWitness,
    Decomposition,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Certificate {
    pub kind: Kind,
    pub ring_spec: Value,
    pub payload: Value,
}

impl Certificate {
    pub fn ring(&self) -> Result<Ring> {
        Ring::from_json_value(&self.ring_spec)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::parse(format!("certificate: {e}")))
    }

    fn new(kind: Kind, r: &Ring, payload: Value) -> Self {
        Certificate { kind, ring_spec: r.to_json_value(), payload }
    }

    pub fn leaf(r: &Ring, node: &NodeRing, p: &Poly<Elem>, q: &Poly<Elem>, c: &LeafCert) -> Self {
        let pr = PolyRing::new(r.clone());
        let el = |xs: &[Elem]| Value::Array(xs.iter().map(|x| r.elem_to_json(x)).collect());
        let fp = |f: &Poly<Frac>| Value::Array(f.coeffs().iter().map(|c| json!({"num": r.elem_to_json(&c.num), "den": c.den})).collect());
        let payload = json!({
            "p": pr.to_json(p), "q": pr.to_json(q),
            "node": {"inverted": el(&node.inverted), "radical_gens": el(&node.radical_gens), "path": node.path},
            "g": fp(&c.g), "p1": fp(&c.p1), "q1": fp(&c.q1), "a": fp(&c.a), "b": fp(&c.b),
        });
        Self::new(Kind::LeafCert, r, payload)
    }

    pub fn integral(r: &Ring, c: &IntegralCert) -> Self {
        let mut payload = json!({
            "subject": r.elem_to_json(&c.subject),
            "modulus": r.elem_to_json(&c.modulus),
            "coeffs": c.coeffs.iter().map(|x| r.elem_to_json(x)).collect::<Vec<_>>(),
        });
        if let Some(w) = &c.weighted {
            let p: Vec<Value> = w
                .p
                .iter()
                .map(|m| {
                    Value::Array(
                        m.terms()
                            .map(|(e, c)| json!([e.0, c.to_string()]))
                            .collect(),
                    )
                })
                .collect();
            payload["weighted"] = json!({
                "subject_weight": w.subject_weight,
                "p": p,
                "point": w.point.as_ref().map(|b| b.iter().map(|x| r.elem_to_json(x)).collect::<Vec<_>>()),
            });
        }
        Self::new(Kind::IntegralCert, r, payload)
    }

    pub fn membership(r: &Ring, p: &Poly<Elem>, q: &Poly<Elem>, rel: &[Poly<Elem>], w: &MembershipWitness) -> Self {
        let pr = PolyRing::new(r.clone());
        let mut payload = json!({
            "p": pr.to_json(p), "q": pr.to_json(q),
            "rel": rel.iter().map(|a| pr.to_json(a)).collect::<Vec<_>>(),
            "h1": pr.to_json(&w.h1),
        });
        if let Some((u, n)) = &w.denominators {
            payload["denominators"] = json!({"u": r.elem_to_json(u), "n": n});
        }
        Self::new(Kind::MembershipWitness, r, payload)
    }

    pub fn comaximal(r: &Ring, p: &Poly<Elem>, q: &Poly<Elem>, c: &ComaximalCert) -> Self {
        let pr = PolyRing::new(r.clone());
        let payload = json!({
            "p": pr.to_json(p), "q": pr.to_json(q),
            "elements": c.elements.iter().map(|x| r.elem_to_json(x)).collect::<Vec<_>>(),
            "exponent": c.exponent,
            "coeffs": c.coeffs.iter().map(|x| r.elem_to_json(x)).collect::<Vec<_>>(),
            "locals": c.locals.iter().map(|h| pr.to_json(h)).collect::<Vec<_>>(),
        });
        Self::new(Kind::ComaximalCert, r, payload)
    }

    /// `f′(x)·v = Σ tᵢxⁱ` with `tᵢ = tr(gᵢ(x)v)`, and `Σ tᵢxⁱ = a·w`; `rel`
    /// (possibly empty) makes `v` integral over `⟨a⟩`.
    #[allow(clippy::too_many_arguments)]
    pub fn tate(r: &Ring, f: &Poly<Elem>, v: &Poly<Elem>, traces: &[Elem], a: &Elem, w: &Poly<Elem>, rel: &[Poly<Elem>]) -> Self {
        let pr = PolyRing::new(r.clone());
        let payload = json!({
            "f": pr.to_json(f), "v": pr.to_json(v),
            "traces": traces.iter().map(|x| r.elem_to_json(x)).collect::<Vec<_>>(),
            "a": r.elem_to_json(a), "w": pr.to_json(w),
            "rel": rel.iter().map(|u| pr.to_json(u)).collect::<Vec<_>>(),
        });
        Self::new(Kind::TateWitness, r, payload)
    }

    #[allow(clippy::too_many_arguments)]
    pub fn rf(r: &Ring, f: &Poly<Elem>, p: &Poly<Elem>, q: &Poly<Elem>, rel: &[Poly<Elem>], extra: &[Poly<Elem>], w: &RfWitness) -> Self {
        let pr = PolyRing::new(r.clone());
        let ps = |xs: &[Poly<Elem>]| xs.iter().map(|u| pr.to_json(u)).collect::<Vec<_>>();
        let payload = json!({
            "f": pr.to_json(f), "p": pr.to_json(p), "q": pr.to_json(q),
            "rel": ps(rel), "extra": ps(extra),
            "w": pr.to_json(&w.w), "n": w.fprime_exp, "d": w.extra_exp,
        });
        Self::new(Kind::RfWitness, r, payload)
    }

    pub fn decomposition(r: &Ring, d: &Decomposition) -> Self {
        let pr = PolyRing::new(r.clone());
        let et = |e: &EtaleElement<Elem>| json!({"num": pr.to_json(&e.num), "exp": e.fprime_exp});
        let payload = json!({
            "f": pr.to_json(&d.f), "g": pr.to_json(&d.g), "f1": pr.to_json(&d.f1),
            "e1": et(&d.e1), "e2": et(&d.e2), "trivial": d.trivial,
        });
        Self::new(Kind::Decomposition, r, payload)
    }
}

/// One certificate per leaf that carries Bézout data, in path order.
pub fn leaf_certificates(r: &Ring, tree: &GcdTree, p: &Poly<Elem>, q: &Poly<Elem>) -> Vec<Certificate> {
    tree.leaves()
        .into_iter()
        .filter_map(|l| match l {
            GcdTree::Leaf { node, data: LeafData::Cert(c) } => Some(Certificate::leaf(r, node, p, q, c)),
            _ => None,
        })
        .collect()
}

/// Tree dump: nested nodes with their paths, branch elements and leaf
/// certificates.
pub fn tree_json(r: &Ring, tree: &GcdTree, p: &Poly<Elem>, q: &Poly<Elem>) -> Value {
    let path = &tree.node().path;
    match tree {
        GcdTree::Trivial { .. } => json!({"path": path, "type": "trivial"}),
        GcdTree::Leaf { data: LeafData::BothZero, .. } => json!({"path": path, "type": "both_zero"}),
        GcdTree::Leaf { node, data: LeafData::Cert(c) } => {
            json!({"path": path, "type": "leaf", "certificate": Certificate::leaf(r, node, p, q, c)})
        }
        GcdTree::Branch { a, left, right, .. } => json!({
            "path": path, "type": "branch", "a": r.elem_to_json(a),
            "left": tree_json(r, left, p, q), "right": tree_json(r, right, p, q),
        }),
    }
}

/// The Tate identity for `v` with `a = 1`: `w = f′(x)·v`.
pub fn tate_formula_certificate(s: &crate::etale::QuotientAlg<Ring>, v: &Poly<Elem>) -> Certificate {
    let r = s.base();
    let (_, rhs) = s.tate_formula(v);
    Certificate::tate(r, s.modulus(), v, &s.coords(&rhs), &r.one(), &rhs, &[])
}

/// Lemma `Tate` output as a certificate.
pub fn tate_lemma_certificate(s: &crate::etale::QuotientAlg<Ring>, v: &Poly<Elem>, a: &Elem, rel: &[Poly<Elem>], w: &Poly<Elem>) -> Certificate {
    let (_, rhs) = s.tate_formula(v);
    Certificate::tate(s.base(), s.modulus(), v, &s.coords(&rhs), a, w, rel)
}
