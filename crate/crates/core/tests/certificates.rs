use dynnorm_core::cert::{leaf_certificates, tate_formula_certificate, tate_lemma_certificate, Certificate, Kind};
use dynnorm_core::etale::{rf_decompose, rf_normality_witness, QuotientAlg};
use dynnorm_core::kronecker::kronecker_cert;
use dynnorm_core::normality::{membership_witness_nzd, membership_witness_pf, relation_from_quotient};
use dynnorm_core::poly::{Poly, PolyRing};
use dynnorm_core::tree::{gcd_tree, NodeRing};
use dynnorm_core::verify::verify;
use dynnorm_core::{CommRing, Elem, Limits, Ring};
use serde_json::Value;

fn poly(r: &Ring, cs: &[&str]) -> Poly<Elem> {
    PolyRing::new(r.clone()).parse(cs).unwrap()
}

fn round_trip(c: &Certificate) -> Certificate {
    Certificate::from_json_str(&c.to_json_string()).unwrap()
}

fn passes(c: &Certificate) -> bool {
    let report = verify(&round_trip(c)).unwrap();
    if !report.passed() {
        eprintln!("{report}");
    }
    report.passed()
}

fn bump_first(v: &mut Value, r: &Ring) {
    let arr = v.as_array_mut().unwrap();
    let x = r.elem_from_json(&arr[0]).unwrap();
    arr[0] = r.elem_to_json(&r.add(&x, &r.one()));
}

#[test]
fn paper_tree_leaves_verify() {
    let r = Ring::mpoly_q(&["a", "b"]).unwrap();
    let (p, q) = (poly(&r, &["0", "0", "1"]), poly(&r, &["b", "a"]));
    let tree = gcd_tree(&p, &q, NodeRing::root(r.clone()), &Limits::default()).unwrap();
    let certs = leaf_certificates(&r, &tree, &p, &q);
    assert_eq!(certs.len(), 4);
    for c in &certs {
        assert_eq!(c.kind, Kind::LeafCert);
        assert!(passes(c));
        let mut bad = c.clone();
        let arr = bad.payload["p1"].as_array_mut().unwrap();
        let x = r.elem_from_json(&arr[0]["num"]).unwrap();
        arr[0]["num"] = r.elem_to_json(&r.add(&x, &r.one()));
        let rep = verify(&bad).unwrap();
        assert!(!rep.passed());
        assert!(rep.failures().any(|f| f.identity == "P = G·P₁"));
    }
}

#[test]
fn tampered_membership_names_identity() {
    let z = Ring::Int;
    let (q, h) = (poly(&z, &["1", "2"]), poly(&z, &["3", "0", "1"]));
    let p = PolyRing::new(z.clone()).mul(&q, &h);
    let rel = relation_from_quotient(&z, &h, 2);
    let w = membership_witness_nzd(&z, &p, &q, &rel, &Limits::default()).unwrap();
    let c = Certificate::membership(&z, &p, &q, &rel.coeffs, &w);
    assert!(passes(&c));
    let mut bad = c.clone();
    bump_first(&mut bad.payload["h1"], &z);
    let rep = verify(&bad).unwrap();
    assert_eq!(rep.failures().map(|f| f.identity.as_str()).collect::<Vec<_>>(), vec!["P = Q·H₁"]);
}

#[test]
fn comaximal_dropped_term_fails_sum() {
    let r = Ring::product(vec![Ring::Int, Ring::Int]).unwrap();
    let p = poly(&r, &["(0,0)", "(0,0)", "(1,0)"]);
    let q = poly(&r, &["(0,0)", "(1,0)"]);
    let rel = relation_from_quotient(&r, &poly(&r, &["(0,0)", "(1,0)"]), 1);
    let (w, cc) = membership_witness_pf(&r, &p, &q, &rel, &Limits::default()).unwrap();
    assert!(passes(&Certificate::membership(&r, &p, &q, &rel.coeffs, &w)));
    let c = Certificate::comaximal(&r, &p, &q, &cc);
    assert!(passes(&c));
    if cc.elements.len() > 1 {
        let mut bad = c.clone();
        for k in ["elements", "coeffs", "locals"] {
            bad.payload[k].as_array_mut().unwrap().pop();
        }
        let rep = verify(&bad).unwrap();
        assert!(rep.failures().any(|f| f.identity == "Σ cᵢ·uᵢᴺ = 1"));
    }
}

#[test]
fn kronecker_and_etale_certificates() {
    let z = Ring::Int;
    let pr = PolyRing::new(z.clone());
    let (g, h) = (poly(&z, &["2", "-1", "1"]), poly(&z, &["-3", "1"]));
    let f = pr.mul(&g, &h);
    for c in kronecker_cert(&z, &g, &f, &h, &Limits::default()).unwrap() {
        let cert = Certificate::integral(&z, &c);
        assert!(passes(&cert));
        let mut bad = cert.clone();
        let last = bad.payload["coeffs"].as_array_mut().unwrap().last_mut().unwrap();
        *last = z.elem_to_json(&z.add(&z.elem_from_json(last).unwrap(), &z.one()));
        assert!(!verify(&bad).unwrap().passed());
    }

    let s = QuotientAlg::new(z.clone(), poly(&z, &["-2", "0", "1"])).unwrap();
    assert!(passes(&tate_formula_certificate(&s, &s.x())));
    let (v, two) = (poly(&z, &["2"]), z.from_i64(2));
    let rel = [poly(&z, &["-1"])];
    let w = s.tate_lemma_witness(&v, &two, &rel).unwrap();
    let c = tate_lemma_certificate(&s, &v, &two, &rel, &w);
    assert!(passes(&c));
    let mut bad = c.clone();
    bump_first(&mut bad.payload["w"], &z);
    assert!(verify(&bad).unwrap().failures().any(|f| f.identity == "Σ tᵢ·xⁱ = a·w"));

    let f = poly(&z, &["6", "-5", "1"]);
    let d = rf_decompose(&z, &f, &poly(&z, &["-2", "1"]), &poly(&z, &["-3", "1"])).unwrap();
    assert!(passes(&Certificate::decomposition(&z, &d)));
    let (p, q) = (poly(&z, &["-4", "2"]), poly(&z, &["-2", "1"]));
    let rel = [poly(&z, &["-2"])];
    let wit = rf_normality_witness(&z, &f, &p, &q, &rel, &[], &Limits::default()).unwrap();
    let c = Certificate::rf(&z, &f, &p, &q, &rel, &[], &wit);
    assert!(passes(&c));
    let mut bad = c.clone();
    bad.payload["w"] = pr.to_json(&pr.add(&wit.w, &pr.one()));
    assert!(!verify(&bad).unwrap().passed());
}

#[test]
fn parse_errors_are_errors() {
    assert!(Certificate::from_json_str("{}").is_err());
    let c = Certificate { kind: Kind::MembershipWitness, ring_spec: serde_json::json!({"ring": "Int"}), payload: serde_json::json!({"p": ["1"]}) };
    assert!(verify(&c).is_err());
    let c = Certificate { kind: Kind::MembershipWitness, ring_spec: serde_json::json!({"ring": "QuadInt", "d": 5}), payload: Value::Null };
    assert!(verify(&c).is_err());
}
