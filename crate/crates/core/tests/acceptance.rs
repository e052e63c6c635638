//! One pass/fail line per acceptance criterion. Runs as a plain binary so
//! the lines are always printed.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use dynnorm_core::cert::{leaf_certificates, tate_formula_certificate, Certificate, Kind};
use dynnorm_core::etale::{rf_decompose, rf_normality_witness, EtaleElement, GenericTraces, QuotientAlg};
use dynnorm_core::kronecker::{kronecker_cert, weighted_homogeneity_check};
use dynnorm_core::normality::{
    localized_normality_witness, localized_zero_factor, membership_witness_domain, membership_witness_nzd, membership_witness_pf,
    relation_from_quotient,
};
use dynnorm_core::poly::{Poly, PolyRing};
use dynnorm_core::ring::SmallInt;
use dynnorm_core::tree::{gcd_tree, GcdTree, LeafData, NodeRing};
use dynnorm_core::verify::verify;
use dynnorm_core::{CommRing, Elem, Error, IntegralRelation, Limits, Ring};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

type Outcome = Result<String, String>;

struct Pool(Vec<Certificate>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(t: Instant, limit: Duration) -> Result<(), String> {
    ensure(t.elapsed() < limit, || format!("took {:?}, limit {limit:?}", t.elapsed()))
}

fn err(e: Error) -> String {
    e.to_string()
}

fn small_poly(r: &Ring, rng: &mut ChaCha8Rng, deg: usize, elem: &dyn Fn(&mut ChaCha8Rng) -> Elem) -> Poly<Elem> {
    PolyRing::new(r.clone()).from_coeffs((0..=deg).map(|_| elem(rng)).collect())
}

/// Random polynomial of exact degree `deg`.
fn poly_of_degree(r: &Ring, rng: &mut ChaCha8Rng, deg: usize, elem: &dyn Fn(&mut ChaCha8Rng) -> Elem) -> Poly<Elem> {
    loop {
        let p = small_poly(r, rng, deg, elem);
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

fn int_poly(cs: &[i64]) -> Poly<Elem> {
    PolyRing::new(Ring::Int).from_coeffs(cs.iter().map(|&c| Ring::Int.from_i64(c)).collect())
}

fn criterion1(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let r = Ring::mpoly_q(&["a", "b"]).map_err(err)?;
    let pr = PolyRing::new(r.clone());
    let p = pr.parse(&["0", "0", "1"]).map_err(err)?;
    let q = pr.parse(&["b", "a"]).map_err(err)?;
    let tree = gcd_tree(&p, &q, NodeRing::root(r.clone()), &Limits::default()).map_err(err)?;
    let mut seen = Vec::new();
    for leaf in tree.leaves() {
        match leaf {
            GcdTree::Leaf { node, data: LeafData::Cert(c) } => {
                ensure(c.verify(node, &p, &q).map_err(err)?, || format!("leaf {} does not verify", node.path))?;
                seen.push((node.path.clone(), c.g.degree().unwrap()));
            }
            GcdTree::Leaf { node, .. } => return Err(format!("leaf {} has no Bézout data", node.path)),
            GcdTree::Trivial { .. } => {}
            GcdTree::Branch { .. } => unreachable!(),
        }
    }
    let want: Vec<(String, usize)> = [("00", 0), ("01", 1), ("10", 0), ("11", 2)].iter().map(|(s, d)| (s.to_string(), *d)).collect();
    ensure(seen == want, || format!("leaves {seen:?}, expected {want:?}"))?;
    pool.0.extend(leaf_certificates(&r, &tree, &p, &q));
    within(t, Duration::from_secs(5))?;
    Ok("gcds 1, X, 1, X² on S00, S01, S10, S11; all four leaves verify".into())
}

fn criterion2(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let z = Ring::Int;
    let pr = PolyRing::new(z.clone());
    let lim = Limits::default();
    let mut certs = 0;
    let mut done = 0;
    while done < 100 {
        let n = rng.gen_range(2..=6);
        let m = rng.gen_range(1..n);
        let monic = |rng: &mut ChaCha8Rng, d: usize| {
            let mut cs: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
            cs.push(1);
            int_poly(&cs)
        };
        let (g, h) = (monic(&mut rng, m), monic(&mut rng, n - m));
        let f = pr.mul(&g, &h);
        if f.coeffs().iter().any(|c| c.as_i64().is_none_or(|v| v.abs() > 9)) {
            continue;
        }
        for c in kronecker_cert(&z, &g, &f, &h, &lim).map_err(err)? {
            ensure(c.holds(&z), || format!("relation for {} fails", z.show(&c.subject)))?;
            ensure(weighted_homogeneity_check(&c).map_err(err)?, || "weighted homogeneity fails".into())?;
            pool.0.push(Certificate::integral(&z, &c));
            certs += 1;
        }
        done += 1;
    }
    within(t, Duration::from_secs(60))?;
    Ok(format!("100 factorizations, {certs} certificates, all relations and weights check"))
}

struct Instance {
    r: Ring,
    p: Poly<Elem>,
    q: Poly<Elem>,
    h: Poly<Elem>,
    rel: IntegralRelation<Poly<Elem>>,
}

fn domain_instances() -> Result<Vec<Instance>, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let quad = Ring::quad_int(-5).map_err(err)?;
    let qt = Ring::poly_over(Ring::Rat, "t").map_err(err)?;
    let w = quad.generator("w").unwrap();
    let t = qt.generator("t").unwrap();
    let mut out = Vec::new();
    for r in [Ring::Int, quad.clone(), qt.clone()] {
        let elem: Box<dyn Fn(&mut ChaCha8Rng) -> Elem> = match &r {
            Ring::Int => Box::new(|rng: &mut ChaCha8Rng| Ring::Int.from_i64(rng.gen_range(-5..=5))),
            Ring::QuadInt { .. } => {
                let (quad, w) = (quad.clone(), w.clone());
                Box::new(move |rng: &mut ChaCha8Rng| {
                    let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-2..=2));
                    quad.add(&quad.from_i64(a), &quad.mul(&quad.from_i64(b), &w))
                })
            }
            _ => {
                let (qt, t) = (qt.clone(), t.clone());
                Box::new(move |rng: &mut ChaCha8Rng| {
                    let (a, b) = (rng.gen_range(-3..=3), rng.gen_range(-2..=2));
                    let c = if rng.gen_bool(0.3) { qt.pow(&t, 2) } else { qt.zero() };
                    qt.add(&qt.add(&qt.from_i64(a), &qt.mul(&qt.from_i64(b), &t)), &c)
                })
            }
        };
        let pr = PolyRing::new(r.clone());
        for _ in 0..200 {
            let (dq, dh) = (rng.gen_range(0..=4), rng.gen_range(0..=4));
            let q = poly_of_degree(&r, &mut rng, dq, &*elem);
            let h = small_poly(&r, &mut rng, dh, &*elem);
            let k = rng.gen_range(1..=2);
            out.push(Instance { p: pr.mul(&q, &h), rel: relation_from_quotient(&r, &h, k), r: r.clone(), q, h });
        }
    }
    Ok(out)
}

fn criterion3(inst: &[Instance], pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let lim = Limits::default();
    for (i, x) in inst.iter().enumerate() {
        let pr = PolyRing::new(x.r.clone());
        let w = membership_witness_nzd(&x.r, &x.p, &x.q, &x.rel, &lim).map_err(|e| format!("instance {i} over {}: {e}", x.r.name()))?;
        ensure(pr.mul(&x.q, &w.h1) == x.p, || format!("instance {i}: P ≠ Q·H1"))?;
        ensure(w.h1 == x.h, || format!("instance {i}: H1 ≠ H"))?;
        pool.0.push(Certificate::membership(&x.r, &x.p, &x.q, &x.rel.coeffs, &w));
    }
    within(t, Duration::from_secs(120))?;
    Ok(format!("{} instances over Z, Z[√-5], Q[t]; H1 = H every time ({:.1?})", inst.len(), t.elapsed()))
}

fn criterion4(inst: &[Instance], pool: &mut Pool) -> Outcome {
    let lim = Limits::default();
    let mut bad = 0;
    for x in inst {
        let a = membership_witness_nzd(&x.r, &x.p, &x.q, &x.rel, &lim).map_err(err)?;
        let b = membership_witness_domain(&x.r, &x.p, &x.q, &x.rel).map_err(err)?;
        if a.h1 != b.h1 {
            bad += 1;
        }
        pool.0.push(Certificate::membership(&x.r, &x.p, &x.q, &x.rel.coeffs, &b));
    }
    ensure(bad == 0, || format!("{bad} discrepancies"))?;
    Ok(format!("{} instances, 0 discrepancies between the tree and fraction-field routes", inst.len()))
}

fn product_elem(r: &Ring, parts: &[i64]) -> Elem {
    let s: Vec<String> = parts.iter().map(i64::to_string).collect();
    r.parse_elem(&format!("({})", s.join(","))).expect("tuple syntax")
}

fn criterion5(pool: &mut Pool) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let lim = Limits::default();
    let mut run = |r: &Ring, p: &Poly<Elem>, q: &Poly<Elem>, rel: &IntegralRelation<Poly<Elem>>| -> Result<usize, String> {
        let pr = PolyRing::new(r.clone());
        let (w, cc) = membership_witness_pf(r, p, q, rel, &lim).map_err(err)?;
        let sum = cc.elements.iter().zip(&cc.coeffs).fold(r.zero(), |acc, (u, c)| r.add(&acc, &r.mul(c, &r.pow(u, cc.exponent))));
        ensure(r.is_one(&sum), || "Σ cᵢuᵢᴺ ≠ 1".into())?;
        ensure(pr.mul(q, &w.h1) == *p, || "P ≠ Q·H1".into())?;
        pool.0.push(Certificate::membership(r, p, q, &rel.coeffs, &w));
        pool.0.push(Certificate::comaximal(r, p, q, &cc));
        Ok(cc.elements.len())
    };
    let z2 = Ring::product(vec![Ring::Int, Ring::Int]).map_err(err)?;
    let pr2 = PolyRing::new(z2.clone());
    let p = pr2.from_coeffs(vec![product_elem(&z2, &[0, 0]), product_elem(&z2, &[0, 0]), product_elem(&z2, &[1, 0])]);
    let q = pr2.from_coeffs(vec![product_elem(&z2, &[0, 0]), product_elem(&z2, &[1, 0])]);
    run(&z2, &p, &q, &relation_from_quotient(&z2, &pr2.x(), 1))?;
    let mut split = 0;
    for i in 0..100 {
        let k = if i < 50 { 2 } else { 3 };
        let r = Ring::product(vec![Ring::Int; k]).map_err(err)?;
        let pr = PolyRing::new(r.clone());
        let (dq, dh) = (rng.gen_range(0..=2), rng.gen_range(0..=2));
        let mut qs = vec![vec![0i64; k]; dq + 1];
        let mut hs = vec![vec![0i64; k]; dh + 1];
        for c in 0..k {
            // some components of Q vanish entirely
            let zero_q = rng.gen_bool(0.25);
            for row in qs.iter_mut() {
                row[c] = if zero_q { 0 } else { rng.gen_range(-4..=4) };
            }
            for row in hs.iter_mut() {
                row[c] = rng.gen_range(-4..=4);
            }
        }
        let q = pr.from_coeffs(qs.iter().map(|row| product_elem(&r, row)).collect());
        if q.is_zero() {
            continue;
        }
        let h = pr.from_coeffs(hs.iter().map(|row| product_elem(&r, row)).collect());
        let p = pr.mul(&q, &h);
        let rel = relation_from_quotient(&r, &h, rng.gen_range(1..=2));
        if run(&r, &p, &q, &rel).map_err(|e| format!("instance {i}: {e}"))? > 1 {
            split += 1;
        }
    }
    Ok(format!("worked (1,0)X² / (1,0)X instance and 100 product-ring instances verify; {split} needed a comaximal split"))
}

fn criterion6(pool: &mut Pool) -> Outcome {
    let t = Instant::now();
    let z = Ring::Int;
    let s = QuotientAlg::new(z.clone(), int_poly(&[-2, 0, 1])).map_err(err)?;
    let x = s.x();
    ensure(s.trace_matrix(&x) == z.zero() && s.trace_split(&x).map_err(err)? == z.zero(), || "tr(x) ≠ 0".into())?;
    let (l, r) = s.tate_formula(&x);
    ensure(l == r && l == int_poly(&[4]), || format!("Tate sides {} and {}", s.show(&l), s.show(&r)))?;
    pool.0.push(tate_formula_certificate(&s, &x));

    let pr = PolyRing::new(SmallInt);
    let mut count = 0u64;
    for n in 1..=5usize {
        let gt = GenericTraces::new(n).map_err(err)?;
        for idx in 0..19usize.pow(n as u32) {
            let mut cs = Vec::with_capacity(n + 1);
            let mut k = idx;
            for _ in 0..n {
                cs.push((k % 19) as i128 - 9);
                k /= 19;
            }
            cs.push(1);
            let f = pr.from_coeffs(cs);
            let s = QuotientAlg::new(SmallInt, f.clone()).map_err(err)?;
            let form = s.trace_form();
            ensure(gt.at(&f) == form, || format!("trace mismatch at {:?}", f.coeffs()))?;
            let data = s.tate_data();
            for j in 0..n {
                let (l, r) = s.tate_formula_with(&form, &data, &s.basis(j));
                ensure(l == r, || format!("Tate fails at {:?}, v = x^{j}", f.coeffs()))?;
            }
            count += 1;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..200 {
        let n = rng.gen_range(1..=5);
        let mut cs: Vec<i64> = (0..n).map(|_| rng.gen_range(-9..=9)).collect();
        cs.push(1);
        let s = QuotientAlg::new(z.clone(), int_poly(&cs)).map_err(err)?;
        let v = s.reduce(&int_poly(&(0..n).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>()));
        ensure(s.trace_matrix(&v) == s.trace_split(&v).map_err(err)?, || format!("trace mismatch at {cs:?}"))?;
        let (l, r) = s.tate_formula(&v);
        ensure(l == r, || format!("Tate fails at {cs:?}"))?;
        pool.0.push(tate_formula_certificate(&s, &v));
    }
    Ok(format!("{count} polynomials exhaustively plus 200 random (f, v); X²−2: tr(x) = 0, sides 4 ({:.1?})", t.elapsed()))
}

fn criterion7(pool: &mut Pool) -> Outcome {
    let z = Ring::Int;
    let lim = Limits::default();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let fs: [&[i64]; 4] = [&[-2, 0, 1], &[1, 0, 1], &[6, -5, 1], &[-2, 0, 0, 1]];
    let mut total = 0;
    let mut compared = 0;
    for fc in fs {
        let f = int_poly(fc);
        let s = QuotientAlg::new(z.clone(), f.clone()).map_err(err)?;
        let n = s.degree();
        let mut made = 0;
        while made < 50 {
            let q = s.reduce(&int_poly(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>()));
            if q.is_zero() {
                continue;
            }
            let w = s.reduce(&int_poly(&(0..n).map(|_| rng.gen_range(-5..=5)).collect::<Vec<_>>()));
            let p = s.mul(&q, &w);
            let rel = vec![s.neg(&w)];
            let wit = rf_normality_witness(&z, &f, &p, &q, &rel, &[], &lim).map_err(|e| format!("{fc:?}: {e}"))?;
            ensure(wit.verify(&z, &f, &p, &q, &[]).map_err(err)?, || format!("{fc:?}: identity fails"))?;
            pool.0.push(Certificate::rf(&z, &f, &p, &q, &rel, &[], &wit));
            if fc == [6, -5, 1] {
                let dec = rf_decompose(&z, &f, &int_poly(&[-2, 1]), &int_poly(&[-3, 1])).map_err(err)?;
                if made == 0 {
                    pool.0.push(Certificate::decomposition(&z, &dec));
                }
                let img = EtaleElement::new(wit.w.clone(), wit.fprime_exp);
                for (first, root) in [(true, 2i64), (false, 3)] {
                    let proj = if first { dec.project_first(&z, &img) } else { dec.project_second(&z, &img) }.map_err(err)?;
                    let rt = z.from_i64(root);
                    let ev = |h: &Poly<Elem>| PolyRing::new(z.clone()).eval(h, &rt);
                    let (p0, q0) = (ev(&p), ev(&q));
                    if z.is_zero(&q0) {
                        continue;
                    }
                    let base = z.normality_witness(&p0, &q0, &IntegralRelation::new(vec![ev(&s.neg(&w))])).map_err(err)?;
                    // the projection is num / (h′·c)(root)^exp with h′·c = ±1 here
                    let unit = ev(&PolyRing::new(z.clone()).mul(&PolyRing::new(z.clone()).derivative(&proj.modulus), &proj.cofactor));
                    let lhs = ev(&proj.num);
                    ensure(lhs == z.mul(&base, &z.pow(&unit, proj.exp)), || format!("component at {root} disagrees with base division"))?;
                    compared += 1;
                }
            }
            made += 1;
            total += 1;
        }
    }
    Ok(format!("{total} witnesses verify; {compared} split-case components agree with base-ring division"))
}

/// Adds `δ` to one coefficient of a polynomial field (or of the `num` of a
/// fraction coefficient).
fn bump_poly(r: &Ring, field: &mut Value, rng: &mut ChaCha8Rng, fraction: bool) {
    let delta = r.from_i64(if rng.gen_bool(0.5) { rng.gen_range(1..=3) } else { -rng.gen_range(1..=3) });
    let arr = field.as_array_mut().expect("array field");
    if arr.is_empty() {
        arr.push(if fraction { serde_json::json!({"num": r.elem_to_json(&delta), "den": []}) } else { r.elem_to_json(&delta) });
        return;
    }
    let i = rng.gen_range(0..arr.len());
    let slot = if fraction { &mut arr[i]["num"] } else { &mut arr[i] };
    let x = r.elem_from_json(slot).expect("element");
    *slot = r.elem_to_json(&r.add(&x, &delta));
}

/// One random perturbation of a field that enters a checked identity.
fn mutate(c: &Certificate, rng: &mut ChaCha8Rng) -> Certificate {
    let r = c.ring().expect("ring spec");
    let mut m = c.clone();
    let pl = &mut m.payload;
    match c.kind {
        Kind::LeafCert => {
            let k = ["g", "p1"][rng.gen_range(0..2)];
            bump_poly(&r, &mut pl[k], rng, true);
        }
        Kind::IntegralCert => {
            let coeffs = pl["coeffs"].as_array_mut().unwrap();
            let last = coeffs.len() - 1;
            let x = r.elem_from_json(&coeffs[last]).unwrap();
            coeffs[last] = r.elem_to_json(&r.add(&x, &r.from_i64(rng.gen_range(1..=5))));
        }
        Kind::MembershipWitness => bump_poly(&r, &mut pl["h1"], rng, false),
        Kind::ComaximalCert => {
            let mut v = pl["coeffs"].clone();
            bump_poly(&r, &mut v, rng, false);
            pl["coeffs"] = v;
        }
        Kind::TateWitness | Kind::RfWitness => bump_poly(&r, &mut pl["w"], rng, false),
        Kind::Decomposition => {
            let k = ["e1", "e2"][rng.gen_range(0..2)];
            bump_poly(&r, &mut pl[k]["num"], rng, false);
        }
    }
    m
}

fn criterion8(pool: &Pool) -> Outcome {
    for (i, c) in pool.0.iter().enumerate() {
        let back = Certificate::from_json_str(&c.to_json_string()).map_err(err)?;
        let rep = verify(&back).map_err(|e| format!("certificate {i}: {e}"))?;
        ensure(rep.passed(), || format!("certificate {i} fails:\n{rep}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let kinds: Vec<Kind> = {
        let mut k: Vec<Kind> = pool.0.iter().map(|c| c.kind).collect();
        k.dedup();
        k
    };
    for i in 0..100 {
        // cycle through the kinds so each one is mutated
        let kind = kinds[i % kinds.len()];
        let same: Vec<&Certificate> = pool.0.iter().filter(|c| c.kind == kind).collect();
        let c = same[rng.gen_range(0..same.len())];
        let bad = mutate(c, &mut rng);
        if let Ok(rep) = verify(&bad) {
            ensure(!rep.passed(), || format!("mutation {i} of a {kind:?} still verifies"))?;
        }
    }
    Ok(format!("{} certificates verify after a JSON round trip; 100 mutations all rejected", pool.0.len()))
}

fn property(name: &str, strategy: impl Strategy<Value = Result<(), TestCaseError>>) -> Result<(), String> {
    let mut runner = TestRunner::new(Config { cases: 100, failure_persistence: None, ..Config::default() });
    runner.run(&strategy, |res| res).map_err(|e| format!("{name}: {e}"))
}

fn small_ring(i: usize) -> Ring {
    match i {
        0 => Ring::Int,
        1 => Ring::quad_int(-5).unwrap(),
        2 => Ring::poly_over(Ring::Rat, "t").unwrap(),
        _ => Ring::product(vec![Ring::Int, Ring::Int]).unwrap(),
    }
}

fn ring_elem(r: &Ring, a: i64, b: i64) -> Elem {
    match r {
        Ring::Int => r.from_i64(a),
        Ring::Product { .. } => product_elem(r, &[a, b]),
        _ => {
            let g = r.generator(&r.generator_names()[0]).unwrap();
            r.add(&r.from_i64(a), &r.mul(&r.from_i64(b), &g))
        }
    }
}

fn criterion9() -> Outcome {
    property(
        "reduced",
        (0usize..4, -3i64..=3, -3i64..=3, 1usize..=3, proptest::collection::vec(-3i64..=3, 3)).prop_map(|(ri, a, b, n, us)| {
            let r = small_ring(ri);
            let x = ring_elem(&r, a, b);
            let rel = IntegralRelation::new(us[..n].iter().map(|&u| r.from_i64(u)).collect());
            match r.normality_witness(&x, &r.zero(), &rel) {
                Ok(_) => prop_assert!(r.is_zero(&x)),
                Err(Error::RelationInvalid) => prop_assert!(!r.is_zero(&x)),
                Err(e) => return Err(TestCaseError::fail(e.to_string())),
            }
            Ok(())
        }),
    )?;
    property(
        "local",
        (2usize..=3, proptest::collection::vec((-5i64..=5, any::<bool>()), 3)).prop_map(|(k, parts)| {
            let r = Ring::product(vec![Ring::Int; k]).unwrap();
            let a: Vec<i64> = parts[..k].iter().map(|&(v, left)| if left { v } else { 0 }).collect();
            let b: Vec<i64> = parts[..k].iter().map(|&(v, left)| if left { 0 } else { v + 1 }).collect();
            let (a, b) = (product_elem(&r, &a), product_elem(&r, &b));
            let u = r.pf_split(&a, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(r.is_zero(&r.mul(&u, &a)));
            prop_assert!(r.is_zero(&r.mul(&r.sub(&r.one(), &u), &b)));
            Ok(())
        }),
    )?;
    property(
        "without",
        (0usize..3, -3i64..=3, -3i64..=3, -3i64..=3, 0u32..=2, any::<bool>()).prop_map(|(ri, a, v, w, p, kill_v)| {
            let r = small_ring(ri);
            let a = ring_elem(&r, a, 1);
            let (v, w) = if kill_v { (r.zero(), ring_elem(&r, v, w)) } else { (ring_elem(&r, v, w), r.zero()) };
            let ap = r.pow(&a, p);
            let first = localized_zero_factor(&r, &a, &v, &w, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            let killed = if first { &v } else { &w };
            prop_assert!(r.is_zero(&r.mul(&ap, killed)));
            Ok(())
        }),
    )?;
    property(
        "locnormal",
        (0usize..4, (-3i64..=3, -3i64..=3), (-3i64..=3, -3i64..=3), (-3i64..=3, -3i64..=3), 0u32..=2, 1u32..=2).prop_map(|(ri, a, b, h, p, k)| {
            let r = small_ring(ri);
            let (a, b, h) = (ring_elem(&r, a.0, a.1), ring_elem(&r, b.0, b.1), ring_elem(&r, h.0, h.1));
            // c = b·h satisfies (Y − b·h)ᵏ with uᵢ = C(k,i)(−h)ⁱ
            let c = r.mul(&b, &h);
            let nh = r.neg(&h);
            let u: Vec<Elem> = (1..=k).map(|i| r.mul(&r.from_i64(if k == 2 && i == 1 { 2 } else { 1 }), &r.pow(&nh, i))).collect();
            let (n, q) = localized_normality_witness(&r, &a, &b, &c, &u, p).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert!(r.equal(&r.mul(&r.pow(&a, n), &c), &r.mul(&b, &q)));
            Ok(())
        }),
    )?;
    Ok("reduced, local, without, locnormal: 100 cases each, no failures".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let mut pool = Pool(Vec::new());
    let mut results: Vec<(usize, &str, Outcome)> = Vec::new();
    results.push((1, "paper gcd tree over Q[a,b]", criterion1(&mut pool)));
    results.push((2, "Kronecker certificates", criterion2(&mut pool)));
    let inst = domain_instances();
    match &inst {
        Ok(inst) => {
            results.push((3, "membership witnesses, tree route", criterion3(inst, &mut pool)));
            results.push((4, "tree route = fraction-field route", criterion4(inst, &mut pool)));
        }
        Err(e) => {
            results.push((3, "membership witnesses, tree route", Err(e.clone())));
            results.push((4, "tree route = fraction-field route", Err(e.clone())));
        }
    }
    results.push((5, "pf path over product rings", criterion5(&mut pool)));
    results.push((6, "traces and Tate's formula", criterion6(&mut pool)));
    results.push((7, "R{f} normality witnesses", criterion7(&mut pool)));
    results.push((8, "independent verifier", criterion8(&pool)));
    results.push((9, "lemma property suites", criterion9()));
    let mut failed = 0;
    for (n, name, res) in &results {
        match res {
            Ok(detail) => println!("criterion {n} PASS  {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n} FAIL  {name}: {why}");
            }
        }
    }
    println!("{} of {} criteria pass ({:.1?})", results.len() - failed, results.len(), start.elapsed());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
