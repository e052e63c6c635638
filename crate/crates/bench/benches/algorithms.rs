use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use dynnorm_core::etale::{rf_normality_witness, QuotientAlg};
use dynnorm_core::kronecker::kronecker_cert;
use dynnorm_core::normality::{membership_witness_domain, membership_witness_nzd, membership_witness_pf, relation_from_quotient};
use dynnorm_core::poly::PolyRing;
use dynnorm_core::tree::{gcd_tree, NodeRing};
use dynnorm_core::{CommRing, Limits, Ring};

fn gcd_trees(c: &mut Criterion) {
    let r = Ring::mpoly_q(&["a", "b"]).unwrap();
    let pr = PolyRing::new(r.clone());
    let p = pr.parse(&["0", "0", "1"]).unwrap();
    let q = pr.parse(&["b", "a"]).unwrap();
    let lim = Limits::default();
    c.bench_function("gcd_tree X^2, aX+b over Q[a,b]", |b| {
        b.iter(|| gcd_tree(black_box(&p), black_box(&q), NodeRing::root(r.clone()), &lim).unwrap())
    });
}

fn membership(c: &mut Criterion) {
    let z = Ring::Int;
    let pr = PolyRing::new(z.clone());
    let q = pr.parse(&["6", "-4", "2"]).unwrap();
    let h = pr.parse(&["1", "3", "-2", "1"]).unwrap();
    let p = pr.mul(&q, &h);
    let rel = relation_from_quotient(&z, &h, 2);
    let lim = Limits::default();
    let mut g = c.benchmark_group("membership over Z");
    g.bench_function("tree route", |b| b.iter(|| membership_witness_nzd(&z, black_box(&p), &q, &rel, &lim).unwrap()));
    g.bench_function("fraction-field route", |b| b.iter(|| membership_witness_domain(&z, black_box(&p), &q, &rel).unwrap()));
    g.finish();

    let zz = Ring::from_json_str(r#"{"ring":"Product","factors":[{"ring":"Int"},{"ring":"Int"}]}"#).unwrap();
    let pr = PolyRing::new(zz.clone());
    let p = pr.parse(&["0", "0", "(1,0)"]).unwrap();
    let q = pr.parse(&["0", "(1,0)"]).unwrap();
    let rel = relation_from_quotient(&zz, &pr.parse(&["0", "(1,1)"]).unwrap(), 1);
    c.bench_function("membership_witness_pf (1,0)X^2 / (1,0)X", |b| {
        b.iter(|| membership_witness_pf(&zz, black_box(&p), &q, &rel, &lim).unwrap())
    });
}

fn kronecker(c: &mut Criterion) {
    let z = Ring::Int;
    let pr = PolyRing::new(z.clone());
    let g = pr.parse(&["1", "-2", "1"]).unwrap();
    let h = pr.parse(&["3", "0", "1", "1"]).unwrap();
    let f = pr.mul(&g, &h);
    let lim = Limits::default();
    c.bench_function("kronecker_cert deg 2 | deg 5", |b| b.iter(|| kronecker_cert(&z, black_box(&g), &f, &h, &lim).unwrap()));
}

fn etale(c: &mut Criterion) {
    let z = Ring::Int;
    let pr = PolyRing::new(z.clone());
    let f = pr.parse(&["1", "-3", "0", "2", "1"]).unwrap();
    let s = QuotientAlg::new(z.clone(), f.clone()).unwrap();
    let v = pr.parse(&["2", "-1", "0", "5"]).unwrap();
    let mut g = c.benchmark_group("traces deg 4");
    g.bench_function("matrix", |b| b.iter(|| s.trace_matrix(black_box(&v))));
    g.bench_function("splitting tower", |b| b.iter(|| s.trace_split(black_box(&v)).unwrap()));
    g.bench_function("tate formula", |b| b.iter(|| s.tate_formula(black_box(&v))));
    g.finish();

    let f = pr.parse(&["-2", "0", "1"]).unwrap();
    let p = pr.parse(&["2"]).unwrap();
    let q = pr.parse(&["0", "1"]).unwrap();
    let rel = vec![pr.parse(&["0", "-1"]).unwrap()];
    let lim = Limits::default();
    c.bench_function("rf_normality_witness 2/x in Z[√2]", |b| {
        b.iter(|| rf_normality_witness(&z, black_box(&f), &p, &q, &rel, &[], &lim).unwrap())
    });
}

criterion_group!(benches, gcd_trees, membership, kronecker, etale);
criterion_main!(benches);
