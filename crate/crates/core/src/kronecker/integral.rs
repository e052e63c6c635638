use std::sync::Arc;

use crate::config::Limits;
use crate::error::{Error, Result};
use crate::grobner::MPoly;
use crate::poly::{Poly, PolyRing};
use crate::ring::{relation_value, CommRing, Elem, IntegralRelation, Ring};

use super::orbit::{orbit_size, universal_relation};

/// `p₁ … p_l` as polynomials in `b₁, …, bₙ` (weight of `bⱼ` is `j`). Every
/// monomial of `pᵢ` has weight `i·subject_weight`.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightedForm {
    pub subject_weight: u32,
    pub p: Arc<Vec<MPoly>>,
    /// The `bⱼ` the form was evaluated at, when `uᵢ = pᵢ(b)`.
    pub point: Option<Vec<Elem>>,
}

/// `subjectˡ + u₁·a·subjectˡ⁻¹ + ⋯ + u_l·aˡ = 0` with `a` the modulus.
#[derive(Clone, Debug, PartialEq)]
pub struct IntegralCert {
    pub subject: Elem,
    pub modulus: Elem,
    pub coeffs: Vec<Elem>,
    pub weighted: Option<WeightedForm>,
}

impl IntegralCert {
    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    pub fn relation(&self) -> IntegralRelation<Elem> {
        IntegralRelation::new(self.coeffs.clone())
    }

    /// Does the relation expand to zero?
    pub fn holds(&self, r: &Ring) -> bool {
        r.is_zero(&relation_value(r, &self.subject, &self.modulus, &self.coeffs))
    }
}

fn check_orbit(n: usize, m: usize, limits: &Limits) -> Result<()> {
    if n > limits.orbit_max_n.min(8) || orbit_size(n, m) > limits.orbit_max_size {
        return Err(Error::OrbitTooLarge { n, m });
    }
    Ok(())
}

/// For monic `f = g·h`, one certificate per non-leading coefficient `a_k`
/// of `g` (coefficient of `X^{m−k}`), integral over `Z[b₁, …, bₙ]`.
pub fn kronecker_cert(r: &Ring, g: &Poly<Elem>, f: &Poly<Elem>, h: &Poly<Elem>, limits: &Limits) -> Result<Vec<IntegralCert>> {
    let pr = PolyRing::new(r.clone());
    if !pr.is_monic(g) || !pr.is_monic(f) {
        return Err(Error::NotMonic);
    }
    if pr.mul(g, h) != *f {
        return Err(Error::PreconditionViolated("f ≠ g·h".into()));
    }
    let m = g.degree().unwrap();
    let n = f.degree().unwrap();
    if m == 0 {
        return Ok(Vec::new());
    }
    check_orbit(n, m, limits)?;
    let b: Vec<Elem> = (1..=n).map(|j| f.coeffs()[n - j].clone()).collect();
    let mut out = Vec::with_capacity(m);
    for k in 1..=m {
        let rel = universal_relation(n, m, k);
        let coeffs = rel.eval(r, &b, |c| r.from_bigint(c));
        let cert = IntegralCert {
            subject: g.coeffs()[m - k].clone(),
            modulus: r.one(),
            coeffs,
            weighted: Some(WeightedForm { subject_weight: k as u32, p: rel.polys(), point: Some(b.clone()) }),
        };
        if !cert.holds(r) {
            return Err(Error::RelationInvalid);
        }
        out.push(cert);
    }
    Ok(out)
}

/// True iff every monomial of `pᵢ` has weight `i·subject_weight`.
pub fn weighted_homogeneity_check(cert: &IntegralCert) -> Result<bool> {
    let w = cert.weighted.as_ref().ok_or(Error::MissingWeightedForm)?;
    Ok(w.p.iter().enumerate().all(|(i, p)| {
        let want = (i as u32 + 1) * w.subject_weight;
        p.terms().all(|(m, _)| m.0.iter().enumerate().map(|(j, &e)| (j as u32 + 1) * e).sum::<u32>() == want)
    }))
}

/// `M(Y) = Yⁿ + Σⱼ Aⱼ·cʲ·Yⁿ⁻ʲ` with coefficients in `R[X]`, descending
/// in `Y`.
fn build_m(pr: &PolyRing<Ring>, c: &Elem, cofactors: &[Poly<Elem>]) -> Vec<Poly<Elem>> {
    let r = &pr.base;
    let mut out = vec![pr.one()];
    for (j, a) in cofactors.iter().enumerate() {
        out.push(pr.scale(a, &r.pow(c, j as u32 + 1)));
    }
    out
}

fn check_root(pr: &PolyRing<Ring>, h: &Poly<Elem>, c: &Elem, cofactors: &[Poly<Elem>]) -> Result<()> {
    let m = build_m(pr, c, cofactors);
    let val = m.iter().fold(pr.zero(), |acc, coef| pr.add(&pr.mul(&acc, h), coef));
    if !pr.is_zero(&val) {
        return Err(Error::PreconditionViolated("M(H) ≠ 0".into()));
    }
    Ok(())
}

/// `H1` with `H = c·H1`, given `M(H) = 0` for `M(Y) = Yⁿ + Σ Aⱼcʲ·Yⁿ⁻ʲ`.
/// Each coefficient of `H` is integral over `⟨c⟩`, so over a normal ring the
/// division is exact.
pub fn ideal_integral_divide(r: &Ring, h: &Poly<Elem>, c: &Elem, cofactors: &[Poly<Elem>]) -> Result<Poly<Elem>> {
    let pr = PolyRing::new(r.clone());
    check_root(&pr, h, c, cofactors)?;
    let mut out = Vec::with_capacity(h.len());
    for x in h.coeffs() {
        let q = r.divide(x, c).ok_or_else(|| {
            Error::NotNormalWitnessFailure(format!("{} is integral over ⟨{}⟩ but not divisible", r.show(x), r.show(c)))
        })?;
        out.push(q);
    }
    Ok(pr.from_coeffs(out))
}

/// Certificate mode: an explicit relation `h_dˡ + Σ vᵢ·cⁱ·h_dˡ⁻ⁱ = 0` for
/// every coefficient `h_d` of `H`.
///
/// With `Y := X^N`, `g = X^N − λH` divides `f = λⁿM(X^N/λ)` over `R[λ]`; the
/// orbit relation of a coefficient of `g` is read off at `λˡ`.
pub fn ideal_integral_certs(r: &Ring, h: &Poly<Elem>, c: &Elem, cofactors: &[Poly<Elem>], limits: &Limits) -> Result<Vec<IntegralCert>> {
    let pr = PolyRing::new(r.clone());
    check_root(&pr, h, c, cofactors)?;
    let n = cofactors.len();
    if h.is_zero() {
        return Ok(Vec::new());
    }
    let deg_h = h.degree().unwrap();
    let mut big_n = deg_h + 1;
    for (j, a) in cofactors.iter().enumerate() {
        if let Some(d) = a.degree() {
            big_n = big_n.max(d / (j + 1) + 1);
        }
    }
    let total = n * big_n;
    // coefficients of f as polynomials in λ, without the c-powers
    let lam = PolyRing::new(r.clone());
    let mut b: Vec<Poly<Elem>> = vec![lam.zero(); total + 1];
    for (j0, a) in cofactors.iter().enumerate() {
        let j = j0 + 1;
        for (d, coef) in a.coeffs().iter().enumerate() {
            let w = j * big_n - d;
            b[w] = lam.add(&b[w], &lam.monomial(coef.clone(), j));
        }
    }
    let b = b.split_off(1);
    let mut out = Vec::with_capacity(deg_h + 1);
    for d in 0..=deg_h {
        let k = big_n - d;
        check_orbit(total, big_n, limits)?;
        let rel = universal_relation(total, big_n, k);
        let vals = rel.eval(&lam, &b, |x| lam.constant(r.from_bigint(x)));
        let coeffs: Vec<Elem> = vals
            .iter()
            .enumerate()
            .map(|(i0, v)| {
                let u = v.coeff(i0 + 1).cloned().unwrap_or_else(|| r.zero());
                if (i0 + 1) % 2 == 1 {
                    r.neg(&u)
                } else {
                    u
                }
            })
            .collect();
        let cert = IntegralCert {
            subject: h.coeff(d).cloned().unwrap_or_else(|| r.zero()),
            modulus: c.clone(),
            coeffs,
            weighted: Some(WeightedForm { subject_weight: k as u32, p: rel.polys(), point: None }),
        };
        if !cert.holds(r) {
            return Err(Error::RelationInvalid);
        }
        out.push(cert);
    }
    Ok(out)
}

/// Certificate mode of [`ideal_integral_divide`]: every coefficient is
/// divided through the normality witness of its relation.
pub fn ideal_integral_divide_certified(
    r: &Ring,
    h: &Poly<Elem>,
    c: &Elem,
    cofactors: &[Poly<Elem>],
    limits: &Limits,
) -> Result<(Poly<Elem>, Vec<IntegralCert>)> {
    let certs = ideal_integral_certs(r, h, c, cofactors, limits)?;
    let mut out = Vec::with_capacity(certs.len());
    for cert in &certs {
        out.push(r.normality_witness(&cert.subject, c, &cert.relation())?);
    }
    Ok((PolyRing::new(r.clone()).from_coeffs(out), certs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn zpoly(c: &[i64]) -> Poly<Elem> {
        PolyRing::new(Ring::Int).from_coeffs(c.iter().map(|&x| Ring::Int.from_i64(x)).collect())
    }

    fn z(n: i64) -> Elem {
        Ring::Int.from_i64(n)
    }

    #[test]
    fn root_of_quadratic() {
        let certs = kronecker_cert(&Ring::Int, &zpoly(&[-3, 1]), &zpoly(&[6, -5, 1]), &zpoly(&[-2, 1]), &Limits::default()).unwrap();
        assert_eq!(certs.len(), 1);
        let c = &certs[0];
        assert_eq!(c.subject, z(-3));
        assert_eq!(c.coeffs, vec![z(5), z(6)]);
        let p = &c.weighted.as_ref().unwrap().p;
        assert_eq!(p[0], MPoly::var(2, 0).neg());
        assert_eq!(p[1], MPoly::var(2, 1));
        assert!(weighted_homogeneity_check(c).unwrap());
        let mut bad = c.clone();
        let w = bad.weighted.as_mut().unwrap();
        w.p = Arc::new(vec![MPoly::var(2, 1), MPoly::var(2, 1)]);
        assert!(!weighted_homogeneity_check(&bad).unwrap());
        bad.weighted = None;
        assert_eq!(weighted_homogeneity_check(&bad), Err(Error::MissingWeightedForm));
    }

    #[test]
    fn trivial_cases() {
        let l = Limits::default();
        let f = zpoly(&[6, -5, 1]);
        assert!(kronecker_cert(&Ring::Int, &zpoly(&[1]), &f, &f, &l).unwrap().is_empty());
        let certs = kronecker_cert(&Ring::Int, &f, &f, &zpoly(&[1]), &l).unwrap();
        assert_eq!(certs.len(), 2);
        assert!(certs.iter().all(|c| c.holds(&Ring::Int) && c.degree() == 1));
        assert_eq!(kronecker_cert(&Ring::Int, &zpoly(&[-3, 1]), &f, &zpoly(&[-3, 1]), &l).unwrap_err(), Error::PreconditionViolated("f ≠ g·h".into()));
        let empty = IntegralCert { subject: z(0), modulus: z(1), coeffs: vec![], weighted: Some(WeightedForm { subject_weight: 1, p: Arc::new(vec![]), point: None }) };
        assert!(weighted_homogeneity_check(&empty).unwrap());
    }

    #[test]
    fn orbit_bound() {
        let l = Limits { orbit_max_size: 5, ..Limits::default() };
        let g = zpoly(&[1, 0, 1]);
        let f = PolyRing::new(Ring::Int).mul(&g, &g);
        assert_eq!(kronecker_cert(&Ring::Int, &g, &f, &g, &l).unwrap_err(), Error::OrbitTooLarge { n: 4, m: 2 });
    }

    #[test]
    fn divide_by_c() {
        // H = 2X + 4, c = 2, M = Y² − H², A₂ = −(X + 2)²
        let h = zpoly(&[4, 2]);
        let a = vec![zpoly(&[0]), zpoly(&[-4, -4, -1])];
        assert_eq!(ideal_integral_divide(&Ring::Int, &h, &z(2), &a).unwrap(), zpoly(&[2, 1]));
        let (h1, certs) = ideal_integral_divide_certified(&Ring::Int, &h, &z(2), &a, &Limits::default()).unwrap();
        assert_eq!(h1, zpoly(&[2, 1]));
        assert_eq!(certs.len(), 2);
        for c in &certs {
            assert!(c.holds(&Ring::Int));
            assert!(weighted_homogeneity_check(c).unwrap());
        }
        // c = 1 and H = 0
        let m1 = vec![zpoly(&[-4, -2])];
        assert_eq!(ideal_integral_divide(&Ring::Int, &h, &z(1), &m1).unwrap(), h);
        assert!(ideal_integral_divide(&Ring::Int, &zpoly(&[]), &z(3), &[zpoly(&[])]).unwrap().is_zero());
        assert!(matches!(ideal_integral_divide(&Ring::Int, &h, &z(2), &m1), Err(Error::PreconditionViolated(_))));
    }

    #[test]
    fn non_normal_backend_fails() {
        // Z[√−3] is not normal: ω' = (1 + √−3)/2 is missing; H = 1 + ω, c = 2,
        // H² − 2H + 4 = 0 so M = Y² − 2Y + 4 with A₁ = −1, A₂ = 1.
        let r = Ring::QuadInt { d: -3 };
        let pr = PolyRing::new(r.clone());
        let h = pr.constant(r.parse_elem("1 + w").unwrap());
        let a = vec![pr.constant(r.from_i64(-1)), pr.constant(r.from_i64(1))];
        assert!(matches!(ideal_integral_divide(&r, &h, &r.from_i64(2), &a), Err(Error::NotNormalWitnessFailure(_))));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn certificates_for_products(
            g in proptest::collection::vec(-9i64..=9, 1..=3),
            h in proptest::collection::vec(-9i64..=9, 0..=2),
        ) {
            let mut g = g; g.push(1);
            let mut h = h; h.push(1);
            let (g, h) = (zpoly(&g), zpoly(&h));
            let f = PolyRing::new(Ring::Int).mul(&g, &h);
            let certs = kronecker_cert(&Ring::Int, &g, &f, &h, &Limits::default()).unwrap();
            prop_assert_eq!(certs.len(), g.degree().unwrap());
            for c in &certs {
                prop_assert!(c.holds(&Ring::Int));
                prop_assert!(weighted_homogeneity_check(c).unwrap());
            }
        }

        #[test]
        fn scaling_coherence(g in proptest::collection::vec(-5i64..=5, 1..=2), h in proptest::collection::vec(-5i64..=5, 1..=2), t in 2i64..=4) {
            let mut g = g; g.push(1);
            let mut h = h; h.push(1);
            let (g, h) = (zpoly(&g), zpoly(&h));
            let pr = PolyRing::new(Ring::Int);
            let f = pr.mul(&g, &h);
            // p(X) ↦ t^deg·p(X/t)
            let scale = |p: &Poly<Elem>| {
                let d = p.degree().unwrap();
                pr.from_coeffs(p.coeffs().iter().enumerate().map(|(i, c)| Ring::Int.mul(c, &z(t.pow((d - i) as u32)))).collect())
            };
            let l = Limits::default();
            let a = kronecker_cert(&Ring::Int, &g, &f, &h, &l).unwrap();
            let b = kronecker_cert(&Ring::Int, &scale(&g), &scale(&f), &scale(&h), &l).unwrap();
            for (k, (ca, cb)) in a.iter().zip(&b).enumerate() {
                for (i, (u, v)) in ca.coeffs.iter().zip(&cb.coeffs).enumerate() {
                    let w = ((i + 1) * (k + 1)) as u32;
                    prop_assert_eq!(Ring::Int.mul(u, &Ring::Int.pow(&z(t), w)), v.clone());
                }
            }
        }

        #[test]
        fn certificate_mode_is_homogeneous(h in proptest::collection::vec(-4i64..=4, 1..=2), c in 1i64..=3) {
            // H = c·H0, M = (Y − H)(Y + H) = Y² − c²H0²
            let pr = PolyRing::new(Ring::Int);
            let h0 = zpoly(&h);
            prop_assume!(!h0.is_zero());
            let hh = pr.scale(&h0, &z(c));
            let a = vec![pr.zero(), pr.neg(&pr.mul(&h0, &h0))];
            let (h1, certs) = ideal_integral_divide_certified(&Ring::Int, &hh, &z(c), &a, &Limits::default()).unwrap();
            prop_assert_eq!(h1, h0);
            for cert in &certs {
                prop_assert!(weighted_homogeneity_check(cert).unwrap());
            }
        }
    }
}
