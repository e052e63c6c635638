//! `S = R[X]/⟨f⟩` for monic `f`, its trace maps, Tate's formula, and the
//! étale localization `R{f} = S[1/f′(x)]`.

mod rf;

pub use rf::{
    crucial_factor, rf_decompose, rf_normality_witness, Crucial, Decomposition, EtaleElement, Projected, RfWitness,
};

use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::grobner::{MPoly, MPolys};
use crate::kronecker::SplittingTower;
use crate::poly::{Poly, PolyRing};
use crate::ring::{relation_value, CommRing, Elem, Ring};

/// `R[X]/⟨f⟩`; elements are polynomials of degree `< n`.
#[derive(Clone, Debug, PartialEq)]
pub struct QuotientAlg<R: CommRing> {
    base: R,
    f: Poly<R::Elem>,
}

/// `gᵢ(Y)` with `f(X) − f(Y) = (X − Y)·Σᵢ gᵢ(Y)·Xⁱ`.
#[derive(Clone, Debug, PartialEq)]
pub struct TateData<E> {
    pub g: Vec<Poly<E>>,
}

impl<R: CommRing + Clone> QuotientAlg<R> {
    pub fn new(base: R, f: Poly<R::Elem>) -> Result<Self> {
        match f.lc() {
            Some(c) if base.is_one(c) => Ok(QuotientAlg { base, f }),
            _ => Err(Error::NotMonic),
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<R::Elem> {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().unwrap()
    }

    pub fn polys(&self) -> PolyRing<R> {
        PolyRing::new(self.base.clone())
    }

    /// Canonical representative of `h mod f`.
    pub fn reduce(&self, h: &Poly<R::Elem>) -> Poly<R::Elem> {
        let n = self.degree();
        if h.len() <= n {
            return h.clone();
        }
        let r = &self.base;
        let mut c = h.coeffs().to_vec();
        for top in (n..c.len()).rev() {
            let lead = std::mem::replace(&mut c[top], r.zero());
            if r.is_zero(&lead) {
                continue;
            }
            for (i, fi) in self.f.coeffs()[..n].iter().enumerate() {
                let j = top - n + i;
                c[j] = r.sub(&c[j], &r.mul(&lead, fi));
            }
        }
        c.truncate(n);
        self.polys().from_coeffs(c)
    }

    /// The class `x` of `X`.
    pub fn x(&self) -> Poly<R::Elem> {
        self.reduce(&self.polys().x())
    }

    /// `xⁱ` for `i < n`.
    pub fn basis(&self, i: usize) -> Poly<R::Elem> {
        self.reduce(&self.polys().monomial(self.base.one(), i))
    }

    /// Coordinates on `1, x, …, xⁿ⁻¹`.
    pub fn coords(&self, v: &Poly<R::Elem>) -> Vec<R::Elem> {
        (0..self.degree()).map(|i| v.coeff(i).cloned().unwrap_or_else(|| self.base.zero())).collect()
    }

    pub fn fprime(&self) -> Poly<R::Elem> {
        self.reduce(&self.polys().derivative(&self.f))
    }

    pub fn tate_data(&self) -> TateData<R::Elem> {
        let r = &self.base;
        let fc = self.f.coeffs();
        let n = self.degree();
        let g = (0..n)
            .map(|i| {
                // gᵢ(Y) = Σ_{k>i} f_k·Y^{k−1−i}
                let cs = (i + 1..=n).map(|k| fc[k].clone()).collect();
                self.polys().from_coeffs(cs)
            })
            .collect();
        let _ = r;
        TateData { g }
    }

    /// Trace of multiplication by `v` on the basis `1, x, …, xⁿ⁻¹`.
    pub fn trace_matrix(&self, v: &Poly<R::Elem>) -> R::Elem {
        let r = &self.base;
        let mut col = self.reduce(v);
        let x = self.x();
        let mut acc = r.zero();
        for j in 0..self.degree() {
            if let Some(c) = col.coeff(j) {
                acc = r.add(&acc, c);
            }
            if j + 1 < self.degree() {
                col = self.mul(&col, &x);
            }
        }
        acc
    }

    /// `Σⱼ h(xⱼ)` over the roots of the splitting tower of `f`.
    pub fn trace_split(&self, v: &Poly<R::Elem>) -> Result<R::Elem> {
        let tower = SplittingTower::new(self.base.clone(), &self.f)?;
        let v = self.reduce(v);
        let mut acc = tower.zero();
        for j in 0..tower.degree() {
            acc = tower.add(&acc, &tower.eval_at_root(&v, j));
        }
        tower.as_base(&acc).ok_or_else(|| Error::PreconditionViolated("trace is not a base element".into()))
    }

    /// Traces of the basis elements, for linear reuse.
    pub fn trace_form(&self) -> Vec<R::Elem> {
        (0..self.degree()).map(|i| self.trace_matrix(&self.basis(i))).collect()
    }

    fn trace_by_form(&self, form: &[R::Elem], v: &Poly<R::Elem>) -> R::Elem {
        let r = &self.base;
        v.coeffs().iter().zip(form).fold(r.zero(), |acc, (c, t)| r.add(&acc, &r.mul(c, t)))
    }

    /// `(f′(x)·v, Σᵢ tr(gᵢ(x)·v)·xⁱ)`.
    pub fn tate_formula(&self, v: &Poly<R::Elem>) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let form = self.trace_form();
        self.tate_formula_with(&form, &self.tate_data(), v)
    }

    /// [`Self::tate_formula`] with the trace form and `gᵢ` precomputed.
    pub fn tate_formula_with(&self, form: &[R::Elem], data: &TateData<R::Elem>, v: &Poly<R::Elem>) -> (Poly<R::Elem>, Poly<R::Elem>) {
        let v = self.reduce(v);
        let lhs = self.mul(&self.fprime(), &v);
        let rhs: Vec<R::Elem> = data.g.iter().map(|gi| self.trace_by_form(form, &self.mul(&self.reduce(gi), &v))).collect();
        (lhs, self.polys().from_coeffs(rhs))
    }
}

impl<E: Clone> TateData<E> {
    /// Checks `(X − Y)·Σ gᵢ(Y)Xⁱ = f(X) − f(Y)` as a bivariate identity.
    pub fn verify<R: CommRing<Elem = E> + Clone>(&self, r: &R, f: &Poly<E>) -> bool {
        let py = PolyRing::new(r.clone());
        let pxy = PolyRing::new(py.clone());
        let g = pxy.from_coeffs(self.g.clone());
        let x_minus_y = pxy.from_coeffs(vec![py.neg(&py.x()), py.one()]);
        let fx = pxy.from_coeffs(f.coeffs().iter().map(|c| py.constant(c.clone())).collect());
        let fy = pxy.constant(f.clone());
        pxy.is_zero(&pxy.sub(&pxy.mul(&x_minus_y, &g), &pxy.sub(&fx, &fy)))
    }
}

impl QuotientAlg<Ring> {
    /// `w` with `f′(x)·v = a·w`, given `vⁿ + Σ uᵢ·aⁱ·vⁿ⁻ⁱ = 0` in `S` and
    /// `a ∈ R`: every `tr(gᵢ(x)v)` is integral over `⟨a⟩` in `R`.
    pub fn tate_lemma_witness(&self, v: &Poly<Elem>, a: &Elem, rel: &[Poly<Elem>]) -> Result<Poly<Elem>> {
        let r = &self.base;
        let v = self.reduce(v);
        let av = self.polys().constant(a.clone());
        let rel: Vec<Poly<Elem>> = rel.iter().map(|u| self.reduce(u)).collect();
        if rel.is_empty() || !self.is_zero(&relation_value(self, &v, &av, &rel)) {
            return Err(Error::RelationInvalid);
        }
        let form = self.trace_form();
        let mut w = Vec::with_capacity(self.degree());
        for gi in &self.tate_data().g {
            let t = self.trace_by_form(&form, &self.mul(&self.reduce(gi), &v));
            let q = r.divide(&t, a).ok_or_else(|| {
                Error::NotNormalWitnessFailure(format!("trace {} is integral over ⟨{}⟩ but not divisible", r.show(&t), r.show(a)))
            })?;
            w.push(q);
        }
        let w = self.polys().from_coeffs(w);
        if self.mul(&self.fprime(), &v) != self.mul(&av, &w) {
            return Err(Error::NotNormalWitnessFailure("Tate witness fails f′(x)·v = a·w".into()));
        }
        Ok(w)
    }

    pub fn show(&self, v: &Poly<Elem>) -> String {
        self.polys().show_in(v, "x")
    }
}

impl<R: CommRing + Clone> CommRing for QuotientAlg<R> {
    type Elem = Poly<R::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }

    fn one(&self) -> Self::Elem {
        self.reduce(&self.polys().one())
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.reduce(&self.polys().from_i64(n))
    }

    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.polys().add(x, y)
    }

    fn neg(&self, x: &Self::Elem) -> Self::Elem {
        self.polys().neg(x)
    }

    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.reduce(&self.polys().mul(x, y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        x.is_zero()
    }
}

/// `tr(xʲ)` for `j < n` over the generic monic `Xⁿ + b₁Xⁿ⁻¹ + ⋯ + bₙ`,
/// computed once in its splitting tower over `Z[b₁, …, bₙ]`. Splitting
/// towers commute with base change, so [`GenericTraces::at`] gives
/// `trace_split` of any specific `f` of degree `n`.
#[derive(Clone, Debug)]
pub struct GenericTraces {
    n: usize,
    terms: Vec<Vec<(Vec<u32>, i128)>>,
}

impl GenericTraces {
    pub fn new(n: usize) -> Result<Self> {
        let ring = MPolys(n);
        let pr = PolyRing::new(ring);
        let mut cs: Vec<MPoly> = (1..=n).rev().map(|j| MPoly::var(n, j - 1)).collect();
        cs.push(ring.one());
        let s = QuotientAlg::new(ring, pr.from_coeffs(cs))?;
        let mut terms = Vec::with_capacity(n);
        for j in 0..n {
            let t = s.trace_split(&s.basis(j))?;
            let ts = t
                .terms()
                .map(|(m, c)| {
                    let c = c.to_integer().to_i128().filter(|_| c.is_integer()).ok_or_else(|| Error::ResourceLimit("trace coefficient".into()))?;
                    Ok((m.0.clone(), c))
                })
                .collect::<Result<Vec<_>>>()?;
            terms.push(ts);
        }
        Ok(GenericTraces { n, terms })
    }

    /// `tr(xʲ)` for `j < n` at `f = Xⁿ + …` (coefficients ascending).
    pub fn at(&self, f: &Poly<i128>) -> Vec<i128> {
        assert_eq!(f.degree(), Some(self.n), "degree mismatch");
        let b: Vec<i128> = (1..=self.n).map(|j| f.coeffs()[self.n - j]).collect();
        self.terms
            .iter()
            .map(|ts| {
                ts.iter()
                    .map(|(e, c)| e.iter().zip(&b).fold(*c, |acc, (&k, bj)| acc * bj.pow(k)))
                    .sum()
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::SmallInt;
    use proptest::prelude::*;

    fn s(f: &[i64]) -> QuotientAlg<Ring> {
        let pr = PolyRing::new(Ring::Int);
        QuotientAlg::new(Ring::Int, pr.from_coeffs(f.iter().map(|&c| Ring::Int.from_i64(c)).collect())).unwrap()
    }

    fn el(s: &QuotientAlg<Ring>, c: &[i64]) -> Poly<Elem> {
        s.reduce(&s.polys().from_coeffs(c.iter().map(|&x| Ring::Int.from_i64(x)).collect()))
    }

    #[test]
    fn traces_of_root_two() {
        let s = s(&[-2, 0, 1]);
        let x = s.x();
        assert_eq!(s.trace_matrix(&x), Ring::Int.zero());
        assert_eq!(s.trace_split(&x).unwrap(), Ring::Int.zero());
        let x2 = s.mul(&x, &x);
        assert_eq!(s.trace_matrix(&x2), Ring::Int.from_i64(4));
        assert_eq!(s.trace_split(&x2).unwrap(), Ring::Int.from_i64(4));
        assert_eq!(s.trace_matrix(&s.one()), Ring::Int.from_i64(2));
        let (lhs, rhs) = s.tate_formula(&x);
        assert_eq!(lhs, el(&s, &[4]));
        assert_eq!(lhs, rhs);
        assert_eq!(s.tate_formula(&s.zero()), (s.zero(), s.zero()));
        assert!(s.tate_data().verify(&Ring::Int, s.modulus()));
    }

    #[test]
    fn rank_one() {
        let s = s(&[-7, 1]);
        let v = el(&s, &[5]);
        let (lhs, rhs) = s.tate_formula(&v);
        assert_eq!((lhs.clone(), rhs), (v.clone(), v));
        assert_eq!(s.trace_split(&el(&s, &[0, 1])).unwrap(), Ring::Int.from_i64(7));
    }

    #[test]
    fn tate_lemma_examples() {
        let s = s(&[-2, 0, 1]);
        let two = Ring::Int.from_i64(2);
        let v = el(&s, &[2]);
        let w = s.tate_lemma_witness(&v, &two, &[el(&s, &[-1])]).unwrap();
        assert_eq!(w, el(&s, &[0, 2]));
        let w1 = s.tate_lemma_witness(&v, &Ring::Int.one(), &[el(&s, &[-2])]).unwrap();
        assert_eq!(w1, s.mul(&s.fprime(), &v));
        assert!(s.tate_lemma_witness(&s.zero(), &two, &[s.zero()]).unwrap().is_zero());
        assert_eq!(s.tate_lemma_witness(&v, &two, &[el(&s, &[1])]), Err(Error::RelationInvalid));
    }

    #[test]
    fn generic_traces_specialize() {
        for n in 1..=4 {
            let gt = GenericTraces::new(n).unwrap();
            let mut cs: Vec<i128> = (0..n as i128).map(|i| 3 - 2 * i).collect();
            cs.push(1);
            let f = PolyRing::new(SmallInt).from_coeffs(cs);
            let s = QuotientAlg::new(SmallInt, f.clone()).unwrap();
            let want: Vec<i128> = (0..n).map(|j| s.trace_matrix(&s.basis(j))).collect();
            assert_eq!(gt.at(&f), want);
        }
    }

    #[test]
    fn machine_integers_agree() {
        let f = PolyRing::new(SmallInt).from_coeffs(vec![3, -1, 0, 2, 1]);
        let sm = QuotientAlg::new(SmallInt, f).unwrap();
        let big = s(&[3, -1, 0, 2, 1]);
        for i in 0..4 {
            assert_eq!(Ring::Int.from_i64(sm.trace_matrix(&sm.basis(i)) as i64), big.trace_matrix(&big.basis(i)));
            assert_eq!(sm.trace_split(&sm.basis(i)).unwrap(), sm.trace_matrix(&sm.basis(i)));
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn traces_agree_and_tate_holds(f in proptest::collection::vec(-9i64..=9, 1..=5), v in proptest::collection::vec(-9i64..=9, 0..=5)) {
            let mut f = f; f.push(1);
            let s = s(&f);
            let v = el(&s, &v);
            prop_assert_eq!(s.trace_matrix(&v), s.trace_split(&v).unwrap());
            let (lhs, rhs) = s.tate_formula(&v);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn tate_over_univariate_polynomials(f in proptest::collection::vec(-3i64..=3, 1..=3), t in 0usize..3) {
            let qt = Ring::poly_over(Ring::Rat, "t").unwrap();
            let pr = PolyRing::new(qt.clone());
            let tt = qt.parse_elem("t").unwrap();
            let mut cs: Vec<Elem> = f.iter().map(|&c| qt.add(&qt.from_i64(c), &qt.pow(&tt, t as u32))).collect();
            cs.push(qt.one());
            let s = QuotientAlg::new(qt.clone(), pr.from_coeffs(cs)).unwrap();
            for i in 0..s.degree() {
                let b = s.basis(i);
                prop_assert_eq!(s.trace_matrix(&b), s.trace_split(&b).unwrap());
                let (l, r) = s.tate_formula(&b);
                prop_assert_eq!(l, r);
            }
        }
    }
}
