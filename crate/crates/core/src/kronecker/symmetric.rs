use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::grobner::{MPoly, Mono};

/// `e_k(x₁, …, xₙ)`
pub fn elementary(n: usize, k: usize) -> MPoly {
    let terms = (0u32..1 << n).filter(|m| m.count_ones() as usize == k).map(|m| {
        let e: Vec<u32> = (0..n).map(|i| (m >> i) & 1).collect();
        (e, BigRational::from_integer(1.into()))
    });
    MPoly::from_terms(n, terms)
}

fn swap(p: &MPoly, i: usize) -> MPoly {
    let terms = p.terms().map(|(m, c)| {
        let mut e = m.0.clone();
        e.swap(i, i + 1);
        (e, c.clone())
    });
    MPoly::from_terms(p.nvars(), terms)
}

/// Writes a symmetric `s(x₁, …, xₙ)` as a polynomial in `e₁, …, eₙ` by
/// repeatedly removing the lex-leading term.
pub fn symmetrize(s: &MPoly) -> Result<MPoly> {
    let n = s.nvars();
    if (0..n.saturating_sub(1)).any(|i| swap(s, i) != *s) {
        return Err(Error::NotSymmetric);
    }
    let es: Vec<MPoly> = (1..=n).map(|k| elementary(n, k)).collect();
    let mut rest = s.clone();
    let mut out = MPoly::zero(n);
    while let Some((m, c)) = rest.terms().max_by(|a, b| a.0 .0.cmp(&b.0 .0)).map(|(m, c)| (m.clone(), c.clone())) {
        let a = &m.0;
        // exponent of e_k is a_k − a_{k+1}
        let d: Vec<u32> = (0..n).map(|k| a[k] - a.get(k + 1).copied().unwrap_or(0)).collect();
        let prod = es.iter().zip(&d).fold(MPoly::one(n), |acc, (e, &k)| acc.mul(&e.pow(k)));
        rest = rest.sub(&prod.scale(&c));
        out = out.add(&MPoly::monomial(Mono(d), c));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn sum_of_squares() {
        let s = MPoly::from_terms(2, [(vec![2, 0], q(1)), (vec![0, 2], q(1))]);
        let want = MPoly::from_terms(2, [(vec![2, 0], q(1)), (vec![0, 1], q(-2))]);
        assert_eq!(symmetrize(&s).unwrap(), want);
    }

    #[test]
    fn elementary_maps_to_variable() {
        for k in 1..=3 {
            let mut e = vec![0; 3];
            e[k - 1] = 1;
            assert_eq!(symmetrize(&elementary(3, k)).unwrap(), MPoly::from_terms(3, [(e, q(1))]));
        }
        let x1 = MPoly::var(2, 0);
        assert_eq!(symmetrize(&x1), Err(Error::NotSymmetric));
    }

    #[test]
    fn substitution_round_trip() {
        // (x₁ − x₂)²(x₁ − x₃)²(x₂ − x₃)², the cubic discriminant
        let x: Vec<MPoly> = (0..3).map(|i| MPoly::var(3, i)).collect();
        let disc = x[0].sub(&x[1]).mul(&x[0].sub(&x[2])).mul(&x[1].sub(&x[2])).pow(2);
        let e = symmetrize(&disc).unwrap();
        let es: Vec<MPoly> = (1..=3).map(|k| elementary(3, k)).collect();
        let back = e.terms().fold(MPoly::zero(3), |acc, (m, c)| {
            let t = es.iter().zip(&m.0).fold(MPoly::one(3), |a, (p, &k)| a.mul(&p.pow(k)));
            acc.add(&t.scale(c))
        });
        assert_eq!(back, disc);
    }
}
