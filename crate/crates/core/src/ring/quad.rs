//! Ideals of `Z[ω]` (ω² = d) as rank-≤2 integer lattices in Hermite normal
//! form. Each basis vector remembers how it was built from the input
//! generators, so membership answers come with explicit coefficients.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::int::egcd;

#[derive(Clone, Debug)]
struct Row {
    x: BigInt,
    y: BigInt,
    combo: Vec<BigInt>,
}

impl Row {
    fn lin(s: &BigInt, a: &Row, t: &BigInt, b: &Row) -> Row {
        Row {
            x: s * &a.x + t * &b.x,
            y: s * &a.y + t * &b.y,
            combo: a.combo.iter().zip(&b.combo).map(|(u, v)| s * u + t * v).collect(),
        }
    }
}

/// A sublattice of `Z²` with basis `(a, b), (0, c)` where `a > 0`, `c > 0`
/// and `0 ≤ b < c`. Either row may be absent.
#[derive(Clone, Debug)]
pub struct Lattice2 {
    first: Option<Row>,
    second: Option<Row>,
    ngens: usize,
}

impl Lattice2 {
    /// Lattice spanned by the given integer vectors.
    pub fn span(gens: &[(BigInt, BigInt)]) -> Self {
        let n = gens.len();
        let rows = gens.iter().enumerate().map(|(i, (x, y))| {
            let mut combo = vec![BigInt::zero(); n];
            combo[i] = BigInt::one();
            Row { x: x.clone(), y: y.clone(), combo }
        });
        let mut pivot: Option<Row> = None;
        let mut rest: Vec<Row> = Vec::new();
        for r in rows {
            if r.x.is_zero() {
                rest.push(r);
                continue;
            }
            match pivot.take() {
                None => pivot = Some(r),
                Some(p) => {
                    let (g, s, t) = egcd(&p.x, &r.x);
                    let np = Row::lin(&s, &p, &t, &r);
                    let (pa, ra) = (&p.x / &g, &r.x / &g);
                    let killed = Row::lin(&ra, &p, &(-pa), &r);
                    debug_assert!(killed.x.is_zero());
                    rest.push(killed);
                    pivot = Some(np);
                }
            }
        }
        let mut second: Option<Row> = None;
        for r in rest {
            if r.y.is_zero() {
                continue;
            }
            match second.take() {
                None => second = Some(r),
                Some(p) => {
                    let (_, s, t) = egcd(&p.y, &r.y);
                    second = Some(Row::lin(&s, &p, &t, &r));
                }
            }
        }
        let neg = |r: Row| Row::lin(&-BigInt::one(), &r, &BigInt::zero(), &r.clone());
        let mut second = second.map(|r| if r.y.is_negative() { neg(r) } else { r });
        let mut first = pivot.map(|r| if r.x.is_negative() { neg(r) } else { r });
        if let (Some(f), Some(s)) = (first.as_mut(), second.as_mut()) {
            let q = f.y.div_floor(&s.y);
            *f = Row::lin(&BigInt::one(), f, &-q, s);
        }
        Lattice2 { first, second, ngens: n }
    }

    /// Index `[Z² : L]`, or `None` if the lattice is not of full rank.
    pub fn index(&self) -> Option<BigInt> {
        match (&self.first, &self.second) {
            (Some(f), Some(s)) => Some(&f.x * &s.y),
            _ => None,
        }
    }

    pub fn is_full_rank(&self) -> bool {
        self.index().is_some()
    }

    /// Integer coefficients `k` with `Σ kᵢ·genᵢ = (x, y)`, if the vector lies
    /// in the lattice.
    pub fn solve(&self, x: &BigInt, y: &BigInt) -> Option<Vec<BigInt>> {
        let mut combo = vec![BigInt::zero(); self.ngens];
        let mut y = y.clone();
        match &self.first {
            Some(f) => {
                let (k, r) = x.div_rem(&f.x);
                if !r.is_zero() {
                    return None;
                }
                y -= &k * &f.y;
                for (c, v) in combo.iter_mut().zip(&f.combo) {
                    *c += &k * v;
                }
            }
            None if !x.is_zero() => return None,
            None => {}
        }
        match &self.second {
            Some(s) => {
                let (m, r) = y.div_rem(&s.y);
                if !r.is_zero() {
                    return None;
                }
                for (c, v) in combo.iter_mut().zip(&s.combo) {
                    *c += &m * v;
                }
            }
            None if !y.is_zero() => return None,
            None => {}
        }
        Some(combo)
    }

    pub fn contains(&self, x: &BigInt, y: &BigInt) -> bool {
        self.solve(x, y).is_some()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> (BigInt, BigInt) {
        (BigInt::from(x), BigInt::from(y))
    }

    #[test]
    fn hnf_and_membership() {
        let gens = [v(4, 2), v(6, 0), v(0, 10)];
        let l = Lattice2::span(&gens);
        // the lattice is 2Z × 2Z
        assert_eq!(l.index(), Some(BigInt::from(4)));
        for (x, y) in [(2, 0), (0, 2), (4, 2), (6, 4)] {
            let k = l.solve(&BigInt::from(x), &BigInt::from(y)).unwrap();
            let sx: BigInt = k.iter().zip(&gens).map(|(k, g)| k * &g.0).sum();
            let sy: BigInt = k.iter().zip(&gens).map(|(k, g)| k * &g.1).sum();
            assert_eq!((sx, sy), (BigInt::from(x), BigInt::from(y)));
        }
        assert!(!l.contains(&BigInt::from(1), &BigInt::from(0)));
        assert!(!l.contains(&BigInt::from(0), &BigInt::from(1)));
    }

    #[test]
    fn degenerate_lattices() {
        let l = Lattice2::span(&[]);
        assert!(l.contains(&BigInt::zero(), &BigInt::zero()));
        assert!(!l.contains(&BigInt::one(), &BigInt::zero()));
        let l = Lattice2::span(&[v(3, 3)]);
        assert!(!l.is_full_rank());
        assert!(l.contains(&BigInt::from(-6), &BigInt::from(-6)));
    }
}
