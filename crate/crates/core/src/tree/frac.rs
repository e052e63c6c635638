//! Formal localizations `R[1/v₁, …, v_k]`. An element is a numerator in `R`
//! over a monomial in the inverted elements.

use crate::ring::{CommRing, Elem, Ring};

/// `num / ∏ inverted[i]^den[i]`; `den` has no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Frac {
    pub num: Elem,
    pub den: Vec<u32>,
}

impl Frac {
    pub fn integral(num: Elem) -> Self {
        Frac { num, den: Vec::new() }
    }

    pub fn den_exp(&self, i: usize) -> u32 {
        self.den.get(i).copied().unwrap_or(0)
    }

    pub fn is_integral(&self) -> bool {
        self.den.is_empty()
    }
}

fn trim(mut den: Vec<u32>) -> Vec<u32> {
    while den.last() == Some(&0) {
        den.pop();
    }
    den
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FracRing {
    base: Ring,
    inverted: Vec<Elem>,
}

impl FracRing {
    pub fn new(base: Ring, inverted: Vec<Elem>) -> Self {
        FracRing { base, inverted }
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn inverted(&self) -> &[Elem] {
        &self.inverted
    }

    pub fn embed(&self, x: &Elem) -> Frac {
        Frac::integral(x.clone())
    }

    /// `∏ inverted[i]^den[i]` in the base ring.
    pub fn den_value(&self, den: &[u32]) -> Elem {
        let r = &self.base;
        den.iter().zip(&self.inverted).fold(r.one(), |acc, (&e, v)| r.mul(&acc, &r.pow(v, e)))
    }

    /// `num / ∏ inverted^den`, cancelling inverted factors that divide the
    /// numerator exactly.
    pub fn make(&self, mut num: Elem, mut den: Vec<u32>) -> Frac {
        let r = &self.base;
        if r.is_zero(&num) {
            return Frac { num, den: Vec::new() };
        }
        for (i, e) in den.iter_mut().enumerate() {
            while *e > 0 {
                match r.divide(&num, &self.inverted[i]) {
                    Some(q) => {
                        num = q;
                        *e -= 1;
                    }
                    None => break,
                }
            }
        }
        Frac { num, den: trim(den) }
    }

    /// `1 / inverted[i]^k`
    pub fn inv_power(&self, i: usize, k: u32) -> Frac {
        let mut den = vec![0; i + 1];
        den[i] = k;
        Frac { num: self.base.one(), den: trim(den) }
    }

    /// Writes `xs` over a common denominator: returns numerators and the
    /// shared exponent vector.
    pub fn common_denominator(&self, xs: &[Frac]) -> (Vec<Elem>, Vec<u32>) {
        let len = xs.iter().map(|x| x.den.len()).max().unwrap_or(0);
        let den: Vec<u32> = (0..len).map(|i| xs.iter().map(|x| x.den_exp(i)).max().unwrap_or(0)).collect();
        let nums = xs
            .iter()
            .map(|x| {
                let extra: Vec<u32> = (0..len).map(|i| den[i] - x.den_exp(i)).collect();
                self.base.mul(&x.num, &self.den_value(&extra))
            })
            .collect();
        (nums, den)
    }
}

impl CommRing for FracRing {
    type Elem = Frac;

    fn zero(&self) -> Frac {
        Frac::integral(self.base.zero())
    }

    fn one(&self) -> Frac {
        Frac::integral(self.base.one())
    }

    fn from_i64(&self, n: i64) -> Frac {
        Frac::integral(self.base.from_i64(n))
    }

    fn add(&self, x: &Frac, y: &Frac) -> Frac {
        if self.base.is_zero(&x.num) {
            return y.clone();
        }
        if self.base.is_zero(&y.num) {
            return x.clone();
        }
        if x.den == y.den {
            return self.make(self.base.add(&x.num, &y.num), x.den.clone());
        }
        let (nums, den) = self.common_denominator(&[x.clone(), y.clone()]);
        self.make(self.base.add(&nums[0], &nums[1]), den)
    }

    fn neg(&self, x: &Frac) -> Frac {
        Frac { num: self.base.neg(&x.num), den: x.den.clone() }
    }

    fn mul(&self, x: &Frac, y: &Frac) -> Frac {
        let len = x.den.len().max(y.den.len());
        let den = (0..len).map(|i| x.den_exp(i) + y.den_exp(i)).collect();
        self.make(self.base.mul(&x.num, &y.num), den)
    }

    fn is_zero(&self, x: &Frac) -> bool {
        self.base.is_zero(&x.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancellation_and_sums() {
        let z = Ring::Int;
        let fr = FracRing::new(z.clone(), vec![z.from_i64(2), z.from_i64(3)]);
        let half = fr.inv_power(0, 1);
        let third = fr.inv_power(1, 1);
        let s = fr.add(&half, &third); // 5/6
        assert_eq!(s, Frac { num: z.from_i64(5), den: vec![1, 1] });
        let six = fr.embed(&z.from_i64(6));
        assert_eq!(fr.mul(&six, &s), fr.embed(&z.from_i64(5)));
        assert!(fr.is_zero(&fr.sub(&fr.mul(&half, &fr.from_i64(2)), &fr.one())));
    }
}
