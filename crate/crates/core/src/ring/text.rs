//! Element syntax: `3`, `-1/2`, `1+2*w`, `t^2+1`, `a*b-3*a`, `(1,0)`.
//! Parsing evaluates directly in the target ring; `/` is exact division.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{CommRing, Elem, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let cs: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < cs.len() && cs[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = cs[start..i].iter().collect();
            out.push(Tok::Num(digits.parse().expect("digits")));
        } else if c.is_alphabetic() {
            let start = i;
            while i < cs.len() && (cs[i].is_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^(),".contains(c) {
            out.push(Tok::Sym(c));
            i += 1;
        } else {
            return Err(Error::parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

#[derive(Debug)]
enum Expr {
    Num(BigInt),
    Var(String),
    Tuple(Vec<Expr>),
    Neg(Box<Expr>),
    Bin(char, Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Bin('+', Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Bin('-', Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Bin('/', Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Ident(_)) | Some(Tok::Sym('('))) {
                // implicit product: 2w, 3t^2
                lhs = Expr::Bin('*', Box::new(lhs), Box::new(self.power()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            Ok(Expr::Neg(Box::new(self.unary()?)))
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e = u32::try_from(&n).map_err(|_| Error::parse("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(Error::parse("expected a non-negative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(Expr::Var(v))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let mut items = vec![self.expr()?];
                while self.eat(',') {
                    items.push(self.expr()?);
                }
                if !self.eat(')') {
                    return Err(Error::parse("missing ')'"));
                }
                Ok(if items.len() == 1 { items.pop().unwrap() } else { Expr::Tuple(items) })
            }
            other => Err(Error::parse(format!("unexpected token {other:?}"))),
        }
    }
}

fn eval(r: &Ring, e: &Expr) -> Result<Elem> {
    Ok(match e {
        Expr::Num(n) => r.from_bigint(n),
        Expr::Var(v) => r
            .generator(v)
            .ok_or_else(|| Error::parse(format!("unknown symbol {v:?} in {}", r.name())))?,
        Expr::Tuple(items) => {
            let factors = r
                .factors()
                .ok_or_else(|| Error::parse(format!("tuple literal in non-product ring {}", r.name())))?;
            if factors.len() != items.len() {
                return Err(Error::parse(format!("tuple has {} entries, ring has {} factors", items.len(), factors.len())));
            }
            Elem::Tuple(factors.iter().zip(items).map(|(f, x)| eval(f, x)).collect::<Result<_>>()?)
        }
        Expr::Neg(x) => r.neg(&eval(r, x)?),
        Expr::Pow(x, k) => r.pow(&eval(r, x)?, *k),
        Expr::Bin(op, x, y) => {
            let (x, y) = (eval(r, x)?, eval(r, y)?);
            match op {
                '+' => r.add(&x, &y),
                '-' => r.sub(&x, &y),
                '*' => r.mul(&x, &y),
                _ => {
                    if r.is_zero(&y) {
                        return Err(Error::DivisionByZero);
                    }
                    r.divide(&x, &y).ok_or_else(|| Error::parse(format!("{} is not divisible by {}", r.show(&x), r.show(&y))))?
                }
            }
        }
    })
}

pub(super) fn parse(r: &Ring, s: &str) -> Result<Elem> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::parse("empty element"));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::parse(format!("trailing input in {s:?}")));
    }
    eval(r, &e)
}

fn rational_str(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Joins `(coefficient, monomial)` terms, highest first.
fn join_terms(terms: &[(BigRational, String)]) -> String {
    if terms.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (c, m)) in terms.iter().enumerate() {
        if c.is_negative() {
            out.push('-');
        } else if i > 0 {
            out.push('+');
        }
        let a = c.abs();
        if m.is_empty() {
            out += &rational_str(&a);
        } else if a.is_one() {
            out += m;
        } else {
            out += &format!("{}*{m}", rational_str(&a));
        }
    }
    out
}

fn power_str(v: &str, e: u32) -> String {
    match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    }
}

fn coeff_as_rational(k: &Ring, c: &Elem) -> BigRational {
    match (k, c) {
        (_, Elem::Rat(q)) => q.clone(),
        (_, Elem::Fp(a)) => BigRational::from_integer(BigInt::from(*a)),
        (_, Elem::Int(n)) => BigRational::from_integer(n.clone()),
        _ => unreachable!("field coefficient"),
    }
}

pub(super) fn format(r: &Ring, x: &Elem) -> String {
    match (r, x) {
        (_, Elem::Int(n)) => n.to_string(),
        (_, Elem::Rat(q)) => rational_str(q),
        (_, Elem::Fp(a)) => a.to_string(),
        (_, Elem::Quad(a, b)) => {
            let mut terms = Vec::new();
            if !b.is_zero() {
                terms.push((BigRational::from_integer(b.clone()), "w".to_string()));
            }
            if !a.is_zero() {
                terms.push((BigRational::from_integer(a.clone()), String::new()));
            }
            // constant first reads more naturally for a + bω
            terms.reverse();
            join_terms(&terms)
        }
        (Ring::PolyOverField { base, var }, Elem::UPoly(f)) => {
            let terms: Vec<_> = f
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !base.is_zero(c))
                .map(|(i, c)| (coeff_as_rational(base, c), power_str(var, i as u32)))
                .collect();
            join_terms(&terms)
        }
        (Ring::MPolyQ { vars }, Elem::MPoly(f)) => {
            let terms: Vec<_> = f
                .terms()
                .rev()
                .map(|(m, c)| {
                    let parts: Vec<String> =
                        m.0.iter().zip(vars).filter(|(e, _)| **e > 0).map(|(e, v)| power_str(v, *e)).collect();
                    (c.clone(), parts.join("*"))
                })
                .collect();
            join_terms(&terms)
        }
        (Ring::Product { factors }, Elem::Tuple(xs)) => {
            let parts: Vec<String> = factors.iter().zip(xs).map(|(f, x)| format(f, x)).collect();
            format!("({})", parts.join(","))
        }
        _ => panic!("element does not belong to this ring"),
    }
}
