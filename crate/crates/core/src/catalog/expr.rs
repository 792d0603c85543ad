//! Integer-coefficient rational expressions in named parameters, and sparse
//! multivariate polynomials for checking them.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
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
            let lit: String = cs[start..i].iter().collect();
            out.push(Tok::Num(lit.parse().expect("digits")));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < cs.len() && (cs[i].is_ascii_alphanumeric() || cs[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(cs[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else {
                return Ok(lhs);
            }
        }
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos).cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    let e: u32 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), e))
                }
                _ => Err(self.err("expected an integer exponent")),
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
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(e)
            }
            _ => Err(self.err("expected a number, name or '('")),
        }
    }
}

impl Expr {
    pub fn parse(s: &str) -> Result<Expr> {
        let mut p = Parser { toks: tokenize(s)?, pos: 0, src: s };
        let e = p.expr()?;
        if p.pos != p.toks.len() {
            return Err(p.err("trailing input"));
        }
        Ok(e)
    }

    /// Exact value at a point; a vanishing divisor is reported by its text.
    pub fn eval(&self, env: &HashMap<String, BigRational>) -> Result<BigRational> {
        Ok(match self {
            Expr::Num(n) => BigRational::from_integer(n.clone()),
            Expr::Var(v) => env.get(v).cloned().ok_or_else(|| Error::MissingParameter(v.clone()))?,
            Expr::Neg(a) => -a.eval(env)?,
            Expr::Add(a, b) => a.eval(env)? + b.eval(env)?,
            Expr::Sub(a, b) => a.eval(env)? - b.eval(env)?,
            Expr::Mul(a, b) => a.eval(env)? * b.eval(env)?,
            Expr::Div(a, b) => {
                let den = b.eval(env)?;
                if den.is_zero() {
                    return Err(Error::ConstraintViolated(b.to_string()));
                }
                a.eval(env)? / den
            }
            Expr::Pow(a, e) => num_traits::pow(a.eval(env)?, *e as usize),
        })
    }

    pub fn variables(&self, out: &mut BTreeSet<String>) {
        match self {
            Expr::Num(_) => {}
            Expr::Var(v) => {
                out.insert(v.clone());
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.variables(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.variables(out);
                b.variables(out);
            }
        }
    }

    /// Every right-hand operand of a division.
    pub fn divisors(&self) -> Vec<Expr> {
        let mut out = Vec::new();
        self.collect_divisors(&mut out);
        out
    }

    fn collect_divisors(&self, out: &mut Vec<Expr>) {
        match self {
            Expr::Num(_) | Expr::Var(_) => {}
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_divisors(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_divisors(out);
                b.collect_divisors(out);
            }
            Expr::Div(a, b) => {
                a.collect_divisors(out);
                b.collect_divisors(out);
                out.push((**b).clone());
            }
        }
    }

    /// Expands a division-free expression.
    pub fn to_poly(&self, vars: &[String]) -> Result<MPoly> {
        Ok(match self {
            Expr::Num(n) => MPoly::constant(vars.len(), BigRational::from_integer(n.clone())),
            Expr::Var(v) => {
                let i = vars.iter().position(|x| x == v).ok_or_else(|| Error::UnknownParameter(v.clone()))?;
                MPoly::var(vars.len(), i)
            }
            Expr::Neg(a) => a.to_poly(vars)?.neg(),
            Expr::Add(a, b) => a.to_poly(vars)?.add(&b.to_poly(vars)?),
            Expr::Sub(a, b) => a.to_poly(vars)?.add(&b.to_poly(vars)?.neg()),
            Expr::Mul(a, b) => a.to_poly(vars)?.mul(&b.to_poly(vars)?),
            Expr::Pow(a, e) => {
                let base = a.to_poly(vars)?;
                let mut acc = MPoly::constant(vars.len(), BigRational::one());
                for _ in 0..*e {
                    acc = acc.mul(&base);
                }
                acc
            }
            Expr::Div(..) => return Err(Error::Invalid(format!("{self} is not a polynomial"))),
        })
    }

    fn prec(&self) -> u8 {
        match self {
            Expr::Add(..) | Expr::Sub(..) => 1,
            Expr::Mul(..) | Expr::Div(..) => 2,
            Expr::Neg(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Num(_) | Expr::Var(_) => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |f: &mut fmt::Formatter<'_>, e: &Expr, min: u8| {
            if e.prec() < min {
                write!(f, "({e})")
            } else {
                write!(f, "{e}")
            }
        };
        match self {
            Expr::Num(n) => write!(f, "{n}"),
            Expr::Var(v) => write!(f, "{v}"),
            Expr::Neg(a) => {
                f.write_str("-")?;
                wrap(f, a, 4)
            }
            Expr::Add(a, b) | Expr::Sub(a, b) => {
                wrap(f, a, 1)?;
                f.write_str(if matches!(self, Expr::Add(..)) { " + " } else { " - " })?;
                wrap(f, b, 2)
            }
            Expr::Mul(a, b) | Expr::Div(a, b) => {
                wrap(f, a, 2)?;
                f.write_str(if matches!(self, Expr::Mul(..)) { "*" } else { "/" })?;
                wrap(f, b, 3)
            }
            Expr::Pow(a, e) => {
                wrap(f, a, 5)?;
                write!(f, "^{e}")
            }
        }
    }
}

/// A multivariate polynomial with rational coefficients, keyed by exponent vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> MPoly {
        MPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: BigRational) -> MPoly {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn var(nvars: usize, i: usize) -> MPoly {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly { nvars, terms: BTreeMap::from([(e, BigRational::one())]) }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn neg(&self) -> MPoly {
        MPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    pub fn add(&self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn mul(&self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }

    /// Lex-leading term.
    fn leading(&self) -> Option<(&Vec<u32>, &BigRational)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn divide_exact(&self, d: &MPoly) -> Option<MPoly> {
        let (de, dc) = d.leading()?;
        let mut rem = self.clone();
        let mut q = MPoly::zero(self.nvars);
        while let Some((re, rc)) = rem.leading() {
            if re.iter().zip(de).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(de).map(|(a, b)| a - b).collect();
            let c = rc / dc;
            let mut t = MPoly::zero(self.nvars);
            t.terms.insert(e, c);
            rem = rem.add(&t.mul(d).neg());
            q = q.add(&t);
        }
        Some(q)
    }
}

/// Whether `atom` is a nonzero constant times a product of the `factors`.
pub fn divides_product_of(atom: &MPoly, factors: &[MPoly]) -> bool {
    let mut rest = atom.clone();
    if rest.is_zero() {
        return false;
    }
    'outer: while !rest.is_constant() {
        for f in factors.iter().filter(|f| !f.is_constant()) {
            if let Some(q) = rest.divide_exact(f) {
                rest = q;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env(pairs: &[(&str, i64)]) -> HashMap<String, BigRational> {
        pairs.iter().map(|(k, v)| (k.to_string(), BigRational::from_integer((*v).into()))).collect()
    }

    #[test]
    fn parse_and_eval() {
        let e = Expr::parse("p^2*x*(x^2*a - b)/(a*x + b)^2").unwrap();
        let v = e.eval(&env(&[("p", 1), ("x", 2), ("a", 1), ("b", 1)])).unwrap();
        assert_eq!(v, BigRational::new(6.into(), 9.into()));
        assert_eq!(Expr::parse("-2*m2").unwrap().eval(&env(&[("m2", 3)])).unwrap(), BigRational::from_integer((-6).into()));
        assert_eq!(Expr::parse("2 - 3 - 4").unwrap().eval(&env(&[])).unwrap(), BigRational::from_integer((-5).into()));
        assert_eq!(Expr::parse("-k^2").unwrap().eval(&env(&[("k", 3)])).unwrap(), BigRational::from_integer((-9).into()));
    }

    #[test]
    fn vanishing_divisor_is_named() {
        let e = Expr::parse("1/(a*x + b)").unwrap();
        let err = e.eval(&env(&[("a", 1), ("x", 1), ("b", -1)])).unwrap_err();
        assert_eq!(err, Error::ConstraintViolated("a*x + b".into()));
        assert!(matches!(Expr::parse("q").unwrap().eval(&env(&[])), Err(Error::MissingParameter(_))));
    }

    #[test]
    fn display_round_trips() {
        for s in ["a - (b - c)", "-(a + b)*c", "a/(b*c)", "(a + b)^2", "-a^2", "a*b/c"] {
            let e = Expr::parse(s).unwrap();
            assert_eq!(Expr::parse(&e.to_string()).unwrap(), e, "{s}");
        }
    }

    #[test]
    fn parse_errors() {
        assert!(Expr::parse("a +").is_err());
        assert!(Expr::parse("(a").is_err());
        assert!(Expr::parse("a $ b").is_err());
        assert!(Expr::parse("a^b").is_err());
    }

    #[test]
    fn exact_division() {
        let vars: Vec<String> = ["a", "x", "b"].iter().map(|s| s.to_string()).collect();
        let p = |s: &str| Expr::parse(s).unwrap().to_poly(&vars).unwrap();
        assert_eq!(p("(a*x + b)^2").divide_exact(&p("a*x + b")), Some(p("a*x + b")));
        assert_eq!(p("a*x + b").divide_exact(&p("a")), None);
        assert!(divides_product_of(&p("4*x*b*(a*x+b)^2"), &[p("x"), p("b"), p("a*x + b")]));
        assert!(!divides_product_of(&p("a*x - b"), &[p("x"), p("b"), p("a*x + b")]));
    }
}
