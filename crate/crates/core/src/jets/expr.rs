//! Expression trees over generators, `ω_i`, `π` and integers.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{CoeffRing, Poly, Variable};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Expr {
    Int(i64),
    Gen(Arc<str>),
    Omega(u32),
    Pi,
    Add(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
    Pow(Box<Expr>, u32),
}

impl Expr {
    pub fn gen(name: &str) -> Self {
        Expr::Gen(Arc::from(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(a: Expr, b: Expr) -> Self {
        Expr::Add(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(a: Expr, b: Expr) -> Self {
        Expr::Mul(Box::new(a), Box::new(b))
    }

    pub fn pow(a: Expr, k: u32) -> Self {
        Expr::Pow(Box::new(a), k)
    }

    /// Free of named generators.
    pub fn is_constant(&self) -> bool {
        match self {
            Expr::Gen(_) => false,
            Expr::Int(_) | Expr::Omega(_) | Expr::Pi => true,
            Expr::Add(a, b) | Expr::Mul(a, b) => a.is_constant() && b.is_constant(),
            Expr::Neg(a) | Expr::Pow(a, _) => a.is_constant(),
        }
    }

    /// Generator names in order of first appearance.
    pub fn generators(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.collect_generators(&mut out);
        out
    }

    fn collect_generators(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Expr::Gen(g) => {
                if !out.contains(g) {
                    out.push(g.clone());
                }
            }
            Expr::Add(a, b) | Expr::Mul(a, b) => {
                a.collect_generators(out);
                b.collect_generators(out);
            }
            Expr::Neg(a) | Expr::Pow(a, _) => a.collect_generators(out),
            _ => {}
        }
    }

    /// Replaces generators by expressions.
    pub fn substitute(&self, f: &dyn Fn(&str) -> Option<Expr>) -> Expr {
        match self {
            Expr::Gen(g) => f(g).unwrap_or_else(|| self.clone()),
            Expr::Add(a, b) => Expr::add(a.substitute(f), b.substitute(f)),
            Expr::Mul(a, b) => Expr::mul(a.substitute(f), b.substitute(f)),
            Expr::Neg(a) => Expr::Neg(Box::new(a.substitute(f))),
            Expr::Pow(a, k) => Expr::pow(a.substitute(f), *k),
            _ => self.clone(),
        }
    }

    /// Parses `t1*pi + 2*t2^3 - w1`. Identifiers `pi`/`π` denote `π`,
    /// `w<i>` denotes `ω_i`, anything else is a generator; `·` multiplies.
    pub fn parse(s: &str) -> Result<Expr> {
        let tokens = tokenize(s)?;
        let mut parser = Parser { tokens, pos: 0 };
        let e = parser.sum()?;
        if parser.pos != parser.tokens.len() {
            return Err(Error::Parse(format!(
                "unexpected `{}` in `{s}`",
                parser.tokens[parser.pos]
            )));
        }
        Ok(e)
    }

    /// The polynomial an expression denotes; `π` and `ω_i` become variables.
    pub fn to_poly<R: CoeffRing>(&self, ring: &R) -> Result<Poly<R>> {
        Ok(match self {
            Expr::Int(n) => Poly::from_i64(ring.clone(), *n),
            Expr::Gen(g) => Poly::var(ring.clone(), Variable::Gen(g.clone())),
            Expr::Omega(i) => Poly::var(ring.clone(), Variable::Omega(*i)),
            Expr::Pi => Poly::var(ring.clone(), Variable::Pi),
            Expr::Add(a, b) => a.to_poly(ring)?.checked_add(&b.to_poly(ring)?)?,
            Expr::Mul(a, b) => a.to_poly(ring)?.checked_mul(&b.to_poly(ring)?)?,
            Expr::Neg(a) => -&a.to_poly(ring)?,
            Expr::Pow(a, k) => a.to_poly(ring)?.pow(*k as u64),
        })
    }

    /// The expanded sum-of-monomials tree of a polynomial with integral exponents.
    pub fn from_poly<R: CoeffRing>(f: &Poly<R>) -> Result<Expr> {
        let ring = f.ring();
        let mut acc: Option<Expr> = None;
        for (mono, c) in f.terms() {
            let c = i64::try_from(ring.to_bigint(c))
                .map_err(|_| Error::Unsupported("coefficient does not fit in i64".into()))?;
            let mut term = Expr::Int(c);
            for (v, e) in mono.factors() {
                let k = e
                    .to_integer()
                    .and_then(|k| u32::try_from(k).ok())
                    .ok_or_else(|| Error::Unsupported(format!("exponent {e} in an expression")))?;
                let leaf = match v {
                    Variable::Gen(g) => Expr::Gen(g.clone()),
                    Variable::Omega(i) => Expr::Omega(*i),
                    Variable::Pi => Expr::Pi,
                    other => return Err(Error::Unsupported(format!("{other} in an expression"))),
                };
                term = Expr::mul(term, Expr::pow(leaf, k));
            }
            acc = Some(match acc {
                None => term,
                Some(a) => Expr::add(a, term),
            });
        }
        Ok(acc.unwrap_or(Expr::Int(0)))
    }

    fn precedence(&self) -> u8 {
        match self {
            Expr::Add(..) => 1,
            Expr::Neg(_) => 2,
            Expr::Mul(..) => 3,
            Expr::Pow(..) => 4,
            Expr::Int(n) if *n < 0 => 2,
            _ => 5,
        }
    }
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |e: &Expr, min: u8| {
            if e.precedence() < min {
                format!("({e})")
            } else {
                e.to_string()
            }
        };
        match self {
            Expr::Int(n) => write!(f, "{n}"),
            Expr::Gen(g) => f.write_str(g),
            Expr::Omega(i) => write!(f, "w{i}"),
            Expr::Pi => f.write_str("π"),
            Expr::Add(a, b) => match b.as_ref() {
                Expr::Neg(inner) => write!(f, "{} - {}", a, wrap(inner, 3)),
                _ => write!(f, "{} + {}", a, wrap(b, 2)),
            },
            Expr::Mul(a, b) => write!(f, "{}·{}", wrap(a, 3), wrap(b, 4)),
            Expr::Neg(a) => write!(f, "-{}", wrap(a, 3)),
            Expr::Pow(a, k) => write!(f, "{}^{k}", wrap(a, 5)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Token {
    Num(i64),
    Ident(String),
    Sym(char),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Num(n) => write!(f, "{n}"),
            Token::Ident(s) => f.write_str(s),
            Token::Sym(c) => write!(f, "{c}"),
        }
    }
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text
                .parse()
                .map_err(|_| Error::Parse(format!("integer `{text}` out of range")))?;
            out.push(Token::Num(n));
        } else if c == 'π' {
            out.push(Token::Ident("pi".into()));
            i += 1;
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') && chars[i] != 'π' {
                i += 1;
            }
            out.push(Token::Ident(chars[start..i].iter().collect()));
        } else if "+-*^()·".contains(c) {
            out.push(Token::Sym(if c == '·' { '*' } else { c }));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character `{c}` in `{s}`")));
        }
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Token::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = if self.eat('-') {
            Expr::Neg(Box::new(self.product()?))
        } else {
            self.product()?
        };
        loop {
            if self.eat('+') {
                acc = Expr::add(acc, self.product()?);
            } else if self.eat('-') {
                acc = Expr::add(acc, Expr::Neg(Box::new(self.product()?)));
            } else {
                return Ok(acc);
            }
        }
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.power()?;
        while self.eat('*') {
            acc = Expr::mul(acc, self.power()?);
        }
        Ok(acc)
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Token::Num(k)) if k >= 0 && k <= u32::MAX as i64 => {
                    self.pos += 1;
                    Ok(Expr::pow(base, k as u32))
                }
                _ => Err(Error::Parse("exponent must be a nonnegative integer".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().cloned() {
            Some(Token::Num(n)) => {
                self.pos += 1;
                Ok(Expr::Int(n))
            }
            Some(Token::Ident(s)) => {
                self.pos += 1;
                if s == "pi" {
                    return Ok(Expr::Pi);
                }
                if let Some(rest) = s.strip_prefix('w') {
                    if !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()) {
                        let i: u32 = rest.parse().map_err(|_| Error::Parse(format!("bad index in `{s}`")))?;
                        if i == 0 {
                            return Err(Error::Parse("ω indices start at 1".into()));
                        }
                        return Ok(Expr::Omega(i));
                    }
                }
                Ok(Expr::gen(&s))
            }
            Some(Token::Sym('(')) => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing `)`".into()));
                }
                Ok(e)
            }
            Some(t) => Err(Error::Parse(format!("unexpected `{t}`"))),
            None => Err(Error::Parse("unexpected end of expression".into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display() {
        let e = Expr::parse("t1*pi + 2*t2^3 - w1").unwrap();
        assert_eq!(e.to_string(), "t1·π + 2·t2^3 - w1");
        assert_eq!(Expr::parse("t1·π").unwrap(), Expr::mul(Expr::gen("t1"), Expr::Pi));
        assert_eq!(Expr::parse("π").unwrap(), Expr::Pi);
        assert_eq!(Expr::parse("(x+y)*(x)").unwrap().generators().len(), 2);
        assert!(Expr::parse("x +").is_err());
        assert!(Expr::parse("x $ y").is_err());
        assert!(Expr::parse("w0").is_err());
        assert!(Expr::parse("(x").is_err());
    }

    #[test]
    fn constants() {
        assert!(Expr::parse("2*w1 + pi^2").unwrap().is_constant());
        assert!(!Expr::parse("2*x").unwrap().is_constant());
        let e = Expr::parse("x*y")
            .unwrap()
            .substitute(&|g| (g == "x").then_some(Expr::Pi));
        assert_eq!(e, Expr::mul(Expr::Pi, Expr::gen("y")));
    }

    #[test]
    fn poly_round_trip() {
        use crate::poly::Integers;
        let e = Expr::parse("(x + 2*y)^2 - x*pi").unwrap();
        let f = e.to_poly(&Integers).unwrap();
        let back = Expr::from_poly(&f).unwrap();
        assert_eq!(back.to_poly(&Integers).unwrap(), f);
        assert_eq!(f.len(), 4);
    }
}
