//! Textual syntax: field descriptors (`Q`, `Fp:5`, `Fun:Fp:5:t`, `Ext:Q:2`,
//! `Dual:Fp:7`) and arithmetic expressions (`+ - * / ^`, implicit
//! multiplication, `sqrt(d)`, `eps`, parentheses).

use num_bigint::BigInt;

use super::{Elem, FieldTower, Kind};
use crate::error::{Error, Result};

const MAX_NESTING: usize = 64;
const MAX_EXPONENT: i64 = 256;
const MAX_TOKENS: usize = 4096;
/// Bound on the degree and bit size an expression can reach, so nested
/// powers are rejected before evaluation.
const MAX_SIZE: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    Num(BigInt),
    Var(String),
    Eps,
    Sqrt(Box<Expr>),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, i64),
}

fn perr(pos: usize, msg: impl Into<String>) -> Error {
    Error::Parse { pos, msg: msg.into() }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let mut out = Vec::new();
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().map(|x| x.1).collect();
            if text.len() > 200 {
                return Err(perr(pos, "number too long"));
            }
            out.push((pos, Tok::Num(text.parse().unwrap())));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].1.is_ascii_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            out.push((pos, Tok::Ident(chars[start..i].iter().map(|x| x.1).collect())));
        } else if "+-*/^()".contains(c) {
            out.push((pos, Tok::Op(c)));
            i += 1;
        } else {
            return Err(perr(pos, format!("unexpected character {:?}", c)));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    i: usize,
    end: usize,
    depth: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.i).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.i).map(|t| t.0).unwrap_or(self.end)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.i += 1;
            true
        } else {
            false
        }
    }

    fn enter(&mut self) -> Result<()> {
        self.depth += 1;
        if self.depth > MAX_NESTING {
            Err(perr(self.pos(), "expression nested too deeply"))
        } else {
            Ok(())
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        self.enter()?;
        let mut lhs = self.term()?;
        loop {
            if self.eat('+') {
                lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
            } else if self.eat('-') {
                lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        loop {
            if self.eat('*') {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
            } else if self.eat('/') {
                lhs = Expr::Div(Box::new(lhs), Box::new(self.unary()?));
            } else if matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))) {
                lhs = Expr::Mul(Box::new(lhs), Box::new(self.power()?));
            } else {
                break;
            }
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.eat('-') {
            self.enter()?;
            let e = Expr::Neg(Box::new(self.unary()?));
            self.depth -= 1;
            Ok(e)
        } else if self.eat('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.primary()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let pos = self.pos();
            match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.i += 1;
                    let e: i64 = n
                        .try_into()
                        .ok()
                        .filter(|e: &i64| *e <= MAX_EXPONENT)
                        .ok_or_else(|| perr(pos, "exponent too large"))?;
                    Ok(Expr::Pow(Box::new(base), if neg { -e } else { e }))
                }
                _ => Err(perr(pos, "expected integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        let pos = self.pos();
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.i += 1;
                Ok(Expr::Num(n))
            }
            Some(Tok::Ident(name)) => {
                self.i += 1;
                if name == "sqrt" {
                    if !self.eat('(') {
                        return Err(perr(self.pos(), "expected ( after sqrt"));
                    }
                    let inner = self.expr()?;
                    if !self.eat(')') {
                        return Err(perr(self.pos(), "expected )"));
                    }
                    Ok(Expr::Sqrt(Box::new(inner)))
                } else if name == "eps" {
                    Ok(Expr::Eps)
                } else {
                    Ok(Expr::Var(name))
                }
            }
            Some(Tok::Op('(')) => {
                self.i += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.pos(), "expected )"));
                }
                Ok(e)
            }
            Some(t) => Err(perr(pos, format!("unexpected token {:?}", t))),
            None => Err(perr(pos, "unexpected end of input")),
        }
    }
}

pub fn parse_expr(s: &str) -> Result<Expr> {
    let toks = tokenize(s)?;
    if toks.len() > MAX_TOKENS {
        return Err(perr(0, "expression too long"));
    }
    let mut p = Parser { toks, i: 0, end: s.len(), depth: 0 };
    let e = p.expr()?;
    if p.i != p.toks.len() {
        return Err(perr(p.pos(), "trailing input"));
    }
    if e.size_bound() > MAX_SIZE {
        return Err(perr(0, "expression too large"));
    }
    Ok(e)
}

/// Evaluation of expressions into some ring.
pub trait EvalTarget {
    type Value: Clone;
    fn num(&self, n: &BigInt) -> Result<Self::Value>;
    fn var(&self, name: &str) -> Result<Self::Value>;
    fn eps(&self) -> Result<Self::Value>;
    fn sqrt(&self, arg: &Expr) -> Result<Self::Value>;
    fn add(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn sub(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn mul(&self, a: &Self::Value, b: &Self::Value) -> Self::Value;
    fn neg(&self, a: &Self::Value) -> Self::Value;
    fn div(&self, a: &Self::Value, b: &Self::Value) -> Result<Self::Value>;
    fn pow(&self, a: &Self::Value, e: i64) -> Result<Self::Value>;
}

impl Expr {
    /// Upper bound for the degree and bit size of the value.
    fn size_bound(&self) -> u64 {
        match self {
            Expr::Num(n) => n.bits().max(1),
            Expr::Var(_) | Expr::Eps => 1,
            Expr::Sqrt(a) | Expr::Neg(a) => a.size_bound(),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.size_bound().saturating_add(b.size_bound())
            }
            Expr::Pow(a, e) => a.size_bound().saturating_mul(e.unsigned_abs()),
        }
    }

    pub fn eval<T: EvalTarget>(&self, t: &T) -> Result<T::Value> {
        Ok(match self {
            Expr::Num(n) => t.num(n)?,
            Expr::Var(v) => t.var(v)?,
            Expr::Eps => t.eps()?,
            Expr::Sqrt(a) => t.sqrt(a)?,
            Expr::Neg(a) => t.neg(&a.eval(t)?),
            Expr::Add(a, b) => t.add(&a.eval(t)?, &b.eval(t)?),
            Expr::Sub(a, b) => t.sub(&a.eval(t)?, &b.eval(t)?),
            Expr::Mul(a, b) => t.mul(&a.eval(t)?, &b.eval(t)?),
            Expr::Div(a, b) => t.div(&a.eval(t)?, &b.eval(t)?)?,
            Expr::Pow(a, e) => t.pow(&a.eval(t)?, *e)?,
        })
    }
}

impl EvalTarget for FieldTower {
    type Value = Elem;

    fn num(&self, n: &BigInt) -> Result<Elem> {
        Ok(self.from_bigint(n))
    }

    fn var(&self, name: &str) -> Result<Elem> {
        let mut level = self.clone();
        loop {
            if let Kind::Function { var, .. } = level.kind() {
                if var == name {
                    return Ok(self.coerce(&level.gen()).unwrap());
                }
            }
            match level.base() {
                Some(b) => level = b.clone(),
                None => return Err(perr(0, format!("unknown variable {}", name))),
            }
        }
    }

    fn eps(&self) -> Result<Elem> {
        let mut level = self.clone();
        loop {
            if let Kind::Dual { .. } = level.kind() {
                return Ok(self.coerce(&level.eps()).unwrap());
            }
            match level.base() {
                Some(b) => level = b.clone(),
                None => return Err(perr(0, "eps outside dual numbers")),
            }
        }
    }

    fn sqrt(&self, arg: &Expr) -> Result<Elem> {
        let mut level = self.clone();
        loop {
            if let Kind::Etale { base, d, .. } = level.kind() {
                if let Ok(x) = arg.eval(base) {
                    if &x == d {
                        return Ok(self.coerce(&level.sqrt_gen()).unwrap());
                    }
                }
            }
            match level.base() {
                Some(b) => level = b.clone(),
                None => break,
            }
        }
        let x = arg.eval(self)?;
        x.sqrt()?.ok_or_else(|| perr(0, format!("sqrt({}) does not exist in {}", x, self)))
    }

    fn add(&self, a: &Elem, b: &Elem) -> Elem {
        a + b
    }

    fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        a - b
    }

    fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        a * b
    }

    fn neg(&self, a: &Elem) -> Elem {
        -a
    }

    fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        a.checked_div(b)
    }

    fn pow(&self, a: &Elem, e: i64) -> Result<Elem> {
        a.pow(e).ok_or(Error::ZeroElement)
    }
}

/// Parses and evaluates an element of `field`.
pub fn parse_elem(s: &str, field: &FieldTower) -> Result<Elem> {
    parse_expr(s)?.eval(field)
}

/// Splits at commas that are not nested inside brackets or parentheses.
pub fn split_top_level(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            ',' if depth == 0 => {
                out.push(s[start..i].trim());
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(s[start..].trim());
    out
}

pub fn parse_vector(s: &str, field: &FieldTower) -> Result<Vec<Elem>> {
    let s = s.trim();
    let inner = s.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(s);
    let inner = inner.strip_prefix('[').and_then(|x| x.strip_suffix(']')).unwrap_or(inner);
    split_top_level(inner).into_iter().map(|x| parse_elem(x, field)).collect()
}

/// `[[a,b],[c,d]]`
pub fn parse_matrix(s: &str, field: &FieldTower) -> Result<Vec<Vec<Elem>>> {
    let s = s.trim();
    let inner =
        s.strip_prefix('[').and_then(|x| x.strip_suffix(']')).ok_or_else(|| perr(0, "matrix must be bracketed"))?;
    let rows: Vec<Vec<Elem>> = split_top_level(inner)
        .into_iter()
        .map(|row| {
            let r = row
                .strip_prefix('[')
                .and_then(|x| x.strip_suffix(']'))
                .ok_or_else(|| perr(0, "matrix row must be bracketed"))?;
            split_top_level(r).into_iter().map(|x| parse_elem(x, field)).collect()
        })
        .collect::<Result<_>>()?;
    if rows.is_empty() || rows.iter().any(|r| r.len() != rows[0].len()) {
        return Err(perr(0, "ragged matrix"));
    }
    Ok(rows)
}

/// Parses a field descriptor.
pub fn parse_field(s: &str) -> Result<FieldTower> {
    let toks: Vec<&str> = s.trim().split(':').collect();
    let mut i = 0;
    let f = parse_field_tokens(&toks, &mut i, 0)?;
    if i != toks.len() {
        return Err(perr(i, "trailing tokens in field descriptor"));
    }
    Ok(f)
}

fn parse_field_tokens(toks: &[&str], i: &mut usize, depth: usize) -> Result<FieldTower> {
    if depth > super::MAX_DEPTH + 1 {
        return Err(Error::TowerTooDeep);
    }
    let tok = toks.get(*i).ok_or_else(|| perr(*i, "truncated field descriptor"))?.trim();
    *i += 1;
    let next = |i: &mut usize| -> Result<String> {
        let t = toks.get(*i).ok_or_else(|| perr(*i, "truncated field descriptor"))?;
        *i += 1;
        Ok(t.trim().to_string())
    };
    match tok {
        "Q" => Ok(FieldTower::rationals()),
        "Fp" => {
            let p = next(i)?;
            let p: u64 = p.parse().map_err(|_| perr(*i, format!("bad prime {:?}", p)))?;
            FieldTower::prime(p)
        }
        "Fun" => {
            let base = parse_field_tokens(toks, i, depth + 1)?;
            let var = next(i)?;
            FieldTower::function(&base, &var)
        }
        "Ext" => {
            let base = parse_field_tokens(toks, i, depth + 1)?;
            let d = parse_elem(&next(i)?, &base)?;
            FieldTower::etale(&base, &d)
        }
        "Dual" => {
            let base = parse_field_tokens(toks, i, depth + 1)?;
            FieldTower::dual(&base)
        }
        other => Err(perr(*i - 1, format!("unknown field constructor {:?}", other))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptors_round_trip() {
        for d in ["Q", "Fp:5", "Fun:Fp:5:t", "Ext:Q:2", "Dual:Fp:7", "Fun:Fun:Fp:5:x:y", "Ext:Fun:Fp:5:t:t"] {
            assert_eq!(parse_field(d).unwrap().to_string(), d);
        }
        assert_eq!(parse_field("Fp:2").unwrap_err(), Error::CharacteristicTwo);
        assert!(parse_field("Fun:Q").is_err());
        assert!(parse_field("Q:Q").is_err());
    }

    #[test]
    fn expressions() {
        let k = parse_field("Fun:Q:t").unwrap();
        assert_eq!(parse_elem("(t^2 - 1)/(t - 1)", &k).unwrap().to_string(), "t + 1");
        assert_eq!(parse_elem("2t^2 - 3/4", &k).unwrap().to_string(), "2*t^2 - 3/4");
        assert_eq!(parse_elem("-t^-1", &k).unwrap().to_string(), "-1/t");
        let l = parse_field("Ext:Q:2").unwrap();
        let s = parse_elem("1 + sqrt(2)", &l).unwrap();
        assert_eq!(s.etale_norm().to_string(), "-1");
        let d = parse_field("Dual:Fp:7").unwrap();
        assert_eq!(parse_elem("3 + 2eps", &d).unwrap().to_string(), "3 + 2*eps");
    }

    #[test]
    fn errors() {
        let q = FieldTower::rationals();
        assert!(matches!(parse_elem("1 +", &q), Err(Error::Parse { .. })));
        assert!(matches!(parse_elem("x", &q), Err(Error::Parse { .. })));
        assert_eq!(parse_elem("1/0", &q).unwrap_err(), Error::ZeroElement);
        assert!(matches!(parse_elem("((2^256)^256)^256", &q), Err(Error::Parse { .. })));
        assert!(parse_elem(&"(".repeat(500), &q).is_err());
        assert!(parse_elem("2^100000", &q).is_err());
    }

    #[test]
    fn matrices_and_vectors() {
        let q = FieldTower::rationals();
        let m = parse_matrix("[[2,1],[1,2]]", &q).unwrap();
        assert_eq!(m[1][0], q.one());
        assert_eq!(parse_vector("(1, -1/2, 3)", &q).unwrap().len(), 3);
        assert!(parse_matrix("[[1,2],[3]]", &q).is_err());
    }
}
