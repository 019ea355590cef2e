//! Sparse multivariate polynomials over `Q` or `F_p`, with exact division and
//! a recursive primitive-PRS gcd.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::field::parse::{parse_expr, EvalTarget, Expr};
use crate::field::{Elem, FieldTower};
use crate::linalg::Ring;

/// Terms are keyed by exponent vectors in lex order, so the last key is the
/// leading monomial with `x_0` most significant.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly {
    field: FieldTower,
    vars: Arc<[String]>,
    terms: BTreeMap<Vec<u32>, Elem>,
}

pub fn var_names(names: &[&str]) -> Arc<[String]> {
    names.iter().map(|s| s.to_string()).collect::<Vec<_>>().into()
}

impl MPoly {
    pub fn zero(field: &FieldTower, vars: &Arc<[String]>) -> MPoly {
        MPoly { field: field.clone(), vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn constant(field: &FieldTower, vars: &Arc<[String]>, c: &Elem) -> MPoly {
        MPoly::monomial(field, vars, vec![0; vars.len()], c.clone())
    }

    pub fn one(field: &FieldTower, vars: &Arc<[String]>) -> MPoly {
        MPoly::constant(field, vars, &field.one())
    }

    pub fn var(field: &FieldTower, vars: &Arc<[String]>, i: usize) -> MPoly {
        let mut e = vec![0; vars.len()];
        e[i] = 1;
        MPoly::monomial(field, vars, e, field.one())
    }

    pub fn monomial(field: &FieldTower, vars: &Arc<[String]>, exp: Vec<u32>, c: Elem) -> MPoly {
        let mut p = MPoly::zero(field, vars);
        if !c.is_zero() {
            p.terms.insert(exp, c);
        }
        p
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn vars(&self) -> &Arc<[String]> {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Vec<u32>, &Elem)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exp: &[u32]) -> Elem {
        self.terms.get(exp).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&k| k == 0))
    }

    fn add_term(&mut self, exp: Vec<u32>, c: Elem) {
        let sum = match self.terms.remove(&exp) {
            Some(old) => &old + &c,
            None => c,
        };
        if !sum.is_zero() {
            self.terms.insert(exp, sum);
        }
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// The common degree of all terms, `None` for zero or mixed degrees.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|e| e == d).then_some(d)
    }

    pub fn degree_in(&self, i: usize) -> u32 {
        self.terms.keys().map(|e| e[i]).max().unwrap_or(0)
    }

    pub fn scale(&self, c: &Elem) -> MPoly {
        let mut out = MPoly::zero(&self.field, &self.vars);
        if c.is_zero() {
            return out;
        }
        for (e, a) in &self.terms {
            out.terms.insert(e.clone(), a * c);
        }
        out
    }

    pub fn pow(&self, k: u32) -> MPoly {
        let mut acc = MPoly::one(&self.field, &self.vars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    pub fn derivative(&self, i: usize) -> MPoly {
        let mut out = MPoly::zero(&self.field, &self.vars);
        for (e, a) in &self.terms {
            if e[i] == 0 {
                continue;
            }
            let mut f = e.clone();
            f[i] -= 1;
            out.add_term(f, a * &self.field.from_int(e[i] as i64));
        }
        out
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        let mut acc = self.field.zero();
        for (e, a) in &self.terms {
            let mut t = a.clone();
            for (x, &k) in point.iter().zip(e) {
                t = &t * &x.pow(k as i64).unwrap_or_else(|| self.field.zero());
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Replaces variable `i` by `subs[i]`; the result lives in their ring.
    pub fn substitute(&self, subs: &[MPoly]) -> MPoly {
        assert_eq!(subs.len(), self.nvars());
        let target = &subs[0];
        let mut out = MPoly::zero(&target.field, &target.vars);
        for (e, a) in &self.terms {
            let mut t = MPoly::constant(&target.field, &target.vars, a);
            for (s, &k) in subs.iter().zip(e) {
                if k > 0 {
                    t = &t * &s.pow(k);
                }
            }
            out = &out + &t;
        }
        out
    }

    /// Coefficients with respect to `x_i`, indexed by the power of `x_i`.
    pub fn coeffs_in(&self, i: usize) -> Vec<MPoly> {
        let mut out = vec![MPoly::zero(&self.field, &self.vars); self.degree_in(i) as usize + 1];
        for (e, a) in &self.terms {
            let mut f = e.clone();
            f[i] = 0;
            out[e[i] as usize].add_term(f, a.clone());
        }
        out
    }

    fn shift(&self, i: usize, k: u32) -> MPoly {
        let mut out = MPoly::zero(&self.field, &self.vars);
        for (e, a) in &self.terms {
            let mut f = e.clone();
            f[i] += k;
            out.terms.insert(f, a.clone());
        }
        out
    }

    pub fn leading_coeff(&self) -> Option<&Elem> {
        self.terms.values().next_back()
    }

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.try_inv().unwrap()),
            None => self.clone(),
        }
    }

    /// `self / g` when `g` divides `self`.
    pub fn div_exact(&self, g: &MPoly) -> Option<MPoly> {
        let (ge, gc) = g.terms.iter().next_back()?;
        let ginv = gc.try_inv()?;
        let mut r = self.clone();
        let mut q = MPoly::zero(&self.field, &self.vars);
        while let Some((re, rc)) = r.terms.iter().next_back() {
            if re.iter().zip(ge).any(|(a, b)| a < b) {
                return None;
            }
            let e: Vec<u32> = re.iter().zip(ge).map(|(a, b)| a - b).collect();
            let m = MPoly::monomial(&self.field, &self.vars, e, rc * &ginv);
            r = &r - &(&m * g);
            q = &q + &m;
        }
        Some(q)
    }

    pub fn divides(&self, f: &MPoly) -> bool {
        f.div_exact(self).is_some()
    }

    /// Content with respect to `x_i` and the primitive part.
    fn content_primitive(&self, i: usize) -> (MPoly, MPoly) {
        let content = self
            .coeffs_in(i)
            .iter()
            .filter(|c| !c.is_zero())
            .fold(MPoly::zero(&self.field, &self.vars), |acc, c| acc.gcd(c));
        let prim = self.div_exact(&content).expect("content divides");
        (content, prim)
    }

    /// Pseudo-remainder of `self` by `g` with respect to `x_i`.
    fn prem(&self, g: &MPoly, i: usize) -> MPoly {
        let dg = g.degree_in(i);
        let lg = g.coeffs_in(i).pop().unwrap();
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(i) >= dg {
            let dr = r.degree_in(i);
            let lr = r.coeffs_in(i).pop().unwrap();
            r = &(&lg * &r) - &(&lr * &g.shift(i, dr - dg));
        }
        r
    }

    /// Monic greatest common divisor (zero only when both are zero).
    pub fn gcd(&self, o: &MPoly) -> MPoly {
        if self.is_zero() {
            return o.monic();
        }
        if o.is_zero() {
            return self.monic();
        }
        let Some(v) = (0..self.nvars()).rev().find(|&i| self.degree_in(i) > 0 || o.degree_in(i) > 0) else {
            return MPoly::one(&self.field, &self.vars);
        };
        let (ca, pa) = self.content_primitive(v);
        let (cb, pb) = o.content_primitive(v);
        let c = ca.gcd(&cb);
        let (mut f, mut g) = if pa.degree_in(v) >= pb.degree_in(v) { (pa, pb) } else { (pb, pa) };
        while !g.is_zero() {
            if g.degree_in(v) == 0 {
                f = MPoly::one(&self.field, &self.vars);
                break;
            }
            let r = f.prem(&g, v);
            f = g;
            g = if r.is_zero() { r } else { r.content_primitive(v).1.monic() };
        }
        let f = if f.degree_in(v) > 0 { f.content_primitive(v).1 } else { f };
        (&c * &f).monic()
    }

    /// Reinterprets the polynomial in a ring with the given variables, which
    /// must include every variable that occurs.
    pub fn rename(&self, vars: &Arc<[String]>) -> Result<MPoly> {
        let mut out = MPoly::zero(&self.field, vars);
        for (e, a) in &self.terms {
            let mut f = vec![0; vars.len()];
            for (k, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let j = vars.iter().position(|v| *v == self.vars[k]).ok_or_else(|| {
                    Error::UnsupportedDomain(format!("variable {} is not allowed here", self.vars[k]))
                })?;
                f[j] += x;
            }
            out.add_term(f, a.clone());
        }
        Ok(out)
    }

    pub fn parse(text: &str, field: &FieldTower, vars: &Arc<[String]>) -> Result<MPoly> {
        parse_expr(text)?.eval(&PolyRing { field: field.clone(), vars: vars.clone() })
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (e, a)) in self.terms.iter().rev().enumerate() {
            let mut c = a.to_string();
            let neg = c.starts_with('-');
            if neg {
                c.remove(0);
            }
            match (n, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mono: Vec<String> = e
                .iter()
                .zip(self.vars.iter())
                .filter(|(k, _)| **k > 0)
                .map(|(k, v)| if *k == 1 { v.clone() } else { format!("{}^{}", v, k) })
                .collect();
            if c.contains(['+', '-', '*']) {
                c = format!("({})", c);
            }
            match (c.as_str(), mono.is_empty()) {
                (_, true) => write!(f, "{}", c)?,
                ("1", false) => write!(f, "{}", mono.join("*"))?,
                (_, false) => write!(f, "{}*{}", c, mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, a) in &o.terms {
            out.add_term(e.clone(), a.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, o: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (e, a) in &o.terms {
            out.add_term(e.clone(), -a);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, o: &MPoly) -> MPoly {
        let mut out = MPoly::zero(&self.field, &self.vars);
        for (e, a) in &self.terms {
            for (f, b) in &o.terms {
                let g: Vec<u32> = e.iter().zip(f).map(|(x, y)| x + y).collect();
                out.add_term(g, a * b);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&self.field.from_int(-1))
    }
}

impl Ring for MPoly {
    fn zero_like(&self) -> Self {
        MPoly::zero(&self.field, &self.vars)
    }
    fn one_like(&self) -> Self {
        MPoly::one(&self.field, &self.vars)
    }
    fn radd(&self, o: &Self) -> Self {
        self + o
    }
    fn rsub(&self, o: &Self) -> Self {
        self - o
    }
    fn rmul(&self, o: &Self) -> Self {
        self * o
    }
    fn rneg(&self) -> Self {
        -self
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
}

/// Evaluation target for polynomial expressions in named variables.
pub struct PolyRing {
    pub field: FieldTower,
    pub vars: Arc<[String]>,
}

impl EvalTarget for PolyRing {
    type Value = MPoly;

    fn num(&self, n: &BigInt) -> Result<MPoly> {
        Ok(MPoly::constant(&self.field, &self.vars, &self.field.from_bigint(n)))
    }

    fn var(&self, name: &str) -> Result<MPoly> {
        match self.vars.iter().position(|v| v == name) {
            Some(i) => Ok(MPoly::var(&self.field, &self.vars, i)),
            None => Err(Error::Parse { pos: 0, msg: format!("unknown variable {}", name) }),
        }
    }

    fn eps(&self) -> Result<MPoly> {
        Err(Error::Parse { pos: 0, msg: "eps is not a polynomial variable".into() })
    }

    fn sqrt(&self, _arg: &Expr) -> Result<MPoly> {
        Err(Error::Parse { pos: 0, msg: "sqrt is not allowed in polynomials".into() })
    }

    fn add(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a + b
    }

    fn sub(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a - b
    }

    fn mul(&self, a: &MPoly, b: &MPoly) -> MPoly {
        a * b
    }

    fn neg(&self, a: &MPoly) -> MPoly {
        -a
    }

    fn div(&self, a: &MPoly, b: &MPoly) -> Result<MPoly> {
        if !b.is_constant() || b.is_zero() {
            return Err(Error::Parse { pos: 0, msg: "division by a nonconstant polynomial".into() });
        }
        let c = b.coeff(&vec![0; b.nvars()]);
        Ok(a.scale(&c.try_inv().ok_or(Error::ZeroElement)?))
    }

    fn pow(&self, a: &MPoly, e: i64) -> Result<MPoly> {
        if !(0..=64).contains(&e) {
            return Err(Error::Parse { pos: 0, msg: format!("exponent {} out of range", e) });
        }
        Ok(a.pow(e as u32))
    }
}
