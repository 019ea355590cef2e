//! Dense univariate polynomials with coefficients in a [`FieldTower`].

use super::{join_signed, term_text, Elem, FieldTower};

#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    base: FieldTower,
    c: Vec<Elem>,
}

impl std::fmt::Debug for Poly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_var("T"))
    }
}

impl Poly {
    pub fn from_coeffs(base: &FieldTower, mut c: Vec<Elem>) -> Poly {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { base: base.clone(), c }
    }

    pub fn zero(base: &FieldTower) -> Poly {
        Poly { base: base.clone(), c: Vec::new() }
    }

    pub fn one(base: &FieldTower) -> Poly {
        Poly::constant(&base.one())
    }

    pub fn constant(x: &Elem) -> Poly {
        Poly::from_coeffs(x.tower(), vec![x.clone()])
    }

    pub fn x(base: &FieldTower) -> Poly {
        Poly::from_coeffs(base, vec![base.zero(), base.one()])
    }

    pub fn monomial(x: &Elem, deg: usize) -> Poly {
        let mut c = vec![x.tower().zero(); deg];
        c.push(x.clone());
        Poly::from_coeffs(x.tower(), c)
    }

    pub fn base(&self) -> &FieldTower {
        &self.base
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.c.is_empty() {
            None
        } else {
            Some(self.c.len() - 1)
        }
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.c.get(i).cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn lc(&self) -> Elem {
        self.c.last().cloned().unwrap_or_else(|| self.base.zero())
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| &self.coeff(i) + &o.coeff(i)).collect();
        Poly::from_coeffs(&self.base, c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Poly {
        Poly { base: self.base.clone(), c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(&self.base);
        }
        let mut c = vec![self.base.zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = &c[i + j] + &(a * b);
            }
        }
        Poly::from_coeffs(&self.base, c)
    }

    pub fn scale(&self, x: &Elem) -> Poly {
        Poly::from_coeffs(&self.base, self.c.iter().map(|a| a * x).collect())
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut acc = Poly::one(&self.base);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; the divisor's leading coefficient must be a unit.
    pub fn divrem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by zero polynomial");
        let inv = d.lc().try_inv().expect("leading coefficient must be a unit");
        let mut r = self.c.clone();
        let n = self.c.len();
        if n <= dd {
            return (Poly::zero(&self.base), self.clone());
        }
        let mut q = vec![self.base.zero(); n - dd];
        for i in (dd..n).rev() {
            let coef = &r[i] * &inv;
            if coef.is_zero() {
                continue;
            }
            for (j, dc) in d.c.iter().enumerate() {
                r[i - dd + j] = &r[i - dd + j] - &(&coef * dc);
            }
            q[i - dd] = coef;
        }
        r.truncate(dd);
        (Poly::from_coeffs(&self.base, q), Poly::from_coeffs(&self.base, r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divrem(d).1
    }

    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, o: &Poly) -> bool {
        o.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().try_inv().expect("unit leading coefficient"))
    }

    /// Monic gcd (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Poly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, a)| a * &self.base.from_int(i as i64)).collect();
        Poly::from_coeffs(&self.base, c)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let mut acc = x.tower().zero();
        for a in self.c.iter().rev() {
            let a = x.tower().coerce(a).expect("coefficient not coercible");
            acc = &(&acc * x) + &a;
        }
        acc
    }

    /// Multiplicity of `f` as a factor (f nonconstant), and the cofactor.
    pub fn split_off(&self, f: &Poly) -> (u32, Poly) {
        let mut k = 0;
        let mut cur = self.clone();
        loop {
            let (q, r) = cur.divrem(f);
            if !r.is_zero() || cur.is_zero() {
                return (k, cur);
            }
            k += 1;
            cur = q;
        }
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let mono = match i {
                0 => None,
                1 => Some(var.to_string()),
                _ => Some(format!("{}^{}", var, i)),
            };
            parts.push(term_text(a, mono.as_deref()));
        }
        join_signed(&parts)
    }
}
