//! Polynomials over `F_p` with machine-word coefficients: factorization
//! (squarefree, distinct-degree, equal-degree) and residue arithmetic in
//! `F_p[t]/(P)`.

use super::arith::{inv_mod, pow_mod};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FpPoly {
    pub p: u64,
    /// Coefficients, constant term first, no trailing zeros.
    pub c: Vec<u64>,
}

impl std::fmt::Debug for FpPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.fmt_var("t"))
    }
}

impl FpPoly {
    pub fn new(p: u64, mut c: Vec<u64>) -> FpPoly {
        for x in c.iter_mut() {
            *x %= p;
        }
        while c.last() == Some(&0) {
            c.pop();
        }
        FpPoly { p, c }
    }

    pub fn zero(p: u64) -> FpPoly {
        FpPoly { p, c: vec![] }
    }

    pub fn one(p: u64) -> FpPoly {
        FpPoly::new(p, vec![1])
    }

    pub fn x(p: u64) -> FpPoly {
        FpPoly::new(p, vec![0, 1])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c == [1]
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> u64 {
        *self.c.last().unwrap_or(&0)
    }

    fn mulm(&self, a: u64, b: u64) -> u64 {
        (a as u128 * b as u128 % self.p as u128) as u64
    }

    pub fn add(&self, o: &FpPoly) -> FpPoly {
        let n = self.c.len().max(o.c.len());
        let c = (0..n).map(|i| (self.c.get(i).unwrap_or(&0) + o.c.get(i).unwrap_or(&0)) % self.p).collect();
        FpPoly::new(self.p, c)
    }

    pub fn neg(&self) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| (self.p - a) % self.p).collect())
    }

    pub fn sub(&self, o: &FpPoly) -> FpPoly {
        self.add(&o.neg())
    }

    pub fn scale(&self, k: u64) -> FpPoly {
        FpPoly::new(self.p, self.c.iter().map(|&a| self.mulm(a, k % self.p)).collect())
    }

    pub fn mul(&self, o: &FpPoly) -> FpPoly {
        if self.is_zero() || o.is_zero() {
            return FpPoly::zero(self.p);
        }
        let mut c = vec![0u64; self.c.len() + o.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.c.iter().enumerate() {
                c[i + j] = (c[i + j] + self.mulm(a, b)) % self.p;
            }
        }
        FpPoly::new(self.p, c)
    }

    pub fn divrem(&self, d: &FpPoly) -> (FpPoly, FpPoly) {
        let dd = d.degree().expect("division by zero");
        if self.c.len() <= dd {
            return (FpPoly::zero(self.p), self.clone());
        }
        let inv = inv_mod(d.lc(), self.p);
        let mut r = self.c.clone();
        let mut q = vec![0u64; self.c.len() - dd];
        for i in (dd..self.c.len()).rev() {
            let coef = self.mulm(r[i], inv);
            if coef == 0 {
                continue;
            }
            q[i - dd] = coef;
            for (j, &dc) in d.c.iter().enumerate() {
                let sub = self.mulm(coef, dc);
                r[i - dd + j] = (r[i - dd + j] + self.p - sub) % self.p;
            }
        }
        r.truncate(dd);
        (FpPoly::new(self.p, q), FpPoly::new(self.p, r))
    }

    pub fn rem(&self, d: &FpPoly) -> FpPoly {
        self.divrem(d).1
    }

    pub fn monic(&self) -> FpPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(inv_mod(self.lc(), self.p))
    }

    pub fn gcd(&self, o: &FpPoly) -> FpPoly {
        let mut a = self.clone();
        let mut b = o.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> FpPoly {
        let c = self.c.iter().enumerate().skip(1).map(|(i, &a)| self.mulm(a, i as u64 % self.p)).collect();
        FpPoly::new(self.p, c)
    }

    pub fn mulmod(&self, o: &FpPoly, m: &FpPoly) -> FpPoly {
        self.mul(o).rem(m)
    }

    pub fn powmod(&self, mut e: u128, m: &FpPoly) -> FpPoly {
        let mut acc = FpPoly::one(self.p).rem(m);
        let mut b = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&b, m);
            }
            b = b.mulmod(&b, m);
            e >>= 1;
        }
        acc
    }

    pub fn eval(&self, x: u64) -> u64 {
        let mut acc = 0u64;
        for &a in self.c.iter().rev() {
            acc = (self.mulm(acc, x) + a) % self.p;
        }
        acc
    }

    /// `p`-th root of a polynomial whose derivative vanishes.
    fn pth_root(&self) -> FpPoly {
        let p = self.p as usize;
        let c = self.c.iter().step_by(p).copied().collect();
        FpPoly::new(self.p, c)
    }

    /// Squarefree factorization of a monic polynomial: list of `(g_i, i)` with
    /// `self = prod g_i^i` and the `g_i` squarefree and pairwise coprime.
    pub fn squarefree_factorization(&self) -> Vec<(FpPoly, u32)> {
        let f = self.monic();
        let mut out = Vec::new();
        if f.degree().unwrap_or(0) == 0 {
            return out;
        }
        let d = f.derivative();
        if d.is_zero() {
            for (g, i) in f.pth_root().squarefree_factorization() {
                out.push((g, i * self.p as u32));
            }
            return out;
        }
        let mut c = f.gcd(&d);
        let mut w = f.divrem(&c).0;
        let mut i = 1;
        while w.degree().unwrap_or(0) > 0 {
            let y = w.gcd(&c);
            let z = w.divrem(&y).0;
            if z.degree().unwrap_or(0) > 0 {
                out.push((z, i));
            }
            i += 1;
            w = y;
            c = c.divrem(&w).0;
        }
        if c.degree().unwrap_or(0) > 0 {
            for (g, j) in c.pth_root().squarefree_factorization() {
                out.push((g, j * self.p as u32));
            }
        }
        out
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    fn distinct_degree(&self) -> Vec<(FpPoly, usize)> {
        let mut out = Vec::new();
        let mut f = self.clone();
        let x = FpPoly::x(self.p);
        let mut h = x.rem(&f);
        let mut d = 1;
        while f.degree().unwrap_or(0) >= 2 * d {
            h = h.powmod(self.p as u128, &f);
            let g = f.gcd(&h.sub(&x));
            if g.degree().unwrap_or(0) > 0 {
                f = f.divrem(&g).0;
                h = h.rem(&f);
                out.push((g, d));
            }
            d += 1;
        }
        if f.degree().unwrap_or(0) > 0 {
            let deg = f.degree().unwrap();
            out.push((f, deg));
        }
        out
    }

    /// Splits a product of distinct irreducibles of degree `d` (Cantor–Zassenhaus,
    /// with candidate polynomials enumerated deterministically).
    fn equal_degree(&self, d: usize) -> Vec<FpPoly> {
        let n = self.degree().unwrap();
        if n == d {
            return vec![self.clone()];
        }
        let q = (self.p as u128).pow(d as u32);
        let e = (q - 1) / 2;
        let mut seed: u64 = 1;
        loop {
            // candidate: polynomial of degree < n encoded by `seed` in base p
            let mut coeffs = Vec::new();
            let mut s = seed;
            while s > 0 {
                coeffs.push(s % self.p);
                s /= self.p;
            }
            seed += 1;
            let a = FpPoly::new(self.p, coeffs);
            if a.degree().unwrap_or(0) == 0 || a.degree().unwrap() >= n {
                continue;
            }
            let g = self.gcd(&a);
            let split = if g.degree().unwrap_or(0) > 0 {
                g
            } else {
                let b = a.powmod(e, self).sub(&FpPoly::one(self.p));
                self.gcd(&b)
            };
            let k = split.degree().unwrap_or(0);
            if k > 0 && k < n {
                let other = self.divrem(&split).0;
                let mut out = split.equal_degree(d);
                out.extend(other.equal_degree(d));
                return out;
            }
        }
    }

    /// Monic irreducible factorization, sorted by (degree, coefficients).
    pub fn factor(&self) -> Vec<(FpPoly, u32)> {
        let mut out = Vec::new();
        for (g, mult) in self.squarefree_factorization() {
            for (h, d) in g.distinct_degree() {
                for irr in h.equal_degree(d) {
                    out.push((irr.monic(), mult));
                }
            }
        }
        out.sort_by(|a, b| a.0.degree().cmp(&b.0.degree()).then(a.0.c.cmp(&b.0.c)));
        out
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1
            }
        }
    }

    /// Whether a residue class `a mod self` (self irreducible of degree k) is a
    /// square in `F_{p^k}`.
    pub fn residue_is_square(&self, a: &FpPoly) -> bool {
        let a = a.rem(self);
        if a.is_zero() {
            return true;
        }
        let q = (self.p as u128).pow(self.degree().unwrap() as u32);
        a.powmod((q - 1) / 2, self).is_one()
    }

    pub fn fmt_var(&self, var: &str) -> String {
        if self.c.is_empty() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (i, &a) in self.c.iter().enumerate().rev() {
            if a == 0 {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{}^{}", var, i),
            };
            parts.push(if i == 0 {
                a.to_string()
            } else if a == 1 {
                mono
            } else {
                format!("{}*{}", a, mono)
            });
        }
        parts.join(" + ")
    }
}

/// Whether `a` is a square modulo the odd prime `p`.
pub fn fp_is_square(a: u64, p: u64) -> bool {
    a.is_multiple_of(p) || pow_mod(a, (p - 1) / 2, p) == 1
}
