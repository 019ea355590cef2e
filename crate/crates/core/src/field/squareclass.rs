//! Square roots, squareness tests and canonical square-class representatives.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::arith;
use super::{Elem, FieldTower, Kind, Poly};
use crate::error::{Error, Result};

impl Elem {
    /// A square root when one exists; errors only for domains where squareness
    /// cannot be decided.
    pub fn sqrt(&self) -> Result<Option<Elem>> {
        let t = self.tower().clone();
        if self.is_zero() {
            return Ok(Some(t.zero()));
        }
        match t.kind() {
            Kind::Rationals => {
                let r = self.as_rational().unwrap();
                if r.is_negative() {
                    return Ok(None);
                }
                let n = int_sqrt(r.numer());
                let d = int_sqrt(r.denom());
                Ok(match (n, d) {
                    (Some(n), Some(d)) => Some(t.from_rational(&BigRational::new(n, d)).unwrap()),
                    _ => None,
                })
            }
            Kind::Prime { p, .. } => Ok(arith::sqrt_mod(self.as_mod().unwrap(), *p).map(|r| t.from_int(r as i64))),
            Kind::Function { .. } => {
                let (n, d) = self.frac_parts().unwrap();
                let nd = n.mul(d);
                match poly_sqrt(&nd)? {
                    None => Ok(None),
                    Some(g) => {
                        let r = t.from_frac(g, d.clone()).unwrap();
                        debug_assert_eq!(&r * &r, *self);
                        Ok(Some(r))
                    }
                }
            }
            Kind::Etale { root: Some(_), .. } => {
                let (a, b) = self.components().unwrap();
                match (a.sqrt()?, b.sqrt()?) {
                    (Some(x), Some(y)) => Ok(Some(t.split_pair(&x, &y))),
                    _ => Ok(None),
                }
            }
            Kind::Etale { d, .. } => {
                let (a, b) = self.coords().unwrap();
                if b.is_zero() {
                    if let Some(u) = a.sqrt()? {
                        return Ok(Some(t.embed(&u)));
                    }
                    let ad = a.checked_div(d)?;
                    return Ok(a_times_gen(&t, ad.sqrt()?));
                }
                let n = match self.etale_norm().sqrt()? {
                    Some(n) => n,
                    None => return Ok(None),
                };
                for cand in [&a + &n, &a - &n] {
                    let u2 = cand.half();
                    if u2.is_zero() {
                        continue;
                    }
                    if let Some(u) = u2.sqrt()? {
                        let v = b.checked_div(&u.double())?;
                        let r = t.pair(&u, &v);
                        if r.square() == *self {
                            return Ok(Some(r));
                        }
                    }
                }
                Ok(None)
            }
            Kind::Dual { .. } => {
                let (a, b) = self.coords().unwrap();
                if a.is_zero() {
                    return Ok(if b.is_zero() { Some(t.zero()) } else { None });
                }
                match a.sqrt()? {
                    None => Ok(None),
                    Some(r) => {
                        let v = b.checked_div(&r.double())?;
                        Ok(Some(t.pair(&r, &v)))
                    }
                }
            }
        }
    }

    pub fn is_square(&self) -> Result<bool> {
        Ok(self.sqrt()?.is_some())
    }
}

fn a_times_gen(t: &FieldTower, c: Option<Elem>) -> Option<Elem> {
    c.map(|c| t.pair(&c.tower().zero(), &c))
}

fn int_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    if &r * &r == *n {
        Some(r)
    } else {
        None
    }
}

/// Square root of a polynomial over a field by coefficient matching.
pub fn poly_sqrt(f: &Poly) -> Result<Option<Poly>> {
    let base = f.base().clone();
    let deg = match f.degree() {
        None => return Ok(Some(Poly::zero(&base))),
        Some(d) => d,
    };
    if deg % 2 == 1 {
        return Ok(None);
    }
    let m = deg / 2;
    let top = match f.lc().sqrt()? {
        Some(r) => r,
        None => return Ok(None),
    };
    let two_top_inv = top.double().try_inv().ok_or(Error::CharacteristicTwo)?;
    let mut g = vec![base.zero(); m + 1];
    g[m] = top;
    for k in (0..m).rev() {
        let mut rest = base.zero();
        for i in (k + 1)..=m {
            let j = m + k - i;
            if j > k && j <= m {
                rest = &rest + &(&g[i] * &g[j]);
            }
        }
        g[k] = &(&f.coeff(m + k) - &rest) * &two_top_inv;
    }
    let g = Poly::from_coeffs(&base, g);
    if g.mul(&g) == *f {
        Ok(Some(g))
    } else {
        Ok(None)
    }
}

/// Squarefree decomposition over a field: `f = lc * prod g_i^i`.
pub fn squarefree_decomposition(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let base = f.base().clone();
    let mut out = Vec::new();
    let f = f.monic();
    if f.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    let p = base.characteristic();
    let d = f.derivative();
    if d.is_zero() {
        for (g, i) in squarefree_decomposition(&poly_pth_root(&f)?)? {
            out.push((g, i * p as u32));
        }
        return Ok(out);
    }
    let mut c = f.gcd(&d);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let z = w.exact_div(&y);
        if z.degree().unwrap_or(0) > 0 {
            out.push((z, i));
        }
        i += 1;
        c = c.exact_div(&y);
        w = y;
    }
    if c.degree().unwrap_or(0) > 0 {
        for (g, j) in squarefree_decomposition(&poly_pth_root(&c)?)? {
            out.push((g, j * p as u32));
        }
    }
    Ok(out)
}

fn poly_pth_root(f: &Poly) -> Result<Poly> {
    let base = f.base();
    let p = base.characteristic() as usize;
    if !matches!(base.kind(), Kind::Prime { .. }) {
        return Err(Error::UnsupportedDomain(format!("p-th roots of coefficients over {}", base)));
    }
    let c = f.coeffs().iter().step_by(p).cloned().collect();
    Ok(Poly::from_coeffs(base, c))
}

/// Canonical representative of the class of `x` modulo nonzero squares.
#[derive(Clone, PartialEq, Eq)]
pub struct SquareClass {
    pub rep: Elem,
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

impl fmt::Debug for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SquareClass({})", self.rep)
    }
}

impl SquareClass {
    pub fn is_trivial(&self) -> bool {
        self.rep.is_one()
    }

    /// Class equality decided by squareness of the quotient (valid even where
    /// representatives are not canonical).
    pub fn equivalent(&self, other: &SquareClass) -> Result<bool> {
        self.rep.checked_div(&other.rep)?.is_square()
    }
}

/// Canonical square-class representative over `Q`, `F_p` and rational function
/// fields; over other fields, `1` for squares and `x` itself otherwise.
pub fn squareclass_reduce(x: &Elem) -> Result<SquareClass> {
    if x.is_zero() {
        return Err(Error::ZeroElement);
    }
    let t = x.tower().clone();
    let rep = match t.kind() {
        Kind::Dual { .. } => return Err(Error::UnsupportedDomain("square classes of dual numbers".into())),
        Kind::Rationals => {
            let r = x.as_rational().unwrap();
            let n = r.numer() * r.denom();
            t.from_bigint(&arith::squarefree_part(&n)?)
        }
        Kind::Prime { p, nonresidue } => {
            if arith::legendre(x.as_mod().unwrap(), *p) == 1 {
                t.one()
            } else {
                t.from_int(*nonresidue as i64)
            }
        }
        Kind::Function { .. } => {
            let (n, d) = x.frac_parts().unwrap();
            let nd = n.mul(d);
            let lc_class = squareclass_reduce(&nd.lc())?.rep;
            let mut acc = Poly::constant(&lc_class);
            for (g, i) in squarefree_decomposition(&nd)? {
                if i % 2 == 1 {
                    acc = acc.mul(&g);
                }
            }
            t.from_poly(acc)
        }
        Kind::Etale { root: Some(_), .. } => {
            let (a, b) = x.components().unwrap();
            let ra = squareclass_reduce(a)?.rep;
            let rb = squareclass_reduce(b)?.rep;
            t.split_pair(&ra, &rb)
        }
        Kind::Etale { .. } => {
            if x.is_square()? {
                t.one()
            } else if t.is_finite() {
                finite_nonsquare(&t)?
            } else {
                x.clone()
            }
        }
    };
    Ok(SquareClass { rep })
}

/// First nonsquare of a finite field in enumeration order.
pub fn finite_nonsquare(t: &FieldTower) -> Result<Elem> {
    for x in super::enumerate::all_elements(t)? {
        if !x.is_zero() && !x.is_square()? {
            return Ok(x);
        }
    }
    Err(Error::UnsupportedDomain(format!("no nonsquare in {}", t)))
}
