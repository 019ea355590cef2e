//! Discrete valuations: p-adic on `Q`, irreducible-polynomial and degree
//! places on `K(t)`, and Gauss extensions to `K(t)(y)`.

use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::arith;
use super::fppoly::FpPoly;
use super::{Elem, FieldTower, Kind, Poly};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub enum ValKind {
    PAdic(u64),
    /// Monic irreducible polynomial in the top variable, coefficients in the base.
    Poly(Poly),
    /// The place at infinity of `K(t)`: `v(f) = -deg f`.
    Degree,
    /// Extension of a valuation of `K` to `K(y)` with residue field `κ(y)`.
    Gauss(Box<Valuation>),
}

#[derive(Clone, PartialEq, Eq)]
pub struct Valuation {
    field: FieldTower,
    kind: ValKind,
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            ValKind::PAdic(p) => write!(f, "{}-adic", p),
            ValKind::Poly(g) => write!(f, "({})", g.fmt_var(&self.var())),
            ValKind::Degree => write!(f, "inf({})", self.var()),
            ValKind::Gauss(inner) => write!(f, "{}", inner),
        }
    }
}

impl Valuation {
    pub fn padic(field: &FieldTower, p: u64) -> Result<Valuation> {
        if !matches!(field.kind(), Kind::Rationals) {
            return Err(Error::UnsupportedDomain(format!("p-adic valuation on {}", field)));
        }
        if p == 2 {
            return Err(Error::DyadicPlace);
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        Ok(Valuation { field: field.clone(), kind: ValKind::PAdic(p) })
    }

    /// Valuation at an irreducible polynomial in the top variable of `field`.
    pub fn poly(field: &FieldTower, f: &Poly) -> Result<Valuation> {
        let base = match field.kind() {
            Kind::Function { base, .. } => base,
            _ => return Err(Error::UnsupportedDomain(format!("polynomial place on {}", field))),
        };
        let f = f.monic();
        let deg = f.degree().unwrap_or(0);
        if deg == 0 {
            return Err(Error::NotIrreducible(f.fmt_var("t")));
        }
        let irreducible = match base.kind() {
            _ if deg == 1 => true,
            Kind::Prime { p, .. } => to_fppoly(&f, *p).is_irreducible(),
            _ if deg == 2 => {
                let b = f.coeff(1);
                let c = f.coeff(0);
                let disc = &b.square() - &(&c * &base.from_int(4));
                !disc.is_square()?
            }
            _ => {
                return Err(Error::UnsupportedDomain(format!(
                    "irreducibility of degree {} polynomials over {}",
                    deg, base
                )))
            }
        };
        if !irreducible {
            return Err(Error::NotIrreducible(f.fmt_var("t")));
        }
        Ok(Valuation { field: field.clone(), kind: ValKind::Poly(f) })
    }

    pub fn degree_place(field: &FieldTower) -> Result<Valuation> {
        match field.kind() {
            Kind::Function { .. } => Ok(Valuation { field: field.clone(), kind: ValKind::Degree }),
            _ => Err(Error::UnsupportedDomain(format!("degree place on {}", field))),
        }
    }

    /// Gauss extension of a valuation on the base of `field` (a function field).
    pub fn gauss(field: &FieldTower, inner: Valuation) -> Result<Valuation> {
        match field.kind() {
            Kind::Function { base, .. } if *base == inner.field => {
                Ok(Valuation { field: field.clone(), kind: ValKind::Gauss(Box::new(inner)) })
            }
            _ => Err(Error::UnsupportedDomain(format!("Gauss extension to {}", field))),
        }
    }

    /// A valuation of `field` from an element: a prime integer over `Q`, an
    /// irreducible polynomial in the top variable, or one in a lower variable
    /// (extended by Gauss).
    pub fn from_element(field: &FieldTower, x: &Elem) -> Result<Valuation> {
        match field.kind() {
            Kind::Rationals => {
                let r = x.as_rational().ok_or(Error::UnsupportedDomain("valuation element".into()))?;
                if !r.is_integer() {
                    return Err(Error::NotPrime(r.to_string()));
                }
                let p = r.numer().to_u64().ok_or(Error::NotPrime(r.to_string()))?;
                Valuation::padic(field, p)
            }
            Kind::Function { base, .. } => {
                if let Some(lower) = x.descend() {
                    if matches!(base.kind(), Kind::Function { .. }) {
                        let inner = Valuation::from_element(base, &lower)?;
                        return Valuation::gauss(field, inner);
                    }
                    return Err(Error::NotIrreducible(x.to_string()));
                }
                let (n, d) = x.frac_parts().unwrap();
                if !d.is_one() {
                    return Err(Error::NotIrreducible(x.to_string()));
                }
                Valuation::poly(field, n)
            }
            _ => Err(Error::UnsupportedDomain(format!("valuations on {}", field))),
        }
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn kind(&self) -> &ValKind {
        &self.kind
    }

    fn var(&self) -> String {
        match self.field.kind() {
            Kind::Function { var, .. } => var.clone(),
            _ => "t".into(),
        }
    }

    /// `v(x)`, `None` for `x = 0`.
    pub fn value(&self, x: &Elem) -> Option<i64> {
        if x.is_zero() {
            return None;
        }
        Some(match &self.kind {
            ValKind::PAdic(p) => {
                let r = x.as_rational().unwrap();
                let bp = BigInt::from(*p);
                arith::valuation_int(r.numer(), &bp) as i64 - arith::valuation_int(r.denom(), &bp) as i64
            }
            ValKind::Poly(f) => {
                let (n, d) = x.frac_parts().unwrap();
                n.split_off(f).0 as i64 - d.split_off(f).0 as i64
            }
            ValKind::Degree => {
                let (n, d) = x.frac_parts().unwrap();
                d.degree().unwrap() as i64 - n.degree().unwrap() as i64
            }
            ValKind::Gauss(inner) => {
                let (n, d) = x.frac_parts().unwrap();
                gauss_poly_value(inner, n) - gauss_poly_value(inner, d)
            }
        })
    }

    pub fn is_unit(&self, x: &Elem) -> bool {
        self.value(x) == Some(0)
    }

    pub fn is_integral(&self, x: &Elem) -> bool {
        self.value(x).is_none_or(|v| v >= 0)
    }

    pub fn uniformizer(&self) -> Elem {
        match &self.kind {
            ValKind::PAdic(p) => self.field.from_int(*p as i64),
            ValKind::Poly(f) => self.field.from_poly(f.clone()),
            ValKind::Degree => self.field.gen().try_inv().unwrap(),
            ValKind::Gauss(inner) => self.field.embed(&inner.uniformizer()),
        }
    }

    pub fn residue_field(&self) -> Result<FieldTower> {
        match &self.kind {
            ValKind::PAdic(p) => FieldTower::prime(*p),
            ValKind::Poly(f) => {
                let base = self.field.base().unwrap();
                match f.degree() {
                    Some(1) => Ok(base.clone()),
                    Some(2) => FieldTower::etale(base, &quad_disc(f)),
                    _ => Err(Error::UnsupportedDomain(format!(
                        "residue field of a degree {} place",
                        f.degree().unwrap()
                    ))),
                }
            }
            ValKind::Degree => Ok(self.field.base().unwrap().clone()),
            ValKind::Gauss(inner) => FieldTower::function(&inner.residue_field()?, &self.var()),
        }
    }

    /// Reduction of a `v`-integral element to the residue field.
    pub fn residue(&self, x: &Elem) -> Result<Elem> {
        let kappa = self.residue_field()?;
        let v = match self.value(x) {
            None => return Ok(kappa.zero()),
            Some(v) => v,
        };
        if v < 0 {
            return Err(Error::NegativeValuation);
        }
        if v > 0 {
            return Ok(kappa.zero());
        }
        match &self.kind {
            ValKind::PAdic(_) => {
                let r = x.as_rational().unwrap();
                Ok(kappa.from_ratio(r.numer(), r.denom()).unwrap())
            }
            ValKind::Poly(f) => {
                let (n, d) = x.frac_parts().unwrap();
                let theta = self.root_in_residue(f, &kappa);
                n.eval(&theta).checked_div(&d.eval(&theta))
            }
            ValKind::Degree => {
                let (n, d) = x.frac_parts().unwrap();
                n.lc().checked_div(&d.lc())
            }
            ValKind::Gauss(inner) => {
                let (n, d) = x.frac_parts().unwrap();
                let m = gauss_poly_value(inner, d);
                let pi_m = inner.uniformizer().pow(-m).unwrap();
                let kbase = kappa.base().unwrap();
                let reduce = |p: &Poly| -> Result<Poly> {
                    let c = p.coeffs().iter().map(|a| inner.residue(&(a * &pi_m))).collect::<Result<Vec<_>>>()?;
                    Ok(Poly::from_coeffs(kbase, c))
                };
                let rn = reduce(n)?;
                let rd = reduce(d)?;
                kappa.from_frac(rn, rd).ok_or(Error::NegativeValuation)
            }
        }
    }

    /// The image of the top variable in the residue field.
    fn root_in_residue(&self, f: &Poly, kappa: &FieldTower) -> Elem {
        match f.degree() {
            Some(1) => -&f.coeff(0),
            _ => {
                // f = t^2 + b t + c, root (-b + s)/2 with s^2 = b^2 - 4c
                let b = f.coeff(1);
                let s = kappa.sqrt_gen();
                (&s - &kappa.embed(&b)).half()
            }
        }
    }

    /// A `v`-integral lift of a residue-field element.
    pub fn lift(&self, r: &Elem) -> Result<Elem> {
        match &self.kind {
            ValKind::PAdic(_) => Ok(self.field.from_int(r.as_mod().unwrap() as i64)),
            ValKind::Poly(f) => match f.degree() {
                Some(1) => Ok(self.field.embed(r)),
                _ => {
                    // r = a + b*s with s = 2t + b_1
                    let (a, bb) = r.coords().unwrap();
                    let s = &self.field.gen().double() + &self.field.embed(&f.coeff(1));
                    Ok(&self.field.embed(&a) + &(&self.field.embed(&bb) * &s))
                }
            },
            ValKind::Degree => Ok(self.field.embed(r)),
            ValKind::Gauss(inner) => {
                let (n, d) = r.frac_parts().unwrap();
                let base = self.field.base().unwrap();
                let lift_poly = |p: &Poly| -> Result<Poly> {
                    let c = p.coeffs().iter().map(|a| inner.lift(a)).collect::<Result<Vec<_>>>()?;
                    Ok(Poly::from_coeffs(base, c))
                };
                self.field.from_frac(lift_poly(n)?, lift_poly(d)?).ok_or(Error::ZeroElement)
            }
        }
    }

    /// Unit part `x * pi^{-v(x)}`.
    pub fn unit_part(&self, x: &Elem) -> Result<Elem> {
        let v = self.value(x).ok_or(Error::ZeroElement)?;
        Ok(x * &self.uniformizer().pow(-v).unwrap())
    }

    /// Whether the residue of a `v`-unit is a square (works for places of any
    /// degree over a prime field).
    pub fn residue_is_square(&self, x: &Elem) -> Result<bool> {
        if let (ValKind::Poly(f), Some(Kind::Prime { p, .. })) = (&self.kind, self.field.base().map(|b| b.kind())) {
            if f.degree().unwrap() > 2 {
                let (n, d) = x.frac_parts().unwrap();
                let m = to_fppoly(f, *p);
                let nd = to_fppoly(&n.mul(d), *p);
                return Ok(m.residue_is_square(&nd));
            }
        }
        self.residue(x)?.is_square()
    }
}

fn gauss_poly_value(inner: &Valuation, p: &Poly) -> i64 {
    p.coeffs().iter().filter_map(|a| inner.value(a)).min().unwrap_or(i64::MAX)
}

fn quad_disc(f: &Poly) -> Elem {
    let b = f.coeff(1);
    let c = f.coeff(0);
    &b.square() - &(&c * &f.base().from_int(4))
}

pub fn to_fppoly(f: &Poly, p: u64) -> FpPoly {
    FpPoly::new(p, f.coeffs().iter().map(|a| a.as_mod().unwrap()).collect())
}

pub fn from_fppoly(base: &FieldTower, f: &FpPoly) -> Poly {
    Poly::from_coeffs(base, f.c.iter().map(|&a| base.from_int(a as i64)).collect())
}

impl Valuation {
    pub fn is_zero_residue(&self, x: &Elem) -> bool {
        self.value(x).is_none_or(|v| v > 0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5t() -> FieldTower {
        FieldTower::function(&FieldTower::prime(5).unwrap(), "t").unwrap()
    }

    #[test]
    fn spec_examples() {
        let k = f5t();
        let t = k.gen();
        let vt = Valuation::from_element(&k, &t).unwrap();
        let x = &t.pow(3).unwrap() + &t.pow(4).unwrap();
        assert_eq!(vt.value(&x), Some(3));
        assert_eq!(vt.value(&k.one()), Some(0));
        let q = FieldTower::rationals();
        let v3 = Valuation::padic(&q, 3).unwrap();
        assert_eq!(v3.value(&q.from_int(12)), Some(1));
        let y = (&k.one() + &t).checked_div(&(&k.one() - &t)).unwrap();
        assert!(vt.residue(&y).unwrap().is_one());
        let v5 = Valuation::padic(&q, 5).unwrap();
        assert_eq!(v5.residue(&q.from_int(7)).unwrap().as_mod(), Some(2));
        let qt = FieldTower::function(&q, "t").unwrap();
        let t = qt.gen();
        let z = (&t.square() + &qt.one()).checked_div(&(&t + &qt.from_int(2))).unwrap();
        let v1 = Valuation::from_element(&qt, &(&t - &qt.one())).unwrap();
        // (1 + 1)/(1 + 2)
        assert_eq!(v1.residue(&z).unwrap(), q.from_ratio(&2.into(), &3.into()).unwrap());
    }

    #[test]
    fn dyadic_rejected() {
        assert_eq!(Valuation::padic(&FieldTower::rationals(), 2).unwrap_err(), Error::DyadicPlace);
    }

    #[test]
    fn degree_two_place() {
        let k = f5t();
        let t = k.gen();
        let f = &t.square() + &k.from_int(2);
        let v = Valuation::from_element(&k, &f).unwrap();
        let kappa = v.residue_field().unwrap();
        assert_eq!(kappa.order(), Some(25));
        let r = v.residue(&t).unwrap();
        assert_eq!(r.square(), kappa.from_int(-2));
        let x = &t.pow(3).unwrap() + &k.from_int(4);
        let rx = v.residue(&x).unwrap();
        assert_eq!(v.residue(&v.lift(&rx).unwrap()).unwrap(), rx);
    }

    #[test]
    fn gauss_extension() {
        let kx = FieldTower::function(&FieldTower::prime(5).unwrap(), "x").unwrap();
        let kxy = FieldTower::function(&kx, "y").unwrap();
        let x = kxy.embed(&kx.gen());
        let y = kxy.gen();
        let v = Valuation::from_element(&kxy, &x).unwrap();
        assert_eq!(v.value(&(&x * &y + &x.square())), Some(1));
        assert_eq!(v.value(&(&y + &x)), Some(0));
        let r = v.residue(&(&y + &x).checked_div(&(&y.square() + &kxy.one())).unwrap()).unwrap();
        assert_eq!(r.to_string(), "y/(y^2 + 1)");
        assert_eq!(v.residue(&v.lift(&r).unwrap()).unwrap(), r);
    }

    #[test]
    fn degree_place_values() {
        let k = f5t();
        let t = k.gen();
        let v = Valuation::degree_place(&k).unwrap();
        let x = (&t.square() + &k.one()).checked_div(&t.pow(3).unwrap()).unwrap();
        assert_eq!(v.value(&x), Some(1));
        let y = (&(&t * &k.from_int(3)) + &k.one()).checked_div(&(&t + &k.one())).unwrap();
        assert_eq!(v.residue(&y).unwrap().as_mod(), Some(3));
    }
}
