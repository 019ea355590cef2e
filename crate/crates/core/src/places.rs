//! Places of the global fields `Q` and `F_p(t)`: local values, Hilbert
//! symbols, local squares, and Hasse–Minkowski isotropy of diagonal forms.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::field::arith;
use crate::field::fppoly::{fp_is_square, FpPoly};
use crate::field::valuation::{from_fppoly, to_fppoly, Valuation};
use crate::field::{Elem, FieldTower, Kind};

#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Place {
    /// The real place of `Q`.
    Real,
    /// A finite prime of `Q`.
    Prime(u64),
    /// A monic irreducible of `F_p[t]`.
    Finite(FpPoly),
    /// The degree place of `F_p(t)`.
    Infinite,
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => write!(f, "real"),
            Place::Prime(p) => write!(f, "{}", p),
            Place::Finite(g) => write!(f, "({})", g.fmt_var("t")),
            Place::Infinite => write!(f, "inf"),
        }
    }
}

impl Place {
    /// Display with the field's own variable name.
    pub fn describe(&self, field: &FieldTower) -> String {
        match (self, field.variables().last()) {
            (Place::Finite(g), Some(v)) => format!("({})", g.fmt_var(v)),
            _ => self.to_string(),
        }
    }

    /// The corresponding discrete valuation (not available for the real place).
    pub fn valuation(&self, field: &FieldTower) -> Result<Valuation> {
        match self {
            Place::Real => Err(Error::UnsupportedDomain("the real place is archimedean".into())),
            Place::Prime(p) => Valuation::padic(field, *p),
            Place::Finite(g) => Valuation::poly(field, &from_fppoly(field.base().unwrap(), g)),
            Place::Infinite => Valuation::degree_place(field),
        }
    }
}

/// `Q`, or `F_p(t)` with `p` returned.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Global {
    Rationals,
    Function(u64),
}

pub fn global_kind(t: &FieldTower) -> Option<Global> {
    match t.kind() {
        Kind::Rationals => Some(Global::Rationals),
        Kind::Function { base, .. } => match base.kind() {
            Kind::Prime { p, .. } => Some(Global::Function(*p)),
            _ => None,
        },
        _ => None,
    }
}

fn int_rep(x: &Elem) -> BigInt {
    let r = x.as_rational().unwrap();
    r.numer() * r.denom()
}

fn poly_parts(x: &Elem, p: u64) -> (FpPoly, FpPoly) {
    let (n, d) = x.frac_parts().unwrap();
    (to_fppoly(n, p), to_fppoly(d, p))
}

/// The places at which some element of `elems` is not a unit, together with
/// `2` and the real place (over `Q`) or the infinite place (over `F_p(t)`).
pub fn bad_places(t: &FieldTower, elems: &[Elem]) -> Result<Vec<Place>> {
    match global_kind(t) {
        Some(Global::Rationals) => {
            let mut ps: Vec<u64> = vec![2];
            for x in elems.iter().filter(|x| !x.is_zero()) {
                for q in arith::prime_divisors(&int_rep(x))? {
                    ps.push(q.to_u64().ok_or_else(|| Error::FactorizationLimit(q.to_string()))?);
                }
            }
            ps.sort_unstable();
            ps.dedup();
            let mut out = vec![Place::Real];
            out.extend(ps.into_iter().map(Place::Prime));
            Ok(out)
        }
        Some(Global::Function(p)) => {
            let mut fs: Vec<FpPoly> = Vec::new();
            for x in elems.iter().filter(|x| !x.is_zero()) {
                let (n, d) = poly_parts(x, p);
                for (g, _) in n.mul(&d).factor() {
                    fs.push(g);
                }
            }
            fs.sort_by(|a, b| a.degree().cmp(&b.degree()).then(a.c.cmp(&b.c)));
            fs.dedup();
            let mut out: Vec<Place> = fs.into_iter().map(Place::Finite).collect();
            out.push(Place::Infinite);
            Ok(out)
        }
        None => Err(Error::UnsupportedDomain(format!("{} is not Q or F_p(t)", t))),
    }
}

fn fp_mult(f: &FpPoly, g: &FpPoly) -> (i64, FpPoly) {
    let mut k = 0;
    let mut cur = f.clone();
    loop {
        let (q, r) = cur.divrem(g);
        if !r.is_zero() {
            return (k, cur);
        }
        k += 1;
        cur = q;
    }
}

/// Local value and the residue-square test of the unit part, for nonzero `x`.
fn split_local(x: &Elem, place: &Place) -> Result<(i64, bool)> {
    match place {
        Place::Real => Err(Error::UnsupportedDomain("real place has no valuation".into())),
        Place::Prime(p) => {
            let r = x.as_rational().unwrap();
            let bp = BigInt::from(*p);
            let vn = arith::valuation_int(r.numer(), &bp) as i64;
            let vd = arith::valuation_int(r.denom(), &bp) as i64;
            let mut u = r.numer() * r.denom();
            for _ in 0..(vn + vd) {
                u /= &bp;
            }
            let sq = if *p == 2 {
                u.mod_floor(&BigInt::from(8)) == BigInt::from(1)
            } else {
                arith::legendre_big(&u, *p) == 1
            };
            Ok((vn - vd, sq))
        }
        Place::Finite(g) => {
            let (n, d) = poly_parts(x, g.p);
            let (vn, n1) = fp_mult(&n, g);
            let (vd, d1) = fp_mult(&d, g);
            Ok((vn - vd, g.residue_is_square(&n1.mul(&d1))))
        }
        Place::Infinite => {
            let (n, d) = poly_parts(x, x.tower().characteristic());
            let v = d.degree().unwrap() as i64 - n.degree().unwrap() as i64;
            let p = n.p;
            Ok((v, fp_is_square(n.lc() * d.lc() % p, p)))
        }
    }
}

pub fn local_value(x: &Elem, place: &Place) -> Result<i64> {
    Ok(split_local(x, place)?.0)
}

/// Whether nonzero `x` is a square in the completion at `place`.
pub fn local_is_square(x: &Elem, place: &Place) -> Result<bool> {
    if x.is_zero() {
        return Ok(true);
    }
    if *place == Place::Real {
        return Ok(x.rational_sign() == Some(1));
    }
    let (v, sq) = split_local(x, place)?;
    Ok(v % 2 == 0 && sq)
}

/// Hilbert symbol `(a, b)_v ∈ {±1}` for nonzero `a`, `b`.
pub fn hilbert(a: &Elem, b: &Elem, place: &Place) -> Result<i32> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::ZeroElement);
    }
    match place {
        Place::Real => Ok(arith::hilbert_symbol(&int_rep(a), &int_rep(b), None)),
        Place::Prime(p) => Ok(arith::hilbert_symbol(&int_rep(a), &int_rep(b), Some(&BigInt::from(*p)))),
        Place::Finite(_) | Place::Infinite => {
            // tame symbol (-1)^{αβ} a^β / b^α, then its residue's quadratic character
            let al = local_value(a, place)?;
            let be = local_value(b, place)?;
            let mut c = &a.pow(be).unwrap() * &b.pow(-al).unwrap();
            if (al * be) % 2 != 0 {
                c = -c;
            }
            let (v, sq) = split_local(&c, place)?;
            debug_assert_eq!(v, 0);
            Ok(if sq { 1 } else { -1 })
        }
    }
}

/// Isotropy of `⟨a_1,…,a_n⟩` (nonzero coefficients) over the completion.
pub fn local_isotropic(coeffs: &[Elem], place: &Place) -> Result<bool> {
    let n = coeffs.len();
    if n <= 1 {
        return Ok(false);
    }
    if *place == Place::Real {
        let pos = coeffs.iter().any(|a| a.rational_sign() == Some(1));
        let neg = coeffs.iter().any(|a| a.rational_sign() == Some(-1));
        return Ok(pos && neg);
    }
    if n >= 5 {
        return Ok(true);
    }
    let t = coeffs[0].tower();
    let d = coeffs.iter().fold(t.one(), |acc, a| &acc * a);
    if n == 2 {
        return local_is_square(&-&d, place);
    }
    let mut eps = 1;
    for i in 0..n {
        for j in (i + 1)..n {
            eps *= hilbert(&coeffs[i], &coeffs[j], place)?;
        }
    }
    let m1 = t.from_int(-1);
    if n == 3 {
        Ok(hilbert(&m1, &-&d, place)? == eps)
    } else {
        Ok(!local_is_square(&d, place)? || eps == hilbert(&m1, &m1, place)?)
    }
}

/// A place where `⟨a_1,…,a_n⟩` is anisotropic, if any (so `None` means
/// isotropic by Hasse–Minkowski).
pub fn anisotropic_place(coeffs: &[Elem]) -> Result<Option<Place>> {
    let t = coeffs[0].tower().clone();
    for place in bad_places(&t, coeffs)? {
        if !local_isotropic(coeffs, &place)? {
            return Ok(Some(place));
        }
    }
    Ok(None)
}

/// Exact isotropy decision for diagonal forms over finite fields, `Q` and
/// `F_p(t)`; `None` where no decision procedure is implemented.
pub fn decide_isotropic(coeffs: &[Elem]) -> Result<Option<bool>> {
    let Some(first) = coeffs.first() else {
        return Ok(Some(false));
    };
    let t = first.tower().clone();
    if !t.is_field() {
        return Err(Error::UnsupportedDomain(format!("{} is not a field", t)));
    }
    if coeffs.iter().any(|a| a.is_zero()) {
        return Ok(Some(true));
    }
    match coeffs.len() {
        1 => return Ok(Some(false)),
        2 => return Ok(Some((-&coeffs[0].checked_div(&coeffs[1])?).is_square()?)),
        _ => {}
    }
    if t.is_finite() {
        return Ok(Some(true));
    }
    match global_kind(&t) {
        Some(Global::Rationals) if coeffs.len() >= 5 => Ok(Some(local_isotropic(coeffs, &Place::Real)?)),
        Some(Global::Function(_)) if coeffs.len() >= 5 => Ok(Some(true)),
        Some(_) => Ok(Some(anisotropic_place(coeffs)?.is_none())),
        None => Ok(None),
    }
}

/// `x > 0` for rationals, used by positive-definiteness cross-checks.
pub fn is_positive(x: &Elem) -> bool {
    x.as_rational().is_some_and(|r| r.is_positive())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(t: &FieldTower, xs: &[i64]) -> Vec<Elem> {
        xs.iter().map(|&x| t.from_int(x)).collect()
    }

    #[test]
    fn sum_of_four_squares_over_q() {
        let q = FieldTower::rationals();
        let c = ints(&q, &[1, 1, 1, 1]);
        assert_eq!(decide_isotropic(&c).unwrap(), Some(false));
        assert!(!local_isotropic(&c, &Place::Real).unwrap());
        assert!(!local_isotropic(&c, &Place::Prime(2)).unwrap());
        assert!(local_isotropic(&c, &Place::Prime(3)).unwrap());
        assert_eq!(decide_isotropic(&ints(&q, &[1, 1, 1, -1])).unwrap(), Some(true));
        // x^2 + y^2 = 3 z^2 has no rational solution
        assert_eq!(decide_isotropic(&ints(&q, &[1, 1, -3])).unwrap(), Some(false));
        assert_eq!(decide_isotropic(&ints(&q, &[1, 1, -2])).unwrap(), Some(true));
        assert_eq!(decide_isotropic(&ints(&q, &[1, 1, 1, 1, -7])).unwrap(), Some(true));
    }

    #[test]
    fn hilbert_product_formula_over_function_field() {
        let f5 = FieldTower::prime(5).unwrap();
        let k = FieldTower::function(&f5, "t").unwrap();
        let t = k.gen();
        let samples = [
            (t.clone(), k.from_int(2)),
            (&t + &k.one(), &t * &t + &k.from_int(2)),
            (&t * &(&t - &k.from_int(3)), k.from_int(3) * t.clone()),
        ];
        for (a, b) in samples {
            let mut prod = 1;
            for place in bad_places(&k, &[a.clone(), b.clone()]).unwrap() {
                prod *= hilbert(&a, &b, &place).unwrap();
            }
            assert_eq!(prod, 1);
        }
        // (t, 2) ramifies at (t): residue 2 is a nonsquare mod 5
        assert_eq!(hilbert(&t, &k.from_int(2), &Place::Finite(FpPoly::x(5))).unwrap(), -1);
    }

    #[test]
    fn function_field_isotropy() {
        let f5 = FieldTower::prime(5).unwrap();
        let k = FieldTower::function(&f5, "t").unwrap();
        let t = k.gen();
        // <1, -2, -t, 2t> is the norm form of (2, t), which is nonsplit
        let c = vec![k.one(), k.from_int(-2), -t.clone(), &t * &k.from_int(2)];
        assert_eq!(decide_isotropic(&c).unwrap(), Some(false));
        let c = vec![k.one(), k.from_int(-1), -t.clone(), t.clone()];
        assert_eq!(decide_isotropic(&c).unwrap(), Some(true));
    }
}
