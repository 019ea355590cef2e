//! Exact coefficient domains: `Q`, `F_p`, rational function fields, quadratic
//! étale algebras and dual numbers, stacked into towers of depth at most 3.

pub mod arith;
pub mod enumerate;
pub mod fppoly;
pub mod parse;
pub mod poly;
pub mod squareclass;
pub mod valuation;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
pub use poly::Poly;

pub const MAX_DEPTH: usize = 3;

#[derive(Clone)]
pub struct FieldTower(Arc<Kind>);

#[derive(Debug)]
pub enum Kind {
    Rationals,
    Prime {
        p: u64,
        nonresidue: u64,
    },
    Function {
        base: FieldTower,
        var: String,
    },
    /// `base[s]/(s^2 - d)`; `root` is a square root of `d` in `base` when the algebra splits.
    Etale {
        base: FieldTower,
        d: Elem,
        root: Option<Elem>,
    },
    Dual {
        base: FieldTower,
    },
}

impl fmt::Debug for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        match (self.kind(), other.kind()) {
            (Kind::Rationals, Kind::Rationals) => true,
            (Kind::Prime { p, .. }, Kind::Prime { p: q, .. }) => p == q,
            (Kind::Function { base: b1, var: v1 }, Kind::Function { base: b2, var: v2 }) => v1 == v2 && b1 == b2,
            (Kind::Etale { base: b1, d: d1, .. }, Kind::Etale { base: b2, d: d2, .. }) => b1 == b2 && d1 == d2,
            (Kind::Dual { base: b1 }, Kind::Dual { base: b2 }) => b1 == b2,
            _ => false,
        }
    }
}

impl Eq for FieldTower {}

impl fmt::Display for FieldTower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind() {
            Kind::Rationals => write!(f, "Q"),
            Kind::Prime { p, .. } => write!(f, "Fp:{}", p),
            Kind::Function { base, var } => write!(f, "Fun:{}:{}", base, var),
            Kind::Etale { base, d, .. } => write!(f, "Ext:{}:{}", base, d),
            Kind::Dual { base } => write!(f, "Dual:{}", base),
        }
    }
}

impl FieldTower {
    pub fn rationals() -> Self {
        FieldTower(Arc::new(Kind::Rationals))
    }

    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let nonresidue = (2..p).find(|&a| arith::legendre(a, p) == -1).unwrap_or(0);
        Ok(FieldTower(Arc::new(Kind::Prime { p, nonresidue })))
    }

    pub fn function(base: &FieldTower, var: &str) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::UnsupportedDomain(format!("rational functions over {}", base)));
        }
        if var.is_empty() || !var.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') || var == "eps" {
            return Err(Error::UnsupportedDomain(format!("variable name {:?}", var)));
        }
        if base.variables().iter().any(|v| v == var) {
            return Err(Error::UnsupportedDomain(format!("variable {} already used", var)));
        }
        Self::check_depth(base)?;
        Ok(FieldTower(Arc::new(Kind::Function { base: base.clone(), var: var.to_string() })))
    }

    /// Quadratic étale algebra `base(sqrt(d))`, split when `d` is a square in `base`.
    pub fn etale(base: &FieldTower, d: &Elem) -> Result<Self> {
        if !base.is_field() {
            return Err(Error::UnsupportedDomain(format!("étale algebra over {}", base)));
        }
        if d.is_zero() {
            return Err(Error::ZeroElement);
        }
        Self::check_depth(base)?;
        let root = d.sqrt()?;
        Ok(FieldTower(Arc::new(Kind::Etale { base: base.clone(), d: d.clone(), root })))
    }

    pub fn dual(base: &FieldTower) -> Result<Self> {
        Self::check_depth(base)?;
        Ok(FieldTower(Arc::new(Kind::Dual { base: base.clone() })))
    }

    fn check_depth(base: &FieldTower) -> Result<()> {
        if base.depth() >= MAX_DEPTH {
            Err(Error::TowerTooDeep)
        } else {
            Ok(())
        }
    }

    pub fn kind(&self) -> &Kind {
        &self.0
    }

    /// Number of constructors stacked above the prime field.
    pub fn depth(&self) -> usize {
        match self.base() {
            None => 0,
            Some(b) => 1 + b.depth(),
        }
    }

    pub fn base(&self) -> Option<&FieldTower> {
        match self.kind() {
            Kind::Rationals | Kind::Prime { .. } => None,
            Kind::Function { base, .. } | Kind::Etale { base, .. } | Kind::Dual { base } => Some(base),
        }
    }

    pub fn prime_field(&self) -> FieldTower {
        match self.base() {
            None => self.clone(),
            Some(b) => b.prime_field(),
        }
    }

    pub fn is_field(&self) -> bool {
        match self.kind() {
            Kind::Rationals | Kind::Prime { .. } | Kind::Function { .. } => true,
            Kind::Etale { root, .. } => root.is_none(),
            Kind::Dual { .. } => false,
        }
    }

    pub fn is_split_etale(&self) -> bool {
        matches!(self.kind(), Kind::Etale { root: Some(_), .. })
    }

    pub fn characteristic(&self) -> u64 {
        match self.kind() {
            Kind::Rationals => 0,
            Kind::Prime { p, .. } => *p,
            _ => self.base().unwrap().characteristic(),
        }
    }

    /// Cardinality when finite.
    pub fn order(&self) -> Option<u64> {
        match self.kind() {
            Kind::Prime { p, .. } => Some(*p),
            Kind::Etale { base, .. } => base.order().map(|q| q * q),
            Kind::Dual { base } => base.order().map(|q| q * q),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.order().is_some()
    }

    pub fn variables(&self) -> Vec<String> {
        let mut out = self.base().map(|b| b.variables()).unwrap_or_default();
        if let Kind::Function { var, .. } = self.kind() {
            out.push(var.clone());
        }
        out
    }

    pub fn nonresidue(&self) -> Option<u64> {
        match self.kind() {
            Kind::Prime { nonresidue, .. } => Some(*nonresidue),
            _ => None,
        }
    }

    fn mk(&self, repr: Repr) -> Elem {
        Elem { tower: self.clone(), repr }
    }

    pub fn zero(&self) -> Elem {
        match self.kind() {
            Kind::Rationals => self.mk(Repr::Rat(BigRational::zero())),
            Kind::Prime { .. } => self.mk(Repr::Mod(0)),
            Kind::Function { base, .. } => self.mk(Repr::Frac(Poly::zero(base), Poly::one(base))),
            Kind::Etale { base, .. } | Kind::Dual { base } => {
                self.mk(Repr::Pair(Box::new(base.zero()), Box::new(base.zero())))
            }
        }
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self.kind() {
            Kind::Rationals => self.mk(Repr::Rat(BigRational::from_integer(n.clone()))),
            Kind::Prime { p, .. } => {
                let r = n.mod_floor(&BigInt::from(*p)).to_u64().unwrap();
                self.mk(Repr::Mod(r))
            }
            _ => self.embed(&self.base().unwrap().from_bigint(n)),
        }
    }

    /// `n/d`, or `None` when `d` vanishes in this ring.
    pub fn from_ratio(&self, n: &BigInt, d: &BigInt) -> Option<Elem> {
        let den = self.from_bigint(d);
        let inv = den.try_inv()?;
        Some(&self.from_bigint(n) * &inv)
    }

    pub fn from_rational(&self, r: &BigRational) -> Option<Elem> {
        self.from_ratio(r.numer(), r.denom())
    }

    /// Image of an element of the immediate base.
    pub fn embed(&self, x: &Elem) -> Elem {
        match self.kind() {
            Kind::Function { base, .. } => {
                debug_assert!(&x.tower == base);
                self.mk(Repr::Frac(Poly::constant(x), Poly::one(base)))
            }
            Kind::Etale { root: Some(_), .. } => self.mk(Repr::Pair(Box::new(x.clone()), Box::new(x.clone()))),
            Kind::Etale { base, .. } | Kind::Dual { base } => {
                self.mk(Repr::Pair(Box::new(x.clone()), Box::new(base.zero())))
            }
            _ => panic!("embed into a prime field"),
        }
    }

    /// Image of an element of this ring or of any ring below it in the tower.
    pub fn coerce(&self, x: &Elem) -> Option<Elem> {
        if &x.tower == self {
            return Some(x.clone());
        }
        let base = self.base()?;
        let y = base.coerce(x)?;
        Some(self.embed(&y))
    }

    /// The transcendental generator of a rational function field.
    pub fn gen(&self) -> Elem {
        match self.kind() {
            Kind::Function { base, .. } => self.mk(Repr::Frac(Poly::x(base), Poly::one(base))),
            _ => panic!("gen() on a tower that is not a function field"),
        }
    }

    /// The square root `s` of `d` in an étale algebra (`(r, -r)` when split).
    pub fn sqrt_gen(&self) -> Elem {
        match self.kind() {
            Kind::Etale { root: Some(r), .. } => self.mk(Repr::Pair(Box::new(r.clone()), Box::new(-r))),
            Kind::Etale { base, .. } => self.mk(Repr::Pair(Box::new(base.zero()), Box::new(base.one()))),
            _ => panic!("sqrt_gen() on a tower that is not étale"),
        }
    }

    pub fn eps(&self) -> Elem {
        match self.kind() {
            Kind::Dual { base } => self.mk(Repr::Pair(Box::new(base.zero()), Box::new(base.one()))),
            _ => panic!("eps() on a tower that is not dual numbers"),
        }
    }

    /// Element `a + b*g` of an étale or dual algebra, where `g` is `s` or `eps`
    /// (for split algebras the coordinates are converted from the `1, s` basis).
    pub fn pair(&self, a: &Elem, b: &Elem) -> Elem {
        match self.kind() {
            Kind::Etale { root: Some(r), .. } => {
                let rb = r * b;
                self.mk(Repr::Pair(Box::new(a + &rb), Box::new(a - &rb)))
            }
            Kind::Etale { .. } | Kind::Dual { .. } => self.mk(Repr::Pair(Box::new(a.clone()), Box::new(b.clone()))),
            _ => panic!("pair() on a tower without a quadratic generator"),
        }
    }

    /// Element of a split étale algebra from its two components.
    pub fn split_pair(&self, x: &Elem, y: &Elem) -> Elem {
        assert!(self.is_split_etale());
        self.mk(Repr::Pair(Box::new(x.clone()), Box::new(y.clone())))
    }

    pub fn from_frac(&self, num: Poly, den: Poly) -> Option<Elem> {
        match self.kind() {
            Kind::Function { .. } => {
                if den.is_zero() {
                    return None;
                }
                Some(self.mk(normalize_frac(num, den)))
            }
            _ => None,
        }
    }

    pub fn from_poly(&self, num: Poly) -> Elem {
        let base = num.base().clone();
        self.from_frac(num, Poly::one(&base)).expect("not a function field")
    }
}

#[derive(Clone, PartialEq, Eq)]
enum Repr {
    Rat(BigRational),
    Mod(u64),
    Frac(Poly, Poly),
    Pair(Box<Elem>, Box<Elem>),
}

fn normalize_frac(num: Poly, den: Poly) -> Repr {
    if num.is_zero() {
        let base = den.base().clone();
        return Repr::Frac(Poly::zero(&base), Poly::one(&base));
    }
    let g = num.gcd(&den);
    let (mut n, mut d) = if g.degree() == Some(0) { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
    let lc = d.lc();
    if !lc.is_one() {
        let inv = lc.try_inv().expect("nonzero leading coefficient");
        n = n.scale(&inv);
        d = d.scale(&inv);
    }
    Repr::Frac(n, d)
}

#[derive(Clone)]
pub struct Elem {
    tower: FieldTower,
    repr: Repr,
}

impl PartialEq for Elem {
    fn eq(&self, other: &Self) -> bool {
        self.repr == other.repr
    }
}

impl Eq for Elem {}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl Elem {
    pub fn tower(&self) -> &FieldTower {
        &self.tower
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_zero(),
            Repr::Mod(m) => *m == 0,
            Repr::Frac(n, _) => n.is_zero(),
            Repr::Pair(a, b) => a.is_zero() && b.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Rat(r) => r.is_one(),
            Repr::Mod(m) => *m == 1,
            Repr::Frac(n, d) => d.is_one() && n.is_one(),
            Repr::Pair(a, b) => {
                if self.tower.is_split_etale() {
                    a.is_one() && b.is_one()
                } else {
                    a.is_one() && b.is_zero()
                }
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            _ => None,
        }
    }

    pub fn as_mod(&self) -> Option<u64> {
        match &self.repr {
            Repr::Mod(m) => Some(*m),
            _ => None,
        }
    }

    /// Numerator and (monic) denominator of a rational function.
    pub fn frac_parts(&self) -> Option<(&Poly, &Poly)> {
        match &self.repr {
            Repr::Frac(n, d) => Some((n, d)),
            _ => None,
        }
    }

    /// Raw coordinates of an étale or dual element: `(a, b)` for `a + b*g`
    /// in the nonsplit/dual case, the two components in the split case.
    pub fn components(&self) -> Option<(&Elem, &Elem)> {
        match &self.repr {
            Repr::Pair(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Coordinates `(a, b)` with `self = a + b*g` (`g = s` or `eps`), in all cases.
    pub fn coords(&self) -> Option<(Elem, Elem)> {
        match (&self.repr, self.tower.kind()) {
            (Repr::Pair(x, y), Kind::Etale { root: Some(r), .. }) => {
                let half = x.tower.from_ratio(&BigInt::one(), &BigInt::from(2)).unwrap();
                let a = &(x.as_ref() + y.as_ref()) * &half;
                let b = &(&(x.as_ref() - y.as_ref()) * &half) * &r.try_inv().unwrap();
                Some((a, b))
            }
            (Repr::Pair(a, b), _) => Some((a.as_ref().clone(), b.as_ref().clone())),
            _ => None,
        }
    }

    /// The element of the immediate base this element comes from, if any.
    pub fn descend(&self) -> Option<Elem> {
        match (&self.repr, self.tower.kind()) {
            (Repr::Frac(n, d), _) => {
                if d.is_one() && n.degree().unwrap_or(0) == 0 {
                    Some(n.coeff(0))
                } else {
                    None
                }
            }
            (Repr::Pair(a, b), Kind::Etale { root: Some(_), .. }) => {
                if a == b {
                    Some(a.as_ref().clone())
                } else {
                    None
                }
            }
            (Repr::Pair(a, b), _) => {
                if b.is_zero() {
                    Some(a.as_ref().clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Descend repeatedly to `target` (which must lie below in the tower).
    pub fn descend_to(&self, target: &FieldTower) -> Option<Elem> {
        if &self.tower == target {
            return Some(self.clone());
        }
        self.descend()?.descend_to(target)
    }

    /// The nontrivial involution of an étale algebra.
    pub fn conj(&self) -> Elem {
        match (&self.repr, self.tower.kind()) {
            (Repr::Pair(a, b), Kind::Etale { root: Some(_), .. }) => self.tower.mk(Repr::Pair(b.clone(), a.clone())),
            (Repr::Pair(a, b), Kind::Etale { .. }) => self.tower.mk(Repr::Pair(a.clone(), Box::new(-b.as_ref()))),
            _ => panic!("conj() outside an étale algebra"),
        }
    }

    /// `N_{L/K}(x) = x * conj(x)`, an element of the base.
    pub fn etale_norm(&self) -> Elem {
        match (&self.repr, self.tower.kind()) {
            (Repr::Pair(a, b), Kind::Etale { root: Some(_), .. }) => a.as_ref() * b.as_ref(),
            (Repr::Pair(a, b), Kind::Etale { d, .. }) => &(a.as_ref() * a.as_ref()) - &(&(b.as_ref() * b.as_ref()) * d),
            _ => panic!("etale_norm() outside an étale algebra"),
        }
    }

    pub fn try_inv(&self) -> Option<Elem> {
        match (&self.repr, self.tower.kind()) {
            (Repr::Rat(r), _) => {
                if r.is_zero() {
                    None
                } else {
                    Some(self.tower.mk(Repr::Rat(r.recip())))
                }
            }
            (Repr::Mod(m), Kind::Prime { p, .. }) => {
                if *m == 0 {
                    None
                } else {
                    Some(self.tower.mk(Repr::Mod(arith::inv_mod(*m, *p))))
                }
            }
            (Repr::Frac(n, d), _) => {
                if n.is_zero() {
                    None
                } else {
                    Some(self.tower.mk(normalize_frac(d.clone(), n.clone())))
                }
            }
            (Repr::Pair(a, b), Kind::Etale { root: Some(_), .. }) => {
                let ai = a.try_inv()?;
                let bi = b.try_inv()?;
                Some(self.tower.mk(Repr::Pair(Box::new(ai), Box::new(bi))))
            }
            (Repr::Pair(a, b), Kind::Etale { .. }) => {
                let ni = self.etale_norm().try_inv()?;
                Some(self.tower.mk(Repr::Pair(Box::new(a.as_ref() * &ni), Box::new(&(-b.as_ref()) * &ni))))
            }
            (Repr::Pair(a, b), Kind::Dual { .. }) => {
                let ai = a.try_inv()?;
                let bi = -&(&(b.as_ref() * &ai) * &ai);
                Some(self.tower.mk(Repr::Pair(Box::new(ai), Box::new(bi))))
            }
            _ => unreachable!(),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.try_inv().is_some()
    }

    pub fn checked_div(&self, other: &Elem) -> Result<Elem> {
        let inv = other.try_inv().ok_or(Error::ZeroElement)?;
        Ok(self * &inv)
    }

    /// Integer power; negative exponents require a unit.
    pub fn pow(&self, e: i64) -> Option<Elem> {
        let base = if e < 0 { self.try_inv()? } else { self.clone() };
        let mut n = e.unsigned_abs();
        let mut acc = self.tower.one();
        let mut sq = base;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &sq;
            }
            n >>= 1;
            if n > 0 {
                sq = &sq * &sq;
            }
        }
        Some(acc)
    }

    pub fn square(&self) -> Elem {
        self * self
    }

    pub fn double(&self) -> Elem {
        self + self
    }

    pub fn half(&self) -> Elem {
        let h = self.tower.from_ratio(&BigInt::one(), &BigInt::from(2)).unwrap();
        self * &h
    }

    /// Sign of a rational number.
    pub fn rational_sign(&self) -> Option<i32> {
        self.as_rational().map(|r| {
            if r.is_zero() {
                0
            } else if r.is_negative() {
                -1
            } else {
                1
            }
        })
    }

    fn is_atomic_text(s: &str) -> bool {
        !s.contains(' ')
    }

    pub(crate) fn paren(&self) -> String {
        let s = self.to_string();
        if Self::is_atomic_text(&s) {
            s
        } else {
            format!("({})", s)
        }
    }

    fn add_impl(&self, o: &Elem) -> Elem {
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a + b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.tower.characteristic();
                Repr::Mod((a + b) % p)
            }
            (Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                if d1 == d2 {
                    if d1.is_one() {
                        Repr::Frac(n1.add(n2), d1.clone())
                    } else {
                        normalize_frac(n1.add(n2), d1.clone())
                    }
                } else {
                    normalize_frac(n1.mul(d2).add(&n2.mul(d1)), d1.mul(d2))
                }
            }
            (Repr::Pair(a1, b1), Repr::Pair(a2, b2)) => {
                Repr::Pair(Box::new(a1.as_ref() + a2.as_ref()), Box::new(b1.as_ref() + b2.as_ref()))
            }
            _ => panic!("mismatched towers in addition: {} vs {}", self.tower, o.tower),
        };
        self.tower.mk(repr)
    }

    fn neg_impl(&self) -> Elem {
        let repr = match &self.repr {
            Repr::Rat(a) => Repr::Rat(-a),
            Repr::Mod(a) => {
                let p = self.tower.characteristic();
                Repr::Mod((p - a) % p)
            }
            Repr::Frac(n, d) => Repr::Frac(n.neg(), d.clone()),
            Repr::Pair(a, b) => Repr::Pair(Box::new(-a.as_ref()), Box::new(-b.as_ref())),
        };
        self.tower.mk(repr)
    }

    fn mul_impl(&self, o: &Elem) -> Elem {
        let repr = match (&self.repr, &o.repr) {
            (Repr::Rat(a), Repr::Rat(b)) => Repr::Rat(a * b),
            (Repr::Mod(a), Repr::Mod(b)) => {
                let p = self.tower.characteristic();
                Repr::Mod(((*a as u128 * *b as u128) % p as u128) as u64)
            }
            (Repr::Frac(n1, d1), Repr::Frac(n2, d2)) => {
                if d1.is_one() && d2.is_one() {
                    Repr::Frac(n1.mul(n2), d1.clone())
                } else {
                    normalize_frac(n1.mul(n2), d1.mul(d2))
                }
            }
            (Repr::Pair(a1, b1), Repr::Pair(a2, b2)) => match self.tower.kind() {
                Kind::Etale { root: Some(_), .. } => {
                    Repr::Pair(Box::new(a1.as_ref() * a2.as_ref()), Box::new(b1.as_ref() * b2.as_ref()))
                }
                Kind::Etale { d, .. } => {
                    let re = &(a1.as_ref() * a2.as_ref()) + &(&(b1.as_ref() * b2.as_ref()) * d);
                    let im = &(a1.as_ref() * b2.as_ref()) + &(b1.as_ref() * a2.as_ref());
                    Repr::Pair(Box::new(re), Box::new(im))
                }
                Kind::Dual { .. } => {
                    let re = a1.as_ref() * a2.as_ref();
                    let im = &(a1.as_ref() * b2.as_ref()) + &(b1.as_ref() * a2.as_ref());
                    Repr::Pair(Box::new(re), Box::new(im))
                }
                _ => unreachable!(),
            },
            _ => panic!("mismatched towers in multiplication: {} vs {}", self.tower, o.tower),
        };
        self.tower.mk(repr)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.repr, self.tower.kind()) {
            (Repr::Rat(r), _) => write!(f, "{}", r),
            (Repr::Mod(m), _) => write!(f, "{}", m),
            (Repr::Frac(n, d), Kind::Function { var, .. }) => {
                let ns = n.fmt_var(var);
                if d.is_one() {
                    return write!(f, "{}", ns);
                }
                let ds = d.fmt_var(var);
                let wrap = |s: String| if Elem::is_atomic_text(&s) { s } else { format!("({})", s) };
                write!(f, "{}/{}", wrap(ns), wrap(ds))
            }
            (Repr::Pair(a, b), Kind::Etale { root: Some(_), .. }) => write!(f, "({}, {})", a, b),
            (Repr::Pair(a, b), kind) => {
                let g = match kind {
                    Kind::Etale { d, .. } => format!("sqrt({})", d),
                    _ => "eps".to_string(),
                };
                join_terms(f, &[(a.as_ref().clone(), None), (b.as_ref().clone(), Some(g))])
            }
            _ => unreachable!(),
        }
    }
}

/// Writes `c0*m0 + c1*m1 + ...`, skipping zero coefficients.
pub(crate) fn join_terms(f: &mut fmt::Formatter<'_>, terms: &[(Elem, Option<String>)]) -> fmt::Result {
    let mut parts: Vec<String> = Vec::new();
    for (c, m) in terms {
        if c.is_zero() {
            continue;
        }
        parts.push(term_text(c, m.as_deref()));
    }
    if parts.is_empty() {
        return write!(f, "0");
    }
    write!(f, "{}", join_signed(&parts))
}

pub(crate) fn term_text(c: &Elem, mono: Option<&str>) -> String {
    match mono {
        None => c.to_string(),
        Some(m) => {
            if c.is_one() {
                m.to_string()
            } else if (-c).is_one() {
                format!("-{}", m)
            } else {
                format!("{}*{}", c.paren(), m)
            }
        }
    }
}

pub(crate) fn join_signed(parts: &[String]) -> String {
    let mut out = String::new();
    for (i, p) in parts.iter().enumerate() {
        if i == 0 {
            out.push_str(p);
        } else if let Some(rest) = p.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(p);
        }
    }
    out
}

macro_rules! binop {
    ($tr:ident, $m:ident, $imp:ident) => {
        impl $tr<&Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                self.$imp(o)
            }
        }
        impl $tr<Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                (&self).$imp(&o)
            }
        }
        impl $tr<&Elem> for Elem {
            type Output = Elem;
            fn $m(self, o: &Elem) -> Elem {
                (&self).$imp(o)
            }
        }
        impl $tr<Elem> for &Elem {
            type Output = Elem;
            fn $m(self, o: Elem) -> Elem {
                self.$imp(&o)
            }
        }
    };
}

impl Elem {
    fn sub_impl(&self, o: &Elem) -> Elem {
        self.add_impl(&o.neg_impl())
    }
}

binop!(Add, add, add_impl);
binop!(Sub, sub, sub_impl);
binop!(Mul, mul, mul_impl);

impl Neg for &Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}

impl Neg for Elem {
    type Output = Elem;
    fn neg(self) -> Elem {
        self.neg_impl()
    }
}
