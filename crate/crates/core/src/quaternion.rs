//! Quaternion algebras `(a, b)`: `i² = a`, `j² = b`, `ij = −ji = k`, with
//! splitting certificates, tame residues and projection-formula
//! corestriction.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::squareclass::{squareclass_reduce, squarefree_decomposition, SquareClass};
use crate::field::valuation::Valuation;
use crate::field::{Elem, FieldTower, Kind};
use crate::linalg::fmt_vec;
use crate::places::{bad_places, global_kind, hilbert, local_is_square, Global, Place};
use crate::quadform::QuadForm;
use crate::search::{find_isotropic, find_representation};

#[derive(Clone, PartialEq, Debug)]
pub struct QuaternionAlgebra {
    base: FieldTower,
    a: Elem,
    b: Elem,
}

impl fmt::Display for QuaternionAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) over {}", self.a, self.b, self.base)
    }
}

impl QuaternionAlgebra {
    /// Slots must be units of the base.
    pub fn new(a: &Elem, b: &Elem) -> Result<QuaternionAlgebra> {
        if a.tower() != b.tower() {
            return Err(Error::DimensionMismatch("slots live in different fields".into()));
        }
        if a.try_inv().is_none() || b.try_inv().is_none() {
            return Err(Error::ZeroSlot);
        }
        let q = QuaternionAlgebra { base: a.tower().clone(), a: a.clone(), b: b.clone() };
        if !q.is_associative() {
            return Err(Error::ContractViolation);
        }
        Ok(q)
    }

    pub fn base(&self) -> &FieldTower {
        &self.base
    }

    pub fn a(&self) -> &Elem {
        &self.a
    }

    pub fn b(&self) -> &Elem {
        &self.b
    }

    pub fn basis(&self) -> Vec<Vec<Elem>> {
        (0..4).map(|i| (0..4).map(|j| if i == j { self.base.one() } else { self.base.zero() }).collect()).collect()
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let (a, b) = (&self.a, &self.b);
        let ab = a * b;
        let p = |i: usize, j: usize| &x[i] * &y[j];
        vec![
            &(&(&p(0, 0) + &(a * &p(1, 1))) + &(b * &p(2, 2))) - &(&ab * &p(3, 3)),
            &(&(&p(0, 1) + &p(1, 0)) - &(b * &p(2, 3))) + &(b * &p(3, 2)),
            &(&(&p(0, 2) + &p(2, 0)) + &(a * &p(1, 3))) - &(a * &p(3, 1)),
            &(&(&p(0, 3) + &p(3, 0)) + &p(1, 2)) - &p(2, 1),
        ]
    }

    pub fn conj(&self, x: &[Elem]) -> Vec<Elem> {
        vec![x[0].clone(), -&x[1], -&x[2], -&x[3]]
    }

    /// Reduced norm `x₀² − a x₁² − b x₂² + ab x₃²`.
    pub fn norm(&self, x: &[Elem]) -> Elem {
        let c = self.norm_coeffs();
        c.iter().zip(x).fold(self.base.zero(), |acc, (c, x)| &acc + &(c * &x.square()))
    }

    fn norm_coeffs(&self) -> [Elem; 4] {
        [self.base.one(), -&self.a, -&self.b, &self.a * &self.b]
    }

    fn is_associative(&self) -> bool {
        let e = self.basis();
        e.iter().all(|x| {
            e.iter().all(|y| {
                let xy = self.mul(x, y);
                e.iter().all(|z| self.mul(&xy, z) == self.mul(x, &self.mul(y, z)))
            })
        })
    }

    /// The same symbol with both slots moved to `target` (which must lie above
    /// the current base in the tower).
    pub fn extend_to(&self, target: &FieldTower) -> Result<QuaternionAlgebra> {
        QuaternionAlgebra::new(&target.embed(&self.a), &target.embed(&self.b))
    }

    /// The symbol over `target` below the current base, if both slots descend.
    pub fn descend_to(&self, target: &FieldTower) -> Option<QuaternionAlgebra> {
        let a = self.a.descend_to(target)?;
        let b = self.b.descend_to(target)?;
        QuaternionAlgebra::new(&a, &b).ok()
    }
}

/// `⟨1, −a, −b, ab⟩`.
pub fn norm_form(q: &QuaternionAlgebra) -> QuadForm {
    QuadForm::diag(&q.norm_coeffs())
}

/// A place of `L = K(√d)` above a discrete valuation `valuation` of `K`, with
/// `symbol` the tame symbol of the algebra at `valuation`. When `extension`
/// is `Some(d)`, the algebra lives over `L` and `d` must have even value at
/// `valuation`; the residue stays nontrivial at the places above iff it is a
/// nonsquare in `κ(√d̄)`.
#[derive(Clone, PartialEq, Debug)]
pub struct RamificationWitness {
    pub valuation: Valuation,
    pub symbol: Elem,
    pub residue: Option<SquareClass>,
    pub extension: Option<Elem>,
}

impl RamificationWitness {
    fn new(valuation: &Valuation, symbol: Elem, extension: Option<Elem>) -> RamificationWitness {
        let residue = valuation.residue(&symbol).ok().and_then(|r| squareclass_reduce(&r).ok());
        RamificationWitness { valuation: valuation.clone(), symbol, residue, extension }
    }

    /// Re-checks that the residue is a nonsquare in the relevant residue field.
    pub fn verify(&self) -> Result<bool> {
        let v = &self.valuation;
        if v.value(&self.symbol) != Some(0) || v.residue_is_square(&self.symbol)? {
            return Ok(false);
        }
        if let Some(d) = &self.extension {
            match v.value(d) {
                Some(e) if e % 2 == 0 => {}
                _ => return Ok(false),
            }
            let u = v.unit_part(d)?;
            if !v.residue_is_square(&u)? && v.residue_is_square(&(&self.symbol * &u))? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for RamificationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.residue {
            Some(r) => write!(f, "ramified at {}: residue class {}", self.valuation, r)?,
            None => write!(f, "ramified at {}: residue of {} is a nonsquare", self.valuation, self.symbol)?,
        }
        if let Some(d) = &self.extension {
            write!(f, " (stays nontrivial over sqrt({}))", d)?;
        }
        Ok(())
    }
}

#[derive(Clone, PartialEq, Debug)]
pub enum SplitVerdict {
    /// A nonzero element of reduced norm zero.
    Split {
        witness: Vec<Elem>,
    },
    Ramified(RamificationWitness),
    /// Places of `Q` (or of `K` below `L`) where the local invariant survives.
    LocalObstruction {
        places: Vec<Place>,
    },
    /// Over a split étale base: the verdict of one nonsplit component.
    Component {
        index: usize,
        inner: Box<SplitVerdict>,
    },
    Unknown {
        reason: String,
    },
}

impl SplitVerdict {
    pub fn is_split(&self) -> Option<bool> {
        match self {
            SplitVerdict::Split { .. } => Some(true),
            SplitVerdict::Unknown { .. } => None,
            SplitVerdict::Component { inner, .. } => inner.is_split().map(|_| false),
            _ => Some(false),
        }
    }
}

#[derive(Clone, PartialEq, Debug)]
pub struct SplitCertificate {
    pub algebra: QuaternionAlgebra,
    pub verdict: SplitVerdict,
}

impl SplitCertificate {
    pub fn is_split(&self) -> Option<bool> {
        self.verdict.is_split()
    }

    /// Re-verifies every witness against the algebra.
    pub fn verify(&self) -> Result<()> {
        verify_verdict(&self.algebra, &self.verdict)
    }
}

fn verify_verdict(q: &QuaternionAlgebra, verdict: &SplitVerdict) -> Result<()> {
    let bad = |m: &str| Err(Error::InvalidWitness(m.to_string()));
    match verdict {
        SplitVerdict::Split { witness } => {
            if witness.len() != 4 || witness.iter().all(|x| x.is_zero()) || !q.norm(witness).is_zero() {
                return bad("split witness is not a nonzero element of norm zero");
            }
        }
        SplitVerdict::Ramified(w) => {
            let k = w.valuation.field();
            let sub = q.descend_to(k).ok_or_else(|| Error::InvalidWitness("slots do not lie in K".into()))?;
            if tame_symbol(&sub.a, &sub.b, &w.valuation)? != w.symbol || !w.verify()? {
                return bad("ramification witness does not check");
            }
            if w.extension.as_ref() != extension_of(q).as_ref() {
                return bad("ramification witness has the wrong extension");
            }
        }
        SplitVerdict::LocalObstruction { places } => {
            let (k, d) = match q.base.kind() {
                Kind::Etale { base, d, .. } => (base.clone(), Some(d.clone())),
                _ => (q.base.clone(), None),
            };
            let sub = q.descend_to(&k).ok_or_else(|| Error::InvalidWitness("slots do not lie in K".into()))?;
            if places.is_empty() {
                return bad("no obstructing place");
            }
            for p in places {
                if hilbert(&sub.a, &sub.b, p)? != -1 {
                    return bad("Hilbert symbol is trivial at a listed place");
                }
                if let Some(d) = &d {
                    if !local_is_square(d, p)? {
                        return bad("local degree 2 kills the invariant");
                    }
                }
            }
        }
        SplitVerdict::Component { index, inner } => {
            let (x, y) = component_algebras(q)?;
            let c = if *index == 0 { x } else { y };
            verify_verdict(&c, inner)?;
        }
        SplitVerdict::Unknown { .. } => {}
    }
    Ok(())
}

fn extension_of(q: &QuaternionAlgebra) -> Option<Elem> {
    match q.base.kind() {
        Kind::Etale { d, root: None, .. } => Some(d.clone()),
        _ => None,
    }
}

fn component_algebras(q: &QuaternionAlgebra) -> Result<(QuaternionAlgebra, QuaternionAlgebra)> {
    let (a1, a2) = q.a.components().ok_or_else(|| Error::UnsupportedDomain("not a split étale base".into()))?;
    let (b1, b2) = q.b.components().unwrap();
    Ok((QuaternionAlgebra::new(a1, b1)?, QuaternionAlgebra::new(a2, b2)?))
}

/// `(−1)^{v(a)v(b)} a^{v(b)} / b^{v(a)}`, a `v`-unit.
pub fn tame_symbol(a: &Elem, b: &Elem, v: &Valuation) -> Result<Elem> {
    let al = v.value(a).ok_or(Error::ZeroSlot)?;
    let be = v.value(b).ok_or(Error::ZeroSlot)?;
    let c = &a.pow(be).unwrap() * &b.pow(-al).unwrap();
    Ok(if (al * be) % 2 != 0 { -c } else { c })
}

/// Square class of the tame symbol's residue at `v` (slots must descend to the
/// field of `v`).
pub fn residue_symbol(q: &QuaternionAlgebra, v: &Valuation) -> Result<SquareClass> {
    if v.field().characteristic() == 2 {
        return Err(Error::DyadicPlace);
    }
    let sub = q
        .descend_to(v.field())
        .ok_or_else(|| Error::UnsupportedDomain(format!("slots of {} do not lie in {}", q, v.field())))?;
    let c = tame_symbol(&sub.a, &sub.b, v)?;
    squareclass_reduce(&v.residue(&c)?)
}

/// Trivial witnesses: a square slot, `a + b = 1`, `a = −b`, `−ab` a square.
fn quick_witness(q: &QuaternionAlgebra) -> Result<Option<Vec<Elem>>> {
    let (z, o) = (q.base.zero(), q.base.one());
    if let Some(r) = q.a.sqrt()? {
        return Ok(Some(vec![r, o, z.clone(), z]));
    }
    if let Some(r) = q.b.sqrt()? {
        return Ok(Some(vec![r, z.clone(), o, z]));
    }
    if (&q.a + &q.b).is_one() {
        return Ok(Some(vec![o.clone(), o.clone(), o, z]));
    }
    if (&q.a + &q.b).is_zero() {
        return Ok(Some(vec![z.clone(), o.clone(), o, z]));
    }
    if let Some(r) = (-&(&q.a * &q.b)).sqrt()? {
        return Ok(Some(vec![r, z.clone(), z, o]));
    }
    Ok(None)
}

/// Candidate discrete valuations where `elems` fail to be units: all places
/// for `F_p(t)`, odd primes for `Q`, and for `k(x)(y)` the irreducible
/// factors that can be certified plus Gauss extensions and the degree place.
pub fn candidate_valuations(k: &FieldTower, elems: &[Elem]) -> Result<Vec<Valuation>> {
    let mut out: Vec<Valuation> = Vec::new();
    match (global_kind(k), k.kind()) {
        (Some(_), _) => {
            for p in bad_places(k, elems)? {
                if matches!(p, Place::Real | Place::Prime(2)) {
                    continue;
                }
                out.push(p.valuation(k)?);
            }
        }
        (None, Kind::Function { base, .. }) if base.is_field() => {
            let mut coeffs = Vec::new();
            for x in elems.iter().filter(|x| !x.is_zero()) {
                let (n, d) = x.frac_parts().unwrap();
                for f in [n, d] {
                    coeffs.extend(f.coeffs().iter().filter(|c| !c.is_zero()).cloned());
                    for (g, _) in squarefree_decomposition(f)? {
                        if let Ok(v) = Valuation::poly(k, &g) {
                            out.push(v);
                        }
                    }
                }
            }
            if matches!(base.kind(), Kind::Function { .. }) {
                for inner in candidate_valuations(base, &coeffs)? {
                    out.push(Valuation::gauss(k, inner)?);
                }
            }
            out.push(Valuation::degree_place(k)?);
        }
        _ => {}
    }
    let mut uniq: Vec<Valuation> = Vec::new();
    for v in out {
        if !uniq.contains(&v) {
            uniq.push(v);
        }
    }
    Ok(uniq)
}

/// A ramification witness for `(a, b)` over `K`, or over `K(√d)` when `d` is
/// given, among the candidate valuations.
fn find_ramification(a: &Elem, b: &Elem, d: Option<&Elem>) -> Result<Option<RamificationWitness>> {
    let k = a.tower();
    let mut elems = vec![a.clone(), b.clone()];
    elems.extend(d.cloned());
    for v in candidate_valuations(k, &elems)? {
        let c = tame_symbol(a, b, &v)?;
        let w = RamificationWitness::new(&v, c, d.cloned());
        let ok = match d {
            Some(d) if v.value(d).is_none_or(|e| e % 2 != 0) => false,
            _ => w.verify().unwrap_or(false),
        };
        if ok {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Split witness over `K`: a zero of `⟨1, −a, −b⟩` (then `x₀ + x₁i + x₂j`).
fn search_witness(q: &QuaternionAlgebra, budget: u64) -> Result<Option<Vec<Elem>>> {
    let c = q.norm_coeffs();
    let coeffs = if q.base.is_finite() { c.to_vec() } else { c[..3].to_vec() };
    let w = if q.base.is_finite() {
        let order = q.base.order().unwrap();
        find_isotropic(&coeffs, order.saturating_pow(3).max(budget))?
    } else {
        find_isotropic(&coeffs, budget)?
    };
    Ok(w.map(|mut v| {
        v.resize(4, q.base.zero());
        v
    }))
}

/// Split witness over `L = K(√d)` for slots in `K`: a pure quaternion `p` of
/// `(a,b)_K` with `p² = d` gives the zero divisor `√d − p`.
fn search_witness_over_extension(
    q: &QuaternionAlgebra,
    sub: &QuaternionAlgebra,
    d: &Elem,
    budget: u64,
) -> Result<Option<Vec<Elem>>> {
    let coeffs = [sub.a.clone(), sub.b.clone(), -&(&sub.a * &sub.b)];
    Ok(find_representation(&coeffs, d, budget)?.map(|x| {
        let l = &q.base;
        vec![l.sqrt_gen(), -&l.embed(&x[0]), -&l.embed(&x[1]), -&l.embed(&x[2])]
    }))
}

fn unknown(reason: &str) -> SplitVerdict {
    SplitVerdict::Unknown { reason: reason.to_string() }
}

fn decide(q: &QuaternionAlgebra, budget: u64) -> Result<SplitVerdict> {
    if let Some(w) = quick_witness(q)? {
        return Ok(SplitVerdict::Split { witness: w });
    }
    let base = q.base.clone();
    match base.kind() {
        Kind::Etale { root: Some(_), .. } => {
            let (x, y) = component_algebras(q)?;
            let vx = decide(&x, budget)?;
            if !matches!(vx, SplitVerdict::Split { .. }) {
                return Ok(SplitVerdict::Component { index: 0, inner: Box::new(vx) });
            }
            let vy = decide(&y, budget)?;
            match (vx, vy) {
                (SplitVerdict::Split { witness: w1 }, SplitVerdict::Split { witness: w2 }) => Ok(SplitVerdict::Split {
                    witness: w1.iter().zip(&w2).map(|(s, t)| base.split_pair(s, t)).collect(),
                }),
                (_, vy) => Ok(SplitVerdict::Component { index: 1, inner: Box::new(vy) }),
            }
        }
        Kind::Etale { base: k, d, root: None } => {
            if base.is_finite() {
                return Ok(match search_witness(q, budget)? {
                    Some(w) => SplitVerdict::Split { witness: w },
                    None => unknown("finite field search did not finish"),
                });
            }
            let Some(sub) = q.descend_to(k) else {
                return Ok(match find_isotropic(&q.norm_coeffs(), budget)? {
                    Some(w) => SplitVerdict::Split { witness: w },
                    None => unknown("slots do not lie in the base and search exhausted the budget"),
                });
            };
            match global_kind(k) {
                Some(g) => {
                    let mut places = Vec::new();
                    for p in bad_places(k, &[sub.a.clone(), sub.b.clone(), d.clone()])? {
                        if hilbert(&sub.a, &sub.b, &p)? == -1 && local_is_square(d, &p)? {
                            places.push(p);
                        }
                    }
                    if !places.is_empty() {
                        if g == Global::Rationals {
                            return Ok(SplitVerdict::LocalObstruction { places });
                        }
                        let v = places[0].valuation(k)?;
                        let c = tame_symbol(&sub.a, &sub.b, &v)?;
                        return Ok(SplitVerdict::Ramified(RamificationWitness::new(&v, c, Some(d.clone()))));
                    }
                    Ok(match search_witness_over_extension(q, &sub, d, budget)? {
                        Some(w) => SplitVerdict::Split { witness: w },
                        None => unknown("split by the local symbols, but no zero divisor within the budget"),
                    })
                }
                None => {
                    if let Some(w) = find_ramification(&sub.a, &sub.b, Some(d))? {
                        return Ok(SplitVerdict::Ramified(w));
                    }
                    Ok(match search_witness_over_extension(q, &sub, d, budget)? {
                        Some(w) => SplitVerdict::Split { witness: w },
                        None => {
                            unknown("no ramification among the candidate places and no zero divisor within the budget")
                        }
                    })
                }
            }
        }
        Kind::Dual { .. } => Err(Error::UnsupportedDomain(format!("splitting over {}", base))),
        _ if base.is_finite() => Ok(match search_witness(q, budget)? {
            Some(w) => SplitVerdict::Split { witness: w },
            None => unknown("finite field search did not finish"),
        }),
        _ => match global_kind(&base) {
            Some(Global::Rationals) => {
                let mut places = Vec::new();
                for p in bad_places(&base, &[q.a.clone(), q.b.clone()])? {
                    if hilbert(&q.a, &q.b, &p)? == -1 {
                        places.push(p);
                    }
                }
                if !places.is_empty() {
                    return Ok(SplitVerdict::LocalObstruction { places });
                }
                Ok(match search_witness(q, budget)? {
                    Some(w) => SplitVerdict::Split { witness: w },
                    None => unknown("split by the Hilbert symbols, but no zero divisor within the budget"),
                })
            }
            _ => {
                if let Some(w) = find_ramification(&q.a, &q.b, None)? {
                    return Ok(SplitVerdict::Ramified(w));
                }
                Ok(match search_witness(q, budget)? {
                    Some(w) => SplitVerdict::Split { witness: w },
                    None => unknown("no ramification among the candidate places and no zero divisor within the budget"),
                })
            }
        },
    }
}

/// Decides splitting where possible; every emitted witness is re-verified.
pub fn is_split(q: &QuaternionAlgebra, budget: u64) -> Result<SplitCertificate> {
    let cert = SplitCertificate { algebra: q.clone(), verdict: decide(q, budget)? };
    cert.verify()?;
    Ok(cert)
}

impl fmt::Display for SplitCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "algebra: {}", self.algebra)?;
        write_verdict(f, &self.verdict)
    }
}

fn write_verdict(f: &mut fmt::Formatter<'_>, v: &SplitVerdict) -> fmt::Result {
    match v {
        SplitVerdict::Split { witness } => {
            writeln!(f, "verdict: split")?;
            write!(f, "zero divisor: {}", fmt_vec(witness))
        }
        SplitVerdict::Ramified(w) => {
            writeln!(f, "verdict: nonsplit")?;
            write!(f, "{}", w)
        }
        SplitVerdict::LocalObstruction { places } => {
            writeln!(f, "verdict: nonsplit")?;
            let ps: Vec<String> = places.iter().map(|p| p.to_string()).collect();
            write!(f, "hilbert symbol -1 at: {}", ps.join(", "))
        }
        SplitVerdict::Component { index, inner } => {
            writeln!(f, "component: {}", index)?;
            write_verdict(f, inner)
        }
        SplitVerdict::Unknown { reason } => {
            writeln!(f, "verdict: unknown")?;
            write!(f, "reason: {}", reason)
        }
    }
}

/// Projection formula: `(a, b)` over `L` with `a ∈ K` goes to `(a, N_{L/K}(b))`.
/// Swaps the slots when only the second one descends.
pub fn corestriction(q: &QuaternionAlgebra) -> Result<QuaternionAlgebra> {
    let k = match q.base.kind() {
        Kind::Etale { base, .. } => base.clone(),
        _ => return Err(Error::UnsupportedDomain(format!("{} is not a quadratic étale algebra", q.base))),
    };
    let (a, b) = match (q.a.descend_to(&k), q.b.descend_to(&k)) {
        (Some(a), _) => (a, q.b.clone()),
        (None, Some(b)) => (b, q.a.clone()),
        (None, None) => return Err(Error::SlotNotDescended),
    };
    QuaternionAlgebra::new(&a, &b.etale_norm())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::parse::parse_elem;

    fn q_alg(t: &FieldTower, a: &str, b: &str) -> QuaternionAlgebra {
        QuaternionAlgebra::new(&parse_elem(a, t).unwrap(), &parse_elem(b, t).unwrap()).unwrap()
    }

    #[test]
    fn multiplication_table() {
        let t = FieldTower::rationals();
        let q = q_alg(&t, "2", "3");
        let e = q.basis();
        let k = q.mul(&e[1], &e[2]);
        assert_eq!(k, e[3]);
        assert_eq!(q.mul(&e[2], &e[1]), q.conj(&e[3]));
        assert_eq!(q.mul(&e[3], &e[3])[0], t.from_int(-6));
        let x: Vec<Elem> = [1, 2, -1, 3].iter().map(|&v| t.from_int(v)).collect();
        assert_eq!(q.mul(&x, &q.conj(&x)), vec![q.norm(&x), t.zero(), t.zero(), t.zero()]);
    }

    #[test]
    fn hamilton_over_q_is_nonsplit_at_2_and_real() {
        let t = FieldTower::rationals();
        let c = is_split(&q_alg(&t, "-1", "-1"), 1000).unwrap();
        assert_eq!(c.verdict, SplitVerdict::LocalObstruction { places: vec![Place::Real, Place::Prime(2)] });
        assert_eq!(norm_form(&c.algebra), QuadForm::diag_ints(&t, &[1, 1, 1, 1]));
    }

    #[test]
    fn split_over_q_has_witness() {
        let t = FieldTower::rationals();
        for (a, b) in [("2", "7"), ("-1", "2"), ("3", "-2"), ("5", "-1")] {
            let c = is_split(&q_alg(&t, a, b), 20000).unwrap();
            assert_eq!(c.is_split(), Some(true), "({a},{b})");
        }
    }

    #[test]
    fn function_field_ramification() {
        let t = FieldTower::function(&FieldTower::prime(5).unwrap(), "t").unwrap();
        let c = is_split(&q_alg(&t, "t", "2"), 1000).unwrap();
        match &c.verdict {
            SplitVerdict::Ramified(w) => {
                assert_eq!(w.valuation.to_string(), "(t)");
                assert_eq!(w.residue.as_ref().unwrap().rep.to_string(), "2");
            }
            v => panic!("{:?}", v),
        }
        let v = Valuation::from_element(&t, &t.gen()).unwrap();
        assert!(residue_symbol(&q_alg(&t, "t", "t"), &v)
            .unwrap()
            .equivalent(&squareclass_reduce(&FieldTower::prime(5).unwrap().from_int(-1)).unwrap())
            .unwrap());
        assert!(residue_symbol(&q_alg(&t, "t+1", "2"), &v).unwrap().is_trivial());
    }

    #[test]
    fn corestriction_examples() {
        let k = FieldTower::rationals();
        let l = FieldTower::etale(&k, &k.from_int(5)).unwrap();
        let q = QuaternionAlgebra::new(&l.from_int(2), &l.sqrt_gen()).unwrap();
        let c = corestriction(&q).unwrap();
        assert_eq!((c.a(), c.b()), (&k.from_int(2), &k.from_int(-5)));
        let both = QuaternionAlgebra::new(&l.sqrt_gen(), &l.sqrt_gen()).unwrap();
        assert_eq!(corestriction(&both).unwrap_err(), Error::SlotNotDescended);
    }
}
