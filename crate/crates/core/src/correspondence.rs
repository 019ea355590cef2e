//! Rank-4 forms with simple degeneration versus quaternion algebras over the
//! discriminant extension: both directions over fields, the isotropy
//! criterion, isometry and similarity decisions over complete DVRs, and
//! local-global certificates for anisotropic but locally isotropic forms.

use std::fmt;

use crate::clifford::{even_clifford, even_clifford_diag, quaternionize};
use crate::error::{Error, Result};
use crate::field::squareclass::{finite_nonsquare, squareclass_reduce, SquareClass};
use crate::field::valuation::Valuation;
use crate::field::{Elem, FieldTower, Kind};
use crate::linalg::{fmt_vec, Matrix};
use crate::places::{bad_places, global_kind, hilbert, local_is_square};
use crate::quadform::{degeneration_report, diagonalize, diagonalize_local, discriminant, represents_local};
use crate::quadform::{DegenerationReport, QuadForm, Similarity, Verdict};
use crate::quaternion::{
    candidate_valuations, is_split, tame_symbol, QuaternionAlgebra, SplitCertificate, SplitVerdict,
};
use crate::search::find_isotropic;

fn fmt_diag(c: &[Elem]) -> String {
    format!("<{}>", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

fn product(c: &[Elem], t: &FieldTower) -> Elem {
    c.iter().fold(t.one(), |acc, x| &acc * x)
}

/// Outcome of comparing two quaternion algebras over the same base.
#[derive(Clone, Debug, PartialEq)]
pub struct BrauerTranscript {
    pub lhs: QuaternionAlgebra,
    pub rhs: QuaternionAlgebra,
    /// `None` when the tested data cannot tell the classes apart.
    pub equivalent: Option<bool>,
    pub lines: Vec<String>,
}

impl fmt::Display for BrauerTranscript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "compare: {} ~ {}", self.lhs, self.rhs)?;
        for l in &self.lines {
            writeln!(f, "  {}", l)?;
        }
        let v = match self.equivalent {
            Some(true) => "equivalent",
            Some(false) => "not equivalent",
            None => "undecided",
        };
        write!(f, "brauer: {}", v)
    }
}

/// Compares Brauer classes. Complete over finite fields, `Q`, `F_p(t)`,
/// their quadratic extensions with slots in the base, and split étale
/// algebras over those; over `k(x)(y)` only differing residues at candidate
/// valuations (or differing split verdicts) give an answer.
pub fn brauer_equivalent(x: &QuaternionAlgebra, y: &QuaternionAlgebra, budget: u64) -> Result<BrauerTranscript> {
    if x.base() != y.base() {
        return Err(Error::DimensionMismatch(format!("{} vs {}", x.base(), y.base())));
    }
    let mut lines = Vec::new();
    let equivalent = compare(x, y, budget, &mut lines)?;
    Ok(BrauerTranscript { lhs: x.clone(), rhs: y.clone(), equivalent, lines })
}

fn compare(x: &QuaternionAlgebra, y: &QuaternionAlgebra, budget: u64, lines: &mut Vec<String>) -> Result<Option<bool>> {
    let base = x.base().clone();
    if base.is_finite() {
        lines.push(format!("Br({}) = 0", base));
        return Ok(Some(true));
    }
    match base.kind() {
        Kind::Etale { root: Some(_), .. } => {
            let mut out = Some(true);
            for i in 0..2 {
                let (xa, xb) = (component(x.a(), i), component(x.b(), i));
                let (ya, yb) = (component(y.a(), i), component(y.b(), i));
                lines.push(format!("component {}:", i));
                let r = compare(&QuaternionAlgebra::new(&xa, &xb)?, &QuaternionAlgebra::new(&ya, &yb)?, budget, lines)?;
                out = match (out, r) {
                    (Some(false), _) | (_, Some(false)) => Some(false),
                    (Some(true), Some(true)) => Some(true),
                    _ => None,
                };
            }
            Ok(out)
        }
        Kind::Etale { base: k, d, root: None } => {
            let (Some(xk), Some(yk)) = (x.descend_to(k), y.descend_to(k)) else {
                return split_comparison(x, y, budget, lines);
            };
            if k.is_finite() {
                lines.push(format!("Br({}) = 0", base));
                return Ok(Some(true));
            }
            compare_in_base(&xk, &yk, Some(d), budget, lines)
        }
        Kind::Dual { .. } => Err(Error::UnsupportedDomain(format!("Brauer classes over {}", base))),
        _ => compare_in_base(x, y, None, budget, lines),
    }
}

fn component(x: &Elem, i: usize) -> Elem {
    let (a, b) = x.components().expect("split étale element");
    if i == 0 {
        a.clone()
    } else {
        b.clone()
    }
}

/// Slots in `K`; the classes live over `K(√d)` when `d` is given.
fn compare_in_base(
    x: &QuaternionAlgebra,
    y: &QuaternionAlgebra,
    d: Option<&Elem>,
    budget: u64,
    lines: &mut Vec<String>,
) -> Result<Option<bool>> {
    let k = x.base().clone();
    if global_kind(&k).is_some() {
        let mut elems = vec![x.a().clone(), x.b().clone(), y.a().clone(), y.b().clone()];
        elems.extend(d.cloned());
        for p in bad_places(&k, &elems)? {
            let place = p.describe(&k);
            if let Some(d) = d {
                if !local_is_square(d, &p)? {
                    lines.push(format!("{}: local degree 2, invariants vanish", place));
                    continue;
                }
            }
            let (h1, h2) = (hilbert(x.a(), x.b(), &p)?, hilbert(y.a(), y.b(), &p)?);
            lines.push(format!("{}: hilbert {} vs {}", place, h1, h2));
            if h1 != h2 {
                return Ok(Some(false));
            }
        }
        lines.push("local invariants agree everywhere".into());
        return Ok(Some(true));
    }
    let same = (x.a() == y.a() && x.b() == y.b()) || (x.a() == y.b() && x.b() == y.a());
    if same {
        lines.push("identical symbols".into());
        return Ok(Some(true));
    }
    let mut elems = vec![x.a().clone(), x.b().clone(), y.a().clone(), y.b().clone()];
    elems.extend(d.cloned());
    for v in candidate_valuations(&k, &elems)? {
        if let Some(d) = d {
            if v.value(d).is_none_or(|e| e % 2 != 0) {
                continue;
            }
        }
        let r = tame_symbol(x.a(), x.b(), &v)?.checked_div(&tame_symbol(y.a(), y.b(), &v)?)?;
        let differ = match residue_nonsquare(&r, &v) {
            Ok(false) => false,
            Ok(true) => match d {
                Some(d) => residue_nonsquare(&(&r * &v.unit_part(d)?), &v).unwrap_or(false),
                None => true,
            },
            Err(_) => false,
        };
        if differ {
            lines.push(format!("{}: residues differ by the nonsquare {}", v, v.residue(&r)?));
            return Ok(Some(false));
        }
        lines.push(format!("{}: residues agree", v));
    }
    let (lx, ly) = match d {
        Some(d) => {
            let l = FieldTower::etale(&k, d)?;
            (lift(x, &l)?, lift(y, &l)?)
        }
        None => (x.clone(), y.clone()),
    };
    split_comparison(&lx, &ly, budget, lines)
}

fn residue_nonsquare(x: &Elem, v: &Valuation) -> Result<bool> {
    Ok(!v.residue_is_square(x)?)
}

/// Both split means equal classes; exactly one split means different.
fn split_comparison(
    x: &QuaternionAlgebra,
    y: &QuaternionAlgebra,
    budget: u64,
    lines: &mut Vec<String>,
) -> Result<Option<bool>> {
    let (sx, sy) = (is_split(x, budget)?.is_split(), is_split(y, budget)?.is_split());
    match (sx, sy) {
        (Some(true), Some(true)) => {
            lines.push("both split".into());
            Ok(Some(true))
        }
        (Some(a), Some(b)) if a != b => {
            lines.push(format!("split verdicts differ ({} vs {})", a, b));
            Ok(Some(false))
        }
        _ => {
            lines.push("residues agree at all tested valuations; classes not separated".into());
            Ok(None)
        }
    }
}

fn lift(q: &QuaternionAlgebra, l: &FieldTower) -> Result<QuaternionAlgebra> {
    let a = l.coerce(q.a()).ok_or_else(|| Error::DimensionMismatch(format!("{} does not embed in {}", q.a(), l)))?;
    let b = l.coerce(q.b()).ok_or_else(|| Error::DimensionMismatch(format!("{} does not embed in {}", q.b(), l)))?;
    QuaternionAlgebra::new(&a, &b)
}

/// The slots of an algebra over `K(√d)` that lie in `K`.
fn descended_slots(q: &QuaternionAlgebra) -> Result<(Elem, Elem)> {
    let k = match q.base().kind() {
        Kind::Etale { base, .. } => base.clone(),
        _ => q.base().clone(),
    };
    let sub = q.descend_to(&k).ok_or(Error::SlotNotDescended)?;
    Ok((sub.a().clone(), sub.b().clone()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    FromForm,
    FromAlgebra,
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Direction::FromForm => write!(f, "from-form"),
            Direction::FromAlgebra => write!(f, "from-algebra"),
        }
    }
}

/// A rank-4 form together with the quaternion algebra over its discriminant
/// extension that corresponds to it.
#[derive(Clone, Debug)]
pub struct CorrespondenceRecord {
    pub form: QuadForm,
    pub disc: SquareClass,
    pub algebra: QuaternionAlgebra,
    pub direction: Direction,
    /// `quaternionize(even_clifford(form))` against `algebra`.
    pub verification: BrauerTranscript,
    /// Further comparisons made along the way.
    pub notes: Vec<String>,
}

impl CorrespondenceRecord {
    pub fn verified(&self) -> bool {
        self.verification.equivalent == Some(true)
    }
}

impl fmt::Display for CorrespondenceRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "direction: {}", self.direction)?;
        writeln!(f, "form: {}", self.form.to_text())?;
        writeln!(f, "disc: {}", self.disc)?;
        writeln!(f, "algebra: {}", self.algebra)?;
        writeln!(f, "{}", self.verification)?;
        for n in &self.notes {
            writeln!(f, "note: {}", n)?;
        }
        write!(f, "verified: {}", if self.verified() { "yes" } else { "no" })
    }
}

/// `⟨1, a, b, abd⟩`, whose even Clifford algebra is `(−a, −b)` over `K(√d)`.
/// The record's algebra is that class; the comparison with `(a, b)` itself
/// is kept as a note (the two agree when `−1` is a square).
pub fn form_from_azumaya(a: &Elem, b: &Elem, d: &Elem, budget: u64) -> Result<CorrespondenceRecord> {
    if a.is_zero() || b.is_zero() || d.is_zero() {
        return Err(Error::ZeroSlot);
    }
    let k = a.tower().clone();
    let form = QuadForm::diag(&[k.one(), a.clone(), b.clone(), &(a * b) * d]);
    let disc = discriminant(&form)?;
    let dclass = squareclass_reduce(d)?;
    if !disc.equivalent(&dclass)? {
        return Err(Error::ContractViolation);
    }
    let qz = quaternionize(&even_clifford(&form)?)?;
    let l = qz.algebra.base().clone();
    let target = QuaternionAlgebra::new(&l.coerce(&-a).unwrap(), &l.coerce(&-b).unwrap())?;
    let verification = brauer_equivalent(&qz.algebra, &target, budget)?;
    let given = QuaternionAlgebra::new(&l.coerce(a).unwrap(), &l.coerce(b).unwrap())?;
    let against_given = brauer_equivalent(&qz.algebra, &given, budget)?;
    let word = match against_given.equivalent {
        Some(true) => "equivalent",
        Some(false) => "not equivalent",
        None => "undecided",
    };
    let notes =
        vec![format!("C0 read from structure constants: {}", qz.algebra), format!("against ({}, {}): {}", a, b, word)];
    Ok(CorrespondenceRecord {
        form,
        disc: dclass,
        algebra: target,
        direction: Direction::FromAlgebra,
        verification,
        notes,
    })
}

/// Diagonalizes and quaternionizes; the record also carries the round trip
/// back to `⟨1, −x, −y, xyδ⟩`, similar to `q` when its discriminant and
/// algebra class agree.
pub fn azumaya_from_form(q: &QuadForm, budget: u64) -> Result<CorrespondenceRecord> {
    if q.rank() != 4 {
        return Err(Error::RankOutOfRange(q.rank()));
    }
    let d = diagonalize(q)?;
    if d.coeffs.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateForm);
    }
    let k = q.field().clone();
    let qz = quaternionize(&even_clifford_diag(&d.coeffs)?)?;
    let algebra = qz.algebra.clone();
    let l = algebra.base().clone();
    let verification = brauer_equivalent(&qz.algebra, &algebra, budget)?;
    let (x, y) = descended_slots(&algebra)?;
    let delta = product(&d.coeffs, &k);
    let back = QuadForm::diag(&[k.one(), -&x, -&y, &(&x * &y) * &delta]);
    let back_q = quaternionize(&even_clifford(&back)?)?;
    let (bx, by) = descended_slots(&back_q.algebra)?;
    let back_alg = QuaternionAlgebra::new(&l.coerce(&bx).unwrap(), &l.coerce(&by).unwrap())?;
    let round = brauer_equivalent(&back_alg, &algebra, budget)?;
    let disc = discriminant(q)?;
    let same_disc = discriminant(&back)?.equivalent(&disc)?;
    let similar = same_disc && round.equivalent == Some(true);
    let notes = vec![
        format!("diagonal form: {}", fmt_diag(&d.coeffs)),
        format!("round trip form: {}", fmt_diag(&back.diagonal_coeffs().unwrap())),
        format!("round trip discriminant agrees: {}", same_disc),
        format!(
            "round trip algebra: {}",
            round.equivalent.map_or("undecided", |b| if b { "equivalent" } else { "not equivalent" })
        ),
        format!("round trip similar: {}", if similar { "yes" } else { "undecided" }),
    ];
    Ok(CorrespondenceRecord { form: q.clone(), disc, algebra, direction: Direction::FromForm, verification, notes })
}

#[derive(Clone, Debug, PartialEq)]
pub enum IsotropyVerdict {
    Isotropic {
        witness: Vec<Elem>,
    },
    /// The even Clifford algebra does not split over the discriminant extension.
    Anisotropic {
        certificate: SplitCertificate,
    },
    Unknown {
        reason: String,
    },
}

impl fmt::Display for IsotropyVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsotropyVerdict::Isotropic { witness } => write!(f, "isotropic\nwitness: {}", fmt_vec(witness)),
            IsotropyVerdict::Anisotropic { certificate } => write!(f, "anisotropic\n{}", certificate),
            IsotropyVerdict::Unknown { reason } => write!(f, "unknown\nreason: {}", reason),
        }
    }
}

/// Searches with growing budgets; used once splitting guarantees a zero.
const SEARCH_CAP: u64 = 1 << 26;

/// A rank-4 form is isotropic iff its even Clifford algebra splits over the
/// discriminant extension.
pub fn isotropy_rank4(q: &QuadForm, budget: u64) -> Result<IsotropyVerdict> {
    if q.rank() != 4 {
        return Err(Error::RankOutOfRange(q.rank()));
    }
    let d = diagonalize(q)?;
    if d.coeffs.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateForm);
    }
    let back = |x: Vec<Elem>| d.basis.mul_vec(&x);
    if let Some(w) = find_isotropic(&d.coeffs, budget.min(256))? {
        return Ok(IsotropyVerdict::Isotropic { witness: back(w) });
    }
    let qz = quaternionize(&even_clifford_diag(&d.coeffs)?)?;
    let cert = is_split(&qz.algebra, budget)?;
    match cert.is_split() {
        Some(false) => Ok(IsotropyVerdict::Anisotropic { certificate: cert }),
        Some(true) => {
            let mut b = budget.max(1024);
            loop {
                if let Some(w) = find_isotropic(&d.coeffs, b)? {
                    return Ok(IsotropyVerdict::Isotropic { witness: back(w) });
                }
                if b >= SEARCH_CAP {
                    return Ok(IsotropyVerdict::Unknown {
                        reason: "the algebra splits, but no zero was found among the enumerated vectors".into(),
                    });
                }
                b = b.saturating_mul(4);
            }
        }
        None => Ok(match find_isotropic(&d.coeffs, budget)? {
            Some(w) => IsotropyVerdict::Isotropic { witness: back(w) },
            None => IsotropyVerdict::Unknown { reason: format!("splitting undecided: {}", cert) },
        }),
    }
}

/// An integral model with simple degeneration of multiplicity one.
#[derive(Clone, Debug)]
pub struct DvrModel {
    pub form: QuadForm,
    /// From the input form to `form`.
    pub similarity: Similarity,
    pub report: DegenerationReport,
}

/// Diagonalizes, strips even powers of the uniformizer from each entry and,
/// when all but one entry has odd value, rescales by the uniformizer and
/// strips again.
pub fn dvr_model(q: &QuadForm, v: &Valuation) -> Result<DvrModel> {
    let n = q.rank();
    let d = diagonalize(q)?;
    if d.coeffs.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateForm);
    }
    let k = q.field().clone();
    let pi = v.uniformizer();
    let values: Vec<i64> = d.coeffs.iter().map(|c| v.value(c).unwrap()).collect();
    let odd = values.iter().filter(|e| e.rem_euclid(2) == 1).count();
    let (mu, shift) = if odd == 1 {
        (k.one(), 0)
    } else if odd + 1 == n && n > 2 {
        (pi.clone(), 1)
    } else {
        return Err(Error::EvenDiscValuation);
    };
    // entry c with value e becomes mu c pi^{-2h}, h = floor((e + shift) / 2)
    let halves: Vec<i64> = values.iter().map(|e| (e + shift).div_euclid(2)).collect();
    let coeffs: Vec<Elem> = d.coeffs.iter().zip(&halves).map(|(c, h)| &(&mu * c) * &pi.pow(-2 * h).unwrap()).collect();
    let form = QuadForm::diag(&coeffs);
    let scale = Matrix::diag(&halves.iter().map(|h| pi.pow(*h).unwrap()).collect::<Vec<_>>());
    let similarity = Similarity { matrix: scale.mul(&d.isometry.matrix), factor: mu };
    similarity.verify(q, &form)?;
    let report = degeneration_report(&form, v)?;
    if report.verdict != Verdict::Simple(1) {
        return Err(Error::ContractViolation);
    }
    Ok(DvrModel { form, similarity, report })
}

fn require_simple_one(q: &QuadForm, v: &Valuation) -> Result<()> {
    match degeneration_report(q, v) {
        Ok(r) if r.verdict == Verdict::Simple(1) => Ok(()),
        Ok(r) => Err(Error::PreconditionViolation(format!("form is {} at {}, not simple(1)", r.verdict, v))),
        Err(e) => Err(Error::PreconditionViolation(e.to_string())),
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum DvrIsometryVerdict {
    /// The common diagonalization `⟨u_1,…,u_{n−1}, u_n π⟩`.
    Isometric {
        chain: Vec<Elem>,
        transcript: Vec<String>,
    },
    NotIsometric {
        invariant: String,
        transcript: Vec<String>,
    },
    Unknown {
        reason: String,
        transcript: Vec<String>,
    },
}

impl DvrIsometryVerdict {
    pub fn is_isometric(&self) -> Option<bool> {
        match self {
            DvrIsometryVerdict::Isometric { .. } => Some(true),
            DvrIsometryVerdict::NotIsometric { .. } => Some(false),
            DvrIsometryVerdict::Unknown { .. } => None,
        }
    }

    pub fn transcript(&self) -> &[String] {
        match self {
            DvrIsometryVerdict::Isometric { transcript, .. }
            | DvrIsometryVerdict::NotIsometric { transcript, .. }
            | DvrIsometryVerdict::Unknown { transcript, .. } => transcript,
        }
    }
}

impl fmt::Display for DvrIsometryVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in self.transcript() {
            writeln!(f, "{}", l)?;
        }
        match self {
            DvrIsometryVerdict::Isometric { chain, .. } => write!(f, "verdict: isometric\nchain: {}", fmt_diag(chain)),
            DvrIsometryVerdict::NotIsometric { invariant, .. } => {
                write!(f, "verdict: not-isometric\ninvariant: {}", invariant)
            }
            DvrIsometryVerdict::Unknown { reason, .. } => write!(f, "verdict: unknown\nreason: {}", reason),
        }
    }
}

/// Orthogonal complement of `w` in the diagonal form `⟨r⟩` over a field,
/// rediagonalized.
fn split_off(r: &[Elem], w: &[Elem]) -> Result<Vec<Elem>> {
    let form = QuadForm::diag(r);
    let row = Matrix::from_rows(vec![form.gram().transpose().mul_vec(w)]);
    let kernel = row.kernel();
    let sub = form.pullback(&Matrix::from_cols(&kernel));
    Ok(diagonalize(&sub)?.coeffs)
}

/// Isometry over the completion of two forms with simple degeneration of
/// multiplicity one: equal discriminants, then the unit entries of `q` are
/// split off `q'` one at a time by unit representation.
pub fn dvr_isometry_decide(q: &QuadForm, q2: &QuadForm, v: &Valuation, budget: u64) -> Result<DvrIsometryVerdict> {
    if q.rank() != q2.rank() {
        return Err(Error::PreconditionViolation(format!("ranks {} and {}", q.rank(), q2.rank())));
    }
    require_simple_one(q, v)?;
    require_simple_one(q2, v)?;
    let k = q.field().clone();
    let l1 = diagonalize_local(q, v)?;
    let l2 = diagonalize_local(q2, v)?;
    let mut transcript = vec![format!("q  ~ {}", fmt_diag(&l1.coeffs())), format!("q' ~ {}", fmt_diag(&l2.coeffs()))];
    let not_iso =
        |invariant: String, transcript: Vec<String>| Ok(DvrIsometryVerdict::NotIsometric { invariant, transcript });
    let ratio = product(&l1.coeffs(), &k).checked_div(&product(&l2.coeffs(), &k))?;
    if !v.residue_is_square(&ratio)? {
        return not_iso(format!("discriminants differ by the unit class {}", v.residue(&ratio)?), transcript);
    }
    transcript.push("discriminants agree".into());
    let (t1, t2) = (v.unit_part(&l1.top)?, v.unit_part(&l2.top)?);
    let second = t1.checked_div(&t2)?;
    if !v.residue_is_square(&second)? {
        return not_iso(
            format!("second residue forms <{}> and <{}> differ", v.residue(&t1)?, v.residue(&t2)?),
            transcript,
        );
    }
    let mut mine: Vec<Elem> = l1.units.iter().map(|u| v.residue(u)).collect::<Result<_>>()?;
    let mut theirs: Vec<Elem> = l2.units.iter().map(|u| v.residue(u)).collect::<Result<_>>()?;
    while mine.len() > 1 {
        let c = mine.remove(0);
        let lifted: Vec<Elem> = theirs.iter().map(|x| v.lift(x)).collect::<Result<_>>()?;
        let mut cur = lifted.clone();
        cur.push(l2.top.clone());
        let rep = match represents_local(&QuadForm::diag(&cur), &v.lift(&c)?, v, budget) {
            Ok(r) => r,
            Err(Error::UnsupportedDomain(m)) => {
                return Ok(DvrIsometryVerdict::Unknown { reason: m, transcript });
            }
            Err(e) => return Err(e),
        };
        if !rep.represented {
            return not_iso(
                format!("{} is represented by the residue form of q but not by {}", c, fmt_diag(&theirs)),
                transcript,
            );
        }
        let Some(w) = rep.residue_witness else {
            return Ok(DvrIsometryVerdict::Unknown {
                reason: "no residue vector for the representation".into(),
                transcript,
            });
        };
        let wbar: Vec<Elem> = w[..theirs.len()].iter().map(|x| v.residue(x)).collect::<Result<_>>()?;
        transcript.push(format!("split off <{}> from {}", c, fmt_diag(&theirs)));
        theirs = split_off(&theirs, &wbar)?;
    }
    if let (Some(c), Some(c2)) = (mine.first(), theirs.first()) {
        if !c.checked_div(c2)?.is_square()? {
            return not_iso(format!("last unit entries {} and {} differ", c, c2), transcript);
        }
        transcript.push(format!("last unit entries {} and {} agree", c, c2));
    }
    Ok(DvrIsometryVerdict::Isometric { chain: l1.coeffs(), transcript })
}

/// Parity of the value of the similarity factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Branch {
    Even,
    Odd,
}

#[derive(Clone, Debug, PartialEq)]
pub enum DvrSimilarityVerdict {
    /// Similarity factor classes found, with the branch of the argument that
    /// produced each.
    Similar {
        factors: Vec<(Elem, Branch)>,
        transcript: Vec<String>,
    },
    NotSimilar {
        reason: String,
        transcript: Vec<String>,
    },
    Unknown {
        reason: String,
        transcript: Vec<String>,
    },
}

impl DvrSimilarityVerdict {
    pub fn is_similar(&self) -> Option<bool> {
        match self {
            DvrSimilarityVerdict::Similar { .. } => Some(true),
            DvrSimilarityVerdict::NotSimilar { .. } => Some(false),
            DvrSimilarityVerdict::Unknown { .. } => None,
        }
    }
}

impl fmt::Display for DvrSimilarityVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (t, tail) = match self {
            DvrSimilarityVerdict::Similar { factors, transcript } => {
                let fs: Vec<String> = factors
                    .iter()
                    .map(|(x, b)| format!("{} ({})", x, if *b == Branch::Even { "even" } else { "odd" }))
                    .collect();
                (transcript, format!("verdict: similar\nfactors: {}", fs.join(", ")))
            }
            DvrSimilarityVerdict::NotSimilar { reason, transcript } => {
                (transcript, format!("verdict: not-similar\nreason: {}", reason))
            }
            DvrSimilarityVerdict::Unknown { reason, transcript } => {
                (transcript, format!("verdict: unknown\nreason: {}", reason))
            }
        };
        for l in t {
            writeln!(f, "{}", l)?;
        }
        write!(f, "{}", tail)
    }
}

/// Unit square classes to try: both classes over a finite residue field,
/// otherwise ratios of the residue entries.
fn unit_classes(l1: &[Elem], l2: &[Elem], v: &Valuation) -> Result<(Vec<Elem>, bool)> {
    let kappa = v.residue_field()?;
    let k = v.field().clone();
    if kappa.is_finite() {
        return Ok((vec![k.one(), v.lift(&finite_nonsquare(&kappa)?)?], true));
    }
    let mut out = vec![k.one()];
    for a in l1 {
        for b in l2 {
            let r = a.checked_div(b)?;
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    Ok((out, false))
}

/// Similarity of rank-4 forms with simple degeneration of multiplicity one
/// over the completion. A factor `u` of even value means `q ≅ u q'`; a factor
/// `uπ` of odd value forces the unimodular part of `q` to be `h ⊥ ⟨−a⟩`
/// (`q ≅ q_1 ⊥ ⟨aπ⟩`) and then means `q ≅ −u q'`.
pub fn dvr_similarity_decide(q: &QuadForm, q2: &QuadForm, v: &Valuation, budget: u64) -> Result<DvrSimilarityVerdict> {
    if q.rank() != 4 || q2.rank() != 4 {
        return Err(Error::PreconditionViolation("only rank 4 is supported".into()));
    }
    require_simple_one(q, v)?;
    require_simple_one(q2, v)?;
    let k = q.field().clone();
    let l1 = diagonalize_local(q, v)?;
    let l2 = diagonalize_local(q2, v)?;
    let mut transcript = Vec::new();
    let ratio = product(&l1.coeffs(), &k).checked_div(&product(&l2.coeffs(), &k))?;
    if !v.residue_is_square(&ratio)? {
        return Ok(DvrSimilarityVerdict::NotSimilar {
            reason: format!("discriminants differ by the unit class {}", v.residue(&ratio)?),
            transcript,
        });
    }
    let (classes, complete) = unit_classes(&l1.units, &l2.units, v)?;
    let mut factors = Vec::new();
    let mut undecided = false;
    for u in &classes {
        let r = dvr_isometry_decide(q, &q2.scale(u), v, budget)?;
        transcript.push(format!("even, factor {}: {}", u, verdict_word(&r)));
        match r.is_isometric() {
            Some(true) => factors.push((u.clone(), Branch::Even)),
            None => undecided = true,
            Some(false) => {}
        }
    }
    // with the parameter π_q in the discriminant class, q ≅ q_1 ⊥ ⟨aπ_q⟩ where
    // a ~ u_1u_2u_3, so disc(q̄_1) = ā holds automatically and only isotropy
    // of q̄_1 is left to check
    let pi_q = product(&l1.coeffs(), &k);
    let first: Vec<Elem> = l1.units.iter().map(|x| v.residue(x)).collect::<Result<_>>()?;
    let abar = product(&first, &first[0].tower().clone());
    let odd_ok = match crate::places::decide_isotropic(&first)? {
        Some(b) => Some(b),
        None => find_isotropic(&first, budget)?.map(|_| true),
    };
    transcript.push(format!(
        "odd: unimodular part {} is h + <{}>: {}",
        fmt_diag(&first),
        -&abar,
        odd_ok.map_or("undecided".to_string(), |b| b.to_string())
    ));
    match odd_ok {
        Some(true) => {
            for u in &classes {
                let r = dvr_isometry_decide(q, &q2.scale(&-u), v, budget)?;
                transcript.push(format!("odd, factor {}: {}", &pi_q * u, verdict_word(&r)));
                match r.is_isometric() {
                    Some(true) => factors.push((&pi_q * u, Branch::Odd)),
                    None => undecided = true,
                    Some(false) => {}
                }
            }
        }
        None => undecided = true,
        Some(false) => {}
    }
    if !factors.is_empty() {
        return Ok(DvrSimilarityVerdict::Similar { factors, transcript });
    }
    if complete && !undecided {
        return Ok(DvrSimilarityVerdict::NotSimilar { reason: "no unit class gives an isometry".into(), transcript });
    }
    Ok(DvrSimilarityVerdict::Unknown {
        reason: "the residue field has infinitely many square classes".into(),
        transcript,
    })
}

fn verdict_word(r: &DvrIsometryVerdict) -> &'static str {
    match r {
        DvrIsometryVerdict::Isometric { .. } => "isometric",
        DvrIsometryVerdict::NotIsometric { .. } => "not isometric",
        DvrIsometryVerdict::Unknown { .. } => "unknown",
    }
}

/// Local isotropy of `q` at one valuation, read off the residue form.
#[derive(Clone, Debug)]
pub struct LocalWitness {
    /// The form with even powers of the uniformizer stripped from each
    /// diagonal entry (isometric over `K`).
    pub model: QuadForm,
    pub report: DegenerationReport,
    /// Residues of the unit diagonal entries.
    pub residue_form: Vec<Elem>,
    pub witness: Option<Vec<Elem>>,
    /// Why the residue form is isotropic when no vector is given.
    pub reason: Option<String>,
}

impl LocalWitness {
    pub fn holds(&self) -> bool {
        self.witness.is_some() || self.reason.is_some()
    }
}

#[derive(Clone, Debug)]
pub enum AnisotropyHalf {
    Nonsplit(SplitCertificate),
    /// The form is isotropic, so no anisotropy claim is made.
    Refused {
        witness: Vec<Elem>,
    },
    Missing {
        reason: String,
    },
}

#[derive(Clone, Debug)]
pub struct LocalGlobalCertificate {
    pub form: QuadForm,
    pub locals: Vec<LocalWitness>,
    pub anisotropy: AnisotropyHalf,
}

impl LocalGlobalCertificate {
    /// `Ok` when every local witness holds and the anisotropy half is present.
    pub fn status(&self) -> Result<()> {
        if let Some(l) = self.locals.iter().find(|l| !l.holds()) {
            return Err(Error::CertificateIncomplete(format!("no residue isotropy witness at {}", l.report.valuation)));
        }
        match &self.anisotropy {
            AnisotropyHalf::Nonsplit(_) => Ok(()),
            AnisotropyHalf::Refused { .. } => Err(Error::CertificateIncomplete("the form is isotropic".into())),
            AnisotropyHalf::Missing { reason } => Err(Error::CertificateIncomplete(reason.clone())),
        }
    }

    /// Re-checks every witness from scratch.
    pub fn verify(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidWitness(m));
        for l in &self.locals {
            let v = &l.report.valuation;
            if l.model != strip_squares(&self.form, v)? {
                return bad(format!("model at {} does not reproduce", v));
            }
            let r = degeneration_report(&l.model, v)?;
            if !matches!(r.verdict, Verdict::Regular | Verdict::Simple(1)) || r.verdict != l.report.verdict {
                return bad(format!("report at {} does not reproduce", v));
            }
            let ld = diagonalize_local(&l.model, v)?;
            let units = if ld.multiplicity == 0 { ld.coeffs() } else { ld.units };
            let res: Vec<Elem> = units.iter().map(|u| v.residue(u)).collect::<Result<_>>()?;
            if res != l.residue_form {
                return bad(format!("residue form at {} does not reproduce", v));
            }
            if let Some(w) = &l.witness {
                let val = QuadForm::diag(&res).q(w);
                if w.len() != res.len() || w.iter().all(|x| x.is_zero()) || !val.is_zero() {
                    return bad(format!("residue witness at {} is not a nonzero zero", v));
                }
            }
        }
        match &self.anisotropy {
            AnisotropyHalf::Nonsplit(c) => {
                c.verify()?;
                if c.is_split() != Some(false) {
                    return bad("anisotropy certificate is not a nonsplit verdict".into());
                }
            }
            AnisotropyHalf::Refused { witness } => {
                if witness.iter().all(|x| x.is_zero()) || !self.form.q(witness).is_zero() {
                    return bad("isotropy witness does not check".into());
                }
            }
            AnisotropyHalf::Missing { .. } => {}
        }
        Ok(())
    }
}

impl fmt::Display for LocalGlobalCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "form: {}", fmt_diag(&self.form.diagonal_coeffs().unwrap_or_default()))?;
        for l in &self.locals {
            write!(
                f,
                "local {}: model {}, {}, residue form {}",
                l.report.valuation,
                fmt_diag(&l.model.diagonal_coeffs().unwrap_or_default()),
                l.report.verdict,
                fmt_diag(&l.residue_form)
            )?;
            match (&l.witness, &l.reason) {
                (Some(w), _) => writeln!(f, ", zero {}", fmt_vec(w))?,
                (None, Some(r)) => writeln!(f, ", {}", r)?,
                (None, None) => writeln!(f, ", no witness")?,
            }
        }
        match &self.anisotropy {
            AnisotropyHalf::Nonsplit(c) => writeln!(f, "anisotropy:\n{}", c)?,
            AnisotropyHalf::Refused { witness } => {
                writeln!(f, "anisotropy: refused, isotropic vector {}", fmt_vec(witness))?
            }
            AnisotropyHalf::Missing { reason } => writeln!(f, "anisotropy: missing ({})", reason)?,
        }
        write!(f, "status: {}", if self.status().is_ok() { "complete" } else { "incomplete" })
    }
}

fn strip_squares(q: &QuadForm, v: &Valuation) -> Result<QuadForm> {
    let pi = v.uniformizer();
    let coeffs = q.diagonal_coeffs().ok_or_else(|| Error::PreconditionViolation("form is not diagonal".into()))?;
    let stripped = coeffs
        .iter()
        .map(|c| {
            let e = v.value(c).ok_or(Error::DegenerateForm)?;
            Ok(c * &pi.pow(-2 * e.div_euclid(2)).unwrap())
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(QuadForm::diag(&stripped))
}

fn local_witness(form: &QuadForm, v: &Valuation, budget: u64) -> Result<LocalWitness> {
    let model = strip_squares(form, v)?;
    let q = &model;
    let report = degeneration_report(q, v)?;
    if !matches!(report.verdict, Verdict::Regular | Verdict::Simple(1)) {
        return Err(Error::NotSimpleDegeneration);
    }
    let ld = diagonalize_local(q, v)?;
    let units = if ld.multiplicity == 0 { ld.coeffs() } else { ld.units };
    let residue_form: Vec<Elem> = units.iter().map(|u| v.residue(u)).collect::<Result<_>>()?;
    let kappa = v.residue_field()?;
    let search_budget = match kappa.order() {
        Some(o) => o.saturating_pow(residue_form.len() as u32).max(budget),
        None => budget,
    };
    let witness = find_isotropic(&residue_form, search_budget)?;
    let reason = match (&witness, kappa.order()) {
        (None, Some(_)) if residue_form.len() >= 3 => {
            Some(format!("{} is C1 and the residue form has rank {} > 2", kappa, residue_form.len()))
        }
        _ => None,
    };
    Ok(LocalWitness { model, report, residue_form, witness, reason })
}

/// Local isotropy of `⟨1, a, b, abd⟩` at each listed valuation (residue
/// forms with a zero lift by Hensel's lemma) together with a nonsplitting
/// certificate of `(−a, −b)` over `K(√d)`, which makes the form anisotropic.
pub fn local_global_certificate(
    a: &Elem,
    b: &Elem,
    d: &Elem,
    valuations: &[Valuation],
    budget: u64,
) -> Result<LocalGlobalCertificate> {
    if a.is_zero() || b.is_zero() || d.is_zero() {
        return Err(Error::ZeroSlot);
    }
    let k = a.tower().clone();
    if k.characteristic() == 0 {
        return Err(Error::PreconditionViolation("the constant field must be finite".into()));
    }
    let form = QuadForm::diag(&[k.one(), a.clone(), b.clone(), &(a * b) * d]);
    let locals = valuations.iter().map(|v| local_witness(&form, v, budget)).collect::<Result<Vec<_>>>()?;
    let qz = quaternionize(&even_clifford(&form)?)?;
    let cert = is_split(&qz.algebra, budget)?;
    let anisotropy = match cert.verdict {
        SplitVerdict::Split { .. } => match isotropy_rank4(&form, budget)? {
            IsotropyVerdict::Isotropic { witness } => AnisotropyHalf::Refused { witness },
            _ => AnisotropyHalf::Missing { reason: "the algebra splits but no isotropic vector was found".into() },
        },
        SplitVerdict::Unknown { ref reason } => AnisotropyHalf::Missing { reason: reason.clone() },
        _ => AnisotropyHalf::Nonsplit(cert),
    };
    let out = LocalGlobalCertificate { form, locals, anisotropy };
    out.verify()?;
    Ok(out)
}
