//! Cubic fourfolds containing the plane `P = {x₀ = x₁ = x₂ = 0}` and the
//! quadric surface bundle over `P²` they define: with coordinates
//! `(x₀,x₁,x₂,y₀,y₁,y₂)`, a cubic in the ideal `(x₀,x₁,x₂)` reads
//! `F = Σ a_mn y_m y_n + Σ b_p y_p + c`, the fibre form is
//! `q(y, z) = Σ a_mn y_m y_n + Σ b_p y_p z + c z²`.

pub mod mpoly;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower, Kind};
use crate::linalg::Matrix;
pub use mpoly::{var_names, MPoly, PolyRing};

pub fn cubic_vars() -> Arc<[String]> {
    var_names(&["x0", "x1", "x2", "y0", "y1", "y2"])
}

pub fn base_vars() -> Arc<[String]> {
    var_names(&["x0", "x1", "x2"])
}

fn check_field(k: &FieldTower) -> Result<()> {
    match k.kind() {
        Kind::Rationals => Ok(()),
        Kind::Prime { .. } if k.characteristic() == 2 => Err(Error::CharacteristicTwo),
        Kind::Prime { .. } => Ok(()),
        _ => Err(Error::UnsupportedDomain(format!("cubics over {}", k))),
    }
}

/// A homogeneous cubic in `x₀,x₁,x₂,y₀,y₁,y₂` lying in `(x₀,x₁,x₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct CubicContainingPlane {
    f: MPoly,
}

impl CubicContainingPlane {
    pub fn new(f: MPoly) -> Result<CubicContainingPlane> {
        check_field(f.field())?;
        let f = f.rename(&cubic_vars())?;
        if f.homogeneous_degree() != Some(3) {
            return Err(Error::PreconditionViolation(format!("{} is not a homogeneous cubic", f)));
        }
        if f.terms().any(|(e, _)| e[..3].iter().all(|&k| k == 0)) {
            return Err(Error::PlaneNotContained);
        }
        Ok(CubicContainingPlane { f })
    }

    pub fn parse(text: &str, field: &FieldTower) -> Result<CubicContainingPlane> {
        CubicContainingPlane::new(MPoly::parse(text, field, &cubic_vars())?)
    }

    pub fn poly(&self) -> &MPoly {
        &self.f
    }
}

impl fmt::Display for CubicContainingPlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.f)
    }
}

/// `a` is symmetric with linear entries, `b` quadratic, `c` cubic, all in
/// `x₀,x₁,x₂`.
#[derive(Clone, Debug, PartialEq)]
pub struct BundleForm {
    pub a: Matrix<MPoly>,
    pub b: Vec<MPoly>,
    pub c: MPoly,
}

impl BundleForm {
    pub fn field(&self) -> &FieldTower {
        self.c.field()
    }

    /// The symmetric matrix `M` with `q(v) = vᵀ M v`:
    /// `[[a, b/2], [b/2ᵀ, c]]`.
    pub fn gram(&self) -> Matrix<MPoly> {
        let half = self.field().from_int(2).try_inv().unwrap();
        Matrix::from_fn(4, 4, |i, j| match (i, j) {
            (3, 3) => self.c.clone(),
            (3, p) | (p, 3) => self.b[p].scale(&half),
            (m, n) => self.a.get(m, n).clone(),
        })
    }

    /// Reads a form back off a symmetric matrix as produced by [`gram`](Self::gram).
    pub fn from_gram(m: &Matrix<MPoly>) -> BundleForm {
        let two = m.get(0, 0).field().from_int(2);
        BundleForm {
            a: Matrix::from_fn(3, 3, |i, j| m.get(i, j).clone()),
            b: (0..3).map(|p| m.get(p, 3).scale(&two)).collect(),
            c: m.get(3, 3).clone(),
        }
    }

    /// `Σ a_mn y_m y_n + Σ b_p y_p + c` as a cubic in six variables.
    pub fn reassemble(&self) -> MPoly {
        let vars = cubic_vars();
        let k = self.field().clone();
        let lift = |p: &MPoly| p.rename(&vars).expect("base variables embed");
        let y = |i: usize| MPoly::var(&k, &vars, 3 + i);
        let mut f = lift(&self.c);
        for m in 0..3 {
            f = &f + &(&lift(&self.b[m]) * &y(m));
            for n in 0..3 {
                f = &f + &(&lift(self.a.get(m, n)) * &(&y(m) * &y(n)));
            }
        }
        f
    }

    fn degrees_ok(&self) -> bool {
        let ok = |p: &MPoly, d: u32| p.is_zero() || p.homogeneous_degree() == Some(d);
        (0..3).all(|m| (0..3).all(|n| ok(self.a.get(m, n), 1) && self.a.get(m, n) == self.a.get(n, m)))
            && self.b.iter().all(|p| ok(p, 2))
            && ok(&self.c, 3)
    }
}

impl fmt::Display for BundleForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for m in 0..3 {
            for n in m..3 {
                writeln!(f, "a{}{} = {}", m, n, self.a.get(m, n))?;
            }
        }
        for p in 0..3 {
            writeln!(f, "b{} = {}", p, self.b[p])?;
        }
        write!(f, "c = {}", self.c)
    }
}

/// Coefficient reading by `y`-degree; `y_m y_n` with `m ≠ n` is split evenly
/// between `a_mn` and `a_nm`.
pub fn extract_bundle(cubic: &CubicContainingPlane) -> Result<BundleForm> {
    let f = &cubic.f;
    let k = f.field().clone();
    let bv = base_vars();
    let zero = MPoly::zero(&k, &bv);
    let mut a = Matrix::from_fn(3, 3, |_, _| zero.clone());
    let mut b = vec![zero.clone(); 3];
    let mut c = zero.clone();
    let half = k.from_int(2).try_inv().unwrap();
    for (e, coef) in f.terms() {
        let x = MPoly::monomial(&k, &bv, e[..3].to_vec(), coef.clone());
        let ys: Vec<usize> = (0..3).flat_map(|i| std::iter::repeat_n(i, e[3 + i] as usize)).collect();
        match ys.as_slice() {
            [] => c = &c + &x,
            [p] => b[*p] = &b[*p] + &x,
            [m, n] if m == n => a.set(*m, *m, a.get(*m, *m) + &x),
            [m, n] => {
                let h = x.scale(&half);
                a.set(*m, *n, a.get(*m, *n) + &h);
                a.set(*n, *m, a.get(*n, *m) + &h);
            }
            _ => return Err(Error::PlaneNotContained),
        }
    }
    let out = BundleForm { a, b, c };
    if out.reassemble() != *f || !out.degrees_ok() {
        return Err(Error::ContractViolation);
    }
    Ok(out)
}

/// `det` of the 4×4 matrix of the fibre form, a sextic.
pub fn discriminant_sextic(bf: &BundleForm) -> Result<MPoly> {
    let d = bf.gram().det_expand();
    if d.is_zero() {
        return Err(Error::GenericallyDegenerate);
    }
    if d.homogeneous_degree() != Some(6) {
        return Err(Error::ContractViolation);
    }
    Ok(d)
}

/// An irreducible factor of `g` found by trying coordinate variables, then
/// (over prime fields) monic linear forms; `g` itself when neither works.
fn pick_factor(g: &MPoly) -> MPoly {
    let k = g.field().clone();
    let vars = g.vars().clone();
    let n = g.nvars();
    for i in 0..n {
        let x = MPoly::var(&k, &vars, i);
        if x.divides(g) {
            return x;
        }
    }
    if let Some(p) = k.order() {
        for i in 0..n {
            let rest = n - 1 - i;
            let count = p.saturating_pow(rest as u32);
            if count > 4096 {
                continue;
            }
            for idx in 0..count {
                let mut l = MPoly::var(&k, &vars, i);
                let mut r = idx;
                for j in (i + 1)..n {
                    let c = k.from_int((r % p) as i64);
                    r /= p;
                    l = &l + &MPoly::var(&k, &vars, j).scale(&c);
                }
                if l.divides(g) {
                    return l;
                }
            }
        }
    }
    g.monic()
}

/// Primes for the modular coprimality test over `Q`.
const CERT_PRIMES: [u64; 3] = [32003, 65521, 1000003];

/// Scales a polynomial over `Q` to a primitive integral one and reduces it
/// modulo `p`.
fn reduce_mod(f: &MPoly, k: &FieldTower) -> MPoly {
    let p = k.characteristic();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for (_, c) in f.terms() {
        let r = c.as_rational().expect("rational coefficient");
        den = den.lcm(r.denom());
        num = num.gcd(r.numer());
    }
    let mut out = MPoly::zero(k, f.vars());
    for (e, c) in f.terms() {
        let r = c.as_rational().expect("rational coefficient");
        let n = r.numer() * (&den / r.denom()) / &num;
        let m = n.mod_floor(&BigInt::from(p));
        out = &out + &MPoly::monomial(k, f.vars(), e.clone(), k.from_bigint(&m));
    }
    out
}

/// True when the homogeneous polynomials over `Q` are certified coprime by a
/// reduction modulo some prime. A primitive integral common factor `h` stays
/// a nonzero common factor of the same degree modulo every prime, so a
/// constant gcd modulo `p` rules it out. `false` means undecided.
fn coprime_mod_p(polys: &[MPoly]) -> bool {
    if polys.is_empty() || !matches!(polys[0].field().kind(), Kind::Rationals) {
        return false;
    }
    CERT_PRIMES.iter().any(|&p| {
        let k = FieldTower::prime(p).expect("prime");
        let g = polys
            .iter()
            .filter(|f| !f.is_zero())
            .map(|f| reduce_mod(f, &k))
            .fold(MPoly::zero(&k, polys[0].vars()), |acc, f| acc.gcd(&f));
        !g.is_zero() && g.is_constant()
    })
}

fn multiplicity(f: &MPoly, g: &MPoly) -> u32 {
    let mut e = 0;
    let mut cur = f.clone();
    while let Some(q) = cur.div_exact(g) {
        e += 1;
        cur = q;
        if cur.is_constant() {
            break;
        }
    }
    e
}

#[derive(Clone, Debug, PartialEq)]
pub enum MultiplicityCheck {
    MultiplicityOne,
    /// A factor of the discriminant with its exponent (at least 2).
    Fails {
        factor: MPoly,
        exponent: u32,
    },
}

impl fmt::Display for MultiplicityCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MultiplicityCheck::MultiplicityOne => write!(f, "multiplicity-one"),
            MultiplicityCheck::Fails { factor, exponent } => write!(f, "fails: ({})^{}", factor, exponent),
        }
    }
}

/// Squarefreeness of the discriminant via `gcd(det, ∂det/∂x_i)`.
pub fn multiplicity_one_check(bf: &BundleForm) -> Result<MultiplicityCheck> {
    let d = discriminant_sextic(bf)?;
    let partials: Vec<MPoly> = (0..3).map(|i| d.derivative(i)).collect();
    if coprime_mod_p(&[std::slice::from_ref(&d), partials.as_slice()].concat()) {
        return Ok(MultiplicityCheck::MultiplicityOne);
    }
    let g = partials.iter().fold(d.clone(), |acc, di| acc.gcd(di));
    if g.is_constant() {
        return Ok(MultiplicityCheck::MultiplicityOne);
    }
    let factor = pick_factor(&g);
    let exponent = multiplicity(&d, &factor);
    Ok(MultiplicityCheck::Fails { factor, exponent })
}

#[derive(Clone, Debug, PartialEq)]
pub enum LocusCheck {
    Simple,
    /// A factor of the discriminant dividing every 3×3 minor: the fibres over
    /// it have a radical of rank at least 2.
    Fails {
        factor: MPoly,
    },
}

impl fmt::Display for LocusCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LocusCheck::Simple => write!(f, "simple"),
            LocusCheck::Fails { factor } => write!(f, "fails: {}", factor),
        }
    }
}

/// The 16 minors of size 3 of a 4×4 matrix, by deleted row and column.
pub fn minors3(m: &Matrix<MPoly>) -> Vec<MPoly> {
    let mut out = Vec::with_capacity(16);
    for i in 0..4 {
        for j in 0..4 {
            let rows: Vec<usize> = (0..4).filter(|&r| r != i).collect();
            let cols: Vec<usize> = (0..4).filter(|&c| c != j).collect();
            out.push(m.submatrix(&rows, &cols).det_expand());
        }
    }
    out
}

/// No component of the discriminant curve lies in the common zero locus of
/// the 3×3 minors.
pub fn simple_degeneration_locus_check(bf: &BundleForm) -> Result<LocusCheck> {
    let d = discriminant_sextic(bf)?;
    let minors = minors3(&bf.gram());
    if coprime_mod_p(&[std::slice::from_ref(&d), minors.as_slice()].concat()) {
        return Ok(LocusCheck::Simple);
    }
    let g = minors.iter().fold(d, |acc, m| acc.gcd(m));
    if g.is_constant() {
        return Ok(LocusCheck::Simple);
    }
    Ok(LocusCheck::Fails { factor: pick_factor(&g) })
}

/// The automorphism `x ↦ u x`, `y ↦ G x + H y` of `P⁵` fixing the plane.
#[derive(Clone, Debug, PartialEq)]
pub struct JLift {
    pub h: Matrix<Elem>,
    pub g: Matrix<Elem>,
    pub u: Elem,
    /// `[[uI, 0], [G, H]]`.
    pub j: Matrix<Elem>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct JLiftReport {
    /// `Pᵀ M₂ P = λ M₁` for the bundle similarity `P = [[H, Gx], [0, u]]`.
    pub similarity_holds: bool,
    /// `F₂(J(x, y)) = uλ F₁(x, y)`.
    pub cubic_identity_holds: bool,
}

impl JLiftReport {
    pub fn holds(&self) -> bool {
        self.similarity_holds && self.cubic_identity_holds
    }
}

pub fn j_lift(h: &Matrix<Elem>, g: &Matrix<Elem>, u: &Elem) -> Result<JLift> {
    if h.rows() != 3 || h.cols() != 3 || g.rows() != 3 || g.cols() != 3 {
        return Err(Error::DimensionMismatch("H and G must be 3x3".into()));
    }
    if h.det().is_zero() {
        return Err(Error::SingularH);
    }
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    let k = u.tower().clone();
    let j = Matrix::from_fn(6, 6, |r, c| match (r < 3, c < 3) {
        (true, true) if r == c => u.clone(),
        (true, _) => k.zero(),
        (false, true) => g.get(r - 3, c).clone(),
        (false, false) => h.get(r - 3, c - 3).clone(),
    });
    Ok(JLift { h: h.clone(), g: g.clone(), u: u.clone(), j })
}

impl JLift {
    /// `P = [[H, Gx], [0, u]]` as a matrix of polynomials in `x₀,x₁,x₂`.
    fn bundle_matrix(&self) -> Matrix<MPoly> {
        let k = self.u.tower().clone();
        let bv = base_vars();
        let c = |e: &Elem| MPoly::constant(&k, &bv, e);
        let gx = |i: usize| {
            (0..3).fold(MPoly::zero(&k, &bv), |acc, j| &acc + &MPoly::var(&k, &bv, j).scale(self.g.get(i, j)))
        };
        Matrix::from_fn(4, 4, |r, col| match (r, col) {
            (3, 3) => c(&self.u),
            (3, _) => MPoly::zero(&k, &bv),
            (i, 3) => gx(i),
            (i, j) => c(self.h.get(i, j)),
        })
    }

    /// The form `q₂` with `q₂ ∘ P = λ q₁`.
    pub fn transform(&self, q1: &BundleForm, lambda: &Elem) -> Result<BundleForm> {
        let k = self.u.tower().clone();
        let bv = base_vars();
        let hinv = self.h.inverse().ok_or(Error::SingularH)?;
        let uinv = self.u.try_inv().ok_or(Error::ZeroElement)?;
        let c = |e: &Elem| MPoly::constant(&k, &bv, e);
        // P⁻¹ = [[H⁻¹, −H⁻¹Gx/u], [0, 1/u]]
        let hg = hinv.mul(&self.g);
        let corner = |i: usize| {
            (0..3).fold(MPoly::zero(&k, &bv), |acc, j| &acc + &MPoly::var(&k, &bv, j).scale(&-&(hg.get(i, j) * &uinv)))
        };
        let pinv = Matrix::from_fn(4, 4, |r, col| match (r, col) {
            (3, 3) => c(&uinv),
            (3, _) => MPoly::zero(&k, &bv),
            (i, 3) => corner(i),
            (i, j) => c(hinv.get(i, j)),
        });
        let m2 = pinv.transpose().mul(&q1.gram()).mul(&pinv);
        let m2 = Matrix::from_fn(4, 4, |i, j| m2.get(i, j).scale(lambda));
        Ok(BundleForm::from_gram(&m2))
    }

    pub fn verify(&self, q1: &BundleForm, q2: &BundleForm, lambda: &Elem) -> JLiftReport {
        let p = self.bundle_matrix();
        let lhs = p.transpose().mul(&q2.gram()).mul(&p);
        let rhs = q1.gram();
        let similarity_holds = (0..4).all(|i| (0..4).all(|j| *lhs.get(i, j) == rhs.get(i, j).scale(lambda)));
        let vars = cubic_vars();
        let k = self.u.tower().clone();
        let coords: Vec<MPoly> = (0..6).map(|i| MPoly::var(&k, &vars, i)).collect();
        let image: Vec<MPoly> = (0..6)
            .map(|r| (0..6).fold(MPoly::zero(&k, &vars), |acc, c| &acc + &coords[c].scale(self.j.get(r, c))))
            .collect();
        let f2 = q2.reassemble().substitute(&image);
        let f1 = q1.reassemble().scale(&(&self.u * lambda));
        JLiftReport { similarity_holds, cubic_identity_holds: f2 == f1 }
    }
}

impl fmt::Display for JLift {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "J = {}", self.j)
    }
}
