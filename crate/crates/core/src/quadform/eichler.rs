//! Eichler isometries of `q ⊥ h`, where `h` has basis `e, f` with
//! `q(e) = q(f) = 0`, `b(e,f) = 1`. Coordinates: those of `q`, then `e`, `f`.
//!
//! * `E_v: w ↦ w + b(v,w)e, e ↦ e, f ↦ −v − q(v)e + f`
//! * `E*_v: w ↦ w + b(v,w)f, e ↦ −v − q(v)f + e, f ↦ f`
//! * `α_u: e ↦ ue, f ↦ u⁻¹f`; `β_u: e ↦ u⁻¹f, f ↦ ue`

use std::fmt;

use super::{diagonalize, reflection, transport, QuadForm, Similarity};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{fmt_vec, is_zero_vec, vec_add, vec_scale, Matrix};

fn hyp_sum(q: &QuadForm) -> QuadForm {
    q.orthogonal_sum(&QuadForm::hyperbolic(q.field()))
}

pub fn eichler_e(q: &QuadForm, v: &[Elem]) -> Similarity {
    let n = q.rank();
    let k = q.field();
    let gv = q.gram().mul_vec(v);
    let mut m = Matrix::identity(n + 2, &k.one());
    for j in 0..n {
        m.set(n, j, gv[j].clone());
        m.set(j, n + 1, -&v[j]);
    }
    m.set(n, n + 1, -&q.q(v));
    Similarity::isometry(m)
}

pub fn eichler_e_star(q: &QuadForm, v: &[Elem]) -> Similarity {
    let n = q.rank();
    let k = q.field();
    let gv = q.gram().mul_vec(v);
    let mut m = Matrix::identity(n + 2, &k.one());
    for j in 0..n {
        m.set(n + 1, j, gv[j].clone());
        m.set(j, n, -&v[j]);
    }
    m.set(n + 1, n, -&q.q(v));
    Similarity::isometry(m)
}

/// `(E_v, E*_v)` as isometries of `q ⊥ h`.
pub fn eichler_maps(q: &QuadForm, v: &[Elem]) -> (Similarity, Similarity) {
    (eichler_e(q, v), eichler_e_star(q, v))
}

pub fn alpha(q: &QuadForm, u: &Elem) -> Result<Similarity> {
    let n = q.rank();
    let inv = u.try_inv().ok_or(Error::NonUnitValue)?;
    let mut m = Matrix::identity(n + 2, &q.field().one());
    m.set(n, n, u.clone());
    m.set(n + 1, n + 1, inv);
    Ok(Similarity::isometry(m))
}

pub fn beta(q: &QuadForm, u: &Elem) -> Result<Similarity> {
    let n = q.rank();
    let inv = u.try_inv().ok_or(Error::NonUnitValue)?;
    let mut m = Matrix::identity(n + 2, &q.field().one());
    let z = q.field().zero();
    m.set(n, n, z.clone());
    m.set(n + 1, n + 1, z);
    m.set(n + 1, n, inv);
    m.set(n, n + 1, u.clone());
    Ok(Similarity::isometry(m))
}

/// The conjugation identities
/// `α_u⁻¹E_vα_u = E_{u⁻¹v}`, `α_u⁻¹E*_vα_u = E*_{uv}`,
/// `β_u⁻¹E_vβ_u = E*_{u⁻¹v}`, `β_u⁻¹E*_vβ_u = E_{uv}`, checked exactly.
pub fn hyperbolic_conjugation_check(q: &QuadForm, v: &[Elem], u: &Elem) -> Result<bool> {
    let ui = u.try_inv().ok_or(Error::NonUnitValue)?;
    let a = alpha(q, u)?.matrix;
    let ai = alpha(q, &ui)?.matrix;
    let b = beta(q, u)?.matrix;
    let (e, es) = eichler_maps(q, v);
    let v_div = vec_scale(v, &ui);
    let v_mul = vec_scale(v, u);
    let conj = |x: &Matrix<Elem>, inv: &Matrix<Elem>, g: &Matrix<Elem>| inv.mul(g).mul(x);
    Ok(conj(&a, &ai, &e.matrix) == eichler_e(q, &v_div).matrix
        && conj(&a, &ai, &es.matrix) == eichler_e_star(q, &v_mul).matrix
        // β_u is an involution
        && conj(&b, &b, &e.matrix) == eichler_e_star(q, &v_div).matrix
        && conj(&b, &b, &es.matrix) == eichler_e(q, &v_mul).matrix)
}

#[derive(Clone, Debug, PartialEq)]
pub enum EichlerGen {
    E(Vec<Elem>),
    EStar(Vec<Elem>),
}

impl EichlerGen {
    pub fn similarity(&self, q: &QuadForm) -> Similarity {
        match self {
            EichlerGen::E(v) => eichler_e(q, v),
            EichlerGen::EStar(v) => eichler_e_star(q, v),
        }
    }

    fn inverse(&self) -> EichlerGen {
        match self {
            EichlerGen::E(v) => EichlerGen::E(neg(v)),
            EichlerGen::EStar(v) => EichlerGen::EStar(neg(v)),
        }
    }

    fn vector(&self) -> &[Elem] {
        match self {
            EichlerGen::E(v) | EichlerGen::EStar(v) => v,
        }
    }
}

impl fmt::Display for EichlerGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EichlerGen::E(v) => write!(f, "E{}", fmt_vec(v)),
            EichlerGen::EStar(v) => write!(f, "E*{}", fmt_vec(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HyperbolicTail {
    Alpha(Elem),
    Beta(Elem),
}

impl HyperbolicTail {
    pub fn similarity(&self, q: &QuadForm) -> Similarity {
        match self {
            HyperbolicTail::Alpha(u) => alpha(q, u).unwrap(),
            HyperbolicTail::Beta(u) => beta(q, u).unwrap(),
        }
    }

    /// `self ∘ o` inside `O(h)`.
    fn compose(&self, o: &HyperbolicTail) -> HyperbolicTail {
        use HyperbolicTail::*;
        let div = |a: &Elem, b: &Elem| a * &b.try_inv().unwrap();
        match (self, o) {
            (Alpha(a), Alpha(b)) => Alpha(a * b),
            (Beta(a), Beta(b)) => Alpha(div(a, b)),
            (Alpha(a), Beta(b)) => Beta(a * b),
            (Beta(a), Alpha(b)) => Beta(div(a, b)),
        }
    }

    /// `g'` with `self ∘ g = g' ∘ self`.
    fn push(&self, g: &EichlerGen) -> EichlerGen {
        use EichlerGen::*;
        use HyperbolicTail::*;
        let (u, inv) = match self {
            Alpha(u) | Beta(u) => (u.clone(), u.try_inv().unwrap()),
        };
        match (self, g) {
            (Alpha(_), E(y)) => E(vec_scale(y, &u)),
            (Alpha(_), EStar(y)) => EStar(vec_scale(y, &inv)),
            (Beta(_), E(y)) => EStar(vec_scale(y, &inv)),
            (Beta(_), EStar(y)) => E(vec_scale(y, &u)),
        }
    }
}

impl fmt::Display for HyperbolicTail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperbolicTail::Alpha(u) => write!(f, "alpha({})", u),
            HyperbolicTail::Beta(u) => write!(f, "beta({})", u),
        }
    }
}

/// `φ = g_1 ∘ g_2 ∘ … ∘ g_k ∘ tail`.
#[derive(Clone, Debug, PartialEq)]
pub struct EichlerDecomposition {
    pub generators: Vec<EichlerGen>,
    pub tail: HyperbolicTail,
}

impl EichlerDecomposition {
    pub fn recompose(&self, q: &QuadForm) -> Matrix<Elem> {
        let mut m = self.tail.similarity(q).matrix;
        for g in self.generators.iter().rev() {
            m = g.similarity(q).matrix.mul(&m);
        }
        m
    }
}

fn neg(v: &[Elem]) -> Vec<Elem> {
    v.iter().map(|x| -x).collect()
}

enum Token {
    Gen(EichlerGen),
    Tail(HyperbolicTail),
}

fn fail(msg: &str) -> Error {
    Error::DecompositionFailure(msg.to_string())
}

/// Writes an isometry of `q ⊥ h` (q regular, over a field) as a product of
/// `E`/`E*` generators followed by `α_u` or `β_u`.
pub fn eichler_decompose(q: &QuadForm, phi: &Similarity) -> Result<EichlerDecomposition> {
    let k = q.field().clone();
    if !k.is_field() {
        return Err(fail("base is not a field"));
    }
    if !q.is_regular() {
        return Err(fail("q is degenerate"));
    }
    let qh = hyp_sum(q);
    if !phi.is_isometry() || !phi.check(&qh, &qh) {
        return Err(fail("input is not an isometry of q ⊥ h"));
    }
    let n = q.rank();
    let split = |c: Vec<Elem>| (c[..n].to_vec(), c[n].clone(), c[n + 1].clone());
    let mut applied: Vec<EichlerGen> = Vec::new();
    let mut cur = phi.matrix.clone();
    let mut apply = |g: EichlerGen, cur: &mut Matrix<Elem>| {
        if !is_zero_vec(g.vector()) {
            *cur = g.similarity(q).matrix.mul(cur);
            applied.push(g);
        }
    };

    // make the e-coefficient of φ(e) nonzero
    let (w0, a, b) = split(cur.col(n));
    if a.is_zero() {
        if b.is_zero() {
            let gw = q.gram().mul_vec(&w0);
            let i = gw.iter().position(|x| !x.is_zero()).ok_or_else(|| fail("φ(e) = 0"))?;
            apply(EichlerGen::EStar(unit(&k, n, i)), &mut cur);
        }
        let (w0, _, b) = split(cur.col(n));
        let v = probe(q, |v| &q.b(v, &w0) - &(&b * &q.q(v))).ok_or_else(|| fail("no probe vector"))?;
        apply(EichlerGen::E(v), &mut cur);
    }
    // φ(e) = a e
    let (w0, a, _) = split(cur.col(n));
    let ainv = a.try_inv().ok_or_else(|| fail("e-coefficient vanished"))?;
    apply(EichlerGen::EStar(vec_scale(&w0, &ainv)), &mut cur);
    // φ(f) = a⁻¹ f
    let (w1, _, d) = split(cur.col(n + 1));
    let dinv = d.try_inv().ok_or_else(|| fail("f-coefficient vanished"))?;
    apply(EichlerGen::E(vec_scale(&w1, &dinv)), &mut cur);

    let idx: Vec<usize> = (0..n).collect();
    let sigma = cur.submatrix(&idx, &idx);
    if cur != sigma.direct_sum(&Matrix::diag(&[a.clone(), ainv])) {
        return Err(fail("normalization did not reach O(q) × O(h)"));
    }

    // σ = r_{x_1} ∘ … ∘ r_{x_m}
    let basis = diagonalize(q)?.basis;
    let mut s = sigma;
    let mut refl: Vec<Vec<Elem>> = Vec::new();
    for i in 0..n {
        let b_i = basis.col(i);
        let t = transport(q, &s.mul_vec(&b_i), &b_i)?;
        for x in t.reflections {
            s = reflection(q, &x)?.matrix.mul(&s);
            refl.push(x);
        }
    }
    if s != Matrix::identity(n, &k.one()) {
        return Err(fail("reflection factorization incomplete"));
    }

    // φ = applied⁻¹ ∘ Π (E_x E*_{x/c} E_x β_{−c}) ∘ α_a
    let mut word: Vec<Token> = applied.iter().map(|g| Token::Gen(g.inverse())).collect();
    for x in &refl {
        let c = q.q(x);
        let cinv = c.try_inv().unwrap();
        word.push(Token::Gen(EichlerGen::E(x.clone())));
        word.push(Token::Gen(EichlerGen::EStar(vec_scale(x, &cinv))));
        word.push(Token::Gen(EichlerGen::E(x.clone())));
        word.push(Token::Tail(HyperbolicTail::Beta(-&c)));
    }
    let mut tail = HyperbolicTail::Alpha(a);
    let mut gens: Vec<EichlerGen> = Vec::new();
    for tok in word.into_iter().rev() {
        match tok {
            Token::Gen(g) => gens.insert(0, g),
            Token::Tail(h) => {
                gens = gens.iter().map(|g| h.push(g)).collect();
                tail = h.compose(&tail);
            }
        }
    }
    let generators = merge(gens);
    let out = EichlerDecomposition { generators, tail };
    if out.recompose(q) != phi.matrix {
        return Err(fail("recomposition differs from input"));
    }
    Ok(out)
}

fn unit(k: &crate::field::FieldTower, n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}

/// First `t·x` (x a basis vector or a sum of two, t ∈ {1,2,3}) with `g ≠ 0`.
fn probe(q: &QuadForm, g: impl Fn(&[Elem]) -> Elem) -> Option<Vec<Elem>> {
    let k = q.field();
    let n = q.rank();
    let mut base: Vec<Vec<Elem>> = (0..n).map(|i| unit(k, n, i)).collect();
    for i in 0..n {
        for j in (i + 1)..n {
            base.push(vec_add(&base[i], &base[j]));
        }
    }
    for x in &base {
        for t in 1..=3 {
            let v = vec_scale(x, &k.from_int(t));
            if !is_zero_vec(&v) && !g(&v).is_zero() {
                return Some(v);
            }
        }
    }
    None
}

/// Merges adjacent generators of the same kind (`E_vE_w = E_{v+w}`) and drops
/// trivial ones.
fn merge(gens: Vec<EichlerGen>) -> Vec<EichlerGen> {
    let mut out: Vec<EichlerGen> = Vec::new();
    for g in gens {
        let merged = match (out.last(), &g) {
            (Some(EichlerGen::E(a)), EichlerGen::E(b)) => Some(EichlerGen::E(vec_add(a, b))),
            (Some(EichlerGen::EStar(a)), EichlerGen::EStar(b)) => Some(EichlerGen::EStar(vec_add(a, b))),
            _ => None,
        };
        match merged {
            Some(m) => {
                out.pop();
                if !is_zero_vec(m.vector()) {
                    out.push(m);
                }
            }
            None if is_zero_vec(g.vector()) => {}
            None => out.push(g),
        }
    }
    out
}
