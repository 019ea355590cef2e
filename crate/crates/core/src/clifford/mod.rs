//! Even Clifford algebras of diagonal forms of rank at most 4, as
//! structure-constant algebras on the even products `e_S`. Generators satisfy
//! `e_i² = a_i` for `q = ⟨a_1,…,a_n⟩`.

mod degenerate;

use std::fmt;

pub use degenerate::{degenerate_c0_iso, lie_map_check, unipotent_action, DegenerateIso, LieMapCheck, UnipotentAction};

use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::linalg::Matrix;
use crate::quadform::{QuadForm, Similarity};
use crate::quaternion::QuaternionAlgebra;

#[derive(Clone, PartialEq, Debug)]
pub struct EvenCliffordAlgebra {
    base: FieldTower,
    coeffs: Vec<Elem>,
    /// Even subsets of `{0..n}` as bitmasks, ordered by size then lexicographically.
    basis: Vec<u32>,
    /// `table[i][j] = (c, k)` with `e_{S_i} e_{S_j} = c e_{S_k}`.
    table: Vec<Vec<(Elem, usize)>>,
}

fn subset_label(s: u32) -> String {
    if s == 0 {
        return "1".to_string();
    }
    let digits: String = (0..4).filter(|i| s & (1 << i) != 0).map(|i| char::from(b'1' + i as u8)).collect();
    format!("e{}", digits)
}

/// `e_S e_T = sign · Π_{i ∈ S∩T} a_i · e_{S △ T}`.
fn monomial_product(s: u32, t: u32, coeffs: &[Elem]) -> (Elem, u32) {
    let mut swaps = 0;
    for i in 0..coeffs.len() {
        if s & (1 << i) != 0 {
            swaps += (t & ((1u32 << i) - 1)).count_ones();
        }
    }
    let one = coeffs[0].tower().one();
    let mut c = if swaps % 2 == 0 { one.clone() } else { -&one };
    for (i, a) in coeffs.iter().enumerate() {
        if s & t & (1 << i) != 0 {
            c = &c * a;
        }
    }
    (c, s ^ t)
}

impl EvenCliffordAlgebra {
    pub fn base(&self) -> &FieldTower {
        &self.base
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn rank(&self) -> usize {
        self.coeffs.len()
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn labels(&self) -> Vec<String> {
        self.basis.iter().map(|&s| subset_label(s)).collect()
    }

    pub fn basis_elem(&self, i: usize) -> Vec<Elem> {
        let mut v = vec![self.base.zero(); self.dim()];
        v[i] = self.base.one();
        v
    }

    pub fn one(&self) -> Vec<Elem> {
        self.basis_elem(0)
    }

    fn index_of(&self, s: u32) -> usize {
        self.basis.iter().position(|&b| b == s).expect("even subset")
    }

    /// The element `e_i e_j` (0-based indices, `i ≠ j`).
    pub fn pair(&self, i: usize, j: usize) -> Vec<Elem> {
        assert!(i != j);
        let (c, s) = monomial_product(1 << i, 1 << j, &self.coeffs);
        let mut v = vec![self.base.zero(); self.dim()];
        v[self.index_of(s)] = c;
        v
    }

    /// `e_1 e_2 ⋯ e_n` for even `n`.
    pub fn top(&self) -> Option<Vec<Elem>> {
        let n = self.rank();
        n.is_multiple_of(2).then(|| self.basis_elem(self.index_of((1 << n) - 1)))
    }

    pub fn mul(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        let mut out = vec![self.base.zero(); self.dim()];
        for (i, xi) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, yj) in y.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let (c, k) = &self.table[i][j];
                if !c.is_zero() {
                    out[*k] = &out[*k] + &(&(xi * yj) * c);
                }
            }
        }
        out
    }

    pub fn scale(&self, x: &[Elem], c: &Elem) -> Vec<Elem> {
        x.iter().map(|a| a * c).collect()
    }

    pub fn add(&self, x: &[Elem], y: &[Elem]) -> Vec<Elem> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    /// Exhaustive associativity on basis triples.
    pub fn is_associative(&self) -> bool {
        let e: Vec<Vec<Elem>> = (0..self.dim()).map(|i| self.basis_elem(i)).collect();
        e.iter().all(|x| {
            e.iter().all(|y| {
                let xy = self.mul(x, y);
                e.iter().all(|z| self.mul(&xy, z) == self.mul(x, &self.mul(y, z)))
            })
        })
    }

    /// `(e_ie_j)² = −a_ia_j`, `e_ie_j = −e_je_i` and `(e_ie_j)(e_je_k) = a_j e_ie_k`
    /// for distinct indices.
    pub fn relations_hold(&self) -> bool {
        let n = self.rank();
        let a = &self.coeffs;
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let eij = self.pair(i, j);
                if self.add(&eij, &self.pair(j, i)).iter().any(|c| !c.is_zero()) {
                    return false;
                }
                if self.mul(&eij, &eij) != self.scale(&self.one(), &-&(&a[i] * &a[j])) {
                    return false;
                }
                for k in (0..n).filter(|&k| k != i && k != j) {
                    if self.mul(&eij, &self.pair(j, k)) != self.scale(&self.pair(i, k), &a[j]) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Nonzero products `e12*e13 = -1*e23`, in basis order.
    pub fn dump(&self) -> String {
        let labels = self.labels();
        let mut lines = vec![format!("basis: {}", labels.join(", "))];
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let (c, k) = &self.table[i][j];
                if !c.is_zero() {
                    lines.push(format!("{}*{} = {}*{}", labels[i], labels[j], c, labels[*k]));
                }
            }
        }
        lines.join("\n")
    }

    /// Matrix of left multiplication by `x`.
    fn left_mult(&self, x: &[Elem]) -> Matrix<Elem> {
        let cols: Vec<Vec<Elem>> = (0..self.dim()).map(|j| self.mul(x, &self.basis_elem(j))).collect();
        Matrix::from_cols(&cols)
    }

    fn right_mult(&self, x: &[Elem]) -> Matrix<Elem> {
        let cols: Vec<Vec<Elem>> = (0..self.dim()).map(|j| self.mul(&self.basis_elem(j), x)).collect();
        Matrix::from_cols(&cols)
    }
}

impl fmt::Display for EvenCliffordAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.dump())
    }
}

pub fn even_clifford(q: &QuadForm) -> Result<EvenCliffordAlgebra> {
    let coeffs = q
        .diagonal_coeffs()
        .ok_or_else(|| Error::PreconditionViolation("even_clifford needs a diagonal form".into()))?;
    even_clifford_diag(&coeffs)
}

pub fn even_clifford_diag(coeffs: &[Elem]) -> Result<EvenCliffordAlgebra> {
    let n = coeffs.len();
    if !(2..=4).contains(&n) {
        return Err(Error::RankOutOfRange(n));
    }
    let base = coeffs[0].tower().clone();
    let mut c = EvenCliffordAlgebra { base, coeffs: coeffs.to_vec(), basis: sorted_basis(n), table: vec![] };
    let table = c
        .basis
        .iter()
        .map(|&s| {
            c.basis
                .iter()
                .map(|&t| {
                    let (coef, u) = monomial_product(s, t, coeffs);
                    (coef, c.index_of(u))
                })
                .collect()
        })
        .collect();
    c.table = table;
    Ok(c)
}

/// Even subsets ordered by size, then lexicographically on the sorted indices.
fn sorted_basis(n: usize) -> Vec<u32> {
    let mut v: Vec<u32> = (0..(1u32 << n)).filter(|s| s.count_ones() % 2 == 0).collect();
    let key = |s: &u32| {
        let idx: Vec<u32> = (0..n as u32).filter(|i| s & (1 << i) != 0).collect();
        (s.count_ones(), idx)
    };
    v.sort_by_key(key);
    v
}

#[derive(Clone, PartialEq, Debug)]
pub struct CenterDescription {
    pub rank: usize,
    /// A basis of the center, starting with `1`.
    pub basis: Vec<Vec<Elem>>,
    /// A central element outside `k·1`, when the rank is at least 2.
    pub generator: Option<Vec<Elem>>,
    /// `δ` with `z² = δ` when the square of the generator is a scalar.
    pub square: Option<Elem>,
}

/// The center, computed as the common kernel of `x ↦ e_S x − x e_S`.
pub fn center(c: &EvenCliffordAlgebra) -> Result<CenterDescription> {
    if !c.base.is_field() {
        return Err(Error::UnsupportedDomain(format!("center over {}", c.base)));
    }
    let d = c.dim();
    let mut rows: Vec<Vec<Elem>> = Vec::new();
    for i in 0..d {
        let e = c.basis_elem(i);
        let comm = c.right_mult(&e).sub(&c.left_mult(&e));
        rows.extend(comm.to_rows());
    }
    let kernel = Matrix::from_rows(rows).kernel();
    let rank = kernel.len();
    // normalize: 1 first, then elements with zero scalar part
    let mut basis = vec![c.one()];
    for v in kernel {
        let w = c.add(&v, &c.scale(&c.one(), &-&v[0]));
        if w.iter().any(|x| !x.is_zero())
            && Matrix::from_cols(&[basis.clone(), vec![w.clone()]].concat()).rank() > basis.len()
        {
            basis.push(w);
        }
    }
    let top = c.top().filter(|t| {
        (0..d).all(|i| {
            let e = c.basis_elem(i);
            c.mul(t, &e) == c.mul(&e, t)
        })
    });
    let generator = top.or_else(|| basis.get(1).cloned());
    let square = generator.as_ref().and_then(|z| {
        let z2 = c.mul(z, z);
        z2[1..].iter().all(|x| x.is_zero()).then(|| z2[0].clone())
    });
    for z in &basis {
        for i in 0..d {
            let e = c.basis_elem(i);
            if c.mul(z, &e) != c.mul(&e, z) {
                return Err(Error::ContractViolation);
            }
        }
    }
    Ok(CenterDescription { rank, basis, generator, square })
}

/// `C₀(⟨a₁,a₂,a₃,a₄⟩)` as the quaternion algebra `(−a₁a₂, −a₁a₃)` over
/// `L = K(√(a₁a₂a₃a₄))`, with `i ↦ e12`, `j ↦ e13`, `√δ ↦ e1234`.
#[derive(Clone, PartialEq, Debug)]
pub struct Quaternionization {
    pub algebra: QuaternionAlgebra,
    pub clifford: EvenCliffordAlgebra,
    /// Images of `1, i, j, k` in `C₀`.
    pub images: Vec<Vec<Elem>>,
}

impl Quaternionization {
    /// The image of a quaternion over `L` in `C₀`.
    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        let c = &self.clifford;
        let z = c.top().unwrap();
        let mut out = vec![c.base.zero(); c.dim()];
        for (m, xm) in x.iter().enumerate() {
            let (u, v) = xm.coords().expect("element of the étale algebra");
            let im = &self.images[m];
            out = c.add(&out, &c.scale(im, &u));
            out = c.add(&out, &c.scale(&c.mul(&z, im), &v));
        }
        out
    }

    /// Multiplicativity on all pairs of the 8 `K`-basis elements and bijectivity.
    pub fn verify(&self) -> bool {
        let l = self.algebra.base();
        let mut kbasis = Vec::new();
        for m in 0..4 {
            for g in [l.one(), l.sqrt_gen()] {
                let mut v = vec![l.zero(); 4];
                v[m] = g;
                kbasis.push(v);
            }
        }
        let c = &self.clifford;
        let imgs: Vec<Vec<Elem>> = kbasis.iter().map(|x| self.apply(x)).collect();
        if Matrix::from_cols(&imgs).rank() != c.dim() {
            return false;
        }
        kbasis
            .iter()
            .zip(&imgs)
            .all(|(x, ix)| kbasis.iter().zip(&imgs).all(|(y, iy)| self.apply(&self.algebra.mul(x, y)) == c.mul(ix, iy)))
    }
}

pub fn quaternionize(c: &EvenCliffordAlgebra) -> Result<Quaternionization> {
    if c.rank() != 4 {
        return Err(Error::RankOutOfRange(c.rank()));
    }
    let a = &c.coeffs;
    if a.iter().any(|x| x.is_zero()) {
        return Err(Error::DegenerateForm);
    }
    let delta = a.iter().fold(c.base.one(), |acc, x| &acc * x);
    let l = FieldTower::etale(&c.base, &delta)?;
    let algebra = QuaternionAlgebra::new(&l.embed(&-&(&a[0] * &a[1])), &l.embed(&-&(&a[0] * &a[2])))?;
    let i = c.pair(0, 1);
    let j = c.pair(0, 2);
    let k = c.mul(&i, &j);
    let out = Quaternionization { algebra, clifford: c.clone(), images: vec![c.one(), i, j, k] };
    if !out.verify() {
        return Err(Error::ContractViolation);
    }
    Ok(out)
}

/// A `K`-linear map between even Clifford algebras, columns are images of
/// basis elements.
#[derive(Clone, PartialEq, Debug)]
pub struct AlgebraMap {
    pub matrix: Matrix<Elem>,
}

impl AlgebraMap {
    pub fn apply(&self, x: &[Elem]) -> Vec<Elem> {
        self.matrix.mul_vec(x)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMap) -> AlgebraMap {
        AlgebraMap { matrix: self.matrix.mul(&first.matrix) }
    }

    pub fn is_homomorphism(&self, src: &EvenCliffordAlgebra, dst: &EvenCliffordAlgebra) -> bool {
        if self.apply(&src.one()) != dst.one() {
            return false;
        }
        (0..src.dim()).all(|i| {
            (0..src.dim()).all(|j| {
                let (x, y) = (src.basis_elem(i), src.basis_elem(j));
                self.apply(&src.mul(&x, &y)) == dst.mul(&self.apply(&x), &self.apply(&y))
            })
        })
    }
}

/// Product of two vectors in the full Clifford algebra of `⟨a⟩`, which lies
/// in `k ⊕ span(e_ie_j)`.
fn vector_product(c: &EvenCliffordAlgebra, v: &[Elem], w: &[Elem]) -> Vec<Elem> {
    let n = c.rank();
    let mut out = c.scale(
        &c.one(),
        &v.iter().zip(w).zip(&c.coeffs).fold(c.base.zero(), |acc, ((x, y), a)| &acc + &(&(x * y) * a)),
    );
    for k in 0..n {
        for l in (k + 1)..n {
            let coef = &(&v[k] * &w[l]) - &(&v[l] * &w[k]);
            if !coef.is_zero() {
                out = c.add(&out, &c.scale(&c.pair(k, l), &coef));
            }
        }
    }
    out
}

/// `C₀(ψ)` for a similarity `ψ: q → q'` of diagonal forms:
/// `e_ie_j ↦ λ⁻¹ ψ(e_i)ψ(e_j)`, verified to be a bijective homomorphism.
pub fn c0_functor(psi: &Similarity, q: &QuadForm, q2: &QuadForm) -> Result<AlgebraMap> {
    if !psi.check(q, q2) {
        return Err(Error::ContractViolation);
    }
    let src = even_clifford(q)?;
    let dst = even_clifford(q2)?;
    let linv = psi.factor.try_inv().ok_or(Error::ContractViolation)?;
    let n = src.rank();
    let cols: Vec<Vec<Elem>> = src
        .basis
        .iter()
        .map(|&s| {
            let idx: Vec<usize> = (0..n).filter(|i| s & (1 << i) != 0).collect();
            let mut img = dst.one();
            for pair in idx.chunks(2) {
                let p = vector_product(&dst, &psi.matrix.col(pair[0]), &psi.matrix.col(pair[1]));
                img = dst.mul(&img, &dst.scale(&p, &linv));
            }
            img
        })
        .collect();
    let map = AlgebraMap { matrix: Matrix::from_cols(&cols) };
    if !map.is_homomorphism(&src, &dst) || (dst.base.is_field() && map.matrix.rank() != dst.dim()) {
        return Err(Error::ContractViolation);
    }
    Ok(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alg(t: &FieldTower, a: &[i64]) -> EvenCliffordAlgebra {
        even_clifford(&QuadForm::diag_ints(t, a)).unwrap()
    }

    #[test]
    fn dimensions_and_labels() {
        let t = FieldTower::rationals();
        let c = alg(&t, &[1, 1, 1, 1]);
        assert_eq!(c.labels(), ["1", "e12", "e13", "e14", "e23", "e24", "e34", "e1234"]);
        assert_eq!(alg(&t, &[2, 3, 5]).dim(), 4);
        let c2 = alg(&t, &[2, 3]);
        assert_eq!(c2.dim(), 2);
        let z = c2.pair(0, 1);
        assert_eq!(c2.mul(&z, &z), c2.scale(&c2.one(), &t.from_int(-6)));
        assert!(matches!(even_clifford(&QuadForm::diag_ints(&t, &[1])), Err(Error::RankOutOfRange(1))));
        assert!(c.is_associative() && c.relations_hold());
    }

    #[test]
    fn dump_lines() {
        let t = FieldTower::rationals();
        let c = alg(&t, &[2, 3, 5]);
        assert!(c.dump().contains("e12*e13 = -2*e23"));
    }

    #[test]
    fn center_examples() {
        let t = FieldTower::prime(5).unwrap();
        let c = center(&alg(&t, &[1, 1, 1, 1])).unwrap();
        assert_eq!((c.rank, c.square.clone()), (2, Some(t.one())));
        let c = center(&alg(&t, &[1, -1, 1, 0])).unwrap();
        assert_eq!((c.rank, c.square.clone()), (2, Some(t.zero())));
        assert!(center(&alg(&t, &[1, 1, 0, 0])).unwrap().rank >= 3);
        assert_eq!(center(&alg(&t, &[1, 2, 3])).unwrap().rank, 1);
    }

    #[test]
    fn quaternionize_examples() {
        let t = FieldTower::rationals();
        let qz = quaternionize(&alg(&t, &[1, 2, 3, 30])).unwrap();
        let l = qz.algebra.base().clone();
        assert_eq!(qz.algebra.a(), &l.from_int(-2));
        assert_eq!(qz.algebra.b(), &l.from_int(-3));
        assert!(quaternionize(&alg(&t, &[1, 1, 1, 1])).unwrap().algebra.base().is_split_etale());
        assert_eq!(quaternionize(&alg(&t, &[1, 1, 1, 0])).unwrap_err(), Error::DegenerateForm);
    }

    #[test]
    fn functor_identity_and_homothety() {
        let t = FieldTower::rationals();
        let q = QuadForm::diag_ints(&t, &[1, 2, 3, 5]);
        let id = Similarity::identity(4, &t);
        let m = c0_functor(&id, &q, &q).unwrap();
        assert_eq!(m.matrix, Matrix::identity(8, &t.one()));
        let mu = t.from_int(3);
        let h = Similarity { matrix: Matrix::identity(4, &t.one()).scale(&mu), factor: mu.square() };
        assert_eq!(c0_functor(&h, &q, &q).unwrap().matrix, Matrix::identity(8, &t.one()));
        let bad = Similarity { matrix: Matrix::identity(4, &t.one()), factor: t.from_int(2) };
        assert_eq!(c0_functor(&bad, &q, &q).unwrap_err(), Error::ContractViolation);
    }
}
