//! Quadratic forms stored as Gram matrices of their polar bilinear form, so
//! `q(v) = ½ vᵀGv` and `b(v,w) = vᵀGw`. The diagonal shorthand `⟨a_1,…,a_n⟩`
//! means `q = Σ a_i x_i²`, i.e. Gram matrix `2·diag(a_i)`.

mod eichler;
mod local;
mod reflect;
mod relations;

use std::fmt;

pub use eichler::{
    alpha, beta, eichler_decompose, eichler_e, eichler_e_star, eichler_maps, hyperbolic_conjugation_check,
    EichlerDecomposition, EichlerGen, HyperbolicTail,
};
pub use local::{
    degeneration_report, diagonalize_local, isotropic_complete, represents_local, DegenerationReport,
    LocalDiagonalization, RepresentationResult, Verdict,
};
pub use reflect::{cancel, reflection, reflection_local, transport, transport_local, transport_product, Transport};
pub use relations::{orthogonal_relations_check, RelationsCheck};

use crate::error::{Error, Result};
use crate::field::parse::{parse_elem, parse_field, parse_matrix, split_top_level};
use crate::field::squareclass::{squareclass_reduce, SquareClass};
use crate::field::{Elem, FieldTower};
use crate::linalg::{dot, fmt_vec, Matrix};

#[derive(Clone, PartialEq)]
pub struct QuadForm {
    field: FieldTower,
    gram: Matrix<Elem>,
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.diagonal_coeffs() {
            Some(c) => write!(f, "diag{}", fmt_vec(&c)),
            None => write!(f, "form {{ field: {}, gram: {} }}", self.field, self.gram),
        }
    }
}

impl QuadForm {
    pub fn from_gram(gram: Matrix<Elem>) -> Result<QuadForm> {
        if !gram.is_square() || gram.rows() == 0 {
            return Err(Error::DimensionMismatch("Gram matrix must be square and nonempty".into()));
        }
        if !gram.is_symmetric() {
            return Err(Error::PreconditionViolation("Gram matrix is not symmetric".into()));
        }
        let field = gram.get(0, 0).tower().clone();
        Ok(QuadForm { field, gram })
    }

    pub fn from_rows(rows: Vec<Vec<Elem>>) -> Result<QuadForm> {
        QuadForm::from_gram(Matrix::from_rows(rows))
    }

    /// `⟨a_1,…,a_n⟩`, i.e. `q = Σ a_i x_i²`.
    pub fn diag(coeffs: &[Elem]) -> QuadForm {
        assert!(!coeffs.is_empty());
        let g: Vec<Elem> = coeffs.iter().map(|a| a.double()).collect();
        QuadForm { field: coeffs[0].tower().clone(), gram: Matrix::diag(&g) }
    }

    pub fn diag_ints(field: &FieldTower, coeffs: &[i64]) -> QuadForm {
        QuadForm::diag(&coeffs.iter().map(|&a| field.from_int(a)).collect::<Vec<_>>())
    }

    /// The hyperbolic plane `h`, `q(x,y) = xy`.
    pub fn hyperbolic(field: &FieldTower) -> QuadForm {
        let (z, o) = (field.zero(), field.one());
        QuadForm { field: field.clone(), gram: Matrix::from_rows(vec![vec![z.clone(), o.clone()], vec![o, z]]) }
    }

    pub fn field(&self) -> &FieldTower {
        &self.field
    }

    pub fn gram(&self) -> &Matrix<Elem> {
        &self.gram
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn q(&self, v: &[Elem]) -> Elem {
        self.b(v, v).half()
    }

    pub fn b(&self, v: &[Elem], w: &[Elem]) -> Elem {
        dot(v, &self.gram.mul_vec(w))
    }

    pub fn det(&self) -> Elem {
        if self.field.is_field() {
            self.gram.det()
        } else {
            self.gram.det_expand()
        }
    }

    pub fn is_regular(&self) -> bool {
        !self.det().is_zero()
    }

    /// The coefficients `a_i` if the Gram matrix is diagonal.
    pub fn diagonal_coeffs(&self) -> Option<Vec<Elem>> {
        let n = self.rank();
        for i in 0..n {
            for j in 0..n {
                if i != j && !self.gram.get(i, j).is_zero() {
                    return None;
                }
            }
        }
        Some((0..n).map(|i| self.gram.get(i, i).half()).collect())
    }

    pub fn orthogonal_sum(&self, o: &QuadForm) -> QuadForm {
        QuadForm { field: self.field.clone(), gram: self.gram.direct_sum(&o.gram) }
    }

    /// `λ·q`.
    pub fn scale(&self, lambda: &Elem) -> QuadForm {
        QuadForm { field: self.field.clone(), gram: self.gram.scale(lambda) }
    }

    /// `q ∘ M`, with Gram matrix `MᵀGM`.
    pub fn pullback(&self, m: &Matrix<Elem>) -> QuadForm {
        QuadForm { field: self.field.clone(), gram: m.transpose().mul(&self.gram).mul(m) }
    }

    /// Restriction to the span of the first `k` coordinates.
    pub fn leading_block(&self, k: usize) -> QuadForm {
        let idx: Vec<usize> = (0..k).collect();
        QuadForm { field: self.field.clone(), gram: self.gram.submatrix(&idx, &idx) }
    }

    /// Parses `form { field: F, gram: [[..],..] }` or `diag(a, b, ...)`. The
    /// default field is used by `diag` and when the `field:` key is absent.
    pub fn parse(text: &str, default_field: Option<&FieldTower>) -> Result<QuadForm> {
        let s = text.trim();
        if let Some(rest) = s.strip_prefix("diag") {
            let inner = rest
                .trim()
                .strip_prefix('(')
                .and_then(|x| x.strip_suffix(')'))
                .ok_or_else(|| perr("diag(...) expected"))?;
            let field = default_field.cloned().unwrap_or_else(FieldTower::rationals);
            let coeffs =
                split_top_level(inner).into_iter().map(|x| parse_elem(x, &field)).collect::<Result<Vec<_>>>()?;
            if coeffs.is_empty() {
                return Err(perr("empty diagonal"));
            }
            return Ok(QuadForm::diag(&coeffs));
        }
        let body = s
            .strip_prefix("form")
            .map(str::trim)
            .and_then(|x| x.strip_prefix('{'))
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| perr("expected `form { ... }` or `diag(...)`"))?;
        let mut field = default_field.cloned();
        let mut gram = None;
        for entry in split_top_level(body) {
            if entry.is_empty() {
                continue;
            }
            let (key, val) = entry.split_once(':').ok_or_else(|| perr("expected `key: value`"))?;
            match key.trim() {
                "field" => field = Some(parse_field(val)?),
                "gram" => gram = Some(val.trim().to_string()),
                other => return Err(perr(&format!("unknown key {:?}", other))),
            }
        }
        let field = field.unwrap_or_else(FieldTower::rationals);
        let gram = gram.ok_or_else(|| perr("missing gram"))?;
        QuadForm::from_rows(parse_matrix(&gram, &field)?)
    }

    /// Full textual form, always with an explicit field.
    pub fn to_text(&self) -> String {
        format!("form {{ field: {}, gram: {} }}", self.field, self.gram)
    }
}

fn perr(msg: &str) -> Error {
    Error::Parse { pos: 0, msg: msg.to_string() }
}

/// A similarity `(M, λ)` from `q` to `q'`: `Mᵀ G' M = λ G`, i.e.
/// `q'(Mv) = λ q(v)`.
#[derive(Clone, PartialEq, Debug)]
pub struct Similarity {
    pub matrix: Matrix<Elem>,
    pub factor: Elem,
}

impl Similarity {
    pub fn isometry(matrix: Matrix<Elem>) -> Similarity {
        let factor = matrix.get(0, 0).tower().one();
        Similarity { matrix, factor }
    }

    pub fn identity(n: usize, field: &FieldTower) -> Similarity {
        Similarity::isometry(Matrix::identity(n, &field.one()))
    }

    pub fn is_isometry(&self) -> bool {
        self.factor.is_one()
    }

    /// Whether this is a similarity from `src` to `dst`.
    pub fn check(&self, src: &QuadForm, dst: &QuadForm) -> bool {
        self.matrix.rows() == dst.rank()
            && self.matrix.cols() == src.rank()
            && self.matrix.transpose().mul(&dst.gram).mul(&self.matrix) == src.gram.scale(&self.factor)
    }

    pub fn verify(&self, src: &QuadForm, dst: &QuadForm) -> Result<()> {
        if self.check(src, dst) {
            Ok(())
        } else {
            Err(Error::ContractViolation)
        }
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &Similarity) -> Similarity {
        Similarity { matrix: self.matrix.mul(&first.matrix), factor: &self.factor * &first.factor }
    }

    pub fn inverse(&self) -> Option<Similarity> {
        Some(Similarity { matrix: self.matrix.inverse()?, factor: self.factor.try_inv()? })
    }

    pub fn apply(&self, v: &[Elem]) -> Vec<Elem> {
        self.matrix.mul_vec(v)
    }

    pub fn direct_sum(&self, o: &Similarity) -> Similarity {
        assert_eq!(self.factor, o.factor);
        Similarity { matrix: self.matrix.direct_sum(&o.matrix), factor: self.factor.clone() }
    }
}

/// Basis of the radical `ker G`.
pub fn radical(q: &QuadForm) -> Vec<Vec<Elem>> {
    q.gram.kernel()
}

/// Square class of `det(G/2)`, the product of the coefficients of any
/// diagonalization.
pub fn discriminant(q: &QuadForm) -> Result<SquareClass> {
    let d = q.det();
    if d.is_zero() {
        return Err(Error::DegenerateForm);
    }
    let half = q.field.from_int(2).try_inv().unwrap();
    squareclass_reduce(&(&d * &half.pow(q.rank() as i64).unwrap()))
}

#[derive(Clone, Debug)]
pub struct Diagonalization {
    /// Coefficients `a_i`; zeros (the radical) come last.
    pub coeffs: Vec<Elem>,
    /// Columns are the new orthogonal basis, so `Pᵀ G P = 2·diag(a)`.
    pub basis: Matrix<Elem>,
    /// The isometry `P⁻¹` from `q` to `⟨a_1,…,a_n⟩`.
    pub isometry: Similarity,
}

impl Diagonalization {
    pub fn form(&self) -> QuadForm {
        QuadForm::diag(&self.coeffs)
    }
}

/// Gram–Schmidt with the pivot rule: the first remaining vector with
/// `q ≠ 0`, else `v_i + v_j` for the first pair with `b(v_i,v_j) ≠ 0`.
pub fn diagonalize(q: &QuadForm) -> Result<Diagonalization> {
    if !q.field.is_field() {
        return Err(Error::UnsupportedDomain(format!("{} is not a field", q.field)));
    }
    let (coeffs, basis) = orthogonalize(q, |x: &Elem| !x.is_zero())?;
    let isometry = Similarity::isometry(basis.inverse().expect("basis change is invertible"));
    Ok(Diagonalization { coeffs, basis, isometry })
}

/// Shared Gram–Schmidt loop. `is_pivot` decides which values of `b` may be
/// divided by; vectors left over when no pivot exists are appended as-is.
pub(crate) fn orthogonalize(q: &QuadForm, is_pivot: impl Fn(&Elem) -> bool) -> Result<(Vec<Elem>, Matrix<Elem>)> {
    let n = q.rank();
    let one = q.field.one();
    let id = Matrix::identity(n, &one);
    let mut rest: Vec<Vec<Elem>> = (0..n).map(|i| id.col(i)).collect();
    let mut coeffs = Vec::with_capacity(n);
    let mut cols = Vec::with_capacity(n);
    while !rest.is_empty() {
        let pivot = match rest.iter().position(|v| is_pivot(&q.b(v, v))) {
            Some(i) => rest.remove(i),
            None => {
                let mut found = None;
                'outer: for i in 0..rest.len() {
                    for j in (i + 1)..rest.len() {
                        if is_pivot(&q.b(&rest[i], &rest[j])) {
                            found = Some((i, j));
                            break 'outer;
                        }
                    }
                }
                match found {
                    Some((i, j)) => {
                        let s = crate::linalg::vec_add(&rest[i], &rest[j]);
                        rest.remove(i);
                        s
                    }
                    None => break,
                }
            }
        };
        let bpp = q.b(&pivot, &pivot);
        let inv = bpp.try_inv().ok_or(Error::NonUnitValue)?;
        for v in rest.iter_mut() {
            let c = &q.b(v, &pivot) * &inv;
            if !c.is_zero() {
                *v = crate::linalg::vec_sub(v, &crate::linalg::vec_scale(&pivot, &c));
            }
        }
        coeffs.push(bpp.half());
        cols.push(pivot);
    }
    for v in rest {
        coeffs.push(q.q(&v));
        cols.push(v);
    }
    Ok((coeffs, Matrix::from_cols(&cols)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qq() -> FieldTower {
        FieldTower::rationals()
    }

    #[test]
    fn radical_examples() {
        let k = qq();
        let r = radical(&QuadForm::diag_ints(&k, &[1, 0]));
        assert_eq!(r, vec![vec![k.zero(), k.one()]]);
        assert_eq!(radical(&QuadForm::diag_ints(&k, &[1, -1, 1, 0])).len(), 1);
        assert!(radical(&QuadForm::hyperbolic(&k)).is_empty());
    }

    #[test]
    fn discriminant_examples() {
        let k = qq();
        let (a, b, d) = (2i64, 3i64, 5i64);
        let q = QuadForm::diag_ints(&k, &[1, a, b, a * b * d]);
        assert_eq!(discriminant(&q).unwrap().rep, k.from_int(5));
        let f7 = FieldTower::prime(7).unwrap();
        let h = QuadForm::diag_ints(&f7, &[3, -3]);
        assert_eq!(discriminant(&h).unwrap().rep, squareclass_reduce(&f7.from_int(-1)).unwrap().rep);
        assert!(discriminant(&QuadForm::diag_ints(&k, &[1, 1, 1, 1])).unwrap().is_trivial());
        assert_eq!(discriminant(&QuadForm::diag_ints(&k, &[1, 0])), Err(Error::DegenerateForm));
    }

    #[test]
    fn diagonalize_examples() {
        let k = qq();
        let h = QuadForm::hyperbolic(&k);
        let d = diagonalize(&h).unwrap();
        assert!(d.isometry.check(&h, &d.form()));
        assert_eq!(discriminant(&d.form()).unwrap().rep, k.from_int(-1));
        assert!((&d.coeffs[0] + &d.coeffs[1] * &k.from_int(4)).is_zero());

        let q = QuadForm::diag_ints(&k, &[3, 5, 7]);
        let d = diagonalize(&q).unwrap();
        assert_eq!(d.form(), q);
        assert_eq!(d.basis, Matrix::identity(3, &k.one()));

        let g =
            QuadForm::from_rows(vec![vec![k.from_int(2), k.from_int(1)], vec![k.from_int(1), k.from_int(2)]]).unwrap();
        let d = diagonalize(&g).unwrap();
        // Gram diagonal (2, 3/2), i.e. coefficients (1, 3/4)
        assert_eq!(d.coeffs, vec![k.one(), k.from_ratio(&3.into(), &4.into()).unwrap()]);
        assert_eq!(discriminant(&g).unwrap().rep, k.from_int(3));
        assert!(d.isometry.check(&g, &d.form()));
    }

    #[test]
    fn radical_goes_last() {
        let k = FieldTower::prime(5).unwrap();
        let q = QuadForm::diag_ints(&k, &[0, 1, 0, 2]);
        let d = diagonalize(&q).unwrap();
        assert_eq!(d.coeffs, vec![k.one(), k.from_int(2), k.zero(), k.zero()]);
    }

    #[test]
    fn parse_and_print() {
        let q = QuadForm::parse("form { field: Fp:7, gram: [[0,1],[1,0]] }", None).unwrap();
        assert_eq!(q, QuadForm::hyperbolic(&FieldTower::prime(7).unwrap()));
        let d = QuadForm::parse("diag(1, 2, 3/4)", None).unwrap();
        assert_eq!(d.to_string(), "diag(1, 2, 3/4)");
        assert_eq!(QuadForm::parse(&d.to_text(), None).unwrap(), d);
        assert!(QuadForm::parse("form { gram: [[1,2],[3,4]] }", None).is_err());
        assert!(QuadForm::parse("diag()", None).is_err());
    }
}
