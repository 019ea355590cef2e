//! Reflections `r_v(w) = w − q(v)⁻¹ b(v,w) v`, transport of vectors of equal
//! unit value, and Witt cancellation.

use super::{QuadForm, Similarity};
use crate::error::{Error, Result};
use crate::field::valuation::Valuation;
use crate::field::Elem;
use crate::linalg::{vec_add, vec_sub, Matrix};

fn reflection_matrix(q: &QuadForm, v: &[Elem], inv: &Elem) -> Matrix<Elem> {
    let n = q.rank();
    let gv = q.gram().mul_vec(v);
    let one = q.field().one();
    Matrix::from_fn(n, n, |i, j| {
        let d = if i == j { one.clone() } else { q.field().zero() };
        &d - &(&(inv * &v[i]) * &gv[j])
    })
}

pub fn reflection(q: &QuadForm, v: &[Elem]) -> Result<Similarity> {
    let inv = q.q(v).try_inv().ok_or(Error::NonUnitValue)?;
    Ok(Similarity::isometry(reflection_matrix(q, v, &inv)))
}

/// Reflection over the valuation ring of `val`: `q(v)` must be a `val`-unit.
pub fn reflection_local(q: &QuadForm, v: &[Elem], val: &Valuation) -> Result<Similarity> {
    let u = q.q(v);
    if !val.is_unit(&u) {
        return Err(Error::NonUnitValue);
    }
    Ok(Similarity::isometry(reflection_matrix(q, v, &u.try_inv().unwrap())))
}

/// An isometry carrying `v` to `w` and the reflection vectors it is built
/// from, in order of application.
#[derive(Clone, Debug)]
pub struct Transport {
    pub isometry: Similarity,
    pub reflections: Vec<Vec<Elem>>,
}

fn transport_with(q: &QuadForm, v: &[Elem], w: &[Elem], is_unit: impl Fn(&Elem) -> bool) -> Result<Transport> {
    let u = q.q(v);
    if u != q.q(w) {
        return Err(Error::PreconditionViolation("q(v) ≠ q(w)".into()));
    }
    if !is_unit(&u) {
        return Err(Error::NonUnitValue);
    }
    if v == w {
        return Ok(Transport { isometry: Similarity::identity(q.rank(), q.field()), reflections: vec![] });
    }
    let d = vec_sub(v, w);
    if is_unit(&q.q(&d)) {
        return Ok(Transport { isometry: reflection(q, &d)?, reflections: vec![d] });
    }
    // q(v+w) + q(v−w) = 4u, so v + w has unit value: r_{v+w}(v) = −w, then r_w
    let s = vec_add(v, w);
    if !is_unit(&q.q(&s)) {
        return Err(Error::NonUnitValue);
    }
    let iso = reflection(q, w)?.compose(&reflection(q, &s)?);
    Ok(Transport { isometry: iso, reflections: vec![s, w.to_vec()] })
}

/// Field case: at most two reflections.
pub fn transport(q: &QuadForm, v: &[Elem], w: &[Elem]) -> Result<Transport> {
    transport_with(q, v, w, |x| !x.is_zero())
}

/// Over the valuation ring of `val`; the output matrix is integral when `q`,
/// `v` and `w` are.
pub fn transport_local(q: &QuadForm, v: &[Elem], w: &[Elem], val: &Valuation) -> Result<Transport> {
    transport_with(q, v, w, |x| val.is_unit(x))
}

/// Over an explicit finite product of local rings: one transport per factor.
pub fn transport_product(components: &[(QuadForm, Valuation, Vec<Elem>, Vec<Elem>)]) -> Result<Vec<Transport>> {
    components.iter().map(|(q, val, v, w)| transport_local(q, v, w, val)).collect()
}

/// Given an isometry `q1 ⊥ q ≅ q2 ⊥ q` with `q` diagonal and regular, an
/// isometry `q1 ≅ q2`: peel off the last coefficient of `q`, transport its
/// image back, and restrict to the orthogonal complement.
pub fn cancel(q1: &QuadForm, q2: &QuadForm, q: &QuadForm, witness: &Similarity) -> Result<Similarity> {
    let src = q1.orthogonal_sum(q);
    let dst = q2.orthogonal_sum(q);
    if !witness.is_isometry() || !witness.check(&src, &dst) {
        return Err(Error::InvalidWitness("not an isometry of the orthogonal sums".into()));
    }
    let coeffs =
        q.diagonal_coeffs().ok_or_else(|| Error::PreconditionViolation("cancelled form must be diagonal".into()))?;
    if coeffs.iter().any(|a| a.is_zero()) {
        return Err(Error::PreconditionViolation("cancelled form must be regular".into()));
    }
    let mut m = witness.matrix.clone();
    let mut cur = dst;
    for _ in 0..coeffs.len() {
        let k = m.rows() - 1;
        let image = m.col(k);
        let mut target = vec![cur.field().zero(); k + 1];
        target[k] = cur.field().one();
        let t = transport(&cur, &image, &target)?;
        m = t.isometry.matrix.mul(&m);
        let idx: Vec<usize> = (0..k).collect();
        if (0..k).any(|j| !m.get(k, j).is_zero()) {
            return Err(Error::DecompositionFailure("complement not preserved".into()));
        }
        m = m.submatrix(&idx, &idx);
        cur = cur.leading_block(k);
    }
    let out = Similarity::isometry(m);
    out.verify(q1, q2)?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    #[test]
    fn reflection_properties() {
        let k = FieldTower::rationals();
        let q = QuadForm::diag_ints(&k, &[1, 2, -3]);
        let v: Vec<Elem> = [1, 1, 0].iter().map(|&x| k.from_int(x)).collect();
        let r = reflection(&q, &v).unwrap();
        assert!(r.check(&q, &q));
        assert_eq!(r.apply(&v), v.iter().map(|x| -x).collect::<Vec<_>>());
        assert_eq!(r.matrix.mul(&r.matrix), Matrix::identity(3, &k.one()));
        assert_eq!(r.matrix.det(), k.from_int(-1));
        // w = (2, -1, 0) is orthogonal to v
        let w: Vec<Elem> = [2, -1, 0].iter().map(|&x| k.from_int(x)).collect();
        assert!(q.b(&v, &w).is_zero());
        assert_eq!(r.apply(&w), w);
        let iso = QuadForm::diag_ints(&k, &[1, -1]);
        assert_eq!(reflection(&iso, &[k.one(), k.one()]).unwrap_err(), Error::NonUnitValue);
    }

    #[test]
    fn transport_examples() {
        let k = FieldTower::rationals();
        let q = QuadForm::diag_ints(&k, &[1, 1]);
        let v = vec![k.one(), k.zero()];
        let w = vec![k.zero(), k.one()];
        let t = transport(&q, &v, &w).unwrap();
        assert_eq!(t.reflections, vec![vec![k.one(), k.from_int(-1)]]);
        assert_eq!(t.isometry.apply(&v), w);
        let t = transport(&q, &v, &v).unwrap();
        assert!(t.reflections.is_empty());
        // v - w isotropic: routed through -w
        let h = QuadForm::diag_ints(&k, &[1, -1, 1]);
        let v = vec![k.one(), k.zero(), k.zero()];
        let w = vec![k.one(), k.one(), k.one()];
        let t = transport(&h, &v, &w).unwrap();
        assert_eq!(t.reflections.len(), 2);
        assert_eq!(t.isometry.apply(&v), w);
        assert!(t.isometry.check(&h, &h));
    }

    #[test]
    fn cancel_swap() {
        let k = FieldTower::rationals();
        let one = QuadForm::diag_ints(&k, &[1]);
        let swap = Similarity::isometry(Matrix::from_rows(vec![vec![k.zero(), k.one()], vec![k.one(), k.zero()]]));
        let c = cancel(&one, &one, &one, &swap).unwrap();
        assert!(c.check(&one, &one));
        let id = Similarity::identity(2, &k);
        assert_eq!(cancel(&one, &one, &one, &id).unwrap(), Similarity::identity(1, &k));
        let bad = Similarity::isometry(Matrix::from_rows(vec![vec![k.one(), k.one()], vec![k.zero(), k.one()]]));
        assert!(matches!(cancel(&one, &one, &one, &bad), Err(Error::InvalidWitness(_))));
    }
}
