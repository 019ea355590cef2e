//! Block-matrix description of `O(q_1 ⊥ ⟨π⟩)`: a matrix `[[A, v], [w, u]]`
//! is orthogonal for the Gram matrix `Q_1 ⊕ (π)` iff
//! `AᵀQ_1A + π wᵀw = Q_1`, `AᵀQ_1v + uπ wᵀ = 0` and `vᵀQ_1v = (1 − u²)π`.

use crate::error::{Error, Result};
use crate::field::valuation::Valuation;
use crate::field::Elem;
use crate::linalg::{dot, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationsCheck {
    pub relations: [bool; 3],
    /// `v ≡ 0` modulo the maximal ideal (or `v = 0` when `π = 0`).
    pub v_vanishes: Option<bool>,
    /// `u² ≡ 1` modulo the maximal ideal.
    pub u_squared_one: Option<bool>,
}

impl RelationsCheck {
    pub fn holds(&self) -> bool {
        self.relations.iter().all(|&b| b) && self.v_vanishes != Some(false) && self.u_squared_one != Some(false)
    }
}

/// Evaluates the three relations. When `ideal` is given (`π` must lie in its
/// maximal ideal, all entries integral) the derived consequences are checked
/// as well; when `π = 0` only `v = 0` is derived.
pub fn orthogonal_relations_check(
    a: &Matrix<Elem>,
    v: &[Elem],
    w: &[Elem],
    u: &Elem,
    q1: &Matrix<Elem>,
    pi: &Elem,
    ideal: Option<&Valuation>,
) -> Result<RelationsCheck> {
    let m = q1.rows();
    if !q1.is_square() || a.rows() != m || a.cols() != m || v.len() != m || w.len() != m {
        return Err(Error::DimensionMismatch(format!("blocks must be {m}x{m}, {m}x1, 1x{m}")));
    }
    let k = u.tower();
    let wt = Matrix::from_cols(&[w.to_vec()]);
    let outer = wt.mul(&wt.transpose());
    let at = a.transpose();
    let r1 = at.mul(q1).mul(a).add(&outer.scale(pi)) == *q1;
    let lhs2 = at.mul_vec(&q1.mul_vec(v));
    let upi = u * pi;
    let r2 = lhs2.iter().zip(w).all(|(x, wi)| (x + &(&upi * wi)).is_zero());
    let r3 = dot(v, &q1.mul_vec(v)) == &(&k.one() - &u.square()) * pi;
    let (v_vanishes, u_squared_one) = match ideal {
        Some(val) => {
            if val.value(pi).is_some_and(|e| e <= 0) {
                return Err(Error::PreconditionViolation("π is not in the maximal ideal".into()));
            }
            let vz = v.iter().all(|x| val.value(x).is_none_or(|e| e > 0));
            let us = val.value(&(&u.square() - &k.one())).is_none_or(|e| e > 0);
            (Some(vz), Some(us))
        }
        None if pi.is_zero() => (Some(v.iter().all(|x| x.is_zero())), None),
        None => (None, None),
    };
    Ok(RelationsCheck { relations: [r1, r2, r3], v_vanishes, u_squared_one })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldTower;

    #[test]
    fn identity_and_unipotent_blocks() {
        let k = FieldTower::prime(7).unwrap();
        let q1 = Matrix::diag(&[k.one(), k.from_int(-1), k.one()]);
        let id = Matrix::identity(3, &k.one());
        let z = vec![k.zero(); 3];
        let r = orthogonal_relations_check(&id, &z, &z, &k.one(), &q1, &k.zero(), None).unwrap();
        assert!(r.holds());
        let w = vec![k.from_int(2), k.from_int(3), k.from_int(5)];
        let r = orthogonal_relations_check(&id, &z, &w, &k.one(), &q1, &k.zero(), None).unwrap();
        assert!(r.holds());
        let bad = id.scale(&k.from_int(2));
        assert!(!orthogonal_relations_check(&bad, &z, &w, &k.one(), &q1, &k.zero(), None).unwrap().holds());
    }
}
