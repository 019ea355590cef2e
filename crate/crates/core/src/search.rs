//! Deterministic bounded searches for zeros and values of diagonal forms.
//! Free coordinates run over height-ordered shells; the last coordinate is
//! solved by an exact square root.

use crate::error::Result;
use crate::field::enumerate::first_elements;
use crate::field::{Elem, FieldTower};

/// Calls `f` on index tuples of length `m` in shells of growing maximum index
/// until `f` returns `Some`, the shell bound `limit` (exclusive) is reached, or
/// `budget` tuples were tried.
fn shells<T>(
    m: usize,
    limit: usize,
    budget: &mut u64,
    mut f: impl FnMut(&[usize]) -> Result<Option<T>>,
) -> Result<Option<T>> {
    if m == 0 {
        if *budget == 0 {
            return Ok(None);
        }
        *budget -= 1;
        return f(&[]);
    }
    for s in 0..limit {
        let mut idx = vec![0usize; m];
        loop {
            if idx.contains(&s) {
                if *budget == 0 {
                    return Ok(None);
                }
                *budget -= 1;
                if let Some(r) = f(&idx)? {
                    return Ok(Some(r));
                }
            }
            let mut k = 0;
            while k < m {
                idx[k] += 1;
                if idx[k] <= s {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == m {
                break;
            }
        }
    }
    Ok(None)
}

/// Candidate coordinate values: all of a finite field, else a height-ordered
/// prefix long enough for the budget.
fn candidates(t: &FieldTower, m: usize, budget: u64) -> Vec<Elem> {
    match t.order() {
        Some(q) if q <= 1 << 16 => first_elements(t, q as usize),
        _ => {
            let per_axis = (budget as f64).powf(1.0 / m.max(1) as f64).ceil() as usize + 2;
            first_elements(t, per_axis.clamp(2, 4096))
        }
    }
}

/// A nonzero `x` with `Σ a_i x_i² = 0`, within `budget` candidate tuples.
pub fn find_isotropic(coeffs: &[Elem], budget: u64) -> Result<Option<Vec<Elem>>> {
    let n = coeffs.len();
    let t = coeffs[0].tower().clone();
    if let Some(i) = coeffs.iter().position(|a| a.is_zero()) {
        let mut v = vec![t.zero(); n];
        v[i] = t.one();
        return Ok(Some(v));
    }
    if n < 2 {
        return Ok(None);
    }
    let cands = candidates(&t, n - 1, budget);
    let last = &coeffs[n - 1];
    let mut budget = budget;
    shells(n - 1, cands.len(), &mut budget, |idx| {
        if idx.iter().all(|&i| i == 0) {
            return Ok(None);
        }
        let xs: Vec<Elem> = idx.iter().map(|&i| cands[i].clone()).collect();
        let s = partial_sum(coeffs, &xs, &t);
        let rhs = (-&s).checked_div(last)?;
        Ok(rhs.sqrt()?.map(|r| {
            let mut v = xs;
            v.push(r);
            v
        }))
    })
}

/// An `x` with `Σ a_i x_i² = c`, within `budget` candidate tuples.
pub fn find_representation(coeffs: &[Elem], c: &Elem, budget: u64) -> Result<Option<Vec<Elem>>> {
    let n = coeffs.len();
    let t = coeffs[0].tower().clone();
    let Some(k) = coeffs.iter().rposition(|a| !a.is_zero()) else {
        return Ok(if c.is_zero() { Some(vec![t.zero(); n]) } else { None });
    };
    let free: Vec<usize> = (0..n).filter(|&i| i != k).collect();
    let cands = candidates(&t, free.len(), budget);
    let mut budget = budget;
    shells(free.len(), cands.len(), &mut budget, |idx| {
        let mut v = vec![t.zero(); n];
        for (j, &i) in free.iter().zip(idx) {
            v[*j] = cands[i].clone();
        }
        let s = partial_sum(coeffs, &v, &t);
        let rhs = (c - &s).checked_div(&coeffs[k])?;
        Ok(rhs.sqrt()?.map(|r| {
            v[k] = r;
            v
        }))
    })
}

fn partial_sum(coeffs: &[Elem], xs: &[Elem], t: &FieldTower) -> Elem {
    coeffs.iter().zip(xs).fold(t.zero(), |acc, (a, x)| &acc + &(a * &x.square()))
}

/// Exhaustive isotropy test over a finite field (independent oracle for tests
/// and residue-field decisions).
pub fn exhaustive_isotropic(coeffs: &[Elem]) -> Result<bool> {
    let t = coeffs[0].tower();
    let q = t.order().expect("finite field");
    let tuples = q.saturating_pow(coeffs.len() as u32);
    Ok(find_isotropic(coeffs, tuples)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_pythagorean_triple() {
        let q = FieldTower::rationals();
        let c: Vec<Elem> = [1, 1, -1].iter().map(|&x| q.from_int(x)).collect();
        let v = find_isotropic(&c, 1000).unwrap().unwrap();
        let s = partial_sum(&c, &v, &q);
        assert!(s.is_zero());
        assert!(v.iter().any(|x| !x.is_zero()));
    }

    #[test]
    fn sum_of_two_squares_over_f7() {
        let f7 = FieldTower::prime(7).unwrap();
        let c = vec![f7.one(), f7.one()];
        assert!(!exhaustive_isotropic(&c).unwrap());
        let c3 = vec![f7.one(), f7.one(), f7.one()];
        assert!(exhaustive_isotropic(&c3).unwrap());
        let v = find_representation(&c, &f7.from_int(3), 100).unwrap().unwrap();
        assert_eq!(partial_sum(&c, &v, &f7), f7.from_int(3));
    }

    #[test]
    fn budget_zero_finds_nothing() {
        let q = FieldTower::rationals();
        let c = vec![q.one(), q.from_int(-1)];
        assert_eq!(find_isotropic(&c, 0).unwrap(), None);
    }
}
