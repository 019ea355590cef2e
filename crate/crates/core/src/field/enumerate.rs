//! Deterministic, height-ordered enumeration of ring elements for bounded
//! witness searches.

use num_bigint::BigInt;
use num_integer::Integer;

use super::{Elem, FieldTower, Kind, Poly};
use crate::error::{Error, Result};

/// Every element of a finite ring, in enumeration order.
pub fn all_elements(t: &FieldTower) -> Result<Vec<Elem>> {
    match t.kind() {
        Kind::Prime { p, .. } => Ok((0..*p).map(|a| t.from_int(a as i64)).collect()),
        Kind::Etale { base, .. } | Kind::Dual { base } => {
            let b = all_elements(base)?;
            let mut out = Vec::with_capacity(b.len() * b.len());
            for y in &b {
                for x in &b {
                    out.push(t.pair(x, y));
                }
            }
            Ok(out)
        }
        _ => Err(Error::UnsupportedDomain(format!("{} is infinite", t))),
    }
}

/// The first `n` elements of `t` in height order (all of them if `t` is smaller).
/// Index 0 is always zero.
pub fn first_elements(t: &FieldTower, n: usize) -> Vec<Elem> {
    if let Ok(all) = all_elements(t) {
        return all.into_iter().take(n).collect();
    }
    let mut out = vec![t.zero()];
    let mut size = 1;
    while out.len() < n {
        layer(t, size, &mut out, n);
        size += 1;
    }
    out.truncate(n);
    out
}

/// Appends the elements of size exactly `s` (s ≥ 1).
fn layer(t: &FieldTower, s: usize, out: &mut Vec<Elem>, cap: usize) {
    match t.kind() {
        Kind::Rationals => {
            let h = s as i64;
            for d in 1..=h {
                for num in 1..=h {
                    if num.max(d) != h || num.gcd(&d) != 1 {
                        continue;
                    }
                    let x = t.from_ratio(&BigInt::from(num), &BigInt::from(d)).unwrap();
                    out.push(x.clone());
                    out.push(-x);
                }
            }
        }
        Kind::Function { base, .. } => {
            let coeffs = first_elements(base, s);
            let m = coeffs.len();
            for deg in 0..s {
                let len = deg + 1;
                let mut idx = vec![0usize; len];
                loop {
                    let top_ok = idx[deg] != 0;
                    let is_layer = len == s || (m >= s && idx.iter().any(|&i| i + 1 == s));
                    if top_ok && is_layer {
                        let c = idx.iter().map(|&i| coeffs[i].clone()).collect();
                        out.push(t.from_poly(Poly::from_coeffs(base, c)));
                        if out.len() >= cap {
                            return;
                        }
                    }
                    let mut k = 0;
                    loop {
                        if k == len {
                            break;
                        }
                        idx[k] += 1;
                        if idx[k] < m {
                            break;
                        }
                        idx[k] = 0;
                        k += 1;
                    }
                    if k == len {
                        break;
                    }
                }
            }
        }
        Kind::Etale { base, .. } | Kind::Dual { base } => {
            let b = first_elements(base, s);
            let m = b.len();
            for (i, y) in b.iter().enumerate() {
                for (j, x) in b.iter().enumerate() {
                    if i.max(j) + 1 == m.min(s) && (i, j) != (0, 0) {
                        out.push(t.pair(x, y));
                    }
                }
            }
        }
        Kind::Prime { .. } => unreachable!(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals_by_height() {
        let q = FieldTower::rationals();
        let xs: Vec<String> = first_elements(&q, 9).iter().map(|x| x.to_string()).collect();
        assert_eq!(xs, ["0", "1", "-1", "2", "-2", "1/2", "-1/2", "3", "-3"]);
    }

    #[test]
    fn distinct_polynomials() {
        let q = FieldTower::rationals();
        let k = FieldTower::function(&q, "t").unwrap();
        let xs = first_elements(&k, 200);
        for i in 0..xs.len() {
            for j in 0..i {
                assert_ne!(xs[i], xs[j]);
            }
        }
        let f5 = FieldTower::prime(5).unwrap();
        assert_eq!(all_elements(&FieldTower::etale(&f5, &f5.from_int(2)).unwrap()).unwrap().len(), 25);
    }
}
