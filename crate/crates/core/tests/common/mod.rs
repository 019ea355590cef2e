#![allow(dead_code)]

pub mod cubic;

use quadbundle::field::{Elem, FieldTower, Poly};
use quadbundle::quadform::QuadForm;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn fp(p: u64) -> FieldTower {
    FieldTower::prime(p).unwrap()
}

pub fn fp_t(p: u64) -> FieldTower {
    FieldTower::function(&fp(p), "t").unwrap()
}

pub fn ints(k: &FieldTower, xs: &[i64]) -> Vec<Elem> {
    xs.iter().map(|&x| k.from_int(x)).collect()
}

/// A polynomial in the top variable of a function field with coefficients
/// drawn from the base.
fn random_poly(k: &FieldTower, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let base = k.base().unwrap();
    let deg = rng.gen_range(0..=max_deg);
    let c = (0..=deg).map(|_| random_elem(base, rng)).collect();
    Poly::from_coeffs(base, c)
}

/// Rationals of height at most 10, residues mod p, or rational functions of
/// degree at most 2.
pub fn random_elem(k: &FieldTower, rng: &mut ChaCha8Rng) -> Elem {
    use quadbundle::field::Kind;
    match k.kind() {
        Kind::Rationals => {
            let n = rng.gen_range(-10i64..=10);
            let d = rng.gen_range(1i64..=10);
            k.from_ratio(&n.into(), &d.into()).unwrap()
        }
        Kind::Prime { p, .. } => k.from_int(rng.gen_range(0..*p as i64)),
        Kind::Function { .. } => {
            let num = random_poly(k, rng, 2);
            let den = loop {
                let d = random_poly(k, rng, 1);
                if !d.is_zero() {
                    break d;
                }
            };
            k.from_frac(num, den).unwrap()
        }
        _ => panic!("no sampler for {}", k),
    }
}

pub fn random_nonzero(k: &FieldTower, rng: &mut ChaCha8Rng) -> Elem {
    loop {
        let x = random_elem(k, rng);
        if !x.is_zero() {
            return x;
        }
    }
}

pub fn random_vec(k: &FieldTower, rng: &mut ChaCha8Rng, n: usize) -> Vec<Elem> {
    (0..n).map(|_| random_elem(k, rng)).collect()
}

pub fn random_regular_diag(k: &FieldTower, rng: &mut ChaCha8Rng, n: usize) -> QuadForm {
    let c: Vec<Elem> = (0..n).map(|_| random_nonzero(k, rng)).collect();
    QuadForm::diag(&c)
}

/// A random symmetric Gram matrix (possibly degenerate).
pub fn random_form(k: &FieldTower, rng: &mut ChaCha8Rng, n: usize) -> QuadForm {
    let mut rows = vec![vec![k.zero(); n]; n];
    for i in 0..n {
        for j in i..n {
            let x = random_elem(k, rng);
            rows[i][j] = x.clone();
            rows[j][i] = x;
        }
    }
    QuadForm::from_rows(rows).unwrap()
}
