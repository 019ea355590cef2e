use quadbundle::cubicbundle::mpoly::MPoly;
use quadbundle::cubicbundle::{cubic_vars, CubicContainingPlane};
use quadbundle::field::FieldTower;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Exponent vectors of the cubic monomials in `x₀,x₁,x₂,y₀,y₁,y₂` with
/// positive degree in the `x`'s.
pub fn plane_monomials() -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for code in 0..6u32.pow(3) {
        let idx = [code % 6, code / 6 % 6, code / 36];
        if idx[0] > idx[1] || idx[1] > idx[2] {
            continue;
        }
        let mut e = vec![0u32; 6];
        for i in idx {
            e[i as usize] += 1;
        }
        if e[..3].iter().sum::<u32>() > 0 {
            out.push(e);
        }
    }
    out
}

/// Dense random cubic containing the plane, coefficients in `[-5, 5]`.
pub fn random_cubic(k: &FieldTower, r: &mut ChaCha8Rng) -> CubicContainingPlane {
    let vars = cubic_vars();
    loop {
        let f = plane_monomials().into_iter().fold(MPoly::zero(k, &vars), |acc, e| {
            &acc + &MPoly::monomial(k, &vars, e, k.from_int(r.gen_range(-5..=5)))
        });
        if !f.is_zero() {
            return CubicContainingPlane::new(f).unwrap();
        }
    }
}
