mod common;

use common::*;
use proptest::prelude::*;
use quadbundle::field::{FieldTower, Kind};
use quadbundle::quaternion::*;
use quadbundle::search::find_isotropic;

fn random_algebra(k: &FieldTower, r: &mut rand_chacha::ChaCha8Rng) -> QuaternionAlgebra {
    QuaternionAlgebra::new(&random_nonzero(k, r), &random_nonzero(k, r)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn reduced_norm_is_multiplicative(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = FieldTower::rationals();
        for k in [q.clone(), fp(7), fp_t(5), FieldTower::etale(&q, &q.from_int(5)).unwrap()] {
            let sample = |r: &mut rand_chacha::ChaCha8Rng| match k.kind() {
                Kind::Etale { base, .. } => k.pair(&random_elem(base, r), &random_elem(base, r)),
                _ => random_elem(&k, r),
            };
            let alg = loop {
                if let Ok(a) = QuaternionAlgebra::new(&sample(&mut r), &sample(&mut r)) {
                    break a;
                }
            };
            for _ in 0..25 {
                let x: Vec<_> = (0..4).map(|_| sample(&mut r)).collect();
                let y: Vec<_> = (0..4).map(|_| sample(&mut r)).collect();
                prop_assert_eq!(alg.norm(&alg.mul(&x, &y)), &alg.norm(&x) * &alg.norm(&y));
            }
        }
    }

    #[test]
    fn splitting_certificates_check(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp(7), fp_t(5)] {
            let alg = random_algebra(&k, &mut r);
            let cert = is_split(&alg, 2000).unwrap();
            prop_assert!(cert.verify().is_ok());
        }
    }

    #[test]
    fn split_symbols_have_trivial_residues(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp_t(5)] {
            let a = loop {
                let a = random_nonzero(&k, &mut r);
                if !(&k.one() - &a).is_zero() {
                    break a;
                }
            };
            let b = random_nonzero(&k, &mut r);
            for alg in [
                QuaternionAlgebra::new(&k.one(), &b).unwrap(),
                QuaternionAlgebra::new(&a, &(&k.one() - &a)).unwrap(),
            ] {
                for v in candidate_valuations(&k, &[alg.a().clone(), alg.b().clone()]).unwrap() {
                    prop_assert!(residue_symbol(&alg, &v).unwrap().is_trivial(), "{} at {}", alg, v);
                }
            }
        }
    }

    #[test]
    fn ramified_algebras_have_no_small_norm_zero(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = fp_t(5);
        let alg = random_algebra(&k, &mut r);
        let cert = is_split(&alg, 2000).unwrap();
        if let SplitVerdict::Ramified(_) = cert.verdict {
            let c = norm_form(&alg).diagonal_coeffs().unwrap();
            prop_assert!(find_isotropic(&c, 3000).unwrap().is_none());
        }
    }
}
