mod common;

use common::*;
use proptest::prelude::*;
use quadbundle::clifford::*;
use quadbundle::field::enumerate::all_elements;
use quadbundle::field::{Elem, FieldTower};
use quadbundle::linalg::Matrix;
use quadbundle::quadform::{radical, reflection, QuadForm, Similarity};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn random_isometry(q: &QuadForm, r: &mut ChaCha8Rng) -> Similarity {
    let mut s = Similarity::identity(q.rank(), q.field());
    for _ in 0..2 {
        let v = loop {
            let v = random_vec(q.field(), r, q.rank());
            if !q.q(&v).is_zero() {
                break v;
            }
        };
        s = reflection(q, &v).unwrap().compose(&s);
    }
    s
}

#[test]
fn center_rank_matches_radical_rank_exhaustively() {
    for p in [3u64, 5] {
        let k = fp(p);
        let entries = [k.zero(), k.one(), k.from_int(k.nonresidue().unwrap() as i64)];
        for idx in 0..81usize {
            let c: Vec<Elem> = (0..4).map(|i| entries[(idx / 3usize.pow(i)) % 3].clone()).collect();
            let q = QuadForm::diag(&c);
            let z = center(&even_clifford(&q).unwrap()).unwrap();
            let rad = radical(&q).len();
            assert_eq!(z.rank == 2, rad <= 1, "{:?} over F{}", c, p);
            if rad >= 2 {
                assert!(z.rank >= 3);
            }
        }
    }
}

#[test]
fn degenerate_iso_embeds_the_unipotent_group_injectively() {
    let k = fp(7);
    // σ − I is linear in (a, b, c); its ε-parts for the unit triples must be independent
    let units = [(1, 0, 0), (0, 1, 0), (0, 0, 1)];
    let mut rows = Vec::new();
    for (a, b, c) in units {
        let act = unipotent_action(&k.from_int(a), &k.from_int(b), &k.from_int(c)).unwrap();
        assert!(act.holds());
        let id = Matrix::identity(2, &act.sigma.get(0, 0).tower().one());
        let d = act.sigma.sub(&id);
        let mut row = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                let (re, eps) = d.get(i, j).coords().unwrap();
                assert!(re.is_zero());
                row.push(eps);
            }
        }
        rows.push(row);
    }
    assert_eq!(Matrix::from_rows(rows).rank(), 3);
    let all = all_elements(&k).unwrap();
    assert_eq!(all.len(), 7);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn even_clifford_is_associative_of_the_right_dimension(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp(11), fp_t(5)] {
            let n = r.gen_range(2..=4);
            let c = random_vec(&k, &mut r, n);
            let cl = even_clifford(&QuadForm::diag(&c)).unwrap();
            prop_assert_eq!(cl.dim(), 1 << (n - 1));
            prop_assert!(cl.relations_hold());
            prop_assert!(cl.is_associative());
        }
    }

    #[test]
    fn quaternionization_is_an_isomorphism(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp(7), fp_t(5)] {
            let q = random_regular_diag(&k, &mut r, 4);
            let c = q.diagonal_coeffs().unwrap();
            let qz = quaternionize(&even_clifford(&q).unwrap()).unwrap();
            prop_assert!(qz.verify());
            let l = qz.algebra.base().clone();
            prop_assert_eq!(qz.algebra.a(), &l.embed(&-&(&c[0] * &c[1])));
            prop_assert_eq!(qz.algebra.b(), &l.embed(&-&(&c[0] * &c[2])));
        }
    }

    #[test]
    fn c0_is_functorial(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = if seed % 4 == 0 { FieldTower::rationals() } else { fp(101) };
        let n = r.gen_range(2..=4);
        let q = random_regular_diag(&k, &mut r, n);
        let mu = random_nonzero(&k, &mut r);
        let phi1 = {
            let s = random_isometry(&q, &mut r);
            Similarity { matrix: s.matrix.scale(&mu), factor: mu.square() }
        };
        // q → q2 by rescaling coordinates with squares
        let s: Vec<Elem> = (0..n).map(|_| random_nonzero(&k, &mut r)).collect();
        let c = q.diagonal_coeffs().unwrap();
        let q2 = QuadForm::diag(&c.iter().zip(&s).map(|(a, b)| a * &b.square()).collect::<Vec<_>>());
        let inv: Vec<Elem> = s.iter().map(|x| x.try_inv().unwrap()).collect();
        let phi2 = Similarity::isometry(Matrix::diag(&inv));
        let phi3 = random_isometry(&q2, &mut r);

        let f1 = c0_functor(&phi1, &q, &q).unwrap();
        let f2 = c0_functor(&phi2, &q, &q2).unwrap();
        let f3 = c0_functor(&phi3, &q2, &q2).unwrap();
        let whole = c0_functor(&phi3.compose(&phi2).compose(&phi1), &q, &q2).unwrap();
        prop_assert_eq!(whole.matrix, f3.compose(&f2).compose(&f1).matrix);
        let (src, dst) = (even_clifford(&q).unwrap(), even_clifford(&q2).unwrap());
        prop_assert!(f2.is_homomorphism(&src, &dst));
    }
}
