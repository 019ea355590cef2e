mod common;

use common::*;
use proptest::prelude::*;
use quadbundle::field::valuation::Valuation;
use quadbundle::field::{Elem, FieldTower};
use quadbundle::linalg::Matrix;
use quadbundle::quadform::*;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

fn fields() -> Vec<FieldTower> {
    vec![FieldTower::rationals(), fp(5), fp(7), fp_t(5)]
}

fn anisotropic_vector(q: &QuadForm, r: &mut ChaCha8Rng) -> Vec<Elem> {
    loop {
        let v = random_vec(q.field(), r, q.rank());
        if !q.q(&v).is_zero() {
            return v;
        }
    }
}

/// A product of three random reflections.
fn random_isometry(q: &QuadForm, r: &mut ChaCha8Rng) -> Similarity {
    let mut s = Similarity::identity(q.rank(), q.field());
    for _ in 0..3 {
        s = reflection(q, &anisotropic_vector(q, r)).unwrap().compose(&s);
    }
    s
}

fn random_invertible(k: &FieldTower, r: &mut ChaCha8Rng, n: usize) -> Matrix<Elem> {
    loop {
        let m = Matrix::from_rows((0..n).map(|_| random_vec(k, r, n)).collect());
        if !m.det().is_zero() {
            return m;
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn diagonalization_is_an_isometry_preserving_the_discriminant(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in fields() {
            let n = r.gen_range(1..=4);
            let q = random_form(&k, &mut r, n);
            let d = diagonalize(&q).unwrap();
            let target = d.form();
            let m = &d.isometry.matrix;
            prop_assert_eq!(m.transpose().mul(target.gram()).mul(m), q.gram().clone());
            if q.is_regular() {
                let a = discriminant(&q).unwrap();
                prop_assert!(a.equivalent(&discriminant(&target).unwrap()).unwrap());
            }
        }
    }

    #[test]
    fn reflections_are_involutive_isometries(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in fields() {
            let n_q = r.gen_range(2..=4);
            let q = random_regular_diag(&k, &mut r, n_q);
            let v = anisotropic_vector(&q, &mut r);
            let s = reflection(&q, &v).unwrap();
            prop_assert!(s.check(&q, &q));
            prop_assert_eq!(s.matrix.det(), k.from_int(-1));
            prop_assert_eq!(s.matrix.mul(&s.matrix), Matrix::identity(q.rank(), &k.one()));
        }
    }

    #[test]
    fn transport_moves_v_to_w_with_two_reflections(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp(5), fp(7)] {
            let n_q = r.gen_range(2..=4);
            let q = random_form(&k, &mut r, n_q);
            if !q.is_regular() {
                continue;
            }
            let v = anisotropic_vector(&q, &mut r);
            let w = random_isometry(&q, &mut r).apply(&v);
            let t = transport(&q, &v, &w).unwrap();
            prop_assert!(t.reflections.len() <= 2);
            prop_assert!(t.isometry.check(&q, &q));
            prop_assert_eq!(t.isometry.apply(&v), w);
        }
    }

    #[test]
    fn simple_degeneration_is_recognized(seed in any::<u64>(), e in 1i64..4, n in 2usize..5) {
        let mut r = rng(seed);
        let k = fp_t(7);
        let v = Valuation::from_element(&k, &k.gen()).unwrap();
        let unit = |r: &mut ChaCha8Rng| loop {
            let x = random_elem(&k, r);
            if v.is_unit(&x) {
                return x;
            }
        };
        let mut c: Vec<Elem> = (0..n).map(|_| unit(&mut r)).collect();
        c[n - 1] = &c[n - 1] * &v.uniformizer().pow(e).unwrap();
        let q = QuadForm::diag(&c);
        let rep = degeneration_report(&q, &v).unwrap();
        prop_assert_eq!(rep.verdict, Verdict::Simple(e));

        // an integral unimodular change of basis keeps the verdict
        let p = loop {
            let m = Matrix::from_rows((0..n).map(|_| (0..n).map(|_| k.from_int(r.gen_range(-2..=2))).collect()).collect());
            if v.is_unit(&m.det()) {
                break m;
            }
        };
        let q2 = q.pullback(&p);
        let ld = diagonalize_local(&q2, &v).unwrap();
        prop_assert_eq!(ld.multiplicity, e);
        prop_assert!(ld.units.iter().all(|u| v.is_unit(u)));
        prop_assert_eq!(v.value(&ld.top), Some(e));
        prop_assert_eq!(degeneration_report(&q2, &v).unwrap().verdict, Verdict::Simple(e));
    }

    #[test]
    fn eichler_maps_are_additive_and_conjugate_correctly(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp_t(11)] {
            let n_q = r.gen_range(1..=3);
            let q = random_regular_diag(&k, &mut r, n_q);
            let n = q.rank();
            let v = random_vec(&k, &mut r, n);
            let w = random_vec(&k, &mut r, n);
            let u = random_nonzero(&k, &mut r);
            let vw: Vec<Elem> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            prop_assert_eq!(eichler_e(&q, &vw).matrix, eichler_e(&q, &v).matrix.mul(&eichler_e(&q, &w).matrix));
            prop_assert_eq!(
                eichler_e_star(&q, &vw).matrix,
                eichler_e_star(&q, &v).matrix.mul(&eichler_e_star(&q, &w).matrix)
            );
            prop_assert!(hyperbolic_conjugation_check(&q, &v, &u).unwrap());
        }
    }

    #[test]
    fn eichler_decomposition_round_trips(seed in any::<u64>()) {
        let mut r = rng(seed);
        for (k, n) in [(fp(7), 2), (FieldTower::rationals(), 3)] {
            let q = random_regular_diag(&k, &mut r, n);
            let u = random_nonzero(&k, &mut r);
            let mut phi = if r.gen_bool(0.5) { alpha(&q, &u).unwrap() } else { beta(&q, &u).unwrap() };
            for _ in 0..5 {
                let v = random_vec(&k, &mut r, n);
                let g = if r.gen_bool(0.5) { eichler_e(&q, &v) } else { eichler_e_star(&q, &v) };
                phi = g.compose(&phi);
            }
            let d = eichler_decompose(&q, &phi).unwrap();
            prop_assert_eq!(d.recompose(&q), phi.matrix);
        }
    }

    #[test]
    fn cancellation_output_is_an_isometry(seed in any::<u64>()) {
        let mut r = rng(seed);
        let k = fp(7);
        let n_q1 = r.gen_range(1..=3);
            let q1 = random_regular_diag(&k, &mut r, n_q1);
        let n_pad = r.gen_range(1..=2);
            let pad = random_regular_diag(&k, &mut r, n_pad);
        let p = random_invertible(&k, &mut r, q1.rank());
        let q2 = q1.pullback(&p);
        // q1 ⊥ pad → q2 ⊥ pad, scrambled by an isometry of the target
        let base = Similarity::isometry(p.inverse().unwrap().direct_sum(&Matrix::identity(pad.rank(), &k.one())));
        let target = q2.orthogonal_sum(&pad);
        let witness = random_isometry(&target, &mut r).compose(&base);
        prop_assert!(witness.check(&q1.orthogonal_sum(&pad), &target));
        let c = cancel(&q1, &q2, &pad, &witness).unwrap();
        prop_assert!(c.is_isometry());
        prop_assert!(c.check(&q1, &q2));
    }
}
