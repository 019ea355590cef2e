mod common;

use common::*;
use proptest::prelude::*;
use quadbundle::field::parse::parse_elem;
use quadbundle::field::squareclass::squareclass_reduce;
use quadbundle::field::valuation::Valuation;
use quadbundle::field::FieldTower;

fn valuations() -> Vec<Valuation> {
    let q = FieldTower::rationals();
    let k = fp_t(5);
    vec![
        Valuation::padic(&q, 3).unwrap(),
        Valuation::padic(&q, 7).unwrap(),
        Valuation::from_element(&k, &k.gen()).unwrap(),
        Valuation::from_element(&k, &parse_elem("t^2+2", &k).unwrap()).unwrap(),
        Valuation::degree_place(&k).unwrap(),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn square_factors_do_not_change_the_class(seed in any::<u64>()) {
        let mut r = rng(seed);
        for k in [FieldTower::rationals(), fp(7), fp_t(5)] {
            let x = random_nonzero(&k, &mut r);
            let y = random_nonzero(&k, &mut r);
            let a = squareclass_reduce(&x).unwrap();
            let b = squareclass_reduce(&(&x * &y.square())).unwrap();
            prop_assert_eq!(&a.rep, &b.rep, "{} over {}", x, k);
        }
    }

    #[test]
    fn valuations_are_additive(seed in any::<u64>()) {
        let mut r = rng(seed);
        for v in valuations() {
            let x = random_nonzero(v.field(), &mut r);
            let y = random_nonzero(v.field(), &mut r);
            prop_assert_eq!(v.value(&(&x * &y)).unwrap(), v.value(&x).unwrap() + v.value(&y).unwrap());
            prop_assert_eq!(v.value(&v.uniformizer()), Some(1));
        }
    }

    #[test]
    fn residue_map_is_a_ring_map(seed in any::<u64>()) {
        let mut r = rng(seed);
        for v in valuations() {
            let k = v.field().clone();
            let mut pair = Vec::new();
            while pair.len() < 2 {
                let x = random_elem(&k, &mut r);
                if v.is_integral(&x) {
                    pair.push(x);
                }
            }
            let (x, y) = (&pair[0], &pair[1]);
            let (rx, ry) = (v.residue(x).unwrap(), v.residue(y).unwrap());
            prop_assert_eq!(v.residue(&(x + y)).unwrap(), &rx + &ry);
            prop_assert_eq!(v.residue(&(x * y)).unwrap(), &rx * &ry);
        }
    }

    #[test]
    fn etale_norm_is_multiplicative_and_fixes_the_base(seed in any::<u64>()) {
        let mut r = rng(seed);
        let q = FieldTower::rationals();
        let kt = fp_t(5);
        let towers = [
            (q.clone(), FieldTower::etale(&q, &q.from_int(5)).unwrap()),
            (q.clone(), FieldTower::etale(&q, &q.from_int(9)).unwrap()),
            (kt.clone(), FieldTower::etale(&kt, &kt.gen()).unwrap()),
        ];
        for (base, l) in towers {
            let x = l.pair(&random_elem(&base, &mut r), &random_elem(&base, &mut r));
            let y = l.pair(&random_elem(&base, &mut r), &random_elem(&base, &mut r));
            prop_assert_eq!((&x * &y).etale_norm(), &x.etale_norm() * &y.etale_norm());
            let c = random_elem(&base, &mut r);
            prop_assert_eq!(l.embed(&c).etale_norm(), c.square());
            prop_assert_eq!(l.embed(&c).conj(), l.embed(&c));
        }
    }
}
