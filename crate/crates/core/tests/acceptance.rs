//! Acceptance run: one line per criterion, nonzero exit if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use common::cubic::random_cubic;
use common::*;
use quadbundle::clifford::*;
use quadbundle::correspondence::*;
use quadbundle::cubicbundle::mpoly::MPoly;
use quadbundle::cubicbundle::*;
use quadbundle::field::enumerate::all_elements;
use quadbundle::field::parse::{parse_elem, parse_field};
use quadbundle::field::valuation::Valuation;
use quadbundle::field::{Elem, FieldTower, Kind};
use quadbundle::linalg::Matrix;
use quadbundle::places::{decide_isotropic, is_positive, Place};
use quadbundle::quadform::*;
use quadbundle::quaternion::SplitVerdict;
use quadbundle::search::{exhaustive_isotropic, find_isotropic};
use quadbundle::Error;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

type Outcome = std::result::Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: std::result::Result<T, E>) -> std::result::Result<T, String> {
    r.map_err(|e| e.to_string())
}

/// Diagonal forms of rank `n` with entries in `{0, 1, nonresidue}`.
fn small_family(k: &FieldTower, n: usize) -> Vec<QuadForm> {
    let entries = [k.zero(), k.one(), k.from_int(k.nonresidue().unwrap() as i64)];
    (0..3usize.pow(n as u32))
        .map(|idx| {
            QuadForm::diag(&(0..n).map(|i| entries[(idx / 3usize.pow(i as u32)) % 3].clone()).collect::<Vec<_>>())
        })
        .collect()
}

fn nonzero_vector(q: &QuadForm, r: &mut ChaCha8Rng) -> Vec<Elem> {
    loop {
        let v = random_vec(q.field(), r, q.rank());
        if !q.q(&v).is_zero() {
            return v;
        }
    }
}

fn random_isometry(q: &QuadForm, r: &mut ChaCha8Rng, reflections: usize) -> Similarity {
    let mut s = Similarity::identity(q.rank(), q.field());
    for _ in 0..reflections {
        s = reflection(q, &nonzero_vector(q, r)).unwrap().compose(&s);
    }
    s
}

fn small_int(k: &FieldTower, r: &mut ChaCha8Rng) -> Elem {
    loop {
        let x = k.from_int(r.gen_range(-10..=10));
        if !x.is_zero() {
            return x;
        }
    }
}

fn clifford_dimension() -> Outcome {
    let mut count = 0;
    for p in [3u64, 5] {
        let k = fp(p);
        for n in 2..=4 {
            for q in small_family(&k, n) {
                let c = ok(even_clifford(&q))?;
                ensure!(c.dim() == 1 << (n - 1), "dim {} for {}", c.dim(), q.to_text());
                ensure!(c.relations_hold() && c.is_associative(), "not associative for {}", q.to_text());
                count += 1;
            }
        }
    }
    Ok(format!("{count} forms"))
}

fn center_rank() -> Outcome {
    let mut count = 0;
    for p in [3u64, 5] {
        for q in small_family(&fp(p), 4) {
            let z = ok(center(&ok(even_clifford(&q))?))?;
            let rad = radical(&q).len();
            ensure!((z.rank == 2) == (rad <= 1), "center rank {} radical {} for {}", z.rank, rad, q.to_text());
            ensure!(rad < 2 || z.rank >= 3, "center rank {} radical {} for {}", z.rank, rad, q.to_text());
            count += 1;
        }
    }
    Ok(format!("{count} forms, 0 exceptions"))
}

fn degenerate_iso() -> Outcome {
    let mut r = rng(3);
    for k in [fp(5), fp(7), FieldTower::rationals()] {
        let iso = ok(degenerate_c0_iso(&k))?;
        ensure!(iso.verify() && iso.displayed_relations, "isomorphism fails over {}", k);
        for _ in 0..100 {
            let (a, b, c) = (random_elem(&k, &mut r), random_elem(&k, &mut r), random_elem(&k, &mut r));
            let act = ok(unipotent_action(&a, &b, &c))?;
            ensure!(act.holds(), "unipotent action fails at ({a}, {b}, {c}) over {k}");
        }
    }
    Ok("F5, F7, Q; 300 triples".into())
}

fn eichler() -> Outcome {
    let mut r = rng(4);
    for k in [FieldTower::rationals(), fp_t(11)] {
        for _ in 0..500 {
            let n = r.gen_range(1..=3);
            let q = random_regular_diag(&k, &mut r, n);
            let (v, w) = (random_vec(&k, &mut r, n), random_vec(&k, &mut r, n));
            let u = random_nonzero(&k, &mut r);
            let vw: Vec<Elem> = v.iter().zip(&w).map(|(a, b)| a + b).collect();
            ensure!(
                eichler_e(&q, &vw).matrix == eichler_e(&q, &v).matrix.mul(&eichler_e(&q, &w).matrix),
                "E additivity over {k}"
            );
            ensure!(
                eichler_e_star(&q, &vw).matrix == eichler_e_star(&q, &v).matrix.mul(&eichler_e_star(&q, &w).matrix),
                "E* additivity over {k}"
            );
            ensure!(ok(hyperbolic_conjugation_check(&q, &v, &u))?, "conjugation identities over {k}");
        }
    }
    for i in 0..100 {
        let (k, n) = if i % 2 == 0 { (fp(7), 2) } else { (FieldTower::rationals(), 3) };
        let q = random_regular_diag(&k, &mut r, n);
        let u = random_nonzero(&k, &mut r);
        let mut phi = if r.gen_bool(0.5) { ok(alpha(&q, &u))? } else { ok(beta(&q, &u))? };
        for _ in 0..5 {
            let v = random_vec(&k, &mut r, n);
            let g = if r.gen_bool(0.5) { eichler_e(&q, &v) } else { eichler_e_star(&q, &v) };
            phi = g.compose(&phi);
        }
        let d = ok(eichler_decompose(&q, &phi))?;
        ensure!(d.recompose(&q) == phi.matrix, "decomposition does not recompose over {k}");
    }
    Ok("1000 identity instances, 100 decompositions".into())
}

fn transport_and_cancel() -> Outcome {
    let mut r = rng(5);
    let fields = [FieldTower::rationals(), fp(5), fp(7)];
    let mut done = 0;
    while done < 1000 {
        let k = &fields[done % 3];
        let n = r.gen_range(2..=4);
        let q = random_form(k, &mut r, n);
        if !q.is_regular() {
            continue;
        }
        let v = nonzero_vector(&q, &mut r);
        let w = random_isometry(&q, &mut r, 3).apply(&v);
        let t = ok(transport(&q, &v, &w))?;
        ensure!(t.reflections.len() <= 2, "{} reflections", t.reflections.len());
        ensure!(t.isometry.check(&q, &q) && t.isometry.apply(&v) == w, "transport fails over {k}");
        done += 1;
    }
    let k = fp(7);
    for _ in 0..200 {
        let n1 = r.gen_range(1..=3);
        let q1 = random_regular_diag(&k, &mut r, n1);
        let npad = r.gen_range(1..=2);
        let pad = random_regular_diag(&k, &mut r, npad);
        let p = loop {
            let m = Matrix::from_rows((0..n1).map(|_| random_vec(&k, &mut r, n1)).collect());
            if !m.det().is_zero() {
                break m;
            }
        };
        let q2 = q1.pullback(&p);
        let base = Similarity::isometry(p.inverse().unwrap().direct_sum(&Matrix::identity(npad, &k.one())));
        let target = q2.orthogonal_sum(&pad);
        let witness = random_isometry(&target, &mut r, 3).compose(&base);
        let c = ok(cancel(&q1, &q2, &pad, &witness))?;
        ensure!(c.is_isometry() && c.check(&q1, &q2), "cancel output is not an isometry");
    }
    Ok("1000 transports, 200 cancellations".into())
}

fn main_theorem_round_trip() -> Outcome {
    let mut r = rng(6);
    let q = FieldTower::rationals();
    for _ in 0..200 {
        let (a, b, d) = (random_nonzero(&q, &mut r), random_nonzero(&q, &mut r), random_nonzero(&q, &mut r));
        let rec = ok(form_from_azumaya(&a, &b, &d, 1000))?;
        ensure!(rec.verified(), "not Brauer-equivalent: a={a} b={b} d={d}");
    }
    let mut sweep = 0;
    for p in [3u64, 5, 7] {
        let k = fp(p);
        let units: Vec<Elem> = ok(all_elements(&k))?.into_iter().filter(|x| !x.is_zero()).collect();
        for a in &units {
            for b in &units {
                for d in &units {
                    ensure!(ok(form_from_azumaya(a, b, d, 1000))?.verified(), "not Brauer-equivalent over F{p}");
                    sweep += 1;
                }
            }
        }
    }
    let (mut iso, mut aniso, mut unknown) = (0, 0, 0);
    for i in 0..150 {
        let k = [q.clone(), fp(5), fp_t(3)][i % 3].clone();
        let form = if matches!(k.kind(), Kind::Rationals) {
            QuadForm::diag(&(0..4).map(|_| small_int(&k, &mut r)).collect::<Vec<_>>())
        } else {
            random_regular_diag(&k, &mut r, 4)
        };
        let coeffs = form.diagonal_coeffs().unwrap();
        // oracles that halt: exhaustive search over finite fields, Hasse-Minkowski over Q
        let oracle = match k.kind() {
            Kind::Rationals => ok(decide_isotropic(&coeffs))?,
            Kind::Prime { .. } => Some(ok(exhaustive_isotropic(&coeffs))?),
            _ => None,
        };
        match ok(isotropy_rank4(&form, 400))? {
            IsotropyVerdict::Isotropic { witness } => {
                ensure!(witness.iter().any(|x| !x.is_zero()) && form.q(&witness).is_zero(), "bad witness");
                ensure!(oracle != Some(false), "isotropic verdict against the oracle: {}", form.to_text());
                iso += 1;
            }
            IsotropyVerdict::Anisotropic { certificate } => {
                ok(certificate.verify())?;
                ensure!(ok(find_isotropic(&coeffs, 400))?.is_none(), "search finds a zero of {}", form.to_text());
                ensure!(oracle != Some(true), "anisotropic verdict against the oracle: {}", form.to_text());
                aniso += 1;
            }
            IsotropyVerdict::Unknown { .. } => unknown += 1,
        }
    }
    Ok(format!(
        "200 over Q, {sweep} small-field triples; isotropy {iso} isotropic, {aniso} anisotropic, {unknown} unknown"
    ))
}

fn anisotropy_flagship() -> Outcome {
    let k = FieldTower::rationals();
    let coeffs = vec![k.one(); 4];
    let form = QuadForm::diag(&coeffs);
    ensure!(coeffs.iter().all(is_positive), "oracle: the form is not positive definite");
    let IsotropyVerdict::Anisotropic { certificate } = ok(isotropy_rank4(&form, 100))? else {
        return Err("not reported anisotropic".into());
    };
    ok(certificate.verify())?;
    let mut verdict = &certificate.verdict;
    while let SplitVerdict::Component { inner, .. } = verdict {
        verdict = inner;
    }
    let SplitVerdict::LocalObstruction { places } = verdict else {
        return Err(format!("expected local obstructions, got {certificate}"));
    };
    ensure!(
        places.len() == 2 && places.contains(&Place::Real) && places.contains(&Place::Prime(2)),
        "places {places:?}"
    );
    Ok(format!("{}; obstructed at real and 2", certificate.algebra))
}

/// Residue forms `⟨ū₁,…,ū_{n−1}⟩` and `⟨ū_n⟩`, summarized by how often each
/// value is taken.
fn residue_counts(q: &QuadForm, v: &Valuation) -> std::result::Result<Vec<Vec<usize>>, String> {
    let c = q.diagonal_coeffs().unwrap();
    let n = c.len();
    let pi = v.uniformizer();
    let units: Vec<Elem> = c[..n - 1].iter().cloned().chain([&c[n - 1] * &pi.try_inv().unwrap()]).collect();
    let res: Vec<Elem> = units.iter().map(|u| ok(v.residue(u))).collect::<std::result::Result<_, _>>()?;
    let kappa = ok(v.residue_field())?;
    let elems = ok(all_elements(&kappa))?;
    let count = |coeffs: &[Elem]| {
        let mut counts = vec![0usize; elems.len()];
        let m = coeffs.len();
        for idx in 0..elems.len().pow(m as u32) {
            let val = (0..m).fold(kappa.zero(), |acc, i| {
                let x = &elems[(idx / elems.len().pow(i as u32)) % elems.len()];
                &acc + &(&coeffs[i] * &x.square())
            });
            counts[elems.iter().position(|e| *e == val).unwrap()] += 1;
        }
        counts
    };
    Ok(vec![count(&res[..n - 1]), count(&res[n - 1..])])
}

fn random_sd(k: &FieldTower, v: &Valuation, r: &mut ChaCha8Rng, n: usize) -> QuadForm {
    let mut c: Vec<Elem> = (0..n)
        .map(|_| loop {
            let x = random_elem(k, r);
            if v.is_unit(&x) {
                break x;
            }
        })
        .collect();
    c[n - 1] = &c[n - 1] * &v.uniformizer();
    QuadForm::diag(&c)
}

fn dvr_layer() -> Outcome {
    let mut r = rng(8);
    let (mut models, mut same, mut different) = (0, 0, 0);
    for p in [5u64, 7] {
        let k = fp_t(p);
        let v = ok(Valuation::from_element(&k, &k.gen()))?;
        for _ in 0..50 {
            let n = r.gen_range(2..=4);
            let c: Vec<Elem> =
                (0..n).map(|_| &random_nonzero(&k, &mut r) * &k.gen().pow(r.gen_range(0..4)).unwrap()).collect();
            let q = QuadForm::diag(&c);
            match dvr_model(&q, &v) {
                Ok(m) => {
                    ensure!(m.similarity.check(&q, &m.form), "model similarity fails");
                    ensure!(ok(degeneration_report(&m.form, &v))?.verdict == Verdict::Simple(1), "model not simple(1)");
                    models += 1;
                }
                Err(Error::EvenDiscValuation) => {}
                Err(e) => return Err(e.to_string()),
            }
        }
        for _ in 0..50 {
            let n = r.gen_range(2..=4);
            let (q1, q2) = (random_sd(&k, &v, &mut r, n), random_sd(&k, &v, &mut r, n));
            ensure!(ok(dvr_isometry_decide(&q1, &q1, &v, 1000))?.is_isometric() == Some(true), "not reflexive");
            let ab = ok(dvr_isometry_decide(&q1, &q2, &v, 1000))?.is_isometric();
            let ba = ok(dvr_isometry_decide(&q2, &q1, &v, 1000))?.is_isometric();
            ensure!(ab == ba, "not symmetric: {} vs {}", q1.to_text(), q2.to_text());
            let expected = residue_counts(&q1, &v)? == residue_counts(&q2, &v)?;
            ensure!(
                ab == Some(expected),
                "verdict {ab:?} against residue invariants for {} vs {}",
                q1.to_text(),
                q2.to_text()
            );
            if expected {
                same += 1;
            } else {
                different += 1;
            }
        }
    }
    Ok(format!("{models} models; pairs: {same} isometric, {different} separated"))
}

fn local_global() -> Outcome {
    let k = ok(parse_field("Fun:Fun:Fp:5:x:y"))?;
    let e = |s: &str| parse_elem(s, &k).unwrap();
    let candidates = [("-x", "-y", "1-y^2", &["y+1", "y-1"][..]), ("-x", "-y", "1+y", &["y+1"][..])];
    for (a, b, d, at) in candidates {
        let vs: Vec<Valuation> = at.iter().map(|s| Valuation::from_element(&k, &e(s)).unwrap()).collect();
        let Ok(c) = local_global_certificate(&e(a), &e(b), &e(d), &vs, 2000) else { continue };
        if c.status().is_err() || c.locals.iter().any(|l| l.report.verdict != Verdict::Simple(1)) {
            continue;
        }
        ok(c.verify())?;
        let AnisotropyHalf::Nonsplit(cert) = &c.anisotropy else { continue };
        ensure!(matches!(cert.verdict, SplitVerdict::Ramified(_)), "no ramification witness");
        ok(cert.verify())?;
        return Ok(format!("a={a} b={b} d={d} at {}", at.join(", ")));
    }
    Err("no candidate produced a complete certificate".into())
}

fn cubic_extraction() -> Outcome {
    let mut r = rng(10);
    let mut degenerate = 0;
    for i in 0..500 {
        let k = if i % 2 == 0 { FieldTower::rationals() } else { fp(7) };
        let f = random_cubic(&k, &mut r);
        let bf = ok(extract_bundle(&f))?;
        ensure!(&bf.reassemble() == f.poly(), "reassembly differs for {f}");
        match discriminant_sextic(&bf) {
            Ok(d) => ensure!(d.homogeneous_degree() == Some(6), "degree {:?}", d.homogeneous_degree()),
            Err(Error::GenericallyDegenerate) => degenerate += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    let q = FieldTower::rationals();
    let worked = ok(extract_bundle(&ok(CubicContainingPlane::parse("x0*y0^2 + x1*y1^2 + x2*y2^2 + x0*x1*x2", &q))?))?;
    let expected = ok(MPoly::parse("x0^2*x1^2*x2^2", &q, &base_vars()))?;
    ensure!(ok(discriminant_sextic(&worked))? == expected, "worked example det");
    let MultiplicityCheck::Fails { factor, exponent } = ok(multiplicity_one_check(&worked))? else {
        return Err("worked example passes the multiplicity test".into());
    };
    let k = fp(5);
    for _ in 0..100 {
        let bf = ok(extract_bundle(&random_cubic(&k, &mut r)))?;
        let mat = |r: &mut ChaCha8Rng| Matrix::new(3, 3, (0..9).map(|_| k.from_int(r.gen_range(0..5))).collect());
        let h = loop {
            let h = mat(&mut r);
            if !h.det().is_zero() {
                break h;
            }
        };
        let g = mat(&mut r);
        let (u, lambda) = (k.from_int(r.gen_range(1..5)), k.from_int(r.gen_range(1..5)));
        let jl = ok(j_lift(&h, &g, &u))?;
        let bf2 = ok(jl.transform(&bf, &lambda))?;
        ensure!(jl.verify(&bf, &bf2, &lambda).holds(), "j_lift identity fails");
    }
    Ok(format!("500 cubics ({degenerate} with det 0); worked example fails at {factor}^{exponent}; 100 lifts"))
}

fn main() {
    let criteria: [(&str, u64, fn() -> Outcome); 10] = [
        ("clifford dimension law", 10, clifford_dimension),
        ("center rank equivalence", 30, center_rank),
        ("degenerate isomorphism", 10, degenerate_iso),
        ("eichler identities", 60, eichler),
        ("transport and cancellation", 60, transport_and_cancel),
        ("field-level round trip", 300, main_theorem_round_trip),
        ("anisotropy of <1,1,1,1>", 1, anisotropy_flagship),
        ("dvr layer", 120, dvr_layer),
        ("local-global certificate", 300, local_global),
        ("cubic extraction", 60, cubic_extraction),
    ];
    let mut failures = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if elapsed > Duration::from_secs(*limit) => Err(format!("over time: {detail}")),
            o => o,
        };
        let (tag, detail) = match outcome {
            Ok(d) => ("pass", d),
            Err(d) => {
                failures += 1;
                ("FAIL", d)
            }
        };
        println!("criterion {:>2} {name}: {tag} ({:.2}s of {limit}s) {detail}", i + 1, elapsed.as_secs_f64());
    }
    if failures > 0 {
        std::process::exit(1);
    }
}
