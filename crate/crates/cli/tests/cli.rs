use std::path::PathBuf;

use quadbundle_cli::run;

fn call(args: &[&str]) -> (i32, String) {
    let mut argv = vec!["quadbundle"];
    argv.extend_from_slice(args);
    run(argv)
}

const GOLDEN: &[(&str, &[&str])] = &[
    ("corr_normform", &["corr", "normform", "--a", "2", "--b", "3", "--d", "5"]),
    ("quat_split_hamilton", &["quat", "split", "--a", "-1", "--b", "-1"]),
    ("cubic_check_worked", &["cubic", "check", "--cubic", "x0*y0^2 + x1*y1^2 + x2*y2^2 + x0*x1*x2"]),
    (
        "form_eichler_seeded",
        &["--field", "Fp:7", "--seed", "3", "form", "eichler", "--form", "diag(1,2)", "--gens", "5"],
    ),
    ("clif_dual_iso", &["--field", "Fp:5", "clif", "dual-iso"]),
    ("corr_isotropy_json", &["--json", "corr", "isotropy", "--form", "diag(1,1,1,-7)"]),
    (
        "corr_certify_refused",
        &["--field", "Fun:Fp:5:t", "corr", "certify", "--a", "2", "--b", "t", "--d", "t", "--at", "t"],
    ),
];

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(format!("{name}.txt"))
}

/// Set `UPDATE_GOLDEN=1` to rewrite the files after an intended change.
#[test]
fn golden_outputs() {
    let update = std::env::var("UPDATE_GOLDEN").is_ok();
    for (name, args) in GOLDEN {
        let (code, out) = call(args);
        let text = format!("exit: {code}\n{out}");
        let path = golden_path(name);
        if update {
            std::fs::write(&path, &text).unwrap();
            continue;
        }
        let expected =
            std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing golden file {}", path.display()));
        assert_eq!(text, expected, "golden mismatch for {name}");
    }
}

#[test]
fn repeated_runs_are_identical() {
    for (_, args) in GOLDEN {
        assert_eq!(call(args), call(args));
    }
    let a = call(&["--seed", "11", "form", "eichler", "--form", "diag(1,-3,5)", "--gens", "6"]);
    let b = call(&["--seed", "11", "form", "eichler", "--form", "diag(1,-3,5)", "--gens", "6"]);
    assert_eq!(a, b);
    assert_eq!(a.0, 0, "{}", a.1);
}

#[test]
fn normform_prints_the_norm_form() {
    let (code, out) = call(&["corr", "normform", "--a", "2", "--b", "3", "--d", "5"]);
    assert_eq!(code, 0);
    assert!(out.contains("form: diag(1,2,3,30)"), "{out}");
    assert!(out.contains("brauer: equivalent"));
}

#[test]
fn hamilton_quaternions_are_nonsplit_over_q() {
    let (code, out) = call(&["quat", "split", "--a", "-1", "--b", "-1"]);
    assert_eq!(code, 0);
    assert!(out.contains("split: no"));
    assert!(out.contains("hilbert symbol -1 at: real, 2"));
}

#[test]
fn malformed_input_exits_with_the_error_name() {
    let (code, out) = call(&["cubic", "disc", "--cubic", "x0*y0^2 + (y1"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("ParseError"));

    let (code, out) = call(&["cubic", "disc", "--cubic", "x0*y0^2 + y1^3"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("PlaneNotContained"));

    let (code, out) = call(&["--field", "Fp:6", "field", "squareclass", "--x", "1"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("NotPrime"));

    let (code, out) = call(&["quat", "explode"]);
    assert_eq!(code, 1);
    assert_eq!(out.lines().next(), Some("UsageError"));
}

#[test]
fn incomplete_certificate_exits_two() {
    let (code, out) =
        call(&["--field", "Fun:Fp:5:t", "corr", "certify", "--a", "2", "--b", "t", "--d", "t", "--at", "t"]);
    assert_eq!(code, 2);
    assert!(out.contains("status: unknown"));
    assert!(out.contains("local (t)"));
}

#[test]
fn complete_certificate_over_two_variables() {
    let (code, out) = call(&[
        "--field",
        "Fun:Fun:Fp:5:x:y",
        "corr",
        "certify",
        "--a",
        "-x",
        "--b",
        "-y",
        "--d",
        "1+y",
        "--at",
        "y+1,y-1",
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("status: complete"));
}

#[test]
fn json_mirrors_text() {
    let args = ["corr", "decide", "--form", "diag(1,2,3,t)", "--other", "diag(1,3,2,t)", "--at", "t"];
    let mut with_json = vec!["--field", "Fun:Fp:5:t", "--json"];
    with_json.extend_from_slice(&args);
    let mut plain = vec!["--field", "Fun:Fp:5:t"];
    plain.extend_from_slice(&args);
    let (c1, text) = call(&plain);
    let (c2, json) = call(&with_json);
    assert_eq!(c1, c2);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    assert_eq!(doc["command"], "corr decide");
    assert_eq!(doc["status"], "verified");
    for f in doc["fields"].as_array().unwrap() {
        let key = f["key"].as_str().unwrap();
        let value = f["value"].as_str().unwrap();
        assert!(text.contains(&format!("{key}:")), "{key}");
        for line in value.lines() {
            assert!(text.contains(line), "{line}");
        }
    }
}

#[test]
fn every_subcommand_runs() {
    let cases: &[&[&str]] = &[
        &["field", "squareclass", "--x", "12"],
        &["field", "valuation", "--x", "75", "--at", "5"],
        &["--field", "Fun:Fp:5:t", "field", "residue", "--x", "t^2+3", "--at", "t"],
        &["--field", "Ext:Q:5", "field", "norm", "--x", "1+sqrt(5)"],
        &["form", "diag", "--form", "form { gram: [[0,1],[1,0]] }"],
        &["--field", "Fun:Fp:5:t", "form", "report", "--form", "diag(1,2,t)", "--at", "t"],
        &["form", "reflect", "--form", "diag(1,1,1)", "--v", "(1,1,0)"],
        &["form", "transport", "--form", "diag(1,1)", "--v", "(1,0)", "--w", "(3/5,4/5)"],
        &["clif", "c0", "--form", "diag(1,2,3)"],
        &["clif", "center", "--form", "diag(1,-1,1,0)"],
        &["clif", "quaternionize", "--form", "diag(1,2,3,5)"],
        &["--field", "Fun:Fp:5:t", "quat", "residue", "--a", "2", "--b", "t", "--at", "t"],
        &["--field", "Ext:Q:5", "quat", "cores", "--a", "2", "--b", "1+sqrt(5)"],
        &["corr", "c0", "--form", "diag(1,1,1,1)"],
        &["--field", "Fun:Fp:5:t", "corr", "dvr-model", "--form", "diag(1,2,t^3,3)", "--at", "t"],
        &["--field", "Fp:7", "cubic", "extract", "--cubic", "x0*y0^2 + 2*x1*y0*y1 + x2*y2^2 + x0^2*y1"],
        &["cubic", "disc", "--cubic", "x0*y0^2 + x1*y1^2 + x2*y2^2 + x0*x1*x2"],
    ];
    for args in cases {
        let (code, out) = call(args);
        assert_eq!(code, 0, "{args:?}\n{out}");
    }
}
