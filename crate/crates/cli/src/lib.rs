//! Command-line front end: parses field descriptors and expressions, runs one
//! computation and renders a deterministic report.
//!
//! Exit codes: 0 for a verified result, 1 for an input or module error (the
//! first output line is the error name), 2 when the answer is unknown within
//! the budget.

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use quadbundle::clifford::{center, degenerate_c0_iso, even_clifford, quaternionize};
use quadbundle::correspondence::{
    azumaya_from_form, dvr_isometry_decide, dvr_model, dvr_similarity_decide, form_from_azumaya, isotropy_rank4,
    local_global_certificate, CorrespondenceRecord, IsotropyVerdict,
};
use quadbundle::cubicbundle::{
    discriminant_sextic, extract_bundle, multiplicity_one_check, simple_degeneration_locus_check, CubicContainingPlane,
};
use quadbundle::field::parse::{parse_elem, parse_field, parse_matrix, parse_vector};
use quadbundle::field::squareclass::squareclass_reduce;
use quadbundle::field::valuation::Valuation;
use quadbundle::linalg::{fmt_vec, Matrix};
use quadbundle::quadform::{
    alpha, degeneration_report, diagonalize, diagonalize_local, discriminant, eichler_decompose, eichler_e,
    eichler_e_star, reflection, transport, DegenerationReport, QuadForm, Similarity, Verdict,
};
use quadbundle::quaternion::{corestriction, is_split, residue_symbol, tame_symbol, QuaternionAlgebra};
use quadbundle::{Elem, Error, FieldTower};

#[derive(Parser, Debug)]
#[command(name = "quadbundle", about = "Exact computations for quadric surface bundles")]
struct Cli {
    #[command(subcommand)]
    group: Group,
    /// Search budget for bounded enumerations.
    #[arg(long, global = true, default_value_t = 100_000)]
    budget: u64,
    /// Seed for commands that draw random data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Field descriptor such as `Q`, `Fp:5`, `Fun:Fp:5:t` or `Ext:Q:5`.
    #[arg(long, global = true, default_value = "Q", allow_hyphen_values = true)]
    field: String,
}

#[derive(Subcommand, Debug)]
enum Group {
    /// Field arithmetic.
    #[command(subcommand)]
    Field(FieldCmd),
    /// Quadratic forms.
    #[command(subcommand)]
    Form(FormCmd),
    /// Even Clifford algebras.
    #[command(subcommand)]
    Clif(ClifCmd),
    /// Quaternion algebras.
    #[command(subcommand)]
    Quat(QuatCmd),
    /// Forms and algebras over the discriminant extension.
    #[command(subcommand)]
    Corr(CorrCmd),
    /// Cubic fourfolds containing a plane.
    #[command(subcommand)]
    Cubic(CubicCmd),
}

#[derive(Args, Debug)]
struct XArg {
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args, Debug)]
struct XAtArgs {
    #[arg(long, allow_hyphen_values = true)]
    x: String,
    /// A prime, an irreducible polynomial, or `inf`.
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args, Debug)]
struct FormArg {
    /// `diag(a, b, ...)` or `form { field: F, gram: [[..]] }`.
    #[arg(long, allow_hyphen_values = true)]
    form: String,
}

#[derive(Args, Debug)]
struct FormAtArgs {
    #[arg(long, allow_hyphen_values = true)]
    form: String,
    #[arg(long, allow_hyphen_values = true)]
    at: String,
}

#[derive(Args, Debug)]
struct SlotArgs {
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    #[arg(long, allow_hyphen_values = true)]
    b: String,
}

#[derive(Args, Debug)]
struct CubicArg {
    /// Homogeneous cubic in x0, x1, x2, y0, y1, y2.
    #[arg(long, allow_hyphen_values = true)]
    cubic: String,
}

#[derive(Subcommand, Debug)]
enum FieldCmd {
    Squareclass(XArg),
    Valuation(XAtArgs),
    Residue(XAtArgs),
    /// Norm and conjugate in a quadratic étale algebra.
    Norm(XArg),
}

#[derive(Subcommand, Debug)]
enum FormCmd {
    Diag(FormArg),
    Report(FormAtArgs),
    Reflect {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
    },
    Transport {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        v: String,
        #[arg(long, allow_hyphen_values = true)]
        w: String,
    },
    /// Decomposes an isometry of `q ⊥ h`; without `--matrix` a random
    /// product of `--gens` generators is drawn from `--seed`.
    Eichler {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        matrix: Option<String>,
        #[arg(long, default_value_t = 4)]
        gens: usize,
    },
}

#[derive(Subcommand, Debug)]
enum ClifCmd {
    C0(FormArg),
    Center(FormArg),
    Quaternionize(FormArg),
    DualIso,
}

#[derive(Subcommand, Debug)]
enum QuatCmd {
    Split(SlotArgs),
    Residue {
        #[command(flatten)]
        slots: SlotArgs,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    Cores(SlotArgs),
}

#[derive(Subcommand, Debug)]
enum CorrCmd {
    C0(FormArg),
    Normform {
        #[command(flatten)]
        slots: SlotArgs,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
    },
    Isotropy(FormArg),
    DvrModel(FormAtArgs),
    Decide {
        #[arg(long, allow_hyphen_values = true)]
        form: String,
        #[arg(long, allow_hyphen_values = true)]
        other: String,
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
    Certify {
        #[command(flatten)]
        slots: SlotArgs,
        #[arg(long, allow_hyphen_values = true)]
        d: String,
        /// Comma-separated valuations.
        #[arg(long, allow_hyphen_values = true)]
        at: String,
    },
}

#[derive(Subcommand, Debug)]
enum CubicCmd {
    Extract(CubicArg),
    Disc(CubicArg),
    Check(CubicArg),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Verified,
    Unknown,
}

impl Status {
    fn code(self) -> i32 {
        match self {
            Status::Verified => 0,
            Status::Unknown => 2,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            Status::Verified => "verified",
            Status::Unknown => "unknown",
        }
    }
}

/// Ordered key/value report; values may span several lines.
#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub status: Status,
    pub fields: Vec<(String, String)>,
}

impl Report {
    fn new(command: &str) -> Report {
        Report { command: command.to_string(), status: Status::Verified, fields: Vec::new() }
    }

    fn push(&mut self, key: &str, value: impl ToString) -> &mut Report {
        self.fields.push((key.to_string(), value.to_string()));
        self
    }

    fn unknown_if(&mut self, cond: bool) {
        if cond {
            self.status = Status::Unknown;
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("command: {}\nstatus: {}\n", self.command, self.status.as_str());
        for (k, v) in &self.fields {
            if v.contains('\n') {
                out.push_str(&format!("{}:\n", k));
                for line in v.lines() {
                    out.push_str(&format!("  {}\n", line));
                }
            } else {
                out.push_str(&format!("{}: {}\n", k, v));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let fields: Vec<serde_json::Value> =
            self.fields.iter().map(|(k, v)| serde_json::json!({ "key": k, "value": v })).collect();
        let doc = serde_json::json!({
            "command": self.command,
            "status": self.status.as_str(),
            "fields": fields,
        });
        format!("{}\n", serde_json::to_string_pretty(&doc).expect("json"))
    }
}

/// Runs one invocation; `argv[0]` is the program name.
pub fn run<I, S>(argv: I) -> (i32, String)
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => (0, e.render().to_string()),
                _ => (1, format!("UsageError\n{}", e.render())),
            };
        }
    };
    match dispatch(&cli) {
        Ok(r) => {
            let text = if cli.json { r.to_json() } else { r.to_text() };
            (r.status.code(), text)
        }
        Err(e) => (1, format!("{}\nerror: {}\n", e.name(), e)),
    }
}

type Res<T> = quadbundle::Result<T>;

fn elem(s: &str, k: &FieldTower) -> Res<Elem> {
    parse_elem(s, k)
}

fn valuation(s: &str, k: &FieldTower) -> Res<Valuation> {
    if s.trim() == "inf" {
        return Valuation::degree_place(k);
    }
    Valuation::from_element(k, &parse_elem(s, k)?)
}

fn form(s: &str, k: &FieldTower) -> Res<QuadForm> {
    QuadForm::parse(s, Some(k))
}

fn diag_text(c: &[Elem]) -> String {
    format!("diag({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
}

fn form_text(q: &QuadForm) -> String {
    match q.diagonal_coeffs() {
        Some(c) => diag_text(&c),
        None => q.to_text(),
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn report_text(r: &DegenerationReport) -> String {
    let m = r.multiplicity.map_or("infinite".to_string(), |m| m.to_string());
    format!("radical rank {}, multiplicity {}, verdict {}", r.radical_rank, m, r.verdict)
}

fn dispatch(cli: &Cli) -> Res<Report> {
    let k = parse_field(&cli.field)?;
    match &cli.group {
        Group::Field(c) => field_cmd(c, &k),
        Group::Form(c) => form_cmd(c, &k, cli.seed),
        Group::Clif(c) => clif_cmd(c, &k),
        Group::Quat(c) => quat_cmd(c, &k, cli.budget),
        Group::Corr(c) => corr_cmd(c, &k, cli.budget),
        Group::Cubic(c) => cubic_cmd(c, &k),
    }
}

fn field_cmd(c: &FieldCmd, k: &FieldTower) -> Res<Report> {
    match c {
        FieldCmd::Squareclass(a) => {
            let x = elem(&a.x, k)?;
            let mut r = Report::new("field squareclass");
            r.push("field", k).push("element", &x);
            let class = squareclass_reduce(&x)?;
            r.push("class", &class).push("square", yes(class.is_trivial()));
            Ok(r)
        }
        FieldCmd::Valuation(a) => {
            let x = elem(&a.x, k)?;
            let v = valuation(&a.at, k)?;
            let mut r = Report::new("field valuation");
            r.push("field", k).push("element", &x).push("valuation", &v);
            r.push("value", v.value(&x).map_or("infinity".to_string(), |e| e.to_string()));
            Ok(r)
        }
        FieldCmd::Residue(a) => {
            let x = elem(&a.x, k)?;
            let v = valuation(&a.at, k)?;
            let res = v.residue(&x)?;
            let mut r = Report::new("field residue");
            r.push("field", k).push("element", &x).push("valuation", &v);
            r.push("residue field", v.residue_field()?).push("residue", res);
            Ok(r)
        }
        FieldCmd::Norm(a) => {
            let x = elem(&a.x, k)?;
            if !matches!(k.kind(), quadbundle::field::Kind::Etale { .. }) {
                return Err(Error::UnsupportedDomain(format!("{} is not a quadratic étale algebra", k)));
            }
            let mut r = Report::new("field norm");
            r.push("field", k).push("element", &x).push("conjugate", x.conj()).push("norm", x.etale_norm());
            Ok(r)
        }
    }
}

fn random_elem(k: &FieldTower, rng: &mut ChaCha8Rng) -> Elem {
    k.from_int(rng.gen_range(-3..=3))
}

fn form_cmd(c: &FormCmd, k: &FieldTower, seed: u64) -> Res<Report> {
    match c {
        FormCmd::Diag(a) => {
            let q = form(&a.form, k)?;
            let d = diagonalize(&q)?;
            let ok = d.isometry.check(&q, &d.form());
            let mut r = Report::new("form diag");
            r.push("form", q.to_text()).push("diagonal", diag_text(&d.coeffs)).push("basis", &d.basis);
            match discriminant(&q) {
                Ok(s) => r.push("disc", s),
                Err(_) => r.push("disc", "0"),
            };
            r.push("isometry check", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        FormCmd::Report(a) => {
            let q = form(&a.form, k)?;
            let v = valuation(&a.at, k)?;
            let rep = degeneration_report(&q, &v)?;
            let mut r = Report::new("form report");
            r.push("form", form_text(&q)).push("valuation", &v).push("radical rank", rep.radical_rank);
            r.push("multiplicity", rep.multiplicity.map_or("infinite".to_string(), |m| m.to_string()));
            r.push("verdict", &rep.verdict);
            if rep.verdict != Verdict::NotSimple {
                let ld = diagonalize_local(&q, &v)?;
                r.push("units", fmt_vec(&ld.units)).push("top", &ld.top).push("basis", &ld.basis);
            }
            Ok(r)
        }
        FormCmd::Reflect { form: f, v } => {
            let q = form(f, k)?;
            let v = parse_vector(v, k)?;
            let s = reflection(&q, &v)?;
            let sq = s.matrix.mul(&s.matrix) == Matrix::identity(q.rank(), &k.one());
            let ok = s.check(&q, &q) && sq;
            let mut r = Report::new("form reflect");
            r.push("form", form_text(&q)).push("vector", fmt_vec(&v)).push("matrix", &s.matrix);
            r.push("det", s.matrix.det()).push("squares to identity", yes(sq)).push("isometry check", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        FormCmd::Transport { form: f, v, w } => {
            let q = form(f, k)?;
            let v = parse_vector(v, k)?;
            let w = parse_vector(w, k)?;
            let t = transport(&q, &v, &w)?;
            let ok = t.isometry.check(&q, &q) && t.isometry.apply(&v) == w;
            let mut r = Report::new("form transport");
            r.push("form", form_text(&q)).push("from", fmt_vec(&v)).push("to", fmt_vec(&w));
            let refl: Vec<String> = t.reflections.iter().map(|x| fmt_vec(x)).collect();
            r.push("reflections", if refl.is_empty() { "none".to_string() } else { refl.join(", ") });
            r.push("matrix", &t.isometry.matrix).push("maps v to w", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        FormCmd::Eichler { form: f, matrix, gens } => {
            let q = form(f, k)?;
            let n = q.rank();
            let phi = match matrix {
                Some(m) => Similarity::isometry(Matrix::from_rows(parse_matrix(m, k)?)),
                None => {
                    let mut rng = ChaCha8Rng::seed_from_u64(seed);
                    let u = k.from_int(rng.gen_range(1..=4));
                    let u = if u.is_zero() { k.one() } else { u };
                    let mut phi = alpha(&q, &u)?;
                    for _ in 0..*gens {
                        let v: Vec<Elem> = (0..n).map(|_| random_elem(k, &mut rng)).collect();
                        let g = if rng.gen_bool(0.5) { eichler_e(&q, &v) } else { eichler_e_star(&q, &v) };
                        phi = g.compose(&phi);
                    }
                    phi
                }
            };
            let dec = eichler_decompose(&q, &phi)?;
            let ok = dec.recompose(&q) == phi.matrix;
            let mut r = Report::new("form eichler");
            r.push("form", form_text(&q)).push("isometry", &phi.matrix);
            let gs: Vec<String> = dec.generators.iter().map(|g| g.to_string()).collect();
            r.push("generators", if gs.is_empty() { "none".to_string() } else { gs.join(" * ") });
            r.push("tail", &dec.tail).push("recomposition matches", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
    }
}

/// Diagonal forms go straight to `C₀`; others are diagonalized first.
fn diagonal_form(q: &QuadForm) -> Res<(QuadForm, bool)> {
    if q.diagonal_coeffs().is_some() {
        return Ok((q.clone(), false));
    }
    Ok((diagonalize(q)?.form(), true))
}

fn clif_cmd(c: &ClifCmd, k: &FieldTower) -> Res<Report> {
    match c {
        ClifCmd::C0(a) => {
            let (q, diagonalized) = diagonal_form(&form(&a.form, k)?)?;
            let c0 = even_clifford(&q)?;
            let ok = c0.is_associative() && c0.relations_hold();
            let mut r = Report::new("clif c0");
            r.push("form", form_text(&q)).push("diagonalized", yes(diagonalized)).push("dimension", c0.dim());
            r.push("table", c0.dump()).push("relations and associativity", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        ClifCmd::Center(a) => {
            let (q, _) = diagonal_form(&form(&a.form, k)?)?;
            let c0 = even_clifford(&q)?;
            let z = center(&c0)?;
            let mut r = Report::new("clif center");
            r.push("form", form_text(&q)).push("rank", z.rank);
            if let Some(g) = &z.generator {
                r.push("generator", fmt_vec(g));
            }
            if let Some(s) = &z.square {
                r.push("generator squared", s);
            }
            Ok(r)
        }
        ClifCmd::Quaternionize(a) => {
            let (q, _) = diagonal_form(&form(&a.form, k)?)?;
            let qz = quaternionize(&even_clifford(&q)?)?;
            let ok = qz.verify();
            let mut r = Report::new("clif quaternionize");
            r.push("form", form_text(&q)).push("algebra", &qz.algebra);
            let labels = ["1", "i", "j", "k"];
            for (l, img) in labels.iter().zip(&qz.images) {
                r.push(&format!("image of {}", l), fmt_vec(img));
            }
            r.push("isomorphism check", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        ClifCmd::DualIso => {
            let iso = degenerate_c0_iso(k)?;
            let ok = iso.verify() && iso.displayed_relations;
            let mut r = Report::new("clif dual-iso");
            r.push("ring", &iso.ring);
            for (l, m) in iso.algebra.labels().iter().zip(&iso.images) {
                r.push(l, m);
            }
            r.push("isomorphism check", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
    }
}

fn algebra(s: &SlotArgs, k: &FieldTower) -> Res<QuaternionAlgebra> {
    QuaternionAlgebra::new(&elem(&s.a, k)?, &elem(&s.b, k)?)
}

fn quat_cmd(c: &QuatCmd, k: &FieldTower, budget: u64) -> Res<Report> {
    match c {
        QuatCmd::Split(s) => {
            let q = algebra(s, k)?;
            let cert = is_split(&q, budget)?;
            let mut r = Report::new("quat split");
            r.push("algebra", &q);
            r.push("split", cert.is_split().map_or("unknown", |b| if b { "yes" } else { "no" }));
            r.push("certificate", &cert);
            r.unknown_if(cert.is_split().is_none());
            Ok(r)
        }
        QuatCmd::Residue { slots, at } => {
            let q = algebra(slots, k)?;
            let v = valuation(at, v_field(k))?;
            let class = residue_symbol(&q, &v)?;
            let sub = q.descend_to(v.field()).expect("residue_symbol checked descent");
            let mut r = Report::new("quat residue");
            r.push("algebra", &q).push("valuation", &v).push("tame symbol", tame_symbol(sub.a(), sub.b(), &v)?);
            r.push("residue class", &class).push("ramified", yes(!class.is_trivial()));
            Ok(r)
        }
        QuatCmd::Cores(s) => {
            let q = algebra(s, k)?;
            let c = corestriction(&q)?;
            let mut r = Report::new("quat cores");
            r.push("algebra", &q).push("corestriction", &c);
            Ok(r)
        }
    }
}

/// Valuations of an étale algebra are taken on its base.
fn v_field(k: &FieldTower) -> &FieldTower {
    match k.kind() {
        quadbundle::field::Kind::Etale { base, .. } => base,
        _ => k,
    }
}

fn record_report(name: &str, rec: &CorrespondenceRecord) -> Report {
    let mut r = Report::new(name);
    r.push("direction", rec.direction).push("form", form_text(&rec.form)).push("disc", &rec.disc);
    r.push("algebra", &rec.algebra).push("verification", &rec.verification);
    for n in &rec.notes {
        r.push("note", n);
    }
    r.unknown_if(!rec.verified());
    r
}

fn corr_cmd(c: &CorrCmd, k: &FieldTower, budget: u64) -> Res<Report> {
    match c {
        CorrCmd::C0(a) => Ok(record_report("corr c0", &azumaya_from_form(&form(&a.form, k)?, budget)?)),
        CorrCmd::Normform { slots, d } => {
            let rec = form_from_azumaya(&elem(&slots.a, k)?, &elem(&slots.b, k)?, &elem(d, k)?, budget)?;
            Ok(record_report("corr normform", &rec))
        }
        CorrCmd::Isotropy(a) => {
            let q = form(&a.form, k)?;
            let v = isotropy_rank4(&q, budget)?;
            let mut r = Report::new("corr isotropy");
            r.push("form", form_text(&q));
            match &v {
                IsotropyVerdict::Isotropic { witness } => {
                    let ok = q.q(witness).is_zero();
                    r.push("verdict", "isotropic").push("witness", fmt_vec(witness)).push("q(witness) = 0", yes(ok));
                    r.unknown_if(!ok);
                }
                IsotropyVerdict::Anisotropic { certificate } => {
                    r.push("verdict", "anisotropic").push("certificate", certificate);
                }
                IsotropyVerdict::Unknown { reason } => {
                    r.push("verdict", "unknown").push("reason", reason);
                    r.status = Status::Unknown;
                }
            }
            Ok(r)
        }
        CorrCmd::DvrModel(a) => {
            let q = form(&a.form, k)?;
            let v = valuation(&a.at, k)?;
            let m = dvr_model(&q, &v)?;
            let ok = m.similarity.check(&q, &m.form);
            let mut r = Report::new("corr dvr-model");
            r.push("form", form_text(&q)).push("valuation", &v).push("model", form_text(&m.form));
            r.push("similarity", &m.similarity.matrix).push("factor", &m.similarity.factor);
            r.push("report", report_text(&m.report)).push("similarity check", yes(ok));
            r.unknown_if(!ok);
            Ok(r)
        }
        CorrCmd::Decide { form: f, other, at } => {
            let q = form(f, k)?;
            let q2 = form(other, k)?;
            let v = valuation(at, k)?;
            let iso = dvr_isometry_decide(&q, &q2, &v, budget)?;
            let mut r = Report::new("corr decide");
            r.push("form", form_text(&q)).push("other", form_text(&q2)).push("valuation", &v);
            r.push("isometric", iso.is_isometric().map_or("unknown", yes)).push("isometry transcript", &iso);
            let mut undecided = iso.is_isometric().is_none();
            if q.rank() == 4 {
                let sim = dvr_similarity_decide(&q, &q2, &v, budget)?;
                r.push("similar", sim.is_similar().map_or("unknown", yes)).push("similarity transcript", &sim);
                undecided |= sim.is_similar().is_none();
            }
            r.unknown_if(undecided);
            Ok(r)
        }
        CorrCmd::Certify { slots, d, at } => {
            let vals = at.split(',').map(|s| valuation(s, k)).collect::<Res<Vec<_>>>()?;
            let cert = local_global_certificate(&elem(&slots.a, k)?, &elem(&slots.b, k)?, &elem(d, k)?, &vals, budget)?;
            cert.verify()?;
            let mut r = Report::new("corr certify");
            r.push("certificate", &cert);
            if let Err(e) = cert.status() {
                r.push("incomplete", e);
                r.status = Status::Unknown;
            }
            Ok(r)
        }
    }
}

fn cubic_cmd(c: &CubicCmd, k: &FieldTower) -> Res<Report> {
    match c {
        CubicCmd::Extract(a) => {
            let f = CubicContainingPlane::parse(&a.cubic, k)?;
            let bf = extract_bundle(&f)?;
            let mut r = Report::new("cubic extract");
            r.push("cubic", &f).push("bundle", &bf).push("gram", bf.gram());
            r.push("reassembly matches", yes(bf.reassemble() == *f.poly()));
            Ok(r)
        }
        CubicCmd::Disc(a) => {
            let f = CubicContainingPlane::parse(&a.cubic, k)?;
            let d = discriminant_sextic(&extract_bundle(&f)?)?;
            let mut r = Report::new("cubic disc");
            r.push("cubic", &f).push("discriminant", &d);
            r.push("degree", d.total_degree().map_or("none".to_string(), |e| e.to_string()));
            Ok(r)
        }
        CubicCmd::Check(a) => {
            let f = CubicContainingPlane::parse(&a.cubic, k)?;
            let bf = extract_bundle(&f)?;
            let mut r = Report::new("cubic check");
            r.push("cubic", &f).push("discriminant", discriminant_sextic(&bf)?);
            r.push("multiplicity", multiplicity_one_check(&bf)?).push("locus", simple_degeneration_locus_check(&bf)?);
            Ok(r)
        }
    }
}
