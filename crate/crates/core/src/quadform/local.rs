//! Forms over a discrete valuation ring, described by a [`Valuation`] on the
//! fraction field and its residue field. Statements about the completion are
//! decided from residue data only.

use std::fmt;

use super::{diagonalize, orthogonalize, QuadForm};
use crate::error::{Error, Result};
use crate::field::enumerate::first_elements;
use crate::field::valuation::Valuation;
use crate::field::{Elem, FieldTower};
use crate::linalg::Matrix;
use crate::places::decide_isotropic;
use crate::search::{find_isotropic, find_representation};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Regular,
    Simple(i64),
    NotSimple,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Regular => write!(f, "regular"),
            Verdict::Simple(e) => write!(f, "simple({})", e),
            Verdict::NotSimple => write!(f, "not-simple"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DegenerationReport {
    pub valuation: Valuation,
    pub radical_rank: usize,
    /// `v(det G)`; `None` when the determinant vanishes.
    pub multiplicity: Option<i64>,
    pub verdict: Verdict,
}

fn check_integral(q: &QuadForm, v: &Valuation) -> Result<()> {
    if q.field() != v.field() {
        return Err(Error::DimensionMismatch(format!("form over {}, valuation on {}", q.field(), v.field())));
    }
    let n = q.rank();
    for i in 0..n {
        for j in 0..n {
            if !v.is_integral(q.gram().get(i, j)) {
                return Err(Error::NonIntegralEntries);
            }
        }
    }
    Ok(())
}

pub(crate) fn residue_matrix(m: &Matrix<Elem>, v: &Valuation) -> Result<Matrix<Elem>> {
    let rows = (0..m.rows())
        .map(|i| (0..m.cols()).map(|j| v.residue(m.get(i, j))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(rows))
}

pub fn degeneration_report(q: &QuadForm, v: &Valuation) -> Result<DegenerationReport> {
    check_integral(q, v)?;
    let radical_rank = q.rank() - residue_matrix(q.gram(), v)?.rank();
    let multiplicity = v.value(&q.det());
    let verdict = match (radical_rank, multiplicity) {
        (0, _) => Verdict::Regular,
        (1, Some(e)) => Verdict::Simple(e),
        _ => Verdict::NotSimple,
    };
    Ok(DegenerationReport { valuation: v.clone(), radical_rank, multiplicity, verdict })
}

#[derive(Clone, Debug)]
pub struct LocalDiagonalization {
    /// Coefficients `u_1..u_{n-1}`, all `v`-units.
    pub units: Vec<Elem>,
    /// The last coefficient `u_n π^e`.
    pub top: Elem,
    pub multiplicity: i64,
    /// Integral basis change with unit determinant; columns are the new basis.
    pub basis: Matrix<Elem>,
}

impl LocalDiagonalization {
    pub fn coeffs(&self) -> Vec<Elem> {
        let mut c = self.units.clone();
        c.push(self.top.clone());
        c
    }

    pub fn form(&self) -> QuadForm {
        QuadForm::diag(&self.coeffs())
    }
}

/// `q ≅ ⟨u_1,…,u_{n−1}, u_n π^e⟩` over the valuation ring.
pub fn diagonalize_local(q: &QuadForm, v: &Valuation) -> Result<LocalDiagonalization> {
    let report = degeneration_report(q, v)?;
    let e = match report.verdict {
        Verdict::NotSimple if report.radical_rank == 1 => return Err(Error::DegenerateForm),
        Verdict::NotSimple => return Err(Error::NotSimpleDegeneration),
        Verdict::Regular => 0,
        Verdict::Simple(e) => e,
    };
    let (mut coeffs, basis) = orthogonalize(q, |x: &Elem| v.is_unit(x))?;
    let top = coeffs.pop().unwrap();
    debug_assert_eq!(v.value(&top), Some(e));
    Ok(LocalDiagonalization { units: coeffs, top, multiplicity: e, basis })
}

#[derive(Clone, Debug)]
pub struct RepresentationResult {
    /// Whether `q` represents `u` over the completion.
    pub represented: bool,
    /// An exact integral witness over the fraction field, `q(w) = u`.
    pub witness: Option<Vec<Elem>>,
    /// An integral vector with `q(w) ≡ u` modulo the maximal ideal.
    pub residue_witness: Option<Vec<Elem>>,
    pub reason: String,
}

/// Whether `q` (simply degenerate or regular at `v`) represents the unit `u`
/// over the completed valuation ring: exactly when the unit part of the residue
/// form represents the residue of `u` (isotropic residue forms are universal).
pub fn represents_local(q: &QuadForm, u: &Elem, v: &Valuation, budget: u64) -> Result<RepresentationResult> {
    if !v.is_unit(u) {
        return Err(Error::PreconditionViolation(format!("{} is not a unit at {}", u, v)));
    }
    let ld = diagonalize_local(q, v)?;
    let unit_part: Vec<Elem> = if ld.multiplicity == 0 { ld.coeffs() } else { ld.units.clone() };
    let kappa = v.residue_field()?;
    let bar: Vec<Elem> = unit_part.iter().map(|a| v.residue(a)).collect::<Result<_>>()?;
    let ubar = v.residue(u)?;
    let mut with_target = bar.clone();
    with_target.push(-&ubar);

    let residue_sol = if bar.is_empty() {
        None
    } else {
        find_representation(&bar, &ubar, residue_budget(&kappa, bar.len(), budget))?
    };
    let decided = match decide_isotropic(&with_target)? {
        Some(b) => b,
        None if residue_sol.is_some() => true,
        None => {
            return Err(Error::UnsupportedDomain(format!(
                "isotropy over the residue field {} is undecided within budget",
                kappa
            )))
        }
    };
    if !decided {
        return Ok(RepresentationResult {
            represented: false,
            witness: None,
            residue_witness: None,
            reason: format!("residue form {} does not represent {} over {}", fmt_diag(&bar), ubar, kappa),
        });
    }
    let Some(xbar) = residue_sol else {
        return Ok(RepresentationResult {
            represented: true,
            witness: None,
            residue_witness: None,
            reason: "residue form represents the residue; no residue vector found within budget".into(),
        });
    };
    let n = q.rank();
    let t = q.field().clone();
    let mut lifted = vec![t.zero(); n];
    for (i, x) in xbar.iter().enumerate() {
        lifted[i] = v.lift(x)?;
    }
    let residue_witness = ld.basis.mul_vec(&lifted);
    let coeffs = ld.coeffs();
    let exact = hensel_exact(&coeffs, &lifted, &xbar, u, v, budget)?;
    let witness = exact.map(|x| ld.basis.mul_vec(&x));
    if let Some(w) = &witness {
        if q.q(w) != *u || w.iter().any(|x| !v.is_integral(x)) {
            return Err(Error::InvalidWitness("representation witness failed re-check".into()));
        }
    }
    let reason = if witness.is_some() {
        "exact integral witness".to_string()
    } else {
        "residue witness lifts by Hensel's lemma in the completion".to_string()
    };
    Ok(RepresentationResult { represented: true, witness, residue_witness: Some(residue_witness), reason })
}

fn residue_budget(kappa: &FieldTower, n: usize, budget: u64) -> u64 {
    match kappa.order() {
        Some(q) => q.saturating_pow(n as u32).max(budget),
        None => budget,
    }
}

fn fmt_diag(c: &[Elem]) -> String {
    format!("<{}>", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}

/// Looks for an exact integral solution of `Σ a_j x_j² = u` over the fraction
/// field that reduces to the residue solution: one coordinate with a unit
/// partial derivative is solved by a square root, the others are perturbed by
/// multiples of the uniformizer.
fn hensel_exact(
    coeffs: &[Elem],
    lifted: &[Elem],
    xbar: &[Elem],
    u: &Elem,
    v: &Valuation,
    budget: u64,
) -> Result<Option<Vec<Elem>>> {
    let Some(i) = xbar.iter().position(|x| !x.is_zero()) else {
        return Ok(None);
    };
    let t = u.tower().clone();
    let pi = v.uniformizer();
    let n = coeffs.len();
    let others: Vec<usize> = (0..n).filter(|&j| j != i).collect();
    let integral: Vec<Elem> = first_elements(&t, 64).into_iter().filter(|x| v.is_integral(x)).collect();
    let per_axis =
        ((budget.max(1) as f64).powf(1.0 / others.len().max(1) as f64).ceil() as usize).clamp(1, integral.len());
    let mut idx = vec![0usize; others.len()];
    let mut tried = 0u64;
    loop {
        let mut x = lifted.to_vec();
        for (k, &j) in others.iter().enumerate() {
            let y = &integral[idx[k]];
            // coordinates outside the residue form are unconstrained mod π
            x[j] = if j < xbar.len() { &lifted[j] + &(&pi * y) } else { y.clone() };
        }
        let rest = others.iter().fold(t.zero(), |acc, &j| &acc + &(&coeffs[j] * &x[j].square()));
        let rhs = (u - &rest).checked_div(&coeffs[i])?;
        if let Some(r) = rhs.sqrt()? {
            if v.is_integral(&r) {
                x[i] = r;
                return Ok(Some(x));
            }
        }
        tried += 1;
        if tried >= budget {
            return Ok(None);
        }
        let mut k = 0;
        while k < idx.len() {
            idx[k] += 1;
            if idx[k] < per_axis {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
        if k == idx.len() {
            return Ok(None);
        }
    }
}

/// Isotropy over the completion at `v` via the first and second residue
/// forms of a diagonalization.
pub fn isotropic_complete(q: &QuadForm, v: &Valuation, budget: u64) -> Result<bool> {
    let d = diagonalize(q)?;
    if d.coeffs.iter().any(|a| a.is_zero()) {
        return Ok(true);
    }
    let kappa = v.residue_field()?;
    let mut first = Vec::new();
    let mut second = Vec::new();
    for a in &d.coeffs {
        let u = v.residue(&v.unit_part(a)?)?;
        if v.value(a).unwrap().rem_euclid(2) == 0 {
            first.push(u);
        } else {
            second.push(u);
        }
    }
    for part in [&first, &second] {
        if part.len() < 2 {
            continue;
        }
        let iso = match decide_isotropic(part)? {
            Some(b) => b,
            None => match find_isotropic(part, residue_budget(&kappa, part.len(), budget))? {
                Some(_) => true,
                None if kappa.is_finite() => false,
                None => return Err(Error::BudgetExhausted),
            },
        };
        if iso {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5t() -> FieldTower {
        FieldTower::function(&FieldTower::prime(5).unwrap(), "t").unwrap()
    }

    fn at_t(k: &FieldTower) -> Valuation {
        Valuation::from_element(k, &k.gen()).unwrap()
    }

    #[test]
    fn report_examples() {
        let k = f5t();
        let t = k.gen();
        let v = at_t(&k);
        let one = k.one();
        let r = degeneration_report(&QuadForm::diag(&[one.clone(), t.clone(), t.clone()]), &v).unwrap();
        assert_eq!((r.radical_rank, r.verdict), (2, Verdict::NotSimple));
        let r = degeneration_report(&QuadForm::diag(&[one.clone(), one.clone(), one.clone(), t.clone()]), &v).unwrap();
        assert_eq!(r.verdict, Verdict::Simple(1));
        let r =
            degeneration_report(&QuadForm::diag(&[one.clone(), one.clone(), one.clone(), one.clone()]), &v).unwrap();
        assert_eq!(r.verdict, Verdict::Regular);
        let bad = QuadForm::diag(&[one.clone(), t.try_inv().unwrap()]);
        assert_eq!(degeneration_report(&bad, &v).unwrap_err(), Error::NonIntegralEntries);
    }

    #[test]
    fn local_diagonalization_examples() {
        let k = f5t();
        let t = k.gen();
        let v = at_t(&k);
        let one = k.one();
        let ld = diagonalize_local(&QuadForm::diag(&[one.clone(), one.clone(), t.clone()]), &v).unwrap();
        assert_eq!((ld.units.clone(), ld.top.clone(), ld.multiplicity), (vec![one.clone(), one.clone()], t.clone(), 1));
        let t3 = t.pow(3).unwrap();
        let ld = diagonalize_local(&QuadForm::diag(&[one.clone(), one.clone(), t3]), &v).unwrap();
        assert_eq!(ld.multiplicity, 3);

        // [[t+1,1],[1,2]] ⊥ <t>: the 2x2 block has unit determinant 2t+1
        let g = Matrix::from_rows(vec![
            vec![&t + &one, one.clone(), k.zero()],
            vec![one.clone(), k.from_int(2), k.zero()],
            vec![k.zero(), k.zero(), t.double()],
        ]);
        let q = QuadForm::from_gram(g).unwrap();
        let ld = diagonalize_local(&q, &v).unwrap();
        assert!(ld.units.iter().all(|x| v.is_unit(x)));
        assert_eq!(v.value(&ld.top), Some(1));
        assert!(v.is_unit(&ld.basis.det()));
        assert_eq!(q.pullback(&ld.basis), ld.form());

        // [[t+1,1],[1,1]] ⊥ <t> reduces to rank 1 at t = 0: two-dimensional radical
        let g = Matrix::from_rows(vec![
            vec![&t + &one, one.clone(), k.zero()],
            vec![one.clone(), one.clone(), k.zero()],
            vec![k.zero(), k.zero(), t.double()],
        ]);
        let q = QuadForm::from_gram(g).unwrap();
        assert_eq!(diagonalize_local(&q, &v).unwrap_err(), Error::NotSimpleDegeneration);
    }

    #[test]
    fn representation_examples() {
        let k = f5t();
        let t = k.gen();
        let v = at_t(&k);
        let one = k.one();
        let r = represents_local(&QuadForm::diag(&[one.clone(), t.clone()]), &one, &v, 100).unwrap();
        assert!(r.represented);
        assert_eq!(r.witness, Some(vec![one.clone(), k.zero()]));

        let q = QuadForm::diag(&[one.clone(), -&one, t.clone()]);
        for u in 1..5 {
            let r = represents_local(&q, &k.from_int(u), &v, 100).unwrap();
            assert!(r.represented && r.witness.is_some());
        }

        // over Q at 5: 3x^2 + 5y^2 = 2 has the solution (1/2, 1/2)
        let qq = FieldTower::rationals();
        let v5 = Valuation::padic(&qq, 5).unwrap();
        let q = QuadForm::diag_ints(&qq, &[3, 5]);
        let r = represents_local(&q, &qq.from_int(2), &v5, 1000).unwrap();
        assert!(r.represented);
        assert_eq!(q.q(r.witness.as_ref().unwrap()), qq.from_int(2));
        let r = represents_local(&q, &qq.one(), &v5, 1000).unwrap();
        assert!(!r.represented);
    }

    #[test]
    fn complete_isotropy_examples() {
        let qq = FieldTower::rationals();
        let v7 = Valuation::padic(&qq, 7).unwrap();
        assert!(isotropic_complete(&QuadForm::diag_ints(&qq, &[1, 1, 1, 1]), &v7, 100).unwrap());
        assert!(isotropic_complete(&QuadForm::diag_ints(&qq, &[1, -1, 3]), &v7, 100).unwrap());
        // <1, 1, 7, 7> at 7: both residue forms <1,1> are anisotropic over F_7
        assert!(!isotropic_complete(&QuadForm::diag_ints(&qq, &[1, 1, 7, 7]), &v7, 100).unwrap());
        let k = f5t();
        let v = at_t(&k);
        let q = QuadForm::diag(&[k.one(), k.one(), k.gen()]);
        assert!(isotropic_complete(&q, &v, 100).unwrap());
    }
}
