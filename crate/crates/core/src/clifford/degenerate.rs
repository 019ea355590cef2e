//! The degenerate fiber `q = ⟨1,−1,1,0⟩`: `C₀(q) ≅ M₂(k[ε])`, the unipotent
//! radical acting through `I + ε·sl₂`, and the Lie algebra maps `α`, `β`.

use super::{c0_functor, even_clifford, even_clifford_diag, AlgebraMap, EvenCliffordAlgebra};
use crate::error::{Error, Result};
use crate::field::{Elem, FieldTower};
use crate::linalg::Matrix;
use crate::quadform::{QuadForm, Similarity};

fn m2(rows: [[i64; 2]; 2], t: &FieldTower) -> Matrix<Elem> {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| t.from_int(x)).collect()).collect())
}

/// `½[[a, −b+c], [b+c, −a]]`, the common shape of `α`, `β` and the unipotent image.
fn sl2_shape(a: &Elem, b: &Elem, c: &Elem) -> Matrix<Elem> {
    Matrix::from_rows(vec![vec![a.half(), (c - b).half()], vec![(b + c).half(), (-a).half()]])
}

fn dual_coords(m: &Matrix<Elem>) -> Vec<Elem> {
    m.to_rows()
        .into_iter()
        .flatten()
        .flat_map(|x| {
            let (a, b) = x.coords().expect("dual number");
            [a, b]
        })
        .collect()
}

#[derive(Clone, PartialEq, Debug)]
pub struct DegenerateIso {
    pub algebra: EvenCliffordAlgebra,
    pub ring: FieldTower,
    /// Image of each basis element of `C₀`, in basis order.
    pub images: Vec<Matrix<Elem>>,
    /// `e14 = ε e23`, `e24 = ε e13`, `e34 = ε e12` hold in `C₀` with `ε = e1234`.
    pub displayed_relations: bool,
}

impl DegenerateIso {
    pub fn apply(&self, x: &[Elem]) -> Matrix<Elem> {
        let r = &self.ring;
        let mut out = Matrix::zeros(2, 2, &r.zero());
        for (c, m) in x.iter().zip(&self.images) {
            if !c.is_zero() {
                out = out.add(&m.scale(&r.embed(c)));
            }
        }
        out
    }

    /// Exhaustive multiplicativity and `k`-linear bijectivity.
    pub fn verify(&self) -> bool {
        let c = &self.algebra;
        let d = c.dim();
        let coords: Vec<Vec<Elem>> = self.images.iter().map(dual_coords).collect();
        if Matrix::from_cols(&coords).rank() != d {
            return false;
        }
        (0..d).all(|i| {
            (0..d)
                .all(|j| self.apply(&c.mul(&c.basis_elem(i), &c.basis_elem(j))) == self.images[i].mul(&self.images[j]))
        })
    }
}

/// `1, e12, e23, e13 ↦ I, [[0,1],[1,0]], [[1,0],[0,−1]], [[0,1],[−1,0]]`,
/// extended `ε`-linearly with `e1234 ↦ εI`.
pub fn degenerate_c0_iso(k: &FieldTower) -> Result<DegenerateIso> {
    if !k.is_field() {
        return Err(Error::UnsupportedDomain(format!("{} is not a field", k)));
    }
    let c = even_clifford_diag(&[k.one(), k.from_int(-1), k.one(), k.zero()])?;
    let r = FieldTower::dual(k)?;
    let eps = r.eps();
    let id = m2([[1, 0], [0, 1]], &r);
    let x12 = m2([[0, 1], [1, 0]], &r);
    let x23 = m2([[1, 0], [0, -1]], &r);
    let x13 = m2([[0, 1], [-1, 0]], &r);
    // basis order: 1, e12, e13, e14, e23, e24, e34, e1234
    let images = vec![
        id.clone(),
        x12.clone(),
        x13.clone(),
        x23.scale(&eps),
        x23,
        x13.scale(&eps),
        x12.scale(&eps),
        id.scale(&eps),
    ];
    let e = |i: usize| c.basis_elem(i);
    let top = e(7);
    let displayed_relations = e(3) == c.mul(&top, &e(4)) && e(5) == c.mul(&top, &e(2)) && e(6) == c.mul(&top, &e(1));
    let iso = DegenerateIso { algebra: c, ring: r, images, displayed_relations };
    if !iso.verify() {
        return Err(Error::ContractViolation);
    }
    Ok(iso)
}

#[derive(Clone, PartialEq, Debug)]
pub struct UnipotentAction {
    /// Identity with last row `(a, b, c, 1)`.
    pub phi: Matrix<Elem>,
    /// `I − ½ε[[a, −b+c], [b+c, −a]]` over `k[ε]`.
    pub sigma: Matrix<Elem>,
    pub c0: AlgebraMap,
    /// The three displayed formulas for `C₀(φ)` on `e12`, `e23`, `e13`.
    pub displayed_equations: bool,
    /// `ψ ∘ C₀(φ) = ad(σ) ∘ ψ` on every basis element.
    pub adjoint_matches: bool,
    /// `C₀(φ) = ad(1 − ½ε(c e12 + a e23 − b e13))` inside `C₀`.
    pub clifford_adjoint_matches: bool,
}

impl UnipotentAction {
    pub fn holds(&self) -> bool {
        self.displayed_equations && self.adjoint_matches && self.clifford_adjoint_matches
    }
}

pub fn unipotent_action(a: &Elem, b: &Elem, c: &Elem) -> Result<UnipotentAction> {
    let k = a.tower().clone();
    let iso = degenerate_c0_iso(&k)?;
    let q = QuadForm::diag(&[k.one(), k.from_int(-1), k.one(), k.zero()]);
    let mut phi = Matrix::identity(4, &k.one());
    phi.set(3, 0, a.clone());
    phi.set(3, 1, b.clone());
    phi.set(3, 2, c.clone());
    let c0 = c0_functor(&Similarity::isometry(phi.clone()), &q, &q)?;
    let cl = &iso.algebra;
    let e = |i: usize| cl.basis_elem(i);
    let (e12, e13, e23, eps) = (e(1), e(2), e(4), e(7));
    let eps_times = |x: &[Elem], s: &Elem| cl.scale(&cl.mul(&eps, x), s);
    let displayed_equations = c0.apply(&e12) == cl.add(&cl.add(&e12, &eps_times(&e23, b)), &eps_times(&e13, &-a))
        && c0.apply(&e23) == cl.add(&cl.add(&e23, &eps_times(&e13, c)), &eps_times(&e12, &-b))
        && c0.apply(&e13) == cl.add(&cl.add(&e13, &eps_times(&e23, c)), &eps_times(&e12, &-a));

    let r = &iso.ring;
    let m = sl2_shape(&r.embed(a), &r.embed(b), &r.embed(c)).scale(&r.from_int(2));
    let id = Matrix::identity(2, &r.one());
    let half_eps = r.eps().half();
    let sigma = id.sub(&m.scale(&half_eps));
    let sigma_inv = id.add(&m.scale(&half_eps));
    let adjoint_matches =
        (0..cl.dim()).all(|i| iso.apply(&c0.apply(&e(i))) == sigma.mul(&iso.images[i]).mul(&sigma_inv));

    let n = cl.add(&cl.add(&cl.scale(&e12, c), &cl.scale(&e23, a)), &cl.scale(&e13, &-b));
    let half_n = cl.mul(&eps, &cl.scale(&n, &k.from_int(2).try_inv().unwrap()));
    let h = cl.add(&cl.one(), &cl.scale(&half_n, &k.from_int(-1)));
    let h_inv = cl.add(&cl.one(), &half_n);
    let clifford_adjoint_matches = (0..cl.dim()).all(|i| c0.apply(&e(i)) == cl.mul(&cl.mul(&h, &e(i)), &h_inv));

    Ok(UnipotentAction { phi, sigma, c0, displayed_equations, adjoint_matches, clifford_adjoint_matches })
}

/// `α(A) = ½[[a, −b+c], [b+c, −a]]` for `A = [[0,a,−b],[a,0,c],[b,c,0]] ∈ so(q₁)`.
pub fn alpha_map(a: &Matrix<Elem>) -> Matrix<Elem> {
    sl2_shape(a.get(0, 1), a.get(2, 0), a.get(1, 2))
}

/// `β(w) = ½[[w₁, −w₂+w₃], [w₂+w₃, −w₁]]`.
pub fn beta_map(w: &[Elem]) -> Matrix<Elem> {
    sl2_shape(&w[0], &w[1], &w[2])
}

#[derive(Clone, PartialEq, Debug)]
pub struct LieMapCheck {
    /// `(I − εβ(xw))(I − α(xA)) = I − x(α(A) + εβ(w))` over `k[ε,x]/(ε²,x²)`.
    pub product_identity: bool,
    /// `[[I+xA,0],[xw,1]]` factors both ways over `k[x]/(x²)` and is orthogonal.
    pub block_decomposition: bool,
    /// `α` and `β` are linear isomorphisms onto trace-zero matrices.
    pub isomorphisms: bool,
    /// `D(A) = ½[[−c, a+b], [a−b, c]]`, with `C₀(I + xA) = ad(I − xD(A))` on
    /// `C₀(q₁)` in the matrix model of `degenerate_c0_iso`.
    pub differential: Matrix<Elem>,
    pub differential_verified: bool,
    /// Whether the displayed `α` coincides with `D`; it does not in general,
    /// the two differ by a linear automorphism of `sl₂`.
    pub alpha_is_differential: bool,
}

impl LieMapCheck {
    pub fn holds(&self) -> bool {
        self.product_identity && self.block_decomposition && self.isomorphisms && self.differential_verified
    }
}

pub fn lie_map_check(a: &Matrix<Elem>, w: &[Elem]) -> Result<LieMapCheck> {
    if a.rows() != 3 || a.cols() != 3 || w.len() != 3 {
        return Err(Error::DimensionMismatch("A must be 3x3 and w a 3-vector".into()));
    }
    let k = a.get(0, 0).tower().clone();
    let q1 = Matrix::diag(&[k.one(), k.from_int(-1), k.one()]);
    let aq = a.mul(&q1);
    if aq.add(&aq.transpose()) != Matrix::zeros(3, 3, &k.zero()) {
        return Err(Error::NotInLieAlgebra);
    }
    let rx = FieldTower::dual(&k)?;
    let rxe = FieldTower::dual(&rx)?;
    let x = rxe.embed(&rx.eps());
    let eps = rxe.eps();
    let up = |m: &Matrix<Elem>| m.map(|c| rxe.coerce(c).unwrap());
    let id2 = Matrix::identity(2, &rxe.one());
    let al = up(&alpha_map(a));
    let be = up(&beta_map(w));
    let lhs = id2.sub(&be.scale(&(&eps * &x))).mul(&id2.sub(&al.scale(&x)));
    let rhs = id2.sub(&al.add(&be.scale(&eps)).scale(&x));
    let product_identity = lhs == rhs;

    let xr = rx.eps();
    let a_r = a.map(|c| rx.embed(c));
    let mut block = Matrix::identity(4, &rx.one());
    let mut left = Matrix::identity(4, &rx.one());
    let mut right = Matrix::identity(4, &rx.one());
    for i in 0..3 {
        for j in 0..3 {
            let v = &(if i == j { rx.one() } else { rx.zero() }) + &(&xr * a_r.get(i, j));
            block.set(i, j, v.clone());
            left.set(i, j, v);
        }
        let xw = &xr * &rx.embed(&w[i]);
        block.set(3, i, xw.clone());
        right.set(3, i, xw);
    }
    let q = QuadForm::diag(&[rx.one(), rx.from_int(-1), rx.one(), rx.zero()]);
    let block_decomposition =
        left.mul(&right) == block && right.mul(&left) == block && Similarity::isometry(block.clone()).check(&q, &q);

    let basis3: Vec<Vec<Elem>> =
        (0..3).map(|i| (0..3).map(|j| if i == j { k.one() } else { k.zero() }).collect()).collect();
    let flat = |m: &Matrix<Elem>| m.to_rows().into_iter().flatten().collect::<Vec<_>>();
    let trace_free = |m: &Matrix<Elem>| (m.get(0, 0) + m.get(1, 1)).is_zero();
    let a_basis: Vec<Matrix<Elem>> = basis3
        .iter()
        .map(|v| {
            let (p, r, s) = (&v[0], &v[1], &v[2]);
            Matrix::from_rows(vec![
                vec![k.zero(), p.clone(), -r],
                vec![p.clone(), k.zero(), s.clone()],
                vec![r.clone(), s.clone(), k.zero()],
            ])
        })
        .collect();
    let alpha_imgs: Vec<Matrix<Elem>> = a_basis.iter().map(alpha_map).collect();
    let beta_imgs: Vec<Matrix<Elem>> = basis3.iter().map(|v| beta_map(v)).collect();
    let isomorphisms = [&alpha_imgs, &beta_imgs].iter().all(|imgs| {
        imgs.iter().all(trace_free) && Matrix::from_cols(&imgs.iter().map(flat).collect::<Vec<_>>()).rank() == 3
    });

    // C₀(q₁) over k[x] has basis 1, e12, e13, e23
    let q1r = QuadForm::diag(&[rx.one(), rx.from_int(-1), rx.one()]);
    let c1 = even_clifford(&q1r)?;
    let c0 = c0_functor(&Similarity::isometry(left.submatrix(&[0, 1, 2], &[0, 1, 2])), &q1r, &q1r)?;
    let model =
        [m2([[1, 0], [0, 1]], &rx), m2([[0, 1], [1, 0]], &rx), m2([[0, 1], [-1, 0]], &rx), m2([[1, 0], [0, -1]], &rx)];
    let to_model =
        |v: &[Elem]| v.iter().zip(&model).fold(Matrix::zeros(2, 2, &rx.zero()), |acc, (c, m)| acc.add(&m.scale(c)));
    let (pa, pb, pc) = (a.get(0, 1), a.get(2, 0), a.get(1, 2));
    let differential = Matrix::from_rows(vec![vec![(-pc).half(), (pa + pb).half()], vec![(pa - pb).half(), pc.half()]]);
    let id_r = Matrix::identity(2, &rx.one());
    let adjoint_by = |d: &Matrix<Elem>| {
        let xd = d.map(|c| rx.embed(c)).scale(&xr);
        let (g, g_inv) = (id_r.sub(&xd), id_r.add(&xd));
        (0..c1.dim()).all(|i| {
            let e = c1.basis_elem(i);
            to_model(&c0.apply(&e)) == g.mul(&to_model(&e)).mul(&g_inv)
        })
    };
    let differential_verified = adjoint_by(&differential);
    let alpha_is_differential = alpha_map(a) == differential;

    Ok(LieMapCheck {
        product_identity,
        block_decomposition,
        isomorphisms,
        differential,
        differential_verified,
        alpha_is_differential,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degenerate_iso_displayed_values() {
        let k = FieldTower::prime(7).unwrap();
        let iso = degenerate_c0_iso(&k).unwrap();
        assert!(iso.displayed_relations);
        let r = &iso.ring;
        assert_eq!(iso.images[1], m2([[0, 1], [1, 0]], r));
        assert_eq!(iso.images[7], Matrix::identity(2, &r.one()).scale(&r.eps()));
        let e23 = iso.algebra.basis_elem(4);
        assert_eq!(iso.apply(&iso.algebra.mul(&e23, &e23)), Matrix::identity(2, &r.one()));
    }

    #[test]
    fn unipotent_examples() {
        let k = FieldTower::prime(7).unwrap();
        let z = k.zero();
        let u = unipotent_action(&z, &z, &z).unwrap();
        assert!(u.holds());
        assert_eq!(u.phi, Matrix::identity(4, &k.one()));
        let u = unipotent_action(&k.one(), &z, &z).unwrap();
        assert!(u.holds());
        let u = unipotent_action(&k.from_int(2), &k.from_int(3), &k.from_int(5)).unwrap();
        assert!(u.holds(), "{:?}", (u.displayed_equations, u.adjoint_matches, u.clifford_adjoint_matches));
    }

    #[test]
    fn lie_map_examples() {
        let k = FieldTower::prime(11).unwrap();
        let zero = Matrix::zeros(3, 3, &k.zero());
        let r = lie_map_check(&zero, &[k.zero(), k.zero(), k.zero()]).unwrap();
        assert!(r.holds(), "{:?}", r);
        let (a, b, c) = (k.from_int(2), k.from_int(3), k.from_int(4));
        let m = Matrix::from_rows(vec![
            vec![k.zero(), a.clone(), -&b],
            vec![a.clone(), k.zero(), c.clone()],
            vec![b.clone(), c.clone(), k.zero()],
        ]);
        assert_eq!(alpha_map(&m), sl2_shape(&a, &b, &c));
        let r = lie_map_check(&m, &[k.one(), k.from_int(5), k.from_int(7)]).unwrap();
        assert!(r.holds(), "{:?}", r);
        assert!(!r.alpha_is_differential);
        assert_eq!(
            lie_map_check(&Matrix::identity(3, &k.one()), &[k.zero(), k.zero(), k.zero()]).unwrap_err(),
            Error::NotInLieAlgebra
        );
    }
}
