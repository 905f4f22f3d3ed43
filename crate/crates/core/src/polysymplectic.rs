//! ℝᵏ-valued 2-forms at a point and their flat maps.
//!
//! A form is stored as `k` skew matrices with `ωᴬ(X, Y) = Xᵀ Ωᴬ Y`. Covector
//! tuples live in `ℝ^{k·m}`, component `A` occupying entries `A·m .. (A+1)·m`.

use serde::Serialize;

use crate::conventions::{Conventions, FlatConvention};
use crate::error::{Error, Result};
use crate::liepoisson::algebra::LieAlgebra;
use crate::matrix::{dot, Matrix};
use crate::scalar::{Field, Rendered, Tol};
use crate::subspaces::Subspace;

/// How closedness of the form is accounted for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Closedness {
    /// Constant coefficients: automatically closed.
    ConstantAuto,
    /// Pointwise data of a variable structure.
    Deferred,
}

#[derive(Clone, Debug)]
pub struct PolyForm<T> {
    m: usize,
    forms: Vec<Matrix<T>>,
    tol: Tol,
    conventions: Conventions,
    closedness: Closedness,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolysymplecticVerdict<T> {
    pub pass: bool,
    pub kernel_dim: usize,
    pub witness: Option<Vec<T>>,
}

impl<T: Field> PolyForm<T> {
    pub fn new(m: usize, forms: Vec<Matrix<T>>, tol: Tol, conventions: Conventions) -> Result<Self> {
        if forms.is_empty() {
            return Err(Error::Invalid("a polyform needs k >= 1 components".into()));
        }
        for (a, f) in forms.iter().enumerate() {
            if f.rows() != m || f.cols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: if f.rows() != m { f.rows() } else { f.cols() },
                });
            }
            if let Some((row, col)) = f.skew_defect(tol) {
                return Err(Error::NotSkew { index: a, row, col });
            }
        }
        Ok(PolyForm {
            m,
            forms,
            tol,
            conventions,
            closedness: Closedness::ConstantAuto,
        })
    }

    pub fn zero(m: usize, k: usize, tol: Tol, conventions: Conventions) -> Self {
        Self::new(m, vec![Matrix::zeros(m, m); k], tol, conventions).expect("zero is skew")
    }

    /// `ωᴬ = dqⁱ ∧ dpᴬᵢ` on `ℝ^{m+km}` with coordinates `(q, p¹, …, pᵏ)`.
    pub fn canonical_covelocity(m: usize, k: usize, tol: Tol, conventions: Conventions) -> Self {
        let dim = m + k * m;
        let forms = (0..k)
            .map(|a| {
                let mut w = Matrix::zeros(dim, dim);
                for i in 0..m {
                    let p = m + a * m + i;
                    w[(i, p)] = T::one();
                    w[(p, i)] = -T::one();
                }
                w
            })
            .collect();
        Self::new(dim, forms, tol, conventions).expect("canonical form is skew")
    }

    /// `ωᴬ = pr_A^* Ωᴬ` on the product of the factors.
    pub fn product_of_symplectic(factors: &[Matrix<T>], tol: Tol, conventions: Conventions) -> Result<Self> {
        let dims: Vec<usize> = factors.iter().map(|f| f.rows()).collect();
        let m: usize = dims.iter().sum();
        let mut offset = 0;
        let mut projections = Vec::new();
        for &d in &dims {
            projections.push(Matrix::from_fn(d, m, |i, j| {
                if j == offset + i {
                    T::one()
                } else {
                    T::zero()
                }
            }));
            offset += d;
        }
        Self::pullback_family(&projections, factors, tol, conventions)
    }

    /// `ωᴬ = (Tπ_A)ᵀ Ωᴬ (Tπ_A)`, accepted iff `∩ Ker Tπ_A = 0`.
    pub fn pullback_family(
        projections: &[Matrix<T>],
        factors: &[Matrix<T>],
        tol: Tol,
        conventions: Conventions,
    ) -> Result<Self> {
        if projections.len() != factors.len() || projections.is_empty() {
            return Err(Error::Invalid(
                "need one projection per symplectic factor".into(),
            ));
        }
        let m = projections[0].cols();
        let mut kernels = Vec::new();
        for (a, (p, f)) in projections.iter().zip(factors).enumerate() {
            if p.cols() != m {
                return Err(Error::DimensionMismatch {
                    expected: m,
                    found: p.cols(),
                });
            }
            if f.rows() != p.rows() || f.cols() != p.rows() {
                return Err(Error::DimensionMismatch {
                    expected: p.rows(),
                    found: f.rows(),
                });
            }
            if let Some((row, col)) = f.skew_defect(tol) {
                return Err(Error::NotSkew { index: a, row, col });
            }
            if p.rank(tol) != p.rows() {
                return Err(Error::Rejected {
                    what: format!("projection {} (not surjective)", a + 1),
                    witness: String::new(),
                });
            }
            if let Some(w) = f.kernel_basis(tol).into_iter().next() {
                return Err(Error::Degenerate {
                    what: format!("symplectic factor {}", a + 1),
                    witness: Rendered(&w).to_string(),
                });
            }
            kernels.push(Subspace::kernel(p, tol));
        }
        let common = Subspace::intersect_all(&kernels)?;
        if let Some(w) = common.basis_vecs().into_iter().next() {
            return Err(Error::Rejected {
                what: "pullback family (projections share a kernel)".into(),
                witness: Rendered(&w).to_string(),
            });
        }
        let forms = projections
            .iter()
            .zip(factors)
            .map(|(p, f)| p.transpose().mul(f).mul(p))
            .collect();
        Self::new(m, forms, tol, conventions)
    }

    /// Forms whose flat maps are the given blocks `F_A` (`flat(X)ᴬ = F_A X`).
    pub fn from_flat_blocks(blocks: Vec<Matrix<T>>, tol: Tol, conventions: Conventions) -> Result<Self> {
        let m = blocks.first().map(|b| b.cols()).unwrap_or(0);
        let c: T = conventions.flat_sign().value();
        let forms = blocks.iter().map(|f| f.transpose().scale(&c)).collect();
        Self::new(m, forms, tol, conventions)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.forms.len()
    }

    pub fn tol(&self) -> Tol {
        self.tol
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn closedness(&self) -> Closedness {
        self.closedness
    }

    pub fn with_closedness(mut self, c: Closedness) -> Self {
        self.closedness = c;
        self
    }

    pub fn with_conventions(mut self, conventions: Conventions) -> Self {
        self.conventions = conventions;
        self
    }

    pub fn forms(&self) -> &[Matrix<T>] {
        &self.forms
    }

    pub fn form(&self, a: usize) -> &Matrix<T> {
        &self.forms[a]
    }

    pub fn eval(&self, a: usize, x: &[T], y: &[T]) -> T {
        dot(x, &self.forms[a].mul_vec(y))
    }

    /// Flat map of component `A` as an `m × m` matrix.
    pub fn flat_block(&self, a: usize) -> Matrix<T> {
        match self.conventions.flat {
            FlatConvention::FirstSlot => self.forms[a].transpose(),
            FlatConvention::SecondSlot => self.forms[a].clone(),
        }
    }

    /// Stacked flat map `ℝᵐ → ℝ^{k·m}`.
    pub fn flat(&self) -> Matrix<T> {
        let mut out = Matrix::zeros(self.k() * self.m, self.m);
        for a in 0..self.k() {
            out.set_block(a * self.m, 0, &self.flat_block(a));
        }
        out
    }

    pub fn flat_apply(&self, x: &[T]) -> Vec<T> {
        self.flat().mul_vec(x)
    }

    /// `∩ Ker ωᴬ = 0`, with a kernel witness on failure.
    pub fn is_polysymplectic(&self) -> PolysymplecticVerdict<T> {
        let ker = Subspace::kernel(&self.flat(), self.tol);
        PolysymplecticVerdict {
            pass: ker.is_zero(),
            kernel_dim: ker.dim(),
            witness: ker.basis_vecs().into_iter().next(),
        }
    }

    /// Restriction to the span of `basis` rows, expressed in that basis.
    pub fn restrict(&self, basis: &Matrix<T>) -> Self {
        let forms = self
            .forms
            .iter()
            .map(|f| basis.mul(f).mul(&basis.transpose()))
            .collect();
        PolyForm {
            m: basis.rows(),
            forms,
            tol: self.tol,
            conventions: self.conventions,
            closedness: self.closedness,
        }
    }

    /// Block-diagonal sum with `other` (same `k`).
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.k() != other.k() {
            return Err(Error::DimensionMismatch {
                expected: self.k(),
                found: other.k(),
            });
        }
        let forms = self
            .forms
            .iter()
            .zip(&other.forms)
            .map(|(a, b)| Matrix::block_diag(&[a.clone(), b.clone()]))
            .collect();
        Self::new(self.m + other.m, forms, self.tol, self.conventions)
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.m == other.m
            && self.k() == other.k()
            && self
                .forms
                .iter()
                .zip(&other.forms)
                .all(|(a, b)| a.approx_eq(b, Tol(self.tol.0.max(other.tol.0))))
    }

    pub fn render(&self) -> Vec<Vec<Vec<String>>> {
        self.forms.iter().map(|f| f.render_rows()).collect()
    }
}

/// An orbit tangent space with its induced form, evaluated on the canonical
/// basis of the tangent space.
#[derive(Clone, Debug)]
pub struct OrbitForm<T> {
    pub tangent: Subspace<T>,
    /// `ξ_i` with generator image equal to the i-th tangent basis vector.
    pub preimages: Vec<Vec<T>>,
    pub form: PolyForm<T>,
}

/// Tangent space of the diagonal orbit through `μ⃗` and the forms
/// `ωᴬ(ξ·μ⃗, η·μ⃗) = −μ_A([ξ, η])`.
pub fn k_coadjoint_polyform<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>]) -> Result<OrbitForm<T>> {
    let n = g.dim();
    let k = mus.len();
    if k == 0 {
        return Err(Error::Invalid("need at least one covector".into()));
    }
    for mu in mus {
        if mu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mu.len(),
            });
        }
    }
    let tol = g.tol();
    let mut gen = Matrix::zeros(k * n, n);
    for (a, mu) in mus.iter().enumerate() {
        gen.set_block(a * n, 0, &g.generator_matrix(mu));
    }
    let tangent = Subspace::image(&gen, tol);
    let r = tangent.dim();
    let preimages = if r == 0 {
        Vec::new()
    } else {
        let rhs = tangent.basis().transpose();
        solve_any(&gen, &rhs, tol)?
    };
    for iso in gen.kernel_basis(tol) {
        for mu in mus {
            for e in 0..n {
                let v = dot(mu, &g.bracket(&iso, &crate::matrix::unit(n, e)));
                if !v.negligible(tol) {
                    return Err(Error::Internal(
                        "orbit form is not well defined modulo isotropy".into(),
                    ));
                }
            }
        }
    }
    let forms = mus
        .iter()
        .map(|mu| {
            Matrix::from_fn(r, r, |i, j| {
                -dot(mu, &g.bracket(&preimages[i], &preimages[j]))
            })
        })
        .collect();
    let form = PolyForm::new(r, forms, tol, g.conventions())?;
    if r > 0 && !form.is_polysymplectic().pass {
        return Err(Error::Internal("orbit form is degenerate".into()));
    }
    Ok(OrbitForm {
        tangent,
        preimages,
        form,
    })
}

/// Single coadjoint orbit through `ν` with its symplectic form.
pub fn coadjoint_orbit_form<T: Field>(g: &LieAlgebra<T>, nu: &[T]) -> Result<OrbitForm<T>> {
    k_coadjoint_polyform(g, &[nu.to_vec()])
}

/// One solution `x_j` of `A x_j = b_j` per column of `rhs`, choosing zero for
/// free variables.
pub(crate) fn solve_any<T: Field>(a: &Matrix<T>, rhs: &Matrix<T>, tol: Tol) -> Result<Vec<Vec<T>>> {
    let e = a.hstack(rhs).rref(tol);
    if e.pivots.iter().any(|&p| p >= a.cols()) {
        return Err(Error::IllDefined);
    }
    let mut out = Vec::with_capacity(rhs.cols());
    for j in 0..rhs.cols() {
        let mut x = vec![T::zero(); a.cols()];
        for (i, &p) in e.pivots.iter().enumerate() {
            x[p] = e.reduced[(i, a.cols() + j)].clone();
        }
        out.push(x);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn std2() -> Matrix<Q> {
        Matrix::from_i64(2, 2, &[0, 1, -1, 0])
    }

    #[test]
    fn canonical_flat_under_interior_convention() {
        let w = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, Conventions::INTERIOR);
        assert_eq!(w.flat_apply(&q(&[1, 0, 0])), q(&[0, 1, 0, 0, 0, 1]));
        assert_eq!(w.flat_apply(&q(&[0, 1, 0])), q(&[-1, 0, 0, 0, 0, 0]));
        let d = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, Conventions::COADJOINT);
        assert_eq!(d.flat_apply(&q(&[1, 0, 0])), q(&[0, -1, 0, 0, 0, -1]));
        let z = PolyForm::<Q>::zero(3, 2, Tol::EXACT, Conventions::INTERIOR);
        assert!(z.flat_apply(&q(&[1, 2, 3])).iter().all(|v| *v == qi(0)));
    }

    #[test]
    fn polysymplectic_verdicts() {
        let conv = Conventions::default();
        assert!(PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv).is_polysymplectic().pass);
        let single = PolyForm::<Q>::new(
            3,
            vec![Matrix::from_i64(3, 3, &[0, 1, 0, -1, 0, 0, 0, 0, 0])],
            Tol::EXACT,
            conv,
        )
        .unwrap();
        let v = single.is_polysymplectic();
        assert!(!v.pass);
        assert_eq!(v.witness, Some(q(&[0, 0, 1])));
        let bad = PolyForm::<Q>::new(2, vec![Matrix::from_i64(2, 2, &[0, 1, 1, 0])], Tol::EXACT, conv);
        assert!(matches!(bad, Err(Error::NotSkew { .. })));
    }

    #[test]
    fn canonical_shapes() {
        let conv = Conventions::default();
        let w = PolyForm::<Q>::canonical_covelocity(2, 3, Tol::EXACT, conv);
        assert_eq!(w.m(), 8);
        assert_eq!(w.flat().rank(Tol::EXACT), 8);
        let s = PolyForm::<Q>::canonical_covelocity(2, 1, Tol::EXACT, conv);
        let expected = Matrix::from_i64(4, 4, &[0, 0, 1, 0, 0, 0, 0, 1, -1, 0, 0, 0, 0, -1, 0, 0]);
        assert_eq!(s.form(0), &expected);
    }

    #[test]
    fn products_and_pullbacks() {
        let conv = Conventions::default();
        let p = PolyForm::product_of_symplectic(&[std2(), std2()], Tol::EXACT, conv).unwrap();
        assert_eq!(p.m(), 4);
        assert!(p.is_polysymplectic().pass);
        let one = PolyForm::product_of_symplectic(&[std2()], Tol::EXACT, conv).unwrap();
        assert_eq!(one.form(0), &std2());
        let degenerate = Matrix::<Q>::zeros(2, 2);
        assert!(matches!(
            PolyForm::product_of_symplectic(&[std2(), degenerate], Tol::EXACT, conv),
            Err(Error::Degenerate { .. })
        ));
        let pr1 = Matrix::<Q>::from_i64(2, 4, &[1, 0, 0, 0, 0, 1, 0, 0]);
        let pr2 = Matrix::<Q>::from_i64(2, 4, &[0, 0, 1, 0, 0, 0, 0, 1]);
        let pb = PolyForm::pullback_family(&[pr1.clone(), pr2], &[std2(), std2()], Tol::EXACT, conv).unwrap();
        assert!(pb.same_as(&p));
        let same = PolyForm::pullback_family(&[pr1.clone(), pr1], &[std2(), std2()], Tol::EXACT, conv);
        assert!(matches!(same, Err(Error::Rejected { .. })));
        let id = PolyForm::pullback_family(&[Matrix::identity(2)], &[std2()], Tol::EXACT, conv).unwrap();
        assert_eq!(id.form(0), &std2());
    }

    #[test]
    fn canonical_equals_pullback_of_coordinate_projections() {
        let conv = Conventions::default();
        for (m, k) in [(1, 1), (1, 3), (2, 2), (3, 2)] {
            let dim = m + k * m;
            let projections: Vec<Matrix<Q>> = (0..k)
                .map(|a| {
                    Matrix::from_fn(2 * m, dim, |i, j| {
                        let hit = if i < m { j == i } else { j == m + a * m + (i - m) };
                        if hit { qi(1) } else { qi(0) }
                    })
                })
                .collect();
            let std = PolyForm::<Q>::canonical_covelocity(m, 1, Tol::EXACT, conv).form(0).clone();
            let pb = PolyForm::pullback_family(&projections, &vec![std; k], Tol::EXACT, conv).unwrap();
            assert!(pb.same_as(&PolyForm::canonical_covelocity(m, k, Tol::EXACT, conv)));
        }
    }

    #[test]
    fn orbit_forms() {
        for conv in [Conventions::INTERIOR, Conventions::COADJOINT] {
            let so3 = LieAlgebra::<Q>::so3(conv);
            let o = coadjoint_orbit_form(&so3, &q(&[0, 0, 1])).unwrap();
            assert_eq!(o.tangent, Subspace::span(3, &[q(&[1, 0, 0]), q(&[0, 1, 0])], Tol::EXACT).unwrap());
            // ε₁ is the generator image of ±e₂ and ε₂ of ∓e₁; the value on
            // (e₁-gen, e₂-gen) is −ε₃([e₁,e₂]) = −1.
            let x1 = so3.coad(&q(&[1, 0, 0]), &q(&[0, 0, 1]));
            let x2 = so3.coad(&q(&[0, 1, 0]), &q(&[0, 0, 1]));
            let c1 = o.tangent.coordinates(&x1).unwrap();
            let c2 = o.tangent.coordinates(&x2).unwrap();
            assert_eq!(dot(&c1, &o.form.form(0).mul_vec(&c2)), qi(-1));
            let h = coadjoint_orbit_form(&LieAlgebra::<Q>::heisenberg3(conv), &q(&[1, 0, 0])).unwrap();
            assert_eq!(h.tangent.dim(), 0);
            assert_eq!(h.form.m(), 0);
            assert_eq!(coadjoint_orbit_form(&so3, &q(&[0, 0, 0])).unwrap().tangent.dim(), 0);
        }
    }

    #[test]
    fn k_orbit_dimensions() {
        let so3 = LieAlgebra::<Q>::so3(Conventions::default());
        let a = k_coadjoint_polyform(&so3, &[q(&[0, 0, 1]), q(&[1, 0, 0])]).unwrap();
        assert_eq!(a.tangent.dim(), 3);
        let b = k_coadjoint_polyform(&so3, &[q(&[0, 0, 1]), q(&[0, 0, 1])]).unwrap();
        assert_eq!(b.tangent.dim(), 2);
        let ab = LieAlgebra::<Q>::abelian(3, Conventions::default());
        assert_eq!(k_coadjoint_polyform(&ab, &[q(&[1, 2, 3]), q(&[0, 1, 0])]).unwrap().tangent.dim(), 0);
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::scalar::{qi, Q};
    use proptest::prelude::*;

    fn skew_family() -> impl Strategy<Value = (usize, Vec<Vec<i64>>)> {
        (1usize..=5, 1usize..=3).prop_flat_map(|(m, k)| (Just(m), prop::collection::vec(prop::collection::vec(-2i64..=2, m * m), k)))
    }

    fn family(m: usize, raw: &[Vec<i64>]) -> PolyForm<Q> {
        let forms = raw
            .iter()
            .map(|e| {
                let a = Matrix::from_fn(m, m, |i, j| qi(e[i * m + j]));
                a.sub(&a.transpose())
            })
            .collect();
        PolyForm::new(m, forms, Tol::EXACT, Conventions::default()).unwrap()
    }

    fn algebras() -> Vec<LieAlgebra<Q>> {
        let conv = Conventions::default();
        vec![LieAlgebra::so3(conv), LieAlgebra::heisenberg3(conv), LieAlgebra::sl2(conv), LieAlgebra::abelian(3, conv)]
    }

    proptest! {
        #[test]
        fn flat_vanishes_on_the_diagonal((m, raw) in skew_family(), x in prop::collection::vec(-4i64..=4, 5)) {
            let w = family(m, &raw);
            let x: Vec<Q> = x[..m].iter().map(|&v| qi(v)).collect();
            for a in 0..w.k() {
                prop_assert_eq!(w.eval(a, &x, &x), qi(0));
            }
        }

        #[test]
        fn nondegeneracy_is_injectivity_of_flat((m, raw) in skew_family()) {
            let w = family(m, &raw);
            prop_assert_eq!(w.is_polysymplectic().pass, w.flat().rank(Tol::EXACT) == m);
        }

        #[test]
        fn orbit_form_is_minus_nu_of_bracket(which in 0usize..4, nu in prop::collection::vec(-3i64..=3, 3), x in prop::collection::vec(-3i64..=3, 3), y in prop::collection::vec(-3i64..=3, 3)) {
            let g = &algebras()[which];
            let nu: Vec<Q> = nu.iter().map(|&v| qi(v)).collect();
            let (x, y): (Vec<Q>, Vec<Q>) = (x.iter().map(|&v| qi(v)).collect(), y.iter().map(|&v| qi(v)).collect());
            let orbit = coadjoint_orbit_form(g, &nu).unwrap();
            prop_assert!(orbit.form.m() == 0 || orbit.form.is_polysymplectic().pass);
            let gen = g.generator_matrix(&nu);
            let cx = orbit.tangent.coordinates(&gen.mul_vec(&x)).unwrap();
            let cy = orbit.tangent.coordinates(&gen.mul_vec(&y)).unwrap();
            let want = -dot(&nu, &g.bracket(&x, &y));
            let got = if orbit.form.m() == 0 { qi(0) } else { orbit.form.eval(0, &cx, &cy) };
            prop_assert_eq!(got, want);
        }
    }
}
