//! Pointwise k-poly-Poisson data `(S, Λ♯)` and its constructions.
//!
//! `S` is a subspace of covector tuples in `ℝ^{k·m}` and `Λ♯` is stored as an
//! `m × dim S` matrix acting on coordinates in the canonical basis of `S`.
//! Pairings `ᾱ(Λ♯β̄)` are ℝᵏ-valued, so every pairing check runs per component.

use serde::Serialize;

use crate::conventions::{Conventions, Relation};
use crate::error::{Error, Result};
use crate::matrix::{dot, Matrix};
use crate::polysymplectic::{solve_any, PolyForm};
use crate::scalar::{Field, Rendered, Tol};
use crate::subspaces::{map_from_generators, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IntegrabilityStatus {
    VerifiedExact,
    Structural,
    Unverified,
}

#[derive(Clone, Debug)]
pub struct PolyPoissonPoint<T> {
    m: usize,
    k: usize,
    s: Subspace<T>,
    sharp: Matrix<T>,
    status: IntegrabilityStatus,
    conventions: Conventions,
}

/// Outcome of the pointwise axioms with witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct AxiomVerdict<T> {
    pub axiom_i: bool,
    pub antisymmetry: bool,
    pub axiom_ii: bool,
    /// Covector tuple with `ᾱ(Λ♯ᾱ) ≠ 0`.
    pub witness_i: Option<Vec<T>>,
    /// `(A, i, j)` where `P^A` fails to be skew.
    pub witness_antisymmetry: Option<(usize, usize, usize)>,
    /// Covector pairing to zero with all of `S` but outside `Ker Λ♯`.
    pub witness_ii: Option<Vec<T>>,
}

impl<T> AxiomVerdict<T> {
    pub fn pass(&self) -> bool {
        self.axiom_i && self.antisymmetry && self.axiom_ii
    }
}

fn component<T: Field>(tuple: &[T], a: usize, m: usize) -> &[T] {
    &tuple[a * m..(a + 1) * m]
}

/// `P^A_{ij} = (b_i)_A(Λ♯ b_j)` over the canonical basis of `s`.
pub fn pairing_matrices<T: Field>(m: usize, k: usize, s: &Subspace<T>, sharp: &Matrix<T>) -> Vec<Matrix<T>> {
    let basis = s.basis_vecs();
    let images = sharp.col_vecs();
    (0..k)
        .map(|a| {
            Matrix::from_fn(basis.len(), basis.len(), |i, j| {
                dot(component(&basis[i], a, m), &images[j])
            })
        })
        .collect()
}

/// Axioms i, ii and the antisymmetry of every pairing component.
pub fn check_axioms<T: Field>(m: usize, k: usize, s: &Subspace<T>, sharp: &Matrix<T>) -> AxiomVerdict<T> {
    let tol = s.tol();
    let p = pairing_matrices(m, k, s, sharp);
    let d = s.dim();
    // ᾱ(Λ♯ᾱ) is the quadratic form of P^A, so a failure shows up either on a
    // basis vector or on a sum of two.
    let basis = s.basis_vecs();
    let mut witness_i = None;
    'outer: for pa in &p {
        for i in 0..d {
            if !pa[(i, i)].negligible(tol) {
                witness_i = Some(basis[i].clone());
                break 'outer;
            }
        }
        for i in 0..d {
            for j in (i + 1)..d {
                if !(pa[(i, j)].clone() + pa[(j, i)].clone()).negligible(tol) {
                    witness_i = Some(crate::matrix::add_vec(&basis[i], &basis[j]));
                    break 'outer;
                }
            }
        }
    }
    let mut witness_antisymmetry = None;
    for (a, pa) in p.iter().enumerate() {
        if let Some((i, j)) = pa.skew_defect(tol) {
            witness_antisymmetry = Some((a, i, j));
            break;
        }
    }
    let mut stacked = Matrix::zeros(0, d);
    for pa in &p {
        stacked = stacked.vstack(&pa.transpose());
    }
    let null_pairing = Subspace::kernel(&stacked, tol);
    let ker_sharp = Subspace::kernel(sharp, tol);
    let witness_ii = null_pairing
        .escape_witness(&ker_sharp)
        .map(|c| s.combine(&c));
    AxiomVerdict {
        axiom_i: witness_i.is_none(),
        antisymmetry: witness_antisymmetry.is_none(),
        axiom_ii: witness_ii.is_none(),
        witness_i,
        witness_antisymmetry,
        witness_ii,
    }
}

impl<T: Field> PolyPoissonPoint<T> {
    /// Validated constructor: fails unless the pointwise axioms hold.
    pub fn new(
        m: usize,
        k: usize,
        s: Subspace<T>,
        sharp: Matrix<T>,
        status: IntegrabilityStatus,
        conventions: Conventions,
    ) -> Result<Self> {
        let pp = Self::deferred(m, k, s, sharp, status, conventions)?;
        let v = pp.check_axioms();
        if !v.pass() {
            let w = v
                .witness_i
                .clone()
                .or(v.witness_ii.clone())
                .map(|w| Rendered(&w).to_string())
                .unwrap_or_else(|| format!("{:?}", v.witness_antisymmetry));
            return Err(Error::Rejected {
                what: "poly-Poisson axioms".into(),
                witness: w,
            });
        }
        Ok(pp)
    }

    /// Constructor that only checks shapes; axioms are left to the caller.
    pub fn deferred(
        m: usize,
        k: usize,
        s: Subspace<T>,
        sharp: Matrix<T>,
        status: IntegrabilityStatus,
        conventions: Conventions,
    ) -> Result<Self> {
        if s.ambient() != k * m {
            return Err(Error::DimensionMismatch {
                expected: k * m,
                found: s.ambient(),
            });
        }
        if sharp.rows() != m || sharp.cols() != s.dim() {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: sharp.rows(),
            });
        }
        Ok(PolyPoissonPoint {
            m,
            k,
            s,
            sharp,
            status,
            conventions,
        })
    }

    /// `S = span` of the tuples and `Λ♯` determined by the pairs.
    pub fn from_generators(
        m: usize,
        k: usize,
        pairs: &[(Vec<T>, Vec<T>)],
        tol: Tol,
        status: IntegrabilityStatus,
        conventions: Conventions,
    ) -> Result<Self> {
        let covectors: Vec<Vec<T>> = pairs.iter().map(|(a, _)| a.clone()).collect();
        let s = Subspace::span(k * m, &covectors, tol)?;
        let sharp = map_from_generators(&s, pairs, m)?;
        Self::deferred(m, k, s, sharp, status, conventions)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn s(&self) -> &Subspace<T> {
        &self.s
    }

    pub fn sharp(&self) -> &Matrix<T> {
        &self.sharp
    }

    pub fn status(&self) -> IntegrabilityStatus {
        self.status
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn tol(&self) -> Tol {
        self.s.tol()
    }

    pub fn with_status(mut self, status: IntegrabilityStatus) -> Self {
        self.status = status;
        self
    }

    /// `Λ♯ᾱ`, or `None` when `ᾱ ∉ S`.
    pub fn apply(&self, alpha: &[T]) -> Option<Vec<T>> {
        self.s.coordinates(alpha).map(|c| self.sharp.mul_vec(&c))
    }

    pub fn pairing(&self) -> Vec<Matrix<T>> {
        pairing_matrices(self.m, self.k, &self.s, &self.sharp)
    }

    pub fn check_axioms(&self) -> AxiomVerdict<T> {
        check_axioms(self.m, self.k, &self.s, &self.sharp)
    }

    /// `Ker Λ♯` as a subspace of covector tuples.
    pub fn kernel(&self) -> Subspace<T> {
        let ker = Subspace::kernel(&self.sharp, self.tol());
        let vecs: Vec<Vec<T>> = ker.basis_vecs().iter().map(|c| self.s.combine(c)).collect();
        Subspace::span(self.k * self.m, &vecs, self.tol()).expect("tuple length")
    }

    /// `Λ♯(S)`.
    pub fn characteristic_distribution(&self) -> Subspace<T> {
        Subspace::image(&self.sharp, self.tol())
    }

    /// Induced polysymplectic form on `Λ♯(S)`, fixed by `ω_L♭(Λ♯ᾱ) = ι*ᾱ`.
    pub fn leaf_form(&self) -> Result<LeafForm<T>> {
        let v = self.check_axioms();
        if !v.pass() {
            return Err(Error::Rejected {
                what: "leaf form of data violating the axioms".into(),
                witness: v
                    .witness_i
                    .or(v.witness_ii)
                    .map(|w| Rendered(&w).to_string())
                    .unwrap_or_default(),
            });
        }
        let tol = self.tol();
        let tangent = self.characteristic_distribution();
        let r = tangent.dim();
        let preimages: Vec<Vec<T>> = if r == 0 {
            Vec::new()
        } else {
            solve_any(&self.sharp, &tangent.basis().transpose(), tol)?
                .iter()
                .map(|c| self.s.combine(c))
                .collect()
        };
        let basis = tangent.basis_vecs();
        let c: T = self.conventions.flat_sign().value();
        let forms = (0..self.k)
            .map(|a| {
                Matrix::from_fn(r, r, |i, j| {
                    c.clone() * dot(component(&preimages[i], a, self.m), &basis[j])
                })
            })
            .collect();
        let form = PolyForm::new(r, forms, tol, self.conventions)?;
        if r > 0 && !form.is_polysymplectic().pass {
            return Err(Error::Internal("leaf form is degenerate".into()));
        }
        Ok(LeafForm {
            tangent,
            preimages,
            form,
        })
    }

    /// `(S, −Λ♯)`.
    pub fn negated(&self) -> Self {
        PolyPoissonPoint {
            sharp: self.sharp.neg(),
            ..self.clone()
        }
    }

    /// Reorders tangent coordinates: new coordinate `i` is old coordinate
    /// `perm[i]`. Covector components are reordered the same way.
    pub fn permute_coordinates(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.m {
            return Err(Error::DimensionMismatch {
                expected: self.m,
                found: perm.len(),
            });
        }
        let pv = |v: &[T]| -> Vec<T> { perm.iter().map(|&o| v[o].clone()).collect() };
        let pairs: Vec<(Vec<T>, Vec<T>)> = self
            .s
            .basis_vecs()
            .iter()
            .zip(self.sharp.col_vecs())
            .map(|(alpha, x)| {
                let mut t = Vec::with_capacity(self.k * self.m);
                for a in 0..self.k {
                    t.extend(pv(component(alpha, a, self.m)));
                }
                (t, pv(&x))
            })
            .collect();
        Self::from_generators(self.m, self.k, &pairs, self.tol(), self.status, self.conventions)
    }

    /// Relation of the sharp maps when both share `S`; `None` otherwise.
    pub fn relation_to(&self, other: &Self) -> Option<Relation> {
        if self.m != other.m || self.k != other.k || !self.s.same_as(&other.s) {
            return None;
        }
        Some(Relation::of(
            &self.sharp,
            &other.sharp,
            Tol(self.tol().0.max(other.tol().0)),
        ))
    }

    pub fn same_as(&self, other: &Self) -> bool {
        matches!(self.relation_to(other), Some(Relation::Equal | Relation::Both))
    }
}

/// Leaf tangent space with the induced form on its canonical basis.
#[derive(Clone, Debug)]
pub struct LeafForm<T> {
    pub tangent: Subspace<T>,
    /// Covector tuples `ᾱ_i` with `Λ♯ᾱ_i` the i-th tangent basis vector.
    pub preimages: Vec<Vec<T>>,
    pub form: PolyForm<T>,
}

/// `S = Im ω♭` and `Λ♯ = (ω♭)⁻¹`.
pub fn from_polysymplectic<T: Field>(omega: &PolyForm<T>) -> Result<PolyPoissonPoint<T>> {
    let v = omega.is_polysymplectic();
    if !v.pass {
        return Err(Error::Degenerate {
            what: "polyform".into(),
            witness: v.witness.map(|w| Rendered(&w).to_string()).unwrap_or_default(),
        });
    }
    let flat = omega.flat();
    let m = omega.m();
    let pairs: Vec<(Vec<T>, Vec<T>)> = (0..m)
        .map(|i| (flat.col(i), crate::matrix::unit(m, i)))
        .collect();
    let pp = PolyPoissonPoint::from_generators(
        m,
        omega.k(),
        &pairs,
        omega.tol(),
        IntegrabilityStatus::Structural,
        omega.conventions(),
    )?;
    Ok(pp)
}

/// `D⊥ = ∩_A (ωᴬ♭)⁻¹(D°)`.
pub fn polysymplectic_orthogonal<T: Field>(omega: &PolyForm<T>, d: &Subspace<T>) -> Result<Subspace<T>> {
    let ann = d.annihilator();
    let parts: Result<Vec<_>> = (0..omega.k())
        .map(|a| Subspace::preimage(&omega.flat_block(a), &ann))
        .collect();
    Subspace::intersect_all(&parts?)
}

#[derive(Clone, Debug)]
pub struct DiracPoint<T> {
    pub point: PolyPoissonPoint<T>,
    pub d_perp: Subspace<T>,
}

/// Dirac-type structure of a subspace `D` with `D ∩ D⊥ = 0`.
pub fn dirac_type<T: Field>(omega: &PolyForm<T>, d: &Subspace<T>) -> Result<DiracPoint<T>> {
    let (m, k, tol) = (omega.m(), omega.k(), omega.tol());
    if d.ambient() != m {
        return Err(Error::DimensionMismatch {
            expected: m,
            found: d.ambient(),
        });
    }
    let v = omega.is_polysymplectic();
    if !v.pass {
        return Err(Error::Degenerate {
            what: "polyform".into(),
            witness: v.witness.map(|w| Rendered(&w).to_string()).unwrap_or_default(),
        });
    }
    let d_perp = polysymplectic_orthogonal(omega, d)?;
    let meet = d.intersect(&d_perp)?;
    if let Some(w) = meet.basis_vecs().into_iter().next() {
        return Err(Error::Rejected {
            what: "D (meets its polysymplectic orthogonal)".into(),
            witness: Rendered(&w).to_string(),
        });
    }
    let bd = d.basis().clone();
    let restrict = Matrix::block_diag(&vec![bd.clone(); k]);
    let on_d = restrict.mul(&omega.flat()).mul(&bd.transpose());
    let target = Subspace::image(&on_d, tol);
    let s = Subspace::preimage(&restrict, &target)?;
    let sharp = if s.dim() == 0 {
        Matrix::zeros(m, 0)
    } else if d.dim() == 0 {
        Matrix::zeros(m, s.dim())
    } else {
        let rhs = restrict.mul(&s.basis().transpose());
        bd.transpose().mul(&on_d.solve(&rhs, tol)?)
    };
    let point = PolyPoissonPoint::deferred(
        m,
        k,
        s,
        sharp,
        IntegrabilityStatus::Structural,
        omega.conventions(),
    )?;
    Ok(DiracPoint { point, d_perp })
}

#[derive(Clone, Debug)]
pub struct FoliatedPoint<T> {
    pub point: PolyPoissonPoint<T>,
    /// Leaf components agree with `c·α̃_A(Λ_A♯β̃_A)` on the leaf basis.
    pub leaf_forms_match: bool,
}

/// Poly-Poisson data from projections `Tπ_A`, Poisson bivectors `Λ_A` at
/// `π_A(p)` and a candidate leaf tangent `F_p`.
pub fn foliated_construction<T: Field>(
    projections: &[Matrix<T>],
    sharps: &[Matrix<T>],
    f: &Subspace<T>,
    conventions: Conventions,
) -> Result<FoliatedPoint<T>> {
    let k = projections.len();
    if k == 0 || sharps.len() != k {
        return Err(Error::Invalid("need one Poisson bivector per projection".into()));
    }
    let m = f.ambient();
    let tol = f.tol();
    let mut kernels = Vec::new();
    for (a, (p, l)) in projections.iter().zip(sharps).enumerate() {
        if p.cols() != m || l.rows() != p.rows() || l.cols() != p.rows() {
            return Err(Error::DimensionMismatch {
                expected: p.rows(),
                found: l.rows(),
            });
        }
        if let Some((row, col)) = l.skew_defect(tol) {
            return Err(Error::NotSkew { index: a, row, col });
        }
        if p.rank(tol) != p.rows() {
            return Err(Error::Rejected {
                what: format!("projection {} (not surjective)", a + 1),
                witness: String::new(),
            });
        }
        let pushed = f.map(p)?;
        let leaf = Subspace::image(l, tol);
        if !pushed.same_as(&leaf) {
            let w = pushed
                .escape_witness(&leaf)
                .or_else(|| leaf.escape_witness(&pushed))
                .unwrap_or_default();
            return Err(Error::Rejected {
                what: format!("compatibility of F with leaf {}", a + 1),
                witness: Rendered(&w).to_string(),
            });
        }
        kernels.push(Subspace::kernel(p, tol));
    }
    let joint = Subspace::intersect_all(&kernels)?.intersect(f)?;
    if let Some(w) = joint.basis_vecs().into_iter().next() {
        return Err(Error::Rejected {
            what: "F meets the joint kernel of the projections".into(),
            witness: Rendered(&w).to_string(),
        });
    }
    let dims: Vec<usize> = projections.iter().map(|p| p.rows()).collect();
    let total: usize = dims.iter().sum();
    let r = f.dim();
    let bf = f.basis().transpose();
    let mut constraint = Matrix::zeros(total, r + total);
    let mut row = 0;
    let mut col = r;
    for (p, l) in projections.iter().zip(sharps) {
        constraint.set_block(row, 0, &p.mul(&bf));
        constraint.set_block(row, col, &l.neg());
        row += p.rows();
        col += p.rows();
    }
    let mut pairs = Vec::new();
    for sol in constraint.kernel_basis(tol) {
        let u = bf.mul_vec(&sol[..r]);
        let mut tuple = Vec::with_capacity(k * m);
        let mut off = r;
        for p in projections {
            let alpha = &sol[off..off + p.rows()];
            tuple.extend(p.transpose().mul_vec(alpha));
            off += p.rows();
        }
        pairs.push((tuple, u));
    }
    let point = PolyPoissonPoint::from_generators(
        m,
        k,
        &pairs,
        tol,
        IntegrabilityStatus::Structural,
        conventions,
    )?;
    let leaf = point.leaf_form()?;
    let c: T = conventions.flat_sign().value();
    let mut leaf_forms_match = true;
    for (a, (p, l)) in projections.iter().zip(sharps).enumerate() {
        let pt = p.transpose();
        let tilde: Vec<Vec<T>> = leaf
            .preimages
            .iter()
            .map(|t| {
                let rhs = Matrix::from_cols(m, &[component(t, a, m).to_vec()]).expect("column");
                pt.solve(&rhs, tol).map(|x| x.col(0))
            })
            .collect::<Result<_>>()?;
        let lf = leaf.form.form(a);
        for i in 0..leaf.tangent.dim() {
            for j in 0..leaf.tangent.dim() {
                let expected = c.clone() * dot(&tilde[i], &l.mul_vec(&tilde[j]));
                if !(lf[(i, j)].clone() - expected).negligible(tol) {
                    leaf_forms_match = false;
                }
            }
        }
    }
    Ok(FoliatedPoint {
        point,
        leaf_forms_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn from_canonical_covelocity() {
        let conv = Conventions::default();
        let w = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv);
        let pp = from_polysymplectic(&w).unwrap();
        assert_eq!(pp.s().dim(), 3);
        assert!(pp.check_axioms().pass());
        assert!(pp.characteristic_distribution().is_full());
        let expected = Subspace::span(
            6,
            &[q(&[1, 0, 0, 0, 0, 0]), q(&[0, 0, 0, 1, 0, 0]), q(&[0, 1, 0, 0, 0, 1])],
            Tol::EXACT,
        )
        .unwrap();
        assert_eq!(pp.s(), &expected);
        for x in [q(&[1, 0, 0]), q(&[2, -3, 5])] {
            assert_eq!(pp.apply(&w.flat_apply(&x)).unwrap(), x);
        }
        assert!(pp.kernel().is_zero());
        let leaf = pp.leaf_form().unwrap();
        assert!(leaf.form.same_as(&w));
    }

    #[test]
    fn axiom_examples() {
        let conv = Conventions::default();
        let s = Subspace::span(2, &[q(&[1, 0]), q(&[0, 1])], Tol::EXACT).unwrap();
        let zero = Matrix::zeros(1, 2);
        assert!(check_axioms(1, 2, &s, &zero).pass());
        let line = Subspace::span(2, &[q(&[1, 0])], Tol::EXACT).unwrap();
        let bad = Matrix::from_i64(1, 1, &[1]);
        let v = check_axioms(1, 2, &line, &bad);
        assert!(!v.axiom_i);
        assert_eq!(v.witness_i, Some(q(&[1, 0])));
        assert!(PolyPoissonPoint::new(1, 2, line, bad, IntegrabilityStatus::Unverified, conv).is_err());
    }

    #[test]
    fn antisymmetry_failure_is_detected() {
        // sharp(dq) = ∂p, sharp(dp) = 0
        let s = Subspace::<Q>::full(2, Tol::EXACT);
        let sharp = Matrix::from_i64(2, 2, &[0, 0, 1, 0]);
        let v = check_axioms(2, 1, &s, &sharp);
        assert!(!v.antisymmetry);
        let sharp2 = Matrix::from_i64(2, 2, &[0, 0, 0, 0]);
        assert!(check_axioms(2, 1, &s, &sharp2).pass());
    }

    #[test]
    fn dirac_r4_example() {
        for (conv, sign) in [(Conventions::COADJOINT, -1), (Conventions::INTERIOR, 1)] {
            let w = PolyForm::<Q>::canonical_covelocity(2, 1, Tol::EXACT, conv);
            // coordinates (q¹, q², p₁, p₂)
            let d = Subspace::span(4, &[q(&[1, 0, 0, 0]), q(&[0, 0, 1, 0])], Tol::EXACT).unwrap();
            let out = dirac_type(&w, &d).unwrap();
            assert_eq!(
                out.d_perp,
                Subspace::span(4, &[q(&[0, 1, 0, 0]), q(&[0, 0, 0, 1])], Tol::EXACT).unwrap()
            );
            assert!(out.point.s().is_full());
            assert_eq!(out.point.apply(&q(&[0, 0, 1, 0])).unwrap(), q(&[sign, 0, 0, 0]));
            assert_eq!(out.point.apply(&q(&[0, 1, 0, 0])).unwrap(), q(&[0, 0, 0, 0]));
            assert_eq!(out.point.characteristic_distribution(), d);
            assert!(out.point.check_axioms().pass());
        }
    }

    #[test]
    fn dirac_full_and_lagrangian() {
        let conv = Conventions::default();
        let w = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv);
        let out = dirac_type(&w, &Subspace::full(3, Tol::EXACT)).unwrap();
        let direct = from_polysymplectic(&w).unwrap();
        assert!(out.point.same_as(&direct));
        let s2 = PolyForm::<Q>::canonical_covelocity(1, 1, Tol::EXACT, conv);
        let line = Subspace::span(2, &[q(&[1, 1])], Tol::EXACT).unwrap();
        assert!(matches!(dirac_type(&s2, &line), Err(Error::Rejected { .. })));
    }

    fn lie_poisson_so3_at_e3() -> Matrix<Q> {
        Matrix::from_i64(3, 3, &[0, -1, 0, 1, 0, 0, 0, 0, 0])
    }

    #[test]
    fn product_of_lie_poisson() {
        let conv = Conventions::default();
        let pr1 = Matrix::<Q>::from_fn(3, 6, |i, j| if i == j { qi(1) } else { qi(0) });
        let pr2 = Matrix::<Q>::from_fn(3, 6, |i, j| if j == i + 3 { qi(1) } else { qi(0) });
        let l = lie_poisson_so3_at_e3();
        let f = Subspace::span(
            6,
            &[q(&[1, 0, 0, 0, 0, 0]), q(&[0, 1, 0, 0, 0, 0]), q(&[0, 0, 0, 1, 0, 0]), q(&[0, 0, 0, 0, 1, 0])],
            Tol::EXACT,
        )
        .unwrap();
        let out = foliated_construction(&[pr1.clone(), pr2.clone()], &[l.clone(), l.clone()], &f, conv).unwrap();
        assert!(out.point.check_axioms().pass());
        assert_eq!(out.point.characteristic_distribution().dim(), 4);
        assert!(out.leaf_forms_match);
        let a1 = q(&[1, 2, 3]);
        let a2 = q(&[-1, 0, 4]);
        let mut tuple = pr1.transpose().mul_vec(&a1);
        tuple.extend(pr2.transpose().mul_vec(&a2));
        let mut expected = l.mul_vec(&a1);
        expected.extend(l.mul_vec(&a2));
        assert_eq!(out.point.apply(&tuple).unwrap(), expected);
    }

    #[test]
    fn foliated_single_factor_recovers_poisson() {
        let conv = Conventions::default();
        let l = lie_poisson_so3_at_e3();
        let f = Subspace::image(&l, Tol::EXACT);
        let out = foliated_construction(&[Matrix::identity(3)], &[l.clone()], &f, conv).unwrap();
        assert!(out.point.s().is_full());
        assert_eq!(out.point.sharp(), &l);
        let bad_f = Subspace::span(3, &[q(&[0, 0, 1])], Tol::EXACT).unwrap();
        assert!(foliated_construction(&[Matrix::identity(3)], &[l], &bad_f, conv).is_err());
    }

    #[test]
    fn permutation_round_trip() {
        let w = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, Conventions::default());
        let pp = from_polysymplectic(&w).unwrap();
        let p = pp.permute_coordinates(&[2, 0, 1]).unwrap();
        let back = p.permute_coordinates(&[1, 2, 0]).unwrap();
        assert!(back.same_as(&pp));
        assert!(p.check_axioms().pass());
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::sampling::Sampler;
    use crate::scalar::Q;
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn pairing_is_skew_and_kernel_identity_holds(seed in any::<u64>()) {
            let omega: PolyForm<Q> = Sampler::new(seed).polyform(6, 3, Tol::EXACT, Conventions::default());
            let pp = from_polysymplectic(&omega).unwrap();
            for p in pp.pairing() {
                prop_assert!(p.add(&p.transpose()).is_zero_within(Tol::EXACT));
            }
            let ann = pp.characteristic_distribution().annihilator().power(pp.k());
            prop_assert_eq!(pp.kernel(), ann.intersect(pp.s()).unwrap());
        }

        #[test]
        fn axioms_survive_negation(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (omega, d): (PolyForm<Q>, _) = s.dirac_pair(6, 3, Tol::EXACT, Conventions::default());
            let pp = dirac_type(&omega, &d).unwrap().point;
            prop_assert!(pp.check_axioms().pass());
            prop_assert!(pp.negated().check_axioms().pass());
            let (m, k) = (s.usize(1, 4), s.usize(1, 3));
            let sub = s.subspace::<Q>(k * m, Tol::EXACT);
            let sharp = s.matrix::<Q>(m, sub.dim(), 2);
            let raw = PolyPoissonPoint::deferred(m, k, sub, sharp, IntegrabilityStatus::Unverified, Conventions::default()).unwrap();
            prop_assert_eq!(raw.check_axioms().pass(), raw.negated().check_axioms().pass());
        }

        #[test]
        fn dirac_rank_identity(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (omega, d): (PolyForm<Q>, _) = s.dirac_pair(6, 3, Tol::EXACT, Conventions::default());
            let pp = dirac_type(&omega, &d).unwrap().point;
            let (m, r, k) = (omega.m(), d.dim(), omega.k());
            prop_assert_eq!(pp.s().dim(), r + (m - r) * k);
            prop_assert!(pp.characteristic_distribution().same_as(&d));
        }

        #[test]
        fn leaf_form_ignores_kernel_perturbations(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let (omega, d): (PolyForm<Q>, _) = s.dirac_pair(6, 3, Tol::EXACT, Conventions::default());
            let pp = dirac_type(&omega, &d).unwrap().point;
            let leaf = pp.leaf_form().unwrap();
            let ker = pp.kernel();
            let basis = leaf.tangent.basis_vecs();
            let c: Q = pp.conventions().flat_sign().value();
            for (i, pre) in leaf.preimages.iter().enumerate() {
                let shift = ker.combine(&s.int_vector::<Q>(ker.dim(), 3));
                let moved = crate::matrix::add_vec(pre, &shift);
                prop_assert_eq!(pp.apply(&moved), pp.apply(pre));
                for (j, b) in basis.iter().enumerate() {
                    for a in 0..pp.k() {
                        let v = c.clone() * dot(component(&moved, a, pp.m()), b);
                        prop_assert_eq!(&v, &leaf.form.form(a)[(i, j)]);
                    }
                }
            }
        }
    }
}
