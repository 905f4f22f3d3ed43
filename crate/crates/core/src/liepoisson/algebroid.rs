use serde::Serialize;

use crate::conventions::Conventions;
use crate::error::{Error, Result};
use crate::liepoisson::algebra::LieAlgebra;
use crate::matrix::{is_zero_vec, sub_vec, unit, Matrix};
use crate::polypoisson::{IntegrabilityStatus, PolyPoissonPoint};
use crate::scalar::{Field, Tol};

/// Local structure functions of a Lie algebroid at one base point, with their
/// first derivatives.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebroidPointData<T> {
    m: usize,
    n: usize,
    rho: Matrix<T>,
    drho: Vec<T>,
    c: Vec<T>,
    dc: Vec<T>,
    tol: Tol,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureVerdict {
    pub anchor_equation: bool,
    pub cyclic_equation: bool,
    /// `(α, β, j)` where the anchor equation fails.
    pub anchor_witness: Option<[usize; 3]>,
    /// `(α, β, γ, ν)` where the cyclic equation fails.
    pub cyclic_witness: Option<[usize; 4]>,
}

impl StructureVerdict {
    pub fn pass(&self) -> bool {
        self.anchor_equation && self.cyclic_equation
    }
}

impl<T: Field> AlgebroidPointData<T> {
    /// `rho[(i, α)] = ρⁱ_α`, `drho[(i·n+α)·m+j] = ∂ⱼρⁱ_α`,
    /// `c[(γ·n+α)·n+β] = C^γ_{αβ}`, `dc[((γ·n+α)·n+β)·m+i] = ∂ᵢC^γ_{αβ}`.
    pub fn new(rho: Matrix<T>, drho: Vec<T>, c: Vec<T>, dc: Vec<T>, tol: Tol) -> Result<Self> {
        let (m, n) = (rho.rows(), rho.cols());
        for (len, want) in [
            (drho.len(), m * n * m),
            (c.len(), n * n * n),
            (dc.len(), n * n * n * m),
        ] {
            if len != want {
                return Err(Error::DimensionMismatch {
                    expected: want,
                    found: len,
                });
            }
        }
        let d = AlgebroidPointData {
            m,
            n,
            rho,
            drho,
            c,
            dc,
            tol,
        };
        for g in 0..n {
            for a in 0..n {
                for b in a..n {
                    let bad = !(d.c(g, a, b).clone() + d.c(g, b, a).clone()).negligible(tol)
                        || (0..m).any(|i| {
                            !(d.dc(g, a, b, i).clone() + d.dc(g, b, a, i).clone()).negligible(tol)
                        });
                    if bad {
                        return Err(Error::NotAntisymmetric {
                            alpha: a,
                            beta: b,
                            gamma: g,
                        });
                    }
                }
            }
        }
        Ok(d)
    }

    /// `TQ` over `ℝᵐ`: `ρ = id`, `C = 0`.
    pub fn trivial_tangent(m: usize, tol: Tol) -> Self {
        Self::new(
            Matrix::identity(m),
            vec![T::zero(); m * m * m],
            vec![T::zero(); m * m * m],
            vec![T::zero(); m * m * m * m],
            tol,
        )
        .expect("tangent data is valid")
    }

    /// A Lie algebra as an algebroid over a point.
    pub fn over_point(g: &LieAlgebra<T>) -> Self {
        let n = g.dim();
        Self::new(
            Matrix::zeros(0, n),
            Vec::new(),
            g.constants().to_vec(),
            Vec::new(),
            g.tol(),
        )
        .expect("Lie algebra constants are antisymmetric")
    }

    /// Trivialized Atiyah data on `ℝ^{m_base} × g`: `ρ = [I | 0]` and the
    /// constants of `g` on the `g` block, constant in `q`.
    pub fn atiyah_trivial(m_base: usize, g: &LieAlgebra<T>) -> Self {
        let ng = g.dim();
        let n = m_base + ng;
        let rho = Matrix::from_fn(m_base, n, |i, a| if i == a { T::one() } else { T::zero() });
        let mut c = vec![T::zero(); n * n * n];
        for gm in 0..ng {
            for a in 0..ng {
                for b in 0..ng {
                    c[((m_base + gm) * n + m_base + a) * n + m_base + b] = g.structure(gm, a, b).clone();
                }
            }
        }
        Self::new(
            rho,
            vec![T::zero(); m_base * n * m_base],
            c,
            vec![T::zero(); n * n * n * m_base],
            g.tol(),
        )
        .expect("Atiyah data is antisymmetric")
    }

    /// Action algebroid of `so(3)` on `ℝ³`, `ρ_α(q) = e_α × q`, with bracket
    /// constants `sign·ε_{αβγ}`.
    pub fn rotation_action(q: &[T; 3], sign: i64) -> Self {
        let eps = |i: usize, j: usize, k: usize| -> i64 {
            match (i, j, k) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1,
                _ => 0,
            }
        };
        let rho = Matrix::from_fn(3, 3, |i, a| {
            let mut s = T::zero();
            for (kk, qk) in q.iter().enumerate() {
                s = s + T::from_i64(eps(i, a, kk)) * qk.clone();
            }
            s
        });
        let mut drho = vec![T::zero(); 27];
        for i in 0..3 {
            for a in 0..3 {
                for j in 0..3 {
                    drho[(i * 3 + a) * 3 + j] = T::from_i64(eps(i, a, j));
                }
            }
        }
        let mut c = vec![T::zero(); 27];
        for g in 0..3 {
            for a in 0..3 {
                for b in 0..3 {
                    c[(g * 3 + a) * 3 + b] = T::from_i64(sign * eps(a, b, g));
                }
            }
        }
        Self::new(rho, drho, c, vec![T::zero(); 81], T::default_tol()).expect("valid")
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn fiber_dim(&self) -> usize {
        self.n
    }

    pub fn tol(&self) -> Tol {
        self.tol
    }

    pub fn rho(&self, i: usize, a: usize) -> &T {
        &self.rho[(i, a)]
    }

    pub fn rho_matrix(&self) -> &Matrix<T> {
        &self.rho
    }

    pub fn drho(&self, i: usize, a: usize, j: usize) -> &T {
        &self.drho[(i * self.n + a) * self.m + j]
    }

    pub fn c(&self, g: usize, a: usize, b: usize) -> &T {
        &self.c[(g * self.n + a) * self.n + b]
    }

    pub fn dc(&self, g: usize, a: usize, b: usize, i: usize) -> &T {
        &self.dc[((g * self.n + a) * self.n + b) * self.m + i]
    }

    pub fn raw(&self) -> (&[T], &[T], &[T]) {
        (&self.drho, &self.c, &self.dc)
    }

    /// Both local structure equations at the base point.
    pub fn structure_equations_check(&self) -> StructureVerdict {
        let (m, n, tol) = (self.m, self.n, self.tol);
        let mut anchor_witness = None;
        'anchor: for a in 0..n {
            for b in (a + 1)..n {
                for j in 0..m {
                    let mut r = T::zero();
                    for i in 0..m {
                        r = r + self.rho(i, a).clone() * self.drho(j, b, i).clone()
                            - self.rho(i, b).clone() * self.drho(j, a, i).clone();
                    }
                    for g in 0..n {
                        r = r - self.rho(j, g).clone() * self.c(g, a, b).clone();
                    }
                    if !r.negligible(tol) {
                        anchor_witness = Some([a, b, j]);
                        break 'anchor;
                    }
                }
            }
        }
        let mut cyclic_witness = None;
        'cyclic: for a in 0..n {
            for b in (a + 1)..n {
                for g in (b + 1)..n {
                    for nu in 0..n {
                        let mut r = T::zero();
                        for (x, y, z) in [(a, b, g), (b, g, a), (g, a, b)] {
                            for i in 0..m {
                                r = r + self.rho(i, x).clone() * self.dc(nu, y, z, i).clone();
                            }
                            for mu in 0..n {
                                r = r + self.c(nu, x, mu).clone() * self.c(mu, y, z).clone();
                            }
                        }
                        if !r.negligible(tol) {
                            cyclic_witness = Some([a, b, g, nu]);
                            break 'cyclic;
                        }
                    }
                }
            }
        }
        StructureVerdict {
            anchor_equation: anchor_witness.is_none(),
            cyclic_equation: cyclic_witness.is_none(),
            anchor_witness,
            cyclic_witness,
        }
    }

    /// Matrix of the fiberwise linear Poisson sharp at fiber point `p`, in
    /// coordinates `(qⁱ, p_α)`. Column `i` is the image of `dqⁱ`, column
    /// `m + α` the image of `dp_α`.
    pub fn linear_poisson_sharp(&self, p: &[T]) -> Matrix<T> {
        let (m, n) = (self.m, self.n);
        assert_eq!(p.len(), n, "fiber point length");
        let mut out = Matrix::zeros(m + n, m + n);
        for i in 0..m {
            for a in 0..n {
                out[(m + a, i)] = self.rho(i, a).clone();
                out[(i, m + a)] = -self.rho(i, a).clone();
            }
        }
        for a in 0..n {
            for b in 0..n {
                let mut s = T::zero();
                for (g, pg) in p.iter().enumerate() {
                    s = s + self.c(g, a, b).clone() * pg.clone();
                }
                out[(m + b, m + a)] = -s;
            }
        }
        out
    }

    /// Base projection of `Λ♯α̃` versus `ρ` applied to the fiber part of `α̃`,
    /// for two covectors at `p₁`, `p₂`. Returns `(projections agree, anchored
    /// fiber parts agree)`; the two must coincide.
    pub fn projectability_test(&self, p1: &[T], p2: &[T], a1: &[T], a2: &[T]) -> Result<(bool, bool)> {
        let m = self.m;
        let x1 = self.linear_poisson_sharp(p1).mul_vec(a1);
        let x2 = self.linear_poisson_sharp(p2).mul_vec(a2);
        let lhs = is_zero_vec(&sub_vec(&x1[..m], &x2[..m]), self.tol);
        let r1 = self.rho.mul_vec(&a1[m..]);
        let r2 = self.rho.mul_vec(&a2[m..]);
        let rhs = is_zero_vec(&sub_vec(&r1, &r2), self.tol);
        if lhs != rhs {
            return Err(Error::Internal("projectability equivalence broken".into()));
        }
        Ok((lhs, rhs))
    }
}

/// Value and first-order jet of a vector field at the evaluation point.
#[derive(Clone, Debug, PartialEq)]
pub struct FieldJet<T> {
    pub value: Vec<T>,
    /// `jac[(r, c)] = ∂ value_r / ∂ x_c`.
    pub jac: Matrix<T>,
}

impl<T: Field> FieldJet<T> {
    pub fn bracket(&self, other: &Self) -> Vec<T> {
        sub_vec(&other.jac.mul_vec(&self.value), &self.jac.mul_vec(&other.value))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CommutatorVerdict {
    pub fibre_fibre: bool,
    pub fibre_mixed: bool,
    pub mixed_mixed: bool,
}

impl CommutatorVerdict {
    pub fn pass(&self) -> bool {
        self.fibre_fibre && self.fibre_mixed && self.mixed_mixed
    }
}

#[derive(Clone, Debug)]
pub struct WhitneyPoint<T> {
    pub point: PolyPoissonPoint<T>,
    /// `ρⁱ_β ∂/∂p^A_β`, indexed `[i][A]`.
    pub fibre_generators: Vec<Vec<FieldJet<T>>>,
    /// `ρⁱ_α ∂/∂qⁱ + C^γ_{αβ} p^B_γ ∂/∂p^B_β`, indexed `[α]`.
    pub mixed_generators: Vec<FieldJet<T>>,
    pub commutators: CommutatorVerdict,
    pub generator_rank: usize,
}

/// Coordinates `(qⁱ, p^A_α)` on the k-fold Whitney sum; `fiber[A]` is `p^A`.
pub fn whitney_point<T: Field>(
    d: &AlgebroidPointData<T>,
    fiber: &[Vec<T>],
    conventions: Conventions,
) -> Result<WhitneyPoint<T>> {
    let (m, n, tol) = (d.m, d.n, d.tol);
    let k = fiber.len();
    if k == 0 {
        return Err(Error::Invalid("need k >= 1 fiber covectors".into()));
    }
    for p in fiber {
        if p.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: p.len(),
            });
        }
    }
    let sv = d.structure_equations_check();
    if !sv.pass() {
        return Err(Error::Rejected {
            what: "algebroid data (structure equations)".into(),
            witness: format!("{:?} {:?}", sv.anchor_witness, sv.cyclic_witness),
        });
    }
    let dim = m + k * n;
    let sharps: Vec<Matrix<T>> = fiber.iter().map(|p| d.linear_poisson_sharp(p)).collect();
    let image = |covs: &[Vec<T>]| -> Result<(Vec<T>, Vec<T>)> {
        // covs[A] is α̃_A on E* at p^A in coordinates (q, p)
        let mut tuple = vec![T::zero(); k * dim];
        let mut v = vec![T::zero(); dim];
        for (a, cov) in covs.iter().enumerate() {
            let (lhs, _) = d.projectability_test(&fiber[0], &fiber[a], &covs[0], cov)?;
            if !lhs {
                return Err(Error::Internal("base components disagree".into()));
            }
            let x = sharps[a].mul_vec(cov);
            if a == 0 {
                v[..m].clone_from_slice(&x[..m]);
            }
            v[m + a * n..m + (a + 1) * n].clone_from_slice(&x[m..]);
            tuple[a * dim..a * dim + m].clone_from_slice(&cov[..m]);
            tuple[a * dim + m + a * n..a * dim + m + (a + 1) * n].clone_from_slice(&cov[m..]);
        }
        Ok((tuple, v))
    };
    let mut pairs = Vec::new();
    for a in 0..k {
        for i in 0..m {
            let covs: Vec<Vec<T>> = (0..k)
                .map(|b| if a == b { unit(m + n, i) } else { vec![T::zero(); m + n] })
                .collect();
            pairs.push(image(&covs)?);
        }
    }
    for al in 0..n {
        let covs = vec![unit(m + n, m + al); k];
        pairs.push(image(&covs)?);
    }
    let point = PolyPoissonPoint::from_generators(
        dim,
        k,
        &pairs,
        tol,
        IntegrabilityStatus::Structural,
        conventions,
    )?;
    if point.s().dim() != m * k + n {
        return Err(Error::Internal(format!(
            "rank of S is {} instead of {}",
            point.s().dim(),
            m * k + n
        )));
    }

    let pa = |a: usize, b: usize| m + a * n + b;
    let fibre_generators: Vec<Vec<FieldJet<T>>> = (0..m)
        .map(|i| {
            (0..k)
                .map(|a| {
                    let mut value = vec![T::zero(); dim];
                    let mut jac = Matrix::zeros(dim, dim);
                    for b in 0..n {
                        value[pa(a, b)] = d.rho(i, b).clone();
                        for j in 0..m {
                            jac[(pa(a, b), j)] = d.drho(i, b, j).clone();
                        }
                    }
                    FieldJet { value, jac }
                })
                .collect()
        })
        .collect();
    let mixed_generators: Vec<FieldJet<T>> = (0..n)
        .map(|al| {
            let mut value = vec![T::zero(); dim];
            let mut jac = Matrix::zeros(dim, dim);
            for i in 0..m {
                value[i] = d.rho(i, al).clone();
                for j in 0..m {
                    jac[(i, j)] = d.drho(i, al, j).clone();
                }
            }
            for (bb, p) in fiber.iter().enumerate() {
                for be in 0..n {
                    let mut s = T::zero();
                    for (g, pg) in p.iter().enumerate() {
                        s = s + d.c(g, al, be).clone() * pg.clone();
                        jac[(pa(bb, be), pa(bb, g))] = d.c(g, al, be).clone();
                    }
                    value[pa(bb, be)] = s;
                    for j in 0..m {
                        let mut t = T::zero();
                        for (g, pg) in p.iter().enumerate() {
                            t = t + d.dc(g, al, be, j).clone() * pg.clone();
                        }
                        jac[(pa(bb, be), j)] = t;
                    }
                }
            }
            FieldJet { value, jac }
        })
        .collect();

    let zero = |v: &[T]| is_zero_vec(v, tol);
    let mut fibre_fibre = true;
    let mut fibre_mixed = true;
    for i in 0..m {
        for a in 0..k {
            let y = &fibre_generators[i][a];
            for j in 0..m {
                for b in 0..k {
                    if !zero(&y.bracket(&fibre_generators[j][b])) {
                        fibre_fibre = false;
                    }
                }
            }
            for be in 0..n {
                let lhs = y.bracket(&mixed_generators[be]);
                let mut rhs = vec![T::zero(); dim];
                for j in 0..m {
                    let f = -d.drho(i, be, j).clone();
                    for (r, v) in rhs.iter_mut().zip(&fibre_generators[j][a].value) {
                        *r = r.clone() + f.clone() * v.clone();
                    }
                }
                if !zero(&sub_vec(&lhs, &rhs)) {
                    fibre_mixed = false;
                }
            }
        }
    }
    let mut mixed_mixed = true;
    for al in 0..n {
        for mu in 0..n {
            let lhs = mixed_generators[al].bracket(&mixed_generators[mu]);
            let mut rhs = vec![T::zero(); dim];
            for nu in 0..n {
                let c = d.c(nu, al, mu).clone();
                if c.is_zero() {
                    continue;
                }
                for i in 0..m {
                    rhs[i] = rhs[i].clone() + c.clone() * d.rho(i, nu).clone();
                }
                for (a, p) in fiber.iter().enumerate() {
                    for be in 0..n {
                        let mut s = T::zero();
                        for (th, pt) in p.iter().enumerate() {
                            s = s + d.c(th, be, nu).clone() * pt.clone();
                        }
                        rhs[pa(a, be)] = rhs[pa(a, be)].clone() - c.clone() * s;
                    }
                }
            }
            for (a, p) in fiber.iter().enumerate() {
                for be in 0..n {
                    let mut s = T::zero();
                    for (th, pt) in p.iter().enumerate() {
                        for i in 0..m {
                            s = s + pt.clone() * d.dc(th, al, mu, i).clone() * d.rho(i, be).clone();
                        }
                    }
                    rhs[pa(a, be)] = rhs[pa(a, be)].clone() - s;
                }
            }
            if !zero(&sub_vec(&lhs, &rhs)) {
                mixed_mixed = false;
            }
        }
    }
    let mut values: Vec<Vec<T>> = fibre_generators
        .iter()
        .flat_map(|r| r.iter().map(|j| j.value.clone()))
        .collect();
    values.extend(mixed_generators.iter().map(|j| j.value.clone()));
    let generator_rank = Matrix::from_rows(dim, &values)?.rank(tol);
    Ok(WhitneyPoint {
        point,
        fibre_generators,
        mixed_generators,
        commutators: CommutatorVerdict {
            fibre_fibre,
            fibre_mixed,
            mixed_mixed,
        },
        generator_rank,
    })
}

/// Whether `k = n` fiber covectors form a frame of the fiber dual.
pub fn is_frame<T: Field>(d: &AlgebroidPointData<T>, fiber: &[Vec<T>]) -> Result<bool> {
    if fiber.len() != d.n {
        return Err(Error::Invalid(format!(
            "frame test needs k = n = {}, got k = {}",
            d.n,
            fiber.len()
        )));
    }
    let m = Matrix::from_rows(d.n, fiber)?;
    Ok(m.rank(d.tol) == d.n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn structure_equation_examples() {
        assert!(AlgebroidPointData::<Q>::trivial_tangent(2, Tol::EXACT)
            .structure_equations_check()
            .pass());
        let so3 = LieAlgebra::<Q>::so3(Conventions::default());
        assert!(AlgebroidPointData::over_point(&so3).structure_equations_check().pass());
        let bad = LieAlgebra::<Q>::non_jacobi(Conventions::default());
        let v = AlgebroidPointData::over_point(&bad).structure_equations_check();
        assert!(v.anchor_equation && !v.cyclic_equation);
        let point = [qi(0), qi(0), qi(1)];
        assert!(AlgebroidPointData::rotation_action(&point, -1)
            .structure_equations_check()
            .pass());
        assert!(!AlgebroidPointData::rotation_action(&point, 1)
            .structure_equations_check()
            .anchor_equation);
    }

    #[test]
    fn linear_poisson_examples() {
        let t = AlgebroidPointData::<Q>::trivial_tangent(1, Tol::EXACT);
        let l = t.linear_poisson_sharp(&q(&[5]));
        assert_eq!(l.mul_vec(&q(&[1, 0])), q(&[0, 1]));
        assert_eq!(l.mul_vec(&q(&[0, 1])), q(&[-1, 0]));
        let so3 = AlgebroidPointData::over_point(&LieAlgebra::<Q>::so3(Conventions::default()));
        let lp = so3.linear_poisson_sharp(&q(&[0, 0, 1]));
        assert_eq!(lp, Matrix::from_i64(3, 3, &[0, 1, 0, -1, 0, 0, 0, 0, 0]));
        let ab = AlgebroidPointData::over_point(&LieAlgebra::<Q>::abelian(3, Conventions::default()));
        assert!(ab.linear_poisson_sharp(&q(&[1, 2, 3])).is_zero_within(Tol::EXACT));
    }

    #[test]
    fn projectability_examples() {
        let t = AlgebroidPointData::<Q>::trivial_tangent(1, Tol::EXACT);
        let p = q(&[2]);
        assert_eq!(t.projectability_test(&p, &p, &q(&[1, 3]), &q(&[1, 3])).unwrap(), (true, true));
        assert_eq!(t.projectability_test(&p, &p, &q(&[1, 3]), &q(&[7, 3])).unwrap(), (true, true));
        assert_eq!(t.projectability_test(&p, &p, &q(&[1, 3]), &q(&[1, 4])).unwrap(), (false, false));
    }

    #[test]
    fn whitney_on_tangent_data() {
        let t = AlgebroidPointData::<Q>::trivial_tangent(1, Tol::EXACT);
        let w = whitney_point(&t, &[q(&[3]), q(&[-2])], Conventions::default()).unwrap();
        assert_eq!(w.point.s().dim(), 3);
        assert!(w.point.check_axioms().pass());
        assert!(w.commutators.pass());
        assert_eq!(w.generator_rank, w.point.characteristic_distribution().dim());
    }

    #[test]
    fn whitney_on_rotation_action() {
        let d = AlgebroidPointData::<Q>::rotation_action(&[qi(0), qi(0), qi(1)], -1);
        let w = whitney_point(&d, &[q(&[1, -2, 3]), q(&[0, 1, 1])], Conventions::default()).unwrap();
        assert_eq!(w.point.s().dim(), 3 * 2 + 3);
        assert!(w.point.check_axioms().pass());
        assert!(w.commutators.pass(), "{:?}", w.commutators);
        assert_eq!(w.generator_rank, w.point.characteristic_distribution().dim());
    }

    #[test]
    fn frames() {
        let d = AlgebroidPointData::<Q>::trivial_tangent(2, Tol::EXACT);
        assert!(is_frame(&d, &[q(&[1, 0]), q(&[0, 1])]).unwrap());
        assert!(!is_frame(&d, &[q(&[1, 2]), q(&[1, 2])]).unwrap());
        assert!(is_frame(&d, &[q(&[2, 3]), q(&[1, 2])]).unwrap());
        assert!(is_frame(&d, &[q(&[1, 0])]).is_err());
    }
}
