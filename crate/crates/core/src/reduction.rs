//! Pointwise polysymplectic reduction by a vertical subspace `W`.
//!
//! The quotient `V/W` is identified with the coordinates left free by the
//! echelon form of `W` (see [`Subspace::quotient`]). The reduced covelocity
//! space is pulled back into `V` through the transpose of the projection.
//! Invariance of the data under the symmetry is assumed by the generic entry
//! points and built in by the worked examples.

use serde::Serialize;

use crate::conventions::{Conventions, Relation};
use crate::error::{Error, Result};
use crate::liepoisson::algebra::LieAlgebra;
use crate::liepoisson::algebroid::{is_frame, whitney_point, AlgebroidPointData};
use crate::liepoisson::gstar::diagonal_tuple;
use crate::matrix::{unit, Matrix};
use crate::polypoisson::{polysymplectic_orthogonal, IntegrabilityStatus, PolyPoissonPoint};
use crate::polysymplectic::PolyForm;
use crate::scalar::{Field, Rendered};
use crate::subspaces::{Quotient, Subspace};

/// Limitation stated alongside every hypothesis report.
pub const SUBBUNDLE_PROXY_NOTE: &str =
    "hypothesis i is checked as constant dimension over the supplied sample points";

#[derive(Clone, Debug)]
pub struct ReductionProblem<T> {
    pub omega: PolyForm<T>,
    pub w: Subspace<T>,
    pub samples: Vec<(PolyForm<T>, Subspace<T>)>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisVerdict<T> {
    pub hyp_i: bool,
    /// `dim(S ∩ (W°)ᵏ)` at the base point followed by each sample.
    pub dims: Vec<usize>,
    pub offending_sample: Option<usize>,
    pub hyp_ii: bool,
    /// `None` for the base point, `Some(j)` for sample `j`.
    pub hyp_ii_location: Option<Option<usize>>,
    pub witness_ii: Option<Vec<T>>,
}

impl<T> HypothesisVerdict<T> {
    pub fn pass(&self) -> bool {
        self.hyp_i && self.hyp_ii
    }
}

#[derive(Clone, Debug)]
pub struct ReducedStructure<T> {
    pub quotient: Quotient<T>,
    pub point: PolyPoissonPoint<T>,
    /// `Q(W⊥)`.
    pub projected_orthogonal: Subspace<T>,
    /// `Im Λ̂♯ = Q(W⊥)`.
    pub image_identity: bool,
}

fn covelocity_image<T: Field>(omega: &PolyForm<T>) -> Subspace<T> {
    Subspace::image(&omega.flat(), omega.tol())
}

impl<T: Field> ReductionProblem<T> {
    pub fn new(omega: PolyForm<T>, w: Subspace<T>, samples: Vec<(PolyForm<T>, Subspace<T>)>) -> Result<Self> {
        let v = omega.is_polysymplectic();
        if !v.pass {
            return Err(Error::Degenerate {
                what: "polyform".into(),
                witness: v.witness.map(|w| Rendered(&w).to_string()).unwrap_or_default(),
            });
        }
        if w.ambient() != omega.m() {
            return Err(Error::DimensionMismatch {
                expected: omega.m(),
                found: w.ambient(),
            });
        }
        for (j, (o, sw)) in samples.iter().enumerate() {
            if o.m() != omega.m() || o.k() != omega.k() || sw.ambient() != omega.m() || sw.dim() != w.dim() {
                return Err(Error::Invalid(format!(
                    "sample {j} does not share (m, k, dim W) with the base point"
                )));
            }
            if !o.is_polysymplectic().pass {
                return Err(Error::Invalid(format!("sample {j} is not polysymplectic")));
            }
        }
        Ok(ReductionProblem { omega, w, samples })
    }

    fn points(&self) -> impl Iterator<Item = (&PolyForm<T>, &Subspace<T>)> {
        std::iter::once((&self.omega, &self.w)).chain(self.samples.iter().map(|(o, w)| (o, w)))
    }

    pub fn check_hypotheses(&self) -> Result<HypothesisVerdict<T>> {
        let k = self.omega.k();
        let mut dims = Vec::new();
        let mut hyp_ii_location = None;
        let mut witness_ii = None;
        for (j, (omega, w)) in self.points().enumerate() {
            let s = covelocity_image(omega);
            let ann_k = w.annihilator().power(k);
            let s_ann = s.intersect(&ann_k)?;
            dims.push(s_ann.dim());
            if witness_ii.is_none() {
                let w_perp = polysymplectic_orthogonal(omega, w)?;
                let triple = w_perp.annihilator().power(k).intersect(&s_ann)?;
                let pulled = Subspace::preimage(&omega.flat(), &triple)?;
                if let Some(x) = pulled.escape_witness(w) {
                    witness_ii = Some(x);
                    hyp_ii_location = Some(if j == 0 { None } else { Some(j - 1) });
                }
            }
        }
        let offending = dims.iter().position(|&d| d != dims[0]).map(|j| j - 1);
        Ok(HypothesisVerdict {
            hyp_i: offending.is_none(),
            dims,
            offending_sample: offending,
            hyp_ii: witness_ii.is_none(),
            hyp_ii_location,
            witness_ii,
        })
    }

    pub fn reduce(&self) -> Result<ReducedStructure<T>> {
        let h = self.check_hypotheses()?;
        if !h.pass() {
            return Err(Error::Rejected {
                what: if h.hyp_i {
                    "reduction (hypothesis ii)".into()
                } else {
                    "reduction (hypothesis i)".into()
                },
                witness: match (&h.witness_ii, h.offending_sample) {
                    (Some(w), _) => Rendered(w).to_string(),
                    (None, Some(j)) => format!("sample {j}"),
                    _ => String::new(),
                },
            });
        }
        reduce_point(&self.omega, &self.w)
    }
}

/// `Ŝ = ((Qᵀ)ᵏ)⁻¹(S)` and `Λ̂♯ = Q ∘ (ω♭)⁻¹ ∘ (Qᵀ)ᵏ`, without the hypothesis
/// checks.
pub fn reduce_point<T: Field>(omega: &PolyForm<T>, w: &Subspace<T>) -> Result<ReducedStructure<T>> {
    let (k, tol) = (omega.k(), omega.tol());
    let quotient = w.quotient();
    let q = &quotient.projection;
    let r = quotient.dim();
    let s = covelocity_image(omega);
    let lift = Matrix::block_diag(&vec![q.transpose(); k]);
    let hat_s = Subspace::preimage(&lift, &s)?;
    let flat = omega.flat();
    let sharp = if hat_s.dim() == 0 {
        Matrix::zeros(r, 0)
    } else {
        let targets = lift.mul(&hat_s.basis().transpose());
        q.mul(&flat.solve(&targets, tol)?)
    };
    let point = PolyPoissonPoint::new(r, k, hat_s, sharp, IntegrabilityStatus::Structural, omega.conventions())?;
    let projected_orthogonal = polysymplectic_orthogonal(omega, w)?.map(q)?;
    let image_identity = point.characteristic_distribution().same_as(&projected_orthogonal);
    Ok(ReducedStructure {
        quotient,
        point,
        projected_orthogonal,
        image_identity,
    })
}

/// Flat blocks of the left-trivialized covelocity form on `g ⊕ (g*)ᵏ`:
/// component `A` sends `(ξ, τ)` to `(ad*_ξ μ_A − τ_A, ξ in slot A)`.
pub fn cotangent_flat_blocks<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>]) -> Vec<Matrix<T>> {
    let (n, k) = (g.dim(), mus.len());
    let dim = n + k * n;
    mus.iter()
        .enumerate()
        .map(|(a, mu)| {
            let mut f = Matrix::zeros(dim, dim);
            f.set_block(0, 0, &g.generator_matrix(mu));
            f.set_block(0, n + a * n, &Matrix::identity(n).neg());
            f.set_block(n + a * n, 0, &Matrix::identity(n));
            f
        })
        .collect()
}

pub fn cotangent_form<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>]) -> Result<PolyForm<T>> {
    PolyForm::from_flat_blocks(cotangent_flat_blocks(g, mus), g.tol(), g.conventions())
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CotangentDiagnostics {
    /// `S ∩ (W°)ᵏ` is the diagonal `ξ` block.
    pub diagonal_intersection: bool,
    /// `((W⊥)°)ᵏ ∩ (W°)ᵏ ∩ S` is the diagonal of the joint isotropy.
    pub isotropy_intersection: bool,
    /// `W⊥ = {(ξ, ad*_ξ μ₁, …, ad*_ξ μ_k)}`.
    pub orthogonal_graph: bool,
}

impl CotangentDiagnostics {
    pub fn pass(&self) -> bool {
        self.diagonal_intersection && self.isotropy_intersection && self.orthogonal_graph
    }
}

#[derive(Clone, Debug)]
pub struct CotangentGroup<T> {
    pub problem: ReductionProblem<T>,
    pub hypotheses: HypothesisVerdict<T>,
    pub reduced: ReducedStructure<T>,
    pub diagnostics: CotangentDiagnostics,
}

/// Reduction of the k-covelocities of a Lie group at `(e, μ⃗)`; `samples` are
/// further `μ⃗` standing for other points.
pub fn cotangent_group<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>], samples: &[Vec<Vec<T>>]) -> Result<CotangentGroup<T>> {
    let (n, k, tol) = (g.dim(), mus.len(), g.tol());
    if k == 0 {
        return Err(Error::Invalid("need k >= 1".into()));
    }
    let dim = n + k * n;
    let vertical: Vec<Vec<T>> = (0..n).map(|a| unit(dim, a)).collect();
    let w = Subspace::span(dim, &vertical, tol)?;
    let omega = cotangent_form(g, mus)?;
    let sample_forms = samples
        .iter()
        .map(|s| Ok((cotangent_form(g, s)?, w.clone())))
        .collect::<Result<Vec<_>>>()?;
    let problem = ReductionProblem::new(omega, w.clone(), sample_forms)?;
    let hypotheses = problem.check_hypotheses()?;
    let reduced = problem.reduce()?;

    let s = covelocity_image(&problem.omega);
    let s_ann = s.intersect(&w.annihilator().power(k))?;
    let slot_tuple = |xi: &[T]| -> Vec<T> {
        let mut t = vec![T::zero(); k * dim];
        for a in 0..k {
            t[a * dim + n + a * n..a * dim + n + (a + 1) * n].clone_from_slice(xi);
        }
        t
    };
    let diag: Vec<Vec<T>> = (0..n).map(|a| slot_tuple(&unit(n, a))).collect();
    let diagonal_intersection = s_ann.same_as(&Subspace::span(k * dim, &diag, tol)?);

    let mut gens = Matrix::zeros(0, n);
    for mu in mus {
        gens = gens.vstack(&g.generator_matrix(mu));
    }
    let isotropy = Subspace::kernel(&gens, tol);
    let iso_tuples: Vec<Vec<T>> = isotropy.basis_vecs().iter().map(|e| slot_tuple(e)).collect();
    let w_perp = polysymplectic_orthogonal(&problem.omega, &w)?;
    let triple = w_perp.annihilator().power(k).intersect(&s_ann)?;
    let isotropy_intersection = triple.same_as(&Subspace::span(k * dim, &iso_tuples, tol)?);

    let graph: Vec<Vec<T>> = (0..n)
        .map(|a| {
            let xi = unit(n, a);
            let mut v = xi.clone();
            for mu in mus {
                v.extend(g.coad(&xi, mu));
            }
            v
        })
        .collect();
    let orthogonal_graph = w_perp.same_as(&Subspace::span(dim, &graph, tol)?);

    Ok(CotangentGroup {
        problem,
        hypotheses,
        reduced,
        diagnostics: CotangentDiagnostics {
            diagonal_intersection,
            isotropy_intersection,
            orthogonal_graph,
        },
    })
}

#[derive(Clone, Debug)]
pub struct PrincipalLocal<T> {
    pub reduced: ReducedStructure<T>,
    /// Whitney structure of the trivialized Atiyah data, reordered into the
    /// quotient coordinates `(q, p_U¹…p_Uᵏ, μ₁…μ_k)`.
    pub whitney: PolyPoissonPoint<T>,
    pub same_s: bool,
    pub relation: Option<Relation>,
    /// Whether the Whitney fiber point is a frame (only when `k = m_base + n`).
    pub frame: Option<bool>,
}

impl<T> PrincipalLocal<T> {
    pub fn matches_with(&self, sign_ok: impl Fn(Relation) -> bool) -> bool {
        self.same_s && self.relation.map(sign_ok).unwrap_or(false)
    }
}

/// Reduction of `(T¹_k)*U × (T¹_k)*G` by `G`, compared with the Whitney sum of
/// the trivialized Atiyah algebroid at the matching point.
pub fn covelocity_principal_local<T: Field>(
    g: &LieAlgebra<T>,
    m_base: usize,
    base_momenta: &[Vec<T>],
    mus: &[Vec<T>],
) -> Result<PrincipalLocal<T>> {
    let (n, k, tol) = (g.dim(), mus.len(), g.tol());
    if base_momenta.len() != k || base_momenta.iter().any(|p| p.len() != m_base) {
        return Err(Error::Invalid(format!(
            "need {k} base momenta of length {m_base}"
        )));
    }
    let conv: Conventions = g.conventions();
    let group = cotangent_form(g, mus)?;
    let omega = if m_base == 0 {
        group
    } else {
        PolyForm::canonical_covelocity(m_base, k, tol, conv).direct_sum(&group)?
    };
    let base = m_base * (1 + k);
    let dim = base + n + k * n;
    let vertical: Vec<Vec<T>> = (0..n).map(|a| unit(dim, base + a)).collect();
    let w = Subspace::span(dim, &vertical, tol)?;
    let problem = ReductionProblem::new(omega, w, Vec::new())?;
    let reduced = problem.reduce()?;

    let data = AlgebroidPointData::atiyah_trivial(m_base, g);
    let ne = m_base + n;
    let fiber: Vec<Vec<T>> = base_momenta
        .iter()
        .zip(mus)
        .map(|(p, mu)| p.iter().chain(mu).cloned().collect())
        .collect();
    let frame = if k == ne { Some(is_frame(&data, &fiber)?) } else { None };
    let wp = whitney_point(&data, &fiber, conv)?;
    let mut perm: Vec<usize> = (0..m_base).collect();
    for a in 0..k {
        perm.extend((0..m_base).map(|i| m_base + a * ne + i));
    }
    for a in 0..k {
        perm.extend((0..n).map(|al| m_base + a * ne + m_base + al));
    }
    let whitney = wp.point.permute_coordinates(&perm)?;
    let relation = reduced.point.relation_to(&whitney);
    Ok(PrincipalLocal {
        same_s: relation.is_some(),
        relation,
        reduced,
        whitney,
        frame,
    })
}

/// `ᾱ_ξ` for the reduced cotangent-group structure (same layout as `gstar_k`).
pub fn reduced_diagonal<T: Field>(xi: &[T], k: usize) -> Vec<T> {
    diagonal_tuple(xi, k)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liepoisson::gstar::gstar_k;
    use crate::polypoisson::from_polysymplectic;
    use crate::scalar::{qi, Tol, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn zero_vertical_is_identity_reduction() {
        let w0 = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, Conventions::default());
        let rp = ReductionProblem::new(w0.clone(), Subspace::zero(3, Tol::EXACT), vec![]).unwrap();
        let h = rp.check_hypotheses().unwrap();
        assert!(h.pass());
        let red = rp.reduce().unwrap();
        assert!(red.point.same_as(&from_polysymplectic(&w0).unwrap()));
        assert!(red.image_identity);
        assert!(red.point.leaf_form().unwrap().form.same_as(&w0));
    }

    #[test]
    fn hypothesis_i_failure_names_the_sample() {
        let conv = Conventions::default();
        let w0 = PolyForm::<Q>::canonical_covelocity(1, 2, Tol::EXACT, conv);
        let wq = Subspace::span(3, &[q(&[1, 0, 0])], Tol::EXACT).unwrap();
        let wp = Subspace::span(3, &[q(&[0, 1, 0])], Tol::EXACT).unwrap();
        let rp = ReductionProblem::new(w0.clone(), wq, vec![(w0, wp)]).unwrap();
        let h = rp.check_hypotheses().unwrap();
        assert!(!h.hyp_i);
        assert_eq!(h.dims, vec![1, 2]);
        assert_eq!(h.offending_sample, Some(0));
        assert!(rp.reduce().is_err());
    }

    #[test]
    fn so3_cotangent_group_matches_gstar() {
        for conv in [Conventions::COADJOINT, Conventions::INTERIOR] {
            let g = LieAlgebra::<Q>::so3(conv);
            let mus = vec![q(&[0, 0, 1]), q(&[1, 0, 0])];
            let cg = cotangent_group(&g, &mus, &[vec![q(&[1, 2, 3]), q(&[0, 1, 0])]]).unwrap();
            assert!(cg.hypotheses.pass());
            assert!(cg.diagnostics.pass(), "{:?}", cg.diagnostics);
            assert_eq!(cg.reduced.point.s().dim(), 3);
            assert!(cg.reduced.image_identity);
            let gs = gstar_k(&g, &mus).unwrap();
            assert_eq!(cg.reduced.point.relation_to(&gs), Some(Relation::Equal));
        }
        let g = LieAlgebra::<Q>::so3(Conventions::INTERIOR);
        let cg = cotangent_group(&g, &[q(&[0, 0, 1]), q(&[1, 0, 0])], &[]).unwrap();
        let img = cg.reduced.point.apply(&reduced_diagonal(&q(&[1, 0, 0]), 2)).unwrap();
        assert_eq!(img, q(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn degenerate_momenta() {
        let g = LieAlgebra::<Q>::so3(Conventions::default());
        let cg = cotangent_group(&g, &[q(&[0, 0, 1]), q(&[0, 0, 1])], &[]).unwrap();
        assert!(cg.diagnostics.pass());
        assert_eq!(cg.reduced.point.characteristic_distribution().dim(), 2);
        let one = cotangent_group(&g, &[q(&[0, 0, 1])], &[]).unwrap();
        assert_eq!(one.reduced.point.characteristic_distribution().dim(), 2);
        let ab = cotangent_group(&LieAlgebra::<Q>::abelian(3, Conventions::default()), &[q(&[1, 2, 3])], &[]).unwrap();
        assert!(ab.reduced.point.sharp().is_zero_within(Tol::EXACT));
    }

    #[test]
    fn heisenberg_reduction_is_lie_poisson() {
        let g = LieAlgebra::<Q>::heisenberg3(Conventions::COADJOINT);
        let mu = q(&[2, -1, 3]);
        let cg = cotangent_group(&g, &[mu.clone()], &[]).unwrap();
        let lp = AlgebroidPointData::over_point(&g).linear_poisson_sharp(&mu);
        let sharp = cg.reduced.point.sharp();
        // k = 1: S is the full dual with the identity basis
        assert!(cg.reduced.point.s().is_full());
        assert_eq!(sharp, &lp);
    }

    #[test]
    fn principal_local_cases() {
        let conv = Conventions::default();
        let so3 = LieAlgebra::<Q>::so3(conv);
        let pl = covelocity_principal_local(&so3, 1, &[q(&[2]), q(&[-1])], &[q(&[0, 0, 1]), q(&[1, 2, 0])]).unwrap();
        assert!(pl.same_s);
        assert_eq!(pl.relation, Some(Relation::Equal));
        assert!(pl.reduced.image_identity);
        let h3 = LieAlgebra::<Q>::heisenberg3(conv);
        let pl2 = covelocity_principal_local(&h3, 2, &[q(&[1, 0]), q(&[0, 3])], &[q(&[0, 0, 1]), q(&[1, 1, 1])]).unwrap();
        assert_eq!(pl2.relation, Some(Relation::Equal));
        let mus = vec![q(&[0, 0, 1]), q(&[1, 0, 0])];
        let p0 = covelocity_principal_local(&so3, 0, &[vec![], vec![]], &mus).unwrap();
        let cg = cotangent_group(&so3, &mus, &[]).unwrap();
        assert!(p0.reduced.point.same_as(&cg.reduced.point));
    }

    #[test]
    fn principal_local_abelian_line() {
        let conv = Conventions::default();
        let g = LieAlgebra::<Q>::abelian(1, conv);
        let pl = covelocity_principal_local(&g, 2, &[q(&[1, 1])], &[q(&[4])]).unwrap();
        assert_eq!(pl.relation, Some(Relation::Equal));
        let canon = from_polysymplectic(&PolyForm::<Q>::canonical_covelocity(2, 1, Tol::EXACT, conv)).unwrap();
        let sharp = pl.reduced.point.sharp();
        assert_eq!(sharp.rows(), 5);
        assert_eq!(sharp.block(0, 0, 4, 4), canon.sharp().clone());
        assert!(sharp.block(4, 0, 1, 5).is_zero_within(Tol::EXACT));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::polypoisson::from_polysymplectic;
    use crate::sampling::Sampler;
    use crate::scalar::{Tol, Q};
    use proptest::prelude::*;

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn image_identity_whenever_hypotheses_hold(seed in any::<u64>()) {
            let mut s = Sampler::new(seed);
            let omega: PolyForm<Q> = s.polyform(6, 3, Tol::EXACT, Conventions::default());
            let w = s.subspace(omega.m(), Tol::EXACT);
            let rp = ReductionProblem::new(omega, w, vec![]).unwrap();
            if rp.check_hypotheses().unwrap().pass() {
                let red = rp.reduce().unwrap();
                prop_assert!(red.image_identity);
                prop_assert!(red.point.check_axioms().pass());
            } else {
                let rejected = matches!(rp.reduce(), Err(Error::Rejected { .. }));
                prop_assert!(rejected);
            }
        }

        #[test]
        fn zero_vertical_space_changes_nothing(seed in any::<u64>()) {
            let omega: PolyForm<Q> = Sampler::new(seed).polyform(6, 3, Tol::EXACT, Conventions::default());
            let red = reduce_point(&omega, &Subspace::zero(omega.m(), Tol::EXACT)).unwrap();
            prop_assert!(red.point.same_as(&from_polysymplectic(&omega).unwrap()));
            prop_assert!(red.point.leaf_form().unwrap().form.same_as(&omega));
        }

        #[test]
        fn cotangent_diagnostics_hold(seed in any::<u64>(), which in 0usize..4, k in 1usize..=3) {
            let conv = Conventions::default();
            let g: LieAlgebra<Q> = match which {
                0 => LieAlgebra::so3(conv),
                1 => LieAlgebra::heisenberg3(conv),
                2 => LieAlgebra::sl2(conv),
                _ => LieAlgebra::abelian(3, conv),
            };
            let mus = Sampler::new(seed).momenta(3, k);
            let cg = cotangent_group(&g, &mus, &[]).unwrap();
            prop_assert!(cg.diagnostics.pass());
            prop_assert!(cg.reduced.image_identity);
            prop_assert!(cg.reduced.point.same_as(&crate::liepoisson::gstar::gstar_k(&g, &mus).unwrap()));
        }
    }
}
