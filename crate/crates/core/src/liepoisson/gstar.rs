//! The poly-Poisson structure on `(g*)ᵏ` and its exact integrability check.
//!
//! Coordinates on `(g*)ᵏ` are `(μ₁, …, μ_k)`, block `A` at `A·n .. (A+1)·n`.
//! Covectors on `(g*)ᵏ` are identified with `gᵏ`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::liepoisson::algebra::LieAlgebra;
use crate::liepoisson::sections::{AffineField, AffineTuple};
use crate::matrix::{unit, Matrix};
use crate::polypoisson::{IntegrabilityStatus, LeafForm, PolyPoissonPoint};
use crate::polysymplectic::{k_coadjoint_polyform, OrbitForm};
use crate::scalar::Field;

/// `ᾱ_ξ`: covector `A` carries `ξ` in block `A`.
pub fn diagonal_tuple<T: Field>(xi: &[T], k: usize) -> Vec<T> {
    let n = xi.len();
    let dim = k * n;
    let mut t = vec![T::zero(); k * dim];
    for a in 0..k {
        t[a * dim + a * n..a * dim + (a + 1) * n].clone_from_slice(xi);
    }
    t
}

/// `S = {ᾱ_ξ}` and `Λ♯ᾱ_ξ = (ad*_ξ μ_A)_A`.
pub fn gstar_k<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>]) -> Result<PolyPoissonPoint<T>> {
    let (n, k) = (g.dim(), mus.len());
    if k == 0 {
        return Err(Error::Invalid("need k >= 1".into()));
    }
    for mu in mus {
        if mu.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: mu.len(),
            });
        }
    }
    let pairs: Vec<(Vec<T>, Vec<T>)> = (0..n)
        .map(|a| {
            let xi = unit(n, a);
            let image: Vec<T> = mus.iter().flat_map(|mu| g.coad(&xi, mu)).collect();
            (diagonal_tuple(&xi, k), image)
        })
        .collect();
    PolyPoissonPoint::from_generators(
        k * n,
        k,
        &pairs,
        g.tol(),
        IntegrabilityStatus::Unverified,
        g.conventions(),
    )
}

/// `Λ♯` applied to a constant section of `S`, as an affine field on `(g*)ᵏ`.
pub fn sharp_section<T: Field>(g: &LieAlgebra<T>, section: &AffineTuple<T>) -> Result<AffineField<T>> {
    let (n, k) = (g.dim(), section.k());
    let tol = g.tol();
    if !section.is_constant(tol) {
        return Err(Error::DegreeOverflow("sharp of a non-constant section".into()));
    }
    let t = section.constant_tuple();
    let xi = t[..n].to_vec();
    if t != diagonal_tuple(&xi, k) {
        return Err(Error::NotInDomain(crate::scalar::Rendered(&t).to_string()));
    }
    Ok(AffineField::linear(Matrix::block_diag(&vec![g.coad_matrix(&xi); k])))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IntegrabilityVerdict {
    pub pass: bool,
    pub pairs_checked: usize,
    /// Basis pair `(a, b)` (0-based) with differing sides.
    pub witness: Option<[usize; 2]>,
}

/// Both sides of the section-level integrability identity for every basis
/// pair of diagonal constant sections, compared coefficient-wise.
pub fn gstar_k_integrability<T: Field>(g: &LieAlgebra<T>, k: usize) -> Result<IntegrabilityVerdict> {
    if !T::EXACT {
        return Err(Error::ExactRequired("the integrability identity".into()));
    }
    let n = g.dim();
    let tol = g.tol();
    let section = |a: usize| {
        let xi = unit::<T>(n, a);
        let dim = k * n;
        let parts = (0..k)
            .map(|b| {
                let mut c = vec![T::zero(); dim];
                c[b * n..(b + 1) * n].clone_from_slice(&xi);
                c
            })
            .collect();
        AffineTuple::constant(parts)
    };
    let mut checked = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            let (sa, sb) = (section(a), section(b));
            let xa = sharp_section(g, &sa)?;
            let xb = sharp_section(g, &sb)?;
            let lhs = xa.commutator(&xb);
            let pairing = sb.pair(&xa, tol)?;
            let inner = sb
                .lie_derivative(&xa)
                .sub(&sa.lie_derivative(&xb))
                .sub(&AffineTuple::differential(&pairing));
            let rhs = sharp_section(g, &inner)?;
            checked += 1;
            if !lhs.sub(&rhs).is_zero(tol) {
                return Ok(IntegrabilityVerdict {
                    pass: false,
                    pairs_checked: checked,
                    witness: Some([a, b]),
                });
            }
        }
    }
    Ok(IntegrabilityVerdict {
        pass: true,
        pairs_checked: checked,
        witness: None,
    })
}

#[derive(Clone, Debug)]
pub struct LeafMatch<T> {
    pub pass: bool,
    pub same_tangent: bool,
    pub leaf: LeafForm<T>,
    pub orbit: OrbitForm<T>,
}

/// Leaf form of `gstar_k` against the k-coadjoint orbit form.
pub fn coadjoint_leaf_match<T: Field>(g: &LieAlgebra<T>, mus: &[Vec<T>]) -> Result<LeafMatch<T>> {
    let leaf = gstar_k(g, mus)?.leaf_form()?;
    let orbit = k_coadjoint_polyform(g, mus)?;
    let same_tangent = leaf.tangent.same_as(&orbit.tangent);
    let pass = same_tangent && leaf.form.same_as(&orbit.form);
    Ok(LeafMatch {
        pass,
        same_tangent,
        leaf,
        orbit,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conventions::Conventions;
    use crate::liepoisson::algebroid::{whitney_point, AlgebroidPointData};
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn so3_example_under_interior_convention() {
        let g = LieAlgebra::<Q>::so3(Conventions::INTERIOR);
        let pp = gstar_k(&g, &[q(&[0, 0, 1]), q(&[1, 0, 0])]).unwrap();
        assert_eq!(pp.s().dim(), 3);
        assert!(pp.check_axioms().pass());
        let img = pp.apply(&diagonal_tuple(&q(&[1, 0, 0]), 2)).unwrap();
        assert_eq!(img, q(&[0, 1, 0, 0, 0, 0]));
    }

    #[test]
    fn convention_flip_negates_sharp() {
        let mus = [q(&[0, 0, 1]), q(&[1, 2, 0])];
        let a = gstar_k(&LieAlgebra::<Q>::so3(Conventions::INTERIOR), &mus).unwrap();
        let b = gstar_k(&LieAlgebra::<Q>::so3(Conventions::COADJOINT), &mus).unwrap();
        assert!(b.same_as(&a.negated()));
        assert!(b.check_axioms().pass());
    }

    #[test]
    fn abelian_and_heisenberg() {
        let ab = gstar_k(&LieAlgebra::<Q>::abelian(3, Conventions::default()), &[q(&[1, 2, 3])]).unwrap();
        assert!(ab.sharp().is_zero_within(crate::scalar::Tol::EXACT));
        let h = gstar_k(&LieAlgebra::<Q>::heisenberg3(Conventions::default()), &[q(&[0, 0, 1])]).unwrap();
        let expected = crate::subspaces::Subspace::span(3, &[q(&[1, 0, 0]), q(&[0, 1, 0])], crate::scalar::Tol::EXACT).unwrap();
        assert_eq!(h.characteristic_distribution(), expected);
    }

    #[test]
    fn integrability_tracks_jacobi() {
        for conv in [Conventions::INTERIOR, Conventions::COADJOINT] {
            for k in 1..=3 {
                for g in [
                    LieAlgebra::<Q>::so3(conv),
                    LieAlgebra::heisenberg3(conv),
                    LieAlgebra::abelian(3, conv),
                    LieAlgebra::sl2(conv),
                ] {
                    assert!(gstar_k_integrability(&g, k).unwrap().pass);
                }
                let v = gstar_k_integrability(&LieAlgebra::<Q>::non_jacobi(conv), k).unwrap();
                assert!(!v.pass);
                assert!(v.witness.is_some());
            }
        }
    }

    #[test]
    fn float_integrability_is_refused() {
        let g = LieAlgebra::<f64>::so3(Conventions::default());
        assert!(matches!(gstar_k_integrability(&g, 1), Err(Error::ExactRequired(_))));
    }

    #[test]
    fn leaf_matches_orbit() {
        for conv in [Conventions::INTERIOR, Conventions::COADJOINT] {
            let g = LieAlgebra::<Q>::so3(conv);
            let m = coadjoint_leaf_match(&g, &[q(&[0, 0, 1]), q(&[1, 0, 0])]).unwrap();
            assert!(m.pass);
            let one = coadjoint_leaf_match(&g, &[q(&[0, 0, 1])]).unwrap();
            assert!(one.pass);
            let ab = coadjoint_leaf_match(&LieAlgebra::<Q>::abelian(2, conv), &[q(&[1, 1])]).unwrap();
            assert!(ab.pass && ab.leaf.tangent.dim() == 0);
        }
    }

    #[test]
    fn whitney_over_point_equals_gstar_with_coadjoint_convention() {
        let g = LieAlgebra::<Q>::so3(Conventions::COADJOINT);
        let mus = vec![q(&[0, 0, 1]), q(&[1, -1, 2])];
        let w = whitney_point(&AlgebroidPointData::over_point(&g), &mus, Conventions::COADJOINT).unwrap();
        let gs = gstar_k(&g, &mus).unwrap();
        assert!(w.point.same_as(&gs));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use crate::conventions::Conventions;
    use crate::liepoisson::algebroid::{whitney_point, AlgebroidPointData};
    use crate::sampling::Sampler;
    use crate::scalar::{Tol, Q};
    use proptest::prelude::*;

    fn builtin(which: usize, conv: Conventions) -> LieAlgebra<Q> {
        match which {
            0 => LieAlgebra::so3(conv),
            1 => LieAlgebra::heisenberg3(conv),
            2 => LieAlgebra::sl2(conv),
            _ => LieAlgebra::abelian(3, conv),
        }
    }

    fn random_algebra(s: &mut Sampler, n: usize) -> LieAlgebra<Q> {
        let mut c = vec![Q::from_i64(0); n * n * n];
        for g in 0..n {
            for a in 0..n {
                for b in (a + 1)..n {
                    let v = Q::from_i64(s.int(-1, 1));
                    c[(g * n + a) * n + b] = v.clone();
                    c[(g * n + b) * n + a] = -v;
                }
            }
        }
        LieAlgebra::new(n, c, Conventions::default(), Tol::EXACT).unwrap()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn integrability_iff_jacobi(seed in any::<u64>(), n in 2usize..=4, k in 1usize..=3) {
            let g = random_algebra(&mut Sampler::new(seed), n);
            prop_assert_eq!(g.jacobi_check().pass, gstar_k_integrability(&g, k).unwrap().pass);
        }

        #[test]
        fn whitney_over_a_point_is_gstar(seed in any::<u64>(), which in 0usize..4, k in 1usize..=3) {
            let mus: Vec<Vec<Q>> = Sampler::new(seed).momenta(3, k);
            let g = builtin(which, Conventions::COADJOINT);
            let w = whitney_point(&AlgebroidPointData::over_point(&g), &mus, Conventions::COADJOINT).unwrap();
            prop_assert!(w.point.same_as(&gstar_k(&g, &mus).unwrap()));
            prop_assert_eq!(w.point.s().dim(), 3);
            let gi = builtin(which, Conventions::INTERIOR);
            let wi = whitney_point(&AlgebroidPointData::over_point(&gi), &mus, Conventions::INTERIOR).unwrap();
            prop_assert!(wi.point.relation_to(&gstar_k(&gi, &mus).unwrap()).is_some());
        }

        #[test]
        fn whitney_rank_and_commutators(seed in any::<u64>(), which in 0usize..4, m_base in 0usize..=2, k in 1usize..=3) {
            let mut s = Sampler::new(seed);
            let g = builtin(which, Conventions::default());
            let d = AlgebroidPointData::atiyah_trivial(m_base, &g);
            let fiber: Vec<Vec<Q>> = s.momenta(m_base + 3, k);
            let w = whitney_point(&d, &fiber, Conventions::default()).unwrap();
            prop_assert_eq!(w.point.s().dim(), m_base * k + m_base + 3);
            prop_assert!(w.commutators.pass());
        }

        #[test]
        fn opposite_coadjoint_sign_negates_gstar(seed in any::<u64>(), which in 0usize..4, k in 1usize..=3) {
            let mus: Vec<Vec<Q>> = Sampler::new(seed).momenta(3, k);
            let a = gstar_k(&builtin(which, Conventions::INTERIOR), &mus).unwrap();
            let b = gstar_k(&builtin(which, Conventions::COADJOINT), &mus).unwrap();
            prop_assert!(b.same_as(&a.negated()));
            prop_assert!(a.check_axioms().pass() && b.check_axioms().pass());
        }
    }
}
