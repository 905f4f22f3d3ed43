use serde::Serialize;

use crate::conventions::{Conventions, Sign};
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::{Field, Tol};

/// Structure constants `[e_α, e_β] = C^γ_{αβ} e_γ`.
///
/// Antisymmetry is enforced at construction. The Jacobi identity is not, so
/// that negative controls can be represented; see [`LieAlgebra::jacobi_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra<T> {
    n: usize,
    c: Vec<T>,
    conventions: Conventions,
    tol: Tol,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiVerdict {
    pub pass: bool,
    /// `(α, β, γ, ν)` with a nonzero cyclic sum in component ν (0-based).
    pub witness: Option<[usize; 4]>,
    pub residual: Option<String>,
}

impl<T: Field> LieAlgebra<T> {
    /// `constants[(γ·n + α)·n + β] = C^γ_{αβ}`.
    pub fn new(n: usize, constants: Vec<T>, conventions: Conventions, tol: Tol) -> Result<Self> {
        if constants.len() != n * n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n * n,
                found: constants.len(),
            });
        }
        let g = LieAlgebra {
            n,
            c: constants,
            conventions,
            tol,
        };
        for gamma in 0..n {
            for alpha in 0..n {
                for beta in alpha..n {
                    let s = g.structure(gamma, alpha, beta).clone()
                        + g.structure(gamma, beta, alpha).clone();
                    if !s.negligible(tol) {
                        return Err(Error::NotAntisymmetric {
                            alpha,
                            beta,
                            gamma,
                        });
                    }
                }
            }
        }
        Ok(g)
    }

    /// Builds constants from bracket triples `[e_α, e_β] ∋ value·e_γ` (0-based),
    /// completing antisymmetry. Conflicting duplicates are rejected.
    pub fn from_brackets(
        n: usize,
        brackets: &[(usize, usize, usize, T)],
        conventions: Conventions,
        tol: Tol,
    ) -> Result<Self> {
        let mut c = vec![T::zero(); n * n * n];
        let mut set = vec![false; n * n * n];
        let idx = |g: usize, a: usize, b: usize| (g * n + a) * n + b;
        for (a, b, g, v) in brackets {
            let (a, b, g) = (*a, *b, *g);
            if a >= n || b >= n || g >= n {
                return Err(Error::Invalid(format!(
                    "bracket index ({}, {}, {}) out of range for dimension {n}",
                    a + 1,
                    b + 1,
                    g + 1
                )));
            }
            if a == b {
                if !v.negligible(tol) {
                    return Err(Error::Invalid(format!(
                        "bracket [e{0}, e{0}] must vanish",
                        a + 1
                    )));
                }
                continue;
            }
            for (i, val) in [(idx(g, a, b), v.clone()), (idx(g, b, a), -v.clone())] {
                if set[i] && !(c[i].clone() - val.clone()).negligible(tol) {
                    return Err(Error::Invalid(format!(
                        "conflicting entries for [e{}, e{}] component {}",
                        a + 1,
                        b + 1,
                        g + 1
                    )));
                }
                c[i] = val;
                set[i] = true;
            }
        }
        Self::new(n, c, conventions, tol)
    }

    fn from_int_brackets(n: usize, brackets: &[(usize, usize, usize, i64)], conventions: Conventions) -> Self {
        let b: Vec<_> = brackets
            .iter()
            .map(|&(a, b, g, v)| (a, b, g, T::from_i64(v)))
            .collect();
        Self::from_brackets(n, &b, conventions, T::default_tol()).expect("fixture constants are valid")
    }

    /// so(3): `[e₁,e₂]=e₃` and cyclic.
    pub fn so3(conventions: Conventions) -> Self {
        Self::from_int_brackets(3, &[(0, 1, 2, 1), (1, 2, 0, 1), (2, 0, 1, 1)], conventions)
    }

    /// Heisenberg: `[e₁,e₂]=e₃`.
    pub fn heisenberg3(conventions: Conventions) -> Self {
        Self::from_int_brackets(3, &[(0, 1, 2, 1)], conventions)
    }

    pub fn abelian(n: usize, conventions: Conventions) -> Self {
        Self::from_int_brackets(n, &[], conventions)
    }

    /// sl(2) in the basis `(h, e, f)`.
    pub fn sl2(conventions: Conventions) -> Self {
        Self::from_int_brackets(3, &[(0, 1, 1, 2), (0, 2, 2, -2), (1, 2, 0, 1)], conventions)
    }

    /// `[e₁,e₂]=e₁, [e₁,e₃]=e₂, [e₂,e₃]=0`: antisymmetric, fails Jacobi.
    pub fn non_jacobi(conventions: Conventions) -> Self {
        Self::from_int_brackets(3, &[(0, 1, 0, 1), (0, 2, 1, 1)], conventions)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn conventions(&self) -> Conventions {
        self.conventions
    }

    pub fn tol(&self) -> Tol {
        self.tol
    }

    pub fn with_tol(&self, tol: Tol) -> Self {
        LieAlgebra { tol, ..self.clone() }
    }

    pub fn with_conventions(&self, conventions: Conventions) -> Self {
        LieAlgebra {
            conventions,
            ..self.clone()
        }
    }

    pub fn structure(&self, gamma: usize, alpha: usize, beta: usize) -> &T {
        &self.c[(gamma * self.n + alpha) * self.n + beta]
    }

    pub fn constants(&self) -> &[T] {
        &self.c
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().all(|v| v.negligible(self.tol))
    }

    pub fn bracket(&self, x: &[T], y: &[T]) -> Vec<T> {
        let n = self.n;
        let mut out = vec![T::zero(); n];
        for a in 0..n {
            if x[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if y[b].is_zero() {
                    continue;
                }
                let xy = x[a].clone() * y[b].clone();
                for (g, o) in out.iter_mut().enumerate() {
                    let c = self.structure(g, a, b);
                    if !c.is_zero() {
                        *o = o.clone() + c.clone() * xy.clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `η ↦ [ξ, η]`.
    pub fn ad(&self, x: &[T]) -> Matrix<T> {
        let n = self.n;
        Matrix::from_fn(n, n, |g, b| {
            let mut s = T::zero();
            for (a, xa) in x.iter().enumerate() {
                s = s + self.structure(g, a, b).clone() * xa.clone();
            }
            s
        })
    }

    /// Matrix of `ν ↦ ad*_ξ ν`: `s·(ad_ξ)ᵀ`.
    pub fn coad_matrix(&self, x: &[T]) -> Matrix<T> {
        let s: T = self.conventions.coadjoint_sign().value();
        self.ad(x).transpose().scale(&s)
    }

    pub fn coad(&self, x: &[T], nu: &[T]) -> Vec<T> {
        self.coad_matrix(x).mul_vec(nu)
    }

    /// Matrix of the generator map `ξ ↦ ad*_ξ ν`.
    pub fn generator_matrix(&self, nu: &[T]) -> Matrix<T> {
        let n = self.n;
        let s: T = self.conventions.coadjoint_sign().value();
        Matrix::from_fn(n, n, |b, a| {
            let mut acc = T::zero();
            for (g, ng) in nu.iter().enumerate() {
                acc = acc + ng.clone() * self.structure(g, a, b).clone();
            }
            s.clone() * acc
        })
    }

    /// Cyclic sum of `C^ν_{αμ} C^μ_{βγ}` over every index triple.
    pub fn jacobi_check(&self) -> JacobiVerdict {
        let n = self.n;
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let ea = crate::matrix::unit::<T>(n, a);
                    let eb = crate::matrix::unit::<T>(n, b);
                    let ec = crate::matrix::unit::<T>(n, c);
                    let t1 = self.bracket(&self.bracket(&ea, &eb), &ec);
                    let t2 = self.bracket(&self.bracket(&eb, &ec), &ea);
                    let t3 = self.bracket(&self.bracket(&ec, &ea), &eb);
                    for nu in 0..n {
                        let r = t1[nu].clone() + t2[nu].clone() + t3[nu].clone();
                        if !r.negligible(self.tol) {
                            return JacobiVerdict {
                                pass: false,
                                witness: Some([a, b, c, nu]),
                                residual: Some(r.render()),
                            };
                        }
                    }
                }
            }
        }
        JacobiVerdict {
            pass: true,
            witness: None,
            residual: None,
        }
    }

    /// Nonzero brackets as `(α, β, γ, value)` with `α < β`, 0-based.
    pub fn bracket_table(&self) -> Vec<(usize, usize, usize, T)> {
        let mut out = Vec::new();
        for a in 0..self.n {
            for b in (a + 1)..self.n {
                for g in 0..self.n {
                    let v = self.structure(g, a, b);
                    if !v.is_zero() {
                        out.push((a, b, g, v.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn describe(&self) -> String {
        let rows: Vec<String> = self
            .bracket_table()
            .iter()
            .map(|(a, b, g, v)| format!("[e{},e{}] += {}*e{}", a + 1, b + 1, v.render(), g + 1))
            .collect();
        if rows.is_empty() {
            format!("abelian of dimension {}", self.n)
        } else {
            rows.join(", ")
        }
    }

    pub fn sign(&self) -> Sign {
        self.conventions.coadjoint_sign()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    #[test]
    fn fixtures_satisfy_jacobi() {
        for g in [
            LieAlgebra::<Q>::so3(Conventions::default()),
            LieAlgebra::heisenberg3(Conventions::default()),
            LieAlgebra::abelian(3, Conventions::default()),
            LieAlgebra::sl2(Conventions::default()),
        ] {
            assert!(g.jacobi_check().pass, "{}", g.describe());
        }
    }

    #[test]
    fn non_jacobi_has_witness() {
        let v = LieAlgebra::<Q>::non_jacobi(Conventions::default()).jacobi_check();
        assert!(!v.pass);
        assert_eq!(v.witness, Some([0, 1, 2, 1]));
    }

    #[test]
    fn brackets_and_coadjoint_signs() {
        let g = LieAlgebra::<Q>::so3(Conventions::INTERIOR);
        assert_eq!(g.bracket(&q(&[1, 0, 0]), &q(&[0, 1, 0])), q(&[0, 0, 1]));
        assert_eq!(g.coad(&q(&[1, 0, 0]), &q(&[0, 0, 1])), q(&[0, 1, 0]));
        let h = g.with_conventions(Conventions::COADJOINT);
        assert_eq!(h.coad(&q(&[1, 0, 0]), &q(&[0, 0, 1])), q(&[0, -1, 0]));
        let nu = q(&[2, -1, 5]);
        let x = q(&[1, 3, -2]);
        assert_eq!(g.generator_matrix(&nu).mul_vec(&x), g.coad(&x, &nu));
    }

    #[test]
    fn rejects_bad_constants() {
        let conv = Conventions::default();
        let mut c = vec![qi(0); 8];
        c[1] = qi(1);
        assert!(matches!(
            LieAlgebra::new(2, c, conv, Tol::EXACT),
            Err(Error::NotAntisymmetric { .. })
        ));
        let dup = [(0, 1, 0, qi(1)), (1, 0, 0, qi(1))];
        assert!(LieAlgebra::from_brackets(2, &dup, conv, Tol::EXACT).is_err());
        let ok = [(0, 1, 0, qi(1)), (1, 0, 0, qi(-1))];
        assert!(LieAlgebra::from_brackets(2, &ok, conv, Tol::EXACT).is_ok());
    }
}
