//! Seeded random instances for property tests, cross-checks and the
//! acceptance suite.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::conventions::Conventions;
use crate::matrix::Matrix;
use crate::polysymplectic::PolyForm;
use crate::scalar::{Field, Tol};
use crate::subspaces::Subspace;

pub struct Sampler {
    rng: ChaCha8Rng,
    tame: bool,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            tame: false,
        }
    }

    /// Well-conditioned draws for float work: congruences are short shear
    /// products and skew entries stay in `{-1, 0, 1}`.
    pub fn tame(mut self) -> Self {
        self.tame = true;
        self
    }

    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn usize(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.gen_range(lo..=hi)
    }

    /// Small rational `p/q` with `|p| ≤ 5`, `1 ≤ q ≤ 4`.
    pub fn ratio<T: Field>(&mut self) -> T {
        let num = self.int(-5, 5);
        let den = self.int(1, 4);
        T::from_ratio(num, den)
    }

    pub fn vector<T: Field>(&mut self, n: usize) -> Vec<T> {
        (0..n).map(|_| self.ratio()).collect()
    }

    pub fn int_vector<T: Field>(&mut self, n: usize, bound: i64) -> Vec<T> {
        (0..n).map(|_| T::from_i64(self.int(-bound, bound))).collect()
    }

    /// `k` momenta in `ℝⁿ`.
    pub fn momenta<T: Field>(&mut self, n: usize, k: usize) -> Vec<Vec<T>> {
        (0..k).map(|_| self.vector(n)).collect()
    }

    /// Span of up to `ambient` integer vectors; often rank-deficient on purpose.
    pub fn subspace<T: Field>(&mut self, ambient: usize, tol: Tol) -> Subspace<T> {
        let count = self.usize(0, ambient + 1);
        let mut vecs: Vec<Vec<T>> = Vec::new();
        for _ in 0..count {
            if !vecs.is_empty() && self.rng.gen_bool(0.2) {
                let a = T::from_i64(self.int(-2, 2));
                let b = T::from_i64(self.int(-2, 2));
                let i = self.usize(0, vecs.len() - 1);
                let j = self.usize(0, vecs.len() - 1);
                let v = vecs[i]
                    .iter()
                    .zip(&vecs[j])
                    .map(|(x, y)| a.clone() * x.clone() + b.clone() * y.clone())
                    .collect();
                vecs.push(v);
            } else {
                vecs.push(self.int_vector(ambient, 3));
            }
        }
        Subspace::span(ambient, &vecs, tol).expect("vectors sized to ambient")
    }

    pub fn matrix<T: Field>(&mut self, rows: usize, cols: usize, bound: i64) -> Matrix<T> {
        Matrix::from_fn(rows, cols, |_, _| T::from_i64(self.int(-bound, bound)))
    }

    pub fn skew<T: Field>(&mut self, m: usize, bound: i64) -> Matrix<T> {
        let a: Matrix<T> = self.matrix(m, m, bound);
        a.sub(&a.transpose())
    }

    /// Invertible integer matrix built from unit triangular factors.
    pub fn unimodular<T: Field>(&mut self, m: usize) -> Matrix<T> {
        if self.tame {
            return self.shears(m);
        }
        let l = Matrix::from_fn(m, m, |i, j| {
            if i == j {
                T::one()
            } else if i > j {
                T::from_i64(self.int(-2, 2))
            } else {
                T::zero()
            }
        });
        let u = Matrix::from_fn(m, m, |i, j| {
            if i == j {
                T::one()
            } else if i < j {
                T::from_i64(self.int(-2, 2))
            } else {
                T::zero()
            }
        });
        let mut p: Vec<usize> = (0..m).collect();
        for i in (1..m).rev() {
            let j = self.usize(0, i);
            p.swap(i, j);
        }
        Matrix::identity(m).select_rows(&p).mul(&l).mul(&u)
    }

    fn shears<T: Field>(&mut self, m: usize) -> Matrix<T> {
        let mut g = Matrix::identity(m);
        if m < 2 {
            return g;
        }
        for _ in 0..m {
            let i = self.usize(0, m - 1);
            let j = (i + self.usize(1, m - 1)) % m;
            let c = T::from_i64(if self.rng.gen_bool(0.5) { 1 } else { -1 });
            for col in 0..m {
                let v = g[(i, col)].clone() + c.clone() * g[(j, col)].clone();
                g[(i, col)] = v;
            }
        }
        g
    }

    /// Random polysymplectic form with `m ≤ max_m` and `k ≤ max_k`: either a
    /// linearly transformed canonical covelocity form or a random skew family.
    pub fn polyform<T: Field>(&mut self, max_m: usize, max_k: usize, tol: Tol, conventions: Conventions) -> PolyForm<T> {
        loop {
            let k = self.usize(1, max_k);
            if self.rng.gen_bool(0.5) {
                let max_base = max_m / (k + 1);
                if max_base == 0 {
                    continue;
                }
                let base = self.usize(1, max_base);
                let m = base * (k + 1);
                let canon = PolyForm::<T>::canonical_covelocity(base, k, tol, conventions);
                let g: Matrix<T> = self.unimodular(m);
                let forms = canon.forms().iter().map(|f| g.transpose().mul(f).mul(&g)).collect();
                return PolyForm::new(m, forms, tol, conventions).expect("congruent forms are skew");
            }
            let m = self.usize(1, max_m);
            let bound = if self.tame { 1 } else { 2 };
            let forms = (0..k).map(|_| self.skew(m, bound)).collect();
            let omega = PolyForm::new(m, forms, tol, conventions).expect("skew by construction");
            if omega.is_polysymplectic().pass {
                return omega;
            }
        }
    }

    /// A polysymplectic form together with a subspace `D` meeting its
    /// orthogonal trivially.
    pub fn dirac_pair<T: Field>(&mut self, max_m: usize, max_k: usize, tol: Tol, conventions: Conventions) -> (PolyForm<T>, Subspace<T>) {
        loop {
            let omega = self.polyform(max_m, max_k, tol, conventions);
            for _ in 0..8 {
                let d = self.subspace(omega.m(), tol);
                let perp = crate::polypoisson::polysymplectic_orthogonal(&omega, &d).expect("sizes agree");
                if d.intersect(&perp).map(|x| x.is_zero()).unwrap_or(false) {
                    return (omega, d);
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn seeded_and_reproducible() {
        let mut a = Sampler::new(7);
        let mut b = Sampler::new(7);
        let x: Vec<Q> = a.vector(5);
        let y: Vec<Q> = b.vector(5);
        assert_eq!(x, y);
    }

    #[test]
    fn generated_forms_are_polysymplectic() {
        let mut s = Sampler::new(1);
        for _ in 0..20 {
            let w: PolyForm<Q> = s.polyform(8, 3, Tol::EXACT, Conventions::default());
            assert!(w.m() <= 8 && w.k() <= 3);
            assert!(w.is_polysymplectic().pass);
        }
    }

    #[test]
    fn unimodular_is_invertible() {
        let mut s = Sampler::new(3);
        let g: Matrix<Q> = s.unimodular(6);
        assert_eq!(g.rank(Tol::EXACT), 6);
    }
}
