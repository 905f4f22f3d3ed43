//! Subspace calculus on coordinate spaces.
//!
//! A [`Subspace`] is stored through its reduced row-echelon basis, so two
//! subspaces are equal exactly when their basis matrices agree. Covectors are
//! identified with coordinate vectors through the standard pairing.

use crate::error::{Error, Result};
use crate::matrix::{dot, is_zero_vec, sub_vec, unit, Matrix};
use crate::scalar::{Field, Tol};

#[derive(Clone, Debug)]
pub struct Subspace<T> {
    ambient: usize,
    basis: Matrix<T>,
    pivots: Vec<usize>,
    tol: Tol,
}

impl<T: Field> Subspace<T> {
    /// Span of `vectors` in `ℝ^ambient`.
    pub fn span(ambient: usize, vectors: &[Vec<T>], tol: Tol) -> Result<Self> {
        let m = Matrix::from_rows(ambient, vectors)?;
        Ok(Self::row_space(&m, tol))
    }

    pub fn row_space(m: &Matrix<T>, tol: Tol) -> Self {
        let e = m.rref(tol);
        let r = e.pivots.len();
        Subspace {
            ambient: m.cols(),
            basis: e.reduced.block(0, 0, r, m.cols()),
            pivots: e.pivots,
            tol,
        }
    }

    pub fn zero(ambient: usize, tol: Tol) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(0, ambient),
            pivots: Vec::new(),
            tol,
        }
    }

    pub fn full(ambient: usize, tol: Tol) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
            tol,
        }
    }

    /// Column space of `m`.
    pub fn image(m: &Matrix<T>, tol: Tol) -> Self {
        Self::row_space(&m.transpose(), tol)
    }

    /// Null space of `m`.
    pub fn kernel(m: &Matrix<T>, tol: Tol) -> Self {
        let ker = m.kernel_basis(tol);
        Self::span(m.cols(), &ker, tol).expect("kernel vectors have matching length")
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn tol(&self) -> Tol {
        self.tol
    }

    pub fn basis(&self) -> &Matrix<T> {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<T>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Re-reduces the stored basis; a fixed point for canonical input.
    pub fn canonicalize(&self) -> Self {
        Self::row_space(&self.basis, self.tol)
    }

    fn joint_tol(&self, other: &Self) -> Tol {
        Tol(self.tol.0.max(other.tol.0))
    }

    fn check_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: other.ambient,
            });
        }
        Ok(())
    }

    /// Coordinates in the canonical basis, or `None` if `v` is outside.
    pub fn coordinates(&self, v: &[T]) -> Option<Vec<T>> {
        if v.len() != self.ambient {
            return None;
        }
        let c: Vec<T> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.combine(&c);
        if is_zero_vec(&sub_vec(v, &back), self.tol) {
            Some(c)
        } else {
            None
        }
    }

    /// Linear combination of the basis rows.
    pub fn combine(&self, coeffs: &[T]) -> Vec<T> {
        assert_eq!(coeffs.len(), self.dim());
        let mut out = vec![T::zero(); self.ambient];
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(self.basis.row(i)) {
                *o = o.clone() + c.clone() * b.clone();
            }
        }
        out
    }

    pub fn contains(&self, v: &[T]) -> bool {
        self.coordinates(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.basis.row_vecs().iter().all(|v| other.contains(v))
    }

    /// First basis vector of `self` not contained in `other`.
    pub fn escape_witness(&self, other: &Self) -> Option<Vec<T>> {
        self.basis.row_vecs().into_iter().find(|v| !other.contains(v))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        Ok(Self::row_space(
            &self.basis.vstack(&other.basis),
            self.joint_tol(other),
        ))
    }

    /// Covectors vanishing on `self`.
    pub fn annihilator(&self) -> Self {
        Self::kernel(&self.basis, self.tol)
    }

    pub fn intersect(&self, other: &Self) -> Result<Self> {
        self.check_ambient(other)?;
        let tol = self.joint_tol(other);
        let both = self.annihilator().sum(&other.annihilator())?;
        let mut out = both.annihilator();
        out.tol = tol;
        Ok(out)
    }

    pub fn intersect_all(spaces: &[Self]) -> Result<Self> {
        let mut it = spaces.iter();
        let mut acc = it.next().expect("intersect_all needs one subspace").clone();
        for s in it {
            acc = acc.intersect(s)?;
        }
        Ok(acc)
    }

    /// `{v : L v ∈ T}` for `L: ℝⁿ → ℝ^ambient(T)`.
    pub fn preimage(l: &Matrix<T>, t: &Self) -> Result<Self> {
        if l.rows() != t.ambient {
            return Err(Error::DimensionMismatch {
                expected: t.ambient,
                found: l.rows(),
            });
        }
        let n = t.annihilator();
        if n.dim() == 0 {
            return Ok(Self::full(l.cols(), t.tol));
        }
        Ok(Self::kernel(&n.basis.mul(l), t.tol))
    }

    /// `L(self)`.
    pub fn map(&self, l: &Matrix<T>) -> Result<Self> {
        if l.cols() != self.ambient {
            return Err(Error::DimensionMismatch {
                expected: self.ambient,
                found: l.cols(),
            });
        }
        if self.dim() == 0 {
            return Ok(Self::zero(l.rows(), self.tol));
        }
        Ok(Self::image(&l.mul(&self.basis.transpose()), self.tol))
    }

    /// `self ⊕ … ⊕ self` (`k` copies) in `ℝ^{k·ambient}`.
    pub fn power(&self, k: usize) -> Self {
        let blocks = vec![self.basis.clone(); k];
        Self::row_space(&Matrix::block_diag(&blocks), self.tol)
    }

    /// Deterministic complement and projection for `V/self`.
    pub fn quotient(&self) -> Quotient<T> {
        let free: Vec<usize> = (0..self.ambient)
            .filter(|j| !self.pivots.contains(j))
            .collect();
        let complement = free.iter().map(|&j| unit(self.ambient, j)).collect();
        let projection = Matrix::from_fn(free.len(), self.ambient, |r, c| {
            let j = free[r];
            if c == j {
                return T::one();
            }
            match self.pivots.iter().position(|&p| p == c) {
                Some(i) => -self.basis[(i, j)].clone(),
                None => T::zero(),
            }
        });
        Quotient {
            free_columns: free,
            complement,
            projection,
        }
    }

    /// Exact basis equality, or entrywise agreement within the joint tolerance.
    pub fn same_as(&self, other: &Self) -> bool {
        self.ambient == other.ambient
            && self.pivots == other.pivots
            && self.basis.approx_eq(&other.basis, self.joint_tol(other))
    }

    pub fn with_tol(mut self, tol: Tol) -> Self {
        self.tol = tol;
        self
    }

    pub fn render(&self) -> Vec<Vec<String>> {
        self.basis.render_rows()
    }
}

impl<T: Field> PartialEq for Subspace<T> {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

/// Complement basis and projection onto complement coordinates.
#[derive(Clone, Debug)]
pub struct Quotient<T> {
    /// Coordinates kept by the projection.
    pub free_columns: Vec<usize>,
    pub complement: Vec<Vec<T>>,
    pub projection: Matrix<T>,
}

impl<T: Field> Quotient<T> {
    pub fn dim(&self) -> usize {
        self.free_columns.len()
    }

    /// Lift of quotient coordinates through the complement.
    pub fn lift(&self) -> Matrix<T> {
        Matrix::from_fn(self.projection.cols(), self.dim(), |i, j| {
            if self.free_columns[j] == i {
                T::one()
            } else {
                T::zero()
            }
        })
    }
}

/// A linear map defined on a subspace through generator pairs `(v, image)`.
///
/// Returns the matrix acting on canonical-basis coordinates of `domain`.
/// Fails if the generators miss part of the domain or assign conflicting images.
pub fn map_from_generators<T: Field>(
    domain: &Subspace<T>,
    pairs: &[(Vec<T>, Vec<T>)],
    codomain: usize,
) -> Result<Matrix<T>> {
    let tol = domain.tol();
    let mut coords = Vec::with_capacity(pairs.len());
    let mut images = Vec::with_capacity(pairs.len());
    for (v, w) in pairs {
        if w.len() != codomain {
            return Err(Error::DimensionMismatch {
                expected: codomain,
                found: w.len(),
            });
        }
        let c = domain
            .coordinates(v)
            .ok_or_else(|| Error::NotInDomain(crate::scalar::Rendered(v).to_string()))?;
        coords.push(c);
        images.push(w.clone());
    }
    let a = Matrix::from_rows(domain.dim(), &coords)?;
    let b = Matrix::from_rows(codomain, &images)?;
    if domain.dim() == 0 {
        return Ok(Matrix::zeros(codomain, 0));
    }
    Ok(a.solve(&b, tol)?.transpose())
}

/// Coordinate pairing helper used throughout: `α(v)`.
pub fn pair<T: Field>(alpha: &[T], v: &[T]) -> T {
    dot(alpha, v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{qi, Q};

    fn q(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| qi(x)).collect()
    }

    fn span(amb: usize, vs: &[&[i64]]) -> Subspace<Q> {
        let vs: Vec<Vec<Q>> = vs.iter().map(|v| q(v)).collect();
        Subspace::span(amb, &vs, Tol::EXACT).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        let s = span(2, &[&[1, 0], &[2, 0]]);
        assert_eq!(s.dim(), 1);
        assert_eq!(s.basis_vecs(), vec![q(&[1, 0])]);
        assert_eq!(span(3, &[]).dim(), 0);
        let t = span(3, &[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]);
        assert_eq!(t.dim(), 2);
        assert_eq!(t.canonicalize(), t);
        assert!(Subspace::<Q>::span(3, &[q(&[1, 0])], Tol::EXACT).is_err());
    }

    #[test]
    fn intersect_examples() {
        let a = span(3, &[&[1, 0, 0], &[0, 1, 0]]);
        let b = span(3, &[&[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(a.intersect(&b).unwrap(), span(3, &[&[0, 1, 0]]));
        assert_eq!(a.intersect(&a).unwrap(), a);
        let p = span(4, &[&[1, 2, 0, 1], &[0, 1, 3, 1]]);
        let r = span(4, &[&[2, 0, 1, 5], &[1, 1, 1, 0]]);
        assert_eq!(p.sum(&r).unwrap().dim(), 4);
        assert_eq!(p.intersect(&r).unwrap().dim(), 0);
        assert!(a.intersect(&span(2, &[])).is_err());
    }

    #[test]
    fn annihilator_examples() {
        let w = span(3, &[&[1, 0, 0]]);
        assert_eq!(w.annihilator(), span(3, &[&[0, 1, 0], &[0, 0, 1]]));
        assert!(span(3, &[]).annihilator().is_full());
        assert!(Subspace::<Q>::full(3, Tol::EXACT).annihilator().is_zero());
    }

    #[test]
    fn preimage_examples() {
        let t = span(3, &[&[1, 2, 3]]);
        assert_eq!(Subspace::preimage(&Matrix::identity(3), &t).unwrap(), t);
        assert!(Subspace::preimage(&Matrix::<Q>::zeros(3, 3), &t)
            .unwrap()
            .is_full());
        let proj = Matrix::<Q>::from_i64(2, 3, &[1, 0, 0, 0, 1, 0]);
        let e1 = span(2, &[&[1, 0]]);
        let pre = Subspace::preimage(&proj, &e1).unwrap();
        assert_eq!(pre.dim(), 2);
        assert!(Subspace::kernel(&proj, Tol::EXACT).is_subspace_of(&pre));
    }

    #[test]
    fn quotient_examples() {
        let z = span(3, &[]).quotient();
        assert_eq!(z.projection, Matrix::identity(3));
        let f = Subspace::<Q>::full(3, Tol::EXACT).quotient();
        assert_eq!(f.dim(), 0);
        let w = span(3, &[&[1, 1, 0]]);
        let qw = w.quotient();
        assert_eq!(qw.dim(), 2);
        assert!(qw.projection.mul_vec(&q(&[1, 1, 0])).iter().all(|v| *v == qi(0)));
        assert_eq!(Subspace::kernel(&qw.projection, Tol::EXACT), w);
        assert_eq!(qw.projection.mul(&qw.lift()), Matrix::identity(2));
    }

    #[test]
    fn generators_define_maps() {
        let d = span(3, &[&[1, 0, 1], &[0, 1, 0]]);
        let pairs = vec![
            (q(&[1, 1, 1]), q(&[2])),
            (q(&[0, 2, 0]), q(&[4])),
            (q(&[1, 0, 1]), q(&[0])),
        ];
        let m = map_from_generators(&d, &pairs, 1).unwrap();
        assert_eq!(m, Matrix::from_i64(1, 2, &[0, 2]));
        let bad = vec![(q(&[1, 0, 1]), q(&[1])), (q(&[2, 0, 2]), q(&[1]))];
        assert!(map_from_generators(&d, &bad, 1).is_err());
        let outside = vec![(q(&[1, 0, 0]), q(&[1]))];
        assert!(matches!(
            map_from_generators(&d, &outside, 1),
            Err(Error::NotInDomain(_))
        ));
    }
}
