//! Affine sections on `ℝᴺ`: functions, vector fields and covector tuples
//! whose coefficients have degree at most one in the coordinates.

use crate::error::{Error, Result};
use crate::matrix::{add_vec, dot, sub_vec, Matrix};
use crate::scalar::{Field, Tol};

/// `f(x) = c + a·x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineFunction<T> {
    pub constant: T,
    pub linear: Vec<T>,
}

/// `X(x) = v + A x`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineField<T> {
    pub constant: Vec<T>,
    pub linear: Matrix<T>,
}

/// `α(x) = c + B x`, so `α_j(x) = c_j + Σ_l B_{jl} x_l`.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCovector<T> {
    pub constant: Vec<T>,
    pub linear: Matrix<T>,
}

/// k affine covectors.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineTuple<T> {
    pub parts: Vec<AffineCovector<T>>,
}

impl<T: Field> AffineField<T> {
    pub fn linear(a: Matrix<T>) -> Self {
        AffineField {
            constant: vec![T::zero(); a.rows()],
            linear: a,
        }
    }

    /// `[X, Y] = J_Y X − J_X Y`.
    pub fn commutator(&self, other: &Self) -> Self {
        let (v, a) = (&self.constant, &self.linear);
        let (w, b) = (&other.constant, &other.linear);
        AffineField {
            constant: sub_vec(&b.mul_vec(v), &a.mul_vec(w)),
            linear: b.mul(a).sub(&a.mul(b)),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AffineField {
            constant: sub_vec(&self.constant, &other.constant),
            linear: self.linear.sub(&other.linear),
        }
    }

    pub fn is_zero(&self, tol: Tol) -> bool {
        self.constant.iter().all(|v| v.negligible(tol)) && self.linear.is_zero_within(tol)
    }
}

impl<T: Field> AffineCovector<T> {
    pub fn constant(c: Vec<T>) -> Self {
        let n = c.len();
        AffineCovector {
            constant: c,
            linear: Matrix::zeros(n, n),
        }
    }

    pub fn is_constant(&self, tol: Tol) -> bool {
        self.linear.is_zero_within(tol)
    }

    /// `(L_X α)_j = Xⁱ ∂ᵢα_j + α_i ∂_j Xⁱ`.
    pub fn lie_derivative(&self, x: &AffineField<T>) -> Self {
        let (c, b) = (&self.constant, &self.linear);
        let (v, a) = (&x.constant, &x.linear);
        let at = a.transpose();
        AffineCovector {
            constant: add_vec(&b.mul_vec(v), &at.mul_vec(c)),
            linear: b.mul(a).add(&at.mul(b)),
        }
    }

    /// `α(X)`, which must stay affine.
    pub fn pair(&self, x: &AffineField<T>, tol: Tol) -> Result<AffineFunction<T>> {
        let (c, b) = (&self.constant, &self.linear);
        let (v, a) = (&x.constant, &x.linear);
        let quad = b.transpose().mul(a);
        if !quad.add(&quad.transpose()).is_zero_within(tol) {
            return Err(Error::DegreeOverflow("pairing of a covector with a field".into()));
        }
        Ok(AffineFunction {
            constant: dot(c, v),
            linear: add_vec(&b.transpose().mul_vec(v), &a.transpose().mul_vec(c)),
        })
    }

    pub fn add(&self, o: &Self) -> Self {
        AffineCovector {
            constant: add_vec(&self.constant, &o.constant),
            linear: self.linear.add(&o.linear),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AffineCovector {
            constant: sub_vec(&self.constant, &o.constant),
            linear: self.linear.sub(&o.linear),
        }
    }
}

impl<T: Field> AffineFunction<T> {
    /// `df`, a constant covector.
    pub fn differential(&self) -> AffineCovector<T> {
        AffineCovector::constant(self.linear.clone())
    }
}

impl<T: Field> AffineTuple<T> {
    pub fn constant(parts: Vec<Vec<T>>) -> Self {
        AffineTuple {
            parts: parts.into_iter().map(AffineCovector::constant).collect(),
        }
    }

    pub fn k(&self) -> usize {
        self.parts.len()
    }

    pub fn lie_derivative(&self, x: &AffineField<T>) -> Self {
        AffineTuple {
            parts: self.parts.iter().map(|p| p.lie_derivative(x)).collect(),
        }
    }

    /// `ᾱ(X)`, an ℝᵏ-valued affine function.
    pub fn pair(&self, x: &AffineField<T>, tol: Tol) -> Result<Vec<AffineFunction<T>>> {
        self.parts.iter().map(|p| p.pair(x, tol)).collect()
    }

    pub fn differential(fs: &[AffineFunction<T>]) -> Self {
        AffineTuple {
            parts: fs.iter().map(|f| f.differential()).collect(),
        }
    }

    pub fn add(&self, o: &Self) -> Self {
        AffineTuple {
            parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        AffineTuple {
            parts: self.parts.iter().zip(&o.parts).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn is_constant(&self, tol: Tol) -> bool {
        self.parts.iter().all(|p| p.is_constant(tol))
    }

    /// Concatenated constant parts, as a point of `ℝ^{k·N}`.
    pub fn constant_tuple(&self) -> Vec<T> {
        self.parts.iter().flat_map(|p| p.constant.iter().cloned()).collect()
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
    fn commutator_of_rotation_fields() {
        // X = -y∂x + x∂y, Y = ∂x: [X, Y] = -∂y
        let x = AffineField::linear(Matrix::<Q>::from_i64(2, 2, &[0, -1, 1, 0]));
        let y = AffineField {
            constant: q(&[1, 0]),
            linear: Matrix::zeros(2, 2),
        };
        let c = x.commutator(&y);
        assert_eq!(c.constant, q(&[0, -1]));
        assert!(c.linear.is_zero_within(Tol::EXACT));
    }

    #[test]
    fn lie_derivative_of_exact_form() {
        // L_X d(x) = d(X x) for X = A x
        let a = Matrix::<Q>::from_i64(2, 2, &[2, 3, 5, 7]);
        let x = AffineField::linear(a.clone());
        let dx = AffineCovector::constant(q(&[1, 0]));
        let l = dx.lie_derivative(&x);
        assert_eq!(l.constant, q(&[2, 3]));
        assert!(l.is_constant(Tol::EXACT));
    }

    #[test]
    fn pairing_degree_is_guarded() {
        let x = AffineField::linear(Matrix::<Q>::identity(2));
        let lin = AffineCovector {
            constant: q(&[0, 0]),
            linear: Matrix::identity(2),
        };
        assert!(matches!(lin.pair(&x, Tol::EXACT), Err(Error::DegreeOverflow(_))));
        let f = AffineCovector::constant(q(&[1, 2])).pair(&x, Tol::EXACT).unwrap();
        assert_eq!(f.linear, q(&[1, 2]));
        assert_eq!(f.differential().constant, q(&[1, 2]));
    }
}
