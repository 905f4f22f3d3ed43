//! Sign conventions and the global sign ledger.

use std::fmt;

use serde::Serialize;

use crate::matrix::Matrix;
use crate::scalar::{Field, Tol};

/// Which slot of ω the flat map contracts.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FlatConvention {
    /// `ω♭(X) = ω(X, ·)`
    FirstSlot,
    /// `ω♭(X) = ω(·, X)`
    SecondSlot,
}

/// Sign of the coadjoint operator relative to the transpose of `ad`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoadjointConvention {
    /// `(ad*_ξ ν)(η) = ν([ξ, η])`
    Transpose,
    /// `(ad*_ξ ν)(η) = −ν([ξ, η])`, the infinitesimal coadjoint action.
    NegTranspose,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Conventions {
    pub flat: FlatConvention,
    pub coadjoint: CoadjointConvention,
}

impl Conventions {
    /// Interior product flat map with the plain transpose of `ad`.
    pub const INTERIOR: Conventions = Conventions {
        flat: FlatConvention::FirstSlot,
        coadjoint: CoadjointConvention::Transpose,
    };

    /// Second-slot flat map with the coadjoint action. Under this pair every
    /// cross-construction comparison in the crate holds with σ = +1.
    pub const COADJOINT: Conventions = Conventions {
        flat: FlatConvention::SecondSlot,
        coadjoint: CoadjointConvention::NegTranspose,
    };

    /// `c` with `ω♭(X)(Y) = c·ω(X, Y)`.
    pub fn flat_sign(self) -> Sign {
        match self.flat {
            FlatConvention::FirstSlot => Sign::Plus,
            FlatConvention::SecondSlot => Sign::Minus,
        }
    }

    /// `s` with `(ad*_ξ ν)(η) = s·ν([ξ, η])`.
    pub fn coadjoint_sign(self) -> Sign {
        match self.coadjoint {
            CoadjointConvention::Transpose => Sign::Plus,
            CoadjointConvention::NegTranspose => Sign::Minus,
        }
    }

    pub fn name(self) -> &'static str {
        match (self.flat, self.coadjoint) {
            (FlatConvention::FirstSlot, CoadjointConvention::Transpose) => "interior",
            (FlatConvention::SecondSlot, CoadjointConvention::NegTranspose) => "coadjoint",
            (FlatConvention::FirstSlot, CoadjointConvention::NegTranspose) => "first-slot/neg-transpose",
            (FlatConvention::SecondSlot, CoadjointConvention::Transpose) => "second-slot/transpose",
        }
    }

    pub fn by_name(name: &str) -> Option<Self> {
        match name {
            "interior" => Some(Self::INTERIOR),
            "coadjoint" => Some(Self::COADJOINT),
            _ => None,
        }
    }

    pub fn describe_flat(self) -> &'static str {
        match self.flat {
            FlatConvention::FirstSlot => "flat(X) = omega(X, .)",
            FlatConvention::SecondSlot => "flat(X) = omega(., X)",
        }
    }

    pub fn describe_coadjoint(self) -> &'static str {
        match self.coadjoint {
            CoadjointConvention::Transpose => "(ad*_x v)(y) = v([x, y])",
            CoadjointConvention::NegTranspose => "(ad*_x v)(y) = -v([x, y])",
        }
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Self::COADJOINT
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Sign {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl Sign {
    pub fn apply<T: Field>(self, v: T) -> T {
        match self {
            Sign::Plus => v,
            Sign::Minus => -v,
        }
    }

    pub fn value<T: Field>(self) -> T {
        self.apply(T::one())
    }

    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// How two matrices relate up to sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Relation {
    /// Both zero: consistent with either sign.
    Both,
    Equal,
    Negated,
    Unrelated,
}

impl Relation {
    pub fn of<T: Field>(a: &Matrix<T>, b: &Matrix<T>, tol: Tol) -> Relation {
        if a.rows() != b.rows() || a.cols() != b.cols() {
            return Relation::Unrelated;
        }
        let eq = a.approx_eq(b, tol);
        let neg = a.approx_eq(&b.neg(), tol);
        match (eq, neg) {
            (true, true) => Relation::Both,
            (true, false) => Relation::Equal,
            (false, true) => Relation::Negated,
            (false, false) => Relation::Unrelated,
        }
    }

    pub fn admits(self, sign: Sign) -> bool {
        match self {
            Relation::Both => true,
            Relation::Equal => sign == Sign::Plus,
            Relation::Negated => sign == Sign::Minus,
            Relation::Unrelated => false,
        }
    }
}

/// Records one global sign σ: fixed by the first informative comparison and
/// required to agree with every later one.
#[derive(Clone, Debug, Default)]
pub struct SignLedger {
    sigma: Option<Sign>,
    fixed_by: Option<String>,
    entries: Vec<(String, Relation)>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LedgerError {
    Unrelated { label: String },
    Conflict { label: String, sigma: Sign, fixed_by: String },
}

impl fmt::Display for LedgerError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LedgerError::Unrelated { label } => {
                write!(f, "{label}: maps differ by neither sign")
            }
            LedgerError::Conflict {
                label,
                sigma,
                fixed_by,
            } => write!(
                f,
                "{label}: needs the opposite of sigma = {sigma} fixed by {fixed_by}"
            ),
        }
    }
}

impl SignLedger {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn sigma(&self) -> Option<Sign> {
        self.sigma
    }

    pub fn fixed_by(&self) -> Option<&str> {
        self.fixed_by.as_deref()
    }

    pub fn observations(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(String, Relation)] {
        &self.entries
    }

    pub fn observe(&mut self, label: &str, rel: Relation) -> Result<(), LedgerError> {
        self.entries.push((label.to_string(), rel));
        match rel {
            Relation::Unrelated => Err(LedgerError::Unrelated {
                label: label.to_string(),
            }),
            Relation::Both => Ok(()),
            Relation::Equal | Relation::Negated => {
                let s = if rel == Relation::Equal {
                    Sign::Plus
                } else {
                    Sign::Minus
                };
                match self.sigma {
                    None => {
                        self.sigma = Some(s);
                        self.fixed_by = Some(label.to_string());
                        Ok(())
                    }
                    Some(sigma) if sigma == s => Ok(()),
                    Some(sigma) => Err(LedgerError::Conflict {
                        label: label.to_string(),
                        sigma,
                        fixed_by: self.fixed_by.clone().unwrap_or_default(),
                    }),
                }
            }
        }
    }

    pub fn compare<T: Field>(
        &mut self,
        label: &str,
        a: &Matrix<T>,
        b: &Matrix<T>,
        tol: Tol,
    ) -> Result<(), LedgerError> {
        self.observe(label, Relation::of(a, b, tol))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Q;

    #[test]
    fn ledger_fixes_sign_once() {
        let a = Matrix::<Q>::from_i64(1, 2, &[1, 2]);
        let z = Matrix::<Q>::zeros(1, 2);
        let mut l = SignLedger::new();
        l.compare("zero", &z, &z, Tol::EXACT).unwrap();
        assert_eq!(l.sigma(), None);
        l.compare("first", &a, &a.neg(), Tol::EXACT).unwrap();
        assert_eq!(l.sigma(), Some(Sign::Minus));
        assert!(matches!(
            l.compare("second", &a, &a, Tol::EXACT),
            Err(LedgerError::Conflict { .. })
        ));
        let b = Matrix::<Q>::from_i64(1, 2, &[1, 3]);
        assert!(matches!(
            l.compare("third", &a, &b, Tol::EXACT),
            Err(LedgerError::Unrelated { .. })
        ));
    }

    #[test]
    fn named_conventions() {
        assert_eq!(Conventions::default(), Conventions::COADJOINT);
        assert_eq!(Conventions::INTERIOR.flat_sign(), Sign::Plus);
        assert_eq!(Conventions::COADJOINT.coadjoint_sign(), Sign::Minus);
        assert_eq!(Conventions::by_name("interior"), Some(Conventions::INTERIOR));
        assert_eq!(Sign::Minus * Sign::Minus, Sign::Plus);
    }
}
