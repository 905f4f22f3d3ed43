//! Polysymplectic and k-poly-Poisson structures at a point.
//!
//! The crate verifies the pointwise axioms of k-poly-Poisson data, builds the
//! standard examples (covelocity spaces, Dirac-type subspaces, products,
//! Whitney sums of Lie algebroid duals, `(g*)ᵏ`) and runs the polysymplectic
//! reduction procedure, comparing independent constructions against each
//! other. Linear algebra runs either in `f64` or exactly over the rationals.

pub mod cli;
pub mod conventions;
pub mod error;
pub mod liepoisson;
pub mod matrix;
pub mod polypoisson;
pub mod polysymplectic;
pub mod reduction;
pub mod sampling;
pub mod scalar;
pub mod subspaces;

pub use conventions::{Conventions, Relation, Sign, SignLedger};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use polypoisson::{from_polysymplectic, PolyPoissonPoint};
pub use polysymplectic::PolyForm;
pub use scalar::{Field, Tol, Q};
pub use subspaces::Subspace;
