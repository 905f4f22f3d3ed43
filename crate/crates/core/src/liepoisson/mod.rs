//! Exact structure-constant constructions: Lie algebras, algebroid point
//! data, fiberwise linear Poisson structures, Whitney sums and `(g*)ᵏ`.

pub mod algebra;
pub mod algebroid;
pub mod gstar;
pub mod sections;

pub use algebra::{JacobiVerdict, LieAlgebra};
pub use algebroid::{is_frame, whitney_point, AlgebroidPointData, StructureVerdict, WhitneyPoint};
pub use gstar::{coadjoint_leaf_match, diagonal_tuple, gstar_k, gstar_k_integrability, IntegrabilityVerdict, LeafMatch};
