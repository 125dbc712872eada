//! Commutative coordinate rings with Poisson brackets.

mod chart;
mod classical;
mod structure;
mod suspension;

pub use chart::{determinant, pfaffian_recursive, structure_matrix, StructureMatrixPoint};
pub use classical::{ClassicalPoly, Monomial, Var};
pub use structure::{JacobiReport, PoissonStructure};
pub use suspension::{phi_pushforward, verify_poisson_map, verify_sphere_constraint, PairResidual};
