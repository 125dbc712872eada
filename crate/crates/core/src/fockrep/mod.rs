//! Truncated Fock-space representations of the even spheres.

mod checks;
mod sigma;
mod space;

pub use checks::{lowering_coefficient_check, multi_indices, psi_gram, psi_normalization, verify_relations};
pub use sigma::{char_trace, q_pochhammer, represent, sigma1, Sigma1};
pub use space::{SparseOperator, TailBound, TruncatedFock};
