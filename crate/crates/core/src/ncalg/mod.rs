//! Noncommutative polynomials over the free *-algebra on a preset's
//! generators, reduced by an oriented copy of the defining relations.
//!
//! Normal words are `t^p a_1*^{m_1} a_1^{k_1} ... a_n*^{m_n} a_n^{k_n}`; in the
//! even sphere additionally `m_n k_n = 0`.

mod algebra;
mod confluence;
mod generator;
mod poly;
mod rewrite;

pub use algebra::Algebra;
pub use confluence::{check_local_confluence, Ambiguity, ConfluenceReport};
pub use generator::{Family, Generator, Preset, Word};
pub use poly::{FreePoly, NCPoly};
pub use rewrite::{step_budget, RewriteSystem, Rhs, Strategy};
