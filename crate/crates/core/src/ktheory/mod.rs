//! Idempotents over the odd quantum plane and the even sphere, and their
//! pairings.

mod classical;
mod matrix;
mod projector;

pub use classical::{
    classical_g, sphere_point, sphere_residual, ClassicalProjector, ComplexMatrix, SPHERE_TOLERANCE,
};
pub use matrix::NCMatrix;
pub use projector::{
    build_e, build_g, check_defect, check_lemma_m, defect_rhs, defect_scalar, expected_trace,
    idempotency_residual, matrix_trace, pair_charge, pair_charge_entrywise, pair_epsilon, phi_n,
    project_to_sphere, DiagonalScaler,
};
