//! Structures derived from an idempotent state.

mod classify;
mod identities;
mod lattice;
mod quotient;
mod subalgebra;

pub use classify::{
    classify, ideal_residual, is_ideal, is_symmetric, null_space, symmetry_residual, Classification, Witnesses,
};
pub use identities::{
    antipode_invariance, multiplicative_domain_check, omegac_residual, projection_residuals, v_projection,
};
pub use lattice::{build_lattice, order_leq, Lattice, LatticeReport};
pub use quotient::{homogeneous_space_check, quotient_quantum_group, HomogeneousReport, QuotientQG, QuotientReport};
pub use subalgebra::{
    coaction_checks, h_orthogonal_projection, invariant_subalgebra, state_from_subalgebra,
    verify_conditional_expectation, CoactionReport, ExpectationReport, Subalgebra, SubalgebraFlags, Subspace,
};
