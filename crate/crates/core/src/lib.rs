//! Idempotent states on finite quantum groups.
//!
//! A finite quantum group is stored by its structure constants (product,
//! coproduct, star, antipode, counit, Haar state) in a fixed basis of the
//! underlying algebra `A`. On top of that data model the crate provides the
//! convolution algebra of functionals, a multi-start solver for idempotent
//! states, and everything derived from an idempotent state: the expected right
//! invariant subalgebra `L_ω(A)`, Haar classification, quotient quantum
//! subgroups, the idempotent lattice and the coaction checks.
//!
//! In finite dimension the multiplier algebra coincides with `A`, every
//! affiliated element is bounded, and the left and right Haar weights are the
//! same faithful Haar state. None of that machinery needs its own
//! representation here.

#![allow(clippy::needless_range_loop)]

pub mod analysis;
pub mod cayley;
pub mod error;
pub mod gns;
pub mod io;
pub mod linalg;
pub mod qg;
pub mod solver;
pub mod state;
pub mod tensor;
pub mod tol;
pub mod unitary;
pub mod walk;

pub use cayley::CayleyTable;
pub use error::{Error, Result};

pub use gns::{gns, GnsData};
pub use io::{load, BuiltinSpec, QgDoc, Source, StateDoc};
pub use qg::{FiniteQuantumGroup, QgId, ValidationReport};
pub use solver::{solve_idempotents, SolveConfig};
pub use state::{Functional, LinearOperator, State};
pub use unitary::{multiplicative_unitary, MultUnitary};
pub use walk::{cesaro_limit, cesaro_walk};

/// Complex scalar used for every structure constant.
pub type C64 = num_complex::Complex64;
