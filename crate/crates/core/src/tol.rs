//! Tolerance ladder shared by the whole crate.
//!
//! Each stage consumes the numerical error of the stage before it, so the
//! thresholds widen as results are derived from other results.

/// Default axiom validation tolerance.
pub const VALIDATION: f64 = 1e-9;

/// Residual threshold for direct constructions (slices, quotients, unitaries).
pub const CONSTRUCTION: f64 = 1e-10;

/// Threshold under which a Haar criterion counts as satisfied.
pub const CLASSIFICATION: f64 = 1e-8;

/// Above this a Haar criterion counts as violated; between the two values the
/// verdict is ambiguous and reported as an error.
pub const CROSS_CHECK: f64 = 1e-6;

/// Smallest admissible eigenvalue of a Gram matrix that should be PSD.
pub const POSITIVITY: f64 = 1e-9;

/// Solutions closer than this in sup norm are the same idempotent.
pub const DEDUP: f64 = 1e-7;

/// Residual accepted from the idempotent solver.
pub const NEWTON: f64 = 1e-10;

/// Relative singular value cutoff for ranks and null spaces.
pub const RANK: f64 = 1e-8;
