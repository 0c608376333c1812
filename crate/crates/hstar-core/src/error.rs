use alloc::string::String;

use num_bigint::BigInt;

/// Errors shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// The matrix has determinant zero where a nonsingular one is required.
    #[error("singular matrix")]
    SingularMatrix,

    /// Two values that must agree on dimension do not.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// Malformed matrix data (ragged rows, empty, ...).
    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    /// A compressed normal-form description violates its constraints.
    #[error("invalid form: {0}")]
    InvalidForm(String),

    /// A coefficient sequence is not a valid delta-vector.
    #[error("invalid delta-vector: {0}")]
    InvalidDeltaVector(String),

    /// A congruence index lies outside the bounds of its normal form.
    #[error("congruence index out of bounds")]
    IndexOutOfBounds,

    /// The brute-force oracle would have to scan more candidate points than
    /// the configured cap allows.
    #[error("point budget exceeded: {candidates} candidates > budget {budget}")]
    BudgetExceeded { candidates: u128, budget: u128 },

    /// The mass of the requested delta-vector does not match the determinant.
    #[error("determinant mismatch: delta-vector has mass {mass}, expected {det}")]
    DetMismatch { det: u64, mass: BigInt },

    /// Realizability is only decided for total mass at most 4.
    #[error("unsupported mass {mass}: realizability is decided for mass <= 4")]
    UnsupportedMass { mass: BigInt },
}
