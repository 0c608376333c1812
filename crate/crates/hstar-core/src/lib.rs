//! Exact computation and classification of h*-vectors (delta-vectors) of
//! lattice simplices.
//!
//! A full-dimensional lattice simplex with one vertex at the origin is
//! described by the square integer matrix whose rows are its remaining
//! vertices.  Two such simplices are unimodularly equivalent exactly when
//! their matrices have the same (column-style) Hermite normal form, so the
//! normal form is a canonical representative of the equivalence class and
//! everything here is keyed on it:
//!
//! * [`matrix`] — arbitrary-precision square integer matrices, fraction-free
//!   determinants, and the [`Simplex`] wrapper.
//! * [`hnf`] — the Hermite normal form itself (lower triangular, positive
//!   diagonal, off-diagonal entries reduced modulo the row's diagonal).
//! * [`delta`] — the delta-vector engine: per congruence class of barycentric
//!   denominators, back-substitution in exact rationals yields the first
//!   dilation in which the class contributes an interior point, and the
//!   multiset of those values is the delta-vector.
//! * [`forms`] — compressed descriptions of the normal forms with a single
//!   non-trivial row, or with two rows of diagonal 2, together with their
//!   closed-form delta-vectors.
//! * [`oracle`] — an independent brute-force ground truth that counts lattice
//!   points of dilations directly and recovers the delta-vector through the
//!   binomial transform of the Ehrhart counts.
//! * [`enumerate`] — streams of all normal forms with a given dimension and
//!   determinant.
//! * [`classify`](mod@classify) — inverse solvers: all normal forms
//!   realizing a given delta-vector for determinants 2–4, and the
//!   realizability decision (with witness construction) for delta-vectors of
//!   total mass at most 4.
//!
//! All arithmetic is exact; there are no floating-point operations anywhere.
//! Every value is immutable after construction and every operation is a pure
//! function, so the whole crate is safe to use concurrently.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod delta;
pub mod enumerate;
mod error;
pub mod forms;
pub mod hnf;
pub mod matrix;
pub mod oracle;

pub use classify::{
    classify, classify_detailed, realizable, solve_vol2, solve_vol3, solve_vol4_one_row,
    solve_vol4_two_row, DecisionMethod, RealizabilityVerdict, RefutationReason, SolutionFamily,
    SolutionForm, SolutionRecord,
};
pub use delta::{
    congruence_indices, delta_all_dminus1, delta_from_hnf, s_value, CongruenceIndex, DeltaVector,
};
pub use enumerate::{enumerate_hnf, enumeration_size, FormFilter, HnfEnumSpec};
pub use error::Error;
pub use forms::{OneRowForm, SymmetryConditions, TwoRowForm};
pub use hnf::{hermite_normal_form, unimodularly_equivalent, HnfMatrix};
pub use matrix::{IntMatrix, Simplex};
pub use oracle::{
    check_reciprocity, check_reciprocity_with, count_points, count_points_with, delta_bruteforce,
    delta_bruteforce_with, PointBudget, PointCounter,
};

/// Crate-wide result type.
pub type Result<T> = core::result::Result<T, Error>;
