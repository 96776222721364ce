//! Generalized-means difference sequence spaces `X(r, s, t; Δ^(m))` for
//! `X ∈ {c0, c, l∞}` on finite truncations.
//!
//! Operators are lower-triangular windows tagged with their tail behaviour.
//! Everything is generic over a [`Scalar`] backend: exact [`Rational`] or `f64`.

// Index loops mirror the subscripted formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod bases;
pub mod compactness;
pub mod duals;
pub mod error;
pub mod limits;
pub mod matclass;
pub mod operators;
pub mod params;
pub mod scalar;
pub mod toeplitz;
pub mod triangle;
pub mod window;

pub use bases::{basis, basis_vector, reconstruct, BasisIndex, BasisVector, Reconstruction};
pub use compactness::{
    associate_matrix, chi_norm, compactness_verdict, linfty_source_autocompact_check,
    operator_norm, AssociateMatrix, AutoCompactOutcome, AutoCompactReport, ChiEstimate, Provenance,
};
pub use duals::{
    alpha_dual_matrix, associate_row, dual_membership, gamma_dual_matrix, w_matrix, AssociateRow,
    Associates, DualKind, WMatrix,
};
pub use error::{Error, Result, Violation};
pub use limits::{
    EstimateKind, EstimateStatus, LimitEstimate, Observed, ObservedRows, Outcome, Trend,
    TrendConfig, Verdict,
};
pub use matclass::{
    classify_map, eval_condition, required_conditions, transformed_rows, w_tensor, ClassReport,
    ConditionId, ConditionResult, TransformedSystem,
};
pub use operators::{
    a_window, build_a, build_b, build_delta, build_delta_inverse, build_s, build_t, build_t_kernel,
    d_coeffs, inverse_transform, space_norm, t_window, transform, NormReport,
};
pub use params::{preset, validate_params, ParameterTriple, PresetSpec, RawParameters, SeqSpec};
pub use scalar::{Backend, Rational, Scalar, DEFAULT_TOLERANCE};
pub use toeplitz::{det_oracle_d, toeplitz_inverse_coeffs, CoeffWindow};
pub use triangle::{apply, compose, invert_triangle, TriangleMatrix};
pub use window::{MatrixTail, MatrixWindow, RowGenerator, SeqTail, SequenceWindow, SpaceLabel};
