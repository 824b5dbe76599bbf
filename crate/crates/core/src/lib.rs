//! Verified enclosures of matrix inverses via hyper-power interval
//! iterations.
//!
//! The crate computes interval matrices that are guaranteed to contain the
//! inverse of a given nonsingular matrix. A point iterate (the midpoint
//! matrix) drives convergence while interval arithmetic with outward
//! rounding captures every rounding error, so the entrywise widths are
//! rigorous error bounds. Iterations of any order are available; the
//! featured sixth-order stepper evaluates its residual polynomial in a
//! factored form that needs six point-cost matrix products per step instead
//! of the eight used by the plain Horner arrangement.
//!
//! Three scalar modes share one implementation: hardware `f64`,
//! arbitrary-precision binary floats, and exact rationals (the latter doubles
//! as the testing oracle). A cost model compares methods by CPU-time ratios,
//! and a small report layer renders runs as text or JSON.

pub mod efficiency;
pub mod error;
pub mod hyperpower;
pub mod interval;
pub mod matrix;
mod parallel;
pub mod render;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use interval::Interval;
pub use matrix::{spectral_radius_nonneg, IntervalMatrix, NormKind, PointMatrix};
pub use num_rational::BigRational;
pub use scalar::{BigF, Precision, Round, Scalar, ScalarMode};
