//! Precision-parametric scalar arithmetic with directed rounding.
//!
//! Three scalar kinds implement the [`Scalar`] contract:
//!
//! * `f64` — hardware floats; directed rounding is produced from
//!   round-to-nearest results plus an error-free transformation, so exactly
//!   representable results are returned unchanged and inexact ones are
//!   stepped one ulp in the requested direction.
//! * [`BigF`] — arbitrary-precision binary floats backed by `astro-float`,
//!   rounded at `p` bits in the requested direction.
//! * [`num_rational::BigRational`] — exact rationals; rounding directions
//!   are ignored (except for `dir_sqrt`, which is irrational in general and
//!   returns a certified bound in the requested direction).
//!
//! All values are immutable and never depend on global rounding state.

use core::fmt;

use num_rational::BigRational;

use crate::error::Result;

mod big;
mod hw;
mod rational;

pub use big::{BigF, Precision};

/// Rounding direction for one scalar operation.
///
/// The contract for every binary op `∘`:
/// `dir_op(x, y, Down) <= x ∘ y <= dir_op(x, y, Up)` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Round {
    Down,
    Nearest,
    Up,
}

impl Round {
    /// The opposite direction (used when negation swaps endpoints).
    pub fn flip(self) -> Self {
        match self {
            Round::Down => Round::Up,
            Round::Up => Round::Down,
            Round::Nearest => Round::Nearest,
        }
    }
}

/// Runtime selection of the scalar kind, as configured by a caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScalarMode {
    HardwareFloat,
    BigFloat { precision_bits: usize },
    ExactRational,
}

impl ScalarMode {
    /// Minimum supported big-float precision.
    pub const MIN_BIGFLOAT_BITS: usize = 24;

    pub fn validate(&self) -> Result<()> {
        match self {
            ScalarMode::BigFloat { precision_bits } if *precision_bits < Self::MIN_BIGFLOAT_BITS => {
                Err(crate::error::Error::Precondition(format!(
                    "big-float precision must be at least {} bits, got {}",
                    Self::MIN_BIGFLOAT_BITS,
                    precision_bits
                )))
            }
            _ => Ok(()),
        }
    }
}

impl fmt::Display for ScalarMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScalarMode::HardwareFloat => write!(f, "hardware"),
            ScalarMode::BigFloat { precision_bits } => write!(f, "bigfloat({precision_bits})"),
            ScalarMode::ExactRational => write!(f, "rational"),
        }
    }
}

/// The arithmetic contract every scalar kind provides.
///
/// Values are plain immutable data, safe to share across threads. Binary
/// operations derive any precision context from their operands; explicit
/// context is only needed to create values.
pub trait Scalar:
    Clone + PartialEq + PartialOrd + fmt::Debug + fmt::Display + Send + Sync + Sized + 'static
{
    /// Construction context: `()` except for big floats, which carry their
    /// mantissa precision.
    type Ctx: Clone + fmt::Debug + PartialEq + Send + Sync;

    /// True when arithmetic is exact and rounding directions are no-ops.
    const EXACT: bool;

    fn ctx(&self) -> Self::Ctx;

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;

    /// Convert from an exact rational, rounding in `dir`.
    fn from_rational(ctx: &Self::Ctx, q: &BigRational, dir: Round) -> Result<Self>;

    /// Exact embedding into the rationals. Every finite scalar is a rational.
    fn to_rational(&self) -> BigRational;

    fn dir_add(&self, rhs: &Self, dir: Round) -> Result<Self>;
    fn dir_sub(&self, rhs: &Self, dir: Round) -> Result<Self>;
    fn dir_mul(&self, rhs: &Self, dir: Round) -> Result<Self>;
    fn dir_div(&self, rhs: &Self, dir: Round) -> Result<Self>;

    /// Square root bound in the requested direction. Requires `self >= 0`.
    fn dir_sqrt(&self, dir: Round) -> Result<Self>;

    /// Exact negation.
    fn neg(&self) -> Self;

    /// Exact absolute value.
    fn abs(&self) -> Self;

    fn is_zero(&self) -> bool;

    fn is_negative(&self) -> bool;

    fn is_positive(&self) -> bool {
        !self.is_zero() && !self.is_negative()
    }

    fn zero_like(&self) -> Self {
        Self::from_i64(&self.ctx(), 0)
    }

    fn one_like(&self) -> Self {
        Self::from_i64(&self.ctx(), 1)
    }
}

/// Total-order comparison for finite scalar values.
///
/// Every stored scalar is finite by construction (non-finite results raise
/// errors instead of propagating), so `partial_cmp` never fails.
pub(crate) fn cmp<S: Scalar>(a: &S, b: &S) -> core::cmp::Ordering {
    a.partial_cmp(b)
        .expect("scalar values are finite and totally ordered")
}

pub(crate) fn min_of<S: Scalar>(a: S, b: S) -> S {
    if cmp(&a, &b) == core::cmp::Ordering::Greater {
        b
    } else {
        a
    }
}

pub(crate) fn max_of<S: Scalar>(a: S, b: S) -> S {
    if cmp(&a, &b) == core::cmp::Ordering::Less {
        b
    } else {
        a
    }
}
