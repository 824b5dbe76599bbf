//! Exact rational scalars: the testing oracle mode.
//!
//! Field operations are exact and ignore the rounding direction entirely.
//! The one inherently inexact operation is the square root, which returns a
//! certified rational bound in the requested direction.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Round, Scalar};
use crate::error::{Error, Result};

/// Guard bits for rational square-root bounds: the returned bound differs
/// from the true root by at most 2^-128 relative.
const SQRT_SCALE_BITS: usize = 128;

impl Scalar for BigRational {
    type Ctx = ();

    const EXACT: bool = true;

    fn ctx(&self) -> Self::Ctx {}

    fn from_i64(_ctx: &Self::Ctx, v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }

    fn from_rational(_ctx: &Self::Ctx, q: &BigRational, _dir: Round) -> Result<Self> {
        Ok(q.clone())
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn dir_add(&self, rhs: &Self, _dir: Round) -> Result<Self> {
        Ok(self + rhs)
    }

    fn dir_sub(&self, rhs: &Self, _dir: Round) -> Result<Self> {
        Ok(self - rhs)
    }

    fn dir_mul(&self, rhs: &Self, _dir: Round) -> Result<Self> {
        Ok(self * rhs)
    }

    fn dir_div(&self, rhs: &Self, _dir: Round) -> Result<Self> {
        if num_traits::Zero::is_zero(rhs) {
            return Err(Error::DivisionByZero);
        }
        Ok(self / rhs)
    }

    fn dir_sqrt(&self, dir: Round) -> Result<Self> {
        if num_traits::Signed::is_negative(self) {
            return Err(Error::Precondition(format!(
                "sqrt of negative value {self}"
            )));
        }
        Ok(sqrt_bound(self, dir))
    }

    fn neg(&self) -> Self {
        -self
    }

    fn abs(&self) -> Self {
        Signed::abs(self)
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
}

/// A rational bound on sqrt(v) for v >= 0.
///
/// With v = p/q, let t = isqrt(p*q*4^s). Then t/(q*2^s) is a lower bound and
/// (t+1)/(q*2^s) an upper bound; perfect squares are returned exactly.
fn sqrt_bound(v: &BigRational, dir: Round) -> BigRational {
    if num_traits::Zero::is_zero(v) {
        return BigRational::zero();
    }
    let scaled: BigInt = (v.numer() * v.denom()) << (2 * SQRT_SCALE_BITS);
    let t = scaled.sqrt();
    let exact = &t * &t == scaled;
    let den: BigInt = v.denom() << SQRT_SCALE_BITS;
    match dir {
        _ if exact => BigRational::new(t, den),
        Round::Up => BigRational::new(t + 1, den),
        // the floor bound also serves as the nearest approximation
        Round::Down | Round::Nearest => BigRational::new(t, den),
    }
}
