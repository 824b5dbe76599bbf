//! Hardware `f64` scalars with software directed rounding.
//!
//! IEEE arithmetic rounds to nearest; the directed result is recovered from
//! the nearest result plus the sign of the rounding error, which the
//! error-free transformations below produce exactly. Exactly representable
//! results are therefore returned unchanged, and inexact ones move a single
//! ulp in the requested direction. No global rounding mode is ever touched.

use core::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::{Round, Scalar};
use crate::error::{Error, Result};

/// Products and quotients smaller than this in magnitude may have rounding
/// errors below the subnormal range, where the error term itself rounds and
/// its sign can no longer be trusted. 2^-969 keeps `ulp(x)` normal.
const EFT_SAFE_MIN: f64 = f64::from_bits(0x0360_0000_0000_0000);

fn overflow(op: &'static str, lhs: f64, rhs: f64) -> Error {
    Error::Overflow {
        op,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
    }
}

/// Move `x` one ulp in `dir`; `Nearest` keeps it.
fn step(x: f64, dir: Round) -> f64 {
    match dir {
        Round::Down => x.next_down(),
        Round::Up => x.next_up(),
        Round::Nearest => x,
    }
}

/// Adjust a nearest-rounded result given the sign of (exact - rounded).
fn settle(rounded: f64, err_sign: Ordering, dir: Round) -> f64 {
    match (dir, err_sign) {
        (Round::Up, Ordering::Greater) => rounded.next_up(),
        (Round::Down, Ordering::Less) => rounded.next_down(),
        _ => rounded,
    }
}

/// Knuth two-sum error term; exact for all finite inputs with finite sum.
fn add_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

fn sign_of(x: f64) -> Ordering {
    if x > 0.0 {
        Ordering::Greater
    } else if x < 0.0 {
        Ordering::Less
    } else {
        Ordering::Equal
    }
}

impl Scalar for f64 {
    type Ctx = ();

    const EXACT: bool = false;

    fn ctx(&self) -> Self::Ctx {}

    fn from_i64(_ctx: &Self::Ctx, v: i64) -> Self {
        v as f64
    }

    fn from_rational(_ctx: &Self::Ctx, q: &BigRational, dir: Round) -> Result<Self> {
        rational_to_f64(q, dir)
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_float(*self).expect("stored scalars are finite")
    }

    fn dir_add(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let s = self + rhs;
        if !s.is_finite() {
            return Err(overflow("add", *self, *rhs));
        }
        let e = add_err(*self, *rhs, s);
        Ok(settle(s, sign_of(e), dir))
    }

    fn dir_sub(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let s = self - rhs;
        if !s.is_finite() {
            return Err(overflow("sub", *self, *rhs));
        }
        let e = add_err(*self, -rhs, s);
        Ok(settle(s, sign_of(e), dir))
    }

    fn dir_mul(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let p = self * rhs;
        if !p.is_finite() {
            return Err(overflow("mul", *self, *rhs));
        }
        if *self == 0.0 || *rhs == 0.0 {
            return Ok(p);
        }
        if p == 0.0 {
            // Underflowed to zero: the exact product is nonzero with the
            // operands' sign product, which IEEE preserves in `p`.
            let true_sign = if (*self > 0.0) == (*rhs > 0.0) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            return Ok(settle(p, true_sign, dir));
        }
        if p.abs() < EFT_SAFE_MIN {
            return Ok(step(p, dir));
        }
        let e = self.mul_add(*rhs, -p);
        Ok(settle(p, sign_of(e), dir))
    }

    fn dir_div(&self, rhs: &Self, dir: Round) -> Result<Self> {
        if *rhs == 0.0 {
            return Err(Error::DivisionByZero);
        }
        let q = self / rhs;
        if !q.is_finite() {
            return Err(overflow("div", *self, *rhs));
        }
        if *self == 0.0 {
            return Ok(q);
        }
        if q == 0.0 {
            let true_sign = if (*self > 0.0) == (*rhs > 0.0) {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            return Ok(settle(q, true_sign, dir));
        }
        if q.abs() < EFT_SAFE_MIN || f64::abs(*self) < EFT_SAFE_MIN {
            return Ok(step(q, dir));
        }
        // a = q*b + r exactly, so sign(a/b - q) = sign(r) * sign(b).
        let r = q.mul_add(*rhs, -self);
        let err = if *rhs > 0.0 {
            sign_of(-r)
        } else {
            sign_of(r)
        };
        Ok(settle(q, err, dir))
    }

    fn dir_sqrt(&self, dir: Round) -> Result<Self> {
        if *self < 0.0 {
            return Err(Error::Precondition(format!(
                "sqrt of negative value {self}"
            )));
        }
        if *self == 0.0 {
            return Ok(0.0);
        }
        let s = self.sqrt();
        if *self < EFT_SAFE_MIN {
            return Ok(step(s, dir));
        }
        // sign(sqrt(a) - s) = -sign(s*s - a)
        let r = s.mul_add(s, -self);
        Ok(settle(s, sign_of(r).reverse(), dir))
    }

    fn neg(&self) -> Self {
        -self
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn is_zero(&self) -> bool {
        *self == 0.0
    }

    fn is_negative(&self) -> bool {
        *self < 0.0
    }
}

/// Exact conversion of a rational to `f64` with the requested rounding.
pub(crate) fn rational_to_f64(q: &BigRational, dir: Round) -> Result<f64> {
    if num_traits::Zero::is_zero(q) {
        return Ok(0.0);
    }
    if num_traits::Signed::is_negative(q) {
        let m = rational_to_f64(&-q, dir.flip())?;
        return Ok(-m);
    }

    // q > 0. Find the largest f64 <= q on the correct exponent grid.
    let num = q.numer();
    let den = q.denom();
    let mut e = num.bits() as i64 - den.bits() as i64; // 2^(e-1) <= q < 2^(e+1)

    // mantissa on the grid 2^(e-52), normalized so 2^52 <= m < 2^53
    let (mut m, mut exact) = mantissa_floor(num, den, e);
    loop {
        if m.bits() > 53 {
            e += 1;
        } else if m.bits() < 53 && e > -1022 {
            e -= 1;
        } else {
            break;
        }
        let (m2, ex2) = mantissa_floor(num, den, e);
        m = m2;
        exact = ex2;
    }

    if e > 1023 || (e == 1023 && m.bits() > 53) {
        return Err(Error::Overflow {
            op: "convert",
            lhs: q.to_string(),
            rhs: "f64".to_string(),
        });
    }

    let lo = assemble_f64(&m, e);
    if exact {
        return Ok(lo);
    }
    let hi = lo.next_up();
    if !hi.is_finite() {
        return Err(Error::Overflow {
            op: "convert",
            lhs: q.to_string(),
            rhs: "f64".to_string(),
        });
    }
    Ok(match dir {
        Round::Down => lo,
        Round::Up => hi,
        Round::Nearest => {
            let dl = q - lo.to_rational();
            let dh = hi.to_rational() - q;
            match dl.cmp(&dh) {
                Ordering::Less => lo,
                Ordering::Greater => hi,
                // tie: prefer the even mantissa
                Ordering::Equal => {
                    if lo.to_bits() & 1 == 0 {
                        lo
                    } else {
                        hi
                    }
                }
            }
        }
    })
}

/// floor(q * 2^(52 - e)) together with an exactness flag, where q = num/den.
/// For e <= -1022 the subnormal grid 2^-1074 is used instead.
fn mantissa_floor(num: &BigInt, den: &BigInt, e: i64) -> (BigInt, bool) {
    let shift = if e > -1022 { 52 - e } else { 1074 };
    let (n2, d2) = if shift >= 0 {
        (num << shift as usize, den.clone())
    } else {
        (num.clone(), den << (-shift) as usize)
    };
    let (quot, rem) = num_integer::Integer::div_rem(&n2, &d2);
    let exact = rem.is_zero();
    (quot, exact)
}

/// Assemble m * 2^(e-52) for normal e, or m * 2^-1074 when e <= -1022.
fn assemble_f64(m: &BigInt, e: i64) -> f64 {
    let mu = match m.to_u64() {
        Some(v) => v,
        None => return f64::MAX, // caller rejects via overflow check
    };
    if mu == 0 {
        return 0.0;
    }
    if e <= -1022 {
        // subnormal grid; mu < 2^52 by construction
        return f64::from_bits(mu);
    }
    debug_assert!(((1u64 << 52)..(1u64 << 53)).contains(&mu));
    let bits = (((e + 1023) as u64) << 52) | (mu & ((1u64 << 52) - 1));
    f64::from_bits(bits)
}
