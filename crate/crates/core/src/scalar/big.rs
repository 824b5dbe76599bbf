//! Arbitrary-precision binary floats backed by `astro-float`.
//!
//! Values are always finite; operations that would produce an infinity or
//! NaN surface as errors instead. Each value carries its mantissa precision,
//! so binary operations round at the larger operand precision and a whole
//! run stays at the precision it was created with.

use core::cmp::Ordering;
use core::fmt;

use astro_float::{BigFloat, RoundingMode, Sign};
use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Round, Scalar};
use crate::error::{Error, Result};

/// Mantissa precision in bits for big-float construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision(pub usize);

/// A finite arbitrary-precision binary float.
#[derive(Clone)]
pub struct BigF(BigFloat);

impl BigF {
    fn rm(dir: Round) -> RoundingMode {
        match dir {
            Round::Down => RoundingMode::Down,
            Round::Up => RoundingMode::Up,
            Round::Nearest => RoundingMode::ToEven,
        }
    }

    fn bits(&self) -> usize {
        self.0
            .mantissa_max_bit_len()
            .expect("stored big floats are finite")
    }

    fn op_bits(&self, rhs: &Self) -> usize {
        self.bits().max(rhs.bits())
    }

    fn check(v: BigFloat, op: &'static str, lhs: &Self, rhs: &Self) -> Result<Self> {
        if v.is_inf() || v.is_nan() {
            Err(Error::Overflow {
                op,
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            })
        } else {
            Ok(BigF(v))
        }
    }

    /// Exact embedding of a big integer at its own bit width.
    fn from_bigint(v: &BigInt) -> BigFloat {
        let (sign, digits) = v.to_u64_digits();
        if digits.is_empty() {
            return BigFloat::from_i64(0, 64);
        }
        let s = if sign == num_bigint::Sign::Minus {
            Sign::Neg
        } else {
            Sign::Pos
        };
        let e = (digits.len() * 64) as astro_float::Exponent;
        BigFloat::from_words(&digits, s, e)
    }
}

impl fmt::Debug for BigF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BigF({self})")
    }
}

impl fmt::Display for BigF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = (self.bits() as f64 * core::f64::consts::LOG10_2).ceil() as usize + 2;
        f.write_str(&crate::render::rational_to_decimal(
            &self.to_rational(),
            digits.max(4),
            Round::Nearest,
            crate::render::DecimalStyle::Auto,
        ))
    }
}

impl PartialEq for BigF {
    fn eq(&self, other: &Self) -> bool {
        self.0.cmp(&other.0) == Some(0)
    }
}

impl PartialOrd for BigF {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl Scalar for BigF {
    type Ctx = Precision;

    const EXACT: bool = false;

    fn ctx(&self) -> Self::Ctx {
        Precision(self.bits())
    }

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        BigF(BigFloat::from_i64(v, ctx.0))
    }

    fn from_rational(ctx: &Self::Ctx, q: &BigRational, dir: Round) -> Result<Self> {
        if num_traits::Zero::is_zero(q) {
            return Ok(Self::from_i64(ctx, 0));
        }
        let num = Self::from_bigint(q.numer());
        let den = Self::from_bigint(q.denom());
        let v = num.div(&den, ctx.0, Self::rm(dir));
        if v.is_inf() || v.is_nan() {
            return Err(Error::Overflow {
                op: "convert",
                lhs: q.to_string(),
                rhs: format!("bigfloat({})", ctx.0),
            });
        }
        Ok(BigF(v))
    }

    fn to_rational(&self) -> BigRational {
        let (words, len, sign, exp, _inexact) =
            self.0.as_raw_parts().expect("stored big floats are finite");
        let mut m = BigInt::from(0u32);
        for (i, w) in words.iter().enumerate() {
            m += BigInt::from(*w) << (64 * i);
        }
        if sign == Sign::Neg {
            m = -m;
        }
        // value = m * 2^(exp - len)
        let e = exp as i64 - len as i64;
        let q = BigRational::from(m);
        if e >= 0 {
            q * BigRational::from(BigInt::from(1) << e as usize)
        } else {
            q / BigRational::from(BigInt::from(1) << (-e) as usize)
        }
    }

    fn dir_add(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let p = self.op_bits(rhs);
        Self::check(self.0.add(&rhs.0, p, Self::rm(dir)), "add", self, rhs)
    }

    fn dir_sub(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let p = self.op_bits(rhs);
        Self::check(self.0.sub(&rhs.0, p, Self::rm(dir)), "sub", self, rhs)
    }

    fn dir_mul(&self, rhs: &Self, dir: Round) -> Result<Self> {
        let p = self.op_bits(rhs);
        Self::check(self.0.mul(&rhs.0, p, Self::rm(dir)), "mul", self, rhs)
    }

    fn dir_div(&self, rhs: &Self, dir: Round) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let p = self.op_bits(rhs);
        Self::check(self.0.div(&rhs.0, p, Self::rm(dir)), "div", self, rhs)
    }

    fn dir_sqrt(&self, dir: Round) -> Result<Self> {
        if self.is_negative() {
            return Err(Error::Precondition(format!(
                "sqrt of negative value {self}"
            )));
        }
        let p = self.bits();
        let v = self.0.sqrt(p, Self::rm(dir));
        if v.is_inf() || v.is_nan() {
            return Err(Error::Precondition(format!("sqrt failed on {self}")));
        }
        Ok(BigF(v))
    }

    fn neg(&self) -> Self {
        BigF(self.0.neg())
    }

    fn abs(&self) -> Self {
        if self.is_negative() {
            self.neg()
        } else {
            self.clone()
        }
    }

    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    fn is_negative(&self) -> bool {
        !self.0.is_zero() && self.0.is_negative()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    const P: Precision = Precision(128);

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn bf(n: i64, d: i64) -> BigF {
        BigF::from_rational(&P, &rat(n, d), Round::Nearest).unwrap()
    }

    #[test]
    fn exact_ops_do_not_round() {
        let one = BigF::from_i64(&P, 1);
        let two = BigF::from_i64(&P, 2);
        let three = BigF::from_i64(&P, 3);
        assert_eq!(one.dir_add(&two, Round::Down).unwrap(), three);
        assert_eq!(one.dir_add(&two, Round::Up).unwrap(), three);
        assert_eq!(three.to_rational(), rat(3, 1));
    }

    #[test]
    fn directed_division_brackets() {
        let one = BigF::from_i64(&P, 1);
        let three = BigF::from_i64(&P, 3);
        let lo = one.dir_div(&three, Round::Down).unwrap();
        let hi = one.dir_div(&three, Round::Up).unwrap();
        assert!(lo < hi);
        assert!(lo.to_rational() < rat(1, 3));
        assert!(hi.to_rational() > rat(1, 3));
    }

    #[test]
    fn rational_conversion_brackets_and_roundtrips() {
        let q = rat(9, 10);
        let lo = BigF::from_rational(&P, &q, Round::Down).unwrap();
        let hi = BigF::from_rational(&P, &q, Round::Up).unwrap();
        assert!(lo.to_rational() < q && q < hi.to_rational());
        // exactly representable stays exact
        let h = BigF::from_rational(&P, &rat(-3, 4), Round::Up).unwrap();
        assert_eq!(h.to_rational(), rat(-3, 4));
    }

    #[test]
    fn precision_carries_through_ops() {
        let a = BigF::from_i64(&Precision(256), 7);
        let b = BigF::from_i64(&Precision(256), 9);
        let c = a.dir_div(&b, Round::Up).unwrap();
        assert_eq!(c.ctx(), Precision(256));
    }

    #[test]
    fn division_by_zero() {
        let one = BigF::from_i64(&P, 1);
        let zero = BigF::from_i64(&P, 0);
        assert_eq!(
            one.dir_div(&zero, Round::Nearest).unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn sqrt_brackets() {
        let x = bf(18, 100);
        let lo = x.dir_sqrt(Round::Down).unwrap();
        let hi = x.dir_sqrt(Round::Up).unwrap();
        let xr = x.to_rational();
        assert!(lo.to_rational().pow(2) < xr);
        assert!(hi.to_rational().pow(2) > xr);
    }

    #[test]
    fn negation_and_abs_are_exact() {
        let x = bf(1, 3);
        assert_eq!(x.neg().neg(), x);
        assert_eq!(x.neg().abs(), x);
        assert!(x.neg().is_negative());
    }
}
