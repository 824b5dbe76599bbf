//! Closed real intervals with outward rounding.
//!
//! Every operation returns an interval that encloses the exact set result:
//! lower endpoints round down, upper endpoints round up. In the exact
//! rational mode the enclosures are tight.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::{cmp, max_of, min_of, Round, Scalar};

#[derive(Debug, Clone, PartialEq)]
pub struct Interval<S> {
    lo: S,
    hi: S,
}

/// Sign classification of an interval for the product case split.
enum Cls {
    NonNeg,
    NonPos,
    Mixed,
}

impl<S: Scalar> Interval<S> {
    pub fn new(lo: S, hi: S) -> Result<Self> {
        if cmp(&lo, &hi) == core::cmp::Ordering::Greater {
            return Err(Error::InvalidInterval {
                lo: format!("{lo}"),
                hi: format!("{hi}"),
            });
        }
        Ok(Interval { lo, hi })
    }

    /// Degenerate interval [x, x]. Point values embed this way.
    pub fn thin(x: S) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    /// Outward-rounded interval from exact rational endpoints.
    pub fn from_rationals(ctx: &S::Ctx, lo: &BigRational, hi: &BigRational) -> Result<Self> {
        Self::new(
            S::from_rational(ctx, lo, Round::Down)?,
            S::from_rational(ctx, hi, Round::Up)?,
        )
    }

    pub fn lo(&self) -> &S {
        &self.lo
    }

    pub fn hi(&self) -> &S {
        &self.hi
    }

    fn cls(&self) -> Cls {
        if !self.lo.is_negative() {
            Cls::NonNeg
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Cls::NonPos
        } else {
            Cls::Mixed
        }
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval {
            lo: self.lo.dir_add(&rhs.lo, Round::Down)?,
            hi: self.hi.dir_add(&rhs.hi, Round::Up)?,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        Ok(Interval {
            lo: self.lo.dir_sub(&rhs.hi, Round::Down)?,
            hi: self.hi.dir_sub(&rhs.lo, Round::Up)?,
        })
    }

    pub fn neg(&self) -> Self {
        Interval {
            lo: self.hi.neg(),
            hi: self.lo.neg(),
        }
    }

    /// Set product: encloses {x*y : x in self, y in rhs}. The endpoint pair
    /// is selected by sign case so only two directed products are needed,
    /// except in the mixed-mixed case which needs four.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        use Cls::*;
        let dn = |x: &S, y: &S| x.dir_mul(y, Round::Down);
        let up = |x: &S, y: &S| x.dir_mul(y, Round::Up);
        let (lo, hi) = match (self.cls(), rhs.cls()) {
            (NonNeg, NonNeg) => (dn(&self.lo, &rhs.lo)?, up(&self.hi, &rhs.hi)?),
            (NonNeg, NonPos) => (dn(&self.hi, &rhs.lo)?, up(&self.lo, &rhs.hi)?),
            (NonNeg, Mixed) => (dn(&self.hi, &rhs.lo)?, up(&self.hi, &rhs.hi)?),
            (NonPos, NonNeg) => (dn(&self.lo, &rhs.hi)?, up(&self.hi, &rhs.lo)?),
            (NonPos, NonPos) => (dn(&self.hi, &rhs.hi)?, up(&self.lo, &rhs.lo)?),
            (NonPos, Mixed) => (dn(&self.lo, &rhs.hi)?, up(&self.lo, &rhs.lo)?),
            (Mixed, NonNeg) => (dn(&self.lo, &rhs.hi)?, up(&self.hi, &rhs.hi)?),
            (Mixed, NonPos) => (dn(&self.hi, &rhs.lo)?, up(&self.lo, &rhs.lo)?),
            (Mixed, Mixed) => (
                min_of(dn(&self.lo, &rhs.hi)?, dn(&self.hi, &rhs.lo)?),
                max_of(up(&self.lo, &rhs.lo)?, up(&self.hi, &rhs.hi)?),
            ),
        };
        Ok(Interval { lo, hi })
    }

    /// Intersection; empty intersections are errors (position information is
    /// attached by the matrix layer).
    pub fn intersect(&self, rhs: &Self) -> Result<Self> {
        let lo = max_of(self.lo.clone(), rhs.lo.clone());
        let hi = min_of(self.hi.clone(), rhs.hi.clone());
        if cmp(&lo, &hi) == core::cmp::Ordering::Greater {
            return Err(Error::EmptyIntersection {
                row: 0,
                col: 0,
                step: None,
            });
        }
        Ok(Interval { lo, hi })
    }

    /// A point inside the interval near its center: lo + (hi - lo)/2 with
    /// nearest rounding, clamped into the interval.
    pub fn midpoint(&self) -> Result<S> {
        let two = self.lo.one_like().dir_add(&self.lo.one_like(), Round::Nearest)?;
        let half_width = self
            .hi
            .dir_sub(&self.lo, Round::Nearest)?
            .dir_div(&two, Round::Nearest)?;
        let m = self.lo.dir_add(&half_width, Round::Nearest)?;
        Ok(min_of(max_of(m, self.lo.clone()), self.hi.clone()))
    }

    /// Upper bound on hi - lo.
    pub fn width(&self) -> Result<S> {
        self.hi.dir_sub(&self.lo, Round::Up)
    }

    /// max(|lo|, |hi|): the largest magnitude of any member.
    pub fn mag(&self) -> S {
        max_of(self.lo.abs(), self.hi.abs())
    }

    pub fn contains(&self, x: &S) -> bool {
        cmp(&self.lo, x) != core::cmp::Ordering::Greater
            && cmp(x, &self.hi) != core::cmp::Ordering::Greater
    }

    /// Exact membership test for a rational point.
    pub fn contains_rational(&self, q: &BigRational) -> bool {
        self.lo.to_rational() <= *q && *q <= self.hi.to_rational()
    }

    /// True when `other` is a subset of `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        cmp(&self.lo, &other.lo) != core::cmp::Ordering::Greater
            && cmp(&other.hi, &self.hi) != core::cmp::Ordering::Greater
    }

    /// Outward-rounded division by a positive point scalar.
    pub fn div_point(&self, c: &S) -> Result<Self> {
        if !c.is_positive() {
            return Err(Error::Precondition(format!(
                "interval division requires a positive scalar, got {c}"
            )));
        }
        Ok(Interval {
            lo: self.lo.dir_div(c, Round::Down)?,
            hi: self.hi.dir_div(c, Round::Up)?,
        })
    }

    /// Render as "[lo, hi]" with `digits` significant digits, endpoints
    /// rounded outward so the printed interval still encloses this one.
    pub fn render(&self, digits: usize) -> String {
        use crate::render::{rational_to_decimal, DecimalStyle};
        format!(
            "[{}, {}]",
            rational_to_decimal(&self.lo.to_rational(), digits, Round::Down, DecimalStyle::Auto),
            rational_to_decimal(&self.hi.to_rational(), digits, Round::Up, DecimalStyle::Auto),
        )
    }
}
