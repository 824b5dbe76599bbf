//! Dense point and interval matrices, their products, norms, and a certified
//! spectral-radius estimate for nonnegative matrices.
//!
//! Storage is row-major and dense; the iteration methods are dominated by
//! dense products. Products parallelize over output entries (see
//! [`crate::parallel`]) and stay bit-identical to the sequential kernels.

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::parallel::{map_entries, MIN_PAR_WORK};
use crate::scalar::{cmp, max_of, Round, Scalar};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NormKind {
    RowSum,
    ColSum,
    Frobenius,
}

impl core::fmt::Display for NormKind {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            NormKind::RowSum => write!(f, "row-sum"),
            NormKind::ColSum => write!(f, "col-sum"),
            NormKind::Frobenius => write!(f, "frobenius"),
        }
    }
}

/// Dense real matrix in the active scalar mode.
#[derive(Debug, Clone, PartialEq)]
pub struct PointMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

/// Dense matrix of closed intervals.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalMatrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<Interval<S>>,
}

fn check_shape(rows: usize, cols: usize, len: usize) -> Result<()> {
    if rows == 0 || cols == 0 {
        return Err(Error::dim("matrix shape", rows, cols));
    }
    if len != rows * cols {
        return Err(Error::dim("entry count", rows * cols, len));
    }
    Ok(())
}

impl<S: Scalar> PointMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<S>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        Ok(PointMatrix { rows, cols, data })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<S>,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn identity(n: usize, ctx: &S::Ctx) -> Result<Self> {
        Self::from_fn(n, n, |i, j| Ok(S::from_i64(ctx, i64::from(i == j))))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &S {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &S> {
        self.data.iter()
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        PointMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn map<F: Fn(&S) -> S>(&self, f: F) -> Self {
        PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn abs(&self) -> Self {
        self.map(|x| x.abs())
    }

    /// Entrywise embedding into degenerate intervals.
    pub fn to_thin(&self) -> IntervalMatrix<S> {
        IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| Interval::thin(x.clone())).collect(),
        }
    }

    fn zip_with<F>(&self, rhs: &Self, context: &'static str, f: F) -> Result<Self>
    where
        F: Fn(&S, &S) -> Result<S>,
    {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dim(
                context,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| f(a, b))
            .collect::<Result<_>>()?;
        Ok(PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "point add", |a, b| a.dir_add(b, Round::Nearest))
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, "point sub", |a, b| a.dir_sub(b, Round::Nearest))
    }

    pub fn scale(&self, c: &S) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|x| x.dir_mul(c, Round::Nearest))
            .collect::<Result<_>>()?;
        Ok(PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn mul_impl(&self, rhs: &Self, parallel: bool) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "point product",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let (rows, cols, inner) = (self.rows, rhs.cols, self.cols);
        let data = map_entries(rows * cols, parallel, |idx| {
            let (i, k) = (idx / cols, idx % cols);
            let mut acc = self.get(i, 0).dir_mul(rhs.get(0, k), Round::Nearest)?;
            for j in 1..inner {
                let term = self.get(i, j).dir_mul(rhs.get(j, k), Round::Nearest)?;
                acc = acc.dir_add(&term, Round::Nearest)?;
            }
            Ok(acc)
        })?;
        Ok(PointMatrix { rows, cols, data })
    }

    /// Standard product with nearest rounding (exact in rational mode).
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let work = self.rows * rhs.cols * self.cols;
        self.mul_impl(rhs, work >= MIN_PAR_WORK)
    }

    /// The sequential product kernel; `mul` dispatches to the same per-entry
    /// computation, so results are identical.
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, false)
    }

    #[cfg(feature = "parallel")]
    pub fn mul_par(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, true)
    }

    /// Matrix norm, rounded up so downstream bounds remain rigorous.
    pub fn norm(&self, kind: NormKind) -> Result<S> {
        let zero = self.data[0].zero_like();
        match kind {
            NormKind::RowSum => {
                let mut best = zero.clone();
                for i in 0..self.rows {
                    let mut sum = zero.clone();
                    for j in 0..self.cols {
                        sum = sum.dir_add(&self.get(i, j).abs(), Round::Up)?;
                    }
                    best = max_of(best, sum);
                }
                Ok(best)
            }
            NormKind::ColSum => {
                let mut best = zero.clone();
                for j in 0..self.cols {
                    let mut sum = zero.clone();
                    for i in 0..self.rows {
                        sum = sum.dir_add(&self.get(i, j).abs(), Round::Up)?;
                    }
                    best = max_of(best, sum);
                }
                Ok(best)
            }
            NormKind::Frobenius => {
                let mut sum = zero;
                for x in &self.data {
                    sum = sum.dir_add(&x.dir_mul(x, Round::Up)?, Round::Up)?;
                }
                sum.dir_sqrt(Round::Up)
            }
        }
    }

    /// Entrywise exact embedding into rationals (for oracles and reports).
    pub fn to_rationals(&self) -> PointMatrix<BigRational> {
        PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x.to_rational()).collect(),
        }
    }
}

impl<S: Scalar> IntervalMatrix<S> {
    pub fn new(rows: usize, cols: usize, data: Vec<Interval<S>>) -> Result<Self> {
        check_shape(rows, cols, data.len())?;
        Ok(IntervalMatrix { rows, cols, data })
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> Result<Interval<S>>,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j)?);
            }
        }
        Self::new(rows, cols, data)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Interval<S> {
        &self.data[i * self.cols + j]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Interval<S>> {
        self.data.iter()
    }

    fn shape_check(&self, rhs: &Self, context: &'static str) -> Result<()> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::dim(
                context,
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.shape_check(rhs, "interval add")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.add(b))
            .collect::<Result<_>>()?;
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.shape_check(rhs, "interval sub")?;
        let data = self
            .data
            .iter()
            .zip(&rhs.data)
            .map(|(a, b)| a.sub(b))
            .collect::<Result<_>>()?;
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    fn mul_impl(&self, rhs: &Self, parallel: bool) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::dim(
                "interval product",
                format!("{}x{}", self.rows, self.cols),
                format!("{}x{}", rhs.rows, rhs.cols),
            ));
        }
        let (rows, cols, inner) = (self.rows, rhs.cols, self.cols);
        let data = map_entries(rows * cols, parallel, |idx| {
            let (i, k) = (idx / cols, idx % cols);
            let mut acc = self.get(i, 0).mul(rhs.get(0, k))?;
            for j in 1..inner {
                acc = acc.add(&self.get(i, j).mul(rhs.get(j, k))?)?;
            }
            Ok(acc)
        })?;
        Ok(IntervalMatrix { rows, cols, data })
    }

    /// Enclosure of the set product {P*Q : P in self, Q in rhs}.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        let work = self.rows * rhs.cols * self.cols;
        self.mul_impl(rhs, work >= MIN_PAR_WORK)
    }

    /// The sequential product kernel; results are identical to `mul`.
    pub fn mul_seq(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, false)
    }

    #[cfg(feature = "parallel")]
    pub fn mul_par(&self, rhs: &Self) -> Result<Self> {
        self.mul_impl(rhs, true)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        IntervalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    /// Entrywise midpoints: the point iterate embedded in the method.
    pub fn midpoint(&self) -> Result<PointMatrix<S>> {
        let data = self
            .data
            .iter()
            .map(|iv| iv.midpoint())
            .collect::<Result<_>>()?;
        Ok(PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise widths (upper bounds): the rigorous error bound.
    pub fn width(&self) -> Result<PointMatrix<S>> {
        let data = self
            .data
            .iter()
            .map(|iv| iv.width())
            .collect::<Result<_>>()?;
        Ok(PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Entrywise magnitudes max(|lo|, |hi|).
    pub fn mag(&self) -> PointMatrix<S> {
        PointMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|iv| iv.mag()).collect(),
        }
    }

    pub fn max_width(&self) -> Result<S> {
        let mut best = self.data[0].width()?;
        for iv in &self.data[1..] {
            best = max_of(best, iv.width()?);
        }
        Ok(best)
    }

    /// Entrywise intersection; reports the first offending entry when empty.
    pub fn intersect(&self, rhs: &Self) -> Result<Self> {
        self.shape_check(rhs, "interval intersection")?;
        let mut data = Vec::with_capacity(self.data.len());
        for (idx, (a, b)) in self.data.iter().zip(&rhs.data).enumerate() {
            let iv = a.intersect(b).map_err(|e| match e {
                Error::EmptyIntersection { .. } => Error::EmptyIntersection {
                    row: idx / self.cols,
                    col: idx % self.cols,
                    step: None,
                },
                other => other,
            })?;
            data.push(iv);
        }
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn contains_point(&self, p: &PointMatrix<S>) -> bool {
        self.rows == p.rows
            && self.cols == p.cols
            && self.data.iter().zip(&p.data).all(|(iv, x)| iv.contains(x))
    }

    /// Exact entrywise containment of a rational matrix.
    pub fn contains_rationals(&self, p: &PointMatrix<BigRational>) -> bool {
        self.rows == p.rows
            && self.cols == p.cols
            && self
                .data
                .iter()
                .zip(&p.data)
                .all(|(iv, q)| iv.contains_rational(q))
    }

    /// True when `other` is entrywise a subset of `self`.
    pub fn encloses(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .data
                .iter()
                .zip(&other.data)
                .all(|(a, b)| a.encloses(b))
    }

    /// Outward-rounded entrywise division by a positive point scalar.
    pub fn div_point(&self, c: &S) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|iv| iv.div_point(c))
            .collect::<Result<_>>()?;
        Ok(IntervalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }
}

/// Certified upper estimate of the spectral radius of a nonnegative matrix.
///
/// Power iteration on a positive vector combined with the row-ratio bound
/// rho(M) <= max_i (Mx)_i / x_i, evaluated with upward rounding, so every
/// iterate yields a rigorous upper bound; the smallest one seen is returned.
/// Stops when successive estimates agree to 1e-12 relative or after 10000
/// iterations.
#[allow(clippy::needless_range_loop)] // index loops mirror the matrix algebra
pub fn spectral_radius_nonneg<S: Scalar>(m: &PointMatrix<S>) -> Result<S> {
    if !m.is_square() {
        return Err(Error::dim("spectral radius", m.rows, m.cols));
    }
    if m.entries().any(|x| x.is_negative()) {
        return Err(Error::Precondition(
            "spectral radius estimate requires an entrywise nonnegative matrix".into(),
        ));
    }
    let n = m.rows;
    let ctx = m.data[0].ctx();
    let one = S::from_i64(&ctx, 1);
    // positivity floor for iterates, 2^-80 of the current scale
    let floor_q = BigRational::new(1.into(), num_bigint::BigInt::from(1) << 80);
    let floor = S::from_rational(&ctx, &floor_q, Round::Down)?;
    let rel_tol = BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(12));

    let mut x = vec![one.clone(); n];
    let mut best: Option<S> = None;
    let mut prev: Option<BigRational> = None;
    let mut first: Option<BigRational> = None;

    for _ in 0..10_000 {
        let mut y = Vec::with_capacity(n);
        for i in 0..n {
            let mut acc = m.get(i, 0).dir_mul(&x[0], Round::Up)?;
            for j in 1..n {
                acc = acc.dir_add(&m.get(i, j).dir_mul(&x[j], Round::Up)?, Round::Up)?;
            }
            y.push(acc);
        }
        let mut bound = y[0].dir_div(&x[0], Round::Up)?;
        for i in 1..n {
            bound = max_of(bound, y[i].dir_div(&x[i], Round::Up)?);
        }
        best = Some(match best {
            Some(b) if cmp(&b, &bound) != core::cmp::Ordering::Greater => b,
            _ => bound.clone(),
        });

        let est = bound.to_rational();
        let f = first.get_or_insert_with(|| est.clone());
        // estimates collapsing to ~0 of the initial scale mean rho = 0
        if &est * &BigRational::from(num_bigint::BigInt::from(1) << 80) <= *f {
            break;
        }
        if let Some(p) = &prev {
            let diff = if *p >= est { p - &est } else { &est - p };
            if diff <= p * &rel_tol {
                break;
            }
        }
        prev = Some(est);

        // normalize by the largest component and keep the vector positive
        let mut mx = y[0].clone();
        for v in &y[1..] {
            mx = max_of(mx, v.clone());
        }
        if mx.is_zero() {
            // M annihilates a positive vector, so M = 0 and rho = 0
            return Ok(one.zero_like());
        }
        let mut scaled_floor = floor.dir_mul(&mx, Round::Down)?;
        if scaled_floor.is_zero() {
            scaled_floor = floor.clone();
        }
        x = y
            .into_iter()
            .map(|v| {
                let v = v.dir_div(&mx, Round::Nearest)?;
                Ok(max_of(v, scaled_floor.clone()))
            })
            .collect::<Result<Vec<_>>>()?;
        if S::EXACT {
            // cap rational iterate sizes; any positive test vector is valid
            for v in &mut x {
                *v = quantize_up(v, &ctx)?;
            }
        }
    }
    Ok(best.expect("at least one power iteration runs"))
}

/// Round a positive scalar up to 64 fractional dyadic bits. Used to keep
/// exact-rational power iterates from growing without bound.
fn quantize_up<S: Scalar>(v: &S, ctx: &S::Ctx) -> Result<S> {
    use num_traits::One;
    let q = v.to_rational();
    let scale: num_bigint::BigInt = num_bigint::BigInt::one() << 64;
    let scaled = q * BigRational::from(scale.clone());
    let up = scaled.ceil();
    S::from_rational(ctx, &(up / BigRational::from(scale)), Round::Up)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    fn rmat(rows: usize, cols: usize, e: &[(i64, i64)]) -> PointMatrix<BigRational> {
        PointMatrix::new(rows, cols, e.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
    }

    fn example_a() -> PointMatrix<BigRational> {
        rmat(2, 2, &[(9, 10), (1, 5), (-3, 10), (4, 5)])
    }

    fn example_a_inv() -> PointMatrix<BigRational> {
        rmat(2, 2, &[(40, 39), (-10, 39), (5, 13), (15, 13)])
    }

    #[test]
    fn identity_is_left_neutral() {
        let a = example_a();
        let i = PointMatrix::identity(2, &()).unwrap();
        assert_eq!(i.mul(&a).unwrap(), a);
    }

    #[test]
    fn product_with_exact_inverse_gives_identity() {
        let prod = example_a().mul(&example_a_inv()).unwrap();
        assert_eq!(prod, PointMatrix::identity(2, &()).unwrap());
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        let a = example_a();
        let b = rmat(1, 2, &[(1, 1), (2, 1)]);
        assert!(matches!(a.mul(&b).unwrap_err(), Error::Dimension { .. }));
        assert!(matches!(a.add(&b).unwrap_err(), Error::Dimension { .. }));
    }

    #[test]
    fn thin_identity_is_neutral_for_interval_product() {
        let x = IntervalMatrix::from_fn(2, 2, |i, j| {
            Interval::new(rat(-(i as i64) - 1, 2), rat(j as i64 + 2, 3))
        })
        .unwrap();
        let i = PointMatrix::identity(2, &()).unwrap().to_thin();
        assert_eq!(i.mul(&x).unwrap(), x);
    }

    #[test]
    fn one_by_one_product_is_scalar_product() {
        let a = IntervalMatrix::new(1, 1, vec![Interval::new(rat(0, 1), rat(2, 1)).unwrap()])
            .unwrap();
        let b = IntervalMatrix::new(1, 1, vec![Interval::new(rat(-1, 1), rat(1, 1)).unwrap()])
            .unwrap();
        let p = a.mul(&b).unwrap();
        assert_eq!(*p.get(0, 0), Interval::new(rat(-2, 1), rat(2, 1)).unwrap());
    }

    #[test]
    fn midpoint_width_abs_of_thin() {
        let a = example_a();
        let t = a.to_thin();
        assert_eq!(t.midpoint().unwrap(), a);
        let w = t.width().unwrap();
        assert!(w.entries().all(|x| x.is_zero()));
        assert_eq!(t.mag(), a.abs());
    }

    #[test]
    fn intersect_reports_offending_entry() {
        let x = IntervalMatrix::from_fn(2, 2, |_, _| Interval::new(rat(0, 1), rat(1, 1))).unwrap();
        let mut data: Vec<Interval<BigRational>> = x.entries().cloned().collect();
        data[3] = Interval::new(rat(2, 1), rat(3, 1)).unwrap();
        let y = IntervalMatrix::new(2, 2, data).unwrap();
        match x.intersect(&y).unwrap_err() {
            Error::EmptyIntersection { row, col, .. } => assert_eq!((row, col), (1, 1)),
            other => panic!("unexpected error {other:?}"),
        }
        assert_eq!(x.intersect(&x).unwrap(), x);
    }

    #[test]
    fn norms() {
        let y = rmat(2, 2, &[(1, 10), (-1, 5), (3, 10), (1, 5)]);
        // Frobenius bound of sqrt(0.18), rounded up
        let f = y.norm(NormKind::Frobenius).unwrap();
        assert!(&f * &f >= rat(18, 100));
        assert!(f < rat(424265, 1000000));
        assert!(f > rat(424264, 1000000));

        let m = rmat(2, 2, &[(1, 1), (-2, 1), (3, 1), (4, 1)]);
        assert_eq!(m.norm(NormKind::RowSum).unwrap(), rat(7, 1));
        assert_eq!(m.norm(NormKind::ColSum).unwrap(), rat(6, 1));

        let z = rmat(2, 2, &[(0, 1), (0, 1), (0, 1), (0, 1)]);
        assert_eq!(z.norm(NormKind::Frobenius).unwrap(), rat(0, 1));
    }

    #[test]
    fn spectral_radius_diagonal_and_identity() {
        let d = rmat(2, 2, &[(1, 2), (0, 1), (0, 1), (1, 5)]);
        assert_eq!(spectral_radius_nonneg(&d).unwrap(), rat(1, 2));
        let i = PointMatrix::<BigRational>::identity(3, &()).unwrap();
        assert_eq!(spectral_radius_nonneg(&i).unwrap(), rat(1, 1));
    }

    #[test]
    fn spectral_radius_of_abs_y_is_below_one() {
        // |Y| for Y = I - A of the worked 2x2 example; exact rho = 0.4
        let m = rmat(2, 2, &[(1, 10), (1, 5), (3, 10), (1, 5)]);
        let r = spectral_radius_nonneg(&m).unwrap();
        assert!(r >= rat(2, 5));
        assert!(r < rat(2, 5) + rat(1, 1_000_000));
    }

    #[test]
    fn spectral_radius_rejects_negative_entries() {
        let m = rmat(2, 2, &[(1, 1), (-1, 1), (0, 1), (1, 1)]);
        assert!(matches!(
            spectral_radius_nonneg(&m).unwrap_err(),
            Error::Precondition(_)
        ));
    }

    #[test]
    fn spectral_radius_of_nilpotent_is_near_zero() {
        let m = rmat(2, 2, &[(0, 1), (1, 1), (0, 1), (0, 1)]);
        let r = spectral_radius_nonneg(&m).unwrap();
        assert!(r < rat(1, 1_000_000));
    }

    #[test]
    fn parallel_and_sequential_products_agree() {
        let n = 20;
        let a = PointMatrix::from_fn(n, n, |i, j| {
            Ok(rat((i * n + j) as i64 % 17 - 8, 1 + ((i + j) % 5) as i64))
        })
        .unwrap();
        let t = a.to_thin();
        assert_eq!(a.mul(&a).unwrap(), a.mul_seq(&a).unwrap());
        assert_eq!(t.mul(&t).unwrap(), t.mul_seq(&t).unwrap());
        #[cfg(feature = "parallel")]
        {
            assert_eq!(a.mul_par(&a).unwrap(), a.mul_seq(&a).unwrap());
            assert_eq!(t.mul_par(&t).unwrap(), t.mul_seq(&t).unwrap());
        }
    }
}
