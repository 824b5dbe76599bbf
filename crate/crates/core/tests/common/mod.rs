//! Shared oracles for the integration suites.
//!
//! Everything here is written independently of the library's arithmetic
//! paths: plain rational operations, naive triple-loop products, and
//! Gauss-Jordan elimination. These are the reference results the enclosure
//! machinery is checked against.
#![allow(dead_code)]

use hyperinv::PointMatrix;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn pow10(k: u32) -> BigRational {
    BigRational::from(BigInt::from(10u8).pow(k))
}

pub fn rmat(rows: usize, cols: usize, entries: &[(i64, i64)]) -> PointMatrix<BigRational> {
    PointMatrix::new(rows, cols, entries.iter().map(|&(n, d)| rat(n, d)).collect()).unwrap()
}

/// Naive triple-loop product over plain rationals.
pub fn naive_mul(
    a: &PointMatrix<BigRational>,
    b: &PointMatrix<BigRational>,
) -> PointMatrix<BigRational> {
    assert_eq!(a.cols(), b.rows());
    PointMatrix::from_fn(a.rows(), b.cols(), |i, k| {
        let mut acc = BigRational::zero();
        for j in 0..a.cols() {
            acc += a.get(i, j) * b.get(j, k);
        }
        Ok(acc)
    })
    .unwrap()
}

/// Exact inverse by Gauss-Jordan elimination with partial pivoting.
/// Returns `None` for singular input.
#[allow(clippy::needless_range_loop)]
pub fn gauss_jordan_inverse(a: &PointMatrix<BigRational>) -> Option<PointMatrix<BigRational>> {
    let n = a.rows();
    assert_eq!(n, a.cols());
    let mut m: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| {
                    if j < n {
                        a.get(i, j).clone()
                    } else if j - n == i {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect()
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let p = m[col][col].clone();
        for j in 0..2 * n {
            m[col][j] /= &p;
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for j in 0..2 * n {
                    let sub = &m[col][j] * &f;
                    m[r][j] -= sub;
                }
            }
        }
    }

    let data = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| m[i][n + j].clone())
        .collect();
    Some(PointMatrix::new(n, n, data).unwrap())
}

/// Exact Moore-Penrose inverse of a full-rank rectangular matrix via the
/// normal equations: (A^T A)^-1 A^T for full column rank, A^T (A A^T)^-1
/// for full row rank. Returns `None` when the matrix is rank-deficient.
pub fn pseudo_inverse_oracle(a: &PointMatrix<BigRational>) -> Option<PointMatrix<BigRational>> {
    let at = a.transpose();
    if a.rows() >= a.cols() {
        let gram = naive_mul(&at, a);
        Some(naive_mul(&gauss_jordan_inverse(&gram)?, &at))
    } else {
        let gram = naive_mul(a, &at);
        Some(naive_mul(&at, &gauss_jordan_inverse(&gram)?))
    }
}

/// Random perturbation of the identity with row sums of |off-identity part|
/// strictly below 1/4, so the initial-enclosure condition holds with the
/// row-sum norm and the matrix is provably nonsingular.
pub fn near_identity_matrix<R: Rng>(rng: &mut R, n: usize) -> PointMatrix<BigRational> {
    let den = 8 * n as i64;
    PointMatrix::from_fn(n, n, |i, j| {
        let k = rng.gen_range(-2i64..=2);
        let base = if i == j {
            BigRational::one()
        } else {
            BigRational::zero()
        };
        Ok(base + rat(k, den))
    })
    .unwrap()
}

/// Largest |entry|.
pub fn max_abs(m: &PointMatrix<BigRational>) -> BigRational {
    m.entries()
        .map(|e| e.abs())
        .max()
        .expect("matrices are nonempty")
}
