//! Per-iteration cost model and CPU-time efficiency ratios.
//!
//! A product of two n-by-n scalar matrices costs n^2(n-1) additions and n^3
//! multiplications; with b-bit arithmetic an addition weighs b and a
//! multiplication b*ln(b)*ln(ln(b)) (big-number multiplication cost). A
//! method's per-iteration cost theta combines its point products, its one
//! interval product (weighted as two point products for multiplications,
//! one for additions) and its matrix additions (n^2 each). CPU time for an
//! order-r method is h*ln(q)*theta/ln(r), and two methods compare through
//! the efficiency ratio of their CPU times. Natural logarithms throughout;
//! the log-ratio factor of the efficiency ratio is base-invariant.

use std::io::{self, Write};

use crate::error::{Error, Result};

/// Bit size, hardware factor and significant decimal digits of Eq. (CPU).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostModel {
    /// Mantissa bits of the working arithmetic.
    pub bits: u32,
    /// Hardware-dependent time constant.
    pub hw_factor: f64,
    /// Number of significant decimal digits requested.
    pub digits: u32,
}

impl CostModel {
    pub fn new(bits: u32, hw_factor: f64, digits: u32) -> Result<Self> {
        if bits < 2 {
            return Err(Error::Precondition(format!(
                "cost model needs bits >= 2, got {bits}"
            )));
        }
        if !hw_factor.is_finite() || hw_factor <= 0.0 || digits < 1 {
            return Err(Error::Precondition(
                "cost model needs a positive hardware factor and digits >= 1".into(),
            ));
        }
        Ok(CostModel {
            bits,
            hw_factor,
            digits,
        })
    }
}

impl Default for CostModel {
    fn default() -> Self {
        CostModel {
            bits: 64,
            hw_factor: 1.0,
            digits: 16,
        }
    }
}

/// Per-iteration operation counts of one method.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MethodCost {
    pub point_mults: u32,
    pub interval_mults: u32,
    pub matrix_adds: u32,
    pub order: u32,
}

impl MethodCost {
    /// The sixth-order Horner-form stepper: 8 point products.
    pub fn horner6() -> Self {
        MethodCost {
            point_mults: 8,
            interval_mults: 1,
            matrix_adds: 6,
            order: 6,
        }
    }

    /// The factored sixth-order stepper: 6 point products.
    pub fn fast6() -> Self {
        MethodCost {
            point_mults: 6,
            interval_mults: 1,
            matrix_adds: 6,
            order: 6,
        }
    }

    /// The general order-r stepper (nested residual sum plus binary
    /// powering); r matrix additions.
    pub fn general(order: u32) -> Result<Self> {
        if order < 2 {
            return Err(Error::Precondition(format!(
                "method order must be at least 2, got {order}"
            )));
        }
        Ok(MethodCost {
            point_mults: point_product_count(order),
            interval_mults: 1,
            matrix_adds: order,
            order,
        })
    }

    /// Per-iteration cost at dimension n and precision b.
    pub fn theta(&self, n: u32, b: u32) -> f64 {
        assert!(n >= 1 && b >= 3, "theta requires n >= 1 and b >= 3");
        let nf = n as f64;
        let bf = b as f64;
        let n3 = nf * nf * nf;
        let n2 = nf * nf;
        let products = (self.point_mults + self.interval_mults) as f64;
        let mult_units = (self.point_mults + 2 * self.interval_mults) as f64;
        let adds = products * (n3 - n2) + self.matrix_adds as f64 * n2;
        adds * bf + mult_units * n3 * bf * bf.ln() * bf.ln().ln()
    }
}

/// Point-product count p(r) of the general order-r stepper: the residual,
/// max(r-3, 0) products in the nested sum, the binary powering chain for
/// R^(r-1), and the midpoint-times-sum product.
pub fn point_product_count(order: u32) -> u32 {
    assert!(order >= 2);
    2 + order.saturating_sub(3) + pow_chain_length(order - 1)
}

/// Products needed to raise a matrix to the e-th power by left-to-right
/// binary powering: floor(log2 e) + popcount(e) - 1.
fn pow_chain_length(e: u32) -> u32 {
    debug_assert!(e >= 1);
    (31 - e.leading_zeros()) + e.count_ones() - 1
}

/// theta for the Horner-form order-6 method.
pub fn theta_horner6(n: u32, b: u32) -> f64 {
    assert!(n >= 1 && b >= 3, "theta requires n >= 1 and b >= 3");
    let nf = n as f64;
    let bf = b as f64;
    (9.0 * nf.powi(3) - 3.0 * nf.powi(2)) * bf
        + 10.0 * nf.powi(3) * bf * bf.ln() * bf.ln().ln()
}

/// theta for the factored order-6 method.
pub fn theta_fast6(n: u32, b: u32) -> f64 {
    assert!(n >= 1 && b >= 3, "theta requires n >= 1 and b >= 3");
    let nf = n as f64;
    let bf = b as f64;
    (7.0 * nf.powi(3) - nf.powi(2)) * bf + 8.0 * nf.powi(3) * bf * bf.ln() * bf.ln().ln()
}

/// theta for the general order-r method; reduces to `theta_horner6` at r=6.
pub fn theta_general(n: u32, b: u32, order: u32) -> Result<f64> {
    Ok(MethodCost::general(order)?.theta(n, b))
}

/// CPU time h*ln(q)*theta/ln(r) of an order-r method.
pub fn cpu_time(model: &CostModel, order: f64, theta: f64) -> Result<f64> {
    if !order.is_finite() || order <= 1.0 {
        return Err(Error::Precondition(format!(
            "CPU-time model needs a convergence order above 1, got {order}"
        )));
    }
    Ok(model.hw_factor * (model.digits as f64).ln() * theta / order.ln())
}

/// Efficiency ratio CPU(m1)/CPU(m2) = (ln r2 / ln r1) * (theta1/theta2).
/// A ratio above 1 means m2 is cheaper.
pub fn efficiency_ratio(m1: &MethodCost, m2: &MethodCost, n: u32, b: u32) -> Result<f64> {
    if m1.order < 2 || m2.order < 2 {
        return Err(Error::Precondition(
            "efficiency ratio needs convergence orders above 1".into(),
        ));
    }
    let log_factor = (m2.order as f64).ln() / (m1.order as f64).ln();
    Ok(log_factor * m1.theta(n, b) / m2.theta(n, b))
}

/// One row of the efficiency-ratio table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErRow {
    pub n: u32,
    pub b: u32,
    pub er: f64,
}

/// Efficiency ratios of the Horner-form versus the factored order-6 method,
/// n outer, b inner.
pub fn er_table(n_min: u32, n_max: u32, bits: &[u32]) -> Result<Vec<ErRow>> {
    if n_min < 1 || n_min > n_max || bits.is_empty() {
        return Err(Error::Precondition(format!(
            "invalid table range: n in [{n_min}, {n_max}], {} bit sizes",
            bits.len()
        )));
    }
    let h6 = MethodCost::horner6();
    let f6 = MethodCost::fast6();
    let mut rows = Vec::new();
    for n in n_min..=n_max {
        for &b in bits {
            rows.push(ErRow {
                n,
                b,
                er: efficiency_ratio(&h6, &f6, n, b)?,
            });
        }
    }
    Ok(rows)
}

/// CSV with header "n,b,er"; float values round-trip through parsing.
pub fn write_er_csv<W: Write>(rows: &[ErRow], mut out: W) -> io::Result<()> {
    writeln!(out, "n,b,er")?;
    for r in rows {
        writeln!(out, "{},{},{}", r.n, r.b, r.er)?;
    }
    Ok(())
}
