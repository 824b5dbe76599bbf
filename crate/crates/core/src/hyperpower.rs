//! The enclosure engine: initial interval construction, hyper-power
//! steppers of arbitrary order, convergence verification, the iteration
//! driver, and the rectangular (pseudo-inverse) variant.
//!
//! Every stepper follows the same pattern. With H the midpoint matrix of
//! the current enclosure X and R = I - A*H the residual, the update
//!
//!   Y = H * (I + R + ... + R^(r-2)) + X * R^(r-1),   X' = Y ∩ X
//!
//! keeps A^-1 enclosed whenever X encloses it, because the underlying
//! algebraic identity holds for any point matrix H. In float modes every
//! "point" product is evaluated as a thin-interval product with outward
//! rounding, so the identity — and with it the containment guarantee — is
//! preserved; the point/interval distinction refers to the cost model, not
//! to the arithmetic. The driver can also rescale ill-normalized inputs and
//! undoes the scaling in every recorded step, so each reported enclosure
//! targets A^-1 itself.

use core::fmt;

use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::interval::Interval;
use crate::matrix::{spectral_radius_nonneg, IntervalMatrix, NormKind, PointMatrix};
use crate::scalar::{Round, Scalar};

/// Which stepper drives the iteration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodSpec {
    /// Hyper-power of arbitrary order r >= 2 with the residual sum in
    /// nested form and the final power by binary powering.
    General(u32),
    /// Third-order method: Y = H + H*R + X*R^2.
    Hp3,
    /// Sixth-order method with the residual polynomial in plain Horner
    /// form; 8 point-cost products per step.
    Horner6,
    /// Sixth-order method with the factored residual polynomial
    /// x^2(x^2+x+1)+x+1; 6 point-cost products per step.
    Fast6,
}

impl MethodSpec {
    pub fn order(&self) -> u32 {
        match self {
            MethodSpec::General(r) => *r,
            MethodSpec::Hp3 => 3,
            MethodSpec::Horner6 | MethodSpec::Fast6 => 6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            MethodSpec::General(r) if *r < 2 => Err(Error::Precondition(format!(
                "hyper-power order must be at least 2, got {r}"
            ))),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for MethodSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MethodSpec::General(r) => write!(f, "general:{r}"),
            MethodSpec::Hp3 => write!(f, "hp3"),
            MethodSpec::Horner6 => write!(f, "horner6"),
            MethodSpec::Fast6 => write!(f, "fast6"),
        }
    }
}

impl core::str::FromStr for MethodSpec {
    type Err = String;

    fn from_str(s: &str) -> core::result::Result<Self, String> {
        match s {
            "hp3" => Ok(MethodSpec::Hp3),
            "horner6" => Ok(MethodSpec::Horner6),
            "fast6" => Ok(MethodSpec::Fast6),
            _ => {
                let r = s
                    .strip_prefix("general:")
                    .and_then(|r| r.parse::<u32>().ok())
                    .filter(|r| *r >= 2)
                    .ok_or_else(|| {
                        format!("unknown method '{s}' (expected hp3, horner6, fast6 or general:<r>)")
                    })?;
                Ok(MethodSpec::General(r))
            }
        }
    }
}

/// How the input matrix is normalized before building the initial enclosure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingPolicy {
    None,
    ByNorm,
    ByNormSquared,
    /// Try c = 1, then c = ||A||, then c = ||A||^2; first success wins.
    Auto,
}

/// Configuration for the initial enclosure and the iteration driver.
#[derive(Debug, Clone)]
pub struct InitConfig {
    pub norm: NormKind,
    pub scaling: ScalingPolicy,
    /// Stop once the maximum entrywise width is at or below this.
    pub tol: BigRational,
    pub max_iters: usize,
}

impl Default for InitConfig {
    fn default() -> Self {
        InitConfig {
            norm: NormKind::Frobenius,
            scaling: ScalingPolicy::Auto,
            tol: BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(30)),
            max_iters: 50,
        }
    }
}

impl InitConfig {
    fn validate(&self) -> Result<()> {
        if !num_traits::Signed::is_positive(&self.tol) {
            return Err(Error::Precondition(format!(
                "width tolerance must be positive, got {}",
                self.tol
            )));
        }
        if self.max_iters == 0 {
            return Err(Error::Precondition("max_iters must be positive".into()));
        }
        Ok(())
    }
}

/// Per-step matrix product counts, split by cost class.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProductCounts {
    /// Products of point-labelled operands (thin intervals in float modes).
    pub point: usize,
    /// Products with a genuinely interval-valued left factor.
    pub interval: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Termination {
    WidthTolMet,
    MaxIters,
    Stagnated,
}

impl fmt::Display for Termination {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Termination::WidthTolMet => write!(f, "width_tol_met"),
            Termination::MaxIters => write!(f, "max_iters"),
            Termination::Stagnated => write!(f, "stagnated"),
        }
    }
}

/// Outcome of the sufficient convergence check rho(|I - A*X|) < 1 over X0.
#[derive(Debug, Clone, PartialEq)]
pub enum Verification<S> {
    Verified,
    NotVerified { rho_bound: S },
    Skipped,
}

#[derive(Debug, Clone)]
pub struct StepRecord<S> {
    pub k: usize,
    pub enclosure: IntervalMatrix<S>,
    pub max_width: S,
}

/// Full trace of one enclosure run. `steps[0]` is the initial enclosure;
/// every recorded enclosure targets A^-1 (scaling already undone).
#[derive(Debug, Clone)]
pub struct EnclosureRun<S> {
    pub method: MethodSpec,
    /// The factor c such that the iteration internally enclosed (A/c)^-1.
    pub scale: S,
    pub steps: Vec<StepRecord<S>>,
    pub termination: Termination,
    pub verification: Verification<S>,
}

impl<S: Scalar> EnclosureRun<S> {
    pub fn final_enclosure(&self) -> &IntervalMatrix<S> {
        &self.steps.last().expect("runs record at least X0").enclosure
    }

    /// Number of iteration steps performed (excluding the initial enclosure).
    pub fn iterations(&self) -> usize {
        self.steps.len() - 1
    }
}

struct Init<S: Scalar> {
    x0: IntervalMatrix<S>,
    scale: S,
    /// Thin enclosure of A/c; the iteration targets its inverse.
    target: IntervalMatrix<S>,
}

fn thin_identity<S: Scalar>(n: usize, ctx: &S::Ctx) -> Result<IntervalMatrix<S>> {
    Ok(PointMatrix::identity(n, ctx)?.to_thin())
}

/// Attempt the initial enclosure for one scale candidate (`None` = 1).
fn init_for_scale<S: Scalar>(
    a: &PointMatrix<S>,
    norm: NormKind,
    c: Option<S>,
) -> Result<core::result::Result<Init<S>, S>> {
    let ctx = a.get(0, 0).ctx();
    let one = S::from_i64(&ctx, 1);
    let target = match &c {
        None => a.to_thin(),
        Some(c) => a.to_thin().div_point(c)?,
    };
    let ident = thin_identity(a.rows(), &ctx)?;
    let y = ident.sub(&target)?;
    let y_norm = y.mag().norm(norm)?;
    if y_norm >= one {
        return Ok(Err(y_norm));
    }
    let denom = one.dir_sub(&y_norm, Round::Down)?;
    if !denom.is_positive() {
        return Ok(Err(y_norm));
    }
    let bound = one.dir_div(&denom, Round::Up)?;
    let two = S::from_i64(&ctx, 2);
    let diag_hi = two.dir_add(&bound, Round::Up)?;
    let x0 = IntervalMatrix::from_fn(a.rows(), a.cols(), |i, j| {
        if i == j {
            Interval::new(bound.neg(), diag_hi.clone())
        } else {
            Interval::new(bound.neg(), bound.clone())
        }
    })?;
    Ok(Ok(Init {
        x0,
        scale: c.unwrap_or(one),
        target,
    }))
}

fn initialize<S: Scalar>(a: &PointMatrix<S>, cfg: &InitConfig) -> Result<Init<S>> {
    if !a.is_square() {
        return Err(Error::dim("initial enclosure", a.rows(), a.cols()));
    }
    let a_norm = a.norm(cfg.norm)?;
    // a zero norm means a zero matrix; norm-based candidates are unusable
    let mut candidates: Vec<Option<S>> = Vec::new();
    if !matches!(cfg.scaling, ScalingPolicy::ByNorm | ScalingPolicy::ByNormSquared) {
        candidates.push(None);
    }
    if a_norm.is_positive() {
        if matches!(cfg.scaling, ScalingPolicy::ByNorm | ScalingPolicy::Auto) {
            candidates.push(Some(a_norm.clone()));
        }
        if matches!(cfg.scaling, ScalingPolicy::ByNormSquared | ScalingPolicy::Auto) {
            candidates.push(Some(a_norm.dir_mul(&a_norm, Round::Up)?));
        }
    }

    let mut best_norm: Option<S> = None;
    for cand in candidates {
        match init_for_scale(a, cfg.norm, cand)? {
            Ok(init) => return Ok(init),
            Err(y_norm) => {
                best_norm = Some(match best_norm {
                    Some(b) if crate::scalar::cmp(&b, &y_norm) != core::cmp::Ordering::Greater => b,
                    _ => y_norm,
                });
            }
        }
    }
    let best = best_norm.map_or("n/a".to_string(), |b| format!("{b}"));
    Err(Error::NoInitialEnclosure(format!(
        "every permitted scaling leaves ||I - A/c|| >= 1 (best {} bound {best}); \
         the matrix may be singular or far from a scaled identity — precondition \
         the system (e.g. multiply by an approximate inverse) before enclosing",
        cfg.norm,
    )))
}

/// Build the initial enclosure X0 for (A/c)^-1 together with the scale c.
///
/// With Y = I - A/c and ||Y|| < 1, every entry of (A/c)^-1 has magnitude at
/// most a = 1/(1 - ||Y||) (rounded up), so off-diagonal entries are [-a, a]
/// and diagonal entries [-a, 2+a], which centers the enclosure midpoint at
/// the identity.
pub fn build_initial_enclosure<S: Scalar>(
    a: &PointMatrix<S>,
    cfg: &InitConfig,
) -> Result<(IntervalMatrix<S>, S)> {
    let init = initialize(a, cfg)?;
    Ok((init.x0, init.scale))
}

fn verify_enc<S: Scalar>(
    target: &IntervalMatrix<S>,
    x0: &IntervalMatrix<S>,
) -> Result<Verification<S>> {
    let ctx = target.get(0, 0).lo().ctx();
    let ident = thin_identity(target.rows(), &ctx)?;
    let e = ident.sub(&target.mul(x0)?)?;
    let rho = spectral_radius_nonneg(&e.mag())?;
    let one = S::from_i64(&ctx, 1);
    if crate::scalar::cmp(&rho, &one) == core::cmp::Ordering::Less {
        Ok(Verification::Verified)
    } else {
        Ok(Verification::NotVerified { rho_bound: rho })
    }
}

/// Sufficient convergence check: rho(|I - A (x) X0|) < 1 guarantees
/// rho(|I - A*X|) < 1 for every X in X0. `NotVerified` is a value, not an
/// error — the condition is sufficient but not necessary.
pub fn verify_convergence_condition<S: Scalar>(
    a: &PointMatrix<S>,
    x0: &IntervalMatrix<S>,
) -> Result<Verification<S>> {
    verify_enc(&a.to_thin(), x0)
}

/// R = I - A*H for the current point iterate H (one point product).
fn residual<S: Scalar>(
    target: &IntervalMatrix<S>,
    h_thin: &IntervalMatrix<S>,
    counts: &mut ProductCounts,
) -> Result<IntervalMatrix<S>> {
    let ctx = target.get(0, 0).lo().ctx();
    let ident = thin_identity(target.rows(), &ctx)?;
    counts.point += 1;
    ident.sub(&target.mul(h_thin)?)
}

/// R^e by left-to-right binary powering.
fn pow_binary<S: Scalar>(
    base: &IntervalMatrix<S>,
    e: u32,
    counts: &mut ProductCounts,
) -> Result<IntervalMatrix<S>> {
    debug_assert!(e >= 1);
    if e == 1 {
        return Ok(base.clone());
    }
    let top = 31 - e.leading_zeros();
    let mut acc = base.clone();
    for i in (0..top).rev() {
        counts.point += 1;
        acc = acc.mul(&acc)?;
        if (e >> i) & 1 == 1 {
            counts.point += 1;
            acc = acc.mul(base)?;
        }
    }
    Ok(acc)
}

fn step_fast6_in<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    h: &IntervalMatrix<S>,
    counts: &mut ProductCounts,
    track_h: bool,
) -> Result<(IntervalMatrix<S>, Option<IntervalMatrix<S>>)> {
    let ctx = target.get(0, 0).lo().ctx();
    let ident = thin_identity(target.rows(), &ctx)?;
    let r = residual(target, h, counts)?;
    counts.point += 1;
    let s = r.mul(&r)?;
    counts.point += 1;
    let ss = s.mul(&s)?;
    counts.point += 1;
    let t = ss.mul(&r)?;
    let i_plus_r = ident.add(&r)?;
    let w = i_plus_r.add(&s)?;
    counts.point += 1;
    let m = i_plus_r.add(&s.mul(&w)?)?;
    counts.point += 1;
    let hm = h.mul(&m)?;
    let h_next = if track_h {
        counts.point += 1;
        Some(hm.add(&h.mul(&t)?)?)
    } else {
        None
    };
    counts.interval += 1;
    let y = hm.add(&x.mul(&t)?)?;
    Ok((y.intersect(x)?, h_next))
}

fn step_horner6_in<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    h: &IntervalMatrix<S>,
    counts: &mut ProductCounts,
    track_h: bool,
) -> Result<(IntervalMatrix<S>, Option<IntervalMatrix<S>>)> {
    let ctx = target.get(0, 0).lo().ctx();
    let ident = thin_identity(target.rows(), &ctx)?;
    let r = residual(target, h, counts)?;
    counts.point += 1;
    let s = r.mul(&r)?;
    let mut m = ident.add(&r)?;
    for _ in 0..3 {
        counts.point += 1;
        m = ident.add(&r.mul(&m)?)?;
    }
    counts.point += 1;
    let hm = h.mul(&m)?;
    counts.point += 1;
    let ss = s.mul(&s)?;
    counts.point += 1;
    let t = ss.mul(&r)?;
    let h_next = if track_h {
        counts.point += 1;
        Some(hm.add(&h.mul(&t)?)?)
    } else {
        None
    };
    counts.interval += 1;
    let y = hm.add(&x.mul(&t)?)?;
    Ok((y.intersect(x)?, h_next))
}

fn step_hp3_in<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    h: &IntervalMatrix<S>,
    counts: &mut ProductCounts,
    track_h: bool,
) -> Result<(IntervalMatrix<S>, Option<IntervalMatrix<S>>)> {
    let r = residual(target, h, counts)?;
    counts.point += 1;
    let hr = h.mul(&r)?;
    counts.point += 1;
    let r2 = r.mul(&r)?;
    let h_partial = h.add(&hr)?;
    let h_next = if track_h {
        counts.point += 1;
        Some(h_partial.add(&h.mul(&r2)?)?)
    } else {
        None
    };
    counts.interval += 1;
    let y = h_partial.add(&x.mul(&r2)?)?;
    Ok((y.intersect(x)?, h_next))
}

fn step_general_in<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    h: &IntervalMatrix<S>,
    order: u32,
    counts: &mut ProductCounts,
    track_h: bool,
) -> Result<(IntervalMatrix<S>, Option<IntervalMatrix<S>>)> {
    if order < 2 {
        return Err(Error::Precondition(format!(
            "hyper-power order must be at least 2, got {order}"
        )));
    }
    let ctx = target.get(0, 0).lo().ctx();
    let ident = thin_identity(target.rows(), &ctx)?;
    let r = residual(target, h, counts)?;
    // I + R(I + R(... (I + R))) with order-2 identity terms
    let sum = if order == 2 {
        ident.clone()
    } else {
        let mut acc = ident.add(&r)?;
        for _ in 0..(order - 3) {
            counts.point += 1;
            acc = ident.add(&r.mul(&acc)?)?;
        }
        acc
    };
    counts.point += 1;
    let hs = h.mul(&sum)?;
    let power = pow_binary(&r, order - 1, counts)?;
    let h_next = if track_h {
        counts.point += 1;
        Some(hs.add(&h.mul(&power)?)?)
    } else {
        None
    };
    counts.interval += 1;
    let y = hs.add(&x.mul(&power)?)?;
    Ok((y.intersect(x)?, h_next))
}

/// One step with H derived from the current midpoint (the inverse path).
fn step_in<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    method: MethodSpec,
    counts: &mut ProductCounts,
) -> Result<IntervalMatrix<S>> {
    let h = x.midpoint()?.to_thin();
    Ok(step_dispatch(target, x, &h, method, counts, false)?.0)
}

fn step_dispatch<S: Scalar>(
    target: &IntervalMatrix<S>,
    x: &IntervalMatrix<S>,
    h: &IntervalMatrix<S>,
    method: MethodSpec,
    counts: &mut ProductCounts,
    track_h: bool,
) -> Result<(IntervalMatrix<S>, Option<IntervalMatrix<S>>)> {
    match method {
        MethodSpec::Fast6 => step_fast6_in(target, x, h, counts, track_h),
        MethodSpec::Horner6 => step_horner6_in(target, x, h, counts, track_h),
        MethodSpec::Hp3 => step_hp3_in(target, x, h, counts, track_h),
        MethodSpec::General(r) => step_general_in(target, x, h, r, counts, track_h),
    }
}

/// One third-order step; returns the new enclosure and the product counts.
pub fn step_hp3<S: Scalar>(
    a: &PointMatrix<S>,
    x: &IntervalMatrix<S>,
) -> Result<(IntervalMatrix<S>, ProductCounts)> {
    let mut counts = ProductCounts::default();
    let h = x.midpoint()?.to_thin();
    let next = step_hp3_in(&a.to_thin(), x, &h, &mut counts, false)?.0;
    Ok((next, counts))
}

/// One sixth-order step in plain Horner form (8 point-cost products).
pub fn step_horner6<S: Scalar>(
    a: &PointMatrix<S>,
    x: &IntervalMatrix<S>,
) -> Result<(IntervalMatrix<S>, ProductCounts)> {
    let mut counts = ProductCounts::default();
    let h = x.midpoint()?.to_thin();
    let next = step_horner6_in(&a.to_thin(), x, &h, &mut counts, false)?.0;
    Ok((next, counts))
}

/// One sixth-order step in factored form (6 point-cost products).
pub fn step_fast6<S: Scalar>(
    a: &PointMatrix<S>,
    x: &IntervalMatrix<S>,
) -> Result<(IntervalMatrix<S>, ProductCounts)> {
    let mut counts = ProductCounts::default();
    let h = x.midpoint()?.to_thin();
    let next = step_fast6_in(&a.to_thin(), x, &h, &mut counts, false)?.0;
    Ok((next, counts))
}

/// One general order-r step.
pub fn step_general<S: Scalar>(
    a: &PointMatrix<S>,
    x: &IntervalMatrix<S>,
    order: u32,
) -> Result<(IntervalMatrix<S>, ProductCounts)> {
    let mut counts = ProductCounts::default();
    let h = x.midpoint()?.to_thin();
    let next = step_general_in(&a.to_thin(), x, &h, order, &mut counts, false)?.0;
    Ok((next, counts))
}

/// Run a full enclosure iteration for the inverse of a square matrix.
///
/// Stops on the width tolerance, on `max_iters`, or when the maximum width
/// shrinks by less than 1% over a step (the precision floor). Each recorded
/// step is rescaled back to the original matrix, so A^-1 is contained in
/// every recorded enclosure.
pub fn run<S: Scalar>(
    a: &PointMatrix<S>,
    method: MethodSpec,
    cfg: &InitConfig,
) -> Result<EnclosureRun<S>> {
    method.validate()?;
    cfg.validate()?;
    let init = initialize(a, cfg)?;
    let verification = verify_enc(&init.target, &init.x0)?;

    let one = init.scale.one_like();
    let unscaled = init.scale == one;
    let rescale = |x: &IntervalMatrix<S>| -> Result<IntervalMatrix<S>> {
        if unscaled {
            Ok(x.clone())
        } else {
            x.div_point(&init.scale)
        }
    };

    let stagnation_factor = BigRational::new(99.into(), 100.into());
    let mut counts = ProductCounts::default();
    let mut steps = Vec::with_capacity(cfg.max_iters + 1);
    let first = rescale(&init.x0)?;
    let mut prev_width = first.max_width()?.to_rational();
    steps.push(StepRecord {
        k: 0,
        max_width: first.max_width()?,
        enclosure: first,
    });

    let mut cur = init.x0.clone();
    let mut termination = Termination::MaxIters;
    for k in 1..=cfg.max_iters {
        cur = step_in(&init.target, &cur, method, &mut counts).map_err(|e| e.at_step(k))?;
        let rec = rescale(&cur)?;
        let width = rec.max_width()?;
        let width_q = width.to_rational();
        steps.push(StepRecord {
            k,
            enclosure: rec,
            max_width: width,
        });
        if width_q <= cfg.tol {
            termination = Termination::WidthTolMet;
            break;
        }
        if width_q > &prev_width * &stagnation_factor {
            termination = Termination::Stagnated;
            break;
        }
        prev_width = width_q;
    }

    Ok(EnclosureRun {
        method,
        scale: init.scale,
        steps,
        termination,
        verification,
    })
}

/// Configuration for the rectangular (pseudo-inverse) iteration.
#[derive(Debug, Clone)]
pub struct PinvConfig {
    /// Initial half-width around the starting midpoint beta * A^T.
    pub delta: BigRational,
    pub tol: BigRational,
    pub max_iters: usize,
    /// A-posteriori tolerance for the four Moore-Penrose residuals.
    pub residual_tol: BigRational,
}

impl Default for PinvConfig {
    fn default() -> Self {
        PinvConfig {
            delta: BigRational::from_integer(1.into()),
            tol: BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(30)),
            max_iters: 25,
            residual_tol: BigRational::new(1.into(), num_bigint::BigInt::from(10u8).pow(10)),
        }
    }
}

/// Result of a pseudo-inverse run. Containment of A^+ is NOT certified;
/// instead the final midpoint is validated a posteriori against the four
/// Moore-Penrose equations, evaluated exactly in rational arithmetic.
#[derive(Debug, Clone)]
pub struct PseudoInverseRun<S> {
    pub run: EnclosureRun<S>,
    /// max |entry| over AXA-A, XAX-X, (AX)^T-AX, (XA)^T-XA at X = m(final).
    pub mp_residual: BigRational,
    /// Whether `mp_residual <= residual_tol`.
    pub validated: bool,
}

fn max_abs_entry(m: &PointMatrix<BigRational>) -> BigRational {
    let mut best = BigRational::zero();
    for e in m.entries() {
        let a = num_traits::Signed::abs(e);
        if a > best {
            best = a;
        }
    }
    best
}

/// Moore-Penrose residual of a candidate pseudo-inverse, exact.
pub fn moore_penrose_residual(
    a: &PointMatrix<BigRational>,
    x: &PointMatrix<BigRational>,
) -> Result<BigRational> {
    let ax = a.mul(x)?;
    let xa = x.mul(a)?;
    let r1 = max_abs_entry(&ax.mul(a)?.sub(a)?);
    let r2 = max_abs_entry(&xa.mul(x)?.sub(x)?);
    let r3 = max_abs_entry(&ax.transpose().sub(&ax)?);
    let r4 = max_abs_entry(&xa.transpose().sub(&xa)?);
    Ok([r1, r2, r3, r4].into_iter().max().expect("four residuals"))
}

/// Enclosure iteration toward the Moore-Penrose inverse of a full-rank
/// rectangular matrix. The stepper algebra is shared with the square path
/// (R = I_m - A*m(X) is m-by-m, X is n-by-m); the starting midpoint is
/// beta*A^T with beta = 1/(||A||_rowsum * ||A||_colsum).
///
/// When A has more rows than columns the residual I_m - A*m(X) stabilizes
/// at the rank m-n projector onto the complement of the column space, whose
/// absolute value has spectral radius 1 — box widths then cannot contract.
/// Such inputs are handled by running the identical algebra on A^T (full
/// row rank, contracting residual) and transposing every enclosure back;
/// the starting midpoint and all reported shapes are unchanged.
pub fn enclose_pseudo_inverse<S: Scalar>(
    a: &PointMatrix<S>,
    method: MethodSpec,
    cfg: &PinvConfig,
) -> Result<PseudoInverseRun<S>> {
    if a.rows() > a.cols() {
        let out = enclose_pseudo_inverse(&a.transpose(), method, cfg)?;
        let run = EnclosureRun {
            method: out.run.method,
            scale: out.run.scale,
            steps: out
                .run
                .steps
                .into_iter()
                .map(|s| StepRecord {
                    k: s.k,
                    enclosure: s.enclosure.transpose(),
                    max_width: s.max_width,
                })
                .collect(),
            termination: out.run.termination,
            verification: out.run.verification,
        };
        // the four Moore-Penrose residuals are invariant under transposition
        return Ok(PseudoInverseRun {
            run,
            mp_residual: out.mp_residual,
            validated: out.validated,
        });
    }
    method.validate()?;
    if !num_traits::Signed::is_positive(&cfg.tol) || !num_traits::Signed::is_positive(&cfg.delta) {
        return Err(Error::Precondition(
            "pseudo-inverse tolerance and delta must be positive".into(),
        ));
    }
    if cfg.max_iters == 0 {
        return Err(Error::Precondition("max_iters must be positive".into()));
    }
    let ctx = a.get(0, 0).ctx();
    let one = S::from_i64(&ctx, 1);
    let rs = a.norm(NormKind::RowSum)?;
    let cs = a.norm(NormKind::ColSum)?;
    let prod = rs.dir_mul(&cs, Round::Up)?;
    if !prod.is_positive() {
        return Err(Error::Precondition(
            "pseudo-inverse iteration requires a nonzero matrix".into(),
        ));
    }
    let beta = one.dir_div(&prod, Round::Down)?;
    let mid = a.transpose().scale(&beta)?;
    let delta = S::from_rational(&ctx, &cfg.delta, Round::Up)?;
    let x0 = IntervalMatrix::from_fn(mid.rows(), mid.cols(), |i, j| {
        Interval::new(
            mid.get(i, j).dir_sub(&delta, Round::Down)?,
            mid.get(i, j).dir_add(&delta, Round::Up)?,
        )
    })?;
    let target = a.to_thin();

    let stagnation_factor = BigRational::new(99.into(), 100.into());
    let mut counts = ProductCounts::default();
    let mut steps = Vec::with_capacity(cfg.max_iters + 1);
    let init_width = x0.max_width()?;
    let init_width_q = init_width.to_rational();
    steps.push(StepRecord {
        k: 0,
        enclosure: x0.clone(),
        max_width: init_width,
    });

    // The update is driven by a separately tracked point iterate instead of
    // the enclosure midpoint: intersection clipping pushes midpoints off the
    // row space of A^T, and from there the iteration converges to some
    // non-Moore-Penrose right inverse. The tracked iterate stays in the row
    // space and converges to A^+; the enclosure update formula is unchanged.
    let mut cur = x0;
    let mut h_pt = mid;
    let mut prev_width = init_width_q.clone();
    let mut termination = Termination::MaxIters;
    for k in 1..=cfg.max_iters {
        let (next, h_next) =
            step_dispatch(&target, &cur, &h_pt.to_thin(), method, &mut counts, true)
                .map_err(|e| e.at_step(k))?;
        cur = next;
        let h_new = h_next.expect("tracking requested").midpoint()?;
        let movement = max_abs_entry(&h_new.to_rationals().sub(&h_pt.to_rationals())?);
        h_pt = h_new;
        let width = cur.max_width()?;
        let width_q = width.to_rational();
        steps.push(StepRecord {
            k,
            enclosure: cur.clone(),
            max_width: width,
        });
        if width_q <= cfg.tol {
            termination = Termination::WidthTolMet;
            break;
        }
        // widths can plateau while the tracked iterate still improves;
        // stop only when both have settled
        if width_q > &prev_width * &stagnation_factor && movement <= cfg.tol {
            termination = Termination::Stagnated;
            break;
        }
        prev_width = width_q;
    }

    let final_width = steps.last().expect("nonempty").max_width.to_rational();
    if termination != Termination::WidthTolMet && final_width >= init_width_q {
        return Err(Error::NoConvergence {
            iters: steps.len() - 1,
            context: "pseudo-inverse enclosure widths did not contract".into(),
        });
    }

    let final_mid = steps.last().expect("nonempty").enclosure.midpoint()?.to_rationals();
    let mp_residual = moore_penrose_residual(&a.to_rationals(), &final_mid)?;
    let validated = mp_residual <= cfg.residual_tol;
    Ok(PseudoInverseRun {
        run: EnclosureRun {
            method,
            scale: one,
            steps,
            termination,
            verification: Verification::Skipped,
        },
        mp_residual,
        validated,
    })
}
