//! Mode-independent run reports: text blocks and a JSON schema.
//!
//! Scalars are rendered as decimal strings through exact rationals, so a
//! report carries the same information regardless of the scalar mode and
//! big-float precision survives serialization. Midpoints use a configurable
//! digit count; widths use 3 significant digits in scientific notation.

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::hyperpower::{EnclosureRun, Verification};
use crate::matrix::PointMatrix;
use crate::render::{rational_to_decimal, DecimalStyle};
use crate::scalar::{Round, Scalar};

pub const WIDTH_DIGITS: usize = 3;
pub const DEFAULT_MIDPOINT_DIGITS: usize = 17;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StepReport {
    pub k: usize,
    pub midpoint: Vec<Vec<String>>,
    pub width: Vec<Vec<String>>,
    pub max_width: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub method: String,
    pub scale: String,
    /// `None` when the convergence check was skipped.
    pub verified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rho_bound: Option<String>,
    pub steps: Vec<StepReport>,
    pub termination: String,
}

fn matrix_strings<S: Scalar>(
    m: &PointMatrix<S>,
    digits: usize,
    style: DecimalStyle,
) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|i| {
            (0..m.cols())
                .map(|j| rational_to_decimal(&m.get(i, j).to_rational(), digits, Round::Nearest, style))
                .collect()
        })
        .collect()
}

impl RunReport {
    pub fn from_run<S: Scalar>(run: &EnclosureRun<S>, midpoint_digits: usize) -> Result<Self> {
        let mut steps = Vec::with_capacity(run.steps.len());
        for s in &run.steps {
            steps.push(StepReport {
                k: s.k,
                midpoint: matrix_strings(&s.enclosure.midpoint()?, midpoint_digits, DecimalStyle::Auto),
                width: matrix_strings(&s.enclosure.width()?, WIDTH_DIGITS, DecimalStyle::Scientific),
                max_width: rational_to_decimal(
                    &s.max_width.to_rational(),
                    WIDTH_DIGITS,
                    Round::Nearest,
                    DecimalStyle::Scientific,
                ),
            });
        }
        let (verified, rho_bound) = match &run.verification {
            Verification::Verified => (Some(true), None),
            Verification::NotVerified { rho_bound } => (
                Some(false),
                Some(rational_to_decimal(
                    &rho_bound.to_rational(),
                    6,
                    Round::Up,
                    DecimalStyle::Auto,
                )),
            ),
            Verification::Skipped => (None, None),
        };
        Ok(RunReport {
            method: run.method.to_string(),
            scale: rational_to_decimal(
                &run.scale.to_rational(),
                DEFAULT_MIDPOINT_DIGITS,
                Round::Nearest,
                DecimalStyle::Auto,
            ),
            verified,
            rho_bound,
            steps,
            termination: run.termination.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization cannot fail")
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            out.push_str(&format!("k={}\n", s.k));
            out.push_str("  midpoint:\n");
            push_block(&mut out, &s.midpoint);
            out.push_str("  width (entrywise):\n");
            push_block(&mut out, &s.width);
            out.push_str(&format!("  max width: {}\n", s.max_width));
        }
        out.push_str(&format!("method: {}\n", self.method));
        out.push_str(&format!("iterations: {}\n", self.steps.len().saturating_sub(1)));
        out.push_str(&format!("termination: {}\n", self.termination));
        out.push_str(&format!("scale: {}\n", self.scale));
        let verification = match (self.verified, &self.rho_bound) {
            (Some(true), _) => "verified".to_string(),
            (Some(false), Some(rho)) => format!("not_verified (rho upper bound {rho})"),
            (Some(false), None) => "not_verified".to_string(),
            (None, _) => "skipped".to_string(),
        };
        out.push_str(&format!("verification: {verification}\n"));
        out
    }
}

fn push_block(out: &mut String, rows: &[Vec<String>]) {
    let width = rows
        .iter()
        .flat_map(|r| r.iter().map(|s| s.len()))
        .max()
        .unwrap_or(0);
    for row in rows {
        out.push_str("    ");
        let padded: Vec<String> = row.iter().map(|s| format!("{s:>width$}")).collect();
        out.push_str(&padded.join("  "));
        out.push('\n');
    }
}
