//! Command dispatch for the `hyperinv` binary.
//!
//! Subcommands:
//!  - `enclose <matrix-file>`: run a verified enclosure of the inverse and
//!    print a text or JSON report.
//!  - `er-table`: write the CSV of efficiency ratios between the plain and
//!    the factored sixth-order method.
//!
//! Exit codes: 0 success, 2 parse error, 3 no initial enclosure, 4 empty
//! intersection, 5 I/O error, 6 convergence check failed under --strict,
//! 1 anything else.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use hyperinv::hyperpower::{run, EnclosureRun, InitConfig, MethodSpec, ScalingPolicy, Verification};
use hyperinv::efficiency::write_er_csv;
use hyperinv::render::{convert_matrix, parse_decimal, parse_matrix};
use hyperinv::report::RunReport;
use hyperinv::scalar::{BigF, Precision, Scalar, ScalarMode};
use hyperinv::{BigRational, Error, NormKind, PointMatrix};

#[derive(Debug, Parser)]
#[command(name = "hyperinv", version, about = "Verified interval enclosures of matrix inverses")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enclose the inverse of the matrix in FILE with guaranteed bounds.
    Enclose(EncloseArgs),
    /// Write the efficiency-ratio table (plain vs factored order 6) as CSV.
    ErTable(ErTableArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Hardware,
    Bigfloat,
    Rational,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum NormArg {
    Frobenius,
    Rowsum,
    Colsum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScalingArg {
    Auto,
    None,
    Norm,
    NormSquared,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Args)]
pub struct EncloseArgs {
    /// Matrix file: first line "rows cols", then entries (decimals or p/q).
    pub file: PathBuf,

    /// Iteration method: fast6, horner6, hp3, or general:<r>.
    #[arg(long, default_value = "fast6")]
    pub method: String,

    /// Scalar arithmetic mode.
    #[arg(long, value_enum, default_value_t = ModeArg::Bigfloat)]
    pub mode: ModeArg,

    /// Mantissa bits in bigfloat mode (at least 24).
    #[arg(long, default_value_t = 256)]
    pub precision: usize,

    /// Norm used by the initial enclosure.
    #[arg(long, value_enum, default_value_t = NormArg::Frobenius)]
    pub norm: NormArg,

    /// Pre-scaling policy for badly normalized inputs.
    #[arg(long, value_enum, default_value_t = ScalingArg::Auto)]
    pub scaling: ScalingArg,

    /// Width tolerance (decimal, e.g. 1e-30).
    #[arg(long, default_value = "1e-30")]
    pub tol: String,

    #[arg(long, default_value_t = 50)]
    pub max_iters: usize,

    /// Fail (exit 6) when the sufficient convergence check does not verify.
    #[arg(long)]
    pub strict: bool,

    #[arg(long, value_enum, default_value_t = FormatArg::Text)]
    pub format: FormatArg,

    /// Significant digits for midpoint display.
    #[arg(long, default_value_t = 17)]
    pub digits: usize,
}

#[derive(Debug, Args)]
pub struct ErTableArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub n_min: u32,

    #[arg(long, value_parser = clap::value_parser!(u32).range(2..))]
    pub n_max: u32,

    /// Comma-separated bit sizes, e.g. 64,128.
    #[arg(long, value_delimiter = ',', default_values_t = [64u32, 128])]
    pub bits: Vec<u32>,

    /// Output CSV path.
    #[arg(long)]
    pub out: PathBuf,
}

/// A command failure carrying its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    fn new(code: u8, message: impl Into<String>) -> Self {
        CliError {
            code,
            message: message.into(),
        }
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Parse { .. } => 2,
        Error::NoInitialEnclosure(_) => 3,
        Error::EmptyIntersection { .. } => 4,
        _ => 1,
    }
}

fn lift(err: Error) -> CliError {
    CliError::new(exit_code_for(&err), err.to_string())
}

impl EncloseArgs {
    pub fn scalar_mode(&self) -> ScalarMode {
        match self.mode {
            ModeArg::Hardware => ScalarMode::HardwareFloat,
            ModeArg::Bigfloat => ScalarMode::BigFloat {
                precision_bits: self.precision,
            },
            ModeArg::Rational => ScalarMode::ExactRational,
        }
    }

    fn init_config(&self) -> Result<InitConfig, CliError> {
        let tol = parse_decimal(&self.tol)
            .ok_or_else(|| CliError::new(2, format!("invalid tolerance '{}'", self.tol)))?;
        Ok(InitConfig {
            norm: match self.norm {
                NormArg::Frobenius => NormKind::Frobenius,
                NormArg::Rowsum => NormKind::RowSum,
                NormArg::Colsum => NormKind::ColSum,
            },
            scaling: match self.scaling {
                ScalingArg::Auto => ScalingPolicy::Auto,
                ScalingArg::None => ScalingPolicy::None,
                ScalingArg::Norm => ScalingPolicy::ByNorm,
                ScalingArg::NormSquared => ScalingPolicy::ByNormSquared,
            },
            tol,
            max_iters: self.max_iters,
        })
    }
}

struct EncloseOutcome {
    report: RunReport,
    verified: Option<bool>,
    rho_bound: Option<String>,
}

fn drive<S: Scalar>(
    parsed: &PointMatrix<BigRational>,
    ctx: &S::Ctx,
    method: MethodSpec,
    cfg: &InitConfig,
    digits: usize,
) -> Result<EncloseOutcome, Error> {
    let a: PointMatrix<S> = convert_matrix(parsed, ctx)?;
    let outcome: EnclosureRun<S> = run(&a, method, cfg)?;
    let report = RunReport::from_run(&outcome, digits)?;
    let (verified, rho_bound) = match &outcome.verification {
        Verification::Verified => (Some(true), None),
        Verification::NotVerified { .. } => (Some(false), report.rho_bound.clone()),
        Verification::Skipped => (None, None),
    };
    Ok(EncloseOutcome {
        report,
        verified,
        rho_bound,
    })
}

pub fn cmd_enclose(args: &EncloseArgs) -> Result<String, CliError> {
    let method: MethodSpec = args
        .method
        .parse()
        .map_err(|m: String| CliError::new(2, m))?;
    let mode = args.scalar_mode();
    mode.validate().map_err(lift)?;
    let cfg = args.init_config()?;

    let text = fs::read_to_string(&args.file).map_err(|e| {
        CliError::new(5, format!("cannot read '{}': {e}", args.file.display()))
    })?;
    let parsed = parse_matrix(&text).map_err(lift)?;

    let outcome = match &mode {
        ScalarMode::HardwareFloat => {
            drive::<f64>(&parsed, &(), method, &cfg, args.digits).map_err(lift)?
        }
        ScalarMode::BigFloat { precision_bits } => {
            drive::<BigF>(&parsed, &Precision(*precision_bits), method, &cfg, args.digits)
                .map_err(lift)?
        }
        ScalarMode::ExactRational => {
            drive::<BigRational>(&parsed, &(), method, &cfg, args.digits).map_err(lift)?
        }
    };

    if outcome.verified == Some(false) {
        let rho = outcome.rho_bound.as_deref().unwrap_or("?");
        let note = format!(
            "convergence condition not verified (spectral-radius bound {rho} >= 1); \
             enclosures remain rigorous but convergence is not certified"
        );
        if args.strict {
            return Err(CliError::new(6, note));
        }
        eprintln!("warning: {note}");
    }

    Ok(match args.format {
        FormatArg::Text => outcome.report.render_text(),
        FormatArg::Json => {
            let mut s = outcome.report.to_json();
            s.push('\n');
            s
        }
    })
}

pub fn cmd_er_table(args: &ErTableArgs) -> Result<String, CliError> {
    if args.n_min > args.n_max {
        return Err(CliError::new(
            2,
            format!("--n-min {} exceeds --n-max {}", args.n_min, args.n_max),
        ));
    }
    let rows = hyperinv::efficiency::er_table(args.n_min, args.n_max, &args.bits).map_err(lift)?;
    let mut buf = Vec::new();
    write_er_csv(&rows, &mut buf).expect("writing to memory cannot fail");
    fs::write(&args.out, &buf).map_err(|e| {
        CliError::new(5, format!("cannot write '{}': {e}", args.out.display()))
    })?;
    Ok(format!(
        "wrote {} rows to {}\n",
        rows.len(),
        args.out.display()
    ))
}

/// Run a parsed command; returns the process exit code.
pub fn execute(cli: &Cli) -> u8 {
    let result = match &cli.command {
        Command::Enclose(args) => cmd_enclose(args),
        Command::ErTable(args) => cmd_er_table(args),
    };
    match result {
        Ok(output) => {
            print!("{output}");
            0
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            e.code
        }
    }
}
