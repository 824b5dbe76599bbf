//! Exact decimal rendering and the shared matrix text format.
//!
//! All display paths go through rationals, so output never depends on the
//! scalar mode: a value renders the same whether it came from a hardware
//! float, a big float, or an exact rational.
//!
//! Matrix text format: first line "rows cols", then the entries in row-major
//! order separated by whitespace. Each entry is a decimal literal (optionally
//! with an exponent) or an exact fraction "p/q".

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::PointMatrix;
use crate::scalar::Round;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecimalStyle {
    /// Always d.ddd'e'EXP.
    Scientific,
    /// Positional for moderate exponents, scientific otherwise.
    Auto,
}

fn pow10(k: usize) -> BigInt {
    BigInt::from(10u32).pow(k as u32)
}

/// Render a rational in decimal with `sig` significant digits, rounding the
/// digit string in `dir` (so Down/Up rendering never misrepresents a bound).
pub fn rational_to_decimal(q: &BigRational, sig: usize, dir: Round, style: DecimalStyle) -> String {
    let sig = sig.max(1);
    if q.is_zero() {
        return "0".to_string();
    }
    if q.is_negative() {
        let inner = rational_to_decimal(&-q, sig, dir.flip(), style);
        return format!("-{inner}");
    }

    // decimal exponent: 10^e <= q < 10^(e+1)
    let mut e = ((q.numer().bits() as i64 - q.denom().bits() as i64) as f64
        * core::f64::consts::LOG10_2)
        .floor() as i64;
    let ge_pow10 = |e: i64| -> bool {
        if e >= 0 {
            *q.numer() >= q.denom() * pow10(e as usize)
        } else {
            q.numer() * pow10((-e) as usize) >= *q.denom()
        }
    };
    while !ge_pow10(e) {
        e -= 1;
    }
    while ge_pow10(e + 1) {
        e += 1;
    }

    // digit block m = round_dir(q * 10^(sig-1-e)), sig digits long
    let shift = sig as i64 - 1 - e;
    let (n2, d2) = if shift >= 0 {
        (q.numer() * pow10(shift as usize), q.denom().clone())
    } else {
        (q.numer().clone(), q.denom() * pow10((-shift) as usize))
    };
    let (quot, rem) = n2.div_rem(&d2);
    let mut m = quot;
    if !rem.is_zero() {
        match dir {
            Round::Up => m += 1,
            Round::Nearest => {
                if &rem * BigInt::from(2) >= d2 {
                    m += 1;
                }
            }
            Round::Down => {}
        }
    }
    let mut exp10 = e;
    if m == pow10(sig) {
        m /= BigInt::from(10);
        exp10 += 1;
    }

    let digits = m.to_string();
    debug_assert_eq!(digits.len(), sig);

    let positional = matches!(style, DecimalStyle::Auto) && (-4..sig as i64).contains(&exp10);
    if positional {
        if exp10 >= 0 {
            let (int_part, frac_part) = digits.split_at((exp10 + 1) as usize);
            let frac = frac_part.trim_end_matches('0');
            if frac.is_empty() {
                int_part.to_string()
            } else {
                format!("{int_part}.{frac}")
            }
        } else {
            let zeros = "0".repeat((-exp10 - 1) as usize);
            let frac = format!("{zeros}{digits}");
            let frac = frac.trim_end_matches('0');
            format!("0.{frac}")
        }
    } else {
        let (head, tail) = digits.split_at(1);
        let tail = tail.trim_end_matches('0');
        if tail.is_empty() {
            format!("{head}e{exp10}")
        } else {
            format!("{head}.{tail}e{exp10}")
        }
    }
}

/// Parse a decimal literal ("-1.25", "3", "6.33e-19") into an exact rational.
pub fn parse_decimal(s: &str) -> Option<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => {
            let (m, e) = s.split_at(i);
            (m, e[1..].parse::<i64>().ok()?)
        }
        None => (s, 0),
    };
    if exp.unsigned_abs() > 16384 {
        return None;
    }
    let (sign, body) = match mantissa.strip_prefix('-') {
        Some(b) => (-1, b),
        None => (1, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match body.find('.') {
        Some(i) => (&body[..i], &body[i + 1..]),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.bytes().all(|b| b.is_ascii_digit()) || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let n: BigInt = digits.parse().ok()?;
    let mut q = BigRational::new(BigInt::from(sign) * n, pow10(frac_part.len()));
    if exp >= 0 {
        q *= BigRational::from(pow10(exp as usize));
    } else {
        q /= BigRational::from(pow10((-exp) as usize));
    }
    Some(q)
}

/// Parse one matrix entry: "p/q" or a decimal literal.
pub fn parse_entry(s: &str) -> Option<BigRational> {
    if let Some(i) = s.find('/') {
        let num: BigInt = s[..i].parse().ok()?;
        let den: BigInt = s[i + 1..].parse().ok()?;
        if den.is_zero() {
            return None;
        }
        Some(BigRational::new(num, den))
    } else {
        parse_decimal(s)
    }
}

/// Tokens with 1-based line and column positions.
fn tokens(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().flat_map(|(li, line)| {
        line.split_whitespace().map(move |tok| {
            let col = tok.as_ptr() as usize - line.as_ptr() as usize + 1;
            (li + 1, col, tok)
        })
    })
}

/// Parse the matrix text format into an exact rational matrix.
pub fn parse_matrix(text: &str) -> Result<PointMatrix<BigRational>> {
    let mut toks = tokens(text);
    let parse_err = |line, col, msg: String| Error::Parse { line, col, msg };

    let mut dim = |what: &str| -> Result<(usize, usize, usize)> {
        match toks.next() {
            Some((l, c, t)) => {
                let v: usize = t
                    .parse()
                    .map_err(|_| parse_err(l, c, format!("invalid {what} '{t}'")))?;
                if v == 0 {
                    return Err(parse_err(l, c, format!("{what} must be positive")));
                }
                Ok((l, c, v))
            }
            None => Err(parse_err(1, 1, format!("missing {what} in header"))),
        }
    };
    let (hl, _, rows) = dim("row count")?;
    let (_, hc, cols) = dim("column count")?;
    let _ = (hl, hc);

    let mut entries = Vec::with_capacity(rows * cols);
    let mut last = (1, 1);
    for (l, c, tok) in toks.by_ref() {
        if entries.len() == rows * cols {
            return Err(parse_err(
                l,
                c,
                format!("too many entries: expected {}", rows * cols),
            ));
        }
        let v = parse_entry(tok)
            .ok_or_else(|| parse_err(l, c, format!("invalid matrix entry '{tok}'")))?;
        entries.push(v);
        last = (l, c);
    }
    if entries.len() != rows * cols {
        return Err(parse_err(
            last.0,
            last.1,
            format!("expected {} entries, found {}", rows * cols, entries.len()),
        ));
    }
    PointMatrix::new(rows, cols, entries)
}

/// Serialize a rational matrix in the text format with exact "p/q" entries.
pub fn render_matrix(m: &PointMatrix<BigRational>) -> String {
    let mut out = format!("{} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|j| m.get(i, j).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

/// Convert a parsed rational matrix into the active scalar mode with nearest
/// rounding; the converted matrix is the run's ground truth.
pub fn convert_matrix<S: crate::scalar::Scalar>(
    m: &PointMatrix<BigRational>,
    ctx: &S::Ctx,
) -> Result<PointMatrix<S>> {
    PointMatrix::from_fn(m.rows(), m.cols(), |i, j| {
        S::from_rational(ctx, m.get(i, j), Round::Nearest)
    })
}
