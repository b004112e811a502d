//! Command-line front end.
//!
//! Every command prints one JSON [`OutputRecord`] on stdout. Exact values are
//! reduced fractions `p/q`; decimals are rendered from them with an explicit
//! number of places. Exit codes: `0` success, `1` I/O failure, `2` parse
//! error, `3` domain error.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::differentials::{
    classify, dyadic_quotient, is_local_max, mirror_quotient, predicted_dyadic_slope,
    predicted_mirror_slope, slope_limits, subdifferential, superdifferential,
};
use crate::digits::{format_rational, parse_point, DigitExpansion, Rational};
use crate::dini::dini_estimate;
use crate::error::Error;
use crate::evaluator::{takagi, takagi_certified};
use crate::render::to_decimal;
use crate::sets::{in_a, in_m, in_script_a, max_value_check};

/// Environment variable overriding the default number of series terms.
pub const DEFAULT_TERMS_VAR: &str = "TAKAGI_DEFAULT_TERMS";
pub const DEFAULT_TERMS: usize = 64;

/// Header of the CSV written by `scan`.
pub const CSV_HEADER: [&str; 5] = ["x", "t_exact", "t_decimal", "case", "superdiff"];

#[derive(Debug, Parser)]
#[command(
    name = "takagi",
    version,
    about = "Exact Takagi function evaluation and superdifferential classification"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct PointArg {
    /// A rational `p/q`, an integer, or a binary expansion `k.pre(per)`.
    #[arg(allow_hyphen_values = true)]
    pub point: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate T exactly or as a certified partial sum.
    Eval {
        #[command(flatten)]
        point: PointArg,
        /// Number of series terms for the certified bracket.
        #[arg(long, conflicts_with = "exact")]
        terms: Option<usize>,
        /// Closed-form exact value.
        #[arg(long)]
        exact: bool,
        /// Decimal places in rendered values.
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
    /// Classify the point and report its super- and subdifferential.
    Classify {
        #[command(flatten)]
        point: PointArg,
    },
    /// Dini-derivative estimates and exact quotient tables.
    Dini {
        #[command(flatten)]
        point: PointArg,
        #[arg(long, default_value_t = 24)]
        depth: usize,
        #[arg(long, default_value_t = 16)]
        width: usize,
        #[arg(long, default_value_t = 10)]
        digits: usize,
    },
    /// Membership in the maximum set M, the set A and the set ScriptA.
    Maxset {
        #[command(flatten)]
        point: PointArg,
    },
    /// Tabulate T and the classification over an evenly spaced grid.
    Scan {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        #[arg(long, allow_hyphen_values = true)]
        step: String,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value_t = ScanFormat::Csv)]
        format: ScanFormat,
        #[arg(long, default_value_t = 20)]
        digits: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ScanFormat {
    Csv,
    Jsonl,
}

/// One command result.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OutputRecord {
    pub input: String,
    pub command: String,
    pub payload: Map<String, Value>,
    pub exact: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Takagi(#[from] Error),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Io { .. } => 1,
            CliError::Takagi(Error::Parse { .. } | Error::ZeroDenominator(_)) => 2,
            CliError::Takagi(_) => 3,
        }
    }
}

/// Parses `args`, runs the command and writes the record or the error.
/// Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = write!(
                if code == 0 {
                    out as &mut dyn Write
                } else {
                    err
                },
                "{e}"
            );
            return code;
        }
    };
    match execute(&cli.command) {
        Ok(record) => {
            let line = serde_json::to_string(&record).expect("records serialize");
            let _ = writeln!(out, "{line}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn default_terms() -> Result<usize, Error> {
    match std::env::var(DEFAULT_TERMS_VAR) {
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n >= 1 => Ok(n),
            _ => Err(Error::InvalidArgument(format!(
                "{DEFAULT_TERMS_VAR}={v} is not a positive integer"
            ))),
        },
        Err(_) => Ok(DEFAULT_TERMS),
    }
}

fn exact(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

fn record(input: &str, command: &str, payload: Value, is_exact: bool) -> OutputRecord {
    let Value::Object(payload) = payload else {
        unreachable!("payloads are objects")
    };
    OutputRecord {
        input: input.to_string(),
        command: command.to_string(),
        payload,
        exact: is_exact,
    }
}

pub fn execute(command: &Command) -> Result<OutputRecord, CliError> {
    match command {
        Command::Eval {
            point,
            terms,
            exact: want_exact,
            digits,
        } => cmd_eval(&point.point, *terms, *want_exact, *digits),
        Command::Classify { point } => cmd_classify(&point.point),
        Command::Dini {
            point,
            depth,
            width,
            digits,
        } => cmd_dini(&point.point, *depth, *width, *digits),
        Command::Maxset { point } => cmd_maxset(&point.point),
        Command::Scan {
            from,
            to,
            step,
            out,
            format,
            digits,
        } => cmd_scan(from, to, step, out, *format, *digits),
    }
}

pub fn cmd_eval(
    point: &str,
    terms: Option<usize>,
    want_exact: bool,
    digits: usize,
) -> Result<OutputRecord, CliError> {
    let q = parse_point(point)?;
    if want_exact {
        let t = takagi(&DigitExpansion::from_rational(&q));
        let payload = json!({
            "x": exact(&q),
            "value": exact(&t),
            "decimal": to_decimal(&t, digits),
        });
        return Ok(record(point, "eval", payload, true));
    }
    let n = match terms {
        Some(0) => return Err(Error::InvalidArgument("--terms must be at least 1".into()).into()),
        Some(n) => n,
        None => default_terms()?,
    };
    let c = takagi_certified(&q, n);
    let payload = json!({
        "x": exact(&q),
        "value": exact(&c.value),
        "decimal": to_decimal(&c.value, digits),
        "error_bound": exact(&c.error_bound),
        "lower": exact(&c.lower()),
        "upper": exact(&c.upper()),
        "terms": c.terms_used,
    });
    Ok(record(point, "eval", payload, false))
}

pub fn cmd_classify(point: &str) -> Result<OutputRecord, CliError> {
    let q = parse_point(point)?;
    let e = DigitExpansion::from_rational(&q);
    let class = classify(&e);
    let (liminf, limsup) = match slope_limits(&e) {
        Ok(lim) => (json!(lim.liminf.to_string()), json!(lim.limsup.to_string())),
        Err(_) => (Value::Null, Value::Null),
    };
    let payload = json!({
        "x": exact(&q),
        "expansion": e.to_string(),
        "case": class.case().as_str(),
        "witness_m": class.witness_m(),
        "c_x": class.c_x(),
        "superdiff": superdifferential(&e).to_string(),
        "subdiff": subdifferential(&e).to_string(),
        "local_max": is_local_max(&e),
        "slope_liminf": liminf,
        "slope_limsup": limsup,
    });
    Ok(record(point, "classify", payload, true))
}

pub fn cmd_dini(
    point: &str,
    depth: usize,
    width: usize,
    digits: usize,
) -> Result<OutputRecord, CliError> {
    let q = parse_point(point)?;
    let e = DigitExpansion::from_rational(&q);
    let est = dini_estimate(&q, depth, width)?;
    let mut payload = json!({
        "x": exact(&q),
        "depth": est.depth,
        "width": est.width,
        "samples": est.samples,
        "d_minus": exact(&est.d_minus),
        "d_minus_decimal": est.d_minus_decimal(digits),
        "d_plus": exact(&est.d_plus),
        "d_plus_decimal": est.d_plus_decimal(digits),
        "divergent_up": est.divergent_up,
        "divergent_down": est.divergent_down,
    });
    let table = payload.as_object_mut().expect("object");
    match e.dyadic_level() {
        None => {
            let rows = (3..=depth)
                .map(|n| {
                    let mq = mirror_quotient(&e, n)?;
                    Ok(json!({
                        "n": n,
                        "x_prime": exact(&mq.mirror_point),
                        "quotient": exact(&mq.quotient),
                        "predicted": predicted_mirror_slope(&e, n)?,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            table.insert("mirror_table".into(), Value::Array(rows));
        }
        Some(level) => {
            let rows = (level + 1..=depth)
                .map(|p| {
                    Ok(json!({
                        "p": p,
                        "quotient": exact(&dyadic_quotient(&e, p)?),
                        "predicted": predicted_dyadic_slope(&e, p)?,
                    }))
                })
                .collect::<Result<Vec<_>, Error>>()?;
            table.insert("dyadic_level".into(), json!(level));
            table.insert("dyadic_table".into(), Value::Array(rows));
        }
    }
    Ok(record(point, "dini", payload, true))
}

pub fn cmd_maxset(point: &str) -> Result<OutputRecord, CliError> {
    let q = parse_point(point)?;
    let e = DigitExpansion::from_rational(&q);
    let script_a = in_script_a(&e).map(|w| {
        json!({
            "m": w.m,
            "dyadic_part": exact(&w.dyadic_part),
            "scaled_point": exact(&w.scaled_point),
        })
    });
    let payload = json!({
        "x": exact(&q),
        "t_exact": exact(&takagi(&e)),
        "in_M": in_m(&e),
        "in_A": in_a(&e),
        "in_script_A": script_a,
        "max_value": max_value_check(&e),
    });
    Ok(record(point, "maxset", payload, true))
}

/// One row of a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub x: String,
    pub t_exact: String,
    pub t_decimal: String,
    pub case: String,
    pub superdiff: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c_x: Option<i64>,
}

/// Grid points `from, from + step, ...` up to and including `to`.
pub fn scan_grid(from: &Rational, to: &Rational, step: &Rational) -> Result<Vec<Rational>, Error> {
    if step <= &Rational::from_integer(0.into()) {
        return Err(Error::InvalidArgument("scan step must be positive".into()));
    }
    if from >= to {
        return Err(Error::InvalidArgument("scan needs from < to".into()));
    }
    let mut points = Vec::new();
    let mut x = from.clone();
    while &x <= to {
        points.push(x.clone());
        x += step;
    }
    Ok(points)
}

pub fn scan_rows(points: &[Rational], digits: usize) -> Vec<ScanRow> {
    points
        .par_iter()
        .map(|x| {
            let e = DigitExpansion::from_rational(x);
            let t = takagi(&e);
            let class = classify(&e);
            ScanRow {
                x: format_rational(x),
                t_exact: format_rational(&t),
                t_decimal: to_decimal(&t, digits),
                case: class.case().as_str().to_string(),
                superdiff: superdifferential(&e).to_string(),
                witness_m: class.witness_m(),
                c_x: class.c_x(),
            }
        })
        .collect()
}

pub fn write_rows(rows: &[ScanRow], sink: impl Write, format: ScanFormat) -> io::Result<()> {
    match format {
        ScanFormat::Csv => {
            let mut w = csv::Writer::from_writer(sink);
            w.write_record(CSV_HEADER)?;
            for row in rows {
                w.write_record([
                    &row.x,
                    &row.t_exact,
                    &row.t_decimal,
                    &row.case,
                    &row.superdiff,
                ])?;
            }
            w.flush()
        }
        ScanFormat::Jsonl => {
            let mut w = BufWriter::new(sink);
            for row in rows {
                serde_json::to_writer(&mut w, row)?;
                w.write_all(b"\n")?;
            }
            w.flush()
        }
    }
}

pub fn cmd_scan(
    from: &str,
    to: &str,
    step: &str,
    out: &PathBuf,
    format: ScanFormat,
    digits: usize,
) -> Result<OutputRecord, CliError> {
    let (lo, hi, dx) = (parse_point(from)?, parse_point(to)?, parse_point(step)?);
    let points = scan_grid(&lo, &hi, &dx)?;
    let rows = scan_rows(&points, digits);
    let io_err = |source| CliError::Io {
        path: out.display().to_string(),
        source,
    };
    let file = File::create(out).map_err(io_err)?;
    write_rows(&rows, file, format).map_err(io_err)?;
    let max_t = points
        .iter()
        .map(|x| takagi(&DigitExpansion::from_rational(x)))
        .max()
        .expect("grid is nonempty");
    let payload = json!({
        "from": exact(&lo),
        "to": exact(&hi),
        "step": exact(&dx),
        "rows": rows.len(),
        "max_t_exact": exact(&max_t),
        "out": out.display().to_string(),
        "format": match format { ScanFormat::Csv => "csv", ScanFormat::Jsonl => "jsonl" },
    });
    Ok(record(
        &format!("{from}..{to} step {step}"),
        "scan",
        payload,
        true,
    ))
}
