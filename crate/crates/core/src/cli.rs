//! Command-line front end. Data goes to stdout, diagnostics to stderr.
//!
//! Exit codes: 0 success, 1 a tolerance check failed, 2 usage, domain or I/O
//! error. Machine formats (csv, json) carry 12 significant digits, plain
//! tables 6.

use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

use crate::bounds::m_p;
use crate::conformal_maps::MapDescriptor;
use crate::error::Error;
use crate::experiments::{
    alpha1_from_arg, conjecture_probe, corollary_sector, f0_diameter, f0_divergence,
    reproduce_table1, theorem2_reduction, verify_extremal, Check, ExperimentReport, Table1,
    Tolerance,
};
use crate::hyperbolic::P_THRESHOLD;
use crate::quadrature::{
    arc_length, truncated_length, LengthEstimate, ParamCurve, DEFAULT_REL_TOL,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

/// Significant digits in csv and json output.
pub const MACHINE_DIGITS: usize = 12;
/// Significant digits in plain-text tables.
pub const PLAIN_DIGITS: usize = 6;

pub const TABLE_CSV_HEADER: &str = "p,q_star,m_star,lower_bound,paper_m_star,rel_err";

#[derive(Debug, Parser)]
#[command(
    name = "lengthdist",
    version,
    about = "Length distortion bounds for meromorphic univalent maps of the disk"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Distortion bound constants.
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Arc length of the image of a reference curve.
    Length(LengthArgs),
    /// Run an experiment and print its report.
    Experiment(ExperimentArgs),
}

#[derive(Debug, Subcommand)]
enum BoundsCommand {
    /// Evaluate M_p(q).
    Mp {
        #[arg(long, allow_hyphen_values = true)]
        p: f64,
        #[arg(long, allow_hyphen_values = true)]
        q: f64,
    },
    /// Recompute the table of minimal M_p and lower endpoints.
    Table {
        #[arg(long, value_enum, default_value_t = Format::Plain)]
        format: Format,
        /// Write to this file instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MapName {
    Kp,
    F0,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CurveName {
    /// For kp the vertical diameter, for f0 the diameter (−1, 1).
    #[value(name = "I")]
    I,
    /// Left unit semicircle.
    #[value(name = "Cprime")]
    Cprime,
    /// Upper unit semicircle.
    #[value(name = "upper")]
    Upper,
}

#[derive(Debug, Args)]
struct LengthArgs {
    #[arg(long, value_enum)]
    map: MapName,
    /// Pole of k_p, required for --map kp.
    #[arg(long, allow_hyphen_values = true)]
    p: Option<f64>,
    #[arg(long, value_enum)]
    curve: CurveName,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
    /// Cut the open end(s) of the curve back by each eps, e.g. 1e-2,1e-4.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    truncated: Option<Vec<f64>>,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExperimentName {
    Table1,
    Extremal,
    F0,
    Theorem2,
    Corollary,
    Conjecture,
}

#[derive(Debug, Args)]
struct ExperimentArgs {
    #[arg(long, value_enum)]
    name: ExperimentName,
    /// Pole(s). extremal and corollary take one (default 0.9); conjecture
    /// takes a list (default 0.05,0.1,0.2,0.3,√2−1).
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    p: Vec<f64>,
    /// Argument θ ∈ (0, π) of α₁ = e^{iθ} (default π/2).
    #[arg(long, allow_hyphen_values = true)]
    alpha1_arg: Option<f64>,
    /// Pole p₁ on the real axis (default 0.9).
    #[arg(long)]
    p1: Option<f64>,
    /// Rotation angle of the pole (default 0.5).
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    #[arg(long, default_value_t = DEFAULT_REL_TOL)]
    rel_tol: f64,
    #[arg(long, value_enum, default_value_t = Format::Plain)]
    format: Format,
}

enum Failure {
    Usage(String),
    Domain(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// Parse `args` (including the program name) and run. Returns the exit code.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{e}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{e}");
                    EXIT_ERROR
                }
            };
        }
    };
    let result = match cli.command {
        Command::Bounds(BoundsCommand::Mp { p, q }) => bounds_mp(p, q, out),
        Command::Bounds(BoundsCommand::Table { format, out: path }) => {
            bounds_table(format, path, out)
        }
        Command::Length(args) => length(args, out),
        Command::Experiment(args) => experiment(args, out),
    };
    let _ = out.flush();
    match result {
        Ok(passed) => {
            if passed {
                EXIT_OK
            } else {
                let _ = writeln!(err, "lengthdist: one or more checks failed tolerance");
                EXIT_FAILED
            }
        }
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_ERROR
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_ERROR
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: i/o: {e}");
            EXIT_ERROR
        }
    }
}

fn bounds_mp(p: f64, q: f64, out: &mut dyn Write) -> Result<bool, Failure> {
    let value = m_p(p, q)?;
    writeln!(out, "{}", fmt_sig(value, MACHINE_DIGITS))?;
    Ok(true)
}

fn bounds_table(
    format: Format,
    path: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<bool, Failure> {
    let table = reproduce_table1()?;
    let text = render_table(&table, format)?;
    match path {
        Some(path) => File::create(&path)
            .and_then(|mut f| f.write_all(text.as_bytes()))
            .map_err(|e| io::Error::new(e.kind(), format!("{}: {e}", path.display())))?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(table.report.passed)
}

fn render_table(table: &Table1, format: Format) -> Result<String, Failure> {
    let rows: Vec<[f64; 6]> = table
        .rows
        .iter()
        .map(|r| {
            [
                r.row.p,
                r.row.q_star,
                r.row.m_star,
                r.row.lower_bound,
                r.paper_m_star,
                r.rel_err,
            ]
        })
        .collect();
    Ok(match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(TABLE_CSV_HEADER.split(','))?;
            for row in &rows {
                w.write_record(row.iter().map(|x| fmt_sig(*x, MACHINE_DIGITS)))?;
            }
            csv_string(w)?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Doc<'a> {
                rows: Vec<serde_json::Map<String, Value>>,
                passed: bool,
                wall_time_ms: f64,
                checks: &'a [Check],
            }
            let rows = rows
                .iter()
                .map(|row| {
                    TABLE_CSV_HEADER
                        .split(',')
                        .zip(row)
                        .map(|(k, v)| (k.to_string(), Value::from(*v)))
                        .collect()
                })
                .collect();
            json_string(&Doc {
                rows,
                passed: table.report.passed,
                wall_time_ms: table.report.wall_time_ms,
                checks: &table.report.checks,
            })?
        }
        Format::Plain => {
            let header: Vec<String> = TABLE_CSV_HEADER.split(',').map(str::to_string).collect();
            let body: Vec<Vec<String>> = table
                .rows
                .iter()
                .zip(&rows)
                .map(|(r, row)| {
                    let mut cells: Vec<String> =
                        row.iter().map(|x| fmt_sig(*x, PLAIN_DIGITS)).collect();
                    cells.push(if r.passed { "ok".into() } else { "FAIL".into() });
                    cells
                })
                .collect();
            let mut header = header;
            header.push("status".into());
            plain_table(&header, &body)
        }
    })
}

fn length(args: LengthArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let (map, map_label) = match args.map {
        MapName::Kp => {
            let p = args
                .p
                .ok_or_else(|| Failure::Usage("--map kp requires --p".into()))?;
            (MapDescriptor::kp(p)?, format!("kp(p={p})"))
        }
        MapName::F0 => (MapDescriptor::F0, "f0".to_string()),
    };
    let curve = match (args.map, args.curve) {
        (MapName::Kp, CurveName::I) => ParamCurve::diameter_i(),
        (MapName::F0, CurveName::I) => f0_diameter(),
        (_, CurveName::Cprime) => ParamCurve::semicircle_cprime(),
        (_, CurveName::Upper) => ParamCurve::semicircle_upper(),
    };
    let rows: Vec<(Option<f64>, LengthEstimate)> = match &args.truncated {
        Some(eps) => truncated_length(&map, &curve, eps)?
            .into_iter()
            .map(|(e, l)| (Some(e), l))
            .collect(),
        None => {
            if args.map == MapName::F0 && args.curve == CurveName::I {
                return Err(Error::Divergent(
                    "the image of (-1, 1) under f0 has infinite length; use `length --map f0 --curve I --truncated EPS,...`"
                        .into(),
                )
                .into());
            }
            vec![(None, arc_length(&map, &curve, args.rel_tol)?)]
        }
    };
    let header = [
        "map",
        "curve",
        "eps",
        "length",
        "error_estimate",
        "evaluations",
    ];
    let text = match args.format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(header)?;
            for (eps, l) in &rows {
                w.write_record([
                    map_label.clone(),
                    curve.label().to_string(),
                    eps.map_or(String::new(), |e| fmt_sig(e, MACHINE_DIGITS)),
                    fmt_sig(l.value, MACHINE_DIGITS),
                    fmt_sig(l.error_estimate, MACHINE_DIGITS),
                    l.evaluations.to_string(),
                ])?;
            }
            csv_string(w)?
        }
        Format::Json => {
            let docs: Vec<Value> = rows
                .iter()
                .map(|(eps, l)| {
                    serde_json::json!({
                        "map": map_label,
                        "curve": curve.label(),
                        "eps": eps,
                        "length": l.value,
                        "error_estimate": l.error_estimate,
                        "evaluations": l.evaluations,
                    })
                })
                .collect();
            json_string(&docs)?
        }
        Format::Plain => {
            let body: Vec<Vec<String>> = rows
                .iter()
                .map(|(eps, l)| {
                    vec![
                        map_label.clone(),
                        curve.label().to_string(),
                        eps.map_or("-".into(), |e| fmt_sig(e, PLAIN_DIGITS)),
                        fmt_sig(l.value, PLAIN_DIGITS),
                        fmt_sig(l.error_estimate, PLAIN_DIGITS),
                        l.evaluations.to_string(),
                    ]
                })
                .collect();
            let header: Vec<String> = header.iter().map(|s| s.to_string()).collect();
            plain_table(&header, &body)
        }
    };
    out.write_all(text.as_bytes())?;
    Ok(true)
}

fn single_p(ps: &[f64], default: f64) -> Result<f64, Failure> {
    match ps {
        [] => Ok(default),
        [p] => Ok(*p),
        _ => Err(Failure::Usage("this experiment takes a single --p".into())),
    }
}

fn experiment(args: ExperimentArgs, out: &mut dyn Write) -> Result<bool, Failure> {
    let report = match args.name {
        ExperimentName::Table1 => reproduce_table1()?.report,
        ExperimentName::Extremal => verify_extremal(single_p(&args.p, 0.9)?, args.rel_tol)?,
        ExperimentName::F0 => f0_divergence()?,
        ExperimentName::Theorem2 => {
            let alpha1 = alpha1_from_arg(args.alpha1_arg.unwrap_or(std::f64::consts::FRAC_PI_2))?;
            theorem2_reduction(alpha1, args.p1.unwrap_or(0.9))?
        }
        ExperimentName::Corollary => {
            corollary_sector(single_p(&args.p, 0.9)?, args.theta.unwrap_or(0.5))?
        }
        ExperimentName::Conjecture => {
            let ps = if args.p.is_empty() {
                vec![0.05, 0.1, 0.2, 0.3, P_THRESHOLD]
            } else {
                args.p.clone()
            };
            conjecture_probe(&ps)?
        }
    };
    out.write_all(render_report(&report, args.format)?.as_bytes())?;
    Ok(report.passed)
}

fn tolerance_label(t: &Tolerance) -> String {
    match t {
        Tolerance::Relative(x) => format!("rel {}", fmt_sig(*x, 3)),
        Tolerance::Absolute(x) => format!("abs {}", fmt_sig(*x, 3)),
        Tolerance::AtMost => "<=".into(),
        Tolerance::Exceeds => ">".into(),
        Tolerance::Truncated2 => "trunc2".into(),
    }
}

fn render_report(report: &ExperimentReport, format: Format) -> Result<String, Failure> {
    Ok(match format {
        Format::Json => json_string(report)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record([
                "experiment",
                "check",
                "value",
                "error_estimate",
                "target",
                "tolerance",
                "origin",
                "passed",
            ])?;
            for c in &report.checks {
                w.write_record([
                    report.experiment.clone(),
                    c.name.clone(),
                    fmt_sig(c.value, MACHINE_DIGITS),
                    c.error_estimate
                        .map_or(String::new(), |e| fmt_sig(e, MACHINE_DIGITS)),
                    fmt_sig(c.target, MACHINE_DIGITS),
                    tolerance_label(&c.tolerance),
                    origin_label(c),
                    c.passed.to_string(),
                ])?;
            }
            csv_string(w)?
        }
        Format::Plain => {
            let mut s = format!(
                "experiment {}: {} ({:.1} ms)\n",
                report.experiment,
                if report.passed { "PASS" } else { "FAIL" },
                report.wall_time_ms
            );
            if !report.inputs.is_empty() {
                let inputs: Vec<String> = report
                    .inputs
                    .iter()
                    .map(|(k, v)| format!("{k}={}", fmt_sig(*v, PLAIN_DIGITS)))
                    .collect();
                s.push_str(&format!("inputs: {}\n", inputs.join(" ")));
            }
            let header: Vec<String> = ["check", "value", "target", "tolerance", "origin", "status"]
                .iter()
                .map(|x| x.to_string())
                .collect();
            let body: Vec<Vec<String>> = report
                .checks
                .iter()
                .map(|c| {
                    vec![
                        c.name.clone(),
                        fmt_sig(c.value, PLAIN_DIGITS),
                        fmt_sig(c.target, PLAIN_DIGITS),
                        tolerance_label(&c.tolerance),
                        origin_label(c),
                        if c.passed { "ok".into() } else { "FAIL".into() },
                    ]
                })
                .collect();
            s.push_str(&plain_table(&header, &body));
            for note in &report.notes {
                s.push_str(&format!("note: {note}\n"));
            }
            s
        }
    })
}

fn origin_label(c: &Check) -> String {
    match serde_json::to_value(c.origin) {
        Ok(Value::String(s)) => s,
        _ => String::new(),
    }
}

fn csv_string(w: csv::Writer<Vec<u8>>) -> Result<String, Failure> {
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.into_error()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(io::Error::new(io::ErrorKind::InvalidData, e)))
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Io(e.into())
    }
}

fn json_string<T: Serialize>(value: &T) -> Result<String, Failure> {
    let mut v = serde_json::to_value(value).map_err(|e| Failure::Io(e.into()))?;
    round_json(&mut v, MACHINE_DIGITS);
    let mut s = serde_json::to_string_pretty(&v).map_err(|e| Failure::Io(e.into()))?;
    s.push('\n');
    Ok(s)
}

/// Round every non-integer number in `v` to `digits` significant digits.
pub fn round_json(v: &mut Value, digits: usize) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64 number");
            if let Some(r) = fmt_sig(x, digits)
                .parse::<f64>()
                .ok()
                .and_then(serde_json::Number::from_f64)
            {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(|x| round_json(x, digits)),
        Value::Object(map) => map.values_mut().for_each(|x| round_json(x, digits)),
        _ => {}
    }
}

/// `%.{digits}g`: shortest of fixed or scientific notation, trailing zeros trimmed.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        format!("{}e{}", trim_zeros(mantissa), exp)
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

fn plain_table(header: &[String], body: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in body {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        format!("{}\n", padded.join("  ").trim_end())
    };
    let mut s = line(header);
    for row in body {
        s.push_str(&line(row));
    }
    s
}
