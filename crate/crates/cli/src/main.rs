//! `xspec`: point evaluation, grid tables, Mellin comparisons and identity
//! checks for the extended Bessel-kernel function family.
//!
//! Exit codes: 0 success, 1 a check failed, 2 domain or usage error,
//! 3 non-convergence, 4 a check reported a suspected erratum.

mod functions;
mod grid;

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use xspec_core::identities::{run_checks, select, ReportRecord, Verdict};
use xspec_core::numerics::set_default_max_evals;
use xspec_core::Error;

use functions::{Function, MellinFunction, Outcome, Param, PathChoice, Values};
use grid::{cartesian, Spec};

#[derive(Parser)]
#[command(
    name = "xspec",
    version,
    about = "Extended Bessel-kernel special functions and identity checks"
)]
struct Cli {
    /// Relative tolerance; for `check`, overrides every check's default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Write output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one function at one point.
    Eval(EvalArgs),
    /// Evaluate one function over a Cartesian grid (`--x start:stop:count`).
    Table(EvalArgs),
    /// Compare a Mellin closed form against numerical integration over p.
    Mellin(MellinArgs),
    /// Run identity checks: `all`, a suite name or a single check.
    Check { selector: String },
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long = "fn", value_enum)]
    function: Function,
    /// Evaluation route for the hypergeometric family.
    #[arg(long, value_enum)]
    path: Option<PathChoice>,
    #[command(flatten)]
    values: ParamArgs,
}

#[derive(Args)]
struct MellinArgs {
    #[arg(long = "fn", value_enum)]
    function: MellinFunction,
    #[command(flatten)]
    values: ParamArgs,
}

#[derive(Args, Default)]
struct ParamArgs {
    #[arg(long, allow_hyphen_values = true)]
    z: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    e: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    s: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    p: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Spec>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<Spec>,
}

impl ParamArgs {
    fn given(&self) -> Vec<(&'static str, Spec)> {
        let all = [
            ("z", self.z),
            ("alpha", self.alpha),
            ("beta", self.beta),
            ("delta", self.delta),
            ("x", self.x),
            ("y", self.y),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("d", self.d),
            ("e", self.e),
            ("s", self.s),
            ("mu", self.mu),
            ("p", self.p),
            ("q", self.q),
            ("lambda", self.lambda),
            ("m", self.m),
        ];
        all.into_iter()
            .filter_map(|(k, v)| v.map(|v| (k, v)))
            .collect()
    }

    /// One axis per declared parameter, in declaration order.
    fn axes(&self, fname: &str, params: &[Param]) -> Result<Vec<Vec<f64>>, Failure> {
        let given = self.given();
        if let Some((k, _)) = given
            .iter()
            .find(|(k, _)| !params.iter().any(|(n, _)| n == k))
        {
            return Err(Failure::usage(format!(
                "--{k} is not a parameter of {fname}"
            )));
        }
        params
            .iter()
            .map(
                |(name, default)| match given.iter().find(|(k, _)| k == name) {
                    Some((_, spec)) => Ok(spec.values()),
                    None => default
                        .map(|d| vec![d])
                        .ok_or_else(|| Failure::usage(format!("{fname} requires --{name}"))),
                },
            )
            .collect()
    }

    fn all_scalar(&self) -> bool {
        self.given().iter().all(|(_, s)| s.is_scalar())
    }
}

/// A failed command: message for standard error and the exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: String) -> Self {
        Failure { code: 2, message }
    }

    fn io(e: io::Error) -> Self {
        Failure {
            code: 1,
            message: format!("i/o error: {e}"),
        }
    }
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::Domain(_) | Error::Pole(_) => 2,
        Error::NonConvergence { .. }
        | Error::NonFiniteIntegrand { .. }
        | Error::NonFiniteTerm { .. } => 3,
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: error_code(&e),
            message: e.to_string(),
        }
    }
}

/// One evaluated point; `error` is present only for failed table rows.
#[derive(Serialize)]
struct Record {
    #[serde(rename = "fn")]
    function: &'static str,
    args: BTreeMap<&'static str, f64>,
    value: Option<f64>,
    abs_err: Option<f64>,
    evals: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl Record {
    fn new(
        function: &'static str,
        args: BTreeMap<&'static str, f64>,
        r: &xspec_core::Result<Outcome>,
    ) -> Self {
        match r {
            Ok(o) => Record {
                function,
                args,
                value: Some(o.value),
                abs_err: Some(o.abs_err),
                evals: Some(o.evals),
                error: None,
            },
            Err(e) => Record {
                function,
                args,
                value: None,
                abs_err: None,
                evals: None,
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Serialize)]
struct MellinRecord {
    #[serde(rename = "fn")]
    function: &'static str,
    args: BTreeMap<&'static str, f64>,
    closed: f64,
    numeric: f64,
    abs_err: f64,
    evals: usize,
    rel_residual: f64,
}

/// Fixed 17-significant-digit decimal, so parsing reproduces the value exactly.
fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

fn emit(out: Option<&FsPath>, bytes: &[u8]) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, bytes).map_err(Failure::io),
        None => io::stdout().write_all(bytes).map_err(Failure::io),
    }
}

fn json_line<T: Serialize>(v: &T) -> Vec<u8> {
    let mut s = serde_json::to_vec_pretty(v).expect("records serialize");
    s.push(b'\n');
    s
}

fn csv_rows(names: &[&'static str], rows: &Rows) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header: Vec<&str> = names.to_vec();
    header.extend(["value", "abs_err", "evals", "error"]);
    w.write_record(&header).map_err(|e| Failure::io(e.into()))?;
    for (point, r) in rows {
        let mut rec: Vec<String> = point.iter().map(|&v| fmt_f64(v)).collect();
        match r {
            Ok(o) => rec.extend([
                fmt_f64(o.value),
                fmt_f64(o.abs_err),
                o.evals.to_string(),
                String::new(),
            ]),
            Err(e) => rec.extend([String::new(), String::new(), String::new(), e.to_string()]),
        }
        w.write_record(&rec).map_err(|e| Failure::io(e.into()))?;
    }
    w.into_inner().map_err(|e| Failure::io(e.into_error()))
}

/// Grid points with their outcomes, in grid order.
type Rows = Vec<(Vec<f64>, xspec_core::Result<Outcome>)>;

fn evaluate_grid(args: &EvalArgs, tol: Option<f64>) -> Result<(Vec<&'static str>, Rows), Failure> {
    let f = args.function;
    let params = f.params();
    let names: Vec<&'static str> = params.iter().map(|(n, _)| *n).collect();
    let points = cartesian(&args.values.axes(f.name(), params)?);
    let rows = points
        .into_par_iter()
        .map(|point| {
            let values = Values(names.iter().copied().zip(point.iter().copied()).collect());
            let r = f.eval(&values, tol, args.path);
            (point, r)
        })
        .collect();
    Ok((names, rows))
}

fn args_map(names: &[&'static str], point: &[f64]) -> BTreeMap<&'static str, f64> {
    names.iter().copied().zip(point.iter().copied()).collect()
}

fn cmd_eval(cli: &Cli, args: &EvalArgs) -> Result<(), Failure> {
    if !args.values.all_scalar() {
        return Err(Failure::usage(
            "eval takes single values; use `table` for grids".into(),
        ));
    }
    let (names, rows) = evaluate_grid(args, cli.tol)?;
    let (point, r) = &rows[0];
    if let Err(e) = r {
        return Err(e.clone().into());
    }
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&Record::new(
            args.function.name(),
            args_map(&names, point),
            r,
        )),
        Format::Csv => csv_rows(&names, &rows)?,
    };
    emit(cli.out.as_deref(), &bytes)
}

fn cmd_table(cli: &Cli, args: &EvalArgs) -> Result<(), Failure> {
    let (names, rows) = evaluate_grid(args, cli.tol)?;
    let bytes = match cli.format.unwrap_or(Format::Csv) {
        Format::Csv => csv_rows(&names, &rows)?,
        Format::Json => {
            let recs: Vec<Record> = rows
                .iter()
                .map(|(p, r)| Record::new(args.function.name(), args_map(&names, p), r))
                .collect();
            json_line(&recs)
        }
    };
    emit(cli.out.as_deref(), &bytes)?;
    let failed = rows.iter().filter(|(_, r)| r.is_err()).count();
    if failed > 0 {
        eprintln!(
            "warning: {failed} of {} rows failed; see the error column",
            rows.len()
        );
    }
    Ok(())
}

fn cmd_mellin(cli: &Cli, args: &MellinArgs) -> Result<(), Failure> {
    if !args.values.all_scalar() {
        return Err(Failure::usage("mellin takes single values".into()));
    }
    let f = args.function;
    let params = f.params();
    let names: Vec<&'static str> = params.iter().map(|(n, _)| *n).collect();
    let point: Vec<f64> = args
        .values
        .axes(f.name(), params)?
        .into_iter()
        .map(|a| a[0])
        .collect();
    let values = Values(args_map(&names, &point));
    let r = f.eval(&values, cli.tol)?;
    let numeric = r.numeric.value;
    let rec = MellinRecord {
        function: f.name(),
        args: values.0,
        closed: r.closed,
        numeric,
        abs_err: r.numeric.abs_err,
        evals: r.numeric.evals,
        rel_residual: (r.closed - numeric).abs()
            / r.closed.abs().max(numeric.abs()).max(f64::MIN_POSITIVE),
    };
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&rec),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<&str> = names.clone();
            header.extend(["closed", "numeric", "abs_err", "evals", "rel_residual"]);
            let mut row: Vec<String> = point.iter().map(|&v| fmt_f64(v)).collect();
            row.extend([
                fmt_f64(rec.closed),
                fmt_f64(numeric),
                fmt_f64(rec.abs_err),
                rec.evals.to_string(),
                fmt_f64(rec.rel_residual),
            ]);
            w.write_record(&header)
                .and_then(|_| w.write_record(&row))
                .map_err(|e| Failure::io(e.into()))?;
            w.into_inner().map_err(|e| Failure::io(e.into_error()))?
        }
    };
    emit(cli.out.as_deref(), &bytes)
}

fn report_csv(records: &[ReportRecord]) -> Result<Vec<u8>, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record([
        "name",
        "grid_size",
        "max_residual",
        "tolerance",
        "verdict",
        "notes",
    ])
    .map_err(|e| Failure::io(e.into()))?;
    for r in records {
        let verdict = serde_json::to_value(r.verdict).expect("verdict serializes");
        w.write_record([
            r.name.clone(),
            r.grid_size.to_string(),
            r.max_residual.map(fmt_f64).unwrap_or_default(),
            fmt_f64(r.tolerance),
            verdict.as_str().unwrap_or_default().to_string(),
            r.notes.clone(),
        ])
        .map_err(|e| Failure::io(e.into()))?;
    }
    w.into_inner().map_err(|e| Failure::io(e.into_error()))
}

/// Runs the selection and returns the exit code it earns.
fn cmd_check(cli: &Cli, selector: &str) -> Result<u8, Failure> {
    let checks = select(selector)
        .ok_or_else(|| Failure::usage(format!("unknown suite or check: {selector}")))?;
    let reports = run_checks(&checks, cli.tol);
    let records: Vec<ReportRecord> = reports.iter().map(|r| r.record()).collect();
    let bytes = match cli.format.unwrap_or(Format::Json) {
        Format::Json => json_line(&records),
        Format::Csv => report_csv(&records)?,
    };
    emit(cli.out.as_deref(), &bytes)?;
    for r in &records {
        let max = r
            .max_residual
            .map(|v| format!("{v:.3e}"))
            .unwrap_or_else(|| "n/a".into());
        eprintln!(
            "{:<28} {:<18} max residual {max} (tol {:e})",
            r.name,
            format!("{:?}", r.verdict),
            r.tolerance
        );
    }
    let code = if records.iter().any(|r| r.verdict == Verdict::Fail) {
        1
    } else if records
        .iter()
        .any(|r| r.verdict == Verdict::SuspectedErratum)
    {
        4
    } else {
        0
    };
    Ok(code)
}

fn configure(cli: &Cli) -> Result<(), Failure> {
    if let Some(t) = cli.tol {
        if !(t > 0.0 && t < 1.0) {
            return Err(Failure::usage(format!("0 < tol < 1 violated (got {t})")));
        }
    }
    if let Ok(v) = std::env::var("XSPEC_MAX_EVALS") {
        let n: usize = v.trim().parse().ok().filter(|&n| n > 0).ok_or_else(|| {
            Failure::usage(format!(
                "XSPEC_MAX_EVALS must be a positive integer, got {v:?}"
            ))
        })?;
        set_default_max_evals(n);
    }
    Ok(())
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    configure(cli)?;
    match &cli.command {
        Command::Eval(a) => cmd_eval(cli, a).map(|_| 0),
        Command::Table(a) => cmd_table(cli, a).map(|_| 0),
        Command::Mellin(a) => cmd_mellin(cli, a).map(|_| 0),
        Command::Check { selector } => cmd_check(cli, selector),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
