//! End-to-end acceptance run. Executes `xspec check all` twice through the
//! binary, grades criteria 1-8 from the report records, exercises the CLI
//! contract for criterion 9, and prints one PASS/FAIL line per criterion.

use std::path::Path;
use std::process::{Command, Output};
use std::time::Instant;

use serde::Deserialize;
use xspec_core::identities::run_check;

#[derive(Debug, Deserialize)]
struct Rec {
    name: String,
    grid_size: usize,
    max_residual: Option<f64>,
    tolerance: f64,
    verdict: String,
    notes: String,
}

fn xspec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_xspec"))
        .args(args)
        .env_remove("XSPEC_MAX_EVALS")
        .output()
        .expect("binary runs")
}

fn check_all(out: &Path) -> (Option<i32>, Vec<u8>) {
    let o = xspec(&["check", "all", "--out", out.to_str().unwrap()]);
    (o.status.code(), std::fs::read(out).unwrap_or_default())
}

/// How a record may satisfy a criterion.
#[derive(Clone, Copy, PartialEq)]
enum Accept {
    PassOnly,
    /// Pass, or a suspected erratum whose notes show the oracle confirmation.
    PassOrConfirmedErratum,
}

struct Grader<'a> {
    recs: &'a [Rec],
}

impl Grader<'_> {
    fn expect(
        &self,
        name: &str,
        min_grid: usize,
        max_tol: f64,
        accept: Accept,
    ) -> Result<String, String> {
        let r = self
            .recs
            .iter()
            .find(|r| r.name == name)
            .ok_or(format!("{name}: missing from report"))?;
        if r.grid_size < min_grid {
            return Err(format!("{name}: {} points, need {min_grid}", r.grid_size));
        }
        if r.tolerance > max_tol {
            return Err(format!(
                "{name}: tolerance {:e} looser than {max_tol:e}",
                r.tolerance
            ));
        }
        let max = r
            .max_residual
            .map(|v| format!("{v:.1e}"))
            .unwrap_or("n/a".into());
        match r.verdict.as_str() {
            "pass" => Ok(format!("{name} pass ({max})")),
            "suspected-erratum"
                if accept == Accept::PassOrConfirmedErratum && r.notes.contains("oracle") =>
            {
                Ok(format!("{name} suspected-erratum confirmed ({max})"))
            }
            v => Err(format!("{name}: {v} ({max}) {}", r.notes)),
        }
    }

    fn all(&self, items: &[(&str, usize, f64, Accept)]) -> Result<String, String> {
        let mut ok = Vec::new();
        let mut bad = Vec::new();
        for &(n, g, t, a) in items {
            match self.expect(n, g, t, a) {
                Ok(s) => ok.push(s),
                Err(s) => bad.push(s),
            }
        }
        if bad.is_empty() {
            Ok(ok.join("; "))
        } else {
            Err(bad.join("; "))
        }
    }
}

fn report(n: usize, title: &str, r: Result<String, String>) -> bool {
    match &r {
        Ok(s) => println!("criterion {n} ({title}): PASS: {s}"),
        Err(s) => println!("criterion {n} ({title}): FAIL: {s}"),
    }
    r.is_ok()
}

fn rk_grid_spans_lambda_extremes() -> Result<String, String> {
    let r = run_check("rk-two-path", None).ok_or("rk-two-path missing")?;
    let lambdas: Vec<f64> = r.grid.iter().map(|p| p["lambda"]).collect();
    if lambdas.contains(&1.0) && lambdas.contains(&-1.0) {
        Ok("grid includes lambda = -1 and 1".into())
    } else {
        Err("rk-two-path grid lacks lambda = +-1".into())
    }
}

fn polynomial_degrees_up_to_six() -> Result<String, String> {
    let r =
        run_check("frac-polynomial-termwise", None).ok_or("frac-polynomial-termwise missing")?;
    let max = r.grid.iter().map(|p| p["degree"]).fold(0.0, f64::max);
    if max >= 6.0 {
        Ok(format!("degrees up to {max}"))
    } else {
        Err(format!("highest degree {max} below 6"))
    }
}

fn cli_contract(
    first: &(Option<i32>, Vec<u8>),
    second: &(Option<i32>, Vec<u8>),
) -> Result<String, String> {
    let mut problems = Vec::new();
    let code = |args: &[&str]| xspec(args).status.code();

    if code(&[
        "eval", "--fn", "rk", "--z", "1", "--alpha", "0.5", "--q", "1", "--lambda", "0",
    ]) != Some(0)
    {
        problems.push("eval rk did not exit 0".to_string());
    }
    let bad = xspec(&[
        "eval", "--fn", "beta", "--x", "2", "--y", "2", "--mu", "0", "--p", "-1", "--q", "1",
        "--lambda", "0", "--m", "1",
    ]);
    if bad.status.code() != Some(2) || !String::from_utf8_lossy(&bad.stderr).contains("p > 0") {
        problems.push("domain error did not exit 2 naming p > 0".to_string());
    }
    if code(&["check", "no-such-suite"]) != Some(2) {
        problems.push("unknown suite did not exit 2".to_string());
    }
    if !matches!(first.0, Some(0) | Some(4)) {
        problems.push(format!("check all exited {:?}", first.0));
    }
    if first.1.is_empty() || first != second {
        problems.push("repeated check all output differs".to_string());
    }

    let table = xspec(&[
        "table", "--fn", "beta", "--x", "1:3:5", "--y", "1:3:5", "--p", "0.5", "--mu", "0.5",
        "--lambda", "0.5", "--q", "0.5",
    ]);
    let mut rows = 0;
    let mut reader = csv::Reader::from_reader(table.stdout.as_slice());
    for rec in reader.records() {
        let rec = rec.map_err(|e| e.to_string())?;
        rows += 1;
        for cell in rec.iter().take(8) {
            match cell.parse::<f64>() {
                Ok(v) if format!("{v:.16e}") == cell => {}
                _ => problems.push(format!("cell {cell:?} does not round-trip")),
            }
        }
    }
    if rows != 25 || table.status.code() != Some(0) {
        problems.push(format!("5x5 table gave {rows} rows"));
    }

    if problems.is_empty() {
        Ok("exit codes 0/2/2, check all exit in {0, 4}, byte-identical repeated reports, 25-row CSV round-trips at 17 digits".into())
    } else {
        Err(problems.join("; "))
    }
}

fn main() {
    let start = Instant::now();
    let dir = tempfile::tempdir().unwrap();
    let first = check_all(&dir.path().join("a.json"));
    let second = check_all(&dir.path().join("b.json"));
    let recs: Vec<Rec> = serde_json::from_slice(&first.1).unwrap_or_default();
    let g = Grader { recs: &recs };
    use Accept::*;

    let results = [
        report(
            1,
            "reduction chain",
            g.all(&[
                ("rk-reduction", 15, 1e-9, PassOnly),
                ("beta-macdonald-reduction", 5, 1e-9, PassOnly),
                ("beta-chaudhry-reduction", 5, 1e-9, PassOnly),
            ]),
        ),
        report(
            2,
            "two-path agreement",
            g.all(&[
                ("rk-two-path", 60, 1e-8, PassOnly),
                ("hyp-f-two-path", 5, 1e-6, PassOnly),
                ("hyp-phi-two-path", 5, 1e-6, PassOnly),
                ("appell-f1-two-path", 5, 1e-6, PassOnly),
                ("appell-f2-two-path", 5, 1e-6, PassOnly),
                ("lauricella-fd3-two-path", 5, 1e-6, PassOnly),
            ])
            .and_then(|s| rk_grid_spans_lambda_extremes().map(|l| format!("{s}; {l}"))),
        ),
        report(
            3,
            "incomplete gamma suite",
            g.all(&[
                ("gamma-additivity", 3, 1e-8, PassOnly),
                ("gamma-recurrence", 3, 1e-8, PassOnly),
                ("gamma-lambda-derivative", 3, 1e-6, PassOnly),
                ("gamma-laplace", 3, 1e-7, PassOnly),
                ("gamma-parametric-diff", 3, 1e-6, PassOnly),
            ]),
        ),
        report(
            4,
            "decomposition",
            g.all(&[("gamma-decomposition", 3, 1e-6, PassOrConfirmedErratum)]),
        ),
        report(
            5,
            "Mellin transforms",
            g.all(&[
                ("rk-mellin", 3, 1e-4, PassOrConfirmedErratum),
                ("beta-mellin", 3, 1e-4, PassOrConfirmedErratum),
                ("frac-mellin-power", 3, 1e-4, PassOrConfirmedErratum),
                ("frac-mellin-binomial", 3, 1e-4, PassOrConfirmedErratum),
            ]),
        ),
        report(
            6,
            "fractional-derivative closed forms",
            g.all(&[
                ("frac-power", 3, 1e-5, PassOnly),
                ("frac-binomial", 3, 1e-5, PassOnly),
                ("frac-power-binomial", 3, 1e-5, PassOnly),
                ("frac-two-binomials", 3, 1e-5, PassOnly),
                ("frac-three-binomials", 3, 1e-5, PassOnly),
                ("frac-hyp-product", 3, 1e-5, PassOnly),
                ("frac-polynomial-termwise", 3, 1e-8, PassOnly),
            ])
            .and_then(|s| polynomial_degrees_up_to_six().map(|d| format!("{s}; {d}"))),
        ),
        report(
            7,
            "generating relations",
            g.all(&[
                ("genfun-linear", 3, 1e-6, PassOnly),
                ("genfun-bilinear", 3, 1e-6, PassOnly),
                ("genfun-appell", 3, 1e-6, PassOrConfirmedErratum),
            ])
            .and_then(|s| {
                let r = recs.iter().find(|r| r.name == "genfun-appell").unwrap();
                match r.notes.split("passing variant: ").nth(1) {
                    Some(v) => Ok(format!(
                        "{s}; passing variant {}",
                        v.split(';').next().unwrap_or(v)
                    )),
                    None => Err("genfun-appell report does not name a passing variant".into()),
                }
            }),
        ),
        report(
            8,
            "transformation formulas",
            g.all(&[
                ("hyp-f-pfaff", 4, 1e-7, PassOnly),
                ("hyp-phi-kummer", 4, 1e-7, PassOnly),
                ("hyp-f-derivative", 1, 1e-5, PassOnly),
            ]),
        ),
        report(9, "CLI contract", cli_contract(&first, &second)),
    ];

    let elapsed = start.elapsed().as_secs_f64();
    println!("acceptance run took {elapsed:.1} s");
    let failed = results.iter().filter(|ok| !**ok).count();
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
