//! Registry of executable identity checks.
//!
//! Every check evaluates both sides of one identity on a fixed parameter grid
//! and returns a [`CheckReport`]. Printed forms that fail while a corrected
//! form passes are reported as suspected errata, and only after an
//! independent re-evaluation at a tenfold tighter tolerance reproduces the
//! residual within a factor of two.

mod checks;
mod confirm;
mod genfun;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

pub use genfun::{
    appell_generating_residual, bilinear_generating_residual, check_appell_generating,
    check_bilinear_generating, check_linear_generating, linear_generating_residual,
    AppellGenerating, AppellVariant, BilinearGenerating, GeneratingResidual, LinearGenerating,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    SuspectedErratum,
}

/// An alternative reading of an identity evaluated on the same grid.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VariantReport {
    pub name: String,
    pub residuals: Vec<Option<f64>>,
    pub max_residual: Option<f64>,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub suite: String,
    pub grid: Vec<BTreeMap<String, f64>>,
    /// One entry per grid point; `None` where an evaluation failed.
    pub residuals: Vec<Option<f64>>,
    /// Pass threshold per grid point.
    pub bounds: Vec<f64>,
    pub tolerance: f64,
    pub max_residual: Option<f64>,
    pub verdict: Verdict,
    pub variants: Vec<VariantReport>,
    pub notes: String,
}

impl CheckReport {
    pub fn grid_size(&self) -> usize {
        self.grid.len()
    }

    pub fn record(&self) -> ReportRecord {
        ReportRecord {
            name: self.name.clone(),
            grid_size: self.grid_size(),
            max_residual: self.max_residual,
            tolerance: self.tolerance,
            verdict: self.verdict,
            notes: self.notes.clone(),
        }
    }
}

/// The per-check record written to report files.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRecord {
    pub name: String,
    pub grid_size: usize,
    pub max_residual: Option<f64>,
    pub tolerance: f64,
    pub verdict: Verdict,
    pub notes: String,
}

fn max_of(residuals: &[Option<f64>]) -> Option<f64> {
    let mut m = 0.0f64;
    for r in residuals {
        let v = (*r)?;
        if !v.is_finite() {
            return None;
        }
        m = m.max(v);
    }
    Some(m)
}

fn within(residuals: &[Option<f64>], bounds: &[f64]) -> bool {
    residuals
        .iter()
        .zip(bounds)
        .all(|(r, b)| matches!(r, Some(v) if v.is_finite() && *v <= *b))
}

impl VariantReport {
    pub(crate) fn new(name: &str, residuals: Vec<Option<f64>>, bounds: &[f64]) -> Self {
        VariantReport {
            name: name.to_string(),
            max_residual: max_of(&residuals),
            passed: within(&residuals, bounds),
            residuals,
        }
    }
}

/// Accumulates grid points for one check.
pub(crate) struct Builder {
    name: &'static str,
    suite: &'static str,
    tol: f64,
    grid: Vec<BTreeMap<String, f64>>,
    residuals: Vec<Option<f64>>,
    bounds: Vec<f64>,
    variants: Vec<VariantReport>,
    notes: Vec<String>,
}

pub(crate) fn point(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

impl Builder {
    pub(crate) fn new(name: &'static str, suite: &'static str, tol: f64) -> Self {
        Builder {
            name,
            suite,
            tol,
            grid: Vec::new(),
            residuals: Vec::new(),
            bounds: Vec::new(),
            variants: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub(crate) fn tol(&self) -> f64 {
        self.tol
    }

    /// Adds a point whose residual must not exceed the check tolerance.
    pub(crate) fn add(&mut self, pairs: &[(&str, f64)], r: Result<f64>) {
        let tol = self.tol;
        self.add_bounded(pairs, r.map(|v| (v, tol)));
    }

    /// Adds a point with its own (residual, bound).
    pub(crate) fn add_bounded(&mut self, pairs: &[(&str, f64)], r: Result<(f64, f64)>) {
        let i = self.grid.len();
        self.grid.push(point(pairs));
        match r {
            Ok((v, b)) => {
                self.residuals.push(Some(v));
                self.bounds.push(b);
            }
            Err(e) => {
                self.residuals.push(None);
                self.bounds.push(self.tol);
                self.notes.push(format!("point {i}: {e}"));
            }
        }
    }

    pub(crate) fn variant(&mut self, v: VariantReport) {
        self.variants.push(v);
    }

    pub(crate) fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub(crate) fn residuals(&self) -> &[Option<f64>] {
        &self.residuals
    }

    pub(crate) fn bounds(&self) -> &[f64] {
        &self.bounds
    }

    pub(crate) fn passes(&self) -> bool {
        within(&self.residuals, &self.bounds)
    }

    /// Pass when every residual is within its bound, fail otherwise.
    pub(crate) fn finish(self) -> CheckReport {
        let v = if self.passes() {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        self.finish_as(v)
    }

    pub(crate) fn finish_as(self, verdict: Verdict) -> CheckReport {
        CheckReport {
            name: self.name.to_string(),
            suite: self.suite.to_string(),
            max_residual: max_of(&self.residuals),
            grid: self.grid,
            residuals: self.residuals,
            bounds: self.bounds,
            tolerance: self.tol,
            verdict,
            variants: self.variants,
            notes: self.notes.join("; "),
        }
    }
}

/// A registered check with its default tolerance.
pub struct Check {
    pub name: &'static str,
    pub suite: &'static str,
    pub tolerance: f64,
    run: fn(&'static str, &'static str, f64) -> CheckReport,
}

impl Check {
    pub fn run(&self, tol: Option<f64>) -> CheckReport {
        (self.run)(self.name, self.suite, tol.unwrap_or(self.tolerance))
    }
}

macro_rules! check {
    ($name:literal, $suite:literal, $tol:expr, $f:path) => {
        Check {
            name: $name,
            suite: $suite,
            tolerance: $tol,
            run: $f,
        }
    };
}

static REGISTRY: &[Check] = &[
    check!("rk-reduction", "rk", 1e-9, checks::rk_reduction),
    check!("rk-two-path", "rk", 1e-8, checks::rk_two_path),
    check!("rk-mellin", "rk", 1e-5, checks::rk_mellin),
    check!(
        "beta-macdonald-reduction",
        "beta",
        1e-9,
        checks::beta_macdonald_reduction
    ),
    check!(
        "beta-chaudhry-reduction",
        "beta",
        1e-9,
        checks::beta_chaudhry_reduction
    ),
    check!("beta-functional", "beta", 1e-9, checks::beta_functional),
    check!("beta-summation", "beta", 1e-9, checks::beta_summation),
    check!(
        "beta-series-one-minus-y",
        "beta",
        1e-9,
        checks::beta_series_one_minus_y
    ),
    check!("beta-series-plain", "beta", 1e-9, checks::beta_series_plain),
    check!("beta-mellin", "beta", 1e-5, checks::beta_mellin),
    check!("gamma-additivity", "gamma", 1e-8, checks::gamma_additivity),
    check!("gamma-recurrence", "gamma", 1e-8, checks::gamma_recurrence),
    check!(
        "gamma-lambda-derivative",
        "gamma",
        1e-6,
        checks::gamma_lambda_derivative
    ),
    check!("gamma-laplace", "gamma", 1e-7, checks::gamma_laplace),
    check!(
        "gamma-parametric-diff",
        "gamma",
        1e-6,
        checks::gamma_parametric_diff
    ),
    check!(
        "gamma-decomposition",
        "gamma",
        1e-6,
        checks::gamma_decomposition
    ),
    check!("hyp-f-two-path", "hyp", 1e-6, checks::hyp_f_two_path),
    check!("hyp-phi-two-path", "hyp", 1e-6, checks::hyp_phi_two_path),
    check!("hyp-f-derivative", "hyp", 1e-5, checks::hyp_f_derivative),
    check!("hyp-f-pfaff", "hyp", 1e-7, checks::hyp_f_pfaff),
    check!("hyp-phi-kummer", "hyp", 1e-7, checks::hyp_phi_kummer),
    check!(
        "appell-f1-two-path",
        "hyp",
        1e-6,
        checks::appell_f1_two_path
    ),
    check!(
        "appell-f2-two-path",
        "hyp",
        1e-6,
        checks::appell_f2_two_path
    ),
    check!(
        "lauricella-fd3-two-path",
        "hyp",
        1e-6,
        checks::lauricella_two_path
    ),
    check!("frac-power", "frac", 1e-5, checks::frac_power),
    check!(
        "frac-polynomial-termwise",
        "frac",
        1e-8,
        checks::frac_polynomial
    ),
    check!("frac-binomial", "frac", 1e-5, checks::frac_binomial),
    check!(
        "frac-power-binomial",
        "frac",
        1e-5,
        checks::frac_power_binomial
    ),
    check!(
        "frac-two-binomials",
        "frac",
        1e-5,
        checks::frac_two_binomials
    ),
    check!(
        "frac-three-binomials",
        "frac",
        1e-5,
        checks::frac_three_binomials
    ),
    check!("frac-hyp-product", "frac", 1e-5, checks::frac_hyp_product),
    check!("frac-mellin-power", "frac", 1e-5, checks::frac_mellin_power),
    check!(
        "frac-mellin-binomial",
        "frac",
        1e-5,
        checks::frac_mellin_binomial
    ),
    check!("classical-rl", "frac", 1e-9, checks::classical_rl),
    check!("genfun-linear", "genfun", 1e-6, genfun::registry_linear),
    check!("genfun-appell", "genfun", 1e-6, genfun::registry_appell),
    check!("genfun-bilinear", "genfun", 1e-6, genfun::registry_bilinear),
];

pub fn registry() -> &'static [Check] {
    REGISTRY
}

/// Checks selected by "all", a suite name, or a single check name; `None`
/// when nothing matches.
pub fn select(selector: &str) -> Option<Vec<&'static Check>> {
    let picked: Vec<&'static Check> = if selector == "all" {
        REGISTRY.iter().collect()
    } else if let Some(c) = REGISTRY.iter().find(|c| c.name == selector) {
        vec![c]
    } else {
        REGISTRY.iter().filter(|c| c.suite == selector).collect()
    };
    (!picked.is_empty()).then_some(picked)
}

/// Runs the given checks concurrently; reports come back in input order.
pub fn run_checks(checks: &[&Check], tol: Option<f64>) -> Vec<CheckReport> {
    checks.par_iter().map(|c| c.run(tol)).collect()
}

pub fn run_all(tol: Option<f64>) -> Vec<CheckReport> {
    run_checks(&REGISTRY.iter().collect::<Vec<_>>(), tol)
}

pub fn run_check(name: &str, tol: Option<f64>) -> Option<CheckReport> {
    REGISTRY.iter().find(|c| c.name == name).map(|c| c.run(tol))
}

/// Second evaluation agrees with the first within a factor of two, and both
/// are clearly nonzero.
pub(crate) fn reproduces(first: f64, second: f64) -> bool {
    first.is_finite() && second.is_finite() && first > 0.0 && second > 0.0 && {
        let r = first / second;
        (0.5..=2.0).contains(&r)
    }
}
