//! Generating relations for F_μ, checked as truncated series against their
//! closed forms. A truncation passes when its residual is at most
//! max(tol, 10·|last included term|).

use serde::Serialize;

use super::{confirm, reproduces, Builder, CheckReport, VariantReport, Verdict};
use crate::beta_ext::ExtParams;
use crate::error::{require, Result};
use crate::hyp::{appell_f1, appell_f2, hyp_tol, Appell1Args, Appell2Args, GaussSeries, Path};
use crate::numerics::{CompensatedSum, Residual, Tolerance};
use crate::special::beta_classical;

/// Residual of an N-term truncation and the magnitude of its last term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GeneratingResidual {
    pub residual: Residual,
    pub last_term: f64,
}

impl GeneratingResidual {
    /// max(tol, 10 |last term|), with the last term taken relative to the sums.
    pub fn bound(&self, tol: f64) -> f64 {
        tol.max(10.0 * self.residual.relative(self.last_term))
    }

    fn pair(&self, tol: f64) -> (f64, f64) {
        (self.residual.rel(), self.bound(tol))
    }
}

/// Σ_{n<N} (β)_n/n! c_n tⁿ with c_n from `coeff`, compensated.
fn truncated<F: FnMut(u32) -> Result<f64>>(
    beta: f64,
    t: f64,
    terms: u32,
    mut coeff: F,
) -> Result<(f64, f64)> {
    require(terms >= 1, "N >= 1", terms)?;
    let mut acc = CompensatedSum::new();
    let mut c = 1.0;
    let mut last = 0.0;
    for n in 0..terms {
        last = if c == 0.0 { 0.0 } else { c * coeff(n)? };
        acc.add(last);
        c *= (beta + n as f64) / (n as f64 + 1.0) * t;
    }
    Ok((acc.value(), last.abs()))
}

/// Σ (β)_n/n! F_μ(β+n, α+1/2; γ+1; z) tⁿ = (1−t)^{−β} F_μ(β, α+1/2; γ+1; z/(1−t)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LinearGenerating {
    pub beta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub z: f64,
    pub t: f64,
    pub terms: u32,
    pub params: ExtParams,
}

impl LinearGenerating {
    fn validate(&self) -> Result<()> {
        require(
            self.gamma > self.alpha && self.alpha > -0.5,
            "gamma > alpha > -1/2",
            format!("alpha={}, gamma={}", self.alpha, self.gamma),
        )?;
        require(self.beta > 0.0, "beta > 0", self.beta)?;
        require(self.t.abs() < 1.0, "|t| < 1", self.t)?;
        require(
            self.z.abs() < 1f64.min((1.0 - self.t).abs()),
            "|z| < min(1, |1 - t|)",
            self.z,
        )
    }

    fn grid(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("beta", self.beta),
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("z", self.z),
            ("t", self.t),
            ("N", self.terms as f64),
        ]
    }
}

pub fn linear_generating_residual(
    g: &LinearGenerating,
    tol: &Tolerance,
) -> Result<GeneratingResidual> {
    g.validate()?;
    let series = GaussSeries::new(g.beta, g.alpha + 0.5, g.gamma + 1.0, g.params, tol)?;
    let (lhs, last) = truncated(g.beta, g.t, g.terms, |n| {
        Ok(series.eval_with_a(g.beta + n as f64, g.z)?.value)
    })?;
    let rhs = (1.0 - g.t).powf(-g.beta) * series.eval_with_a(g.beta, g.z / (1.0 - g.t))?.value;
    Ok(GeneratingResidual {
        residual: Residual::new(lhs, rhs),
        last_term: last,
    })
}

/// Which shifted F_μ appears in the left-hand sum of the Appell-type relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AppellVariant {
    /// F_μ(β−n, α+1/2; γ+1; z), as the relation is stated.
    BetaShift,
    /// F_μ(τ−n, α+1/2; γ+1; z), the form the expansion of
    /// (1−zu)^{−τ}(1−t(1−zu))^{−β} produces.
    TauShift,
}

impl AppellVariant {
    pub fn label(self) -> &'static str {
        match self {
            AppellVariant::BetaShift => "beta-shift",
            AppellVariant::TauShift => "tau-shift",
        }
    }
}

/// Σ (β)_n/n! F_μ(·−n, α+1/2; γ+1; z) tⁿ = (1−t)^{−β} F_{1,μ}(α+1/2, τ, β; γ+1; z, −zt/(1−t)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AppellGenerating {
    pub beta: f64,
    pub tau: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub z: f64,
    pub t: f64,
    pub terms: u32,
    pub params: ExtParams,
}

impl AppellGenerating {
    fn validate(&self) -> Result<()> {
        require(
            self.gamma > self.alpha && self.alpha > -0.5,
            "gamma > alpha > -1/2",
            format!("alpha={}, gamma={}", self.alpha, self.gamma),
        )?;
        require(self.beta > 0.0, "beta > 0", self.beta)?;
        require(self.tau > 0.0, "tau > 0", self.tau)?;
        require(self.z.abs() < 1.0, "|z| < 1", self.z)?;
        require(self.t.abs() < (1.0 - self.z).abs(), "|t| < |1 - z|", self.t)?;
        require(
            (self.z * self.t).abs() < (1.0 - self.t).abs(),
            "|z||t| < |1 - t|",
            self.t,
        )
    }

    fn grid(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("beta", self.beta),
            ("tau", self.tau),
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("z", self.z),
            ("t", self.t),
            ("N", self.terms as f64),
        ]
    }

    fn shift(&self, v: AppellVariant) -> f64 {
        match v {
            AppellVariant::BetaShift => self.beta,
            AppellVariant::TauShift => self.tau,
        }
    }

    fn rhs_args(&self) -> Appell1Args {
        Appell1Args {
            a: self.alpha + 0.5,
            b: self.tau,
            c: self.beta,
            d: self.gamma + 1.0,
            x: self.z,
            y: -self.z * self.t / (1.0 - self.t),
            params: self.params,
        }
    }
}

pub fn appell_generating_residual(
    g: &AppellGenerating,
    variant: AppellVariant,
    tol: &Tolerance,
) -> Result<GeneratingResidual> {
    g.validate()?;
    let shift = g.shift(variant);
    let series = GaussSeries::new(shift, g.alpha + 0.5, g.gamma + 1.0, g.params, tol)?;
    let (lhs, last) = truncated(g.beta, g.t, g.terms, |n| {
        Ok(series.eval_with_a(shift - n as f64, g.z)?.value)
    })?;
    let rhs = (1.0 - g.t).powf(-g.beta) * appell_f1(&g.rhs_args(), Path::Series)?.value;
    Ok(GeneratingResidual {
        residual: Residual::new(lhs, rhs),
        last_term: last,
    })
}

/// The same residual with every F_μ and the F_{1,μ} taken from their
/// integral representations on the oracle quadrature.
fn appell_generating_oracle(g: &AppellGenerating, variant: AppellVariant, tol: f64) -> Result<f64> {
    let cfg = confirm::config(tol);
    let shift = g.shift(variant);
    let (b, c) = (g.alpha + 0.5, g.gamma + 1.0);
    let lhs = confirm::unit_kernel(
        &g.params,
        |u, s| {
            let base = u.powf(b - 1.5) * s.powf(c - b - 1.5);
            let w = 1.0 - g.z * u;
            let (sum, _) = truncated(g.beta, g.t, g.terms, |n| Ok(w.powf(n as f64 - shift)))
                .unwrap_or((f64::NAN, 0.0));
            base * sum
        },
        &cfg,
    )? / beta_classical(b, c - b)?;
    let a = g.rhs_args();
    let rhs = (1.0 - g.t).powf(-g.beta)
        * confirm::appell_f1(a.a, a.b, a.c, a.d, a.x, a.y, &g.params, &cfg)?;
    Ok(Residual::new(lhs, rhs).rel())
}

/// Σ (β)_n/n! F_μ(β+n, α+1/2; γ+1; z) F_μ(−n, υ+1/2; ξ+1; u) tⁿ
/// = (1−t)^{−β} F_{2,μ}(β, α+1/2, υ+1/2; γ+1, ξ+1; z/(1−t), −ut/(1−t)).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BilinearGenerating {
    pub beta: f64,
    pub alpha: f64,
    pub gamma: f64,
    pub upsilon: f64,
    pub xi: f64,
    pub z: f64,
    pub u: f64,
    pub t: f64,
    pub terms: u32,
    pub params: ExtParams,
}

impl BilinearGenerating {
    fn validate(&self) -> Result<()> {
        require(
            self.xi > self.upsilon && self.upsilon > -0.5,
            "xi > upsilon > -1/2",
            format!("upsilon={}, xi={}", self.upsilon, self.xi),
        )?;
        require(
            self.gamma > self.alpha && self.alpha > -0.5,
            "gamma > alpha > -1/2",
            format!("alpha={}, gamma={}", self.alpha, self.gamma),
        )?;
        require(self.beta > 0.0, "beta > 0", self.beta)?;
        require(self.z.abs() < 1.0, "|z| < 1", self.z)?;
        let r = ((1.0 - self.u) * self.t / (1.0 - self.z)).abs();
        require(r < 1.0, "|(1 - u)t/(1 - z)| < 1", r)?;
        let s = (self.z / (1.0 - self.t)).abs() + (self.u * self.t / (1.0 - self.t)).abs();
        require(s < 1.0, "|z/(1 - t)| + |ut/(1 - t)| < 1", s)
    }

    fn grid(&self) -> Vec<(&'static str, f64)> {
        vec![
            ("beta", self.beta),
            ("alpha", self.alpha),
            ("gamma", self.gamma),
            ("upsilon", self.upsilon),
            ("xi", self.xi),
            ("z", self.z),
            ("u", self.u),
            ("t", self.t),
            ("N", self.terms as f64),
        ]
    }
}

pub fn bilinear_generating_residual(
    g: &BilinearGenerating,
    tol: &Tolerance,
) -> Result<GeneratingResidual> {
    g.validate()?;
    let outer = GaussSeries::new(g.beta, g.alpha + 0.5, g.gamma + 1.0, g.params, tol)?;
    let inner = GaussSeries::new(0.0, g.upsilon + 0.5, g.xi + 1.0, g.params, tol)?;
    let (lhs, last) = truncated(g.beta, g.t, g.terms, |n| {
        Ok(outer.eval_with_a(g.beta + n as f64, g.z)?.value
            * inner.eval_with_a(-(n as f64), g.u)?.value)
    })?;
    let args = Appell2Args {
        a: g.beta,
        b: g.alpha + 0.5,
        c: g.upsilon + 0.5,
        d: g.gamma + 1.0,
        e: g.xi + 1.0,
        x: g.z / (1.0 - g.t),
        y: -g.u * g.t / (1.0 - g.t),
        params: g.params,
    };
    let rhs = (1.0 - g.t).powf(-g.beta) * appell_f2(&args, Path::Series)?.value;
    Ok(GeneratingResidual {
        residual: Residual::new(lhs, rhs),
        last_term: last,
    })
}

fn std_params() -> ExtParams {
    ExtParams::new(0.5, 1.0, 0.5, 0.5, 1.0)
}

pub fn check_linear_generating(points: &[LinearGenerating], tol: f64) -> CheckReport {
    linear_report(Builder::new("genfun-linear", "genfun", tol), points)
}

fn linear_report(mut b: Builder, points: &[LinearGenerating]) -> CheckReport {
    let tol = b.tol();
    for g in points {
        b.add_bounded(
            &g.grid(),
            linear_generating_residual(g, &hyp_tol()).map(|r| r.pair(tol)),
        );
    }
    b.note("bound per point is max(tol, 10 |last term| / |sum|)");
    b.finish()
}

pub(super) fn registry_linear(name: &'static str, suite: &'static str, tol: f64) -> CheckReport {
    let p = std_params();
    let g = |beta, alpha, gamma, z, t| LinearGenerating {
        beta,
        alpha,
        gamma,
        z,
        t,
        terms: 30,
        params: p,
    };
    linear_report(
        Builder::new(name, suite, tol),
        &[
            g(1.0, 0.5, 2.0, 0.2, 0.3),
            g(0.5, 0.0, 1.5, -0.3, -0.4),
            g(1.0, 0.5, 2.0, 0.2, 0.0),
            g(0.8, 0.3, 1.8, 0.4, 0.25),
        ],
    )
}

pub fn check_appell_generating(points: &[AppellGenerating], tol: f64) -> CheckReport {
    appell_report(Builder::new("genfun-appell", "genfun", tol), points)
}

fn appell_report(mut b: Builder, points: &[AppellGenerating]) -> CheckReport {
    let tol = b.tol();
    let stated = AppellVariant::BetaShift;
    let alt = AppellVariant::TauShift;
    let mut alt_res = Vec::new();
    let mut alt_bounds = Vec::new();
    for g in points {
        b.add_bounded(
            &g.grid(),
            appell_generating_residual(g, stated, &hyp_tol()).map(|r| r.pair(tol)),
        );
        match appell_generating_residual(g, alt, &hyp_tol()) {
            Ok(r) => {
                alt_res.push(Some(r.residual.rel()));
                alt_bounds.push(r.bound(tol));
            }
            Err(e) => {
                alt_res.push(None);
                alt_bounds.push(tol);
                b.note(format!("{} evaluation failed: {e}", alt.label()));
            }
        }
    }
    let stated_report = VariantReport::new(stated.label(), b.residuals().to_vec(), b.bounds());
    let alt_report = VariantReport::new(alt.label(), alt_res, &alt_bounds);
    let passing: Vec<&str> = [&stated_report, &alt_report]
        .iter()
        .filter(|v| v.passed)
        .map(|v| v.name.as_str())
        .collect();
    b.note(format!(
        "passing variant: {}",
        if passing.is_empty() {
            "none".to_string()
        } else {
            passing.join(", ")
        }
    ));
    let verdict = if stated_report.passed {
        Verdict::Pass
    } else if alt_report.passed {
        confirm_worst(&mut b, &stated_report, points, |g| {
            appell_generating_oracle(g, stated, tol)
        })
    } else {
        Verdict::Fail
    };
    b.variant(stated_report);
    b.variant(alt_report);
    b.finish_as(verdict)
}

/// Re-evaluates the worst stated-form residual on the oracle and decides
/// between a suspected erratum and a plain failure.
pub(super) fn confirm_worst<T, F>(
    b: &mut Builder,
    stated: &VariantReport,
    points: &[T],
    oracle: F,
) -> Verdict
where
    F: Fn(&T) -> Result<f64>,
{
    let worst = stated
        .residuals
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.filter(|v| v.is_finite()).map(|v| (i, v)))
        .max_by(|a, c| a.1.total_cmp(&c.1));
    let Some((i, first)) = worst else {
        b.note("stated form could not be evaluated");
        return Verdict::Fail;
    };
    match oracle(&points[i]) {
        Ok(second) if reproduces(first, second) => {
            b.note(format!("stated-form residual {first:.3e} at point {i} reproduced by oracle as {second:.3e}"));
            Verdict::SuspectedErratum
        }
        Ok(second) => {
            b.note(format!("stated-form residual {first:.3e} at point {i} not reproduced by oracle ({second:.3e})"));
            Verdict::Fail
        }
        Err(e) => {
            b.note(format!("oracle re-evaluation failed: {e}"));
            Verdict::Fail
        }
    }
}

pub(super) fn registry_appell(name: &'static str, suite: &'static str, tol: f64) -> CheckReport {
    let p = std_params();
    let g = |beta, tau, alpha, gamma, z, t| AppellGenerating {
        beta,
        tau,
        alpha,
        gamma,
        z,
        t,
        terms: 25,
        params: p,
    };
    appell_report(
        Builder::new(name, suite, tol),
        &[
            g(1.0, 0.8, 0.5, 2.0, 0.2, 0.2),
            g(0.6, 1.5, 0.2, 1.6, -0.3, 0.25),
            g(1.2, 0.5, 0.0, 1.2, 0.3, -0.2),
        ],
    )
}

pub fn check_bilinear_generating(points: &[BilinearGenerating], tol: f64) -> CheckReport {
    bilinear_report(Builder::new("genfun-bilinear", "genfun", tol), points)
}

fn bilinear_report(mut b: Builder, points: &[BilinearGenerating]) -> CheckReport {
    let tol = b.tol();
    for g in points {
        b.add_bounded(
            &g.grid(),
            bilinear_generating_residual(g, &hyp_tol()).map(|r| r.pair(tol)),
        );
    }
    b.note("bound per point is max(tol, 10 |last term| / |sum|)");
    b.finish()
}

pub(super) fn registry_bilinear(name: &'static str, suite: &'static str, tol: f64) -> CheckReport {
    let p = std_params();
    let g = |z, u, t| BilinearGenerating {
        beta: 0.8,
        alpha: 0.3,
        gamma: 1.8,
        upsilon: 0.2,
        xi: 1.5,
        z,
        u,
        t,
        terms: 20,
        params: p,
    };
    bilinear_report(
        Builder::new(name, suite, tol),
        &[g(0.15, 0.4, 0.2), g(0.15, -0.4, -0.2), g(0.15, 0.4, 0.0)],
    )
}
