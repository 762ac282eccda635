//! Extended Gauss F_μ, confluent Φ_μ, Appell F_{1,μ}, F_{2,μ} and Lauricella F³_{D,μ}
//!
//! Every function has a power-series path built from B_μ ratios and an
//! integral path over the unit interval with the R_K kernel. Series terms
//! cost one nested quadrature each, so B_μ values are memoized per
//! evaluation.

use std::cell::RefCell;

use serde::Serialize;

use crate::beta_ext::{
    beta_ext_with, beta_tol, integrate_unit_kernel, integrate_unit_kernel_memo,
    macdonald_beta_literal, BetaExtArgs, ExtParams, KernelMemo,
};
use crate::error::{require, Result};
use crate::numerics::series::checked;
use crate::numerics::{
    finite_difference, try_sum_series, CompensatedSum, QuadResult, Residual, SeriesResult,
    Tolerance,
};
use crate::special::{beta_classical, pochhammer};

/// Stopping tolerance for the hypergeometric power series.
pub fn hyp_tol() -> Tolerance {
    Tolerance::rel(1e-12)
}

/// Evaluation path for the multi-variable functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Path {
    Series,
    Integral,
}

/// B_μ(x₀+n, y)/B(x₀, y) for n = 0, 1, …, computed once each.
struct BetaRatios {
    params: ExtParams,
    x0: f64,
    y: f64,
    norm: f64,
    tol: Tolerance,
    values: RefCell<Vec<f64>>,
}

impl BetaRatios {
    fn new(x0: f64, y: f64, params: ExtParams) -> Result<Self> {
        Ok(BetaRatios {
            params,
            x0,
            y,
            norm: beta_classical(x0, y)?,
            tol: beta_tol(),
            values: RefCell::new(Vec::new()),
        })
    }

    fn get(&self, n: usize) -> Result<f64> {
        while self.values.borrow().len() <= n {
            let k = self.values.borrow().len();
            let b = beta_ext_with(
                &BetaExtArgs::new(self.x0 + k as f64, self.y, self.params),
                &self.tol,
            )?
            .value;
            self.values.borrow_mut().push(b / self.norm);
        }
        Ok(self.values.borrow()[n])
    }
}

/// (a)_n xⁿ / n! (or xⁿ/n! without a Pochhammer factor) for n = 0, 1, …,
/// extended on demand.
struct PowerCoeffs {
    a: Option<f64>,
    x: f64,
    values: Vec<f64>,
}

impl PowerCoeffs {
    fn new(a: f64, x: f64) -> Self {
        PowerCoeffs {
            a: Some(a),
            x,
            values: vec![1.0],
        }
    }

    fn exponential(x: f64) -> Self {
        PowerCoeffs {
            a: None,
            x,
            values: vec![1.0],
        }
    }

    fn get(&mut self, n: usize) -> f64 {
        while self.values.len() <= n {
            let k = self.values.len();
            let rise = self.a.map_or(1.0, |a| a + (k - 1) as f64);
            let prev = self.values[k - 1];
            self.values.push(prev * rise * self.x / k as f64);
        }
        self.values[n]
    }
}

fn ln_weight(exponent: f64, base: f64) -> f64 {
    if exponent == 0.0 {
        0.0
    } else {
        exponent * base.ln()
    }
}

/// −a·ln(1 − z t), zero when a or z vanish.
fn ln_factor(a: f64, z: f64, t: f64) -> f64 {
    if a == 0.0 || z == 0.0 {
        0.0
    } else {
        -a * (-z * t).ln_1p()
    }
}

fn series_as_quad(r: SeriesResult) -> QuadResult {
    QuadResult {
        value: r.value,
        abs_error_estimate: r.last_term,
        evaluations: r.terms_used,
    }
}

fn scaled(r: QuadResult, norm: f64) -> QuadResult {
    QuadResult {
        value: r.value / norm,
        abs_error_estimate: r.abs_error_estimate / norm,
        evaluations: r.evaluations,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GaussHypArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub z: f64,
    pub params: ExtParams,
}

impl GaussHypArgs {
    pub fn new(a: f64, b: f64, c: f64, z: f64, params: ExtParams) -> Self {
        GaussHypArgs { a, b, c, z, params }
    }

    fn validate_common(&self) -> Result<()> {
        require(self.a.is_finite(), "finite a", self.a)?;
        require(
            self.b > 0.0 && self.c > self.b,
            "c > b > 0",
            format!("b={}, c={}", self.b, self.c),
        )?;
        self.params.validate()
    }

    /// Conditions for the power series.
    pub fn validate(&self) -> Result<()> {
        self.validate_common()?;
        require(self.z.abs() < 1.0, "|z| < 1", self.z)
    }

    /// Conditions for the integral representation, which only needs 1 − zt > 0.
    pub fn validate_integral(&self) -> Result<()> {
        self.validate_common()?;
        require(self.z < 1.0, "z < 1", self.z)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConfluentArgs {
    pub b: f64,
    pub c: f64,
    pub z: f64,
    pub params: ExtParams,
}

impl ConfluentArgs {
    pub fn new(b: f64, c: f64, z: f64, params: ExtParams) -> Self {
        ConfluentArgs { b, c, z, params }
    }

    pub fn validate(&self) -> Result<()> {
        require(self.z.is_finite(), "finite z", self.z)?;
        require(
            self.b > 0.0 && self.c > self.b,
            "c > b > 0",
            format!("b={}, c={}", self.b, self.c),
        )?;
        self.params.validate()
    }
}

/// Σ (a)_n B_μ(b+n, c−b)/B(b, c−b) zⁿ/n!, reusable across several z and a
/// with the B_μ values computed once.
pub struct GaussSeries {
    a: f64,
    ratios: BetaRatios,
    tol: Tolerance,
}

impl GaussSeries {
    pub fn new(a: f64, b: f64, c: f64, params: ExtParams, tol: &Tolerance) -> Result<Self> {
        GaussHypArgs::new(a, b, c, 0.0, params).validate()?;
        Ok(GaussSeries {
            a,
            ratios: BetaRatios::new(b, c - b, params)?,
            tol: *tol,
        })
    }

    pub fn eval(&self, z: f64) -> Result<SeriesResult> {
        self.eval_with_a(self.a, z)
    }

    /// The same series with the first parameter replaced.
    pub fn eval_with_a(&self, a: f64, z: f64) -> Result<SeriesResult> {
        require(z.abs() < 1.0, "|z| < 1", z)?;
        let mut coeff = PowerCoeffs::new(a, z);
        let r = try_sum_series(|n| Ok(coeff.get(n) * self.ratios.get(n)?), &self.tol)?;
        checked(r, "extended Gauss series")
    }
}

/// F_μ(a, b; c; z) by its power series.
pub fn f_mu_series(a: &GaussHypArgs) -> Result<SeriesResult> {
    f_mu_series_with(a, &hyp_tol())
}

pub fn f_mu_series_with(a: &GaussHypArgs, tol: &Tolerance) -> Result<SeriesResult> {
    a.validate()?;
    GaussSeries::new(a.a, a.b, a.c, a.params, tol)?.eval(a.z)
}

/// F_μ(a, b; c; z) from its integral representation; valid for every z < 1.
pub fn f_mu_integral(a: &GaussHypArgs) -> Result<QuadResult> {
    f_mu_integral_with(a, &beta_tol())
}

pub fn f_mu_integral_with(a: &GaussHypArgs, tol: &Tolerance) -> Result<QuadResult> {
    a.validate_integral()?;
    let (xs, ys) = (a.b - 1.5, a.c - a.b - 1.5);
    let r = integrate_unit_kernel(
        &a.params,
        |t, s| {
            Ok((
                ln_weight(xs, t) + ln_weight(ys, s) + ln_factor(a.a, a.z, t),
                1.0,
            ))
        },
        tol,
    )?;
    Ok(scaled(r, beta_classical(a.b, a.c - a.b)?))
}

/// Series inside |z| ≤ 1/2, the integral elsewhere.
pub fn f_mu(a: &GaussHypArgs) -> Result<QuadResult> {
    if a.z.abs() <= 0.5 {
        f_mu_series(a).map(series_as_quad)
    } else {
        f_mu_integral(a)
    }
}

/// F_μ for λ = 0, q = 1 with every term taken from the literal Macdonald-kernel beta.
pub fn f_mu_macdonald_literal(
    a: f64,
    b: f64,
    c: f64,
    z: f64,
    mu: f64,
    p: f64,
    m: f64,
) -> Result<f64> {
    let args = GaussHypArgs::new(a, b, c, z, ExtParams::new(mu, p, 1.0, 0.0, m));
    args.validate()?;
    let norm = beta_classical(b, c - b)?;
    let tol = beta_tol();
    let mut coeff = PowerCoeffs::new(a, z);
    let r = try_sum_series(
        |n| {
            let w = coeff.get(n);
            if w == 0.0 {
                return Ok(0.0);
            }
            Ok(w * macdonald_beta_literal(b + n as f64, c - b, mu, p, m, &tol)? / norm)
        },
        &hyp_tol(),
    )?;
    Ok(checked(r, "literal extended Gauss series")?.value)
}

/// Φ_μ(b; c; z) by its power series.
pub fn phi_mu_series(a: &ConfluentArgs) -> Result<SeriesResult> {
    a.validate()?;
    let ratios = BetaRatios::new(a.b, a.c - a.b, a.params)?;
    let mut coeff = PowerCoeffs::exponential(a.z);
    let r = try_sum_series(|n| Ok(coeff.get(n) * ratios.get(n)?), &hyp_tol())?;
    checked(r, "extended confluent series")
}

/// Φ_μ(b; c; z) from its integral representation.
pub fn phi_mu_integral(a: &ConfluentArgs) -> Result<QuadResult> {
    phi_mu_integral_with(a, &beta_tol())
}

pub fn phi_mu_integral_with(a: &ConfluentArgs, tol: &Tolerance) -> Result<QuadResult> {
    a.validate()?;
    let (xs, ys) = (a.b - 1.5, a.c - a.b - 1.5);
    let r = integrate_unit_kernel(
        &a.params,
        |t, s| Ok((ln_weight(xs, t) + ln_weight(ys, s) + a.z * t, 1.0)),
        tol,
    )?;
    Ok(scaled(r, beta_classical(a.b, a.c - a.b)?))
}

/// dⁿ/dzⁿ F_μ by finite differences of the series against
/// ((a)_n(b)_n/(c)_n) F_μ(a+n, b+n; c+n; z), for n = 1 or 2.
pub fn f_mu_derivative_residual(a: &GaussHypArgs, n: u32) -> Result<Residual> {
    a.validate()?;
    require((1..=2).contains(&n), "1 <= n <= 2", n)?;
    let tol = hyp_tol();
    let series = GaussSeries::new(a.a, a.b, a.c, a.params, &tol)?;
    let lhs = finite_difference(|z| Ok(series.eval(z)?.value), a.z, n, None)?;
    let k = pochhammer(a.a, n) * pochhammer(a.b, n) / pochhammer(a.c, n);
    let shifted = GaussHypArgs::new(
        a.a + n as f64,
        a.b + n as f64,
        a.c + n as f64,
        a.z,
        a.params,
    );
    let rhs = k * f_mu_series_with(&shifted, &tol)?.value;
    Ok(Residual::new(lhs, rhs))
}

/// F_μ(a, b; c; z) against (1−z)^{−a} F_μ(a, c−b; c; z/(z−1)).
pub fn f_mu_pfaff_residual(a: &GaussHypArgs) -> Result<Residual> {
    a.validate_integral()?;
    let lhs = f_mu(a)?.value;
    let zz = a.z / (a.z - 1.0);
    let other = GaussHypArgs::new(a.a, a.c - a.b, a.c, zz, a.params);
    let rhs = (1.0 - a.z).powf(-a.a) * f_mu(&other)?.value;
    Ok(Residual::new(lhs, rhs))
}

/// Φ_μ(b; c; z) against e^z Φ_μ(c−b; c; −z).
pub fn phi_mu_kummer_residual(a: &ConfluentArgs) -> Result<Residual> {
    a.validate()?;
    let lhs = phi_mu_series(a)?.value;
    let other = ConfluentArgs::new(a.c - a.b, a.c, -a.z, a.params);
    let rhs = a.z.exp() * phi_mu_series(&other)?.value;
    Ok(Residual::new(lhs, rhs))
}

/// Sum of a multi-index series grouped by total degree N; `block(N)` is the
/// sum over all indices with that total.
fn degree_series<F>(mut block: F, what: &str) -> Result<SeriesResult>
where
    F: FnMut(usize) -> Result<f64>,
{
    let r = try_sum_series(&mut block, &hyp_tol())?;
    checked(r, what)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Appell1Args {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub x: f64,
    pub y: f64,
    pub params: ExtParams,
}

impl Appell1Args {
    pub fn validate(&self) -> Result<()> {
        require(
            self.a > 0.0 && self.d > self.a,
            "d > a > 0",
            format!("a={}, d={}", self.a, self.d),
        )?;
        require(self.x.abs() < 1.0, "|x| < 1", self.x)?;
        require(self.y.abs() < 1.0, "|y| < 1", self.y)?;
        self.params.validate()
    }
}

pub fn appell_f1(a: &Appell1Args, path: Path) -> Result<QuadResult> {
    a.validate()?;
    match path {
        Path::Series => {
            let ratios = BetaRatios::new(a.a, a.d - a.a, a.params)?;
            let mut cx = PowerCoeffs::new(a.b, a.x);
            let mut cy = PowerCoeffs::new(a.c, a.y);
            degree_series(
                |n| {
                    let mut s = CompensatedSum::new();
                    for i in 0..=n {
                        s.add(cx.get(i) * cy.get(n - i));
                    }
                    let v = s.value();
                    if v == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(v * ratios.get(n)?)
                },
                "extended Appell F1 series",
            )
            .map(series_as_quad)
        }
        Path::Integral => {
            let (xs, ys) = (a.a - 1.5, a.d - a.a - 1.5);
            let r = integrate_unit_kernel(
                &a.params,
                |t, s| {
                    Ok((
                        ln_weight(xs, t)
                            + ln_weight(ys, s)
                            + ln_factor(a.b, a.x, t)
                            + ln_factor(a.c, a.y, t),
                        1.0,
                    ))
                },
                &beta_tol(),
            )?;
            Ok(scaled(r, beta_classical(a.a, a.d - a.a)?))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Appell2Args {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub x: f64,
    pub y: f64,
    pub params: ExtParams,
}

impl Appell2Args {
    pub fn validate(&self) -> Result<()> {
        require(self.a.is_finite(), "finite a", self.a)?;
        require(
            self.b > 0.0 && self.d > self.b,
            "d > b > 0",
            format!("b={}, d={}", self.b, self.d),
        )?;
        require(
            self.c > 0.0 && self.e > self.c,
            "e > c > 0",
            format!("c={}, e={}", self.c, self.e),
        )?;
        require(
            self.x.abs() + self.y.abs() < 1.0,
            "|x| + |y| < 1",
            self.x.abs() + self.y.abs(),
        )?;
        self.params.validate()
    }
}

/// F_{2,μ}. The integral path is an iterated pair of unit-interval
/// quadratures with the second variable weighted by w^{c−3/2}(1−w)^{e−c−3/2}.
pub fn appell_f2(a: &Appell2Args, path: Path) -> Result<QuadResult> {
    a.validate()?;
    match path {
        Path::Series => {
            let rb = BetaRatios::new(a.b, a.d - a.b, a.params)?;
            let rc = BetaRatios::new(a.c, a.e - a.c, a.params)?;
            let mut cx = PowerCoeffs::exponential(a.x);
            let mut cy = PowerCoeffs::exponential(a.y);
            let mut lead = 1.0;
            degree_series(
                |n| {
                    if n > 0 {
                        lead *= a.a + (n - 1) as f64;
                    }
                    if lead == 0.0 {
                        return Ok(0.0);
                    }
                    let mut s = CompensatedSum::new();
                    for i in 0..=n {
                        let w = cx.get(i) * cy.get(n - i);
                        if w != 0.0 {
                            s.add(w * rb.get(i)? * rc.get(n - i)?);
                        }
                    }
                    Ok(lead * s.value())
                },
                "extended Appell F2 series",
            )
            .map(series_as_quad)
        }
        Path::Integral => {
            let tol = beta_tol();
            let inner_tol = tol.tightened(10.0);
            let memo = KernelMemo::default();
            let inner_evals = RefCell::new(0usize);
            let (bx, by) = (a.b - 1.5, a.d - a.b - 1.5);
            let (cx, cy) = (a.c - 1.5, a.e - a.c - 1.5);
            let r = integrate_unit_kernel_memo(
                &a.params,
                |t, s| {
                    let base = 1.0 - a.x * t;
                    let inner = integrate_unit_kernel_memo(
                        &a.params,
                        |w, v| {
                            let g = base - a.y * w;
                            Ok((ln_weight(cx, w) + ln_weight(cy, v) - a.a * g.ln(), 1.0))
                        },
                        &inner_tol,
                        Some(&memo),
                    )?;
                    *inner_evals.borrow_mut() += inner.evaluations;
                    if inner.value <= 0.0 {
                        return Ok((f64::NEG_INFINITY, 0.0));
                    }
                    Ok((ln_weight(bx, t) + ln_weight(by, s) + inner.value.ln(), 1.0))
                },
                &tol,
                Some(&memo),
            )?;
            let norm = beta_classical(a.b, a.d - a.b)? * beta_classical(a.c, a.e - a.c)?;
            let mut out = scaled(r, norm);
            out.evaluations += inner_evals.into_inner();
            Ok(out)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LauricellaArgs {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub e: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub params: ExtParams,
}

impl LauricellaArgs {
    pub fn validate(&self) -> Result<()> {
        require(
            self.a > 0.0 && self.e > self.a,
            "e > a > 0",
            format!("a={}, e={}", self.a, self.e),
        )?;
        require(self.x.abs() < 1.0, "|x| < 1", self.x)?;
        require(self.y.abs() < 1.0, "|y| < 1", self.y)?;
        require(self.z.abs() < 1.0, "|z| < 1", self.z)?;
        self.params.validate()
    }
}

pub fn lauricella_fd3(a: &LauricellaArgs, path: Path) -> Result<QuadResult> {
    a.validate()?;
    match path {
        Path::Series => {
            let ratios = BetaRatios::new(a.a, a.e - a.a, a.params)?;
            let mut cx = PowerCoeffs::new(a.b, a.x);
            let mut cy = PowerCoeffs::new(a.c, a.y);
            let mut cz = PowerCoeffs::new(a.d, a.z);
            degree_series(
                |n| {
                    let mut s = CompensatedSum::new();
                    for i in 0..=n {
                        let wx = cx.get(i);
                        for j in 0..=(n - i) {
                            s.add(wx * cy.get(j) * cz.get(n - i - j));
                        }
                    }
                    let v = s.value();
                    if v == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(v * ratios.get(n)?)
                },
                "extended Lauricella series",
            )
            .map(series_as_quad)
        }
        Path::Integral => {
            let (xs, ys) = (a.a - 1.5, a.e - a.a - 1.5);
            let r = integrate_unit_kernel(
                &a.params,
                |t, s| {
                    Ok((
                        ln_weight(xs, t)
                            + ln_weight(ys, s)
                            + ln_factor(a.b, a.x, t)
                            + ln_factor(a.c, a.y, t)
                            + ln_factor(a.d, a.z, t),
                        1.0,
                    ))
                },
                &beta_tol(),
            )?;
            Ok(scaled(r, beta_classical(a.a, a.e - a.a)?))
        }
    }
}

/// B_μ(x, y)/B(x, y), the value of every function here at the origin.
pub fn beta_ratio(x: f64, y: f64, params: &ExtParams) -> Result<f64> {
    Ok(beta_ext_with(&BetaExtArgs::new(x, y, *params), &beta_tol())?.value / beta_classical(x, y)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pr() -> ExtParams {
        ExtParams::new(0.5, 1.0, 0.5, 0.5, 1.0)
    }

    #[test]
    fn origin_values() {
        let r = beta_ratio(1.0, 1.0, &pr()).unwrap();
        let f = f_mu_series(&GaussHypArgs::new(0.7, 1.0, 2.0, 0.0, pr()))
            .unwrap()
            .value;
        assert_eq!(f, r);
        let i = f_mu_integral(&GaussHypArgs::new(0.0, 1.0, 2.0, 0.6, pr()))
            .unwrap()
            .value;
        assert!(((i - r) / r).abs() < 1e-11);
    }

    #[test]
    fn power_coeffs_match_pochhammer() {
        let mut c = PowerCoeffs::new(0.5, 0.3);
        let v = c.get(4);
        let e = pochhammer(0.5, 4) * 0.3f64.powi(4) / 24.0;
        assert!(((v - e) / e).abs() < 1e-15);
    }

    #[test]
    fn domain_messages() {
        let e = f_mu_series(&GaussHypArgs::new(1.0, 2.0, 1.5, 0.1, pr())).unwrap_err();
        assert!(e.to_string().contains("c > b > 0"));
        let e = f_mu_series(&GaussHypArgs::new(1.0, 1.0, 2.0, 1.5, pr())).unwrap_err();
        assert!(e.to_string().contains("|z| < 1"));
    }
}
