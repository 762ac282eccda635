//! Slow re-evaluations on the oracle quadrature, used to confirm suspected
//! errata. The R_K kernel values come from the production engine; every outer
//! integral runs on the oracle's graded Gauss–Legendre panels instead of the
//! double-exponential rules.

use std::f64::consts::PI;

use xspec_oracle::{oracle_integrate, OracleConfig, OracleError, Upper};

use crate::beta_ext::ExtParams;
use crate::error::{Error, Result};
use crate::gamma_ext::PhiKernelArgs;
use crate::numerics::Tolerance;
use crate::rk::{rk_ln, rk_ln_bound, RkArgs};
use crate::special::{beta_classical, hyp0f2};

/// Oracle settings a decade tighter than `tol` (and never looser than the
/// oracle's own floor).
pub(crate) fn config(tol: f64) -> OracleConfig {
    OracleConfig {
        panels: 200,
        ..OracleConfig::with_target((tol / 10.0).min(1e-10))
    }
}

fn lift(e: OracleError) -> Error {
    Error::NonConvergence {
        what: format!("oracle quadrature: {e}"),
        estimate: f64::NAN,
        evaluations: 0,
    }
}

fn kernel_tol() -> Tolerance {
    Tolerance::rel(1e-14)
}

/// R_K(z, −μ−1/2, q, λ), zero where it underflows; NaN on failure so the
/// oracle reports it.
fn rk_value(z: f64, params: &ExtParams) -> f64 {
    let a = RkArgs::new(z, -params.mu - 0.5, params.q, params.lambda);
    if !z.is_finite() || rk_ln_bound(&a) < -745.0 {
        return 0.0;
    }
    rk_ln(&a, &kernel_tol())
        .map(|v| v.ln.exp())
        .unwrap_or(f64::NAN)
}

/// √(2p/π) ∫₀¹ w(t, 1−t) R_K(p/(t(1−t))^m, −μ−1/2, q, λ) dt.
pub(crate) fn unit_kernel<W: Fn(f64, f64) -> f64>(
    params: &ExtParams,
    w: W,
    cfg: &OracleConfig,
) -> Result<f64> {
    let lead = (2.0 * params.p / PI).sqrt();
    let v = oracle_integrate(
        |t| {
            let s = 1.0 - t;
            let k = rk_value(params.p / (t * s).powf(params.m), params);
            if k == 0.0 {
                0.0
            } else {
                w(t, s) * k
            }
        },
        0.0,
        Upper::Finite(1.0),
        cfg,
    )
    .map_err(lift)?;
    Ok(lead * v)
}

pub(crate) fn beta(x: f64, y: f64, params: &ExtParams, cfg: &OracleConfig) -> Result<f64> {
    unit_kernel(params, |t, s| t.powf(x - 1.5) * s.powf(y - 1.5), cfg)
}

/// √(2/π) ∫₀^∞ u^{s−1/2} R_K(u, −μ−1/2, q, λ) du, the factor every p-Mellin
/// transform of a kernel integral reduces to after the substitution p = W u.
pub(crate) fn kernel_mellin(s: f64, params: &ExtParams, cfg: &OracleConfig) -> Result<f64> {
    let v = oracle_integrate(
        |u| u.powf(s - 0.5) * rk_value(u, params),
        0.0,
        Upper::Infinity,
        cfg,
    )
    .map_err(lift)?;
    Ok((2.0 / PI).sqrt() * v)
}

/// ∫₀¹ f(u) du on the oracle.
pub(crate) fn unit_integral<F: Fn(f64) -> f64>(f: F, cfg: &OracleConfig) -> Result<f64> {
    oracle_integrate(f, 0.0, Upper::Finite(1.0), cfg).map_err(lift)
}

/// F_{1,μ}(a, b, c; d; x, y) from its single integral on the oracle.
#[allow(clippy::too_many_arguments)]
pub(crate) fn appell_f1(
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    x: f64,
    y: f64,
    params: &ExtParams,
    cfg: &OracleConfig,
) -> Result<f64> {
    let v = unit_kernel(
        params,
        |t, s| {
            t.powf(a - 1.5) * s.powf(d - a - 1.5) * (1.0 - x * t).powf(-b) * (1.0 - y * t).powf(-c)
        },
        cfg,
    )?;
    Ok(v / beta_classical(a, d - a)?)
}

/// ∫_lo^hi of the Φ_{b1,b2} integrand on the oracle.
pub(crate) fn phi_shell(k: &PhiKernelArgs, lo: f64, hi: f64, cfg: &OracleConfig) -> Result<f64> {
    oracle_integrate(
        |t| {
            let d = (1.0 - k.lambda) - k.lambda * (-t).exp_m1();
            let base = ((k.s - 1.0) * t.ln() - k.q * t).exp() / d;
            base * hyp0f2(k.b1, k.b2, -k.xi / t).unwrap_or(f64::NAN)
        },
        lo,
        Upper::Finite(hi),
        cfg,
    )
    .map_err(lift)
}
