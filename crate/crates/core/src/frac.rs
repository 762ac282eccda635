//! Generalized extended Riemann–Liouville operator
//!
//! D_z^{δ} f(z) = 1/Γ(−δ) √(2p/π) ∫₀^z (z−t)^{−δ−1} f(t) R_K(p z^{2m}/(t^m(z−t)^m), −μ−1/2, q, λ) dt
//!
//! for δ < 0, its closed forms on powers, binomials and hypergeometric
//! products, and its Mellin transforms in p. The direct path substitutes
//! t = zu so every evaluation runs on (0, 1) with the kernel p/(u(1−u))^m.

use std::f64::consts::PI;

use crate::beta_ext::{
    beta_ext_with, beta_tol, integrate_unit_kernel, mellin_numeric, BetaExtArgs, ExtParams,
};
use crate::error::{require, Result};
use crate::hyp::{
    appell_f1, appell_f2, f_mu_series, lauricella_fd3, Appell1Args, Appell2Args, GaussHypArgs,
    LauricellaArgs, Path,
};
use crate::numerics::{try_integrate_finite, QuadResult, Residual, Tolerance};
use crate::special::{beta_classical, gamma_fn, gauss_2f1, lerch_phi, LerchArgs};

fn check_direct(z: f64, delta: f64) -> Result<()> {
    require(delta < 0.0, "delta < 0", delta)?;
    require(z > 0.0, "z > 0", z)
}

/// The operator applied to `f` by quadrature; `f` must be finite on (0, z).
pub fn frac_deriv_direct<F>(f: F, z: f64, delta: f64, params: &ExtParams) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    frac_deriv_direct_with(f, z, delta, params, &beta_tol())
}

pub fn frac_deriv_direct_with<F>(
    f: F,
    z: f64,
    delta: f64,
    params: &ExtParams,
    tol: &Tolerance,
) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    check_direct(z, delta)?;
    let e = -delta - 1.0;
    let r = integrate_unit_kernel(
        params,
        |u, s| {
            let v = f(z * u)?;
            if v == 0.0 {
                return Ok((f64::NEG_INFINITY, 0.0));
            }
            Ok((e * s.ln() + v.abs().ln(), v.signum()))
        },
        tol,
    )?;
    let k = z.powf(-delta) / gamma_fn(-delta)?;
    Ok(QuadResult {
        value: k * r.value,
        abs_error_estimate: k.abs() * r.abs_error_estimate,
        evaluations: r.evaluations,
    })
}

/// (z^{β−δ}/Γ(−δ)) B_μ(β+3/2, −δ+1/2).
pub fn frac_deriv_power(beta: f64, z: f64, delta: f64, params: &ExtParams) -> Result<f64> {
    require(z > 0.0, "z > 0", z)?;
    let b = beta_ext_with(
        &BetaExtArgs::new(beta + 1.5, 0.5 - delta, *params),
        &beta_tol(),
    )?
    .value;
    Ok(z.powf(beta - delta) / gamma_fn(-delta)? * b)
}

/// (z^{−δ}/Γ(−δ)) B(3/2, −δ+1/2) F_μ(α, 3/2; −δ+2; z), the operator on (1−z)^{−α}.
pub fn frac_deriv_binomial(alpha: f64, z: f64, delta: f64, params: &ExtParams) -> Result<f64> {
    require(delta < 0.0, "delta < 0", delta)?;
    require(alpha > 0.0, "alpha > 0", alpha)?;
    require(z.abs() < 1.0, "|z| < 1", z)?;
    if z == 0.0 {
        return Ok(0.0);
    }
    require(z > 0.0, "z > 0", z)?;
    let f = f_mu_series(&GaussHypArgs::new(alpha, 1.5, 2.0 - delta, z, *params))?.value;
    Ok(z.powf(-delta) / gamma_fn(-delta)? * beta_classical(1.5, 0.5 - delta)? * f)
}

/// z^{δ−1} B(β+1/2, δ−β+1/2)/Γ(δ−β), the common prefactor of the order β−δ theorems.
fn order_prefactor(beta: f64, delta: f64, z: f64) -> Result<f64> {
    require(
        delta > beta && beta > -0.5,
        "delta > beta > -1/2",
        format!("beta={beta}, delta={delta}"),
    )?;
    require(z >= 0.0, "z >= 0", z)?;
    if z == 0.0 {
        require(delta > 1.0, "z > 0 unless delta > 1", z)?;
        return Ok(0.0);
    }
    Ok(
        z.powf(delta - 1.0) * beta_classical(beta + 0.5, delta - beta + 0.5)?
            / gamma_fn(delta - beta)?,
    )
}

/// Order β−δ applied to z^{β−1}(1−z)^{−α}.
pub fn frac_deriv_power_binomial(
    alpha: f64,
    beta: f64,
    delta: f64,
    z: f64,
    params: &ExtParams,
) -> Result<f64> {
    require(z.abs() < 1.0, "|z| < 1", z)?;
    let k = order_prefactor(beta, delta, z)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    Ok(k * f_mu_series(&GaussHypArgs::new(
        alpha,
        beta + 0.5,
        delta + 1.0,
        z,
        *params,
    ))?
    .value)
}

/// Order β−δ applied to z^{β−1}(1−az)^{−α}(1−bz)^{−γ}.
#[allow(clippy::too_many_arguments)]
pub fn frac_deriv_two_binomials(
    alpha: f64,
    gamma: f64,
    a: f64,
    b: f64,
    beta: f64,
    delta: f64,
    z: f64,
    params: &ExtParams,
) -> Result<f64> {
    let k = order_prefactor(beta, delta, z)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let args = Appell1Args {
        a: beta + 0.5,
        b: alpha,
        c: gamma,
        d: delta + 1.0,
        x: a * z,
        y: b * z,
        params: *params,
    };
    Ok(k * appell_f1(&args, Path::Series)?.value)
}

/// Order β−δ applied to z^{β−1}(1−az)^{−α}(1−bz)^{−γ}(1−cz)^{−τ}, with the
/// Lauricella function taken at (az, bz, cz).
#[allow(clippy::too_many_arguments)]
pub fn frac_deriv_three_binomials(
    alpha: f64,
    gamma: f64,
    tau: f64,
    a: f64,
    b: f64,
    c: f64,
    beta: f64,
    delta: f64,
    z: f64,
    params: &ExtParams,
) -> Result<f64> {
    let k = order_prefactor(beta, delta, z)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let args = LauricellaArgs {
        a: beta + 0.5,
        b: alpha,
        c: gamma,
        d: tau,
        e: delta + 1.0,
        x: a * z,
        y: b * z,
        z: c * z,
        params: *params,
    };
    Ok(k * lauricella_fd3(&args, Path::Series)?.value)
}

/// Order β−δ applied to z^{β−1}(1−z)^{−α} F_μ(α, γ; τ; x/(1−z)).
#[allow(clippy::too_many_arguments)]
pub fn frac_deriv_hyp_product(
    alpha: f64,
    gamma: f64,
    tau: f64,
    beta: f64,
    delta: f64,
    x: f64,
    z: f64,
    params: &ExtParams,
) -> Result<f64> {
    require(
        tau > gamma && gamma > 0.0,
        "tau > gamma > 0",
        format!("gamma={gamma}, tau={tau}"),
    )?;
    require((x / (1.0 - z)).abs() < 1.0, "|x/(1-z)| < 1", x / (1.0 - z))?;
    let k = order_prefactor(beta, delta, z)?;
    if k == 0.0 {
        return Ok(0.0);
    }
    let args = Appell2Args {
        a: alpha,
        b: gamma,
        c: beta + 0.5,
        d: tau,
        e: delta + 1.0,
        x,
        y: z,
        params: *params,
    };
    Ok(k * appell_f2(&args, Path::Series)?.value)
}

/// Γ(β+1)/Γ(β−δ+1) z^{β−δ}, the classical operator on z^β.
pub fn classical_rl_power(beta: f64, delta: f64, z: f64) -> Result<f64> {
    require(beta > -1.0, "beta > -1", beta)?;
    check_direct(z, delta)?;
    Ok(gamma_fn(beta + 1.0)? / gamma_fn(beta - delta + 1.0)? * z.powf(beta - delta))
}

/// The classical operator 1/Γ(−δ) ∫₀^z (z−t)^{−δ−1} f(t) dt by quadrature.
pub fn classical_rl_direct<F>(f: F, z: f64, delta: f64, tol: &Tolerance) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    check_direct(z, delta)?;
    let e = -delta - 1.0;
    // Split at 1/2 so the (1−u) factor is formed from the small variable.
    let lo = try_integrate_finite(|u| Ok((1.0 - u).powf(e) * f(z * u)?), 0.0, 0.5, tol)?;
    let hi = try_integrate_finite(|s| Ok(s.powf(e) * f(z * (1.0 - s))?), 0.0, 0.5, tol)?;
    Ok(z.powf(-delta) / gamma_fn(-delta)? * (lo.value + hi.value))
}

/// Direct operator on Σ aₙtⁿ against Σ aₙ·(operator on tⁿ).
pub fn frac_polynomial_residual(
    coeffs: &[f64],
    z: f64,
    delta: f64,
    params: &ExtParams,
) -> Result<Residual> {
    let poly = |t: f64| Ok(coeffs.iter().rev().fold(0.0, |acc, c| acc * t + c));
    let lhs = frac_deriv_direct(poly, z, delta, params)?.value;
    let mut rhs = 0.0;
    let mut scale = 0.0;
    for (n, c) in coeffs.iter().enumerate() {
        if *c != 0.0 {
            let v = c * frac_deriv_power(n as f64, z, delta, params)?;
            rhs += v;
            scale += v.abs();
        }
    }
    Ok(Residual::with_scale(lhs, rhs, scale.max(lhs.abs())))
}

/// ΓΓΦ/√π · 2^{s−1}, the p-Mellin factor shared by every transform here.
fn mellin_kernel_factor(s: f64, params: &ExtParams) -> Result<f64> {
    let ExtParams { mu, q, lambda, .. } = *params;
    let phi = lerch_phi(&LerchArgs {
        lambda,
        s: 0.5 * (s + mu + 1.0),
        q,
    })?;
    Ok(2f64.powf(s - 1.0) / PI.sqrt()
        * gamma_fn(0.5 * (s - mu))?
        * gamma_fn(0.5 * (s + mu + 1.0))?
        * phi)
}

fn validate_mellin_params(params: &ExtParams) -> Result<()> {
    ExtParams { p: 1.0, ..*params }.validate()
}

/// p-Mellin transform of the operator on z^β:
/// 2^{s−1} z^{β−δ}/(√π Γ(−δ)) B(β+m(s+1/2)+1, −δ+m(s+1/2)) Γ((s−μ)/2) Γ((s+μ+1)/2) Φ(λ, (s+μ+1)/2, q).
/// `params.p` is ignored. The factor 1/Γ(−δ) is carried by the operator
/// itself; [`mellin_fracderiv_power_unnormalized`] omits it.
pub fn mellin_fracderiv_power_closed(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
) -> Result<f64> {
    Ok(mellin_fracderiv_power_unnormalized(beta, delta, z, s, params)? / gamma_fn(-delta)?)
}

/// The power-case transform without the 1/Γ(−δ) factor.
pub fn mellin_fracderiv_power_unnormalized(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
) -> Result<f64> {
    validate_mellin_params(params)?;
    require(z > 0.0, "z > 0", z)?;
    let m = params.m;
    let bound = params
        .mu
        .max(-0.5 - 1.0 / m - beta / m)
        .max(delta / m - 0.5);
    require(
        s > bound,
        "s > max(mu, -1/2 - 1/m - beta/m, delta/m - 1/2)",
        s,
    )?;
    let w = m * (s + 0.5);
    Ok(z.powf(beta - delta)
        * beta_classical(beta + w + 1.0, w - delta)?
        * mellin_kernel_factor(s, params)?)
}

/// p-Mellin transform of the operator on (1−z)^{−β}:
/// 2^{s−1} z^{−δ}/(√π Γ(−δ)) B(m(s+1/2)+1, −δ+m(s+1/2)) ΓΓΦ ₂F₁(β, m(s+1/2)+1; −δ+m(2s+1)+1; z).
/// `beta` is the binomial exponent.
pub fn mellin_fracderiv_binomial_closed(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
) -> Result<f64> {
    Ok(mellin_fracderiv_binomial_unnormalized(beta, delta, z, s, params)? / gamma_fn(-delta)?)
}

/// The binomial-case transform without the 1/Γ(−δ) factor.
pub fn mellin_fracderiv_binomial_unnormalized(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
) -> Result<f64> {
    validate_mellin_params(params)?;
    require(delta < 0.0, "delta < 0", delta)?;
    require(z.abs() < 1.0, "|z| < 1", z)?;
    let m = params.m;
    let bound = params.mu.max(-0.5 + 1.0 / m).max(delta / m - 0.5);
    require(s > bound, "s > max(mu, -1/2 + 1/m, delta/m - 1/2)", s)?;
    let w = m * (s + 0.5);
    let f = gauss_2f1(beta, w + 1.0, 2.0 * w - delta + 1.0, z)?;
    Ok(z.powf(-delta) * beta_classical(w + 1.0, w - delta)? * mellin_kernel_factor(s, params)? * f)
}

/// ∫₀^∞ p^{s−1} (operator on z^β) dp by quadrature.
pub fn mellin_fracderiv_power_numeric(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
    tol: &Tolerance,
) -> Result<QuadResult> {
    validate_mellin_params(params)?;
    mellin_numeric(
        s,
        |p| frac_deriv_power(beta, z, delta, &ExtParams { p, ..*params }),
        tol,
    )
}

/// ∫₀^∞ p^{s−1} (operator on (1−z)^{−β}) dp by quadrature, with the operator
/// itself evaluated by its defining integral.
pub fn mellin_fracderiv_binomial_numeric(
    beta: f64,
    delta: f64,
    z: f64,
    s: f64,
    params: &ExtParams,
    tol: &Tolerance,
) -> Result<QuadResult> {
    validate_mellin_params(params)?;
    require(z > 0.0 && z < 1.0, "0 < z < 1", z)?;
    let inner = tol.tightened(100.0);
    mellin_numeric(
        s,
        |p| {
            Ok(frac_deriv_direct_with(
                |t| Ok((1.0 - t).powf(-beta)),
                z,
                delta,
                &ExtParams { p, ..*params },
                &inner,
            )?
            .value)
        },
        tol,
    )
}
