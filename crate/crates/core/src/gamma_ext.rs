//! Generalized extended incomplete gamma functions
//!
//! γ_μ(α, x; q; λ; p) = √(2p/π) ∫₀^x t^{α−3/2} e^{−t} R_K(p/t, −μ−1/2, q, λ) dt
//!
//! and Γ_μ the same integral over (x, ∞), together with their recurrence,
//! λ-derivative, Laplace-pair and parametric-differentiation relations and
//! the three-term decomposition of γ_μ + Γ_μ.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::numerics::{
    finite_difference, try_integrate_finite, try_integrate_semi_infinite, QuadResult, Residual,
    Tolerance,
};
use crate::rk::{rk_integral_with, weighted_kernel, RkArgs};
use crate::special::{gamma_fn, hyp0f2};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GammaExtArgs {
    pub alpha: f64,
    pub x: f64,
    pub mu: f64,
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
}

impl GammaExtArgs {
    pub fn validate(&self) -> Result<()> {
        require(self.alpha.is_finite(), "finite alpha", self.alpha)?;
        require(self.x > 0.0, "x > 0", self.x)?;
        require(self.mu >= 0.0, "mu >= 0", self.mu)?;
        require(self.p > 0.0, "p > 0", self.p)?;
        require(self.q > 0.0 && self.q <= 1.0, "0 < q <= 1", self.q)?;
        require(self.lambda.abs() <= 1.0, "-1 <= lambda <= 1", self.lambda)?;
        Ok(())
    }

    fn with(&self, alpha: f64, mu: f64) -> Self {
        GammaExtArgs { alpha, mu, ..*self }
    }
}

/// Default accuracy for the gamma family: tight enough that finite
/// differences of these functions stay well below identity tolerances.
pub fn gamma_tol() -> Tolerance {
    Tolerance::rel(1e-13)
}

fn integrand(a: &GammaExtArgs, inner: &Tolerance) -> impl Fn(f64) -> Result<f64> {
    let (alpha, mu, p, q, lambda) = (a.alpha, a.mu, a.p, a.q, a.lambda);
    let c = 0.5 * (2.0 * p / PI).ln();
    let inner = *inner;
    move |t: f64| {
        let ln_w = c + (alpha - 1.5) * t.ln() - t;
        weighted_kernel(ln_w, 1.0, &RkArgs::new(p / t, -mu - 0.5, q, lambda), &inner)
    }
}

/// γ_μ(α, x; q; λ; p).
pub fn lower_gamma_ext(a: &GammaExtArgs) -> Result<QuadResult> {
    lower_gamma_ext_with(a, &gamma_tol())
}

pub fn lower_gamma_ext_with(a: &GammaExtArgs, tol: &Tolerance) -> Result<QuadResult> {
    a.validate()?;
    try_integrate_finite(integrand(a, &tol.tightened(100.0)), 0.0, a.x, tol)
}

/// Γ_μ(α, x; q; λ; p).
pub fn upper_gamma_ext(a: &GammaExtArgs) -> Result<QuadResult> {
    upper_gamma_ext_with(a, &gamma_tol())
}

pub fn upper_gamma_ext_with(a: &GammaExtArgs, tol: &Tolerance) -> Result<QuadResult> {
    a.validate()?;
    try_integrate_semi_infinite(integrand(a, &tol.tightened(100.0)), a.x, tol)
}

/// The same integral over the whole half-line (0, ∞), evaluated in one piece.
/// `x` in `a` is ignored.
pub fn total_gamma_ext_with(a: &GammaExtArgs, tol: &Tolerance) -> Result<QuadResult> {
    GammaExtArgs { x: 1.0, ..*a }.validate()?;
    try_integrate_semi_infinite(integrand(a, &tol.tightened(100.0)), 0.0, tol)
}

/// Arguments of Φ_{b1,b2}(λ, s, q, ξ) = ∫₀^∞ t^{s−1}e^{−qt}/(1−λe^{−t}) ₀F₂(−; b1, b2; −ξ/t) dt.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PhiKernelArgs {
    pub b1: f64,
    pub b2: f64,
    pub s: f64,
    pub xi: f64,
    pub lambda: f64,
    pub q: f64,
}

impl PhiKernelArgs {
    pub fn validate(&self) -> Result<()> {
        for (name, b) in [("b1", self.b1), ("b2", self.b2)] {
            if b <= 0.0 && b == b.round() {
                return Err(Error::Domain(format!(
                    "{name} must not be a non-positive integer (got {b})"
                )));
            }
        }
        require(self.xi >= 0.0, "xi >= 0", self.xi)?;
        require(self.q > 0.0 && self.q <= 1.0, "0 < q <= 1", self.q)?;
        require(self.lambda.abs() <= 1.0, "-1 <= lambda <= 1", self.lambda)?;
        Ok(())
    }
}

fn phi_integrand(a: PhiKernelArgs) -> impl Fn(f64) -> Result<f64> {
    move |t: f64| {
        let d = (1.0 - a.lambda) - a.lambda * (-t).exp_m1();
        let base = ((a.s - 1.0) * t.ln() - a.q * t).exp() / d;
        if base == 0.0 {
            return Ok(0.0);
        }
        let f = if a.xi == 0.0 {
            1.0
        } else {
            hyp0f2(a.b1, a.b2, -a.xi / t)?
        };
        Ok(base * f)
    }
}

/// Φ_{b1,b2}(λ, s, q, ξ) over the full half-line.
///
/// For ξ > 0 the ₀F₂ factor grows without bound as t → 0, so the integral
/// does not exist and this returns `NonConvergence`; ξ = 0 is the plain
/// Lerch-type integral.
pub fn phi_b1b2(a: &PhiKernelArgs) -> Result<QuadResult> {
    a.validate()?;
    try_integrate_semi_infinite(phi_integrand(*a), 0.0, &Tolerance::rel(1e-12))
        .map_err(|e| nonconvergent("Phi_{b1,b2} integral", e))
}

/// Φ_{b1,b2} restricted to (cutoff, ∞).
pub fn phi_b1b2_truncated(a: &PhiKernelArgs, cutoff: f64, tol: &Tolerance) -> Result<QuadResult> {
    a.validate()?;
    require(cutoff > 0.0, "cutoff > 0", cutoff)?;
    try_integrate_semi_infinite(phi_integrand(*a), cutoff, tol)
}

fn nonconvergent(what: &str, e: Error) -> Error {
    match e {
        Error::NonConvergence {
            what: inner,
            estimate,
            evaluations,
        } => Error::NonConvergence {
            what: format!("{what}: {inner}"),
            estimate,
            evaluations,
        },
        other => other,
    }
}

/// The three coefficient/kernel pairs of the decomposition right-hand side.
pub fn decomposition_terms(
    alpha: f64,
    mu: f64,
    p: f64,
    q: f64,
    lambda: f64,
) -> Result<[(f64, PhiKernelArgs); 3]> {
    let am = alpha + mu;
    let xi = p * p / 16.0;
    let sp = PI.sqrt();
    let k = |b1, b2, s| PhiKernelArgs {
        b1,
        b2,
        s,
        xi,
        lambda,
        q,
    };
    Ok([
        (
            gamma_fn(am)? / sp * (p / 2.0).powf(-mu),
            k(1.0 - am / 2.0, 0.5 - am / 2.0, mu + 0.5),
        ),
        (
            gamma_fn(-am / 2.0)? / (2.0 * sp) * (p / 2.0).powf(alpha),
            k(0.5, (am + 2.0) / 2.0, (mu - alpha + 1.0) / 2.0),
        ),
        (
            -gamma_fn(-(am + 1.0) / 2.0)? / (2.0 * sp) * (p / 2.0).powf(alpha + 1.0),
            k(1.5, (am + 3.0) / 2.0, (mu - alpha) / 2.0),
        ),
    ])
}

/// Right-hand side of the decomposition of Γ_μ + γ_μ as a combination of
/// three Φ_{b1,b2} integrals with prefactors Γ(α+μ)(p/2)^{−μ},
/// Γ(−(α+μ)/2)(p/2)^α and Γ(−(α+μ+1)/2)(p/2)^{α+1}.
///
/// Evaluated exactly as stated. Because every Φ_{b1,b2} with ξ > 0 diverges,
/// this fails with `NonConvergence` for any p > 0; see
/// [`decomposition_rhs_truncated`] for the common-cutoff version.
pub fn decomposition_rhs(alpha: f64, mu: f64, p: f64, q: f64, lambda: f64) -> Result<f64> {
    require(p > 0.0, "p > 0", p)?;
    let terms = decomposition_terms(alpha, mu, p, q, lambda)?;
    let mut total = 0.0;
    for (c, k) in terms {
        total += c * phi_b1b2(&k)?.value;
    }
    Ok(total)
}

/// The decomposition right-hand side with all three Φ integrals cut off at
/// the same lower limit. The individual divergences cancel in this
/// combination, so the value approaches γ_μ + Γ_μ as the cutoff shrinks,
/// until double-precision cancellation inside ₀F₂ takes over.
pub fn decomposition_rhs_truncated(
    alpha: f64,
    mu: f64,
    p: f64,
    q: f64,
    lambda: f64,
    cutoff: f64,
    tol: &Tolerance,
) -> Result<f64> {
    require(p > 0.0, "p > 0", p)?;
    let terms = decomposition_terms(alpha, mu, p, q, lambda)?;
    let mut total = 0.0;
    for (c, k) in terms {
        total += c * phi_b1b2_truncated(&k, cutoff, tol)?.value;
    }
    Ok(total)
}

/// Γ_μ(α+1, x) against (α+μ)Γ_μ(α, x) + pΓ_{μ−1}(α−1, x) + √(2p/π)x^{α−1/2}e^{−x}R_K(p/x, −μ−1/2, q, λ).
pub fn gamma_recurrence_residual(a: &GammaExtArgs) -> Result<Residual> {
    a.validate()?;
    require(a.mu >= 1.0, "mu >= 1", a.mu)?;
    let tol = gamma_tol();
    let lhs = upper_gamma_ext_with(&a.with(a.alpha + 1.0, a.mu), &tol)?.value;
    let t1 = (a.alpha + a.mu) * upper_gamma_ext_with(a, &tol)?.value;
    let t2 = a.p * upper_gamma_ext_with(&a.with(a.alpha - 1.0, a.mu - 1.0), &tol)?.value;
    let rk = rk_integral_with(
        &RkArgs::new(a.p / a.x, -a.mu - 0.5, a.q, a.lambda),
        &tol.tightened(10.0),
    )?
    .value;
    let t3 = (2.0 * a.p / PI).sqrt() * a.x.powf(a.alpha - 0.5) * (-a.x).exp() * rk;
    let scale = lhs.abs().max(t1.abs() + t2.abs() + t3.abs());
    Ok(Residual::with_scale(lhs, t1 + t2 + t3, scale))
}

/// At q = 1: Γ_{μ−1}(α,x) − Γ_{μ+1}(α,x) + ((2μ+1)/p)Γ_μ(α+1,x) against
/// λ ∂/∂λ Γ_{μ+1}(α,x), the derivative taken by finite differences.
pub fn lambda_derivative_residual(
    alpha: f64,
    x: f64,
    mu: f64,
    p: f64,
    lambda: f64,
) -> Result<Residual> {
    let a = GammaExtArgs {
        alpha,
        x,
        mu,
        p,
        q: 1.0,
        lambda,
    };
    a.validate()?;
    require(mu >= 1.0, "mu >= 1", mu)?;
    let h = crate::numerics::default_step(lambda, 1);
    require(
        lambda.abs() + 2.0 * h <= 1.0,
        "|lambda| + 2h <= 1 for central differences",
        lambda,
    )?;
    let tol = gamma_tol();
    let g1 = upper_gamma_ext_with(&a.with(alpha, mu - 1.0), &tol)?.value;
    let g2 = upper_gamma_ext_with(&a.with(alpha, mu + 1.0), &tol)?.value;
    let g3 = (2.0 * mu + 1.0) / p * upper_gamma_ext_with(&a.with(alpha + 1.0, mu), &tol)?.value;
    let lhs = g1 - g2 + g3;
    let rhs = if lambda == 0.0 {
        0.0
    } else {
        let d = finite_difference(
            |l| {
                Ok(upper_gamma_ext_with(
                    &GammaExtArgs {
                        lambda: l,
                        ..a.with(alpha, mu + 1.0)
                    },
                    &tol,
                )?
                .value)
            },
            lambda,
            1,
            Some(h),
        )?;
        lambda * d
    };
    let scale = g1.abs() + g2.abs() + g3.abs();
    Ok(Residual::with_scale(lhs, rhs, scale))
}

/// ∫_x^∞ e^{−st} t^{α−3/2} R_K(p/t, −μ−1/2, q, λ) dt against √(π/2p) s^{−α} Γ_μ(α, sx; q; λ; sp).
pub fn laplace_pair_residual(
    alpha: f64,
    x: f64,
    mu: f64,
    p: f64,
    q: f64,
    lambda: f64,
    s: f64,
) -> Result<Residual> {
    let a = GammaExtArgs {
        alpha,
        x,
        mu,
        p,
        q,
        lambda,
    };
    a.validate()?;
    require(s > 0.0, "s > 0", s)?;
    let tol = gamma_tol();
    let inner = tol.tightened(100.0);
    let lhs = try_integrate_semi_infinite(
        |t| {
            let ln_w = (alpha - 1.5) * t.ln() - s * t;
            weighted_kernel(ln_w, 1.0, &RkArgs::new(p / t, -mu - 0.5, q, lambda), &inner)
        },
        x,
        &tol,
    )?
    .value;
    let scaled = GammaExtArgs {
        x: s * x,
        p: s * p,
        ..a
    };
    let rhs = (PI / (2.0 * p)).sqrt() * s.powf(-alpha) * upper_gamma_ext_with(&scaled, &tol)?.value;
    Ok(Residual::new(lhs, rhs))
}

/// ∂Γ_μ/∂p by finite differences against −(1/p)[μΓ_μ(α,x) + pΓ_{μ−1}(α−1,x)].
pub fn parametric_diff_residual(a: &GammaExtArgs) -> Result<Residual> {
    a.validate()?;
    require(a.mu >= 1.0, "mu >= 1", a.mu)?;
    let tol = gamma_tol();
    let h = crate::numerics::default_step(a.p, 1);
    require(a.p > 2.0 * h, "p > 2h for central differences", a.p)?;
    let lhs = finite_difference(
        |p| Ok(upper_gamma_ext_with(&GammaExtArgs { p, ..*a }, &tol)?.value),
        a.p,
        1,
        Some(h),
    )?;
    let g0 = a.mu * upper_gamma_ext_with(a, &tol)?.value;
    let g1 = a.p * upper_gamma_ext_with(&a.with(a.alpha - 1.0, a.mu - 1.0), &tol)?.value;
    let rhs = -(g0 + g1) / a.p;
    let scale = lhs.abs().max((g0.abs() + g1.abs()) / a.p);
    Ok(Residual::with_scale(lhs, rhs, scale))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(alpha: f64, x: f64, mu: f64, p: f64, q: f64, lambda: f64) -> GammaExtArgs {
        GammaExtArgs {
            alpha,
            x,
            mu,
            p,
            q,
            lambda,
        }
    }

    #[test]
    fn chaudhry_reduction() {
        // μ = 0, λ = 0, q = 1 collapses the kernel to t^{α−1}e^{−t−p/t}.
        let a = args(1.0, 0.5, 0.0, 1.0, 1.0, 0.0);
        let v = lower_gamma_ext(&a).unwrap().value;
        let direct = crate::numerics::integrate_finite(
            |t| (-t - 1.0 / t).exp(),
            0.0,
            0.5,
            &Tolerance::rel(1e-14),
        )
        .unwrap()
        .value;
        assert!(((v - direct) / direct).abs() < 1e-11, "{v} {direct}");
    }

    #[test]
    fn tiny_lower_limit() {
        let a = args(1.0, 1e-8, 0.0, 1.0, 1.0, 0.0);
        assert!(lower_gamma_ext(&a).unwrap().value < 1e-20);
    }

    #[test]
    fn rejects_bad_p() {
        let a = args(1.0, 1.0, 0.0, -1.0, 1.0, 0.0);
        let e = upper_gamma_ext(&a).unwrap_err();
        assert!(e.to_string().contains("p > 0"));
    }

    #[test]
    fn phi_kernel_at_zero_xi() {
        let k = PhiKernelArgs {
            b1: 1.0,
            b2: 1.0,
            s: 2.0,
            xi: 0.0,
            lambda: 0.0,
            q: 1.0,
        };
        assert!((phi_b1b2(&k).unwrap().value - 1.0).abs() < 1e-11);
    }

    #[test]
    fn phi_kernel_diverges_for_positive_xi() {
        let k = PhiKernelArgs {
            b1: 0.5,
            b2: 1.5,
            s: 1.5,
            xi: 0.1,
            lambda: 0.0,
            q: 1.0,
        };
        assert!(matches!(phi_b1b2(&k), Err(Error::NonConvergence { .. })));
    }

    #[test]
    fn decomposition_pole() {
        assert!(matches!(
            decomposition_rhs(1.5, 0.5, 1.0, 1.0, 0.0),
            Err(Error::Pole(_))
        ));
    }
}
