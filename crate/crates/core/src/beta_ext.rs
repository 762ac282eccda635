//! Generalized extended beta function
//!
//! B_μ(x, y; q; λ; p; m) = √(2p/π) ∫₀¹ t^{x−3/2}(1−t)^{y−3/2} R_K(p/(t^m(1−t)^m), −μ−1/2, q, λ) dt,
//!
//! its functional and summation relations, and the Mellin transforms of R_K
//! (in z) and of B_μ (in p).

use std::cell::RefCell;
use std::collections::HashMap;
use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require, Result};
use crate::numerics::{
    try_integrate_finite, try_integrate_semi_infinite, CompensatedSum, QuadResult, Residual,
    Tolerance,
};
use crate::rk::{rk_ln, rk_ln_bound, RkArgs};
use crate::special::{
    beta_classical, gamma_fn, lerch_phi, macdonald_k_with, pochhammer, LerchArgs,
};

/// The five parameters (μ, p, q, λ, m) shared by every extended function.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ExtParams {
    pub mu: f64,
    pub p: f64,
    pub q: f64,
    pub lambda: f64,
    pub m: f64,
}

impl ExtParams {
    pub fn new(mu: f64, p: f64, q: f64, lambda: f64, m: f64) -> Self {
        ExtParams {
            mu,
            p,
            q,
            lambda,
            m,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require(self.mu >= 0.0, "mu >= 0", self.mu)?;
        require(self.p > 0.0, "p > 0", self.p)?;
        require(self.q > 0.0 && self.q <= 1.0, "0 < q <= 1", self.q)?;
        require(self.lambda.abs() <= 1.0, "-1 <= lambda <= 1", self.lambda)?;
        require(self.m > 0.0, "m > 0", self.m)?;
        Ok(())
    }

    /// The parameters without p, which is integrated out by Mellin transforms.
    fn validate_without_p(&self) -> Result<()> {
        ExtParams { p: 1.0, ..*self }.validate()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BetaExtArgs {
    pub x: f64,
    pub y: f64,
    pub params: ExtParams,
}

impl BetaExtArgs {
    pub fn new(x: f64, y: f64, params: ExtParams) -> Self {
        BetaExtArgs { x, y, params }
    }

    pub fn validate(&self) -> Result<()> {
        require(self.x.is_finite(), "finite x", self.x)?;
        require(self.y.is_finite(), "finite y", self.y)?;
        self.params.validate()
    }
}

/// Default accuracy for beta-type quadratures.
pub fn beta_tol() -> Tolerance {
    Tolerance::rel(1e-12)
}

/// Memoized ln(√(2p/π)·R_K(p/(u(1−u))^m, −μ−1/2, q, λ)) keyed by the node u, for
/// iterated integrals that revisit the same nodes.
#[derive(Default)]
pub(crate) struct KernelMemo {
    map: RefCell<HashMap<u64, f64>>,
}

/// Below this log-height the kernel cannot be lifted back above underflow by
/// any weight seen in practice, so the weight is not evaluated at all.
const HOPELESS_LN: f64 = -1745.0;

fn kernel_ln(
    params: &ExtParams,
    u: f64,
    v: f64,
    inner: &Tolerance,
    memo: Option<&KernelMemo>,
) -> Result<f64> {
    if let Some(m) = memo {
        if let Some(&k) = m.map.borrow().get(&u.to_bits()) {
            return Ok(k);
        }
    }
    let lead = 0.5 * (2.0 * params.p / PI).ln();
    let z = params.p / (u * v).powf(params.m);
    let k = if !z.is_finite() {
        f64::NEG_INFINITY
    } else {
        let a = RkArgs::new(z, -params.mu - 0.5, params.q, params.lambda);
        if lead + rk_ln_bound(&a) < HOPELESS_LN {
            f64::NEG_INFINITY
        } else {
            lead + rk_ln(&a, inner)?.ln
        }
    };
    if let Some(m) = memo {
        m.map.borrow_mut().insert(u.to_bits(), k);
    }
    Ok(k)
}

/// √(2p/π) ∫₀¹ w(t) R_K(p/(t^m(1−t)^m), −μ−1/2, q, λ) dt.
///
/// `weight(t, 1−t)` returns (ln|w|, sign w). The kernel is symmetric under
/// t ↔ 1−t, so the range is folded at 1/2 and both small distances to the
/// endpoints stay exact.
pub(crate) fn integrate_unit_kernel<W>(
    params: &ExtParams,
    weight: W,
    tol: &Tolerance,
) -> Result<QuadResult>
where
    W: Fn(f64, f64) -> Result<(f64, f64)>,
{
    integrate_unit_kernel_memo(params, weight, tol, None)
}

pub(crate) fn integrate_unit_kernel_memo<W>(
    params: &ExtParams,
    weight: W,
    tol: &Tolerance,
    memo: Option<&KernelMemo>,
) -> Result<QuadResult>
where
    W: Fn(f64, f64) -> Result<(f64, f64)>,
{
    params.validate()?;
    let inner = tol.tightened(100.0);
    try_integrate_finite(
        |u| {
            let v = 1.0 - u;
            let k = kernel_ln(params, u, v, &inner, memo)?;
            if k == f64::NEG_INFINITY {
                return Ok(0.0);
            }
            let (l1, s1) = weight(u, v)?;
            let (l2, s2) = weight(v, u)?;
            let mut out = 0.0;
            if s1 != 0.0 {
                out += s1 * (l1 + k).exp();
            }
            if s2 != 0.0 {
                out += s2 * (l2 + k).exp();
            }
            Ok(out)
        },
        0.0,
        0.5,
        tol,
    )
}

/// B_μ(x, y; q; λ; p; m).
pub fn beta_ext(a: &BetaExtArgs) -> Result<QuadResult> {
    beta_ext_with(a, &beta_tol())
}

pub fn beta_ext_with(a: &BetaExtArgs, tol: &Tolerance) -> Result<QuadResult> {
    a.validate()?;
    let (xs, ys) = (a.x - 1.5, a.y - 1.5);
    integrate_unit_kernel(&a.params, |t, s| Ok((xs * t.ln() + ys * s.ln(), 1.0)), tol)
}

/// The λ = 0, q = 1 special case written out literally with the Macdonald
/// function, √(2p/π) ∫₀¹ t^{x−3/2}(1−t)^{y−3/2} K_{μ+1/2}(p/(t^m(1−t)^m)) dt,
/// integrated over the whole interval without folding.
pub fn macdonald_beta_literal(
    x: f64,
    y: f64,
    mu: f64,
    p: f64,
    m: f64,
    tol: &Tolerance,
) -> Result<f64> {
    ExtParams::new(mu, p, 1.0, 0.0, m).validate()?;
    let inner = tol.tightened(100.0);
    let r = try_integrate_finite(
        |t| {
            let z = p / (t * (1.0 - t)).powf(m);
            if z > 800.0 {
                return Ok(0.0);
            }
            let k = macdonald_k_with(mu + 0.5, z, &inner)?.value;
            if k == 0.0 {
                return Ok(0.0);
            }
            Ok(t.powf(x - 1.5) * (1.0 - t).powf(y - 1.5) * k)
        },
        0.0,
        1.0,
        tol,
    )?;
    Ok((2.0 * p / PI).sqrt() * r.value)
}

/// The exponential-kernel extended beta ∫₀¹ t^{x−1}(1−t)^{y−1}e^{−p/(t(1−t))} dt.
pub fn exponential_beta(x: f64, y: f64, p: f64, tol: &Tolerance) -> Result<f64> {
    require(p > 0.0, "p > 0", p)?;
    let r = try_integrate_finite(
        |t| {
            let s = 1.0 - t;
            let e = -p / (t * s);
            if e < -745.0 {
                return Ok(0.0);
            }
            Ok(((x - 1.0) * t.ln() + (y - 1.0) * s.ln() + e).exp())
        },
        0.0,
        1.0,
        tol,
    )?;
    Ok(r.value)
}

/// B_μ(x, y) against B_μ(x+1, y) + B_μ(x, y+1).
pub fn beta_functional_residual(a: &BetaExtArgs) -> Result<Residual> {
    a.validate()?;
    let tol = beta_tol();
    let lhs = beta_ext_with(a, &tol)?.value;
    let r1 = beta_ext_with(&BetaExtArgs { x: a.x + 1.0, ..*a }, &tol)?.value;
    let r2 = beta_ext_with(&BetaExtArgs { y: a.y + 1.0, ..*a }, &tol)?.value;
    Ok(Residual::with_scale(
        lhs,
        r1 + r2,
        lhs.abs().max(r1.abs() + r2.abs()),
    ))
}

/// Which right-hand side of the finite summation relation to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SummationVariant {
    /// Σ_{k=0}^n B_μ(x+k, y+n−k), unit coefficients.
    UnitCoefficients,
    /// Σ_{k=0}^n C(n,k) B_μ(x+k, y+n−k), from expanding (t + (1−t))ⁿ = 1.
    Binomial,
}

/// B_μ(x, y) against an n-fold split of the integrand.
pub fn beta_summation_residual(
    a: &BetaExtArgs,
    n: u32,
    variant: SummationVariant,
) -> Result<Residual> {
    a.validate()?;
    let tol = beta_tol();
    let lhs = beta_ext_with(a, &tol)?.value;
    let mut acc = CompensatedSum::new();
    let mut mag = 0.0;
    let mut binom = 1.0;
    for k in 0..=n {
        let b = beta_ext_with(
            &BetaExtArgs {
                x: a.x + k as f64,
                y: a.y + (n - k) as f64,
                ..*a
            },
            &tol,
        )?
        .value;
        let c = match variant {
            SummationVariant::UnitCoefficients => 1.0,
            SummationVariant::Binomial => binom,
        };
        acc.add(c * b);
        mag += (c * b).abs();
        binom = binom * (n - k) as f64 / (k + 1) as f64;
    }
    Ok(Residual::with_scale(lhs, acc.value(), lhs.abs().max(mag)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum InfiniteSumKind {
    /// B_μ(x, 1−y) = Σ (y)_n/n! B_μ(x+n, 1).
    OneMinusY,
    /// B_μ(x, y) = Σ B_μ(x+n, y+1).
    Plain,
}

/// A truncated-series comparison: the residual and the last included term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResidual {
    pub residual: Residual,
    pub last_term: f64,
}

/// Left side against the first N+1 terms of an infinite expansion.
pub fn beta_infinite_sum_residual(
    a: &BetaExtArgs,
    kind: InfiniteSumKind,
    n_max: u32,
) -> Result<SeriesResidual> {
    a.validate()?;
    let tol = beta_tol();
    let (lhs, term): (f64, Box<dyn Fn(u32) -> Result<f64>>) = match kind {
        InfiniteSumKind::OneMinusY => {
            let lhs = beta_ext_with(&BetaExtArgs { y: 1.0 - a.y, ..*a }, &tol)?.value;
            let y = a.y;
            let base = *a;
            (
                lhs,
                Box::new(move |n| {
                    let c = pochhammer(y, n) / gamma_fn(n as f64 + 1.0)?;
                    if c == 0.0 {
                        return Ok(0.0);
                    }
                    Ok(c * beta_ext_with(
                        &BetaExtArgs {
                            x: base.x + n as f64,
                            y: 1.0,
                            ..base
                        },
                        &tol,
                    )?
                    .value)
                }),
            )
        }
        InfiniteSumKind::Plain => {
            let lhs = beta_ext_with(a, &tol)?.value;
            let base = *a;
            (
                lhs,
                Box::new(move |n| {
                    beta_ext_with(
                        &BetaExtArgs {
                            x: base.x + n as f64,
                            y: base.y + 1.0,
                            ..base
                        },
                        &tol,
                    )
                    .map(|r| r.value)
                }),
            )
        }
    };
    let mut acc = CompensatedSum::new();
    let mut mag = 0.0;
    let mut last = 0.0;
    for n in 0..=n_max {
        let t = term(n)?;
        acc.add(t);
        mag += t.abs();
        last = t;
    }
    Ok(SeriesResidual {
        residual: Residual::with_scale(lhs, acc.value(), lhs.abs().max(mag)),
        last_term: last.abs(),
    })
}

/// Mellin transform in z of R_K(z, −α, q, λ):
/// 2^{s−2} Γ((s−α)/2) Γ((s+α)/2) Φ(λ, (s+α)/2, q).
pub fn rk_mellin_closed(s: f64, alpha: f64, q: f64, lambda: f64) -> Result<f64> {
    require(q > 0.0 && q <= 1.0, "0 < q <= 1", q)?;
    require(lambda.abs() <= 1.0, "-1 <= lambda <= 1", lambda)?;
    if lambda < 1.0 {
        require(
            s > alpha.abs(),
            "s > |alpha| (Mellin strip for lambda < 1)",
            s,
        )?;
    } else {
        require(
            s > alpha.max(2.0 - alpha),
            "s > max(alpha, 2 - alpha) (Mellin strip for lambda = 1)",
            s,
        )?;
    }
    let phi = lerch_phi(&LerchArgs {
        lambda,
        s: 0.5 * (s + alpha),
        q,
    })?;
    Ok(2f64.powf(s - 2.0) * gamma_fn(0.5 * (s - alpha))? * gamma_fn(0.5 * (s + alpha))? * phi)
}

/// ∫₀^∞ z^{s−1} R_K(z, −α, q, λ) dz by quadrature.
pub fn rk_mellin_numeric(
    s: f64,
    alpha: f64,
    q: f64,
    lambda: f64,
    tol: &Tolerance,
) -> Result<QuadResult> {
    let inner = tol.tightened(100.0);
    try_integrate_semi_infinite(
        |z| {
            let a = RkArgs::new(z, -alpha, q, lambda);
            let lw = (s - 1.0) * z.ln();
            if lw + rk_ln_bound(&a) < -745.0 {
                return Ok(0.0);
            }
            Ok((lw + rk_ln(&a, &inner)?.ln).exp())
        },
        0.0,
        tol,
    )
}

/// Mellin transform in p of B_μ(x, y; q; λ; p; m):
/// (2^{s−1}/√π) B(x+ms+(m−1)/2, y+ms+(m−1)/2) Γ((s−μ)/2) Γ((s+μ+1)/2) Φ(λ, (s+μ+1)/2, q).
/// `params.p` is ignored.
pub fn beta_mellin_closed(x: f64, y: f64, s: f64, params: &ExtParams) -> Result<f64> {
    params.validate_without_p()?;
    let ExtParams {
        mu, q, lambda, m, ..
    } = *params;
    if lambda < 1.0 {
        require(s > mu, "s > mu (Mellin strip for lambda < 1)", s)?;
    } else {
        require(
            s > mu.max(1.0 - mu),
            "s > max(mu, 1 - mu) (Mellin strip for lambda = 1)",
            s,
        )?;
    }
    let shift = m * s + 0.5 * (m - 1.0);
    let b = beta_classical(x + shift, y + shift)?;
    let phi = lerch_phi(&LerchArgs {
        lambda,
        s: 0.5 * (s + mu + 1.0),
        q,
    })?;
    Ok(2f64.powf(s - 1.0) / PI.sqrt()
        * b
        * gamma_fn(0.5 * (s - mu))?
        * gamma_fn(0.5 * (s + mu + 1.0))?
        * phi)
}

/// Mellin transform over p of an arbitrary function of p, by exp-sinh quadrature.
pub fn mellin_numeric<F>(s: f64, f: F, tol: &Tolerance) -> Result<QuadResult>
where
    F: Fn(f64) -> Result<f64>,
{
    try_integrate_semi_infinite(
        |p| {
            let v = f(p)?;
            if v == 0.0 {
                return Ok(0.0);
            }
            Ok(p.powf(s - 1.0) * v)
        },
        0.0,
        tol,
    )
}

/// ∫₀^∞ p^{s−1} B_μ(x, y; q; λ; p; m) dp by quadrature; `params.p` is ignored.
pub fn beta_mellin_numeric(
    x: f64,
    y: f64,
    s: f64,
    params: &ExtParams,
    tol: &Tolerance,
) -> Result<QuadResult> {
    params.validate_without_p()?;
    let inner = tol.tightened(100.0);
    mellin_numeric(
        s,
        |p| Ok(beta_ext_with(&BetaExtArgs::new(x, y, ExtParams { p, ..*params }), &inner)?.value),
        tol,
    )
}
