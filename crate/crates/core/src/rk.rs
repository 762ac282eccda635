//! The extended Bessel kernel
//!
//! R_K(z, α, q, λ) = (z/2)^α / 2 · ∫₀^∞ t^{−α−1} e^{−qt − z²/(4t)} / (1 − λe^{−t}) dt.
//!
//! `alpha` is always the order exactly as written in R_K(z, α, q, λ). The
//! higher modules evaluate the kernel at order −μ − 1/2. [`rk_series`] is the
//! one exception: it takes the Macdonald order α and returns R_K(z, −α, q, λ).

use serde::Serialize;

use crate::error::{require, Result};
use crate::numerics::{
    try_integrate_finite, try_integrate_semi_infinite, try_sum_series, QuadResult, SeriesResult,
    Tolerance,
};
use crate::special::macdonald_k_with;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RkArgs {
    pub z: f64,
    pub alpha: f64,
    pub q: f64,
    pub lambda: f64,
}

impl RkArgs {
    pub fn new(z: f64, alpha: f64, q: f64, lambda: f64) -> Self {
        RkArgs {
            z,
            alpha,
            q,
            lambda,
        }
    }

    pub fn validate(&self) -> Result<()> {
        require(self.z > 0.0, "z > 0", self.z)?;
        require(self.alpha.is_finite(), "finite alpha", self.alpha)?;
        require(self.q > 0.0 && self.q <= 1.0, "0 < q <= 1", self.q)?;
        require(self.lambda.abs() <= 1.0, "-1 <= lambda <= 1", self.lambda)?;
        Ok(())
    }
}

/// A positive quantity carried as its logarithm.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LnValue {
    pub ln: f64,
    /// Relative error estimate of exp(ln).
    pub rel_err: f64,
    pub evaluations: usize,
}

/// 1 − λe^{−t} without cancellation as λ → 1 and t → 0.
#[inline]
fn denominator(lambda: f64, t: f64) -> f64 {
    (1.0 - lambda) - lambda * (-t).exp_m1()
}

/// Peak location and log-height of the integrand after t = (z/2√q)e^w.
struct Shape {
    c: f64,
    t_scale: f64,
    w_star: f64,
    /// Log-height at the peak, without the denominator.
    e_star: f64,
    /// 1 − λe^{−t} at the peak.
    d_star: f64,
    width: f64,
}

impl Shape {
    fn new(a: &RkArgs) -> Self {
        let sq = a.q.sqrt();
        let c = a.z * sq;
        let t_scale = a.z / (2.0 * sq);
        let lambda = a.lambda;
        // Logarithmic slope of the denominator, −t·D'(t)/D(t), lies in [−1, 1].
        let shift = |w: f64| {
            let t = t_scale * w.exp();
            if t == 0.0 || lambda == 0.0 {
                return 0.0;
            }
            let d = denominator(lambda, t);
            let g = lambda * t * (-t).exp() / d;
            if g.is_finite() {
                g
            } else {
                1.0
            }
        };
        let slope = |w: f64| -a.alpha - c * w.sinh() - shift(w);
        let mut lo = (-(a.alpha + 1.0) / c).asinh();
        let mut hi = (-(a.alpha - 1.0) / c).asinh();
        while slope(lo) < 0.0 {
            lo -= 1.0;
        }
        while slope(hi) > 0.0 {
            hi += 1.0;
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if slope(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-12 * (1.0 + mid.abs()) {
                break;
            }
        }
        let w_star = 0.5 * (lo + hi);
        let e_star = -a.alpha * w_star - c * (w_star.cosh() - 1.0);
        let d_star = denominator(lambda, t_scale * w_star.exp());
        let step = 1e-4 * (1.0 + w_star.abs());
        let curv =
            ((slope(w_star - step) - slope(w_star + step)) / (2.0 * step)).max(c * w_star.cosh());
        let width = 1.0 / curv.sqrt();
        Shape {
            c,
            t_scale,
            w_star,
            e_star,
            d_star,
            width: if width.is_finite() {
                width.clamp(1e-8, 4.0)
            } else {
                4.0
            },
        }
    }
}

/// Cheap upper estimate of ln R_K, used to skip kernel evaluations whose
/// contribution underflows anyway.
pub fn rk_ln_bound(a: &RkArgs) -> f64 {
    let s = Shape::new(a);
    let lead = 0.5 * a.alpha * a.q.ln() - std::f64::consts::LN_2 - s.c + s.e_star;
    let gauss = (2.0 * std::f64::consts::PI).sqrt() * s.width;
    lead + gauss.ln() - s.d_star.ln() + 50.0
}

/// Where a log-concave profile `d` (0 at v = 0) first falls below −2, when
/// that happens only far beyond the peak width. Small |α| with tiny z gives
/// such a plateau, bounded by a double-exponential cliff that a single
/// exp-sinh sweep cannot resolve.
fn plateau_reach<D: Fn(f64) -> f64>(d: D) -> Option<f64> {
    const DROP: f64 = -2.0;
    const MIN: f64 = 4.0;
    if !(d(MIN) > DROP) {
        return None;
    }
    let (mut lo, mut hi) = (MIN, 2.0 * MIN);
    while d(hi) > DROP {
        lo = hi;
        hi *= 2.0;
        if hi > 1e9 {
            return None;
        }
    }
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if d(mid) > DROP {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Some(lo)
}

/// ln R_K(z, α, q, λ) with a relative error estimate.
pub fn rk_ln(a: &RkArgs, tol: &Tolerance) -> Result<LnValue> {
    a.validate()?;
    let s = Shape::new(a);
    let (alpha, c, lambda, ts, ws, h, ds) = (
        a.alpha, s.c, a.lambda, s.t_scale, s.w_star, s.width, s.d_star,
    );
    // Integrand relative to its peak value, with w = w* ± h·v.
    let g = |w: f64| -> f64 {
        let dw = w - ws;
        let diff = -alpha * dw - c * 2.0 * (0.5 * (w + ws)).sinh() * (0.5 * dw).sinh();
        let num = diff.exp();
        if num == 0.0 {
            return 0.0;
        }
        num * (ds / denominator(lambda, ts * w.exp()))
    };
    let drop = |w: f64| {
        let dw = w - ws;
        -alpha * dw - c * 2.0 * (0.5 * (w + ws)).sinh() * (0.5 * dw).sinh()
    };
    let side = |dir: f64| -> Result<QuadResult> {
        let f = |v: f64| g(ws + dir * h * v);
        match plateau_reach(|v| drop(ws + dir * h * v)) {
            Some(l) => {
                let near = try_integrate_finite(|v| Ok(f(v)), 0.0, l, tol)?;
                let far = try_integrate_semi_infinite(|u| Ok(f(l + u)), 0.0, tol)?;
                Ok(QuadResult {
                    value: near.value + far.value,
                    abs_error_estimate: near.abs_error_estimate + far.abs_error_estimate,
                    evaluations: near.evaluations + far.evaluations,
                })
            }
            None => try_integrate_semi_infinite(|v| Ok(f(v)), 0.0, tol),
        }
    };
    let right = side(1.0)?;
    let left = side(-1.0)?;
    let integral = h * (right.value + left.value);
    let err = h * (right.abs_error_estimate + left.abs_error_estimate);
    let ln =
        0.5 * alpha * a.q.ln() - std::f64::consts::LN_2 - c + s.e_star - ds.ln() + integral.ln();
    Ok(LnValue {
        ln,
        rel_err: err / integral,
        evaluations: right.evaluations + left.evaluations,
    })
}

/// sign · exp(ln_weight) · R_K(z, α, q, λ), skipping the kernel evaluation
/// when the product is certain to underflow. Non-finite `z` (an overflowed
/// kernel argument) contributes zero.
pub(crate) fn weighted_kernel(
    ln_weight: f64,
    sign: f64,
    a: &RkArgs,
    tol: &Tolerance,
) -> Result<f64> {
    if sign == 0.0 || ln_weight == f64::NEG_INFINITY || a.z == f64::INFINITY {
        return Ok(0.0);
    }
    if ln_weight + rk_ln_bound(a) < -745.0 {
        return Ok(0.0);
    }
    let l = rk_ln(a, tol)?;
    Ok(sign * (ln_weight + l.ln).exp())
}

/// R_K(z, α, q, λ) from its defining integral.
pub fn rk_integral(a: &RkArgs) -> Result<QuadResult> {
    rk_integral_with(a, &Tolerance::default())
}

pub fn rk_integral_with(a: &RkArgs, tol: &Tolerance) -> Result<QuadResult> {
    let l = rk_ln(a, tol)?;
    let value = l.ln.exp();
    Ok(QuadResult {
        value,
        abs_error_estimate: l.rel_err * value,
        evaluations: l.evaluations,
    })
}

/// Σ λⁿ K_α(z√(q+n)) / (q+n)^{α/2}, which equals R_K(z, −α, q, λ).
pub fn rk_series(z: f64, alpha: f64, q: f64, lambda: f64) -> Result<SeriesResult> {
    rk_series_with(z, alpha, q, lambda, &Tolerance::rel(1e-13))
}

pub fn rk_series_with(
    z: f64,
    alpha: f64,
    q: f64,
    lambda: f64,
    tol: &Tolerance,
) -> Result<SeriesResult> {
    RkArgs::new(z, -alpha, q, lambda).validate()?;
    let inner = tol.tightened(10.0);
    let r = try_sum_series(
        |n| {
            let weight = if n == 0 { 1.0 } else { lambda.powi(n as i32) };
            if weight == 0.0 {
                return Ok(0.0);
            }
            let qn = q + n as f64;
            let k = macdonald_k_with(alpha, z * qn.sqrt(), &inner)?.value;
            Ok(weight * k * qn.powf(-0.5 * alpha))
        },
        tol,
    )?;
    crate::numerics::series::checked(r, "R_K Macdonald series")
}

/// Large-z form √(π/2z) e^{−z√q} / q^{α/2+1/4} of R_K(z, −α, q, λ).
pub fn rk_asymptotic_large(z: f64, alpha: f64, q: f64) -> f64 {
    (std::f64::consts::PI / (2.0 * z)).sqrt() * (-z * q.sqrt()).exp() / q.powf(0.5 * alpha + 0.25)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::macdonald_k;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn half_order_reduction() {
        let v = rk_integral(&RkArgs::new(1.0, 0.5, 1.0, 0.0)).unwrap().value;
        assert!(rel(v, 0.461_068_504_447_894_4) < 1e-12, "{v}");
    }

    #[test]
    fn single_term_series() {
        let s = rk_series(2.0, 1.0, 0.5, 0.0).unwrap();
        let k = macdonald_k(1.0, 2.0 * 0.5f64.sqrt()).unwrap() / 0.5f64.sqrt();
        assert!(rel(s.value, k) < 1e-13);
        let v = rk_integral(&RkArgs::new(2.0, -1.0, 0.5, 0.0))
            .unwrap()
            .value;
        assert!(rel(v, k) < 1e-10);
    }

    #[test]
    fn lambda_one_two_paths() {
        let s = rk_series(1.0, 0.5, 1.0, 1.0).unwrap().value;
        let i = rk_integral(&RkArgs::new(1.0, -0.5, 1.0, 1.0))
            .unwrap()
            .value;
        assert!(rel(s, i) < 1e-9, "{s} {i}");
    }

    #[test]
    fn huge_argument_underflows_cleanly() {
        let l = rk_ln(&RkArgs::new(1e6, -0.5, 1.0, 0.5), &Tolerance::default()).unwrap();
        assert!(l.ln < -9e5);
        assert!(rk_ln_bound(&RkArgs::new(1e6, -0.5, 1.0, 0.5)) >= l.ln);
    }

    #[test]
    fn domain_errors() {
        assert!(rk_integral(&RkArgs::new(0.0, 0.5, 1.0, 0.0)).is_err());
        assert!(rk_integral(&RkArgs::new(1.0, 0.5, 1.5, 0.0)).is_err());
        assert!(rk_integral(&RkArgs::new(1.0, 0.5, 1.0, 1.5)).is_err());
    }
}
