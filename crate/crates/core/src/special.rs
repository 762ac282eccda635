//! Classical building blocks: Γ, B, Pochhammer, Macdonald K, Lerch Φ, ₀F₂, ₂F₁.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{require, Error, Result};
use crate::numerics::{try_integrate_semi_infinite, try_sum_series, QuadResult, Tolerance};

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_572e-6,
    1.505_632_735_149_311_6e-7,
];

/// Tolerance used for series inside this module.
fn series_tol() -> Tolerance {
    Tolerance {
        rel: 1e-16,
        abs: 0.0,
        max_evals: crate::numerics::SERIES_TERM_CAP,
    }
}

fn is_nonpositive_integer(x: f64) -> bool {
    x <= 0.0 && x == x.round()
}

/// sin(πx) with argument reduction so values near integers keep full
/// relative accuracy.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).round();
    // r in [-1, 1]
    if r.abs() <= 0.25 {
        (PI * r).sin()
    } else if r > 0.75 {
        (PI * (1.0 - r)).sin()
    } else if r < -0.75 {
        -(PI * (1.0 + r)).sin()
    } else if r > 0.0 {
        (PI * (0.5 - r)).cos()
    } else {
        -(PI * (0.5 + r)).cos()
    }
}

fn lanczos_sum(x: f64) -> f64 {
    // x is the shifted argument (Γ(x+1) form).
    let mut a = LANCZOS[0];
    for (i, c) in LANCZOS.iter().enumerate().skip(1) {
        a += c / (x + i as f64);
    }
    a
}

/// Euler's gamma function on the real line.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if x.is_nan() {
        return Err(Error::Domain("gamma argument is NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("gamma has a pole at {x}")));
    }
    if x < 0.5 {
        let g = gamma_fn(1.0 - x)?;
        return Ok(PI / (sin_pi(x) * g));
    }
    if x == x.round() && x <= 23.0 {
        // Exact factorials.
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm);
    // Split the power to delay overflow near the top of the f64 range.
    let half = t.powf(0.5 * (xm + 0.5));
    Ok((2.0 * PI).sqrt() * half * ((-t).exp() * half) * a)
}

/// ln|Γ(x)| together with the sign of Γ(x).
pub fn ln_gamma(x: f64) -> Result<(f64, f64)> {
    if x.is_nan() {
        return Err(Error::Domain("gamma argument is NaN".into()));
    }
    if is_nonpositive_integer(x) {
        return Err(Error::Pole(format!("gamma has a pole at {x}")));
    }
    if x < 0.5 {
        let (lg, sg) = ln_gamma(1.0 - x)?;
        let s = sin_pi(x);
        return Ok(((PI / s.abs()).ln() - lg, sg * s.signum()));
    }
    if x < 20.0 {
        let g = gamma_fn(x)?;
        return Ok((g.abs().ln(), g.signum()));
    }
    let xm = x - 1.0;
    let t = xm + LANCZOS_G + 0.5;
    let a = lanczos_sum(xm);
    Ok((
        0.5 * (2.0 * PI).ln() + (xm + 0.5) * t.ln() - t + a.ln(),
        1.0,
    ))
}

/// Euler's beta function B(x, y) = Γ(x)Γ(y)/Γ(x+y) for x, y > 0.
pub fn beta_classical(x: f64, y: f64) -> Result<f64> {
    require(x > 0.0, "beta requires x > 0", x)?;
    require(y > 0.0, "beta requires y > 0", y)?;
    if x + y < 150.0 {
        Ok(gamma_fn(x)? * gamma_fn(y)? / gamma_fn(x + y)?)
    } else {
        Ok((ln_gamma(x)?.0 + ln_gamma(y)?.0 - ln_gamma(x + y)?.0).exp())
    }
}

/// Rising factorial (a)_n = a(a+1)…(a+n−1); (a)_0 = 1.
pub fn pochhammer(a: f64, n: u32) -> f64 {
    let mut p = 1.0;
    for k in 0..n {
        p *= a + k as f64;
    }
    p
}

/// Macdonald function K_α(z), z > 0, from its integral definition.
pub fn macdonald_k(alpha: f64, z: f64) -> Result<f64> {
    Ok(macdonald_k_with(alpha, z, &Tolerance::rel(1e-14))?.value)
}

/// K_α(z) with an explicit tolerance.
///
/// The defining integral (z/2)^α/2 ∫₀^∞ t^{−α−1}e^{−t−z²/4t}dt becomes
/// ∫₀^∞ e^{−z cosh w} cosh(αw) dw under t = (z/2)e^{−w}, folded onto w > 0.
pub fn macdonald_k_with(alpha: f64, z: f64, tol: &Tolerance) -> Result<QuadResult> {
    require(z > 0.0, "macdonald_k requires z > 0", z)?;
    require(
        alpha.is_finite(),
        "macdonald_k requires finite alpha",
        alpha,
    )?;
    let a = alpha.abs();
    let r = try_integrate_semi_infinite(
        |w| {
            let s = (0.5 * w).sinh();
            let damp = -2.0 * z * s * s;
            Ok(0.5 * ((a * w + damp).exp() + (-a * w + damp).exp()))
        },
        0.0,
        tol,
    )?;
    let scale = (-z).exp();
    Ok(QuadResult {
        value: r.value * scale,
        abs_error_estimate: r.abs_error_estimate * scale,
        evaluations: r.evaluations,
    })
}

/// Arguments of the Lerch transcendent Φ(λ, s, q) = Σ λⁿ/(q+n)^s.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LerchArgs {
    pub lambda: f64,
    pub s: f64,
    pub q: f64,
}

impl LerchArgs {
    pub fn validate(&self) -> Result<()> {
        require(
            self.q > 0.0 && self.q <= 1.0,
            "lerch_phi requires 0 < q <= 1",
            self.q,
        )?;
        require(
            self.lambda.abs() <= 1.0,
            "lerch_phi requires |lambda| <= 1",
            self.lambda,
        )?;
        require(self.s.is_finite(), "lerch_phi requires finite s", self.s)?;
        if self.lambda == 1.0 && self.s <= 1.0 {
            return Err(Error::NonConvergence {
                what: format!("lerch_phi with lambda = 1 needs s > 1 (got s = {})", self.s),
                estimate: f64::INFINITY,
                evaluations: 0,
            });
        }
        if self.lambda == -1.0 && self.s <= 0.0 {
            return Err(Error::NonConvergence {
                what: format!(
                    "lerch_phi with lambda = -1 needs s > 0 (got s = {})",
                    self.s
                ),
                estimate: f64::INFINITY,
                evaluations: 0,
            });
        }
        Ok(())
    }
}

// B_{2j}/(2j)! for j = 1..=8.
const EM_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 720.0,
    1.0 / 30_240.0,
    -1.0 / 1_209_600.0,
    1.0 / 47_900_160.0,
    -691.0 / 1_307_674_368_000.0,
    1.0 / 74_724_249_600.0,
    -3_617.0 / 10_670_622_842_880_000.0,
];

/// Σ_{n≥N} f(n) by Euler–Maclaurin, given the tail integral, f(N), and a
/// closure for the odd derivatives f^{(r)}(N).
fn euler_maclaurin_tail(integral: f64, f_n: f64, deriv: impl Fn(u32) -> f64) -> f64 {
    let mut s = integral + 0.5 * f_n;
    for (j, c) in EM_COEFFS.iter().enumerate() {
        s -= c * deriv(2 * j as u32 + 1);
    }
    s
}

/// Hurwitz zeta ζ(s, a) = Σ (a+n)^{−s} for s > 1, a > 0.
fn hurwitz_zeta(s: f64, a: f64) -> f64 {
    let n = (25.0f64).max(2.0 * s).ceil() as usize;
    let mut acc = crate::numerics::CompensatedSum::new();
    for k in 0..n {
        acc.add((a + k as f64).powf(-s));
    }
    let x = a + n as f64;
    let tail = euler_maclaurin_tail(x.powf(1.0 - s) / (s - 1.0), x.powf(-s), |r| {
        -pochhammer(s, r) * x.powf(-s - r as f64)
    });
    acc.add(tail);
    acc.value()
}

/// Σ (−1)ⁿ (q+n)^{−s} for s > 0, grouped in pairs with an Euler–Maclaurin tail.
fn alternating_zeta(s: f64, q: f64) -> f64 {
    let pairs = (25.0f64).max(s).ceil() as usize;
    let mut acc = crate::numerics::CompensatedSum::new();
    for k in 0..pairs {
        let base = q + 2.0 * k as f64;
        acc.add(base.powf(-s) - (base + 1.0).powf(-s));
    }
    let x = q + 2.0 * pairs as f64;
    // ∫_N^∞ [(q+2k)^{−s} − (q+2k+1)^{−s}] dk, stable through s = 1.
    let eps = 1.0 - s;
    let l = (1.0 / x).ln_1p();
    let integral = if eps == 0.0 {
        0.5 * l
    } else {
        0.5 * x.powf(eps) * (eps * l).exp_m1() / eps
    };
    let f_n = x.powf(-s) - (x + 1.0).powf(-s);
    let tail = euler_maclaurin_tail(integral, f_n, |r| {
        let sr = s + r as f64;
        -pochhammer(s, r) * 2f64.powi(r as i32) * (x.powf(-sr) - (x + 1.0).powf(-sr))
    });
    acc.add(tail);
    acc.value()
}

/// Lerch transcendent Φ(λ, s, q).
///
/// |λ| < 1 is summed directly; λ = 1 is the Hurwitz zeta function and
/// λ = −1 the alternating Hurwitz series, both completed with an
/// Euler–Maclaurin tail.
pub fn lerch_phi(args: &LerchArgs) -> Result<f64> {
    args.validate()?;
    let LerchArgs { lambda, s, q } = *args;
    if lambda == 0.0 {
        return Ok(q.powf(-s));
    }
    if lambda == 1.0 {
        return Ok(hurwitz_zeta(s, q));
    }
    if lambda == -1.0 {
        return Ok(alternating_zeta(s, q));
    }
    let r = try_sum_series(
        |n| Ok(lambda.powi(n as i32) * (q + n as f64).powf(-s)),
        &series_tol(),
    )?;
    Ok(crate::numerics::series::checked(r, "lerch_phi series")?.value)
}

fn check_hyp_param(name: &str, v: f64) -> Result<()> {
    if is_nonpositive_integer(v) {
        Err(Error::Pole(format!(
            "{name} = {v} is a non-positive integer"
        )))
    } else {
        Ok(())
    }
}

/// Largest tolerated ratio between the biggest term and the final sum.
const CANCELLATION_LIMIT: f64 = 1e6;

/// ₀F₂(−; b₁, b₂; x) by its power series. Large negative x leads to heavy
/// cancellation among terms; when more than six digits are lost the call
/// fails with `NonConvergence` rather than returning noise.
pub fn hyp0f2(b1: f64, b2: f64, x: f64) -> Result<f64> {
    check_hyp_param("b1", b1)?;
    check_hyp_param("b2", b2)?;
    let mut term = 1.0;
    let mut biggest: f64 = 1.0;
    let r = try_sum_series(
        |n| {
            if n > 0 {
                let k = (n - 1) as f64;
                term *= x / ((b1 + k) * (b2 + k) * (k + 1.0));
            }
            biggest = biggest.max(term.abs());
            Ok(term)
        },
        &series_tol(),
    )?;
    let r = crate::numerics::series::checked(r, "0F2 series")?;
    if !(biggest.is_finite() && biggest <= CANCELLATION_LIMIT * r.value.abs()) {
        return Err(Error::NonConvergence {
            what: format!("0F2({b1},{b2};{x}) series lost precision to cancellation"),
            estimate: biggest * f64::EPSILON,
            evaluations: r.terms_used,
        });
    }
    Ok(r.value)
}

/// Gauss ₂F₁(a, b; c; z) for |z| < 1 by its power series.
pub fn gauss_2f1(a: f64, b: f64, c: f64, z: f64) -> Result<f64> {
    check_hyp_param("c", c)?;
    require(z.abs() < 1.0, "gauss_2f1 requires |z| < 1", z)?;
    let mut term = 1.0;
    let r = try_sum_series(
        |n| {
            if n > 0 {
                let k = (n - 1) as f64;
                term *= (a + k) * (b + k) / ((c + k) * (k + 1.0)) * z;
            }
            Ok(term)
        },
        &series_tol(),
    )?;
    Ok(crate::numerics::series::checked(r, "2F1 series")?.value)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn gamma_values() {
        assert_eq!(gamma_fn(1.0).unwrap(), 1.0);
        assert_eq!(gamma_fn(5.0).unwrap(), 24.0);
        assert!(rel(gamma_fn(0.5).unwrap(), PI.sqrt()) < 1e-15);
        assert!(rel(gamma_fn(-0.5).unwrap(), -2.0 * PI.sqrt()) < 1e-14);
        assert!(rel(gamma_fn(1.5).unwrap(), 0.5 * PI.sqrt()) < 1e-14);
        assert!(matches!(gamma_fn(0.0), Err(Error::Pole(_))));
        assert!(matches!(gamma_fn(-3.0), Err(Error::Pole(_))));
    }

    #[test]
    fn ln_gamma_matches_gamma() {
        for &x in &[0.3, 2.5, 7.1, 19.5, -2.5] {
            let (l, s) = ln_gamma(x).unwrap();
            assert!(rel(s * l.exp(), gamma_fn(x).unwrap()) < 1e-13, "{x}");
        }
        let (l, _) = ln_gamma(30.0).unwrap();
        // ln(29!)
        assert!(rel(l, 71.257_038_967_168_01) < 1e-14);
    }

    #[test]
    fn beta_values() {
        assert!(rel(beta_classical(1.0, 1.0).unwrap(), 1.0) < 1e-15);
        assert!(rel(beta_classical(2.0, 3.0).unwrap(), 1.0 / 12.0) < 1e-15);
        assert!(beta_classical(0.0, 1.0).is_err());
        let big = beta_classical(100.0, 80.0).unwrap();
        let lg =
            ln_gamma(100.0).unwrap().0 + ln_gamma(80.0).unwrap().0 - ln_gamma(180.0).unwrap().0;
        assert!(rel(big, lg.exp()) < 1e-12);
    }

    #[test]
    fn pochhammer_values() {
        assert_eq!(pochhammer(3.0, 0), 1.0);
        assert_eq!(pochhammer(3.0, 4), 360.0);
        assert_eq!(pochhammer(-2.5, 3), -1.875);
    }

    #[test]
    fn macdonald_half_order() {
        let k = macdonald_k(0.5, 1.0).unwrap();
        assert!(rel(k, (PI / 2.0).sqrt() * (-1.0f64).exp()) < 1e-13);
        assert_eq!(
            macdonald_k(-0.5, 2.0).unwrap(),
            macdonald_k(0.5, 2.0).unwrap()
        );
        assert!(macdonald_k(0.0, 0.0).is_err());
    }

    #[test]
    fn macdonald_integer_orders() {
        // Reference values of K_0(1), K_1(1), K_1(0.25).
        assert!(rel(macdonald_k(0.0, 1.0).unwrap(), 0.421_024_438_240_708_3) < 1e-13);
        assert!(rel(macdonald_k(1.0, 1.0).unwrap(), 0.601_907_230_197_234_6) < 1e-13);
        assert!(rel(macdonald_k(1.0, 0.25).unwrap(), 3.747_025_974_440_711_6) < 1e-12);
    }

    #[test]
    fn lerch_special_cases() {
        let a = LerchArgs {
            lambda: 0.0,
            s: 2.3,
            q: 0.4,
        };
        assert_eq!(lerch_phi(&a).unwrap(), 0.4f64.powf(-2.3));
        let z2 = lerch_phi(&LerchArgs {
            lambda: 1.0,
            s: 2.0,
            q: 1.0,
        })
        .unwrap();
        assert!(rel(z2, PI * PI / 6.0) < 1e-14);
        // η(1) = ln 2
        let eta1 = lerch_phi(&LerchArgs {
            lambda: -1.0,
            s: 1.0,
            q: 1.0,
        })
        .unwrap();
        assert!(rel(eta1, 2f64.ln()) < 1e-14);
        // η(2) = π²/12
        let eta2 = lerch_phi(&LerchArgs {
            lambda: -1.0,
            s: 2.0,
            q: 1.0,
        })
        .unwrap();
        assert!(rel(eta2, PI * PI / 12.0) < 1e-14);
        // ζ(3, 1/2) = 7ζ(3)
        let h = lerch_phi(&LerchArgs {
            lambda: 1.0,
            s: 3.0,
            q: 0.5,
        })
        .unwrap();
        assert!(rel(h, 7.0 * 1.202_056_903_159_594_3) < 1e-14);
        assert!(matches!(
            lerch_phi(&LerchArgs {
                lambda: 1.0,
                s: 1.0,
                q: 1.0
            }),
            Err(Error::NonConvergence { .. })
        ));
        assert!(lerch_phi(&LerchArgs {
            lambda: 0.5,
            s: 1.0,
            q: 0.0
        })
        .is_err());
    }

    #[test]
    fn hyp0f2_values() {
        assert_eq!(hyp0f2(1.0, 1.0, 0.0).unwrap(), 1.0);
        assert!(rel(hyp0f2(1.0, 1.0, 1.0).unwrap(), 2.129_702_548_983_306_4) < 1e-15);
        assert!(matches!(hyp0f2(-1.0, 1.0, 1.0), Err(Error::Pole(_))));
        assert!(matches!(
            hyp0f2(0.5, 1.5, -1e5),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn gauss_2f1_log() {
        let v = gauss_2f1(1.0, 1.0, 2.0, 0.5).unwrap();
        assert!(rel(v, 1.386_294_361_119_890_6) < 1e-14);
        assert_eq!(gauss_2f1(0.3, 0.7, 1.1, 0.0).unwrap(), 1.0);
        assert!(gauss_2f1(1.0, 1.0, 2.0, 1.0).is_err());
    }
}
