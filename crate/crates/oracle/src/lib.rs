//! Slow reference evaluators used to cross-check the production engines.
//!
//! Nothing here shares code with `xspec-core`. Integration uses composite
//! Gauss–Legendre panels on geometrically graded segments (the production
//! code uses double-exponential rules), and summation is a plain compensated
//! sum over a fixed number of terms.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::sync::OnceLock;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Successive refinements never agreed to the requested accuracy.
    #[error("oracle refinement stalled: last two passes {previous:e} and {latest:e}")]
    OracleDisagreement { previous: f64, latest: f64 },
    #[error("integrand returned a non-finite value at x = {x}")]
    NonFinite { x: f64 },
    /// Grading reached the floating-point spacing at an endpoint while the
    /// integrand there still contributed.
    #[error(
        "endpoint singularity at {at} not resolved in f64; integrate in the complement variable"
    )]
    UnresolvedEndpoint { at: f64 },
    #[error("invalid oracle input: {0}")]
    Invalid(String),
}

/// Upper limit of an oracle integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Upper {
    Finite(f64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleConfig {
    /// Maximum number of graded segments laid down toward each end of the range.
    pub panels: usize,
    /// Maximum number of panel doublings.
    pub refine_limit: usize,
    /// Relative agreement required between two successive passes.
    pub target_rel: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            panels: 1100,
            refine_limit: 7,
            target_rel: 1e-12,
        }
    }
}

impl OracleConfig {
    pub fn with_target(target_rel: f64) -> Self {
        OracleConfig {
            target_rel,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<(), OracleError> {
        if self.panels < 64 {
            return Err(OracleError::Invalid(format!(
                "panels must be at least 64, got {}",
                self.panels
            )));
        }
        if !(self.target_rel > 0.0 && self.target_rel <= 1e-10) {
            return Err(OracleError::Invalid(format!(
                "target_rel must lie in (0, 1e-10], got {}",
                self.target_rel
            )));
        }
        Ok(())
    }
}

const GL_ORDER: usize = 16;

/// Gauss–Legendre nodes and weights on [-1, 1], computed once by Newton iteration
/// on the Legendre recurrence.
fn gauss_legendre() -> &'static [(f64, f64)] {
    static TABLE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n = GL_ORDER;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=n {
                    let k = k as f64;
                    let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            out.push((x, w));
        }
        out
    })
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Default, Clone, Copy)]
struct Acc {
    sum: f64,
    c: f64,
}

impl Acc {
    fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.c += (self.sum - t) + v;
        } else {
            self.c += (v - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.c
    }
}

fn panel<F: FnMut(f64) -> f64>(
    f: &mut F,
    lo: f64,
    hi: f64,
    pieces: usize,
) -> Result<f64, OracleError> {
    let gl = gauss_legendre();
    let width = (hi - lo) / pieces as f64;
    let mut acc = Acc::default();
    for j in 0..pieces {
        let a = lo + width * j as f64;
        let b = if j + 1 == pieces { hi } else { a + width };
        let half = 0.5 * (b - a);
        let mid = a + half;
        for &(x, w) in gl {
            let t = mid + half * x;
            if t <= lo || t >= hi {
                continue;
            }
            let v = f(t);
            if !v.is_finite() {
                return Err(OracleError::NonFinite { x: t });
            }
            acc.add(w * half * v);
        }
    }
    Ok(acc.value())
}

/// Geometric segments approaching `anchor` from one side.
fn graded_pass<F: FnMut(f64) -> f64>(
    f: &mut F,
    anchor: f64,
    length: f64,
    toward_anchor_from_right: bool,
    pieces: usize,
    cfg: &OracleConfig,
    running: &mut Acc,
) -> Result<(), OracleError> {
    // Segments [anchor + length 2^{-j-1}, anchor + length 2^{-j}] (or mirrored).
    let mut quiet = 0;
    let mut last = f64::INFINITY;
    for j in 0..cfg.panels {
        let outer = length * 0.5f64.powi(j as i32);
        let inner = outer * 0.5;
        let (lo, hi) = if toward_anchor_from_right {
            (anchor + inner, anchor + outer)
        } else {
            (anchor - outer, anchor - inner)
        };
        if !(lo < hi) || lo == anchor || hi == anchor {
            if last.abs() > cfg.target_rel * running.value().abs() {
                return Err(OracleError::UnresolvedEndpoint { at: anchor });
            }
            break;
        }
        let v = panel(f, lo, hi, pieces)?;
        last = v;
        running.add(v);
        let total = running.value().abs();
        if j >= 8 && v.abs() <= 1e-4 * cfg.target_rel * total {
            quiet += 1;
            if quiet >= 4 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(())
}

fn expanding_pass<F: FnMut(f64) -> f64>(
    f: &mut F,
    start: f64,
    pieces: usize,
    cfg: &OracleConfig,
    running: &mut Acc,
) -> Result<(), OracleError> {
    let mut quiet = 0;
    for j in 0..cfg.panels {
        let lo = start + 2f64.powi(j as i32);
        let hi = start + 2f64.powi(j as i32 + 1);
        if !hi.is_finite() {
            break;
        }
        let v = panel(f, lo, hi, pieces)?;
        running.add(v);
        let total = running.value().abs();
        if j >= 12 && v.abs() <= 1e-4 * cfg.target_rel * total {
            quiet += 1;
            if quiet >= 4 {
                break;
            }
        } else {
            quiet = 0;
        }
    }
    Ok(())
}

fn single_pass<F: FnMut(f64) -> f64>(
    f: &mut F,
    a: f64,
    b: Upper,
    pieces: usize,
    cfg: &OracleConfig,
) -> Result<f64, OracleError> {
    let mut acc = Acc::default();
    match b {
        Upper::Finite(b) => {
            let half = 0.5 * (b - a);
            graded_pass(f, a, half, true, pieces, cfg, &mut acc)?;
            graded_pass(f, b, half, false, pieces, cfg, &mut acc)?;
        }
        Upper::Infinity => {
            graded_pass(f, a, 1.0, true, pieces, cfg, &mut acc)?;
            expanding_pass(f, a, pieces, cfg, &mut acc)?;
        }
    }
    Ok(acc.value())
}

/// Integrates `f` over `(a, b)` with graded composite Gauss–Legendre panels,
/// doubling the panel count until two successive passes agree to
/// `cfg.target_rel`.
///
/// Endpoint values are never requested. Grading toward a nonzero finite
/// endpoint is limited by the floating-point spacing there.
pub fn oracle_integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: Upper,
    cfg: &OracleConfig,
) -> Result<f64, OracleError> {
    cfg.validate()?;
    if let Upper::Finite(b) = b {
        if !(a < b) {
            return Err(OracleError::Invalid(format!("need a < b, got [{a}, {b}]")));
        }
    }
    let mut pieces = 1;
    let mut previous = single_pass(&mut f, a, b, pieces, cfg)?;
    for _ in 0..cfg.refine_limit {
        pieces *= 2;
        let latest = single_pass(&mut f, a, b, pieces, cfg)?;
        if (latest - previous).abs() <= cfg.target_rel * latest.abs() || latest == previous {
            return Ok(latest);
        }
        previous = latest;
    }
    let latest = single_pass(&mut f, a, b, pieces * 2, cfg)?;
    if (latest - previous).abs() <= cfg.target_rel * latest.abs() {
        Ok(latest)
    } else {
        Err(OracleError::OracleDisagreement { previous, latest })
    }
}

/// Compensated sum of exactly `n_max + 1` terms, `term(0) ..= term(n_max)`.
pub fn oracle_sum<F: FnMut(usize) -> f64>(mut term: F, n_max: usize) -> f64 {
    let mut acc = Acc::default();
    for n in 0..=n_max {
        acc.add(term(n));
    }
    acc.value()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn legendre_weights_sum_to_two() {
        let s: f64 = gauss_legendre().iter().map(|&(_, w)| w).sum();
        assert!((s - 2.0).abs() < 1e-14);
    }

    #[test]
    fn constant_on_unit_interval() {
        let v =
            oracle_integrate(|_| 1.0, 0.0, Upper::Finite(1.0), &OracleConfig::default()).unwrap();
        assert!((v - 1.0).abs() < 1e-14);
    }

    #[test]
    fn exponential_on_half_line() {
        let v = oracle_integrate(
            |t| (-t).exp(),
            0.0,
            Upper::Infinity,
            &OracleConfig::default(),
        )
        .unwrap();
        assert!((v - 1.0).abs() < 1e-13);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        let v = oracle_integrate(
            |t| t.powf(-0.5),
            0.0,
            Upper::Finite(1.0),
            &OracleConfig::default(),
        )
        .unwrap();
        assert!((v - 2.0).abs() < 1e-12, "{v}");
    }

    #[test]
    fn both_endpoints_singular_split_at_half() {
        // B(0.3, 0.4) = Γ(0.3)Γ(0.4)/Γ(0.7)
        let exact = 2.99156898768759_f64 * 2.218159543757688 / 1.298055332647558;
        let cfg = OracleConfig::default();
        let left = oracle_integrate(
            |t| t.powf(-0.7) * (1.0 - t).powf(-0.6),
            0.0,
            Upper::Finite(0.5),
            &cfg,
        )
        .unwrap();
        let right = oracle_integrate(
            |u| u.powf(-0.6) * (1.0 - u).powf(-0.7),
            0.0,
            Upper::Finite(0.5),
            &cfg,
        )
        .unwrap();
        let v = left + right;
        assert!(((v - exact) / exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn singularity_at_one_is_not_silently_truncated() {
        let r = oracle_integrate(
            |t| t.powf(-0.7) * (1.0 - t).powf(-0.6),
            0.0,
            Upper::Finite(1.0),
            &OracleConfig::default(),
        );
        assert!(r.is_err());
    }

    #[test]
    fn geometric_sum() {
        let v = oracle_sum(|n| 0.5f64.powi(n as i32), 200);
        assert!((v - 2.0).abs() < 1e-15);
    }

    #[test]
    fn finite_sum_is_exact() {
        let v = oracle_sum(|n| if n < 4 { (n + 1) as f64 } else { 0.0 }, 50);
        assert_eq!(v, 10.0);
    }

    #[test]
    fn rejects_loose_config() {
        let cfg = OracleConfig {
            target_rel: 1e-6,
            ..Default::default()
        };
        assert!(oracle_integrate(|t| t, 0.0, Upper::Finite(1.0), &cfg).is_err());
        let cfg = OracleConfig {
            panels: 10,
            ..Default::default()
        };
        assert!(oracle_integrate(|t| t, 0.0, Upper::Finite(1.0), &cfg).is_err());
    }
}
