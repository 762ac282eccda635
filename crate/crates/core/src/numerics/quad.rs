//! Double-exponential quadrature: tanh-sinh on finite intervals, exp-sinh on
//! `[a, ∞)`. Levels halve the step from h = 1; the error estimate is the
//! change between successive levels.

use std::sync::OnceLock;

use super::{QuadResult, Tolerance};
use crate::error::{Error, Result};

const TAU_MAX: f64 = 6.5;
const MAX_LEVEL: usize = 10;
const MIN_LEVEL: usize = 3;
/// Terms below this fraction of the running absolute sum count as negligible.
const NEGLIGIBLE: f64 = 1e-20;
const HALF_PI: f64 = std::f64::consts::FRAC_PI_2;

/// One abscissa pair at parameter τ ≥ 0. `off` is the distance from the
/// anchoring endpoint (in units of the half-width for tanh-sinh) and `w` the
/// transformed weight, for the left (τ < 0) and right (τ > 0) branches.
#[derive(Debug, Clone, Copy)]
struct Node {
    tau: f64,
    l_off: f64,
    l_w: f64,
    r_off: f64,
    r_w: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Rule {
    TanhSinh,
    ExpSinh,
}

fn node(rule: Rule, tau: f64) -> Node {
    let u = HALF_PI * tau.sinh();
    let dc = HALF_PI * tau.cosh();
    match rule {
        Rule::TanhSinh => {
            // 1 - tanh(u), computed without cancellation.
            let compl = 2.0 / ((2.0 * u).exp() + 1.0);
            let w = dc * compl * (2.0 - compl);
            Node {
                tau,
                l_off: compl,
                l_w: w,
                r_off: compl,
                r_w: w,
            }
        }
        Rule::ExpSinh => {
            let (up, dn) = (u.exp(), (-u).exp());
            Node {
                tau,
                l_off: dn,
                l_w: dc * dn,
                r_off: up,
                r_w: dc * up,
            }
        }
    }
}

/// Nodes new at `level`: integers for level 0, odd multiples of 2^-level otherwise.
fn level_nodes(rule: Rule, level: usize) -> &'static [Node] {
    static TS: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    static ES: OnceLock<Vec<Vec<Node>>> = OnceLock::new();
    let cell = match rule {
        Rule::TanhSinh => &TS,
        Rule::ExpSinh => &ES,
    };
    let tables = cell.get_or_init(|| {
        (0..=MAX_LEVEL)
            .map(|k| {
                let h = 0.5f64.powi(k as i32);
                let mut out = Vec::new();
                let mut i = 0usize;
                loop {
                    let tau = if k == 0 {
                        i as f64
                    } else {
                        (2 * i + 1) as f64 * h
                    };
                    if tau > TAU_MAX {
                        break;
                    }
                    out.push(node(rule, tau));
                    i += 1;
                }
                out
            })
            .collect()
    });
    &tables[level]
}

struct Geometry {
    rule: Rule,
    a: f64,
    b: f64,
    scale: f64,
}

impl Geometry {
    /// Abscissa for the given branch, or `None` if it rounds onto an endpoint.
    fn abscissa(&self, right: bool, off: f64) -> Option<f64> {
        let x = match (self.rule, right) {
            (Rule::TanhSinh, false) => self.a + self.scale * off,
            (Rule::TanhSinh, true) => self.b - self.scale * off,
            (Rule::ExpSinh, _) => self.a + off,
        };
        let inside = match self.rule {
            Rule::TanhSinh => x > self.a && x < self.b,
            Rule::ExpSinh => x > self.a && x.is_finite(),
        };
        inside.then_some(x)
    }
}

fn drive<F>(geo: Geometry, f: &mut F, tol: &Tolerance, what: &str) -> Result<QuadResult>
where
    F: FnMut(f64) -> Result<f64>,
{
    let mut evals = 0usize;
    let mut sum = 0.0;
    let mut comp = 0.0;
    let mut abs_sum = 0.0;
    // Outermost τ with a non-negligible term, per branch.
    let mut extent = [0.0f64; 2];
    let mut previous: Option<f64> = None;
    let mut last_err = f64::INFINITY;

    let add = |v: f64, sum: &mut f64, comp: &mut f64| {
        let t = *sum + v;
        if sum.abs() >= v.abs() {
            *comp += (*sum - t) + v;
        } else {
            *comp += (v - t) + *sum;
        }
        *sum = t;
    };

    for level in 0..=MAX_LEVEL {
        let h = 0.5f64.powi(level as i32);
        for nd in level_nodes(geo.rule, level) {
            if nd.tau == 0.0 {
                if let Some(x) = geo.abscissa(true, nd.r_off) {
                    let v = f(x)?;
                    evals += 1;
                    if !v.is_finite() {
                        return Err(Error::NonFiniteIntegrand { x });
                    }
                    let t = v * nd.r_w;
                    add(t, &mut sum, &mut comp);
                    abs_sum += t.abs();
                }
                continue;
            }
            for (side, right) in [(0usize, false), (1usize, true)] {
                if level > 0 && nd.tau > extent[side] + 0.5 {
                    continue;
                }
                let (off, w) = if right {
                    (nd.r_off, nd.r_w)
                } else {
                    (nd.l_off, nd.l_w)
                };
                let Some(x) = geo.abscissa(right, off) else {
                    continue;
                };
                let v = f(x)?;
                evals += 1;
                if !v.is_finite() {
                    return Err(Error::NonFiniteIntegrand { x });
                }
                let t = v * w;
                add(t, &mut sum, &mut comp);
                abs_sum += t.abs();
                if t.abs() > NEGLIGIBLE * abs_sum {
                    extent[side] = extent[side].max(nd.tau);
                }
            }
        }
        let estimate = geo.scale * h * (sum + comp);
        if evals > tol.max_evals {
            return Err(Error::NonConvergence {
                what: what.to_string(),
                estimate: last_err,
                evaluations: evals,
            });
        }
        if let Some(prev) = previous {
            let err = (estimate - prev).abs();
            last_err = err;
            let roundoff = 64.0 * f64::EPSILON * geo.scale * h * abs_sum;
            let target = tol.abs.max(tol.rel * estimate.abs()).max(roundoff);
            if level >= MIN_LEVEL && err <= target {
                return Ok(QuadResult {
                    value: estimate,
                    abs_error_estimate: err,
                    evaluations: evals.max(1),
                });
            }
        }
        previous = Some(estimate);
    }
    Err(Error::NonConvergence {
        what: what.to_string(),
        estimate: last_err,
        evaluations: evals,
    })
}

fn check_tol(tol: &Tolerance) -> Result<()> {
    if !(tol.rel > 0.0 && tol.rel < 1.0) || !(tol.abs >= 0.0) || tol.max_evals == 0 {
        return Err(Error::Domain(format!("invalid tolerance {tol:?}")));
    }
    Ok(())
}

/// Integrates `f` over the open interval `(a, b)` with the tanh-sinh rule.
/// Endpoint values are never requested.
pub fn integrate_finite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<QuadResult> {
    try_integrate_finite(|x| Ok(f(x)), a, b, tol)
}

/// As [`integrate_finite`] for integrands that can themselves fail.
pub fn try_integrate_finite<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    b: f64,
    tol: &Tolerance,
) -> Result<QuadResult> {
    check_tol(tol)?;
    if !(a.is_finite() && b.is_finite() && a < b) {
        return Err(Error::Domain(format!(
            "a < b with finite limits required, got [{a}, {b}]"
        )));
    }
    let geo = Geometry {
        rule: Rule::TanhSinh,
        a,
        b,
        scale: 0.5 * (b - a),
    };
    drive(geo, &mut f, tol, "tanh-sinh quadrature")
}

/// Integrates `f` over `(a, ∞)` with the exp-sinh rule. `f` must decay at
/// least exponentially.
pub fn integrate_semi_infinite<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    tol: &Tolerance,
) -> Result<QuadResult> {
    try_integrate_semi_infinite(|x| Ok(f(x)), a, tol)
}

/// As [`integrate_semi_infinite`] for integrands that can themselves fail.
pub fn try_integrate_semi_infinite<F: FnMut(f64) -> Result<f64>>(
    mut f: F,
    a: f64,
    tol: &Tolerance,
) -> Result<QuadResult> {
    check_tol(tol)?;
    if !a.is_finite() {
        return Err(Error::Domain(format!(
            "finite lower limit required, got {a}"
        )));
    }
    let geo = Geometry {
        rule: Rule::ExpSinh,
        a,
        b: f64::INFINITY,
        scale: 1.0,
    };
    drive(geo, &mut f, tol, "exp-sinh quadrature")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tol() -> Tolerance {
        Tolerance::default()
    }

    #[test]
    fn constant() {
        let r = integrate_finite(|_| 1.0, 0.0, 1.0, &tol()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-14);
        assert!(r.evaluations >= 13);
    }

    #[test]
    fn inverse_sqrt() {
        let r = integrate_finite(|t| t.powf(-0.5), 0.0, 1.0, &tol()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-10, "{r:?}");
    }

    #[test]
    fn exponential_tail() {
        let r = integrate_semi_infinite(|t| (-t).exp(), 0.0, &tol()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
        let r = integrate_semi_infinite(|t| t * (-t).exp(), 0.0, &tol()).unwrap();
        assert!((r.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn shifted_lower_limit() {
        let r = integrate_semi_infinite(|t| (-t).exp(), 2.0, &tol()).unwrap();
        assert!((r.value - (-2.0f64).exp()).abs() < 1e-14);
    }

    #[test]
    fn nan_integrand_is_reported() {
        let e = integrate_finite(|_| f64::NAN, 0.0, 1.0, &tol()).unwrap_err();
        assert!(matches!(e, Error::NonFiniteIntegrand { .. }));
    }

    #[test]
    fn eval_cap_is_enforced() {
        let t = tol().with_max_evals(20);
        let e = integrate_finite(|t| (50.0 * t).sin(), 0.0, 1.0, &t).unwrap_err();
        assert!(matches!(e, Error::NonConvergence { .. }));
    }

    #[test]
    fn rejects_reversed_interval() {
        assert!(integrate_finite(|t| t, 1.0, 0.0, &tol()).is_err());
    }
}
