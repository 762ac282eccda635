//! Compensated series summation with a consecutive-small-terms stopping rule.

use super::{SeriesResult, Tolerance};
use crate::error::{Error, Result};

/// Hard cap on the number of terms any series may consume.
pub const SERIES_TERM_CAP: usize = 10_000;
/// Consecutive small terms required before stopping.
const QUIET_TERMS: usize = 3;

/// Neumaier variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
pub struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Sums `term(0), term(1), …` until three consecutive terms satisfy
/// `|term| <= tol.abs + tol.rel * |partial sum|`. Never errors on a cap hit;
/// the result carries `converged = false` instead.
pub fn try_sum_series<F>(mut term: F, tol: &Tolerance) -> Result<SeriesResult>
where
    F: FnMut(usize) -> Result<f64>,
{
    let cap = SERIES_TERM_CAP.min(tol.max_evals.max(1));
    let mut acc = CompensatedSum::new();
    let mut quiet = 0;
    let mut last = 0.0;
    for n in 0..cap {
        let t = term(n)?;
        if !t.is_finite() {
            return Err(Error::NonFiniteTerm { n });
        }
        acc.add(t);
        last = t.abs();
        if last <= tol.abs + tol.rel * acc.value().abs() {
            quiet += 1;
            if quiet >= QUIET_TERMS {
                return Ok(SeriesResult {
                    value: acc.value(),
                    terms_used: n + 1,
                    converged: true,
                    last_term: last,
                });
            }
        } else {
            quiet = 0;
        }
    }
    Ok(SeriesResult {
        value: acc.value(),
        terms_used: cap,
        converged: false,
        last_term: last,
    })
}

/// As [`try_sum_series`], turning a cap hit into `NonConvergence`.
pub fn sum_series<F>(mut term: F, tol: &Tolerance) -> Result<SeriesResult>
where
    F: FnMut(usize) -> f64,
{
    checked(try_sum_series(|n| Ok(term(n)), tol)?, "series")
}

pub(crate) fn checked(r: SeriesResult, what: &str) -> Result<SeriesResult> {
    if r.converged {
        Ok(r)
    } else {
        Err(Error::NonConvergence {
            what: what.to_string(),
            estimate: r.last_term,
            evaluations: r.terms_used,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_term() {
        let r = sum_series(|n| if n == 0 { 7.0 } else { 0.0 }, &Tolerance::default()).unwrap();
        assert_eq!(r.value, 7.0);
        assert!(r.converged);
        assert_eq!(r.terms_used, 4);
    }

    #[test]
    fn geometric() {
        let r = sum_series(|n| 0.5f64.powi(n as i32), &Tolerance::default()).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
        let r = sum_series(
            |n| 0.5f64.powi(n as i32),
            &Tolerance::new(1e-16, 0.0, 100).unwrap(),
        )
        .unwrap();
        assert!((r.value - 2.0).abs() < 1e-15);
    }

    #[test]
    fn divergent_series_reports_nonconvergence() {
        let e = sum_series(|n| n as f64, &Tolerance::default()).unwrap_err();
        assert!(matches!(
            e,
            Error::NonConvergence {
                evaluations: SERIES_TERM_CAP,
                ..
            }
        ));
    }

    #[test]
    fn alternating_zero_crossings_do_not_stop_early() {
        // Terms vanish at n = 1, 2 but the series continues.
        let terms = [1.0, 0.0, 0.0, 0.5, 0.0, 0.0, 0.0];
        let r = sum_series(
            |n| terms.get(n).copied().unwrap_or(0.0),
            &Tolerance::default(),
        )
        .unwrap();
        assert_eq!(r.value, 1.5);
    }

    #[test]
    fn compensated_sum_recovers_small_addends() {
        let mut s = CompensatedSum::new();
        s.add(1.0);
        for _ in 0..10 {
            s.add(1e-16);
        }
        s.add(-1.0);
        assert!((s.value() - 1e-15).abs() < 1e-30);
    }
}
