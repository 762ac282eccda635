//! Quadrature, series and differencing engines shared by every special function.

mod diff;
mod quad;
pub(crate) mod series;

pub use diff::{default_step, finite_difference};
pub use quad::{
    integrate_finite, integrate_semi_infinite, try_integrate_finite, try_integrate_semi_infinite,
};
pub use series::{sum_series, try_sum_series, CompensatedSum, SERIES_TERM_CAP};

use std::sync::atomic::{AtomicUsize, Ordering};

use serde::Serialize;

use crate::error::{Error, Result};

/// Accuracy request passed to every engine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
    pub max_evals: usize,
}

pub const DEFAULT_MAX_EVALS: usize = 2_000_000;

static MAX_EVALS: AtomicUsize = AtomicUsize::new(DEFAULT_MAX_EVALS);

/// Replaces the evaluation cap every default-constructed [`Tolerance`] carries.
pub fn set_default_max_evals(max_evals: usize) {
    MAX_EVALS.store(max_evals.max(1), Ordering::Relaxed);
}

pub fn default_max_evals() -> usize {
    MAX_EVALS.load(Ordering::Relaxed)
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            rel: 1e-10,
            abs: 1e-14,
            max_evals: default_max_evals(),
        }
    }
}

impl Tolerance {
    pub fn new(rel: f64, abs: f64, max_evals: usize) -> Result<Self> {
        if !(rel > 0.0 && rel < 1.0) {
            return Err(Error::Domain(format!(
                "tolerance rel must lie in (0,1), got {rel}"
            )));
        }
        if !(abs >= 0.0) {
            return Err(Error::Domain(format!(
                "tolerance abs must be >= 0, got {abs}"
            )));
        }
        if max_evals == 0 {
            return Err(Error::Domain("max_evals must be > 0".into()));
        }
        Ok(Tolerance {
            rel,
            abs,
            max_evals,
        })
    }

    /// Relative tolerance `rel` with the default absolute floor and cap.
    pub fn rel(rel: f64) -> Self {
        Tolerance {
            rel,
            ..Default::default()
        }
    }

    /// A stricter request for an inner evaluation nested inside another.
    /// Never tighter than the attainable floor of roughly 1e-15.
    pub fn tightened(&self, factor: f64) -> Self {
        Tolerance {
            rel: (self.rel / factor).max(1e-15),
            abs: self.abs / factor,
            max_evals: self.max_evals,
        }
    }

    pub fn with_max_evals(mut self, max_evals: usize) -> Self {
        self.max_evals = max_evals.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuadResult {
    pub value: f64,
    pub abs_error_estimate: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SeriesResult {
    pub value: f64,
    pub terms_used: usize,
    pub converged: bool,
    /// Magnitude of the last accepted term, a proxy for the truncation error.
    pub last_term: f64,
}

/// Two sides of an identity and the magnitude used to scale their gap.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Residual {
    pub lhs: f64,
    pub rhs: f64,
    pub scale: f64,
}

impl Residual {
    /// Scale defaults to max(|lhs|, |rhs|).
    pub fn new(lhs: f64, rhs: f64) -> Self {
        Residual {
            lhs,
            rhs,
            scale: lhs.abs().max(rhs.abs()),
        }
    }

    /// Scale taken from the magnitudes of the individual terms, for identities
    /// whose sides are sums with cancellation.
    pub fn with_scale(lhs: f64, rhs: f64, scale: f64) -> Self {
        Residual { lhs, rhs, scale }
    }

    pub fn abs(&self) -> f64 {
        (self.lhs - self.rhs).abs()
    }

    /// |lhs − rhs| / scale (the absolute gap when the scale is zero).
    pub fn rel(&self) -> f64 {
        if self.scale > 0.0 {
            self.abs() / self.scale
        } else {
            self.abs()
        }
    }

    /// An absolute quantity expressed on the same scale as [`Residual::rel`].
    pub fn relative(&self, x: f64) -> f64 {
        if self.scale > 0.0 {
            x / self.scale
        } else {
            x
        }
    }
}
