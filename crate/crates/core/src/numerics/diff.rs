//! Central finite differences with Richardson-type stencils.

use crate::error::Result;

/// Default step: `max(1e-5, 1e-5·|x|)` for first derivatives and
/// `max(1e-3, 1e-3·|x|)` for second derivatives, where the 1/h² round-off
/// amplification would otherwise dominate.
pub fn default_step(x: f64, order: u32) -> f64 {
    let base = if order >= 2 { 1e-3 } else { 1e-5 };
    base * x.abs().max(1.0)
}

/// Derivative of `f` at `x`. Order 1 uses the four-point stencil
/// `(8[f(x+h)−f(x−h)] − [f(x+2h)−f(x−2h)]) / 12h` (Richardson-extrapolated
/// central difference); order 2 uses the matching five-point stencil.
/// `h = None` selects [`default_step`].
pub fn finite_difference<F>(mut f: F, x: f64, order: u32, h: Option<f64>) -> Result<f64>
where
    F: FnMut(f64) -> Result<f64>,
{
    let h = h.unwrap_or_else(|| default_step(x, order));
    let (fp1, fm1) = (f(x + h)?, f(x - h)?);
    let (fp2, fm2) = (f(x + 2.0 * h)?, f(x - 2.0 * h)?);
    match order {
        1 => Ok((8.0 * (fp1 - fm1) - (fp2 - fm2)) / (12.0 * h)),
        2 => {
            let f0 = f(x)?;
            Ok((16.0 * (fp1 + fm1) - (fp2 + fm2) - 30.0 * f0) / (12.0 * h * h))
        }
        _ => Err(crate::error::Error::Domain(format!(
            "finite_difference order must be 1 or 2, got {order}"
        ))),
    }
}
