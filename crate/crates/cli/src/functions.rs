//! The functions reachable from `eval`, `table` and `mellin`, with their
//! parameter lists and defaults.

use std::collections::BTreeMap;

use clap::ValueEnum;

use xspec_core::beta_ext::{
    beta_ext_with, beta_mellin_closed, beta_mellin_numeric, beta_tol, rk_mellin_closed,
    rk_mellin_numeric, BetaExtArgs, ExtParams,
};
use xspec_core::frac::{
    frac_deriv_direct_with, mellin_fracderiv_binomial_closed, mellin_fracderiv_binomial_numeric,
    mellin_fracderiv_power_closed, mellin_fracderiv_power_numeric,
};
use xspec_core::gamma_ext::{gamma_tol, lower_gamma_ext_with, upper_gamma_ext_with, GammaExtArgs};
use xspec_core::hyp::{
    appell_f1, appell_f2, f_mu, f_mu_integral_with, f_mu_series, lauricella_fd3,
    phi_mu_integral_with, phi_mu_series, Appell1Args, Appell2Args, ConfluentArgs, GaussHypArgs,
    LauricellaArgs, Path,
};
use xspec_core::rk::{rk_integral_with, RkArgs};
use xspec_core::{QuadResult, Result, Tolerance};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum Function {
    Rk,
    GammaLower,
    GammaUpper,
    Beta,
    FMu,
    PhiMu,
    AppellF1,
    AppellF2,
    LauricellaFd3,
    FracPower,
    FracBinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
pub enum MellinFunction {
    Rk,
    Beta,
    FracPower,
    FracBinomial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PathChoice {
    Series,
    Integral,
}

impl From<PathChoice> for Path {
    fn from(p: PathChoice) -> Path {
        match p {
            PathChoice::Series => Path::Series,
            PathChoice::Integral => Path::Integral,
        }
    }
}

/// A parameter name and its default, if any.
pub type Param = (&'static str, Option<f64>);

const Q: Param = ("q", Some(1.0));
const LAMBDA: Param = ("lambda", Some(0.0));
const MU: Param = ("mu", Some(0.0));
const P: Param = ("p", None);
const M: Param = ("m", Some(1.0));

pub struct Values(pub BTreeMap<&'static str, f64>);

impl Values {
    pub fn get(&self, name: &str) -> f64 {
        self.0[name]
    }

    fn params(&self) -> ExtParams {
        ExtParams::new(
            self.get("mu"),
            self.get("p"),
            self.get("q"),
            self.get("lambda"),
            self.get("m"),
        )
    }

    /// Mellin transforms run over p, so p takes any valid placeholder.
    fn params_without_p(&self) -> ExtParams {
        ExtParams::new(
            self.get("mu"),
            1.0,
            self.get("q"),
            self.get("lambda"),
            self.get("m"),
        )
    }
}

/// Value, error estimate and evaluation count of one evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Outcome {
    pub value: f64,
    pub abs_err: f64,
    pub evals: usize,
}

impl From<QuadResult> for Outcome {
    fn from(r: QuadResult) -> Self {
        Outcome {
            value: r.value,
            abs_err: r.abs_error_estimate,
            evals: r.evaluations,
        }
    }
}

fn tol_or(tol: Option<f64>, default: Tolerance) -> Tolerance {
    tol.map(Tolerance::rel).unwrap_or(default)
}

impl Function {
    pub fn name(self) -> &'static str {
        match self {
            Function::Rk => "rk",
            Function::GammaLower => "gamma_lower",
            Function::GammaUpper => "gamma_upper",
            Function::Beta => "beta",
            Function::FMu => "f_mu",
            Function::PhiMu => "phi_mu",
            Function::AppellF1 => "appell_f1",
            Function::AppellF2 => "appell_f2",
            Function::LauricellaFd3 => "lauricella_fd3",
            Function::FracPower => "frac_power",
            Function::FracBinomial => "frac_binomial",
        }
    }

    pub fn params(self) -> &'static [Param] {
        match self {
            Function::Rk => &[("z", None), ("alpha", None), Q, LAMBDA],
            Function::GammaLower | Function::GammaUpper => {
                &[("alpha", None), ("x", None), MU, P, Q, LAMBDA]
            }
            Function::Beta => &[("x", None), ("y", None), MU, P, Q, LAMBDA, M],
            Function::FMu => &[
                ("a", None),
                ("b", None),
                ("c", None),
                ("z", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
            Function::PhiMu => &[("b", None), ("c", None), ("z", None), MU, P, Q, LAMBDA, M],
            Function::AppellF1 => &[
                ("a", None),
                ("b", None),
                ("c", None),
                ("d", None),
                ("x", None),
                ("y", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
            Function::AppellF2 => &[
                ("a", None),
                ("b", None),
                ("c", None),
                ("d", None),
                ("e", None),
                ("x", None),
                ("y", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
            Function::LauricellaFd3 => &[
                ("a", None),
                ("b", None),
                ("c", None),
                ("d", None),
                ("e", None),
                ("x", None),
                ("y", None),
                ("z", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
            Function::FracPower => &[
                ("beta", None),
                ("z", None),
                ("delta", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
            Function::FracBinomial => &[
                ("alpha", None),
                ("z", None),
                ("delta", None),
                MU,
                P,
                Q,
                LAMBDA,
                M,
            ],
        }
    }

    pub fn eval(self, v: &Values, tol: Option<f64>, path: Option<PathChoice>) -> Result<Outcome> {
        let g = |k: &str| v.get(k);
        match self {
            Function::Rk => {
                let a = RkArgs::new(g("z"), g("alpha"), g("q"), g("lambda"));
                a.validate()?;
                rk_integral_with(&a, &tol_or(tol, Tolerance::default())).map(Outcome::from)
            }
            Function::GammaLower | Function::GammaUpper => {
                let a = GammaExtArgs {
                    alpha: g("alpha"),
                    x: g("x"),
                    mu: g("mu"),
                    p: g("p"),
                    q: g("q"),
                    lambda: g("lambda"),
                };
                let t = tol_or(tol, gamma_tol());
                let r = if self == Function::GammaLower {
                    lower_gamma_ext_with(&a, &t)
                } else {
                    upper_gamma_ext_with(&a, &t)
                };
                r.map(Outcome::from)
            }
            Function::Beta => beta_ext_with(
                &BetaExtArgs::new(g("x"), g("y"), v.params()),
                &tol_or(tol, beta_tol()),
            )
            .map(Outcome::from),
            Function::FMu => {
                let a = GaussHypArgs::new(g("a"), g("b"), g("c"), g("z"), v.params());
                match path {
                    None if tol.is_none() => f_mu(&a).map(Outcome::from),
                    Some(PathChoice::Series) => f_mu_series(&a).map(|r| Outcome {
                        value: r.value,
                        abs_err: r.last_term,
                        evals: r.terms_used,
                    }),
                    _ => f_mu_integral_with(&a, &tol_or(tol, beta_tol())).map(Outcome::from),
                }
            }
            Function::PhiMu => {
                let a = ConfluentArgs::new(g("b"), g("c"), g("z"), v.params());
                match path {
                    Some(PathChoice::Series) => phi_mu_series(&a).map(|r| Outcome {
                        value: r.value,
                        abs_err: r.last_term,
                        evals: r.terms_used,
                    }),
                    _ => phi_mu_integral_with(&a, &tol_or(tol, beta_tol())).map(Outcome::from),
                }
            }
            Function::AppellF1 => {
                let a = Appell1Args {
                    a: g("a"),
                    b: g("b"),
                    c: g("c"),
                    d: g("d"),
                    x: g("x"),
                    y: g("y"),
                    params: v.params(),
                };
                appell_f1(&a, path.unwrap_or(PathChoice::Integral).into()).map(Outcome::from)
            }
            Function::AppellF2 => {
                let a = Appell2Args {
                    a: g("a"),
                    b: g("b"),
                    c: g("c"),
                    d: g("d"),
                    e: g("e"),
                    x: g("x"),
                    y: g("y"),
                    params: v.params(),
                };
                appell_f2(&a, path.unwrap_or(PathChoice::Series).into()).map(Outcome::from)
            }
            Function::LauricellaFd3 => {
                let a = LauricellaArgs {
                    a: g("a"),
                    b: g("b"),
                    c: g("c"),
                    d: g("d"),
                    e: g("e"),
                    x: g("x"),
                    y: g("y"),
                    z: g("z"),
                    params: v.params(),
                };
                lauricella_fd3(&a, path.unwrap_or(PathChoice::Integral).into()).map(Outcome::from)
            }
            Function::FracPower => {
                let params = v.params();
                params.validate()?;
                let beta = g("beta");
                frac_deriv_direct_with(
                    |t| Ok(t.powf(beta)),
                    g("z"),
                    g("delta"),
                    &params,
                    &tol_or(tol, beta_tol()),
                )
                .map(Outcome::from)
            }
            Function::FracBinomial => {
                let params = v.params();
                params.validate()?;
                let alpha = g("alpha");
                frac_deriv_direct_with(
                    |t| Ok((1.0 - t).powf(-alpha)),
                    g("z"),
                    g("delta"),
                    &params,
                    &tol_or(tol, beta_tol()),
                )
                .map(Outcome::from)
            }
        }
    }
}

/// Closed form against numerical Mellin integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MellinOutcome {
    pub closed: f64,
    pub numeric: Outcome,
}

impl MellinFunction {
    pub fn name(self) -> &'static str {
        match self {
            MellinFunction::Rk => "rk",
            MellinFunction::Beta => "beta",
            MellinFunction::FracPower => "frac_power",
            MellinFunction::FracBinomial => "frac_binomial",
        }
    }

    pub fn params(self) -> &'static [Param] {
        match self {
            MellinFunction::Rk => &[("s", None), ("alpha", None), Q, LAMBDA],
            MellinFunction::Beta => &[("s", None), ("x", None), ("y", None), MU, Q, LAMBDA, M],
            MellinFunction::FracPower => &[
                ("s", None),
                ("beta", None),
                ("z", None),
                ("delta", None),
                MU,
                Q,
                LAMBDA,
                M,
            ],
            MellinFunction::FracBinomial => &[
                ("s", None),
                ("alpha", None),
                ("z", None),
                ("delta", None),
                MU,
                Q,
                LAMBDA,
                M,
            ],
        }
    }

    pub fn eval(self, v: &Values, tol: Option<f64>) -> Result<MellinOutcome> {
        let g = |k: &str| v.get(k);
        let t = Tolerance::rel(tol.unwrap_or(1e-8));
        let (closed, numeric) = match self {
            MellinFunction::Rk => {
                let (s, a, q, l) = (g("s"), g("alpha"), g("q"), g("lambda"));
                (
                    rk_mellin_closed(s, a, q, l)?,
                    rk_mellin_numeric(s, a, q, l, &t)?,
                )
            }
            MellinFunction::Beta => {
                let p = v.params_without_p();
                (
                    beta_mellin_closed(g("x"), g("y"), g("s"), &p)?,
                    beta_mellin_numeric(g("x"), g("y"), g("s"), &p, &t)?,
                )
            }
            MellinFunction::FracPower => {
                let p = v.params_without_p();
                let (b, d, z, s) = (g("beta"), g("delta"), g("z"), g("s"));
                (
                    mellin_fracderiv_power_closed(b, d, z, s, &p)?,
                    mellin_fracderiv_power_numeric(b, d, z, s, &p, &t)?,
                )
            }
            MellinFunction::FracBinomial => {
                let p = v.params_without_p();
                let (a, d, z, s) = (g("alpha"), g("delta"), g("z"), g("s"));
                (
                    mellin_fracderiv_binomial_closed(a, d, z, s, &p)?,
                    mellin_fracderiv_binomial_numeric(a, d, z, s, &p, &t)?,
                )
            }
        };
        Ok(MellinOutcome {
            closed,
            numeric: numeric.into(),
        })
    }
}
