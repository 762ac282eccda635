use xspec_core::gamma_ext::*;
use xspec_core::Tolerance;
use xspec_oracle::{oracle_integrate, OracleConfig, Upper};

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

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

#[test]
fn lower_matches_oracle_for_chaudhry_case() {
    let o = oracle_integrate(
        |t| (-t - 1.0 / t).exp(),
        0.0,
        Upper::Finite(0.5),
        &OracleConfig::default(),
    )
    .unwrap();
    let v = lower_gamma_ext(&args(1.0, 0.5, 0.0, 1.0, 1.0, 0.0))
        .unwrap()
        .value;
    assert!(rel(v, o) < 1e-10, "{v} vs {o}");
}

#[test]
fn upper_matches_oracle_for_chaudhry_case() {
    let shifted = oracle_integrate(
        |u| (1.0 + u) * (-(1.0 + u) - 0.5 / (1.0 + u)).exp(),
        0.0,
        Upper::Infinity,
        &OracleConfig::default(),
    )
    .unwrap();
    let v = upper_gamma_ext(&args(2.0, 1.0, 0.0, 0.5, 1.0, 0.0))
        .unwrap()
        .value;
    assert!(rel(v, shifted) < 1e-10, "{v} vs {shifted}");
}

#[test]
fn lower_plus_upper_is_total() {
    let a = args(0.8, 1.0, 0.5, 1.0, 0.5, 0.5);
    let tol = gamma_tol();
    let lo = lower_gamma_ext_with(&a, &tol).unwrap().value;
    let up = upper_gamma_ext_with(&a, &tol).unwrap().value;
    let tot = total_gamma_ext_with(&a, &tol).unwrap().value;
    assert!(rel(lo + up, tot) < 1e-8);
}

#[test]
fn recurrence_examples() {
    for a in [
        args(1.0, 1.0, 1.0, 1.0, 1.0, 0.0),
        args(0.5, 2.0, 1.5, 0.5, 0.5, 0.5),
        args(1.0, 1.0, 1.0, 1.0, 1.0, -1.0),
    ] {
        let r = gamma_recurrence_residual(&a).unwrap();
        assert!(r.rel() < 1e-8, "{a:?}: {r:?}");
    }
}

#[test]
fn lambda_derivative_examples() {
    let r = lambda_derivative_residual(1.0, 1.0, 1.0, 1.0, 0.0).unwrap();
    assert!(r.rel() < 1e-7, "{r:?}");
    for (alpha, x, mu, p, lambda) in [(0.5, 1.0, 1.0, 1.0, 0.5), (1.0, 0.5, 1.5, 2.0, -0.5)] {
        let r = lambda_derivative_residual(alpha, x, mu, p, lambda).unwrap();
        assert!(r.rel() < 1e-6, "{r:?}");
    }
}

#[test]
fn laplace_examples() {
    let r = laplace_pair_residual(0.7, 0.8, 0.5, 1.0, 0.5, 0.3, 1.0).unwrap();
    assert!(r.rel() < 1e-8, "{r:?}");
    let r = laplace_pair_residual(1.0, 0.5, 0.5, 1.0, 1.0, 0.5, 2.0).unwrap();
    assert!(r.rel() < 1e-7, "{r:?}");
    let r = laplace_pair_residual(0.5, 1.0, 0.0, 1.0, 0.5, -0.5, 0.5).unwrap();
    assert!(r.rel() < 1e-7, "{r:?}");
}

#[test]
fn parametric_diff_examples() {
    for a in [
        args(1.0, 1.0, 1.0, 1.0, 1.0, 0.0),
        args(2.0, 0.5, 2.0, 0.5, 1.0, 0.5),
        args(1.0, 1.0, 1.0, 1.0, 0.25, -1.0),
    ] {
        let r = parametric_diff_residual(&a).unwrap();
        assert!(r.rel() < 1e-6, "{a:?}: {r:?}");
    }
}

#[test]
fn monotone_in_x_and_positive() {
    let mut prev_lo = 0.0;
    let mut prev_up = f64::INFINITY;
    for &x in &[0.2, 0.5, 1.0, 2.0, 4.0] {
        let a = args(1.2, x, 0.5, 0.7, 0.5, 0.5);
        let lo = lower_gamma_ext(&a).unwrap().value;
        let up = upper_gamma_ext(&a).unwrap().value;
        assert!(lo > prev_lo && up < prev_up && up > 0.0);
        prev_lo = lo;
        prev_up = up;
    }
}

#[test]
fn decomposition_as_stated_does_not_converge() {
    let e = decomposition_rhs(0.3, 0.4, 1.0, 1.0, 0.0).unwrap_err();
    assert!(matches!(e, xspec_core::Error::NonConvergence { .. }), "{e}");
}

#[test]
fn decomposition_common_cutoff_approaches_total() {
    let a = args(0.3, 1.0, 0.4, 1.0, 1.0, 0.0);
    let total = total_gamma_ext_with(&a, &gamma_tol()).unwrap().value;
    assert!(rel(total, 0.295_777_848_131_998) < 1e-12, "{total}");
    let tol = Tolerance::rel(1e-13);
    let mut last = f64::INFINITY;
    for cutoff in [0.1, 0.01, 0.002] {
        let r = decomposition_rhs_truncated(0.3, 0.4, 1.0, 1.0, 0.0, cutoff, &tol).unwrap();
        let e = rel(r, total);
        assert!(e < last, "cutoff {cutoff}: {e}");
        last = e;
    }
    assert!(last < 1e-6, "{last}");
}
