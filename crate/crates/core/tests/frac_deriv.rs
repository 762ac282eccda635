use proptest::prelude::*;
use xspec_core::beta_ext::{beta_mellin_closed, ExtParams};
use xspec_core::frac::*;
use xspec_core::hyp::{appell_f1, f_mu_series, Appell1Args, GaussHypArgs, GaussSeries, Path};
use xspec_core::special::{gamma_fn, pochhammer};
use xspec_core::Tolerance;

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn std_params() -> ExtParams {
    ExtParams::new(0.5, 1.0, 0.5, 0.5, 1.0)
}

#[test]
fn power_two_paths() {
    let p = ExtParams::new(0.5, 1.0, 1.0, 0.5, 1.0);
    let d = frac_deriv_direct(|t| Ok(t * t), 1.0, -0.5, &p)
        .unwrap()
        .value;
    let c = frac_deriv_power(2.0, 1.0, -0.5, &p).unwrap();
    assert!(rel(d, c) < 1e-7, "{d} vs {c}");
    for (beta, z, delta) in [(0.0, 0.7, -0.3), (1.5, 2.0, -1.2), (-0.5, 0.5, -0.6)] {
        let d = frac_deriv_direct(|t| Ok(t.powf(beta)), z, delta, &std_params())
            .unwrap()
            .value;
        let c = frac_deriv_power(beta, z, delta, &std_params()).unwrap();
        assert!(rel(d, c) < 1e-7, "beta={beta}: {d} vs {c}");
    }
}

#[test]
fn power_scales_with_z() {
    let p = std_params();
    let a = frac_deriv_direct(|t| Ok(t * t), 0.6, -0.5, &p)
        .unwrap()
        .value;
    let b = frac_deriv_direct(|t| Ok(t * t), 1.2, -0.5, &p)
        .unwrap()
        .value;
    assert!(rel(b / a, 2f64.powf(2.5)) < 1e-7);
}

#[test]
fn binomial_two_paths() {
    let d = frac_deriv_direct(|t| Ok((1.0 - t).powf(-0.7)), 0.4, -0.8, &std_params())
        .unwrap()
        .value;
    let c = frac_deriv_binomial(0.7, 0.4, -0.8, &std_params()).unwrap();
    assert!(rel(d, c) < 1e-6, "{d} vs {c}");
}

#[test]
fn binomial_at_small_exponent_is_power_zero() {
    let c = frac_deriv_binomial(1e-12, 0.4, -0.8, &std_params()).unwrap();
    let p0 = frac_deriv_power(0.0, 0.4, -0.8, &std_params()).unwrap();
    assert!(rel(c, p0) < 1e-10);
}

#[test]
fn power_binomial_two_paths() {
    for (beta, delta, alpha, z) in [
        (0.5, 1.2, 0.7, 0.3),
        (0.2, 0.9, 1.5, 0.6),
        (1.0, 2.5, -0.4, 0.5),
    ] {
        let d = frac_deriv_direct(
            |t| Ok(t.powf(beta - 1.0) * (1.0 - t).powf(-alpha)),
            z,
            beta - delta,
            &std_params(),
        )
        .unwrap()
        .value;
        let c = frac_deriv_power_binomial(alpha, beta, delta, z, &std_params()).unwrap();
        assert!(rel(d, c) < 1e-6, "{d} vs {c}");
    }
}

#[test]
fn power_binomial_without_binomial_is_power() {
    let c = frac_deriv_power_binomial(0.0, 0.5, 1.2, 0.3, &std_params()).unwrap();
    let p = frac_deriv_power(-0.5, 0.3, 0.5 - 1.2, &std_params()).unwrap();
    assert!(rel(c, p) < 1e-12);
}

#[test]
fn two_binomials_two_paths_and_reductions() {
    let p = std_params();
    for (a, b, alpha, gamma, beta, delta, z) in [
        (0.5, -0.3, 0.6, 0.4, 0.5, 1.5, 0.5),
        (0.9, 0.4, 1.0, 0.5, 0.3, 1.1, 0.7),
        (-0.5, 0.8, 0.3, 1.2, 0.0, 0.8, 0.4),
    ] {
        let d = frac_deriv_direct(
            |t| Ok(t.powf(beta - 1.0) * (1.0 - a * t).powf(-alpha) * (1.0 - b * t).powf(-gamma)),
            z,
            beta - delta,
            &p,
        )
        .unwrap()
        .value;
        let c = frac_deriv_two_binomials(alpha, gamma, a, b, beta, delta, z, &p).unwrap();
        assert!(rel(d, c) < 1e-6, "{d} vs {c}");
    }
    let b0 = frac_deriv_two_binomials(0.6, 0.4, 1.0, 0.0, 0.5, 1.5, 0.5, &p).unwrap();
    let t6 = frac_deriv_power_binomial(0.6, 0.5, 1.5, 0.5, &p).unwrap();
    assert!(rel(b0, t6) < 1e-12);
    let same = frac_deriv_two_binomials(0.6, 0.4, 1.0, 1.0, 0.5, 1.5, 0.5, &p).unwrap();
    let merged = frac_deriv_power_binomial(1.0, 0.5, 1.5, 0.5, &p).unwrap();
    assert!(rel(same, merged) < 1e-7, "{same} vs {merged}");
}

#[test]
fn three_binomials_two_paths_and_reductions() {
    let p = std_params();
    for (a, b, c, beta, delta, z) in [
        (0.4, 0.3, -0.2, 0.5, 1.5, 0.5),
        (0.8, -0.6, 0.5, 0.2, 1.0, 0.6),
        (0.3, 0.3, 0.9, 0.0, 0.7, 0.4),
    ] {
        let (alpha, gamma, tau) = (0.5, 0.5, 0.5);
        let d = frac_deriv_direct(
            |t| {
                Ok(t.powf(beta - 1.0)
                    * (1.0 - a * t).powf(-alpha)
                    * (1.0 - b * t).powf(-gamma)
                    * (1.0 - c * t).powf(-tau))
            },
            z,
            beta - delta,
            &p,
        )
        .unwrap()
        .value;
        let v = frac_deriv_three_binomials(alpha, gamma, tau, a, b, c, beta, delta, z, &p).unwrap();
        assert!(rel(d, v) < 1e-6, "{d} vs {v}");
    }
    let t7 = frac_deriv_two_binomials(0.5, 0.5, 0.4, 0.3, 0.5, 1.5, 0.5, &p).unwrap();
    let c0 = frac_deriv_three_binomials(0.5, 0.5, 0.5, 0.4, 0.3, 0.0, 0.5, 1.5, 0.5, &p).unwrap();
    let tau0 =
        frac_deriv_three_binomials(0.5, 0.5, 0.0, 0.4, 0.3, -0.2, 0.5, 1.5, 0.5, &p).unwrap();
    assert!(rel(c0, t7) < 1e-12);
    assert!(rel(tau0, t7) < 1e-12);
}

#[test]
fn hyp_product_two_paths() {
    let p = std_params();
    for (x, z, alpha, gamma, tau, beta, delta) in [
        (0.2, 0.3, 0.8, 0.6, 1.4, 0.5, 1.3),
        (-0.3, 0.4, 0.5, 1.0, 2.0, 0.2, 1.0),
        (0.1, 0.5, 1.2, 0.5, 1.5, 0.7, 1.6),
    ] {
        let inner = GaussSeries::new(alpha, gamma, tau, p, &Tolerance::rel(1e-12)).unwrap();
        let d = frac_deriv_direct(
            |t| Ok(t.powf(beta - 1.0) * (1.0 - t).powf(-alpha) * inner.eval(x / (1.0 - t))?.value),
            z,
            beta - delta,
            &p,
        )
        .unwrap()
        .value;
        let c = frac_deriv_hyp_product(alpha, gamma, tau, beta, delta, x, z, &p).unwrap();
        assert!(rel(d, c) < 1e-5, "{d} vs {c}");
    }
}

#[test]
fn hyp_product_at_zero_x() {
    let p = std_params();
    let c = frac_deriv_hyp_product(0.8, 0.6, 1.4, 0.5, 1.3, 0.0, 0.3, &p).unwrap();
    let ratio = f_mu_series(&GaussHypArgs::new(0.8, 0.6, 1.4, 0.0, p))
        .unwrap()
        .value;
    let t6 = frac_deriv_power_binomial(0.8, 0.5, 1.3, 0.3, &p).unwrap();
    assert!(rel(c, t6 * ratio) < 1e-10);
    assert_eq!(
        frac_deriv_hyp_product(0.8, 0.6, 1.4, 0.5, 1.3, 0.2, 0.0, &p).unwrap(),
        0.0
    );
}

#[test]
fn theorem_slice_uses_appell() {
    let p = std_params();
    let f1 = appell_f1(
        &Appell1Args {
            a: 1.0,
            b: 0.6,
            c: 0.4,
            d: 2.5,
            x: 0.5,
            y: 0.5,
            params: p,
        },
        Path::Series,
    )
    .unwrap()
    .value;
    let f = f_mu_series(&GaussHypArgs::new(1.0, 1.0, 2.5, 0.5, p))
        .unwrap()
        .value;
    assert!(rel(f1, f) < 1e-8);
}

#[test]
fn polynomial_termwise() {
    let p = std_params();
    for coeffs in [
        vec![1.0],
        vec![0.5, -1.0, 2.0],
        vec![1.0, 0.3, -0.7, 0.2, 1.1, -0.4, 0.9],
    ] {
        let r = frac_polynomial_residual(&coeffs, 0.8, -0.6, &p).unwrap();
        assert!(r.rel() < 1e-8, "{coeffs:?}: {r:?}");
    }
}

#[test]
fn classical_against_quadrature() {
    let tol = Tolerance::rel(1e-13);
    for (beta, delta, z) in [(1.0, -0.5, 1.0), (0.3, -1.7, 2.5), (2.2, -0.25, 0.4)] {
        let d = classical_rl_direct(|t| Ok(t.powf(beta)), z, delta, &tol).unwrap();
        let c = classical_rl_power(beta, delta, z).unwrap();
        assert!(rel(d, c) < 1e-9, "{d} vs {c}");
    }
}

#[test]
fn mellin_power_consistent_with_beta_transform() {
    let p = ExtParams::new(0.3, 1.0, 1.0, 0.5, 1.0);
    let (beta, delta, z, s) = (1.0, -0.5, 1.0, 1.1);
    let closed = mellin_fracderiv_power_closed(beta, delta, z, s, &p).unwrap();
    let via = z.powf(beta - delta) / gamma_fn(-delta).unwrap()
        * beta_mellin_closed(beta + 1.5, 0.5 - delta, s, &p).unwrap();
    assert!(rel(closed, via) < 1e-13);
}

#[test]
fn mellin_power_against_quadrature() {
    let tol = Tolerance::rel(1e-7);
    for (beta, delta, z, s, p) in [
        (1.0, -0.5, 1.0, 1.1, ExtParams::new(0.3, 1.0, 1.0, 0.5, 1.0)),
        (0.5, -1.0, 0.7, 1.5, std_params()),
        (
            2.0,
            -0.3,
            1.5,
            0.9,
            ExtParams::new(0.0, 1.0, 0.8, -0.5, 1.5),
        ),
    ] {
        let closed = mellin_fracderiv_power_closed(beta, delta, z, s, &p).unwrap();
        let num = mellin_fracderiv_power_numeric(beta, delta, z, s, &p, &tol)
            .unwrap()
            .value;
        assert!(rel(closed, num) < 1e-5, "{closed} vs {num}");
    }
}

#[test]
fn mellin_power_strip() {
    let p = ExtParams::new(0.3, 1.0, 1.0, 0.5, 1.0);
    let e = mellin_fracderiv_power_closed(1.0, -0.5, 1.0, 0.3, &p).unwrap_err();
    assert!(e.to_string().contains("s > max"));
}

#[test]
fn mellin_binomial_at_origin_and_termwise() {
    let p = ExtParams::new(0.0, 1.0, 1.0, 0.5, 1.0);
    let (beta, delta, s) = (0.5, -0.5, 1.2);
    // (1−z)^{−β} at z → 0 leaves the constant term, the power case with exponent 0.
    let z = 1e-300;
    let b = mellin_fracderiv_binomial_closed(beta, delta, z, s, &p).unwrap();
    let pw = mellin_fracderiv_power_closed(0.0, delta, z, s, &p).unwrap();
    assert!(rel(b, pw) < 1e-12);

    let z = 0.3;
    let closed = mellin_fracderiv_binomial_closed(beta, delta, z, s, &p).unwrap();
    let mut sum = 0.0;
    for n in 0..80u32 {
        sum += pochhammer(beta, n) / gamma_fn(n as f64 + 1.0).unwrap()
            * mellin_fracderiv_power_closed(n as f64, delta, z, s, &p).unwrap();
    }
    assert!(rel(closed, sum) < 1e-12, "{closed} vs {sum}");
}

#[test]
fn mellin_binomial_against_quadrature() {
    let tol = Tolerance::rel(1e-7);
    for (beta, delta, z, s, p) in [
        (0.5, -0.5, 0.3, 1.2, ExtParams::new(0.0, 1.0, 1.0, 0.5, 1.0)),
        (1.0, -0.8, 0.5, 1.0, std_params()),
        (
            0.3,
            -1.2,
            0.2,
            1.4,
            ExtParams::new(0.2, 1.0, 0.6, -0.3, 1.0),
        ),
    ] {
        let closed = mellin_fracderiv_binomial_closed(beta, delta, z, s, &p).unwrap();
        let num = mellin_fracderiv_binomial_numeric(beta, delta, z, s, &p, &tol)
            .unwrap()
            .value;
        assert!(rel(closed, num) < 1e-5, "{closed} vs {num}");
    }
}

#[test]
fn unnormalized_forms_differ_by_gamma() {
    let p = std_params();
    let a = mellin_fracderiv_power_unnormalized(1.0, -0.5, 1.0, 1.1, &p).unwrap();
    let b = mellin_fracderiv_power_closed(1.0, -0.5, 1.0, 1.1, &p).unwrap();
    assert!(rel(a / b, gamma_fn(0.5).unwrap()) < 1e-14);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    #[test]
    fn direct_path_is_linear(
        c0 in -2.0f64..2.0, c1 in -2.0f64..2.0, c2 in -2.0f64..2.0, k in -3.0f64..3.0,
        z in 0.2f64..2.0, delta in -2.0f64..-0.1,
    ) {
        let p = std_params();
        let f = |t: f64| Ok(c0 + c1 * t);
        let g = |t: f64| Ok(c2 * t * t - 0.5);
        let fg = |t: f64| Ok(c0 + c1 * t + k * (c2 * t * t - 0.5));
        let a = frac_deriv_direct(f, z, delta, &p).unwrap().value;
        let b = frac_deriv_direct(g, z, delta, &p).unwrap().value;
        let ab = frac_deriv_direct(fg, z, delta, &p).unwrap().value;
        let scale = a.abs() + k.abs() * b.abs();
        prop_assert!((ab - a - k * b).abs() <= 1e-9 * scale.max(1e-300));
    }
}
