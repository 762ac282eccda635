use proptest::prelude::*;
use xspec_core::beta_ext::ExtParams;
use xspec_core::hyp::hyp_tol;
use xspec_core::identities::*;

const EXPECTED: [&str; 37] = [
    "rk-reduction",
    "rk-two-path",
    "rk-mellin",
    "beta-macdonald-reduction",
    "beta-chaudhry-reduction",
    "beta-functional",
    "beta-summation",
    "beta-series-one-minus-y",
    "beta-series-plain",
    "beta-mellin",
    "gamma-additivity",
    "gamma-recurrence",
    "gamma-lambda-derivative",
    "gamma-laplace",
    "gamma-parametric-diff",
    "gamma-decomposition",
    "hyp-f-two-path",
    "hyp-phi-two-path",
    "hyp-f-derivative",
    "hyp-f-pfaff",
    "hyp-phi-kummer",
    "appell-f1-two-path",
    "appell-f2-two-path",
    "lauricella-fd3-two-path",
    "frac-power",
    "frac-polynomial-termwise",
    "frac-binomial",
    "frac-power-binomial",
    "frac-two-binomials",
    "frac-three-binomials",
    "frac-hyp-product",
    "frac-mellin-power",
    "frac-mellin-binomial",
    "classical-rl",
    "genfun-linear",
    "genfun-appell",
    "genfun-bilinear",
];

fn std_params() -> ExtParams {
    ExtParams::new(0.5, 1.0, 0.5, 0.5, 1.0)
}

#[test]
fn registry_lists_every_identity_exactly_once() {
    let names: Vec<&str> = registry().iter().map(|c| c.name).collect();
    assert_eq!(names, EXPECTED);
    assert!(names.len() >= 20);
}

#[test]
fn selection_by_all_suite_and_name() {
    assert_eq!(select("all").unwrap().len(), EXPECTED.len());
    let gamma: Vec<&str> = select("gamma").unwrap().iter().map(|c| c.name).collect();
    assert_eq!(gamma.len(), 6);
    assert!(gamma.iter().all(|n| n.starts_with("gamma-")));
    assert_eq!(select("beta-functional").unwrap().len(), 1);
    assert!(select("no-such-suite").is_none());
    assert!(run_checks(&[], None).is_empty());
}

#[test]
fn cheap_checks_are_deterministic_and_pass() {
    let picked: Vec<&Check> = [
        "rk-reduction",
        "beta-functional",
        "classical-rl",
        "frac-power",
    ]
    .iter()
    .map(|n| select(n).unwrap()[0])
    .collect();
    let first = run_checks(&picked, None);
    let second = run_checks(&picked, None);
    assert_eq!(first, second);
    for r in &first {
        assert_eq!(r.verdict, Verdict::Pass, "{}: {}", r.name, r.notes);
        assert_eq!(r.residuals.len(), r.grid_size());
        assert_eq!(r.bounds.len(), r.grid_size());
        assert!(r.max_residual.unwrap() <= r.tolerance);
    }
}

#[test]
fn report_record_mirrors_the_report() {
    let r = run_check("rk-reduction", Some(1e-10)).unwrap();
    assert_eq!(r.tolerance, 1e-10);
    assert_eq!(r.grid_size(), 15);
    let rec = r.record();
    assert_eq!(rec.name, "rk-reduction");
    assert_eq!(rec.grid_size, 15);
    assert_eq!(rec.max_residual, r.max_residual);
    assert_eq!(rec.verdict, Verdict::Pass);
}

#[test]
fn tightened_tolerance_turns_a_pass_into_a_fail() {
    let r = run_check("rk-two-path", Some(1e-16)).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn unit_coefficient_summation_is_a_confirmed_erratum() {
    let r = run_check("beta-summation", None).unwrap();
    assert_eq!(r.verdict, Verdict::SuspectedErratum, "{}", r.notes);
    let binomial = r.variants.iter().find(|v| v.name == "binomial").unwrap();
    assert!(binomial.passed);
    assert!(r.max_residual.unwrap() > 0.1);
    assert!(r.notes.contains("reproduced by oracle"));
}

#[test]
fn appell_generating_relation_names_the_passing_variant() {
    let r = run_check("genfun-appell", None).unwrap();
    assert!(matches!(
        r.verdict,
        Verdict::Pass | Verdict::SuspectedErratum
    ));
    assert_eq!(r.variants.len(), 2);
    let passing: Vec<&str> = r
        .variants
        .iter()
        .filter(|v| v.passed)
        .map(|v| v.name.as_str())
        .collect();
    assert_eq!(passing.len(), 1);
    assert!(
        r.notes
            .contains(&format!("passing variant: {}", passing[0])),
        "{}",
        r.notes
    );
}

#[test]
fn linear_relation_at_t_zero_is_a_single_term() {
    let g = LinearGenerating {
        beta: 1.0,
        alpha: 0.5,
        gamma: 2.0,
        z: 0.2,
        t: 0.0,
        terms: 30,
        params: std_params(),
    };
    let r = linear_generating_residual(&g, &hyp_tol()).unwrap();
    assert!(r.residual.rel() < 1e-14, "{:?}", r);
    assert_eq!(r.last_term, 0.0);
}

fn bilinear(u: f64, t: f64) -> BilinearGenerating {
    BilinearGenerating {
        beta: 0.8,
        alpha: 0.3,
        gamma: 1.8,
        upsilon: 0.2,
        xi: 1.5,
        z: 0.15,
        u,
        t,
        terms: 20,
        params: std_params(),
    }
}

#[test]
fn bilinear_relation_within_truncation_bound() {
    for (u, t) in [(0.4, 0.2), (-0.4, -0.2)] {
        let r = bilinear_generating_residual(&bilinear(u, t), &hyp_tol()).unwrap();
        assert!(r.residual.rel() <= r.bound(1e-6), "u={u} t={t}: {r:?}");
        assert!(r.last_term > 0.0);
    }
}

#[test]
fn beta_shift_form_of_appell_relation_fails_while_tau_shift_holds() {
    let g = AppellGenerating {
        beta: 0.6,
        tau: 1.5,
        alpha: 0.2,
        gamma: 1.6,
        z: -0.3,
        t: 0.25,
        terms: 25,
        params: std_params(),
    };
    let stated = appell_generating_residual(&g, AppellVariant::BetaShift, &hyp_tol()).unwrap();
    let proof = appell_generating_residual(&g, AppellVariant::TauShift, &hyp_tol()).unwrap();
    assert!(stated.residual.rel() > 100.0 * stated.bound(1e-6));
    assert!(proof.residual.rel() <= proof.bound(1e-6));
}

#[test]
fn domain_violations_are_reported_not_computed() {
    let g = LinearGenerating {
        beta: 1.0,
        alpha: 0.5,
        gamma: 2.0,
        z: 0.2,
        t: 1.5,
        terms: 10,
        params: std_params(),
    };
    assert!(linear_generating_residual(&g, &hyp_tol()).is_err());
    let r = check_linear_generating(&[g], 1e-6);
    assert_eq!(r.verdict, Verdict::Fail);
    assert_eq!(r.residuals, vec![None]);
    assert!(r.notes.contains("|t| < 1"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn linear_relation_holds_inside_its_domain(t in -0.4f64..0.4, z in -0.3f64..0.3) {
        let g = LinearGenerating { beta: 0.8, alpha: 0.3, gamma: 1.8, z, t, terms: 40, params: std_params() };
        let r = linear_generating_residual(&g, &hyp_tol()).unwrap();
        prop_assert!(r.residual.rel() <= r.bound(1e-6), "{:?}", r);
    }
}
