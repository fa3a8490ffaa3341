use approx::assert_relative_eq;
use proptest::prelude::*;
use stokes_hbim::optimizer::{golden_section, optimize_n_with_nodes, pointwise_residual, DEFAULT_BRACKET};
use stokes_hbim::{
    optimal_n_closed, optimize_n, residual_l2, Error, ExponentMethod, FlowState, FluidParameters, FractionalOrder,
};

const J_075: f64 = 1.103_262_651_320_837_3;

fn order(beta: f64) -> FractionalOrder<f64> {
    FractionalOrder::new(beta).unwrap()
}

fn state(beta: f64, t: f64) -> FlowState<f64> {
    FlowState::new(1.0, t, 0.0, order(beta)).unwrap()
}

fn bracket() -> (f64, f64) {
    DEFAULT_BRACKET
}

// E(n) = delta [A^2 B(2n-1,3) - 2AB B(2n-2,2) + B^2 B(2n-3,1)] with
// A = n delta'/delta and B = (nu + p j t^-beta) n(n-1)/delta^2.
fn residual_exact(nu: f64, p: f64, jb: f64, beta: f64, t: f64, n: f64) -> f64 {
    let nn1 = n * (n + 1.0);
    let delta = (2.0 * nn1 * (nu * t + p * jb * t.powf(1.0 - beta))).sqrt();
    let rate = nn1 * (nu + (1.0 - beta) * p * jb * t.powf(-beta)) / delta;
    let a = n * rate / delta;
    let b = (nu + p * jb * t.powf(-beta)) * n * (n - 1.0) / (delta * delta);
    let m = 2.0 * n;
    let b3 = 2.0 / ((m - 1.0) * m * (m + 1.0));
    let b2 = 1.0 / ((m - 2.0) * (m - 1.0));
    let b1 = 1.0 / (m - 3.0);
    delta * (a * a * b3 - 2.0 * a * b * b2 + b * b * b1)
}

#[test]
fn residual_matches_beta_function_form() {
    for &(nu, p, t) in &[(1.0, 0.0, 1.0), (1e-3, 2e-4, 0.5), (2e-2, 3e-1, 7.0)] {
        let fp = FluidParameters::from_kinematic(nu, p).unwrap();
        for &n in &[1.6, 2.0, 2.35, 3.0, 4.5] {
            let got = residual_l2(&fp, &state(0.75, t), n, 64).unwrap().residual_l2;
            let want = residual_exact(nu, p, J_075, 0.75, t, n);
            assert_relative_eq!(got, want, max_relative = 1e-11);
        }
    }
}

#[test]
fn residual_converges_under_node_doubling() {
    let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
    for &n in &[1.7, 2.35, 3.0, 6.0] {
        let coarse = residual_l2(&fp, &state(0.5, 1.0), n, 16).unwrap().residual_l2;
        let fine = residual_l2(&fp, &state(0.5, 1.0), n, 32).unwrap().residual_l2;
        assert!(((fine - coarse) / fine).abs() <= 1e-8, "n = {n}");
    }
}

#[test]
fn residual_integrates_pointwise_square() {
    let fp = FluidParameters::from_kinematic(1e-3, 5e-4).unwrap();
    let s = state(0.4, 2.0);
    let n = 3.0;
    let report = residual_l2(&fp, &s, n, 64).unwrap();
    let delta = stokes_hbim::penetration_depth(&fp, &s, &stokes_hbim::ProfileSpec::fixed(n).unwrap()).delta;
    // composite Simpson on the smooth n = 3 integrand
    let m = 2000;
    let h = delta / m as f64;
    let mut acc = 0.0;
    for i in 0..=m {
        let w = if i == 0 || i == m { 1.0 } else if i % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * pointwise_residual(&fp, &s, n, i as f64 * h).powi(2);
    }
    assert_relative_eq!(report.residual_l2, acc * h / 3.0, max_relative = 1e-9);
}

#[test]
fn residual_rejects_non_integrable_exponents() {
    let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
    assert!(matches!(residual_l2(&fp, &state(0.5, 1.0), 1.5, 64), Err(Error::NotIntegrable { .. })));
    assert!(residual_l2(&fp, &state(0.5, 1.0), 2.0, 8).is_err());
}

#[test]
fn newtonian_optimum() {
    let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
    let r = optimize_n(&fp, &state(0.5, 1.0), (1.6, 4.0), 1e-6).unwrap();
    assert_eq!(r.method, ExponentMethod::NumericScan);
    assert!((1.45..=2.45).contains(&r.n_opt));
    // minimizer of the exact Beta-function form, found with mpmath
    assert!((r.n_opt - 2.233_494_052_0).abs() < 1e-5, "{}", r.n_opt);
}

#[test]
fn viscoelastic_optima_reference() {
    // mpmath minimizers of E(n) at beta = 0.5, keyed by D0.
    let table = [
        (0.01, 2.23199),
        (0.1, 2.22062),
        (0.3, 2.20442),
        (0.5, 2.19489),
        (1.0, 2.18293),
        (2.0, 2.17460),
        (5.0, 2.16927),
    ];
    for &(d0, want) in &table {
        let fp = FluidParameters::from_kinematic(1.0, d0).unwrap();
        let r = optimize_n(&fp, &state(0.5, 1.0), bracket(), 1e-6).unwrap();
        assert!((r.n_opt - want).abs() < 2e-5, "D0 = {d0}: {}", r.n_opt);
        assert_relative_eq!(r.d0_at_eval, d0, max_relative = 1e-14);
    }
}

#[test]
fn optimum_is_minimal_on_a_grid() {
    let fp = FluidParameters::from_kinematic(1e-3, 3e-4).unwrap();
    let s = state(0.5, 0.4);
    let (lo, hi) = bracket();
    let r = optimize_n(&fp, &s, (lo, hi), 1e-6).unwrap();
    let best = r.residual_l2.unwrap();
    for i in 0..50 {
        let n = lo + (hi - lo) * i as f64 / 49.0;
        let e = residual_l2(&fp, &s, n, 64).unwrap().residual_l2;
        assert!(best <= e * (1.0 + 1e-12), "n = {n}: {e} < {best}");
    }
}

#[test]
fn optimum_is_non_increasing_in_d0() {
    let mut prev = f64::INFINITY;
    for k in 0..25 {
        let d0 = 1e-3 * 1.5_f64.powi(k);
        let fp = FluidParameters::from_kinematic(1.0, d0).unwrap();
        let n = optimize_n(&fp, &state(0.5, 1.0), bracket(), 1e-6).unwrap().n_opt;
        assert!(n <= prev + 1e-6, "D0 = {d0}: {n} > {prev}");
        prev = n;
    }
}

#[test]
fn endpoint_and_bracket_errors() {
    let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
    let s = state(0.5, 1.0);
    assert!(matches!(optimize_n(&fp, &s, (1.4, 3.0), 1e-6), Err(Error::InvalidParameter { .. })));
    assert!(matches!(optimize_n(&fp, &s, (2.0, 11.0), 1e-6), Err(Error::InvalidParameter { .. })));
    assert!(matches!(optimize_n(&fp, &s, (1.6, 4.0), 1e-8), Err(Error::InvalidParameter { .. })));
    assert!(matches!(optimize_n(&fp, &s, (2.5, 4.0), 1e-6), Err(Error::NoMinimumInBracket { .. })));
}

#[test]
fn closed_form_paper_points() {
    assert!((optimal_n_closed(0.125_f64).unwrap().n_opt - 2.0).abs() <= 1e-12);
    assert!((optimal_n_closed(1.0_f64 / 18.0).unwrap().n_opt - 3.0).abs() <= 1e-12);
    let one = optimal_n_closed(0.5_f64).unwrap();
    assert!((one.n_opt - 1.0).abs() <= 1e-12 && one.below_validity_floor);
    assert_eq!(one.method, ExponentMethod::ClosedForm);
    assert!(optimal_n_closed(0.0_f64).is_err());
    // n = 2.35 corresponds to D0 = 1/(2 * 2.35^2)
    assert_relative_eq!(1.0 / (2.0 * 2.35_f64 * 2.35), 0.090_538_705_296_514_26, max_relative = 1e-14);
}

#[test]
fn closed_form_roundtrip() {
    for &n in &[1.5_f64, 2.0, 2.5, 3.0, 4.0] {
        let r = optimal_n_closed(1.0 / (2.0 * n * n)).unwrap();
        assert!((r.n_opt - n).abs() <= 1e-12 * n);
        assert!((r.n_opt * (2.0 * r.d0_at_eval).sqrt() - 1.0).abs() <= 1e-12);
    }
}

#[test]
fn golden_section_on_a_quartic() {
    let (x, _) = golden_section(|x: f64| Ok((x - 0.7).powi(4) + x), -2.0, 3.0, 1e-10).unwrap();
    // derivative 4 (x - 0.7)^3 + 1 = 0
    assert!((x - (0.7 - 0.25_f64.cbrt())).abs() < 1e-6);
}

#[test]
fn node_count_reaches_the_scan() {
    let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
    let a = optimize_n_with_nodes(&fp, &state(0.5, 1.0), bracket(), 1e-6, 32).unwrap();
    let b = optimize_n_with_nodes(&fp, &state(0.5, 1.0), bracket(), 1e-6, 128).unwrap();
    assert!((a.n_opt - b.n_opt).abs() < 1e-6);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reference_speed_does_not_move_the_optimum(u0 in 1e-3_f64..1e3, p in 0.0_f64..5e-3) {
        let fp = FluidParameters::from_kinematic(1e-3, p).unwrap();
        let a = optimize_n(&fp, &FlowState::new(1.0, 0.3, 0.0, order(0.5)).unwrap(), bracket(), 1e-6).unwrap();
        let b = optimize_n(&fp, &FlowState::new(u0, 0.3, 0.0, order(0.5)).unwrap(), bracket(), 1e-6).unwrap();
        prop_assert_eq!(a.n_opt, b.n_opt);
    }

    #[test]
    fn closed_form_scales_as_inverse_root_d0(d0 in 1e-4_f64..10.0, k in 0.1_f64..10.0) {
        let a = optimal_n_closed(d0).unwrap().n_opt;
        let b = optimal_n_closed(k * d0).unwrap().n_opt;
        prop_assert!((a / b - k.sqrt()).abs() <= 1e-12 * k.sqrt());
    }

    #[test]
    fn residual_is_smooth_in_n(n in 1.7_f64..6.0, p in 0.0_f64..2.0, beta in 0.1_f64..0.9) {
        let fp = FluidParameters::from_kinematic(1.0, p).unwrap();
        let s = state(beta, 1.0);
        let e = |n: f64| residual_l2(&fp, &s, n, 64).unwrap().residual_l2;
        // central differences at two step sizes agree
        let d = |h: f64| (e(n + h) - e(n - h)) / (2.0 * h);
        let (d1, d2) = (d(1e-3), d(5e-4));
        prop_assert!((d1 - d2).abs() <= 1e-4 * d2.abs().max(e(n)));
    }

    #[test]
    fn residual_is_non_negative(n in 1.51_f64..8.0, p in 0.0_f64..2.0, t in 1e-3_f64..10.0) {
        let fp = FluidParameters::from_kinematic(1.0, p).unwrap();
        let r = residual_l2(&fp, &state(0.5, t), n, 64).unwrap();
        prop_assert!(r.residual_l2 >= 0.0 && r.residual_l2.is_finite());
    }
}
