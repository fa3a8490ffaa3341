use approx::assert_relative_eq;
use proptest::prelude::*;
use stokes_hbim::groups::elasticity_number;
use stokes_hbim::{deborah_d0, j_beta, similarity, Error, FlowState, FluidParameters, FractionalOrder};

fn order(beta: f64) -> FractionalOrder<f64> {
    FractionalOrder::new(beta).unwrap()
}

#[test]
fn j_beta_reference_values() {
    // mpmath: 1/gamma(2 - beta)
    assert_relative_eq!(j_beta(order(0.1)), 1.039_754_134_347_636_4, max_relative = 1e-13);
    assert_relative_eq!(j_beta(order(0.5)), 2.0 / std::f64::consts::PI.sqrt(), max_relative = 1e-13);
    assert_relative_eq!(j_beta(order(0.75)), 1.103_262_651_320_837_3, max_relative = 1e-13);
    assert_relative_eq!(j_beta(order(0.9)), 1.051_137_006_111_777_8, max_relative = 1e-13);
}

#[test]
fn order_must_be_strictly_fractional() {
    for beta in [0.0, 1.0, -0.2, 1.5, f64::NAN] {
        assert!(FractionalOrder::new(beta).is_err(), "beta = {beta}");
    }
}

#[test]
fn state_rejects_nonpositive_time() {
    let err = FlowState::new(1.0, 0.0, 0.0, order(0.5)).unwrap_err();
    assert!(matches!(err, Error::SingularTime { .. }));
}

#[test]
fn newtonian_groups_vanish() {
    let fp = FluidParameters::from_kinematic(1e-3, 0.0).unwrap();
    let s = FlowState::new(0.2, 3.0, 0.01, order(0.4)).unwrap();
    let g = similarity(&fp, &s);
    assert_eq!(g.d0, 0.0);
    assert_eq!(g.chi, 0.0);
    assert_eq!(g.eta, 0.0);
    assert!(fp.is_newtonian());
}

#[test]
fn elasticity_number_is_the_deborah_number() {
    let fp = FluidParameters::from_kinematic(2e-3, 5e-4).unwrap();
    let s = FlowState::new(1.0, 0.7, 0.0, order(0.3)).unwrap();
    assert_eq!(elasticity_number(&fp, &s), deborah_d0(&fp, &s));
}

#[test]
fn parameter_styles_agree() {
    let a = FluidParameters::new(1000.0, 2.0, 0.5).unwrap();
    let b = FluidParameters::from_kinematic(2e-3, 5e-4).unwrap();
    assert_relative_eq!(a.nu(), b.nu(), max_relative = 1e-15);
    assert_relative_eq!(a.p(), b.p(), max_relative = 1e-15);
    let c = FluidParameters::from_relaxation_time(2e-3, 0.25).unwrap();
    assert_relative_eq!(c.p(), b.p(), max_relative = 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn chi_squared_is_d0(
        nu in 1e-6_f64..1e-1, p in 1e-8_f64..1.0, t in 1e-3_f64..1e3, beta in 0.01_f64..0.99,
    ) {
        let fp = FluidParameters::from_kinematic(nu, p).unwrap();
        let s = FlowState::new(1.0, t, 0.0, order(beta)).unwrap();
        let g = similarity(&fp, &s);
        prop_assert!((g.chi * g.chi - g.d0).abs() <= 1e-14 * g.d0);
    }

    #[test]
    fn eta_identity(
        nu in 1e-6_f64..1e-1, p in 1e-8_f64..1.0, t in 1e-3_f64..1e3,
        beta in 0.01_f64..0.99, u0 in 1e-3_f64..10.0,
    ) {
        let fp = FluidParameters::from_kinematic(nu, p).unwrap();
        let s = FlowState::new(u0, t, 0.0, order(beta)).unwrap();
        let g = similarity(&fp, &s);
        let rhs = g.d0 * g.t_star * t.powf(beta - 1.0);
        prop_assert!(((g.eta - rhs) / g.eta).abs() <= 1e-12);
    }

    #[test]
    fn j_beta_stays_between_one_and_inverse_gamma_minimum(beta in 0.001_f64..0.999) {
        let j = j_beta(order(beta));
        // min of Gamma on [1, 2] is 0.8856...
        prop_assert!((1.0..=1.0 / 0.885_603).contains(&j));
    }

    #[test]
    fn d0_decreases_with_time(
        p in 1e-6_f64..1.0, t in 1e-3_f64..1e2, dt in 1e-3_f64..10.0, beta in 0.01_f64..0.99,
    ) {
        let fp = FluidParameters::from_kinematic(1e-3, p).unwrap();
        let s = FlowState::new(1.0, t, 0.0, order(beta)).unwrap();
        prop_assert!(deborah_d0(&fp, &s.with_t(t + dt).unwrap()) < deborah_d0(&fp, &s));
    }
}
