//! Calibration of the profile exponent.
//!
//! The approximate profile `ū = (1 - y/delta)^n` does not satisfy the
//! governing equation pointwise. Its squared residual over the layer,
//!
//! ```text
//! E(n) = ∫_0^delta [ dū/dt - nu d2ū/dy2 - p (j_beta / t^beta) d2ū/dy2 ]^2 dy
//! ```
//!
//! is minimized over `n`. The fractional term uses the same `j_beta/t^beta`
//! reduction the integral balance produces, so `E` measures how consistent
//! the closed form is with its own derivation.
//!
//! With `s = 1 - y/delta` the integrand carries a factor `s^(2n-4)`, which
//! is singular at the front for `n < 2` and non-integrable for `n <= 1.5`.
//! The quadrature absorbs that factor into a Gauss–Jacobi weight.

use crate::error::{Error, Result};
use crate::groups::{deborah_d0, j_beta, FlowState, FluidParameters};
use crate::quadrature::GaussRule;
use crate::scalar::Scalar;

pub const DEFAULT_NODES: usize = 64;
pub const MIN_NODES: usize = 16;
pub const DEFAULT_BRACKET: (f64, f64) = (1.6, 5.0);
pub const DEFAULT_TOL: f64 = 1e-6;
/// Below this the squared residual diverges at the front.
pub const INTEGRABILITY_FLOOR: f64 = 1.5;

/// Squared L2 residual of the profile at one time.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualReport<T> {
    pub n: T,
    /// `E(n)`; the square of the L2 norm of the residual over `[0, delta]`.
    pub residual_l2: T,
    pub quadrature_nodes: usize,
    pub t_eval: T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExponentMethod {
    /// `n = 1 / sqrt(2 D0)`, the short-time balance of the residual.
    ClosedForm,
    /// Golden-section minimization of [`residual_l2`].
    NumericScan,
}

impl ExponentMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::ClosedForm => "closed_form",
            Self::NumericScan => "numeric_scan",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExponentResult<T> {
    pub n_opt: T,
    pub method: ExponentMethod,
    pub d0_at_eval: T,
    /// Residual at the optimum (numeric scan only).
    pub residual_l2: Option<T>,
    /// Set when the closed form lands at or below the `n > 1` profile floor.
    pub below_validity_floor: bool,
}

/// Layer kinematics shared by the residual terms at a fixed time.
#[derive(Debug, Clone, Copy)]
pub(crate) struct LayerState<T> {
    pub n: T,
    pub nu: T,
    /// `p j_beta / t^beta`, the effective elastic diffusivity.
    pub elastic: T,
    pub delta: T,
    pub delta_rate: T,
}

impl<T: Scalar> LayerState<T> {
    pub fn new(params: &FluidParameters<T>, state: &FlowState<T>, n: T) -> Self {
        let nu = params.nu();
        let p = params.p();
        let t = state.t();
        let beta = state.beta().value();
        let jb = j_beta(state.beta());
        let two = T::lit(2.0);
        let nn1 = n * (n + T::one());
        // delta^2 = 2n(n+1) [nu t + p j_beta t^(1-beta)]
        let delta = (two * nn1 * (nu * t + p * jb * t.powf(T::one() - beta))).sqrt();
        // d(delta^2)/dt = 2 delta delta'
        let delta_rate = nn1 * (nu + (T::one() - beta) * p * jb * t.powf(-beta)) / delta;
        Self {
            n,
            nu,
            elastic: p * jb / t.powf(beta),
            delta,
            delta_rate,
        }
    }

    /// Residual at `y`, divided by `s^(n-2)` with `s = 1 - y/delta`.
    pub fn reduced_residual(&self, s: T) -> T {
        let n = self.n;
        let y = self.delta * (T::one() - s);
        let d2 = self.delta * self.delta;
        // dū/dt = n s^(n-1) (y/delta^2) delta'
        let time_term = n * s * y / d2 * self.delta_rate;
        // d2ū/dy2 = n(n-1)/delta^2 s^(n-2)
        let curvature = n * (n - T::one()) / d2;
        time_term - (self.nu + self.elastic) * curvature
    }

    /// Unreduced residual at `y`.
    pub fn residual(&self, y: T) -> T {
        let s = T::one() - y / self.delta;
        if s <= T::zero() {
            return T::zero();
        }
        self.reduced_residual(s) * s.powf(self.n - T::lit(2.0))
    }
}

fn check_integrable<T: Scalar>(n: T) -> Result<()> {
    if n > T::lit(INTEGRABILITY_FLOOR) && n.is_finite() {
        Ok(())
    } else {
        Err(Error::NotIntegrable { n: n.as_f64() })
    }
}

/// `E(n)` at `state`, integrated with `nodes` Gauss–Jacobi points.
pub fn residual_l2<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    n: T,
    nodes: usize,
) -> Result<ResidualReport<T>> {
    check_integrable(n)?;
    if nodes < MIN_NODES {
        return Err(Error::InvalidParameter {
            name: "nodes",
            value: nodes as f64,
            reason: "residual quadrature needs at least 16 nodes",
        });
    }
    let layer = LayerState::new(params, state, n);
    let rule = GaussRule::jacobi(nodes, T::lit(2.0) * n - T::lit(4.0))?;
    let integral = rule.integrate(|s| {
        let r = layer.reduced_residual(s);
        r * r
    });
    Ok(ResidualReport {
        n,
        residual_l2: layer.delta * integral,
        quadrature_nodes: nodes,
        t_eval: state.t(),
    })
}

/// Pointwise residual of the profile equation at distance `y` from the
/// plate; zero beyond the front.
pub fn pointwise_residual<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>, n: T, y: T) -> T {
    LayerState::new(params, state, n).residual(y)
}

/// `n = 1/sqrt(2 D0)`.
pub fn optimal_n_closed<T: Scalar>(d0: T) -> Result<ExponentResult<T>> {
    if !(d0 > T::zero()) || !d0.is_finite() {
        return Err(Error::Domain {
            function: "optimal_n_closed",
            value: d0.as_f64(),
            domain: "D0 > 0 (use the numeric scan for Newtonian flow)",
        });
    }
    let n = T::one() / (T::lit(2.0) * d0).sqrt();
    Ok(ExponentResult {
        n_opt: n,
        method: ExponentMethod::ClosedForm,
        d0_at_eval: d0,
        residual_l2: None,
        below_validity_floor: n <= T::one(),
    })
}

/// Golden-section minimization of [`residual_l2`] over `bracket` with
/// [`DEFAULT_NODES`] quadrature points.
pub fn optimize_n<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    bracket: (T, T),
    tol: T,
) -> Result<ExponentResult<T>> {
    optimize_n_with_nodes(params, state, bracket, tol, DEFAULT_NODES)
}

pub fn optimize_n_with_nodes<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    bracket: (T, T),
    tol: T,
    nodes: usize,
) -> Result<ExponentResult<T>> {
    let (lo, hi) = bracket;
    if !(lo > T::lit(INTEGRABILITY_FLOOR) && lo < hi && hi <= T::lit(10.0)) {
        return Err(Error::InvalidParameter {
            name: "bracket",
            value: lo.as_f64(),
            reason: "bracket must satisfy 1.5 < n_lo < n_hi <= 10",
        });
    }
    if !(tol >= T::lit(1e-6)) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol.as_f64(),
            reason: "tolerance must be >= 1e-6",
        });
    }
    let objective = |n: T| residual_l2(params, state, n, nodes).map(|r| r.residual_l2);
    let (n_opt, f_opt) = golden_section(objective, lo, hi, tol)?;
    if n_opt - lo <= tol || hi - n_opt <= tol {
        return Err(Error::NoMinimumInBracket {
            lo: lo.as_f64(),
            hi: hi.as_f64(),
            at: n_opt.as_f64(),
        });
    }
    Ok(ExponentResult {
        n_opt,
        method: ExponentMethod::NumericScan,
        d0_at_eval: deborah_d0(params, state),
        residual_l2: Some(f_opt),
        below_validity_floor: false,
    })
}

/// Golden-section search for a minimum of `f` on `[a, b]`; stops when the
/// bracket is narrower than `tol`.
pub fn golden_section<T, F>(mut f: F, a: T, b: T, tol: T) -> Result<(T, T)>
where
    T: Scalar,
    F: FnMut(T) -> Result<T>,
{
    let inv_phi = (T::lit(5.0).sqrt() - T::one()) / T::lit(2.0);
    let (mut a, mut b) = (a, b);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    while (b - a).abs() > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d)?;
        }
    }
    let x = (a + b) * T::lit(0.5);
    let fx = f(x)?;
    // Keep the best evaluated point.
    let mut best = (x, fx);
    if fc < best.1 {
        best = (c, fc);
    }
    if fd < best.1 {
        best = (d, fd);
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::FractionalOrder;
    use approx::assert_relative_eq;

    fn newtonian_state() -> (FluidParameters<f64>, FlowState<f64>) {
        let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
        let s = FlowState::new(1.0, 1.0, 0.0, FractionalOrder::new(0.5).unwrap()).unwrap();
        (fp, s)
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(optimal_n_closed(0.125_f64).unwrap().n_opt, 2.0);
        assert_relative_eq!(optimal_n_closed(1.0_f64 / 18.0).unwrap().n_opt, 3.0, max_relative = 1e-14);
        let r = optimal_n_closed(0.5_f64).unwrap();
        assert_relative_eq!(r.n_opt, 1.0, max_relative = 1e-15);
        assert!(r.below_validity_floor);
        assert!(!optimal_n_closed(0.125_f64).unwrap().below_validity_floor);
        assert!(optimal_n_closed(0.0_f64).is_err());
        assert!(optimal_n_closed(-1.0_f64).is_err());
    }

    #[test]
    fn integrability_floor_is_enforced() {
        let (fp, s) = newtonian_state();
        assert!(matches!(residual_l2(&fp, &s, 1.5, 64), Err(Error::NotIntegrable { .. })));
        assert!(residual_l2(&fp, &s, 1.2, 64).is_err());
        assert!(residual_l2(&fp, &s, 1.51, 64).is_ok());
        assert!(residual_l2(&fp, &s, 3.0, 8).is_err());
    }

    #[test]
    fn bracket_and_tolerance_are_validated() {
        let (fp, s) = newtonian_state();
        assert!(optimize_n(&fp, &s, (1.4, 4.0), 1e-6).is_err());
        assert!(optimize_n(&fp, &s, (3.0, 2.0), 1e-6).is_err());
        assert!(optimize_n(&fp, &s, (1.6, 11.0), 1e-6).is_err());
        assert!(optimize_n(&fp, &s, (1.6, 4.0), 1e-9).is_err());
    }

    #[test]
    fn endpoint_minimum_is_reported() {
        let (fp, s) = newtonian_state();
        // The Newtonian optimum is near 2.23, so [3, 5] has its minimum at 3.
        assert!(matches!(
            optimize_n(&fp, &s, (3.0, 5.0), 1e-6),
            Err(Error::NoMinimumInBracket { .. })
        ));
    }

    #[test]
    fn golden_section_finds_parabola_vertex() {
        let (x, fx) = golden_section(|x: f64| Ok((x - 1.3).powi(2) + 2.0), 0.0, 4.0, 1e-9).unwrap();
        assert!((x - 1.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn residual_vanishes_beyond_front() {
        let (fp, s) = newtonian_state();
        let layer = LayerState::new(&fp, &s, 2.5);
        assert_eq!(layer.residual(layer.delta), 0.0);
        assert_eq!(layer.residual(2.0 * layer.delta), 0.0);
    }
}
