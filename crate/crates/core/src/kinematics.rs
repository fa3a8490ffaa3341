//! Closed-form integral-balance solution: penetration depths, velocity
//! profiles, wall-layer stress and the exact Newtonian reference.
//!
//! The assumed profile is `u/U0 = (1 - y/delta)^n` with
//!
//! ```text
//! delta = sqrt(nu t) * F_n * R_beta,   F_n = sqrt(2n(n+1)),   R_beta = sqrt(1 + j_beta D0)
//! ```
//!
//! so in similarity form `u/U0 = (1 - xi / (F_n R_beta))^n`.

use crate::error::{Error, Result};
use crate::groups::{check_time, deborah_d0, j_beta, similarity, FlowState, FluidParameters, FractionalOrder};
use crate::scalar::Scalar;
use crate::specfun::{erfc, lambert_w0};

/// Exponent policy of the approximate profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ProfileSpec<T> {
    /// `(1 - y/delta)^n` with a constant `n > 1`.
    FixedExponent { n: T },
    /// Exponent growing away from the wall, `n(xi) = n0 + kj W0(xi)`.
    SelfAdaptive { n0: T, kj: T },
}

impl<T: Scalar> ProfileSpec<T> {
    pub fn fixed(n: T) -> Result<Self> {
        check_exponent("n", n)?;
        Ok(Self::FixedExponent { n })
    }

    pub fn self_adaptive(n0: T, kj: T) -> Result<Self> {
        check_exponent("n0", n0)?;
        if !(kj >= T::zero()) || !kj.is_finite() {
            return Err(Error::InvalidParameter {
                name: "kj",
                value: kj.as_f64(),
                reason: "self-adaptive weight must be >= 0",
            });
        }
        Ok(Self::SelfAdaptive { n0, kj })
    }

    /// `n0 = 1.675`, `kj = 0.5`.
    pub fn default_self_adaptive() -> Self {
        Self::SelfAdaptive {
            n0: T::lit(1.675),
            kj: T::lit(0.5),
        }
    }

    /// Exponent used for the penetration depth (the wall value for the
    /// self-adaptive profile).
    pub fn depth_exponent(&self) -> T {
        match *self {
            Self::FixedExponent { n } => n,
            Self::SelfAdaptive { n0, .. } => n0,
        }
    }

    /// Local exponent at similarity coordinate `xi >= 0`.
    pub fn exponent_at(&self, xi: T) -> T {
        match *self {
            Self::FixedExponent { n } => n,
            Self::SelfAdaptive { n0, kj } => {
                n0 + kj * lambert_w0(xi.max(T::zero())).unwrap_or_else(|_| T::zero())
            }
        }
    }

    /// Similarity coordinate where the profile reaches zero for the given
    /// elastic stretch `r_beta`.
    ///
    /// For a fixed exponent this is `F_n r_beta`. For the self-adaptive
    /// profile it is the root of `xi = F_{n(xi)} r_beta`, which lies beyond
    /// `F_{n0} r_beta` because the exponent grows with `xi`.
    pub fn front(&self, r_beta: T) -> T {
        match *self {
            Self::FixedExponent { n } => profile_factor(n) * r_beta,
            Self::SelfAdaptive { .. } => {
                let gap = |xi: T| xi - profile_factor(self.exponent_at(xi)) * r_beta;
                let mut lo = profile_factor(self.depth_exponent()) * r_beta;
                let mut hi = lo * T::lit(2.0);
                while gap(hi) < T::zero() {
                    lo = hi;
                    hi = hi * T::lit(2.0);
                }
                for _ in 0..200 {
                    let mid = (lo + hi) * T::lit(0.5);
                    if gap(mid) < T::zero() {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                    if hi - lo <= T::epsilon() * hi {
                        break;
                    }
                }
                hi
            }
        }
    }
}

fn check_exponent<T: Scalar>(name: &'static str, n: T) -> Result<()> {
    if n > T::one() && n.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value: n.as_f64(),
            reason: "profile exponent must exceed 1 so the slope vanishes at the front",
        })
    }
}

/// `F_n = sqrt(2n(n+1))`.
pub fn profile_factor<T: Scalar>(n: T) -> T {
    (T::lit(2.0) * n * (n + T::one())).sqrt()
}

/// `R_beta = sqrt(1 + j_beta D0)`, the elastic stretch of the layer.
pub fn elastic_stretch<T: Scalar>(beta: FractionalOrder<T>, d0: T) -> T {
    (T::one() + j_beta(beta) * d0).sqrt()
}

/// Penetration depth in all three scalings together with its normalizations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PenetrationDepth<T> {
    /// Exponent the depth was evaluated with.
    pub n: T,
    /// Dimensional depth [m].
    pub delta: T,
    /// Depth in the `y / sqrt(p)` scaling; `None` for a Newtonian fluid.
    pub delta_bar: Option<T>,
    /// Depth in the `y U0 / nu` scaling.
    pub delta_star: T,
    /// `delta / (sqrt(nu t) F_n)`.
    pub relative: T,
    /// `delta_bar / (sqrt(nu t / p) F_n)`; equals `relative`.
    pub relative_rescaled: T,
    /// `sqrt(1 + eta j_beta / (t*)^beta)`, the dimensionless-equation form.
    /// Equals `relative` only when `U0^2 = nu`; otherwise the elastic terms
    /// differ by `(U0^2/nu)^(1-beta)`.
    pub relative_dimensionless: T,
    pub f_n: T,
    pub r_beta: T,
}

/// Penetration depth at `state`. The self-adaptive profile uses `n0`.
pub fn penetration_depth<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    spec: &ProfileSpec<T>,
) -> PenetrationDepth<T> {
    let n = spec.depth_exponent();
    let groups = similarity(params, state);
    let nu = params.nu();
    let p = params.p();
    let t = state.t();
    let diffusion_length = (nu * t).sqrt();
    let f_n = profile_factor(n);
    let r_beta = (T::one() + groups.j_beta * groups.d0).sqrt();
    let delta = diffusion_length * f_n * r_beta;

    let (delta_bar, relative_rescaled) = if p > T::zero() {
        let root_p = p.sqrt();
        let db = delta / root_p;
        (Some(db), db / ((nu * t / p).sqrt() * f_n))
    } else {
        (None, delta / (diffusion_length * f_n))
    };

    let beta = state.beta().value();
    PenetrationDepth {
        n,
        delta,
        delta_bar,
        delta_star: delta * state.u0() / nu,
        relative: delta / (diffusion_length * f_n),
        relative_rescaled,
        relative_dimensionless: (T::one()
            + groups.eta * groups.j_beta / groups.t_star.powf(beta))
        .sqrt(),
        f_n,
        r_beta,
    }
}

/// `sqrt(1 + j_beta D0)`; independent of the exponent.
pub fn relative_depth<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>) -> T {
    elastic_stretch(state.beta(), deborah_d0(params, state))
}

/// Rescaled depth `delta_bar` of the `y/sqrt(p)` formulation, parametrized
/// only by the ratio `p/nu`.
pub fn rescaled_depth<T: Scalar>(p_over_nu: T, t: T, beta: FractionalOrder<T>, n: T) -> Result<T> {
    check_time(t)?;
    check_exponent("n", n)?;
    if !(p_over_nu > T::zero()) {
        return Err(Error::UndefinedWithoutElasticity {
            quantity: "rescaled depth",
        });
    }
    let d0 = p_over_nu / t.powf(beta.value());
    Ok((t / p_over_nu).sqrt() * profile_factor(n) * elastic_stretch(beta, d0))
}

/// Depth of the fully dimensionless formulation,
/// `sqrt(2n(n+1) t* [1 + eta j_beta / (t*)^beta])`.
pub fn dimensionless_depth<T: Scalar>(eta: T, t_star: T, beta: FractionalOrder<T>, n: T) -> Result<T> {
    check_exponent("n", n)?;
    Ok(t_star.sqrt() * profile_factor(n) * dimensionless_relative_depth(eta, t_star, beta)?)
}

/// `sqrt(1 + eta j_beta / (t*)^beta)`.
pub fn dimensionless_relative_depth<T: Scalar>(eta: T, t_star: T, beta: FractionalOrder<T>) -> Result<T> {
    check_time(t_star)?;
    if !(eta >= T::zero()) {
        return Err(Error::InvalidParameter {
            name: "eta",
            value: eta.as_f64(),
            reason: "eta = alpha1 U0^2 rho / mu^2 must be >= 0",
        });
    }
    Ok((T::one() + eta * j_beta(beta) / t_star.powf(beta.value())).sqrt())
}

/// Profile value `u/U0` at similarity coordinate `xi` for elastic stretch
/// `r_beta`; zero at and beyond the front.
pub fn profile<T: Scalar>(xi: T, r_beta: T, spec: &ProfileSpec<T>) -> T {
    let xi = xi.max(T::zero());
    let n = spec.exponent_at(xi);
    let base = T::one() - xi / (profile_factor(n) * r_beta);
    if base <= T::zero() {
        T::zero()
    } else {
        base.powf(n)
    }
}

/// Profile in the two similarity variables `(xi, chi)`.
pub fn profile_in_similarity<T: Scalar>(xi: T, chi: T, beta: FractionalOrder<T>, spec: &ProfileSpec<T>) -> T {
    profile(xi, elastic_stretch(beta, chi * chi), spec)
}

/// Formulation a stress value is reported in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Formulation {
    /// Dimensional equation; stress per unit density [m^2/s^2].
    Main,
    /// Space rescaled by `sqrt(p)`.
    Example1,
    /// Dimensionless equation; stress is `T_xy / (rho U0^2)`.
    Example2,
}

impl Formulation {
    pub fn name(self) -> &'static str {
        match self {
            Self::Main => "main",
            Self::Example1 => "example1",
            Self::Example2 => "example2",
        }
    }
}

/// Velocity ratio and shear stress at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldSample<T> {
    pub u_over_u0: T,
    pub stress: T,
}

/// Velocity ratio at `state` together with the [`Formulation::Main`] stress.
pub fn velocity<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    spec: &ProfileSpec<T>,
) -> FieldSample<T> {
    let groups = similarity(params, state);
    let r_beta = (T::one() + groups.j_beta * groups.d0).sqrt();
    FieldSample {
        u_over_u0: profile(groups.xi, r_beta, spec),
        stress: main_stress(params, state, spec),
    }
}

/// Exact Newtonian solution `1 - erf(xi/2)`.
pub fn newtonian_exact<T: Scalar>(xi: T) -> T {
    erfc(xi * T::lit(0.5))
}

fn main_stress<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>, spec: &ProfileSpec<T>) -> T {
    let depth = penetration_depth(params, state, spec);
    let groups = similarity(params, state);
    let n = depth.n;
    let s = T::one() - state.y() / depth.delta;
    if s <= T::zero() {
        return T::zero();
    }
    -state.u0() * params.nu() * n / depth.delta * s.powf(n - T::one()) * (T::one() + groups.j_beta * groups.d0)
}

/// Shear stress inside the penetration layer, signed (negative: the plate
/// drags the fluid and `du/dy < 0`), zero beyond the front.
///
/// * `Main`: `-U0 nu (n/delta) (1 - y/delta)^(n-1) [1 + j_beta p/(nu t^beta)]`
/// * `Example1`: `-U0 (n/delta_bar) (1 - y/delta)^(n-1) [nu/p + j_beta/t^beta]`
/// * `Example2`: `-(n/delta*) (1 - y/delta)^(n-1) [1 + eta j_beta/(t*)^beta]`
///
/// The self-adaptive profile is evaluated with its wall exponent `n0`.
pub fn stress<T: Scalar>(
    params: &FluidParameters<T>,
    state: &FlowState<T>,
    spec: &ProfileSpec<T>,
    formulation: Formulation,
) -> Result<FieldSample<T>> {
    let depth = penetration_depth(params, state, spec);
    let groups = similarity(params, state);
    let r_beta = depth.r_beta;
    let u_over_u0 = profile(groups.xi, r_beta, spec);
    let n = depth.n;
    let s = T::one() - state.y() / depth.delta;
    let spatial = if s <= T::zero() { T::zero() } else { s.powf(n - T::one()) };
    let beta = state.beta().value();
    let value = match formulation {
        Formulation::Main => main_stress(params, state, spec),
        Formulation::Example1 => {
            let delta_bar = depth.delta_bar.ok_or(Error::UndefinedWithoutElasticity {
                quantity: "Example 1 stress",
            })?;
            -state.u0() * n / delta_bar
                * spatial
                * (params.nu() / params.p() + groups.j_beta / state.t().powf(beta))
        }
        Formulation::Example2 => {
            -n / depth.delta_star
                * spatial
                * (T::one() + groups.eta * groups.j_beta / groups.t_star.powf(beta))
        }
    };
    Ok(FieldSample {
        u_over_u0,
        stress: value,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn order(b: f64) -> FractionalOrder<f64> {
        FractionalOrder::new(b).unwrap()
    }

    fn unit_state(beta: f64) -> FlowState<f64> {
        FlowState::new(1.0, 1.0, 0.0, order(beta)).unwrap()
    }

    #[test]
    fn newtonian_depths() {
        let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
        let s = unit_state(0.5);
        let d2 = penetration_depth(&fp, &s, &ProfileSpec::fixed(2.0).unwrap());
        let d3 = penetration_depth(&fp, &s, &ProfileSpec::fixed(3.0).unwrap());
        assert_relative_eq!(d2.delta, 12.0_f64.sqrt(), max_relative = 1e-15);
        assert_relative_eq!(d3.delta, 24.0_f64.sqrt(), max_relative = 1e-15);
        assert!(d2.delta_bar.is_none());
        assert_eq!(d2.relative, 1.0);
        assert_eq!(d2.relative_rescaled, 1.0);
        assert_eq!(d2.relative_dimensionless, 1.0);
    }

    #[test]
    fn elastic_depth_doubles_under_unit_product() {
        // p chosen so that j_beta D0 = 1 at t = 1
        let jb = j_beta(order(0.5));
        let fp = FluidParameters::from_kinematic(1.0, 1.0 / jb).unwrap();
        let d = penetration_depth(&fp, &unit_state(0.5), &ProfileSpec::fixed(2.0).unwrap());
        assert_relative_eq!(d.delta, 24.0_f64.sqrt(), max_relative = 1e-14);
    }

    #[test]
    fn relative_depth_examples() {
        let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
        assert_eq!(relative_depth(&fp, &unit_state(0.5)), 1.0);
        let fp = FluidParameters::from_kinematic(1.0, 1.0).unwrap();
        assert_relative_eq!(relative_depth(&fp, &unit_state(0.5)), 1.458_896_558_051_842_3, max_relative = 1e-12);
        let d2 = dimensionless_relative_depth(1.0, 1.0, order(0.5)).unwrap();
        assert_relative_eq!(d2, 1.458_896_558_051_842_3, max_relative = 1e-12);
    }

    #[test]
    fn velocity_examples() {
        let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
        let n2 = ProfileSpec::fixed(2.0).unwrap();
        assert_eq!(velocity(&fp, &unit_state(0.5), &n2).u_over_u0, 1.0);
        let half = 3.0_f64.sqrt();
        let s = unit_state(0.5).with_y(half).unwrap();
        assert_relative_eq!(velocity(&fp, &s, &n2).u_over_u0, 0.25, max_relative = 1e-14);
        let s = unit_state(0.5).with_y(12.0_f64.sqrt()).unwrap();
        assert_eq!(velocity(&fp, &s, &n2).u_over_u0, 0.0);
        let s = unit_state(0.5).with_y(50.0).unwrap();
        assert_eq!(velocity(&fp, &s, &ProfileSpec::default_self_adaptive()).u_over_u0, 0.0);
        assert_eq!(velocity(&fp, &unit_state(0.5), &ProfileSpec::default_self_adaptive()).u_over_u0, 1.0);
    }

    #[test]
    fn newtonian_exact_examples() {
        assert_eq!(newtonian_exact(0.0), 1.0);
        assert!((newtonian_exact(2.0_f64) - 0.157_299_207_050_285_1).abs() < 1e-15);
        assert!(newtonian_exact(10.0) <= 1e-11);
    }

    #[test]
    fn stress_examples() {
        let fp = FluidParameters::from_kinematic(1.0, 0.0).unwrap();
        let n2 = ProfileSpec::fixed(2.0).unwrap();
        let f = stress(&fp, &unit_state(0.5), &n2, Formulation::Main).unwrap();
        assert_relative_eq!(f.stress, -2.0 / 12.0_f64.sqrt(), max_relative = 1e-14);
        let at_front = unit_state(0.5).with_y(12.0_f64.sqrt()).unwrap();
        assert_eq!(stress(&fp, &at_front, &n2, Formulation::Main).unwrap().stress, 0.0);
        assert!(matches!(
            stress(&fp, &unit_state(0.5), &n2, Formulation::Example1),
            Err(Error::UndefinedWithoutElasticity { .. })
        ));
        // eta = 0: bracket is one
        let s = unit_state(0.5).with_y(1.0).unwrap();
        let d = penetration_depth(&fp, &s, &n2);
        let f2 = stress(&fp, &s, &n2, Formulation::Example2).unwrap();
        assert_relative_eq!(f2.stress, -2.0 / d.delta_star * (1.0 - 1.0 / d.delta), max_relative = 1e-14);
    }

    #[test]
    fn rescaled_stress_is_main_over_root_p() {
        let fp = FluidParameters::from_kinematic(0.7, 2.3).unwrap();
        let s = FlowState::new(1.3, 0.4, 0.5, order(0.35)).unwrap();
        let n = ProfileSpec::fixed(2.4).unwrap();
        let main = stress(&fp, &s, &n, Formulation::Main).unwrap().stress;
        let ex1 = stress(&fp, &s, &n, Formulation::Example1).unwrap().stress;
        assert_relative_eq!(main, fp.p().sqrt() * ex1, max_relative = 1e-13);
    }

    #[test]
    fn rejects_exponent_at_or_below_one() {
        assert!(ProfileSpec::fixed(1.0_f64).is_err());
        assert!(ProfileSpec::self_adaptive(0.9_f64, 0.5).is_err());
        assert!(ProfileSpec::self_adaptive(1.675_f64, -0.1).is_err());
    }

    #[test]
    fn self_adaptive_front_is_self_consistent() {
        let spec = ProfileSpec::<f64>::default_self_adaptive();
        for r in [1.0, 1.3, 2.5] {
            let xf = spec.front(r);
            assert!(xf > profile_factor(1.675) * r);
            assert_relative_eq!(xf, profile_factor(spec.exponent_at(xf)) * r, max_relative = 1e-12);
            assert_eq!(profile(xf * (1.0 + 1e-9), r, &spec), 0.0);
            assert!(profile(xf * (1.0 - 1e-3), r, &spec) > 0.0);
        }
    }
}
