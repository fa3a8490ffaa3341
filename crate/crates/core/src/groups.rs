//! Fluid parameters, the flow evaluation point and the dimensionless groups
//! built from them.
//!
//! The scalar shear problem is governed by
//!
//! ```text
//! du/dt = nu d2u/dy2 + p D_t^beta d2u/dy2,   nu = mu/rho,  p = alpha1/rho
//! ```
//!
//! and every closed form is expressed through the Boltzmann variable
//! `xi = y / sqrt(nu t)` and the Deborah number `D0 = p / (nu t^beta) = chi^2`.

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::specfun::gamma_pos;

/// Material constants of the generalized second grade fluid.
///
/// Only `rho`, `mu` and `alpha1` are stored; `nu` and `p` are always derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FluidParameters<T> {
    rho: T,
    mu: T,
    alpha1: T,
}

impl<T: Scalar> FluidParameters<T> {
    /// Density [kg/m^3], dynamic viscosity [Pa s] and first normal-stress
    /// modulus `alpha1 >= 0`.
    pub fn new(rho: T, mu: T, alpha1: T) -> Result<Self> {
        if !(rho > T::zero()) || !rho.is_finite() {
            return Err(Error::InvalidParameter {
                name: "rho",
                value: rho.as_f64(),
                reason: "density must be positive and finite",
            });
        }
        if !(mu > T::zero()) || !mu.is_finite() {
            return Err(Error::InvalidParameter {
                name: "mu",
                value: mu.as_f64(),
                reason: "dynamic viscosity must be positive and finite",
            });
        }
        if !(alpha1 >= T::zero()) || !alpha1.is_finite() {
            return Err(Error::InvalidParameter {
                name: "alpha1",
                value: alpha1.as_f64(),
                reason: "thermodynamic compatibility requires alpha1 >= 0",
            });
        }
        Ok(Self { rho, mu, alpha1 })
    }

    /// Newtonian fluid (`alpha1 = 0`).
    pub fn newtonian(rho: T, mu: T) -> Result<Self> {
        Self::new(rho, mu, T::zero())
    }

    /// Kinematic form: the problem only sees `nu` and `p`, so this stores a
    /// unit density with `mu = nu` and `alpha1 = p`.
    pub fn from_kinematic(nu: T, p: T) -> Result<Self> {
        if !(p >= T::zero()) || !p.is_finite() {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p.as_f64(),
                reason: "elastic coefficient p = alpha1/rho must be >= 0",
            });
        }
        Self::new(T::one(), nu, p).map_err(|e| match e {
            Error::InvalidParameter { value, .. } => Error::InvalidParameter {
                name: "nu",
                value,
                reason: "kinematic viscosity must be positive and finite",
            },
            other => other,
        })
    }

    /// `p = nu * lambda_r` with `lambda_r` a relaxation time [s].
    pub fn from_relaxation_time(nu: T, lambda_r: T) -> Result<Self> {
        if !(lambda_r >= T::zero()) || !lambda_r.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda_r",
                value: lambda_r.as_f64(),
                reason: "relaxation time must be >= 0",
            });
        }
        Self::from_kinematic(nu, nu * lambda_r)
    }

    /// `alpha1 = E / c` from a viscoelastic constant `E` and matching
    /// constant `c`.
    ///
    /// The matching constant is quoted both as `[rho y^2/mu]^(beta-1)` and as
    /// `[rho y^2/mu]^beta` in the literature this model comes from, so it is
    /// taken here as a plain user-supplied number.
    pub fn from_viscoelastic_constant(rho: T, mu: T, e: T, c: T) -> Result<Self> {
        if !(c > T::zero()) || !c.is_finite() {
            return Err(Error::InvalidParameter {
                name: "c",
                value: c.as_f64(),
                reason: "matching constant must be positive",
            });
        }
        Self::new(rho, mu, e / c)
    }

    pub fn rho(&self) -> T {
        self.rho
    }

    pub fn mu(&self) -> T {
        self.mu
    }

    pub fn alpha1(&self) -> T {
        self.alpha1
    }

    /// Kinematic viscosity `mu / rho`.
    pub fn nu(&self) -> T {
        self.mu / self.rho
    }

    /// Elastic coefficient `alpha1 / rho` multiplying the fractional term.
    pub fn p(&self) -> T {
        self.alpha1 / self.rho
    }

    pub fn is_newtonian(&self) -> bool {
        self.alpha1 == T::zero()
    }
}

/// Order `beta` of the Riemann–Liouville derivative, strictly inside (0, 1).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct FractionalOrder<T>(T);

impl<T: Scalar> FractionalOrder<T> {
    pub fn new(beta: T) -> Result<Self> {
        if beta > T::zero() && beta < T::one() {
            Ok(Self(beta))
        } else {
            Err(Error::Domain {
                function: "FractionalOrder::new",
                value: beta.as_f64(),
                domain: "0 < beta < 1",
            })
        }
    }

    pub fn value(self) -> T {
        self.0
    }

    /// See [`j_beta`].
    pub fn j_beta(self) -> T {
        j_beta(self)
    }
}

/// Evaluation point `(y, t)` for a plate moving at `u0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FlowState<T> {
    u0: T,
    t: T,
    y: T,
    beta: FractionalOrder<T>,
}

impl<T: Scalar> FlowState<T> {
    pub fn new(u0: T, t: T, y: T, beta: FractionalOrder<T>) -> Result<Self> {
        if !(u0 > T::zero()) || !u0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "u0",
                value: u0.as_f64(),
                reason: "plate velocity must be positive",
            });
        }
        check_time(t)?;
        if !(y >= T::zero()) || !y.is_finite() {
            return Err(Error::InvalidParameter {
                name: "y",
                value: y.as_f64(),
                reason: "distance from the plate must be >= 0",
            });
        }
        Ok(Self { u0, t, y, beta })
    }

    pub fn u0(&self) -> T {
        self.u0
    }

    pub fn t(&self) -> T {
        self.t
    }

    pub fn y(&self) -> T {
        self.y
    }

    pub fn beta(&self) -> FractionalOrder<T> {
        self.beta
    }

    /// Same state at another distance from the plate.
    pub fn with_y(self, y: T) -> Result<Self> {
        Self::new(self.u0, self.t, y, self.beta)
    }

    /// Same state at another time.
    pub fn with_t(self, t: T) -> Result<Self> {
        Self::new(self.u0, t, self.y, self.beta)
    }
}

pub(crate) fn check_time<T: Scalar>(t: T) -> Result<()> {
    if t > T::zero() && t.is_finite() {
        Ok(())
    } else {
        Err(Error::SingularTime { t: t.as_f64() })
    }
}

/// Every similarity variable and dimensionless group at one state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupSet<T> {
    pub j_beta: T,
    /// Deborah number `p / (nu t^beta)`.
    pub d0: T,
    /// Elastic similarity variable, `chi^2 = D0`.
    pub chi: T,
    /// Boltzmann variable `y / sqrt(nu t)`.
    pub xi: T,
    /// `alpha1 U0^2 rho / mu^2`.
    pub eta: T,
    /// `t U0^2 / nu`.
    pub t_star: T,
    /// `y U0 / nu`.
    pub y_star: T,
}

/// `j_beta = 1/((1 - beta) Gamma(1 - beta)) = 1/Gamma(2 - beta)`.
pub fn j_beta<T: Scalar>(beta: FractionalOrder<T>) -> T {
    T::one() / gamma_pos(T::lit(2.0) - beta.value())
}

/// Deborah number `D0 = p / (nu t^beta)`.
pub fn deborah_d0<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>) -> T {
    params.p() / (params.nu() * state.t().powf(state.beta().value()))
}

/// Elasticity number. Taken to be the same ratio as [`deborah_d0`]: the
/// printed `alpha1 / t^beta` is not dimensionless, while the chain of
/// identities that introduces it reduces to `p / (nu t^beta)`.
pub fn elasticity_number<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>) -> T {
    deborah_d0(params, state)
}

/// Fills a [`GroupSet`] for `state`.
pub fn similarity<T: Scalar>(params: &FluidParameters<T>, state: &FlowState<T>) -> GroupSet<T> {
    let nu = params.nu();
    let t = state.t();
    let u0 = state.u0();
    let d0 = deborah_d0(params, state);
    GroupSet {
        j_beta: j_beta(state.beta()),
        d0,
        chi: d0.sqrt(),
        xi: state.y() / (nu * t).sqrt(),
        eta: params.alpha1() * u0 * u0 * params.rho() / (params.mu() * params.mu()),
        t_star: t * u0 * u0 / nu,
        y_star: state.y() * u0 / nu,
    }
}
