//! Integral-balance (penetration depth) solution of Stokes' first problem
//! for a generalized second grade fluid whose elastic stress carries a
//! Riemann–Liouville derivative of order `0 < beta < 1`.
//!
//! * [`specfun`]: Gamma, erf, Lambert W.
//! * [`groups`]: fluid parameters, evaluation point, `xi`, `D0 = chi^2`, `eta`.
//! * [`kinematics`]: penetration depths, velocity profiles, stress, and the
//!   exact Newtonian solution.
//! * [`optimizer`]: profile exponent from residual minimization.
//! * [`oracle`]: implicit L1 finite-difference solver used as ground truth.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix the scalar to `f64`.

// `!(x > 0)` style guards are kept so NaN is rejected with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod groups;
pub mod kinematics;
pub mod optimizer;
pub mod oracle;
pub mod quadrature;
pub mod scalar;
pub mod specfun;
pub mod tridiag;

pub use error::{Error, Result};
pub use groups::{deborah_d0, j_beta, similarity, FlowState, FluidParameters, FractionalOrder, GroupSet};
pub use kinematics::{
    newtonian_exact, penetration_depth, profile, relative_depth, stress, velocity, FieldSample,
    Formulation, PenetrationDepth, ProfileSpec,
};
pub use optimizer::{
    optimal_n_closed, optimize_n, residual_l2, ExponentMethod, ExponentResult, ResidualReport,
};
pub use oracle::{compare, solve, Grid, OracleSolution, SliceMetrics};
pub use scalar::Scalar;

pub type Fluid = groups::FluidParameters<f64>;
pub type Order = groups::FractionalOrder<f64>;
pub type State = groups::FlowState<f64>;
pub type Groups = groups::GroupSet<f64>;
pub type Profile = kinematics::ProfileSpec<f64>;
pub type Depth = kinematics::PenetrationDepth<f64>;
pub type Sample = kinematics::FieldSample<f64>;
pub type Residual = optimizer::ResidualReport<f64>;
pub type Exponent = optimizer::ExponentResult<f64>;
pub type OracleGrid = oracle::Grid<f64>;
pub type Oracle = oracle::OracleSolution<f64>;
pub type Metrics = oracle::SliceMetrics<f64>;
