use thiserror::Error;

/// Errors raised by the closed forms, the optimizer and the reference solver.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("{function}: argument {value} outside domain ({domain})")]
    Domain {
        function: &'static str,
        value: f64,
        domain: &'static str,
    },

    #[error("invalid parameter `{name}` = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    #[error("time t = {t} is singular; groups scale with t^-beta and require t > 0")]
    SingularTime { t: f64 },

    #[error("{quantity} is undefined when p = 0 (rescaling by sqrt(p))")]
    UndefinedWithoutElasticity { quantity: &'static str },

    #[error(
        "squared residual is not integrable for n = {n}: (1 - y/delta)^(2n - 4) needs n > 1.5"
    )]
    NotIntegrable { n: f64 },

    #[error("minimum of the residual sits at bracket endpoint n = {at} of [{lo}, {hi}]")]
    NoMinimumInBracket { lo: f64, hi: f64, at: f64 },

    #[error("disturbance reached the far boundary y_max = {y_max} at t = {t}")]
    FarBoundary { y_max: f64, t: f64 },

    #[error("penetration depth {delta} at t = {t} exceeds grid extent y_max = {y_max}")]
    GridCoverage { delta: f64, t: f64, y_max: f64 },

    #[error("tridiagonal solve failed: zero pivot at row {row}")]
    SingularSystem { row: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
