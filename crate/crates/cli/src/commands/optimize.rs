use stokes_hbim::optimizer::{optimize_n_with_nodes, DEFAULT_BRACKET, DEFAULT_NODES, DEFAULT_TOL};
use stokes_hbim::{deborah_d0, optimal_n_closed, FlowState, FluidParameters, FractionalOrder};

use super::ordered;
use crate::config::{OptimizeArgs, Stamp};
use crate::csv::{self, num, opt, CsvWriter};
use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 9] = [
    "beta",
    "t",
    "d0",
    "n_closed",
    "n_numeric",
    "residual",
    "discrepancy",
    "below_validity_floor",
    "nodes",
];

#[derive(Debug, Clone, Copy)]
struct Point {
    beta: FractionalOrder<f64>,
    t: f64,
    fluid: FluidParameters<f64>,
}

/// With `--d0`, each value is realized as `nu = 1, t = 1, p = D0`; the
/// optimum depends on `D0` and `beta` only.
pub fn run(args: &OptimizeArgs) -> CliResult<()> {
    let betas = args.common.betas()?;
    let bracket = (
        args.n_lo.unwrap_or(DEFAULT_BRACKET.0),
        args.n_hi.unwrap_or(DEFAULT_BRACKET.1),
    );
    let tol = args.tol.unwrap_or(DEFAULT_TOL);
    let nodes = args.nodes.unwrap_or(DEFAULT_NODES);
    let u0 = args.common.u0()?;

    let mut stamp = Stamp::new("optimize");
    let mut points = Vec::new();
    if let Some(d0s) = &args.d0 {
        if args.common.fluid.resolve()?.is_some() || !args.times.is_empty() {
            return Err(CliError::config("--d0 replaces the fluid and time flags; give one or the other"));
        }
        for &d0 in &d0s.0 {
            if !(d0 >= 0.0) || !d0.is_finite() {
                return Err(CliError::config(format!("--d0 values must be >= 0, got {d0}")));
            }
        }
        stamp.list("d0", &d0s.0);
        for &beta in &betas {
            for &d0 in &d0s.0 {
                let fluid = FluidParameters::from_kinematic(1.0, d0).map_err(|e| CliError::config(e.to_string()))?;
                points.push(Point { beta, t: 1.0, fluid });
            }
        }
    } else {
        let fluid = args.common.fluid.require()?;
        let times = args.times.resolve()?;
        stamp.fluid(&fluid).list("t", &times);
        for &beta in &betas {
            for &t in &times {
                points.push(Point { beta, t, fluid });
            }
        }
    }
    stamp
        .push("u0", u0)
        .list("beta", &betas.iter().map(|b| b.value()).collect::<Vec<_>>())
        .push("n_lo", bracket.0)
        .push("n_hi", bracket.1)
        .push("tol", tol)
        .push("nodes", nodes);

    let rows = ordered(&points, |pt| {
        let state = FlowState::new(u0, pt.t, 0.0, pt.beta).map_err(|e| CliError::config(e.to_string()))?;
        let d0 = deborah_d0(&pt.fluid, &state);
        let closed = if d0 > 0.0 { optimal_n_closed(d0).ok() } else { None };
        let numeric = optimize_n_with_nodes(&pt.fluid, &state, bracket, tol, nodes).map_err(|e| {
            CliError::numerical(format!("optimize at beta={}, t={}, D0={d0}", pt.beta.value(), pt.t), e)
        })?;
        let n_closed = closed.map(|c| c.n_opt);
        Ok(vec![
            num(pt.beta.value()),
            num(pt.t),
            num(d0),
            opt(n_closed),
            num(numeric.n_opt),
            opt(numeric.residual_l2),
            opt(n_closed.map(|c| numeric.n_opt - c)),
            closed.map(|c| c.below_validity_floor.to_string()).unwrap_or_default(),
            nodes.to_string(),
        ])
    })?;

    let (sink, label) = csv::open(args.common.out.as_deref())?;
    let mut w = CsvWriter::new(sink, &label, &stamp, &HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()
}
