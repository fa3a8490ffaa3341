use stokes_hbim::{penetration_depth, similarity, FlowState};

use super::ordered;
use crate::config::{DepthArgs, Stamp};
use crate::csv::{self, num, opt, CsvWriter};
use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 11] = [
    "beta", "t", "t_star", "d0", "n", "delta", "delta_bar", "delta_star", "Delta", "Delta1", "Delta2",
];

/// Rows ordered by beta, then t. `delta_bar` is empty for a Newtonian fluid.
pub fn run(args: &DepthArgs) -> CliResult<()> {
    let fluid = args.common.fluid.require()?;
    let u0 = args.common.u0()?;
    let betas = args.common.betas()?;
    let times = args.times.resolve()?;
    let spec = args.shape.resolve(2.35)?;

    let mut stamp = Stamp::new("depth");
    stamp
        .fluid(&fluid)
        .push("u0", u0)
        .list("beta", &betas.iter().map(|b| b.value()).collect::<Vec<_>>())
        .list("t", &times)
        .shape(&spec);

    let points: Vec<_> = betas.iter().flat_map(|&b| times.iter().map(move |&t| (b, t))).collect();
    let rows = ordered(&points, |&(beta, t)| {
        let state = FlowState::new(u0, t, 0.0, beta).map_err(|e| CliError::config(e.to_string()))?;
        let g = similarity(&fluid, &state);
        let d = penetration_depth(&fluid, &state, &spec);
        Ok(vec![
            num(beta.value()),
            num(t),
            num(g.t_star),
            num(g.d0),
            num(d.n),
            num(d.delta),
            opt(d.delta_bar),
            num(d.delta_star),
            num(d.relative),
            num(d.relative_rescaled),
            num(d.relative_dimensionless),
        ])
    })?;

    let (sink, label) = csv::open(args.common.out.as_deref())?;
    let mut w = CsvWriter::new(sink, &label, &stamp, &HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()
}
