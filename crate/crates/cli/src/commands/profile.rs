use stokes_hbim::{similarity, stress, FlowState, Formulation};

use super::ordered;
use crate::config::{FormulationArg, ProfileArgs, Stamp};
use crate::csv::{self, num, CsvWriter};
use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 10] = ["beta", "t", "y", "xi", "chi", "d0", "u_over_u0", "u", "stress", "formulation"];

/// Rows ordered by beta, then t, then y.
pub fn run(args: &ProfileArgs) -> CliResult<()> {
    let fluid = args.common.fluid.require()?;
    let u0 = args.common.u0()?;
    let betas = args.common.betas()?;
    let times = args.times.resolve()?;
    let ys = args.space.resolve()?;
    let spec = args.shape.resolve(2.35)?;
    let formulation: Formulation = args.formulation.unwrap_or(FormulationArg::Main).into();
    if formulation == Formulation::Example1 && fluid.is_newtonian() {
        return Err(CliError::config("--formulation example1 requires p > 0"));
    }

    let mut stamp = Stamp::new("profile");
    stamp
        .fluid(&fluid)
        .push("u0", u0)
        .list("beta", &betas.iter().map(|b| b.value()).collect::<Vec<_>>())
        .list("t", &times)
        .list("y", &ys)
        .shape(&spec)
        .push("formulation", formulation.name());

    let mut points = Vec::with_capacity(betas.len() * times.len() * ys.len());
    for &beta in &betas {
        for &t in &times {
            for &y in &ys {
                points.push((beta, t, y));
            }
        }
    }
    let rows = ordered(&points, |&(beta, t, y)| {
        let state = FlowState::new(u0, t, y, beta).map_err(|e| CliError::config(e.to_string()))?;
        let g = similarity(&fluid, &state);
        let sample = stress(&fluid, &state, &spec, formulation)
            .map_err(|e| CliError::numerical(format!("stress at t={t}, y={y}"), e))?;
        Ok(vec![
            num(beta.value()),
            num(t),
            num(y),
            num(g.xi),
            num(g.chi),
            num(g.d0),
            num(sample.u_over_u0),
            num(u0 * sample.u_over_u0),
            num(sample.stress),
            formulation.name().to_string(),
        ])
    })?;

    let (sink, label) = csv::open(args.common.out.as_deref())?;
    let mut w = CsvWriter::new(sink, &label, &stamp, &HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()
}
