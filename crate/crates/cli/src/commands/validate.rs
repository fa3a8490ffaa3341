use stokes_hbim::kinematics::elastic_stretch;
use stokes_hbim::oracle::{solve_with, OracleOptions, FAR_FIELD_TOL, MIN_CELLS};
use stokes_hbim::{compare, profile, Error, FluidParameters, FractionalOrder, Grid, OracleSolution, ProfileSpec};

use crate::config::{Stamp, ValidateArgs};
use crate::csv::{self, num, CsvWriter};
use crate::error::{CliError, CliResult};

pub const HEADER: [&str; 8] = [
    "t",
    "linf",
    "l2",
    "empirical_depth",
    "closed_form_depth",
    "depth_ratio",
    "within_tolerance",
    "verdict",
];

pub const FIELD_HEADER: [&str; 4] = ["t", "y", "u_oracle", "u_closed_form"];

pub const DEFAULT_NY: usize = 256;
pub const DEFAULT_NT: usize = 256;
pub const DEFAULT_TOL_LINF: f64 = 0.05;
pub const DEFAULT_DEPTH_BAND: (f64, f64) = (0.5, 1.5);
/// Domain length in closed-form depths at `t_end`.
pub const COVER_FACTOR: f64 = 3.0;

/// Outcome of one validation run.
#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub passed: bool,
    pub warnings: Vec<String>,
}

pub fn run(args: &ValidateArgs) -> CliResult<Verdict> {
    let fluid = args.common.fluid.require()?;
    let u0 = args.common.u0()?;
    let betas = args.common.betas()?;
    let [beta] = betas[..] else {
        return Err(CliError::config("validate takes a single --beta"));
    };
    let spec = args.shape.resolve(2.35)?;
    let t_end = args.t_end.unwrap_or(1.0);
    if !(t_end > 0.0) || !t_end.is_finite() {
        return Err(CliError::config(format!("--t-end must be positive, got {t_end}")));
    }
    let times = match &args.t {
        Some(list) => list.0.clone(),
        None => vec![0.5 * t_end, t_end],
    };
    if let Some(bad) = times.iter().find(|&&t| !(t > 0.0 && t <= t_end)) {
        return Err(CliError::config(format!("comparison time {bad} outside (0, t_end]")));
    }
    let ny = args.ny.unwrap_or(DEFAULT_NY);
    let nt = args.nt.unwrap_or(DEFAULT_NT);
    let tol_linf = args.tol_linf.unwrap_or(DEFAULT_TOL_LINF);
    let band = args
        .depth_band
        .map(|b| (b.lo, b.hi))
        .unwrap_or(DEFAULT_DEPTH_BAND);
    let y_max = match args.y_max {
        Some(y) => y,
        None => COVER_FACTOR * front(&fluid, beta, &spec, t_end),
    };

    let mut warnings = Vec::new();
    let mut warn = |msg: String| {
        eprintln!("{msg}");
        warnings.push(msg);
    };
    let coarse = ny < MIN_CELLS || nt < MIN_CELLS;
    let grid = if coarse {
        warn(format!(
            "warning: grid {ny}x{nt} is below {MIN_CELLS} intervals per dimension; results are not converged"
        ));
        Grid::coarse(y_max, ny, t_end, nt)
    } else {
        Grid::new(y_max, ny, t_end, nt)
    }
    .map_err(|e| CliError::config(e.to_string()))?;

    // an unconverged grid may smear the front onto the far boundary
    let options = OracleOptions {
        history_window: None,
        allow_far_field: coarse,
    };
    let oracle = solve_with(&fluid, u0, beta, grid, &options).map_err(|e| match e {
        Error::FarBoundary { .. } => CliError::numerical("oracle solve; increase --y-max", e),
        _ => CliError::numerical("oracle solve", e),
    })?;
    if coarse && oracle.profile(grid.nt())[grid.ny() - 1].abs() > FAR_FIELD_TOL * u0 {
        warn("warning: disturbance reached the far boundary".to_string());
    }
    let metrics = compare(&oracle, &fluid, &spec, &times)
        .map_err(|e| CliError::numerical("closed form vs oracle", e))?;

    let mut stamp = Stamp::new("validate");
    stamp
        .fluid(&fluid)
        .push("u0", u0)
        .push("beta", beta.value())
        .shape(&spec)
        .push("t_end", t_end)
        .push("ny", ny)
        .push("nt", nt)
        .push("y_max", y_max)
        .list("t", &times)
        .push("tol_linf", tol_linf)
        .push("tol_l2", args.tol_l2.map(|x| x.to_string()).unwrap_or_else(|| "none".into()))
        .push("depth_band", format!("{}:{}", band.0, band.1));

    let mut passed = true;
    let mut rows = Vec::with_capacity(metrics.len());
    for m in &metrics {
        let linf = m.linf / u0;
        let l2 = m.l2 / u0;
        let within = linf <= tol_linf && args.tol_l2.is_none_or(|tol| l2 <= tol);
        let in_band = (band.0..=band.1).contains(&m.depth_ratio);
        let ok = within && in_band;
        passed &= ok;
        rows.push(vec![
            num(m.t),
            num(linf),
            num(l2),
            num(m.empirical_depth),
            num(m.closed_form_depth),
            num(m.depth_ratio),
            within.to_string(),
            if ok { "PASS" } else { "FAIL" }.to_string(),
        ]);
    }

    let (sink, label) = csv::open(args.common.out.as_deref())?;
    let mut w = CsvWriter::new(sink, &label, &stamp, &HEADER)?;
    for r in &rows {
        w.row(r)?;
    }
    w.finish()?;

    if let Some(path) = &args.dump_field {
        let (sink, label) = csv::open(Some(path))?;
        dump_field(sink, &label, &stamp, &oracle, &fluid, &spec)?;
    }
    Ok(Verdict { passed, warnings })
}

fn front(fluid: &FluidParameters<f64>, beta: FractionalOrder<f64>, spec: &ProfileSpec<f64>, t: f64) -> f64 {
    let d0 = fluid.p() / (fluid.nu() * t.powf(beta.value()));
    (fluid.nu() * t).sqrt() * spec.front(elastic_stretch(beta, d0))
}

/// Full field in long format, t-major.
pub fn dump_field(
    sink: csv::Sink,
    label: &str,
    stamp: &Stamp,
    oracle: &OracleSolution<f64>,
    fluid: &FluidParameters<f64>,
    spec: &ProfileSpec<f64>,
) -> CliResult<()> {
    let grid = *oracle.grid();
    let beta = oracle.beta();
    let u0 = oracle.u0();
    let mut w = CsvWriter::new(sink, label, stamp, &FIELD_HEADER)?;
    for k in 0..=grid.nt() {
        let t = grid.t(k);
        let row = oracle.profile(k);
        let closed = |y: f64| {
            if k == 0 {
                return 0.0;
            }
            let r = elastic_stretch(beta, fluid.p() / (fluid.nu() * t.powf(beta.value())));
            u0 * profile(y / (fluid.nu() * t).sqrt(), r, spec)
        };
        for (i, &u) in row.iter().enumerate() {
            let y = grid.y(i);
            w.row(&[num(t), num(y), num(u), num(closed(y))])?;
        }
    }
    w.finish()
}
