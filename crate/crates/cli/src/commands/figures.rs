//! Figure data. Each panel is one CSV; grids are fixed so reruns are
//! byte-identical.

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use stokes_hbim::kinematics::{
    dimensionless_depth, dimensionless_relative_depth, profile_factor, profile_in_similarity, rescaled_depth,
};
use stokes_hbim::{newtonian_exact, profile, FractionalOrder, ProfileSpec};

use crate::config::{snap, FiguresArgs, Stamp};
use crate::csv::{self, num, CsvWriter};
use crate::error::{CliError, CliResult};

pub const FIGURE_IDS: [&str; 9] = ["1a", "1b", "1c", "1d", "2", "3", "4", "5", "6"];

/// Fractional orders shown side by side in the depth and time-history panels.
pub const BETA_SWEEP: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];
/// `eta` of the relative-depth panels.
pub const FIG1_ETA: f64 = 1.0;
/// Exponents of the profile-shape panel, besides the self-adaptive one.
pub const FIG1D_EXPONENTS: [f64; 3] = [2.0, 3.0, 2.35];
pub const FIG2_BETAS: [f64; 3] = [0.1, 0.5, 0.9];
pub const FIG2_EXPONENTS: [f64; 2] = [2.0, 3.0];
pub const FIG2_CHIS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 4.0];
pub const FIG3_P_OVER_NU: [f64; 3] = [0.5, 1.0, 2.0];
pub const FIG3_Y_BAR: [f64; 3] = [0.05, 0.1, 0.2];
pub const FIG4_P_OVER_NU: [f64; 5] = [0.1, 0.5, 1.0, 5.0, 10.0];
pub const FIG4_GRID_P_OVER_NU: [f64; 7] = [0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0];
pub const FIG5_D0_MAX: [f64; 4] = [1.0, 5.0, 10.0, 20.0];
pub const FIG5_Y_BAR: f64 = 0.5;
pub const FIG6_T_STAR: [f64; 3] = [0.1, 1.0, 10.0];
pub const FIG6_ETAS: [f64; 5] = [0.0, 0.5, 1.0, 2.0, 5.0];
/// Example 1 and 2 panels use this exponent and (except Fig. 5) this order.
pub const EXAMPLE_N: f64 = 2.0;
pub const EXAMPLE_BETA: f64 = 0.5;

/// One CSV worth of figure data.
#[derive(Debug, Clone, PartialEq)]
pub struct Panel {
    pub name: String,
    pub header: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    /// Extra stamp entries.
    pub notes: Vec<(String, String)>,
}

impl Panel {
    fn new(name: &str, header: Vec<String>) -> Self {
        Self {
            name: name.to_string(),
            header,
            rows: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn note(mut self, key: &str, value: impl ToString) -> Self {
        self.notes.push((key.to_string(), value.to_string()));
        self
    }

    /// Column by header name.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.header.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[j]).collect())
    }
}

fn order(beta: f64) -> CliResult<FractionalOrder<f64>> {
    FractionalOrder::new(beta).map_err(|e| CliError::numerical("figure order", e))
}

fn fixed(n: f64) -> CliResult<ProfileSpec<f64>> {
    ProfileSpec::fixed(n).map_err(|e| CliError::numerical("figure exponent", e))
}

fn grid(start: f64, stop: f64, count: usize) -> Vec<f64> {
    (0..=count)
        .map(|i| snap(start + (stop - start) * i as f64 / count as f64))
        .collect()
}

fn layer(y: f64, delta: f64, n: f64) -> f64 {
    if y >= delta {
        0.0
    } else {
        (1.0 - y / delta).powf(n)
    }
}

fn label(prefix: &str, x: f64) -> String {
    format!("{prefix}{x}")
}

/// Relative depth `Delta2` of the dimensionless formulation against `t*`.
pub fn fig1_depth(name: &str, t_star: &[f64]) -> CliResult<Panel> {
    let mut header = vec!["t_star".to_string()];
    header.extend(BETA_SWEEP.iter().map(|&b| label("delta2_beta", b)));
    let mut panel = Panel::new(name, header).note("eta", FIG1_ETA);
    for &ts in t_star {
        let mut row = vec![ts];
        for &b in &BETA_SWEEP {
            row.push(
                dimensionless_relative_depth(FIG1_ETA, ts, order(b)?)
                    .map_err(|e| CliError::numerical("relative depth", e))?,
            );
        }
        panel.rows.push(row);
    }
    Ok(panel)
}

pub fn fig1a() -> CliResult<Panel> {
    fig1_depth("fig1a", &grid(0.01, 1.0, 99))
}

pub fn fig1b() -> CliResult<Panel> {
    fig1_depth("fig1b", &grid(1.0, 10.0, 90))
}

pub fn fig1c() -> CliResult<Panel> {
    let t: Vec<f64> = (0..=100).map(|k| snap(10.0 * 100f64.powf(k as f64 / 100.0))).collect();
    fig1_depth("fig1c", &t)
}

/// Newtonian profiles for the fixed exponents, the self-adaptive profile,
/// and the exact solution, against `xi`.
pub fn fig1d() -> CliResult<Panel> {
    let mut header = vec!["xi".to_string()];
    header.extend(FIG1D_EXPONENTS.iter().map(|&n| label("n_", n)));
    header.push("self_adaptive".into());
    header.push("exact".into());
    let mut panel = Panel::new("fig1d", header).note("d0", 0);
    let specs: Vec<ProfileSpec<f64>> = FIG1D_EXPONENTS
        .iter()
        .map(|&n| fixed(n))
        .chain(std::iter::once(Ok(ProfileSpec::default_self_adaptive())))
        .collect::<CliResult<_>>()?;
    for xi in grid(0.0, 5.0, 200) {
        let mut row = vec![xi];
        row.extend(specs.iter().map(|s| profile(xi, 1.0, s)));
        row.push(newtonian_exact(xi));
        panel.rows.push(row);
    }
    Ok(panel)
}

/// Profiles in `(xi, chi)` for one `(beta, n)`.
pub fn fig2_panel(beta: f64, n: f64) -> CliResult<Panel> {
    let mut header = vec!["xi".to_string()];
    header.extend(FIG2_CHIS.iter().map(|&c| label("chi_", c)));
    let name = format!("fig2_beta{beta}_n{n}");
    let mut panel = Panel::new(&name, header).note("beta", beta).note("n", n);
    let (b, spec) = (order(beta)?, fixed(n)?);
    for xi in grid(0.0, 10.0, 200) {
        let mut row = vec![xi];
        row.extend(FIG2_CHIS.iter().map(|&chi| profile_in_similarity(xi, chi, b, &spec)));
        panel.rows.push(row);
    }
    Ok(panel)
}

/// Max deviation of `u/U0(xi)` from its chord over `[0, F_n]`, sampled at
/// 401 points. Smaller is more linear.
pub fn chord_deviation(beta: f64, n: f64, chi: f64) -> CliResult<f64> {
    let (b, spec) = (order(beta)?, fixed(n)?);
    let width = profile_factor(n);
    let u_end = profile_in_similarity(width, chi, b, &spec);
    Ok(grid(0.0, width, 400).into_iter().fold(0.0_f64, |m, xi| {
        let chord = 1.0 + (u_end - 1.0) * xi / width;
        m.max((profile_in_similarity(xi, chi, b, &spec) - chord).abs())
    }))
}

pub fn fig2_linearity() -> CliResult<Panel> {
    let header = ["beta", "n", "chi", "chord_deviation"].map(String::from).to_vec();
    let mut panel = Panel::new("fig2_linearity", header);
    for &beta in &FIG2_BETAS {
        for &n in &FIG2_EXPONENTS {
            for &chi in &FIG2_CHIS {
                panel.rows.push(vec![beta, n, chi, chord_deviation(beta, n, chi)?]);
            }
        }
    }
    Ok(panel)
}

fn example1_velocity(p_over_nu: f64, t: f64, y_bar: f64, beta: f64) -> CliResult<f64> {
    let delta_bar =
        rescaled_depth(p_over_nu, t, order(beta)?, EXAMPLE_N).map_err(|e| CliError::numerical("rescaled depth", e))?;
    Ok(layer(y_bar, delta_bar, EXAMPLE_N))
}

/// Short-time histories at fixed `y_bar`, long format.
pub fn fig3() -> CliResult<Panel> {
    let header = ["p_over_nu", "y_bar", "t", "u_over_u0"].map(String::from).to_vec();
    let mut panel = Panel::new("fig3", header)
        .note("formulation", "example1")
        .note("n", EXAMPLE_N)
        .note("beta", EXAMPLE_BETA);
    for &r in &FIG3_P_OVER_NU {
        for &y in &FIG3_Y_BAR {
            for t in grid(0.001, 0.1, 99) {
                panel.rows.push(vec![r, y, t, example1_velocity(r, t, y, EXAMPLE_BETA)?]);
            }
        }
    }
    Ok(panel)
}

fn fig4_profiles(name: &str, y_max: f64) -> CliResult<Panel> {
    let t = 0.1;
    let mut header = vec!["y_bar".to_string()];
    header.extend(FIG4_P_OVER_NU.iter().map(|&r| label("p_over_nu_", r)));
    let mut panel = Panel::new(name, header)
        .note("formulation", "example1")
        .note("n", EXAMPLE_N)
        .note("beta", EXAMPLE_BETA)
        .note("t", t);
    for y in grid(0.0, y_max, 100) {
        let mut row = vec![y];
        for &r in &FIG4_P_OVER_NU {
            row.push(example1_velocity(r, t, y, EXAMPLE_BETA)?);
        }
        panel.rows.push(row);
    }
    Ok(panel)
}

fn fig4_grid(name: &str, t: f64) -> CliResult<Panel> {
    let header = ["p_over_nu", "y_bar", "u_over_u0"].map(String::from).to_vec();
    let mut panel = Panel::new(name, header)
        .note("formulation", "example1")
        .note("n", EXAMPLE_N)
        .note("beta", EXAMPLE_BETA)
        .note("t", t);
    for &r in &FIG4_GRID_P_OVER_NU {
        for y in grid(0.0, 3.0, 60) {
            panel.rows.push(vec![r, y, example1_velocity(r, t, y, EXAMPLE_BETA)?]);
        }
    }
    Ok(panel)
}

pub fn fig4() -> CliResult<Vec<Panel>> {
    Ok(vec![
        fig4_profiles("fig4a", 0.5)?,
        fig4_profiles("fig4b", 5.0)?,
        fig4_grid("fig4c", 0.1)?,
        fig4_grid("fig4d", 1.0)?,
    ])
}

/// Histories at `y_bar = 0.5` across `beta`, with `p/nu` set so that
/// `D0(t = 0.1, beta = 0.9)` equals the panel's `D0max`.
pub fn fig5_panel(name: &str, d0_max: f64) -> CliResult<Panel> {
    let p_over_nu = d0_max * 0.1_f64.powf(0.9);
    let mut header = vec!["t".to_string()];
    header.extend(BETA_SWEEP.iter().map(|&b| label("beta_", b)));
    let mut panel = Panel::new(name, header)
        .note("formulation", "example1")
        .note("n", EXAMPLE_N)
        .note("y_bar", FIG5_Y_BAR)
        .note("d0_max", d0_max)
        .note("p_over_nu", p_over_nu);
    for t in grid(0.1, 1.0, 90) {
        let mut row = vec![t];
        for &b in &BETA_SWEEP {
            row.push(example1_velocity(p_over_nu, t, FIG5_Y_BAR, b)?);
        }
        panel.rows.push(row);
    }
    Ok(panel)
}

pub fn fig5() -> CliResult<Vec<Panel>> {
    ["fig5a", "fig5b", "fig5c", "fig5d"]
        .iter()
        .zip(FIG5_D0_MAX)
        .map(|(name, d)| fig5_panel(name, d))
        .collect()
}

/// Dimensionless profiles against `y*` at one `t*`, across `eta`.
pub fn fig6_panel(name: &str, t_star: f64) -> CliResult<Panel> {
    let b = order(EXAMPLE_BETA)?;
    let depth = |eta: f64| {
        dimensionless_depth(eta, t_star, b, EXAMPLE_N).map_err(|e| CliError::numerical("dimensionless depth", e))
    };
    let deepest = FIG6_ETAS.iter().try_fold(0.0_f64, |m, &eta| depth(eta).map(|d| m.max(d)))?;
    let deltas: Vec<f64> = FIG6_ETAS.iter().map(|&eta| depth(eta)).collect::<CliResult<_>>()?;
    let mut header = vec!["y_star".to_string()];
    header.extend(FIG6_ETAS.iter().map(|&e| label("eta_", e)));
    let mut panel = Panel::new(name, header)
        .note("formulation", "example2")
        .note("n", EXAMPLE_N)
        .note("beta", EXAMPLE_BETA)
        .note("t_star", t_star);
    for y in grid(0.0, snap(1.05 * deepest), 200) {
        let mut row = vec![y];
        row.extend(deltas.iter().map(|&d| layer(y, d, EXAMPLE_N)));
        panel.rows.push(row);
    }
    Ok(panel)
}

pub fn fig6() -> CliResult<Vec<Panel>> {
    ["fig6a", "fig6b", "fig6c"]
        .iter()
        .zip(FIG6_T_STAR)
        .map(|(name, t)| fig6_panel(name, t))
        .collect()
}

/// All panels of one figure id.
pub fn panels(id: &str) -> CliResult<Vec<Panel>> {
    match id {
        "1a" => Ok(vec![fig1a()?]),
        "1b" => Ok(vec![fig1b()?]),
        "1c" => Ok(vec![fig1c()?]),
        "1d" => Ok(vec![fig1d()?]),
        "2" => {
            let mut out = Vec::new();
            for &b in &FIG2_BETAS {
                for &n in &FIG2_EXPONENTS {
                    out.push(fig2_panel(b, n)?);
                }
            }
            out.push(fig2_linearity()?);
            Ok(out)
        }
        "3" => Ok(vec![fig3()?]),
        "4" => fig4(),
        "5" => fig5(),
        "6" => fig6(),
        other => Err(CliError::config(format!(
            "unknown figure id '{other}'; expected one of {} or all",
            FIGURE_IDS.join(", ")
        ))),
    }
}

pub fn write_panel(dir: &Path, figure: &str, panel: &Panel) -> CliResult<PathBuf> {
    let path = dir.join(format!("{}.csv", panel.name));
    let (sink, label) = csv::open(Some(&path))?;
    let mut stamp = Stamp::new("figures");
    stamp.push("figure", figure).push("panel", &panel.name);
    for (k, v) in &panel.notes {
        stamp.push(k, v);
    }
    let header: Vec<&str> = panel.header.iter().map(String::as_str).collect();
    let mut w = CsvWriter::new(sink, &label, &stamp, &header)?;
    for r in &panel.rows {
        w.row(&r.iter().map(|&x| num(x)).collect::<Vec<_>>())?;
    }
    w.finish()?;
    Ok(path)
}

/// Writes the requested figures and returns the files in a fixed order.
pub fn run(args: &FiguresArgs) -> CliResult<Vec<PathBuf>> {
    let id = args.figure.as_deref().unwrap_or("all");
    let ids: Vec<&str> = if id == "all" { FIGURE_IDS.to_vec() } else { vec![id] };
    let dir = args.out_dir.clone().unwrap_or_else(|| PathBuf::from("figures"));
    let built: Vec<(&str, Vec<Panel>)> = ids
        .par_iter()
        .map(|&id| panels(id).map(|p| (id, p)))
        .collect::<CliResult<_>>()?;
    std::fs::create_dir_all(&dir).map_err(|e| csv::io_error(&dir.display().to_string(), e))?;
    let mut written = Vec::new();
    for (id, ps) in &built {
        for p in ps {
            written.push(write_panel(&dir, id, p)?);
        }
    }
    Ok(written)
}
