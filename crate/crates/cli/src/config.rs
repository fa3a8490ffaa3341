//! Command-line flags, the `key = value` config file, and their resolution
//! into validated library inputs.
//!
//! A config file holds one `key = value` pair per line, where `key` is any
//! long flag name without the leading dashes (`_` and `-` are equivalent).
//! `#` starts a comment. Boolean flags take `true` or `false`. Flags given
//! on the command line override values from the file.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use stokes_hbim::{Formulation, FluidParameters, FractionalOrder, ProfileSpec};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "stokes-hbim",
    version,
    about = "Integral-balance solution of Stokes' first problem for a fractional second grade fluid"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Velocity and shear stress at every (beta, t, y).
    #[command(args_override_self = true)]
    Profile(ProfileArgs),
    /// Penetration depths and relative depths at every (beta, t).
    #[command(args_override_self = true)]
    Depth(DepthArgs),
    /// Closed-form and residual-minimizing profile exponents.
    #[command(args_override_self = true)]
    Optimize(OptimizeArgs),
    /// Closed form against the finite-difference solver.
    #[command(args_override_self = true)]
    Validate(ValidateArgs),
    /// Figure data, one CSV per panel.
    #[command(args_override_self = true)]
    Figures(FiguresArgs),
}

/// Comma-separated list of numbers, e.g. `0.1,0.5,0.9`.
#[derive(Debug, Clone, PartialEq)]
pub struct List(pub Vec<f64>);

impl FromStr for List {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        s.split(',')
            .map(|x| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}")))
            .collect::<Result<Vec<_>, _>>()
            .map(List)
    }
}

/// `start:stop:step`, inclusive of `stop` up to rounding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Range {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl FromStr for Range {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        if parts.len() != 3 {
            return Err(format!("'{s}': expected start:stop:step"));
        }
        let num = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("'{x}': {e}"));
        let (start, stop, step) = (num(parts[0])?, num(parts[1])?, num(parts[2])?);
        if !(step > 0.0) || !step.is_finite() {
            return Err(format!("'{s}': step must be positive"));
        }
        if !(stop >= start) {
            return Err(format!("'{s}': stop must not be below start"));
        }
        Ok(Self { start, stop, step })
    }
}

impl Range {
    pub fn values(&self) -> Vec<f64> {
        let count = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=count).map(|i| snap(self.start + i as f64 * self.step)).collect()
    }
}

/// Rounds grid coordinates to 12 decimals so `0.1 + 2 * 0.1` prints as `0.3`.
pub fn snap(x: f64) -> f64 {
    (x * 1e12).round() / 1e12
}

/// `lo:hi` band.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Band {
    pub lo: f64,
    pub hi: f64,
}

impl FromStr for Band {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (lo, hi) = s.split_once(':').ok_or_else(|| format!("'{s}': expected lo:hi"))?;
        let lo: f64 = lo.trim().parse().map_err(|e| format!("'{lo}': {e}"))?;
        let hi: f64 = hi.trim().parse().map_err(|e| format!("'{hi}': {e}"))?;
        if !(lo <= hi) {
            return Err(format!("'{s}': lo must not exceed hi"));
        }
        Ok(Self { lo, hi })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum FormulationArg {
    Main,
    Example1,
    Example2,
}

impl From<FormulationArg> for Formulation {
    fn from(f: FormulationArg) -> Self {
        match f {
            FormulationArg::Main => Formulation::Main,
            FormulationArg::Example1 => Formulation::Example1,
            FormulationArg::Example2 => Formulation::Example2,
        }
    }
}

#[derive(Debug, Clone, Default, Args)]
pub struct FluidArgs {
    /// Kinematic viscosity mu/rho [m^2/s].
    #[arg(long)]
    pub nu: Option<f64>,
    /// Elastic coefficient alpha1/rho [m^2/s^(1-beta)]; 0 for a Newtonian fluid.
    #[arg(long)]
    pub p: Option<f64>,
    /// Normal stress modulus; requires --rho and --mu.
    #[arg(long)]
    pub alpha1: Option<f64>,
    #[arg(long)]
    pub rho: Option<f64>,
    #[arg(long)]
    pub mu: Option<f64>,
    /// Relaxation time with p = nu * lambda_r; requires --nu.
    #[arg(long)]
    pub lambda_r: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct ShapeArgs {
    /// Fixed profile exponent.
    #[arg(long)]
    pub n: Option<f64>,
    /// Self-adaptive exponent n0 + kj * W0(xi).
    #[arg(long)]
    pub adaptive: bool,
    #[arg(long)]
    pub n0: Option<f64>,
    #[arg(long)]
    pub kj: Option<f64>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct CommonArgs {
    #[command(flatten)]
    pub fluid: FluidArgs,
    /// Plate velocity [m/s].
    #[arg(long)]
    pub u0: Option<f64>,
    /// Fractional order(s) in (0, 1), comma-separated.
    #[arg(long)]
    pub beta: Option<List>,
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct TimeArgs {
    /// Times [s], comma-separated.
    #[arg(long)]
    pub t: Option<List>,
    /// Times as start:stop:step.
    #[arg(long)]
    pub t_range: Option<Range>,
}

#[derive(Debug, Clone, Default, Args)]
pub struct SpaceArgs {
    /// Distances from the plate [m], comma-separated.
    #[arg(long)]
    pub y: Option<List>,
    /// Distances as start:stop:step.
    #[arg(long)]
    pub y_range: Option<Range>,
}

#[derive(Debug, Clone, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub times: TimeArgs,
    #[command(flatten)]
    pub space: SpaceArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Formulation of the stress column.
    #[arg(long, value_enum)]
    pub formulation: Option<FormulationArg>,
}

#[derive(Debug, Clone, Args)]
pub struct DepthArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub times: TimeArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
}

#[derive(Debug, Clone, Args)]
pub struct OptimizeArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub times: TimeArgs,
    /// Deborah numbers to scan instead of a fluid and times.
    #[arg(long)]
    pub d0: Option<List>,
    /// Lower end of the exponent bracket.
    #[arg(long)]
    pub n_lo: Option<f64>,
    /// Upper end of the exponent bracket.
    #[arg(long)]
    pub n_hi: Option<f64>,
    /// Golden-section tolerance (>= 1e-6).
    #[arg(long)]
    pub tol: Option<f64>,
    /// Quadrature nodes for the residual.
    #[arg(long)]
    pub nodes: Option<usize>,
}

#[derive(Debug, Clone, Args)]
pub struct ValidateArgs {
    #[command(flatten)]
    pub common: CommonArgs,
    #[command(flatten)]
    pub shape: ShapeArgs,
    /// Comparison times [s]; defaults to t_end/2 and t_end.
    #[arg(long)]
    pub t: Option<List>,
    /// Final time of the solve [s].
    #[arg(long)]
    pub t_end: Option<f64>,
    /// Space intervals.
    #[arg(long)]
    pub ny: Option<usize>,
    /// Time steps.
    #[arg(long)]
    pub nt: Option<usize>,
    /// Domain length [m]; defaults to 3 closed-form depths at t_end.
    #[arg(long)]
    pub y_max: Option<f64>,
    /// Pass threshold for max |closed form - oracle| / U0.
    #[arg(long)]
    pub tol_linf: Option<f64>,
    /// Pass threshold for the RMS error / U0 over the layer.
    #[arg(long)]
    pub tol_l2: Option<f64>,
    /// Accepted band for empirical / closed-form depth, lo:hi.
    #[arg(long)]
    pub depth_band: Option<Band>,
    /// Also write the full oracle and closed-form fields to this CSV.
    #[arg(long)]
    pub dump_field: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct FiguresArgs {
    /// Figure id: 1a, 1b, 1c, 1d, 2, 3, 4, 5, 6 or all.
    #[arg(long)]
    pub figure: Option<String>,
    /// Directory for the panel CSVs.
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// Config file of `key = value` lines.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

/// Splices the `--config` file into `argv` right after the subcommand so
/// that later command-line flags win.
pub fn expand_argv<I: IntoIterator<Item = OsString>>(argv: I) -> CliResult<Vec<OsString>> {
    let argv: Vec<OsString> = argv.into_iter().collect();
    let mut path: Option<PathBuf> = None;
    let mut i = 0;
    while i < argv.len() {
        let a = argv[i].to_string_lossy();
        if a == "--config" {
            path = argv.get(i + 1).map(PathBuf::from);
            i += 1;
        } else if let Some(p) = a.strip_prefix("--config=") {
            path = Some(PathBuf::from(p));
        }
        i += 1;
    }
    let Some(path) = path else {
        return Ok(argv);
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| CliError::config(format!("cannot read config file {}: {e}", path.display())))?;
    let extra = config_file_args(&text, &path)?;
    let at = argv.len().min(2);
    let mut out = argv[..at].to_vec();
    out.extend(extra);
    out.extend_from_slice(&argv[at..]);
    Ok(out)
}

/// Converts `key = value` lines into flags.
pub fn config_file_args(text: &str, path: &Path) -> CliResult<Vec<OsString>> {
    let mut out = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            CliError::config(format!("{}:{}: expected key = value", path.display(), lineno + 1))
        })?;
        let key = key.trim().replace('_', "-");
        let value = value.trim();
        if key.is_empty() || key == "config" {
            return Err(CliError::config(format!(
                "{}:{}: invalid key '{key}'",
                path.display(),
                lineno + 1
            )));
        }
        match value {
            "true" => out.push(format!("--{key}").into()),
            "false" => {}
            _ => {
                out.push(format!("--{key}").into());
                out.push(value.into());
            }
        }
    }
    Ok(out)
}

impl FluidArgs {
    /// The fluid, if any parameter style was supplied.
    pub fn resolve(&self) -> CliResult<Option<FluidParameters<f64>>> {
        let material = self.alpha1.is_some() || self.rho.is_some() || self.mu.is_some();
        let built = if material {
            if self.nu.is_some() || self.p.is_some() || self.lambda_r.is_some() {
                return Err(CliError::config(
                    "--alpha1/--rho/--mu cannot be combined with --nu, --p or --lambda-r",
                ));
            }
            let (Some(rho), Some(mu), Some(alpha1)) = (self.rho, self.mu, self.alpha1) else {
                return Err(CliError::config("--alpha1, --rho and --mu must be given together"));
            };
            FluidParameters::new(rho, mu, alpha1)
        } else {
            match (self.nu, self.p, self.lambda_r) {
                (None, None, None) => return Ok(None),
                (_, Some(_), Some(_)) => {
                    return Err(CliError::config("--p and --lambda-r are alternatives; give one"))
                }
                (Some(nu), Some(p), None) => FluidParameters::from_kinematic(nu, p),
                (Some(nu), None, Some(lr)) => FluidParameters::from_relaxation_time(nu, lr),
                (Some(_), None, None) => {
                    return Err(CliError::config(
                        "--nu needs --p or --lambda-r (use --p 0 for a Newtonian fluid)",
                    ))
                }
                (None, _, _) => return Err(CliError::config("--p and --lambda-r require --nu")),
            }
        };
        built.map(Some).map_err(|e| CliError::config(e.to_string()))
    }

    pub fn require(&self) -> CliResult<FluidParameters<f64>> {
        self.resolve()?.ok_or_else(|| {
            CliError::config("fluid parameters missing: give --nu with --p, --nu with --lambda-r, or --alpha1 --rho --mu")
        })
    }
}

impl ShapeArgs {
    pub fn resolve(&self, default_n: f64) -> CliResult<ProfileSpec<f64>> {
        let spec = if self.adaptive {
            if self.n.is_some() {
                return Err(CliError::config("--n and --adaptive are alternatives; give one"));
            }
            ProfileSpec::self_adaptive(self.n0.unwrap_or(1.675), self.kj.unwrap_or(0.5))
        } else {
            if self.n0.is_some() || self.kj.is_some() {
                return Err(CliError::config("--n0 and --kj require --adaptive"));
            }
            ProfileSpec::fixed(self.n.unwrap_or(default_n))
        };
        spec.map_err(|e| CliError::config(e.to_string()))
    }
}

impl CommonArgs {
    pub fn u0(&self) -> CliResult<f64> {
        let u0 = self.u0.unwrap_or(1.0);
        if !(u0 > 0.0) || !u0.is_finite() {
            return Err(CliError::config(format!("--u0 must be positive, got {u0}")));
        }
        Ok(u0)
    }

    pub fn betas(&self) -> CliResult<Vec<FractionalOrder<f64>>> {
        let list = self
            .beta
            .as_ref()
            .ok_or_else(|| CliError::config("--beta is required"))?;
        list.0
            .iter()
            .map(|&b| FractionalOrder::new(b).map_err(|e| CliError::config(format!("--beta: {e}"))))
            .collect()
    }
}

impl TimeArgs {
    pub fn resolve(&self) -> CliResult<Vec<f64>> {
        let values = pick("t", self.t.as_ref(), self.t_range.as_ref())?;
        if let Some(bad) = values.iter().find(|&&t| !(t > 0.0) || !t.is_finite()) {
            return Err(CliError::config(format!("times must be positive, got {bad}")));
        }
        Ok(values)
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_none() && self.t_range.is_none()
    }
}

impl SpaceArgs {
    pub fn resolve(&self) -> CliResult<Vec<f64>> {
        let values = pick("y", self.y.as_ref(), self.y_range.as_ref())?;
        if let Some(bad) = values.iter().find(|&&y| !(y >= 0.0) || !y.is_finite()) {
            return Err(CliError::config(format!("distances must be >= 0, got {bad}")));
        }
        Ok(values)
    }
}

fn pick(name: &str, list: Option<&List>, range: Option<&Range>) -> CliResult<Vec<f64>> {
    match (list, range) {
        (Some(_), Some(_)) => Err(CliError::config(format!("--{name} and --{name}-range are alternatives"))),
        (Some(l), None) => Ok(l.0.clone()),
        (None, Some(r)) => Ok(r.values()),
        (None, None) => Err(CliError::config(format!("--{name} or --{name}-range is required"))),
    }
}

/// Reproducibility stamp: `key=value` pairs in a fixed order.
#[derive(Debug, Clone, Default)]
pub struct Stamp {
    entries: Vec<(String, String)>,
}

impl Stamp {
    pub fn new(command: &str) -> Self {
        let mut s = Self::default();
        s.push("command", command);
        s
    }

    pub fn push(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.entries.push((key.to_string(), value.to_string()));
        self
    }

    pub fn list(&mut self, key: &str, values: &[f64]) -> &mut Self {
        let joined = values.iter().map(f64::to_string).collect::<Vec<_>>().join(",");
        self.push(key, joined)
    }

    pub fn fluid(&mut self, fluid: &FluidParameters<f64>) -> &mut Self {
        self.push("rho", fluid.rho())
            .push("mu", fluid.mu())
            .push("alpha1", fluid.alpha1())
            .push("nu", fluid.nu())
            .push("p", fluid.p())
    }

    pub fn shape(&mut self, spec: &ProfileSpec<f64>) -> &mut Self {
        match *spec {
            ProfileSpec::FixedExponent { n } => self.push("n", n),
            ProfileSpec::SelfAdaptive { n0, kj } => self.push("adaptive", true).push("n0", n0).push("kj", kj),
        }
    }

    pub fn line(&self) -> String {
        let mut out = format!("# stokes-hbim {}", env!("CARGO_PKG_VERSION"));
        for (k, v) in &self.entries {
            let _ = write!(out, " {k}={v}");
        }
        out
    }
}
