//! Finite-difference reference solution of
//!
//! ```text
//! du/dt = nu d2u/dy2 + p D_t^beta d2u/dy2,   u(y,0) = 0,  u(0,t) = U0,  u(y_max,t) = 0
//! ```
//!
//! Backward Euler in time, second-order central differences in space. The
//! fractional derivative acts on the history of `w = d2u/dy2` through the L1
//! weights `b_j = (j+1)^(1-beta) - j^(1-beta)` with prefactor
//! `dt^(-beta) / Gamma(2-beta)`. Since `w(y,0) = 0` in the interior the
//! Riemann–Liouville and Caputo forms coincide. Each step is one
//! tridiagonal solve; the full history is kept.
//!
//! The jump at the wall at `t = 0+` makes `w` singular near `y = 0` for the
//! first few steps, so comparisons should use mid-to-late time slices.

use crate::error::{Error, Result};
use crate::groups::{check_time, FluidParameters, FractionalOrder};
use crate::kinematics::{elastic_stretch, profile, profile_factor, ProfileSpec};
use crate::scalar::Scalar;
use crate::specfun::gamma_pos;
use crate::tridiag;

pub const MIN_CELLS: usize = 32;
/// Tolerance (relative to U0) on the last interior node before the
/// disturbance counts as having reached `y_max`.
pub const FAR_FIELD_TOL: f64 = 1e-6;
/// Threshold (relative to U0) defining the empirical penetration depth.
pub const DEPTH_THRESHOLD: f64 = 1e-3;

/// Uniform space-time grid on `[0, y_max] x [0, t_end]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid<T> {
    y_max: T,
    ny: usize,
    t_end: T,
    nt: usize,
}

impl<T: Scalar> Grid<T> {
    /// `ny` and `nt` count intervals and must be at least 32.
    pub fn new(y_max: T, ny: usize, t_end: T, nt: usize) -> Result<Self> {
        if ny < MIN_CELLS || nt < MIN_CELLS {
            return Err(Error::InvalidParameter {
                name: if ny < MIN_CELLS { "ny" } else { "nt" },
                value: ny.min(nt) as f64,
                reason: "grid needs at least 32 intervals per dimension",
            });
        }
        Self::coarse(y_max, ny, t_end, nt)
    }

    /// Like [`Grid::new`] but accepts resolutions down to 3 intervals, for
    /// probing convergence. Results on such grids are not converged.
    pub fn coarse(y_max: T, ny: usize, t_end: T, nt: usize) -> Result<Self> {
        if ny < 3 || nt < 1 {
            return Err(Error::InvalidParameter {
                name: "ny",
                value: ny as f64,
                reason: "grid needs at least 3 space intervals and 1 time step",
            });
        }
        if !(y_max > T::zero()) || !y_max.is_finite() {
            return Err(Error::InvalidParameter {
                name: "y_max",
                value: y_max.as_f64(),
                reason: "domain length must be positive",
            });
        }
        check_time(t_end)?;
        Ok(Self { y_max, ny, t_end, nt })
    }

    /// Grid whose extent is `factor` times the closed-form depth at `t_end`.
    pub fn covering(
        params: &FluidParameters<T>,
        beta: FractionalOrder<T>,
        spec: &ProfileSpec<T>,
        t_end: T,
        factor: T,
        ny: usize,
        nt: usize,
    ) -> Result<Self> {
        check_time(t_end)?;
        let depth = closed_form_front(params, beta, spec, t_end);
        Self::new(factor.max(T::lit(2.0)) * depth, ny, t_end, nt)
    }

    pub fn y_max(&self) -> T {
        self.y_max
    }
    pub fn ny(&self) -> usize {
        self.ny
    }
    pub fn t_end(&self) -> T {
        self.t_end
    }
    pub fn nt(&self) -> usize {
        self.nt
    }
    pub fn dy(&self) -> T {
        self.y_max / T::of_usize(self.ny)
    }
    pub fn dt(&self) -> T {
        self.t_end / T::of_usize(self.nt)
    }
    pub fn y(&self, i: usize) -> T {
        self.dy() * T::of_usize(i)
    }
    pub fn t(&self, k: usize) -> T {
        self.dt() * T::of_usize(k)
    }

    /// Time index closest to `t`.
    pub fn time_index(&self, t: T) -> usize {
        let k = (t / self.dt()).round().to_usize().unwrap_or(0);
        k.min(self.nt)
    }
}

/// Front of the closed-form profile at time `t`.
fn closed_form_front<T: Scalar>(
    params: &FluidParameters<T>,
    beta: FractionalOrder<T>,
    spec: &ProfileSpec<T>,
    t: T,
) -> T {
    let nu = params.nu();
    let d0 = params.p() / (nu * t.powf(beta.value()));
    (nu * t).sqrt() * spec.front(elastic_stretch(beta, d0))
}

/// Knobs for [`solve_with`]. The defaults are the production setting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct OracleOptions {
    /// Keep only the last `k` terms of the L1 sum, in the stepping and in
    /// the wall stress. Test probe for the memory effect; `None` keeps the
    /// full history.
    pub history_window: Option<usize>,
    /// Skip the far-boundary check.
    pub allow_far_field: bool,
}

/// Velocity field on the grid plus the wall shear stress history.
#[derive(Debug, Clone)]
pub struct OracleSolution<T> {
    grid: Grid<T>,
    nu: T,
    p: T,
    u0: T,
    beta: FractionalOrder<T>,
    /// `u[k][i]` at `t_k`, `y_i`.
    u: Vec<Vec<T>>,
    /// Stress per unit density at `y = 0`, one entry per time level.
    wall_stress: Vec<T>,
}

impl<T: Scalar> OracleSolution<T> {
    pub fn grid(&self) -> &Grid<T> {
        &self.grid
    }
    pub fn nu(&self) -> T {
        self.nu
    }
    pub fn p(&self) -> T {
        self.p
    }
    pub fn u0(&self) -> T {
        self.u0
    }
    pub fn beta(&self) -> FractionalOrder<T> {
        self.beta
    }

    /// Velocity at every grid node for time level `k`.
    pub fn profile(&self, k: usize) -> &[T] {
        &self.u[k]
    }

    pub fn field(&self) -> &[Vec<T>] {
        &self.u
    }

    pub fn wall_stress_series(&self) -> &[T] {
        &self.wall_stress
    }

    /// Closed-form field sampled on `grid`, packaged like a solver result.
    /// Useful as a baseline for [`compare`].
    pub fn from_closed_form(
        params: &FluidParameters<T>,
        u0: T,
        beta: FractionalOrder<T>,
        grid: Grid<T>,
        spec: &ProfileSpec<T>,
    ) -> Self {
        let nu = params.nu();
        let mut u = Vec::with_capacity(grid.nt + 1);
        u.push(vec![T::zero(); grid.ny + 1]);
        for k in 1..=grid.nt {
            let t = grid.t(k);
            let r = elastic_stretch(beta, params.p() / (nu * t.powf(beta.value())));
            let scale = (nu * t).sqrt();
            u.push(
                (0..=grid.ny)
                    .map(|i| u0 * profile(grid.y(i) / scale, r, spec))
                    .collect(),
            );
        }
        Self {
            grid,
            nu,
            p: params.p(),
            u0,
            beta,
            u,
            wall_stress: vec![T::zero(); grid.nt + 1],
        }
    }
}

/// L1 weights `b_j = (j+1)^(1-beta) - j^(1-beta)`, `j = 0..len`.
pub fn l1_weights<T: Scalar>(beta: FractionalOrder<T>, len: usize) -> Vec<T> {
    let e = T::one() - beta.value();
    (0..len)
        .map(|j| {
            let j = T::of_usize(j);
            (j + T::one()).powf(e) - j.powf(e)
        })
        .collect()
}

/// Solves with the production options.
pub fn solve<T: Scalar>(
    params: &FluidParameters<T>,
    u0: T,
    beta: FractionalOrder<T>,
    grid: Grid<T>,
) -> Result<OracleSolution<T>> {
    solve_with(params, u0, beta, grid, &OracleOptions::default())
}

pub fn solve_with<T: Scalar>(
    params: &FluidParameters<T>,
    u0: T,
    beta: FractionalOrder<T>,
    grid: Grid<T>,
    options: &OracleOptions,
) -> Result<OracleSolution<T>> {
    if !(u0 >= T::zero()) || !u0.is_finite() {
        return Err(Error::InvalidParameter {
            name: "u0",
            value: u0.as_f64(),
            reason: "plate velocity must be >= 0",
        });
    }
    let nu = params.nu();
    let p = params.p();
    let ny = grid.ny;
    let nt = grid.nt;
    let m = ny - 1;
    let dy = grid.dy();
    let dt = grid.dt();
    let inv_dy2 = T::one() / (dy * dy);
    let two = T::lit(2.0);

    // L1 prefactor dt^-beta / Gamma(2-beta)
    let l1 = dt.powf(-beta.value()) / gamma_pos(two - beta.value());
    let weights = l1_weights(beta, nt);
    let window = options.history_window.unwrap_or(nt).max(1);

    // (1 + 2a) u_i - a (u_{i-1} + u_{i+1}) = rhs_i, a = dt (nu + p l1 b0) / dy^2
    let a = dt * (nu + p * l1 * weights[0]) * inv_dy2;
    let lower = vec![-a; m];
    let upper = vec![-a; m];
    let diag = vec![T::one() + two * a; m];
    let mut scratch = vec![T::zero(); m];
    let mut rhs = vec![T::zero(); m];

    let mut u: Vec<Vec<T>> = Vec::with_capacity(nt + 1);
    u.push(vec![T::zero(); ny + 1]);
    // interior curvature w^k = d2u/dy2 at t_k; w^0 = 0 is not stored
    let mut w: Vec<Vec<T>> = Vec::with_capacity(nt);
    // wall slope g^k; g^0 = 0
    let mut slope: Vec<T> = Vec::with_capacity(nt + 1);
    slope.push(T::zero());
    let mut wall_stress = Vec::with_capacity(nt + 1);
    wall_stress.push(T::zero());
    let far_tol = T::lit(FAR_FIELD_TOL) * u0;
    // L1 sum in value form:
    // sum_j b_j (f^(k-j) - f^(k-j-1)) = b_0 f^k - sum_{j>=1} (b_(j-1) - b_j) f^(k-j) - b_(k-1) f^0
    let decay: Vec<T> = (0..nt).map(|j| if j == 0 { T::zero() } else { weights[j - 1] - weights[j] }).collect();

    for k in 1..=nt {
        let prev = &u[k - 1];
        for r in rhs.iter_mut() {
            *r = T::zero();
        }
        let jmax = (k - 1).min(window - 1);
        for j in 1..=jmax {
            let c = decay[j];
            let old = &w[k - j - 1];
            for i in 0..m {
                rhs[i] = rhs[i] + c * old[i];
            }
        }
        let hist_scale = dt * p * l1;
        for i in 0..m {
            rhs[i] = prev[i + 1] - hist_scale * rhs[i];
        }
        rhs[0] = rhs[0] + a * u0;

        tridiag::solve_in_place(&lower, &diag, &upper, &mut rhs, &mut scratch)?;

        let mut row = Vec::with_capacity(ny + 1);
        row.push(u0);
        row.extend_from_slice(&rhs);
        row.push(T::zero());

        w.push((0..m).map(|i| (row[i] - two * row[i + 1] + row[i + 2]) * inv_dy2).collect());

        // one-sided second-order du/dy at the wall
        let g = (-T::lit(3.0) * row[0] + T::lit(4.0) * row[1] - row[2]) / (two * dy);
        slope.push(g);
        let mut frac = weights[0] * g;
        for j in 1..=jmax {
            frac = frac - decay[j] * slope[k - j];
        }
        wall_stress.push(nu * g + p * l1 * frac);

        if !options.allow_far_field && row[ny - 1].abs() > far_tol && u0 > T::zero() {
            return Err(Error::FarBoundary {
                y_max: grid.y_max.as_f64(),
                t: grid.t(k).as_f64(),
            });
        }
        u.push(row);
    }

    Ok(OracleSolution {
        grid,
        nu,
        p,
        u0,
        beta,
        u,
        wall_stress,
    })
}

/// Which interval the L2 error is averaged over.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum L2Window<T> {
    /// `[0, delta(t)]` of the profile being compared.
    OwnFront,
    /// `[0, y]` for a fixed `y`, e.g. to compare several exponents on one
    /// interval.
    Fixed(T),
}

/// Errors of the closed form against the oracle at one time level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SliceMetrics<T> {
    pub t: T,
    /// Max |closed form - oracle| over the whole grid.
    pub linf: T,
    /// RMS of the difference over the L2 window.
    pub l2: T,
    /// First `y` with `u <= 0.001 U0` in the oracle field.
    pub empirical_depth: T,
    /// Closed-form front.
    pub closed_form_depth: T,
    pub depth_ratio: T,
}

/// Compares the closed-form profile with `oracle` at the requested times,
/// averaging the L2 error over each profile's own front.
pub fn compare<T: Scalar>(
    oracle: &OracleSolution<T>,
    params: &FluidParameters<T>,
    spec: &ProfileSpec<T>,
    times: &[T],
) -> Result<Vec<SliceMetrics<T>>> {
    compare_with(oracle, params, spec, times, L2Window::OwnFront)
}

pub fn compare_with<T: Scalar>(
    oracle: &OracleSolution<T>,
    params: &FluidParameters<T>,
    spec: &ProfileSpec<T>,
    times: &[T],
    window: L2Window<T>,
) -> Result<Vec<SliceMetrics<T>>> {
    let grid = oracle.grid;
    let nu = params.nu();
    let beta = oracle.beta;
    let u0 = oracle.u0;
    times
        .iter()
        .map(|&t| {
            check_time(t)?;
            let k = grid.time_index(t).max(1);
            let tk = grid.t(k);
            let front = closed_form_front(params, beta, spec, tk);
            if front > grid.y_max {
                return Err(Error::GridCoverage {
                    delta: front.as_f64(),
                    t: tk.as_f64(),
                    y_max: grid.y_max.as_f64(),
                });
            }
            let r = elastic_stretch(beta, params.p() / (nu * tk.powf(beta.value())));
            let scale = (nu * tk).sqrt();
            let field = &oracle.u[k];
            let diff: Vec<T> = (0..=grid.ny)
                .map(|i| u0 * profile(grid.y(i) / scale, r, spec) - field[i])
                .collect();
            let linf = diff.iter().fold(T::zero(), |m, d| m.max(d.abs()));

            let width = match window {
                L2Window::OwnFront => front,
                L2Window::Fixed(w) => w.min(grid.y_max),
            };
            let l2 = rms_on_prefix(&diff, grid.dy(), width);
            let empirical_depth = threshold_depth(field, grid.dy(), T::lit(DEPTH_THRESHOLD) * u0);
            let closed_form_depth = scale * profile_factor(spec.depth_exponent()) * r;
            Ok(SliceMetrics {
                t: tk,
                linf,
                l2,
                empirical_depth,
                closed_form_depth,
                depth_ratio: empirical_depth / closed_form_depth,
            })
        })
        .collect()
}

// Trapezoid RMS of samples at spacing dy over [0, width].
fn rms_on_prefix<T: Scalar>(values: &[T], dy: T, width: T) -> T {
    let last = (width / dy).floor().to_usize().unwrap_or(0).min(values.len() - 1);
    if last == 0 {
        return values[0].abs();
    }
    let half = T::lit(0.5);
    let mut acc = T::zero();
    for i in 0..last {
        acc = acc + half * (values[i] * values[i] + values[i + 1] * values[i + 1]);
    }
    (acc / T::of_usize(last)).sqrt()
}

// First y where the sampled profile drops to `level`, linearly interpolated.
fn threshold_depth<T: Scalar>(field: &[T], dy: T, level: T) -> T {
    for i in 1..field.len() {
        if field[i] <= level {
            let (a, b) = (field[i - 1], field[i]);
            let frac = if a > b { (a - level) / (a - b) } else { T::zero() };
            return dy * (T::of_usize(i - 1) + frac.max(T::zero()).min(T::one()));
        }
    }
    dy * T::of_usize(field.len() - 1)
}

/// Max |coarse - fine| at the final time over the coarse nodes, where `fine`
/// refines both dimensions of `coarse` by an integer factor.
pub fn final_time_difference<T: Scalar>(coarse: &OracleSolution<T>, fine: &OracleSolution<T>) -> T {
    let (gc, gf) = (coarse.grid, fine.grid);
    assert!(
        gf.ny % gc.ny == 0 && gf.nt % gc.nt == 0,
        "fine grid must refine the coarse grid by an integer factor"
    );
    let ry = gf.ny / gc.ny;
    let uc = &coarse.u[gc.nt];
    let uf = &fine.u[gf.nt];
    (0..=gc.ny).fold(T::zero(), |m, i| m.max((uc[i] - uf[i * ry]).abs()))
}
