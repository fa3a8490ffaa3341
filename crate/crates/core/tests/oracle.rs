use stokes_hbim::oracle::{compare_with, final_time_difference, solve_with, L2Window, OracleOptions};
use stokes_hbim::{compare, newtonian_exact, solve, FluidParameters, FractionalOrder, Grid, ProfileSpec};

fn half() -> FractionalOrder<f64> {
    FractionalOrder::new(0.5).unwrap()
}

fn newtonian() -> FluidParameters<f64> {
    FluidParameters::from_kinematic(1.0, 0.0).unwrap()
}

fn erf_error(ny: usize, nt: usize) -> f64 {
    let grid = Grid::new(16.0, ny, 1.0, nt).unwrap();
    let sol = solve(&newtonian(), 1.0, half(), grid).unwrap();
    let u = sol.profile(nt);
    (0..=ny).fold(0.0_f64, |m, i| m.max((u[i] - newtonian_exact(grid.y(i))).abs()))
}

#[test]
fn newtonian_oracle_matches_erfc() {
    let coarse = erf_error(256, 256);
    let fine = erf_error(512, 512);
    assert!(fine <= 1e-3, "L_inf = {fine}");
    assert!(coarse / fine >= 1.5, "{coarse} -> {fine}");
}

#[test]
fn self_difference_shrinks_under_refinement() {
    let fp = FluidParameters::from_kinematic(1.0, 0.5).unwrap();
    let run = |n: usize| solve(&fp, 1.0, half(), Grid::new(20.0, n, 1.0, n).unwrap()).unwrap();
    let (a, b, c) = (run(64), run(128), run(256));
    let d1 = final_time_difference(&a, &b);
    let d2 = final_time_difference(&b, &c);
    assert!(d1 / d2 >= 1.5, "{d1} -> {d2}");
}

#[test]
fn profiles_are_bounded_and_monotone() {
    for &(p, beta) in &[(0.0, 0.5), (0.3, 0.2), (1.0, 0.5), (2.0, 0.9)] {
        let fp = FluidParameters::from_kinematic(1.0, p).unwrap();
        let beta = FractionalOrder::new(beta).unwrap();
        let grid = Grid::new(24.0, 128, 1.0, 128).unwrap();
        let sol = solve(&fp, 2.0, beta, grid).unwrap();
        for k in 1..=grid.nt() {
            let u = sol.profile(k);
            assert_eq!(u[0], 2.0);
            for i in 1..u.len() {
                assert!(u[i] <= u[i - 1] + 1e-12 * 2.0, "p = {p}, k = {k}, i = {i}");
                assert!(u[i] >= -1e-12 && u[i] <= 2.0);
            }
        }
    }
}

#[test]
fn truncated_memory_converges_to_full_history() {
    let fp = FluidParameters::from_kinematic(1.0, 1.0).unwrap();
    let grid = Grid::new(20.0, 128, 1.0, 256).unwrap();
    let full = solve(&fp, 1.0, half(), grid).unwrap();
    let reference = *full.wall_stress_series().last().unwrap();
    let mut prev = f64::INFINITY;
    for window in [1, 4, 16, 64, 128, 192, 255, 256] {
        // short memory spreads faster and may touch the far boundary
        let opts = OracleOptions { history_window: Some(window), allow_far_field: true };
        let cut = solve_with(&fp, 1.0, half(), grid, &opts).unwrap();
        let err = (cut.wall_stress_series().last().unwrap() - reference).abs();
        if window < 256 {
            assert!(err > 0.0 && err < prev, "window {window}: {err} vs {prev}");
        } else {
            assert_eq!(err, 0.0);
        }
        prev = err;
    }
}

#[test]
fn elasticity_speeds_up_the_layer() {
    let grid = Grid::new(30.0, 128, 1.0, 128).unwrap();
    let mut prev: Option<Vec<f64>> = None;
    for p in [0.0, 0.25, 0.5, 1.0, 2.0] {
        let fp = FluidParameters::from_kinematic(1.0, p).unwrap();
        let u = solve(&fp, 1.0, half(), grid).unwrap().profile(128).to_vec();
        if let Some(q) = &prev {
            for i in 1..u.len() {
                if q[i] > 1e-6 {
                    assert!(u[i] > q[i], "p = {p}, i = {i}");
                }
            }
        }
        prev = Some(u);
    }
}

#[test]
fn newtonian_hbim_envelope_against_oracle() {
    let grid = Grid::new(16.0, 512, 1.0, 512).unwrap();
    let sol = solve(&newtonian(), 1.0, half(), grid).unwrap();
    let spec = ProfileSpec::fixed(2.35).unwrap();
    for m in compare(&sol, &newtonian(), &spec, &[0.5, 1.0]).unwrap() {
        assert!(m.linf <= 0.05, "t = {}: {}", m.t, m.linf);
    }
}

#[test]
fn empirical_depth_ratio_band() {
    let spec = ProfileSpec::fixed(3.0).unwrap();
    for d0 in [0.1, 0.5, 1.0] {
        let fp = FluidParameters::from_kinematic(1.0, d0).unwrap();
        let grid = Grid::covering(&fp, half(), &spec, 1.0, 2.5, 256, 256).unwrap();
        let sol = solve(&fp, 1.0, half(), grid).unwrap();
        let m = compare_with(&sol, &fp, &spec, &[1.0], L2Window::OwnFront).unwrap()[0];
        assert!((0.5..=1.5).contains(&m.depth_ratio), "D0 = {d0}: {}", m.depth_ratio);
    }
}
