use std::f64::consts::PI;

use imethod_core::multilinear::{increment_integrands, increment_residual, ResonanceSpec};
use imethod_core::nls::*;
use imethod_core::spectral::data::gaussian;
use imethod_core::spectral::{Field, Grid};
use num_complex::Complex64;

fn drift(traj: &Trajectory, f: impl Fn(&Field) -> f64) -> f64 {
    let e0 = f(&traj.states()[0]);
    traj.states()
        .iter()
        .map(|u| (f(u) - e0).abs())
        .fold(0.0, f64::max)
}

#[test]
fn plane_wave_follows_closed_form() {
    let g = Grid::new(1, 16, 2.0 * PI).unwrap();
    let (k, a) = (3i64, Complex64::new(0.6, 0.3));
    let u0 = Field::plane_wave(g, [k, 0, 0], a);
    let cfg = SolverConfig::new(g, 1e-3, 1.0, 100).unwrap();
    let traj = evolve(&u0, &cfg).unwrap();
    let omega = (k * k) as f64 + a.norm_sqr();
    for (t, u) in traj.iter() {
        let exact = u0.scaled(Complex64::from_polar(1.0, -omega * t));
        assert!(u.max_abs_diff(&exact).unwrap() < 1e-10, "t = {t}");
    }
    assert!(drift(&traj, mass) < 1e-10 * mass(&u0));
}

#[test]
fn energy_drift_is_second_order() {
    let g = Grid::new(1, 32, 2.0 * PI).unwrap();
    let u0 = gaussian(g, 1.0, 1.0);
    let run = |dt: f64| {
        drift(
            &evolve(&u0, &SolverConfig::new(g, dt, 1.0, 1).unwrap()).unwrap(),
            energy,
        )
    };
    let (a, b) = (run(0.01), run(0.005));
    let ratio = a / b;
    assert!((3.0..=5.0).contains(&ratio), "{a} / {b} = {ratio}");
}

#[test]
fn increment_identity_converges_in_two_dimensions() {
    let g = Grid::new(2, 8, 2.0 * PI).unwrap();
    let u0 = gaussian(g, 1.0, 1.0);
    let spec = ResonanceSpec::with_default_theta(2.0, 0.6).unwrap();
    let res: Vec<f64> = [0.02, 0.01, 0.005]
        .iter()
        .map(|&dt| {
            let traj = evolve(&u0, &SolverConfig::new(g, dt, 0.2, 1).unwrap()).unwrap();
            increment_residual(&traj, &spec).unwrap().abs()
        })
        .collect();
    let traj = evolve(&u0, &SolverConfig::new(g, 0.02, 0.2, 1).unwrap()).unwrap();
    let series = increment_integrands(&traj, &spec).unwrap();
    assert!(
        series.quartic.iter().any(|q| q.abs() > 1e-8),
        "quartic term should be active in 2D"
    );
    for w in res.windows(2) {
        assert!(w[0] / w[1] >= 3.5, "{res:?}");
    }
}

#[test]
fn nonlinear_part_vanishes_at_origin_and_free_flow_is_linear() {
    let g = Grid::new(1, 32, 2.0 * PI).unwrap();
    let u0 = gaussian(g, 1.0, 0.8);
    let traj = evolve(&u0, &SolverConfig::new(g, 1e-3, 0.1, 10).unwrap()).unwrap();
    let d = duhamel_split(&traj, 0.0).unwrap();
    assert_eq!(d.nonlinear.states()[0].sup_norm(), 0.0);
    for ((t, l), u) in d.linear.iter().zip(traj.states()) {
        let sum = l
            .add(&d.nonlinear.states()[d.linear.times().iter().position(|&s| s == t).unwrap()])
            .unwrap();
        assert!(sum.max_abs_diff(u).unwrap() < 1e-13);
    }
}
