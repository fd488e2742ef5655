//! Cross-module invariants: solver self-consistency, flat-space closed
//! forms, and the tie between measured frequencies and the shift formulas.

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use satshift_core::shifts::{delta_ang_of, link_shift};
use satshift_core::spacetime::{
    inner_product, measured_frequency, metric_diag, null_vector, satellite_observer, solve_kappa,
    solve_leg, static_observer, subtended_angle, EarthModel, Event, LegDirection, OrbitClass,
    OrbitSpec,
};

const DEG: f64 = std::f64::consts::PI / 180.0;

/// Solves asin(sqrt(k)/r1) - asin(sqrt(k)/r2) = dtheta by bisection on the
/// closed form alone; independent of the production solver.
fn flat_kappa_oracle(r1: f64, r2: f64, dtheta: f64) -> f64 {
    let residual = |k: f64| (k.sqrt() / r1).asin() - (k.sqrt() / r2).asin() - dtheta;
    let (mut lo, mut hi) = (0.0_f64, r1 * r1);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if residual(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn flat_space_solver_matches_the_arcsin_closed_form() {
    let flat = EarthModel::new(0.0, 6.371e6).unwrap();
    let mut rng = StdRng::seed_from_u64(7);
    for _ in 0..100 {
        let r1: f64 = rng.gen_range(6.371e6..7.0e6);
        let r2 = r1 + rng.gen_range(2.0e5..3.0e6);
        // Stay below the maximum subtendable angle, asin(1) - asin(r1/r2).
        let max_angle = std::f64::consts::FRAC_PI_2 - (r1 / r2).asin();
        let dtheta = rng.gen_range(0.05..0.95) * max_angle;

        let solved = solve_kappa(&flat, r1, r2, dtheta).unwrap();
        let oracle = flat_kappa_oracle(r1, r2, dtheta);
        assert!(
            ((solved - oracle) / oracle).abs() < 1e-10,
            "solved {solved}, oracle {oracle} for r1={r1} r2={r2} dtheta={dtheta}"
        );
    }
}

#[test]
fn earth_mass_perturbs_kappa_by_less_than_1e7_relative() {
    let earth = EarthModel::default();
    let flat = EarthModel::new(0.0, earth.earth_radius).unwrap();
    for (r2, dtheta) in [
        (8.371e6, 22.48 * DEG),
        (8.371e6, 36.88 * DEG),
        (6.626e6, 7.48 * DEG),
        (4.2164e7, 52.52 * DEG),
    ] {
        let curved = solve_kappa(&earth, 6.371e6, r2, dtheta).unwrap();
        let free = solve_kappa(&flat, 6.371e6, r2, dtheta).unwrap();
        assert!(
            ((curved - free) / curved).abs() < 1e-7,
            "curved {curved} vs flat {free}"
        );
    }
}

#[test]
fn solved_kappa_satisfies_the_constraint_to_1e10() {
    let earth = EarthModel::default();
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..25 {
        let r1 = rng.gen_range(6.371e6..6.6e6);
        let r2 = r1 + rng.gen_range(3.0e5..4.0e6);
        let probe = (1.0 - 1e-12) * r1 * r1 / (1.0 - 2.0 * earth.mass_length / r1);
        let max_angle = subtended_angle(&earth, r1, r2, probe, 1e-10).unwrap();
        let dtheta = rng.gen_range(0.05..0.9) * max_angle;
        let kappa = solve_kappa(&earth, r1, r2, dtheta).unwrap();
        let angle = subtended_angle(&earth, r1, r2, kappa, 1e-13).unwrap();
        assert!(
            ((angle - dtheta) / dtheta).abs() < 1e-10,
            "residual {} at dtheta {dtheta}",
            angle - dtheta
        );
    }
}

#[test]
fn kappa_grows_with_the_polar_separation() {
    let earth = EarthModel::default();
    let mut previous = 0.0;
    for step in 1..=14 {
        let dtheta = (2.5 * step as f64) * DEG;
        let kappa = solve_kappa(&earth, 6.371e6, 8.371e6, dtheta).unwrap();
        assert!(
            kappa > previous,
            "kappa {kappa} did not grow at dtheta {dtheta}"
        );
        previous = kappa;
    }
}

#[test]
fn leg_reversal_preserves_the_constants() {
    let earth = EarthModel::default();
    let mut rng = StdRng::seed_from_u64(23);
    for _ in 0..20 {
        let ground_theta = rng.gen_range(30.0..60.0) * DEG;
        let ground = Event::spatial(
            earth.earth_radius,
            ground_theta,
            rng.gen_range(10.0..20.0) * DEG,
        );
        let sat_radius = earth.earth_radius + rng.gen_range(4.0e5..3.0e6);
        // Keep the polar separation below the reachable maximum, which in
        // the weak field is essentially asin(1) - asin(r1/r2).
        let reachable = std::f64::consts::FRAC_PI_2 - (earth.earth_radius / sat_radius).asin();
        let dtheta = rng.gen_range(0.1..0.9) * reachable.min(ground_theta - 5.0 * DEG);
        let sat = Event::spatial(
            sat_radius,
            ground_theta - dtheta,
            ground.phi + rng.gen_range(-0.03..0.03) * DEG,
        );
        let up = solve_leg(&earth, ground, sat, LegDirection::Uplink).unwrap();
        let down = solve_leg(&earth, sat, ground, LegDirection::Downlink).unwrap();
        assert_eq!(up.constants.kappa, down.constants.kappa);
        assert!(
            (up.constants.l_phi.abs() - down.constants.l_phi.abs()).abs()
                <= 1e-12 * up.constants.l_phi.abs().max(1e-300)
        );
    }
}

#[test]
fn measured_frequency_ratio_reproduces_the_link_shift() {
    let earth = EarthModel::default();
    let configurations = [
        (LEO_RADIUS, 0.0, 15.0 * DEG, 37.48 * DEG, 13.40 * DEG),
        (LEO_RADIUS, 0.0, 15.0 * DEG, 51.88 * DEG, 13.36 * DEG),
        (VLEO_RADIUS, 6.7 * DEG, 30.0 * DEG, 37.48 * DEG, 13.40 * DEG),
    ];
    for (radius, inclination, event_theta, lab_theta, lab_phi) in configurations {
        let orbit = OrbitSpec::new(
            &earth,
            radius,
            inclination,
            event_theta,
            13.38 * DEG,
            OrbitClass::Custom,
        )
        .unwrap();
        let ground = Event::spatial(earth.earth_radius, lab_theta, lab_phi);
        let sat = Event::spatial(radius, event_theta, orbit.event_phi);
        let leg = solve_leg(&earth, ground, sat, LegDirection::Uplink).unwrap();

        // Frequency measured on the ground at emission.
        let g_ground = metric_diag(&earth, ground.r, ground.theta).unwrap();
        let k_ground = null_vector(&earth, &leg.constants, ground.r, ground.theta).unwrap();
        let v_ground = static_observer(&earth, ground.r).unwrap();
        let omega_ground = measured_frequency(&k_ground, &v_ground, &g_ground).unwrap();

        // Frequency measured by the satellite at reception.
        let g_sat = metric_diag(&earth, sat.r, sat.theta).unwrap();
        let k_sat = null_vector(&earth, &leg.constants, sat.r, sat.theta).unwrap();
        let v_sat = satellite_observer(&earth, &orbit).unwrap();
        let omega_sat = measured_frequency(&k_sat, &v_sat, &g_sat).unwrap();

        let shift = link_shift(&earth, &orbit, &leg.constants).unwrap();
        let ratio = omega_sat / omega_ground;
        assert!(
            ((ratio - shift.f) / shift.f).abs() < 1e-12,
            "ratio {ratio} vs shift {}",
            shift.f
        );
    }
}

const LEO_RADIUS: f64 = 8.371e6;
const VLEO_RADIUS: f64 = 6.626e6;

#[test]
fn null_vectors_of_solved_legs_are_null_along_the_leg() {
    let earth = EarthModel::default();
    let ground = Event::spatial(earth.earth_radius, 37.48 * DEG, 13.40 * DEG);
    let sat = Event::spatial(LEO_RADIUS, 15.0 * DEG, 13.38 * DEG);
    let leg = solve_leg(&earth, ground, sat, LegDirection::Uplink).unwrap();
    for frac in [0.0, 0.25, 0.5, 0.75, 1.0] {
        let r = ground.r + frac * (sat.r - ground.r);
        let theta = ground.theta + frac * (sat.theta - ground.theta);
        let k = null_vector(&earth, &leg.constants, r, theta).unwrap();
        let g = metric_diag(&earth, r, theta).unwrap();
        let norm = inner_product(&k, &k, &g);
        assert!(norm.abs() < 1e-12 * leg.constants.omega_infinity.powi(2));
    }
}

#[test]
fn uplink_and_downlink_angular_functions_are_opposite() {
    let earth = EarthModel::default();
    let orbit = OrbitSpec::new(
        &earth,
        VLEO_RADIUS,
        6.7 * DEG,
        30.0 * DEG,
        13.38 * DEG,
        OrbitClass::Vleo,
    )
    .unwrap();
    let ground = Event::spatial(earth.earth_radius, 37.48 * DEG, 13.40 * DEG);
    let sat = Event::spatial(VLEO_RADIUS, orbit.event_theta, orbit.event_phi);

    let up = solve_leg(&earth, ground, sat, LegDirection::Uplink).unwrap();
    let down = solve_leg(&earth, sat, ground, LegDirection::Downlink).unwrap();
    let d_up = delta_ang_of(&orbit, &up.constants).unwrap();
    let d_down = delta_ang_of(&orbit, &down.constants).unwrap();
    assert!(
        (d_up + d_down).abs() < 1e-14 * d_up.abs(),
        "d_up {d_up}, d_down {d_down}"
    );
}
