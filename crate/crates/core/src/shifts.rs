//! Frequency and energy shifts for satellite photon exchange.
//!
//! Two schemes are covered. In the reflection scheme a photon bounces off the
//! moving satellite's mirror and the shift is a pure energy kick set by the
//! satellite's velocity and the change in the photon's angular constants. In
//! the link scheme the photon is detected rather than reflected and the shift
//! combines the gravitational redshift with the first-order Doppler term.
//! Both are evaluated with the exact expressions; series expansions appear
//! only in tests.

use crate::error::{Error, RadicandKind, Result};
use crate::spacetime::{EarthModel, OrbitSpec, RayConstants, Sign};

/// Photon exchange scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scheme {
    Reflection,
    Link,
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scheme::Reflection => write!(f, "reflection"),
            Scheme::Link => write!(f, "link"),
        }
    }
}

/// A computed frequency ratio together with the angular terms that formed it.
///
/// `delta_ang_out` is `None` for the link scheme; consumers that need a
/// difference of angular terms treat the absent value as zero.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShiftResult {
    /// Frequency ratio received over emitted.
    pub f: f64,
    /// Angular function of the incident (or only) leg.
    pub delta_ang_in: f64,
    /// Angular function of the reflected leg, when one exists.
    pub delta_ang_out: Option<f64>,
    /// The static gravitational factor; exactly 1 for the reflection scheme.
    pub gravitational_factor: f64,
    pub scheme: Scheme,
}

/// Angular function coupling the satellite velocity to the photon's angular
/// momentum:
///
/// ```text
/// delta_ang = eps_zeta (l_phi/R_s) sin(alpha)/sin^2(theta_s)
///           + eps_omega eps_theta sqrt((kappa - l_phi^2 cot^2 theta_s)/R_s^2)
///             sqrt(1 - sin^2(alpha)/sin^2(theta_s))
/// ```
pub fn delta_ang(orbit: &OrbitSpec, eps_theta: Sign, kappa: f64, l_phi: f64) -> Result<f64> {
    let r_s = orbit.orbit_radius;
    let sin_alpha = orbit.inclination.sin();
    let sin_theta = orbit.event_theta.sin();
    let cot_theta = orbit.event_theta.cos() / sin_theta;

    let inclination_radicand = 1.0 - (sin_alpha / sin_theta).powi(2);
    if inclination_radicand < 0.0 {
        return Err(Error::InclinationDomain {
            sin_alpha,
            sin_theta_s: sin_theta,
        });
    }
    let polar_radicand = kappa - l_phi * l_phi * cot_theta * cot_theta;
    if polar_radicand < 0.0 {
        return Err(Error::TurningPoint {
            kind: RadicandKind::Polar,
            r: r_s,
            theta: orbit.event_theta,
            value: polar_radicand,
        });
    }

    let azimuthal = orbit.eps_zeta.factor() * (l_phi / r_s) * sin_alpha / (sin_theta * sin_theta);
    let polar = orbit.eps_omega.factor()
        * eps_theta.factor()
        * (polar_radicand.sqrt() / r_s)
        * inclination_radicand.sqrt();
    Ok(azimuthal + polar)
}

/// `delta_ang` evaluated from a full constant set.
pub fn delta_ang_of(orbit: &OrbitSpec, c: &RayConstants) -> Result<f64> {
    delta_ang(orbit, c.eps_theta, c.kappa, c.l_phi)
}

/// Constants of the return leg when a photon is reflected straight back to
/// its emitting station: the Carter constant is preserved while the polar
/// and radial senses and the azimuthal momentum all flip. The energy constant
/// is left untouched; the energy update is the reflection shift's job.
pub fn reflect_return_constants(c: &RayConstants) -> RayConstants {
    RayConstants {
        omega_infinity: c.omega_infinity,
        eps_r: c.eps_r.flip(),
        eps_theta: c.eps_theta.flip(),
        l_phi: -c.l_phi,
        kappa: c.kappa,
    }
}

/// Energy kick imparted by reflection off the satellite mirror.
pub fn reflection_shift(
    model: &EarthModel,
    orbit: &OrbitSpec,
    incident: &RayConstants,
    reflected: &RayConstants,
) -> Result<ShiftResult> {
    let delta_in = delta_ang_of(orbit, incident)?;
    let delta_out = delta_ang_of(orbit, reflected)?;
    let eps = (model.mass_length / orbit.orbit_radius).sqrt();
    let denominator = 1.0 - eps * delta_out;
    if denominator <= 0.0 {
        return Err(Error::UnphysicalShift { denominator });
    }
    Ok(ShiftResult {
        f: (1.0 - eps * delta_in) / denominator,
        delta_ang_in: delta_in,
        delta_ang_out: Some(delta_out),
        gravitational_factor: 1.0,
        scheme: Scheme::Reflection,
    })
}

/// Static gravitational factor between the ground and the orbit,
/// `sqrt((1 - 2M/R_E)/(1 - 3M/R_s))`.
pub fn gravitational_factor(model: &EarthModel, orbit: &OrbitSpec) -> Result<f64> {
    let ground = 1.0 - 2.0 * model.mass_length / model.earth_radius;
    let sat = 1.0 - 3.0 * model.mass_length / orbit.orbit_radius;
    if ground <= 0.0 || sat <= 0.0 {
        return Err(Error::UnphysicalShift {
            denominator: ground.min(sat),
        });
    }
    Ok((ground / sat).sqrt())
}

/// Combined gravitational and Doppler shift for one-way propagation.
pub fn link_shift(
    model: &EarthModel,
    orbit: &OrbitSpec,
    leg: &RayConstants,
) -> Result<ShiftResult> {
    let delta = delta_ang_of(orbit, leg)?;
    let eps = (model.mass_length / orbit.orbit_radius).sqrt();
    let factor = gravitational_factor(model, orbit)?;
    Ok(ShiftResult {
        f: (1.0 - eps * delta) * factor,
        delta_ang_in: delta,
        delta_ang_out: None,
        gravitational_factor: factor,
        scheme: Scheme::Link,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spacetime::{solve_leg, Event, LegDirection, OrbitClass};

    const DEG: f64 = std::f64::consts::PI / 180.0;

    fn earth() -> EarthModel {
        EarthModel::default()
    }

    fn leo_orbit() -> OrbitSpec {
        OrbitSpec::new(
            &earth(),
            8.371e6,
            0.0,
            15.0 * DEG,
            13.38 * DEG,
            OrbitClass::Leo,
        )
        .unwrap()
    }

    fn vleo_orbit() -> OrbitSpec {
        OrbitSpec::new(
            &earth(),
            6.626e6,
            6.7 * DEG,
            30.0 * DEG,
            13.38 * DEG,
            OrbitClass::Vleo,
        )
        .unwrap()
    }

    fn geo_orbit() -> OrbitSpec {
        OrbitSpec::new(
            &earth(),
            4.2164e7,
            std::f64::consts::FRAC_PI_2,
            std::f64::consts::FRAC_PI_2,
            13.38 * DEG,
            OrbitClass::Geo,
        )
        .unwrap()
    }

    fn uplink_constants(
        orbit: &OrbitSpec,
        station_theta_deg: f64,
        station_phi_deg: f64,
    ) -> RayConstants {
        let model = earth();
        let from = Event::spatial(
            model.earth_radius,
            station_theta_deg * DEG,
            station_phi_deg * DEG,
        );
        let to = Event::spatial(orbit.orbit_radius, orbit.event_theta, orbit.event_phi);
        solve_leg(&model, from, to, LegDirection::Uplink)
            .unwrap()
            .constants
    }

    #[test]
    fn polar_orbit_uplink_angular_function() {
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let d = delta_ang_of(&orbit, &c).unwrap();
        assert!((d - 0.70).abs() < 0.01, "delta_ang = {d}");
    }

    #[test]
    fn equatorial_orbit_keeps_only_the_azimuthal_term() {
        let orbit = geo_orbit();
        let l_phi = -4.3e3;
        let d = delta_ang(&orbit, Sign::Plus, 0.4 * orbit.orbit_radius.powi(2), l_phi).unwrap();
        assert_eq!(d, l_phi / orbit.orbit_radius);
    }

    #[test]
    fn inclined_orbit_angular_function() {
        let orbit = vleo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let d = delta_ang_of(&orbit, &c).unwrap();
        assert!((d.abs() - 0.91).abs() < 0.01, "delta_ang = {d}");
    }

    #[test]
    fn angular_function_rejects_polar_turning_point() {
        let orbit = leo_orbit();
        assert!(matches!(
            delta_ang(&orbit, Sign::Plus, 1.0, 1.0e3),
            Err(Error::TurningPoint { .. })
        ));
    }

    #[test]
    fn reflection_flips_senses_and_is_an_involution() {
        let c = RayConstants::new(1.0, Sign::Plus, Sign::Plus, 123.0, 5.0e12).unwrap();
        let r = reflect_return_constants(&c);
        assert_eq!(r.eps_theta, Sign::Minus);
        assert_eq!(r.eps_r, Sign::Minus);
        assert_eq!(r.l_phi, -123.0);
        assert_eq!(r.kappa, c.kappa);
        assert_eq!(r.omega_infinity, c.omega_infinity);
        assert_eq!(reflect_return_constants(&r), c);
    }

    #[test]
    fn reflection_negates_the_angular_function_on_polar_orbits() {
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let d_in = delta_ang_of(&orbit, &c).unwrap();
        let d_out = delta_ang_of(&orbit, &reflect_return_constants(&c)).unwrap();
        assert!((d_in + d_out).abs() < 1e-15);
    }

    #[test]
    fn reflection_shift_for_same_station_return() {
        let model = earth();
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let shift = reflection_shift(&model, &orbit, &c, &reflect_return_constants(&c)).unwrap();
        let kick = shift.f - 1.0;
        assert!(
            ((kick - (-3.22e-5)) / 3.22e-5).abs() < 0.02,
            "f_r - 1 = {kick}"
        );
        assert_eq!(shift.gravitational_factor, 1.0);
        assert_eq!(shift.scheme, Scheme::Reflection);
        assert!((shift.delta_ang_in - 0.70).abs() < 0.01);
    }

    #[test]
    fn reflection_shift_vanishes_for_unchanged_constants() {
        let model = earth();
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let shift = reflection_shift(&model, &orbit, &c, &c).unwrap();
        assert_eq!(shift.f, 1.0);
    }

    #[test]
    fn reflection_shift_for_low_inclined_orbit() {
        let model = earth();
        let orbit = vleo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let shift = reflection_shift(&model, &orbit, &c, &reflect_return_constants(&c)).unwrap();
        let kick = shift.f - 1.0;
        assert!(
            ((kick - (-4.71e-5)) / 4.71e-5).abs() < 0.02,
            "f_r - 1 = {kick}"
        );
    }

    #[test]
    fn reflection_shift_rejects_unphysical_denominator() {
        let model = earth();
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let absurd = RayConstants::new(
            1.0,
            Sign::Minus,
            Sign::Plus,
            0.0,
            1.0e12 * orbit.orbit_radius.powi(2),
        )
        .unwrap();
        assert!(matches!(
            reflection_shift(&model, &orbit, &c, &absurd),
            Err(Error::UnphysicalShift { .. })
        ));
    }

    #[test]
    fn link_shift_for_downlink_and_uplink() {
        let model = earth();
        let orbit = leo_orbit();
        let sat = Event::spatial(orbit.orbit_radius, orbit.event_theta, orbit.event_phi);
        let lab1 = Event::spatial(model.earth_radius, 37.48 * DEG, 13.40 * DEG);

        let down = solve_leg(&model, sat, lab1, LegDirection::Downlink).unwrap();
        let f_down = link_shift(&model, &orbit, &down.constants).unwrap().f;
        assert!(
            ((f_down - 1.0 - 1.61e-5) / 1.61e-5).abs() < 0.02,
            "f_l - 1 = {}",
            f_down - 1.0
        );

        let up = solve_leg(&model, lab1, sat, LegDirection::Uplink).unwrap();
        let f_up = link_shift(&model, &orbit, &up.constants).unwrap().f;
        assert!(
            ((f_up - 1.0 + 1.61e-5) / 1.61e-5).abs() < 0.02,
            "f_l - 1 = {}",
            f_up - 1.0
        );
    }

    #[test]
    fn radial_link_shift_is_the_gravitational_factor() {
        let model = earth();
        let orbit = leo_orbit();
        let radial = RayConstants::new(1.0, Sign::Plus, Sign::Plus, 0.0, 0.0).unwrap();
        let shift = link_shift(&model, &orbit, &radial).unwrap();
        assert_eq!(shift.f, shift.gravitational_factor);
        let expected = ((1.0 - 2.0 * model.mass_length / model.earth_radius)
            / (1.0 - 3.0 * model.mass_length / orbit.orbit_radius))
            .sqrt();
        assert_eq!(shift.gravitational_factor, expected);
        assert!(shift.delta_ang_out.is_none());
    }

    #[test]
    fn link_shift_for_inclined_uplink() {
        let model = earth();
        let orbit = vleo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let f = link_shift(&model, &orbit, &c).unwrap().f;
        assert!(
            ((f - 1.0 + 2.35e-5) / 2.35e-5).abs() < 0.02,
            "f_l - 1 = {}",
            f - 1.0
        );
    }

    #[test]
    fn link_and_reflection_shifts_are_related_by_the_gravitational_factor() {
        let model = earth();
        for orbit in [leo_orbit(), vleo_orbit()] {
            let c = uplink_constants(&orbit, 37.48, 13.40);
            let radial_return = RayConstants {
                l_phi: 0.0,
                kappa: 0.0,
                eps_r: c.eps_r.flip(),
                ..c
            };
            let link = link_shift(&model, &orbit, &c).unwrap();
            let reflect = reflection_shift(&model, &orbit, &c, &radial_return).unwrap();
            let composed = reflect.f * link.gravitational_factor;
            assert!(
                ((link.f - composed) / link.f).abs() < 1e-14,
                "link {} vs composed {}",
                link.f,
                composed
            );
        }
    }

    #[test]
    fn equatorial_reduction_matches_the_two_term_form() {
        let model = earth();
        let orbit = geo_orbit();
        let lab1 = Event::spatial(model.earth_radius, 37.48 * DEG, 13.40 * DEG);
        let sat = Event::spatial(orbit.orbit_radius, orbit.event_theta, orbit.event_phi);
        let c = solve_leg(&model, lab1, sat, LegDirection::Uplink)
            .unwrap()
            .constants;
        let back = reflect_return_constants(&c);

        let eps = (model.mass_length / orbit.orbit_radius).sqrt();
        let reduced = (1.0 - orbit.eps_zeta.factor() * (c.l_phi / orbit.orbit_radius) * eps)
            / (1.0 - orbit.eps_zeta.factor() * (back.l_phi / orbit.orbit_radius) * eps);
        let full = reflection_shift(&model, &orbit, &c, &back).unwrap().f;
        assert!(((full - reduced) / full).abs() < 1e-15);

        let link_reduced = (1.0 - orbit.eps_zeta.factor() * (c.l_phi / orbit.orbit_radius) * eps)
            * gravitational_factor(&model, &orbit).unwrap();
        let link_full = link_shift(&model, &orbit, &c).unwrap().f;
        assert!(((link_full - link_reduced) / link_full).abs() < 1e-15);
    }

    #[test]
    fn polar_reduction_matches_the_two_term_form() {
        let model = earth();
        let orbit = leo_orbit();
        let kappa = 0.49 * orbit.orbit_radius.powi(2);
        let c = RayConstants::new(1.0, Sign::Plus, Sign::Plus, 0.0, kappa).unwrap();
        let back = reflect_return_constants(&c);

        let kick = |eps_theta: Sign, kappa: f64| {
            1.0 - orbit.eps_omega.factor()
                * eps_theta.factor()
                * (model.mass_length / orbit.orbit_radius).sqrt()
                * (kappa.sqrt() / orbit.orbit_radius)
        };
        let reduced = kick(c.eps_theta, c.kappa) / kick(back.eps_theta, back.kappa);
        let full = reflection_shift(&model, &orbit, &c, &back).unwrap().f;
        assert!(((full - reduced) / full).abs() < 1e-15);
    }

    #[test]
    fn reflection_shift_reciprocity() {
        let model = earth();
        let orbit = leo_orbit();
        let c = uplink_constants(&orbit, 37.48, 13.40);
        let back = reflect_return_constants(&c);
        let forward = reflection_shift(&model, &orbit, &c, &back).unwrap().f;
        let reverse = reflection_shift(&model, &orbit, &back, &c).unwrap().f;
        assert!((forward * reverse - 1.0).abs() < 1e-14);
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn angular_function_is_odd_under_sense_flip(
                kappa_frac in 0.0..0.9f64,
                l_frac in -0.5..0.5f64,
                alpha_frac in 0.0..1.0f64,
                theta in 0.3..2.8f64,
            ) {
                let model = EarthModel::default();
                let r_s = 8.371e6;
                let alpha = alpha_frac * theta.min(std::f64::consts::PI - theta);
                let orbit = OrbitSpec::new(&model, r_s, alpha, theta, 0.0, OrbitClass::Custom).unwrap();
                let kappa = kappa_frac * r_s * r_s;
                let tan_theta = theta.tan();
                let l_max = (kappa.sqrt() * tan_theta.abs()).min(r_s);
                let l_phi = l_frac * l_max;

                let d_plus = delta_ang(&orbit, Sign::Plus, kappa, l_phi).unwrap();
                let d_minus = delta_ang(&orbit, Sign::Minus, kappa, -l_phi).unwrap();
                prop_assert!((d_plus + d_minus).abs() <= 1e-15 * d_plus.abs().max(1e-300));
            }

            #[test]
            fn reciprocity_holds_for_random_constants(
                kappa_in_frac in 0.0..0.9f64,
                kappa_out_frac in 0.0..0.9f64,
            ) {
                let model = EarthModel::default();
                let orbit = OrbitSpec::new(&model, 8.371e6, 0.0, 0.3, 0.0, OrbitClass::Custom).unwrap();
                let r2 = orbit.orbit_radius * orbit.orbit_radius;
                let a = RayConstants::new(1.0, Sign::Plus, Sign::Plus, 0.0, kappa_in_frac * r2).unwrap();
                let b = RayConstants::new(1.0, Sign::Minus, Sign::Minus, 0.0, kappa_out_frac * r2).unwrap();
                let fwd = reflection_shift(&model, &orbit, &a, &b).unwrap().f;
                let rev = reflection_shift(&model, &orbit, &b, &a).unwrap().f;
                prop_assert!((fwd * rev - 1.0).abs() < 1e-14);
            }
        }
    }
}
