//! Reference values for the built-in catalog and their comparison rules.
//!
//! The stored values carry three significant digits, so the dimensionless
//! two-decimal quantities are compared absolutely at 0.01 while shifts and
//! precision bounds are compared at 2 percent relative; the azimuthal
//! constants are known a digit better and get 1 percent.

use satshift_core::{ScenarioReport, Scheme};

/// How a computed value is compared against its reference.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Tolerance {
    Absolute(f64),
    Relative(f64),
}

impl Tolerance {
    /// Largest deviation from `golden` that still passes.
    pub fn allowed(&self, golden: f64) -> f64 {
        match self {
            Tolerance::Absolute(a) => *a,
            Tolerance::Relative(r) => r * golden.abs(),
        }
    }

    pub fn check(&self, value: f64, golden: f64) -> bool {
        (value - golden).abs() <= self.allowed(golden)
    }
}

/// A quantity extractable from a resolved scenario report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    MassOverOrbit,
    LphiOverRs,
    KappaOverRs2,
    DeltaAngMagnitude,
    FrequencyKick,
    BoundSchwarzschild,
    BoundEarthRadius,
    BoundAltitude,
}

fn orbit_radius(report: &ScenarioReport) -> f64 {
    report.scenario.earth.earth_radius + report.scenario.orbit.altitude_km * 1e3
}

impl Quantity {
    pub fn label(&self, report: &ScenarioReport) -> &'static str {
        match self {
            Quantity::MassOverOrbit => "M/R_s",
            Quantity::LphiOverRs => "|l_phi|/R_s",
            Quantity::KappaOverRs2 => "kappa/R_s^2",
            Quantity::DeltaAngMagnitude => "|delta_ang|",
            Quantity::FrequencyKick => match report.shift.scheme {
                Scheme::Reflection => "f_r - 1",
                Scheme::Link => "f_l - 1",
            },
            Quantity::BoundSchwarzschild => "dr_S/r_S",
            Quantity::BoundEarthRadius => "dR_E/R_E",
            Quantity::BoundAltitude => "dh/h",
        }
    }

    pub fn extract(&self, report: &ScenarioReport) -> f64 {
        let r_s = orbit_radius(report);
        match self {
            Quantity::MassOverOrbit => report.scenario.earth.mass_length / r_s,
            Quantity::LphiOverRs => report.legs[0].constants.l_phi.abs() / r_s,
            Quantity::KappaOverRs2 => report.legs[0].constants.kappa / (r_s * r_s),
            Quantity::DeltaAngMagnitude => report.shift.delta_ang_in.abs(),
            Quantity::FrequencyKick => report.shift.f - 1.0,
            Quantity::BoundSchwarzschild => report.metrology.rs_rel_bound,
            Quantity::BoundEarthRadius => report.metrology.re_rel_bound,
            Quantity::BoundAltitude => report.metrology.h_rel_bound,
        }
    }
}

/// One reference entry: which scenario, which quantity, what value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GoldenEntry {
    pub scenario: &'static str,
    pub quantity: Quantity,
    pub golden: f64,
    pub tolerance: Tolerance,
}

const ABS_2DP: Tolerance = Tolerance::Absolute(0.01);
const REL_1PC: Tolerance = Tolerance::Relative(0.01);
const REL_2PC: Tolerance = Tolerance::Relative(0.02);

/// Geodesic constants, angular functions, and frequency shifts.
#[rustfmt::skip]
pub const TABLE1: [GoldenEntry; 21] = [
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::MassOverOrbit, golden: 5.29e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::MassOverOrbit, golden: 6.69e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::LphiOverRs, golden: 1.01e-4, tolerance: REL_1PC },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::LphiOverRs, golden: 8.99e-5, tolerance: REL_1PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::LphiOverRs, golden: 7.64e-4, tolerance: REL_1PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::KappaOverRs2, golden: 0.49, tolerance: ABS_2DP },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::KappaOverRs2, golden: 0.58, tolerance: ABS_2DP },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::KappaOverRs2, golden: 0.88, tolerance: ABS_2DP },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::DeltaAngMagnitude, golden: 0.70, tolerance: ABS_2DP },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::DeltaAngMagnitude, golden: 0.76, tolerance: ABS_2DP },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::DeltaAngMagnitude, golden: 0.91, tolerance: ABS_2DP },
    GoldenEntry { scenario: "leo-reflect-lab1", quantity: Quantity::FrequencyKick, golden: -3.22e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab2", quantity: Quantity::FrequencyKick, golden: -3.50e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1-lab2", quantity: Quantity::FrequencyKick, golden: -3.36e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-reflect-lab1", quantity: Quantity::FrequencyKick, golden: -4.71e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::FrequencyKick, golden: 1.61e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-up-lab1", quantity: Quantity::FrequencyKick, golden: -1.61e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::FrequencyKick, golden: 1.75e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-up-lab2", quantity: Quantity::FrequencyKick, golden: -1.75e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::FrequencyKick, golden: 2.35e-5, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-up-lab1", quantity: Quantity::FrequencyKick, golden: -2.35e-5, tolerance: REL_2PC },
];

/// Precision bounds for the seven reference configurations.
#[rustfmt::skip]
pub const TABLE2: [GoldenEntry; 21] = [
    GoldenEntry { scenario: "leo-reflect-lab1-lab2", quantity: Quantity::BoundSchwarzschild, golden: 8.50e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1-lab2", quantity: Quantity::BoundEarthRadius, golden: 1.12e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1-lab2", quantity: Quantity::BoundAltitude, golden: 3.56e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1", quantity: Quantity::BoundSchwarzschild, golden: 8.87e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1", quantity: Quantity::BoundEarthRadius, golden: 1.17e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab1", quantity: Quantity::BoundAltitude, golden: 3.71e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab2", quantity: Quantity::BoundSchwarzschild, golden: 8.15e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab2", quantity: Quantity::BoundEarthRadius, golden: 1.07e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-reflect-lab2", quantity: Quantity::BoundAltitude, golden: 3.41e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::BoundSchwarzschild, golden: 1.77e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::BoundEarthRadius, golden: 2.33e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab1", quantity: Quantity::BoundAltitude, golden: 7.43e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::BoundSchwarzschild, golden: 1.63e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::BoundEarthRadius, golden: 2.14e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "leo-link-down-lab2", quantity: Quantity::BoundAltitude, golden: 6.83e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-reflect-lab1", quantity: Quantity::BoundSchwarzschild, golden: 6.06e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-reflect-lab1", quantity: Quantity::BoundEarthRadius, golden: 6.30e-10, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-reflect-lab1", quantity: Quantity::BoundAltitude, golden: 1.57e-8, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::BoundSchwarzschild, golden: 1.21e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::BoundEarthRadius, golden: 1.26e-9, tolerance: REL_2PC },
    GoldenEntry { scenario: "vleo-link-down-lab1", quantity: Quantity::BoundAltitude, golden: 3.15e-8, tolerance: REL_2PC },
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_semantics() {
        assert!(Tolerance::Absolute(0.01).check(0.577, 0.58));
        assert!(!Tolerance::Absolute(0.01).check(0.60, 0.58));
        assert!(Tolerance::Relative(0.02).check(-3.221e-5, -3.22e-5));
        // Sign mismatches always fail a relative comparison.
        assert!(!Tolerance::Relative(0.02).check(3.22e-5, -3.22e-5));
        assert_eq!(Tolerance::Relative(0.02).allowed(-2.0), 0.04);
    }

    #[test]
    fn tables_reference_real_catalog_entries() {
        let names: std::collections::BTreeSet<String> = satshift_core::scenario::builtin_catalog()
            .into_iter()
            .map(|s| s.name)
            .collect();
        for entry in TABLE1.iter().chain(TABLE2.iter()) {
            assert!(
                names.contains(entry.scenario),
                "{} is not a catalog entry",
                entry.scenario
            );
        }
    }
}
