//! The four subcommand implementations.

use std::collections::BTreeMap;
use std::path::Path;

use satshift_core::scenario::{builtin_catalog, load_scenario, resolve};
use satshift_core::{Error, Result, Scenario, ScenarioReport};

use crate::golden::{GoldenEntry, Tolerance, TABLE1, TABLE2};
use crate::output::OutputRow;

/// Resolves every built-in scenario once, keyed by name.
fn resolved_catalog() -> Result<BTreeMap<String, ScenarioReport>> {
    builtin_catalog()
        .into_iter()
        .map(|scenario| Ok((scenario.name.clone(), resolve(&scenario)?)))
        .collect()
}

fn golden_rows(entries: &[GoldenEntry], tolerance_override: Option<f64>) -> Result<Vec<OutputRow>> {
    let reports = resolved_catalog()?;
    entries
        .iter()
        .map(|entry| {
            let report = reports
                .get(entry.scenario)
                .unwrap_or_else(|| panic!("catalog is missing scenario {}", entry.scenario));
            let value = entry.quantity.extract(report);
            let tolerance = match tolerance_override {
                Some(rel) => Tolerance::Relative(rel),
                None => entry.tolerance,
            };
            Ok(OutputRow {
                scenario: entry.scenario.to_owned(),
                quantity: entry.quantity.label(report).to_owned(),
                value,
                units: "-".to_owned(),
                golden: Some(entry.golden),
                within_tolerance: Some(tolerance.check(value, entry.golden)),
            })
        })
        .collect()
}

/// Geodesic constants, angular functions, and shifts for every reference
/// configuration, checked against the stored values.
pub fn cmd_table1(tolerance_override: Option<f64>) -> Result<Vec<OutputRow>> {
    golden_rows(&TABLE1, tolerance_override)
}

/// Precision bounds for every reference configuration, checked against the
/// stored values.
pub fn cmd_table2(tolerance_override: Option<f64>) -> Result<Vec<OutputRow>> {
    golden_rows(&TABLE2, tolerance_override)
}

/// A validation row with its deviation budget, for the margin printout.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidatedRow {
    pub row: OutputRow,
    pub deviation: f64,
    pub allowed: f64,
}

/// Runs both golden tables and reports per-row margins.
pub fn cmd_validate(tolerance_override: Option<f64>) -> Result<Vec<ValidatedRow>> {
    let reports = resolved_catalog()?;
    let mut rows = Vec::with_capacity(TABLE1.len() + TABLE2.len());
    for entry in TABLE1.iter().chain(TABLE2.iter()) {
        let report = &reports[entry.scenario];
        let value = entry.quantity.extract(report);
        let tolerance = match tolerance_override {
            Some(rel) => Tolerance::Relative(rel),
            None => entry.tolerance,
        };
        let allowed = tolerance.allowed(entry.golden);
        let deviation = (value - entry.golden).abs();
        rows.push(ValidatedRow {
            row: OutputRow {
                scenario: entry.scenario.to_owned(),
                quantity: entry.quantity.label(report).to_owned(),
                value,
                units: "-".to_owned(),
                golden: Some(entry.golden),
                within_tolerance: Some(deviation <= allowed),
            },
            deviation,
            allowed,
        });
    }
    Ok(rows)
}

/// Renders the validation rows with their margins, one line per row.
pub fn render_validation(rows: &[ValidatedRow]) -> String {
    let mut out = String::new();
    for v in rows {
        let status = if v.row.within_tolerance == Some(true) {
            "pass"
        } else {
            "FAIL"
        };
        out.push_str(&format!(
            "{status}  {:<22} {:<12} value {:>13.6e}  golden {:>10.3e}  |dev| {:>10.3e}  allowed {:>10.3e}\n",
            v.row.scenario,
            v.row.quantity,
            v.row.value,
            v.row.golden.unwrap_or(f64::NAN),
            v.deviation,
            v.allowed,
        ));
    }
    let failures = rows
        .iter()
        .filter(|v| v.row.within_tolerance != Some(true))
        .count();
    if failures == 0 {
        out.push_str(&format!("all {} reference checks passed\n", rows.len()));
    } else {
        out.push_str(&format!(
            "{failures} of {} reference checks failed\n",
            rows.len()
        ));
    }
    out
}

fn bool_as_f64(b: bool) -> f64 {
    if b {
        1.0
    } else {
        0.0
    }
}

/// Resolves one scenario into its full row set.
pub fn analyze_scenario(scenario: &Scenario) -> Result<Vec<OutputRow>> {
    let report = resolve(scenario)?;
    let name = &report.scenario.name;
    let r_s = report.scenario.earth.earth_radius + report.scenario.orbit.altitude_km * 1e3;

    let mut rows = Vec::new();
    let mut push = |quantity: &str, value: f64, units: &str| {
        rows.push(OutputRow::plain(name, quantity, value, units));
    };

    push("orbit_radius", r_s, "m");
    push("epsilon", report.epsilon, "-");
    for (i, leg) in report.legs.iter().enumerate() {
        let tag = i + 1;
        push(&format!("leg{tag}.kappa"), leg.constants.kappa, "m^2");
        push(
            &format!("leg{tag}.kappa/R_s^2"),
            leg.constants.kappa / (r_s * r_s),
            "-",
        );
        push(&format!("leg{tag}.l_phi"), leg.constants.l_phi, "m");
        push(
            &format!("leg{tag}.l_phi/R_s"),
            leg.constants.l_phi / r_s,
            "-",
        );
        push(
            &format!("leg{tag}.eps_r"),
            leg.constants.eps_r.factor(),
            "-",
        );
        push(
            &format!("leg{tag}.eps_theta"),
            leg.constants.eps_theta.factor(),
            "-",
        );
    }
    push("delta_ang_in", report.shift.delta_ang_in, "-");
    if let Some(delta_out) = report.shift.delta_ang_out {
        push("delta_ang_out", delta_out, "-");
    }
    push("f", report.shift.f, "-");
    push("f - 1", report.shift.f - 1.0, "-");
    push("grav_factor", report.shift.gravitational_factor, "-");
    push("qfi", report.metrology.qfi, "-");
    push("eps_bound", report.metrology.eps_bound, "-");
    push("dr_S/r_S", report.metrology.rs_rel_bound, "-");
    push("dR_E/R_E", report.metrology.re_rel_bound, "-");
    push("dh/h", report.metrology.h_rel_bound, "-");
    push("fidelity", report.metrology.fidelity, "-");
    push("qber", report.metrology.qber, "-");
    push("regime_ok", bool_as_f64(report.metrology.regime_ok), "-");
    push("probes", report.scenario.probes as f64, "-");
    Ok(rows)
}

/// Loads and resolves a scenario file.
pub fn cmd_analyze(path: &Path) -> Result<Vec<OutputRow>> {
    let scenario = load_scenario(path)?;
    analyze_scenario(&scenario)
}

/// Exit code classification: bad input files are usage errors, everything
/// else is a computation failure.
pub fn exit_code_for(error: &Error) -> u8 {
    match error {
        Error::ScenarioParse { .. } | Error::ScenarioInvalid(_) | Error::Io { .. } => 2,
        _ => 1,
    }
}
