//! Scenario data model, the built-in configuration catalog, plain-text
//! scenario files, and end-to-end resolution into per-scenario reports.
//!
//! Interface units are degrees and kilometers; everything is converted to
//! radians and meters when the spacetime objects are built.

use std::collections::BTreeMap;
use std::path::Path;

use crate::error::{Error, Result};
use crate::metrology::{self, MetrologyInputs, MetrologyReport, WavePacket};
use crate::shifts::{link_shift, reflect_return_constants, reflection_shift, Scheme, ShiftResult};
use crate::spacetime::{
    solve_leg, EarthModel, Event, LegDirection, LegGeometry, OrbitClass, OrbitSpec,
};

/// Default number of probe photons.
pub const DEFAULT_PROBES: u64 = 10_000_000_000;

/// A ground station in interface units.
#[derive(Debug, Clone, PartialEq)]
pub struct StationSpec {
    pub name: String,
    /// Radial coordinate (meters); the surface radius for ordinary labs.
    pub radius: f64,
    /// Polar angle from the North pole (degrees).
    pub theta_deg: f64,
    /// Longitude (degrees).
    pub phi_deg: f64,
}

impl StationSpec {
    pub fn on_surface(name: &str, earth: &EarthModel, theta_deg: f64, phi_deg: f64) -> Self {
        Self {
            name: name.to_owned(),
            radius: earth.earth_radius,
            theta_deg,
            phi_deg,
        }
    }

    /// Spacetime event of the station.
    pub fn event(&self) -> Event {
        Event::spatial(
            self.radius,
            self.theta_deg.to_radians(),
            self.phi_deg.to_radians(),
        )
    }
}

/// Orbit description in interface units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitConfig {
    pub class: OrbitClass,
    pub altitude_km: f64,
    pub inclination_deg: f64,
    pub event_theta_deg: f64,
    pub event_phi_deg: f64,
}

impl OrbitConfig {
    /// Builds the spacetime orbit object, converting units and validating.
    pub fn to_orbit_spec(&self, model: &EarthModel) -> Result<OrbitSpec> {
        OrbitSpec::new(
            model,
            model.earth_radius + self.altitude_km * 1e3,
            self.inclination_deg.to_radians(),
            self.event_theta_deg.to_radians(),
            self.event_phi_deg.to_radians(),
            self.class,
        )
    }
}

/// A complete photon-exchange configuration.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    /// Display identifier; not part of the file format.
    pub name: String,
    pub scheme: Scheme,
    pub earth: EarthModel,
    pub orbit: OrbitConfig,
    pub station_a: StationSpec,
    /// Second ground station; absent when a reflection returns to the
    /// emitting station.
    pub station_b: Option<StationSpec>,
    /// Propagation sense; meaningful only for the link scheme.
    pub link_direction: Option<LegDirection>,
    pub wavepacket: WavePacket,
    pub probes: u64,
}

impl Scenario {
    /// Checks the structural invariants and interface-unit ranges.
    pub fn validate(&self) -> Result<()> {
        match self.scheme {
            Scheme::Link => {
                if self.link_direction.is_none() {
                    return Err(Error::ScenarioInvalid(
                        "link scheme requires a direction".into(),
                    ));
                }
                if self.station_b.is_some() {
                    return Err(Error::ScenarioInvalid(
                        "link scheme has exactly one ground endpoint; remove station_b".into(),
                    ));
                }
            }
            Scheme::Reflection => {
                if self.link_direction.is_some() {
                    return Err(Error::ScenarioInvalid(
                        "direction is only meaningful for the link scheme".into(),
                    ));
                }
            }
        }
        for station in std::iter::once(&self.station_a).chain(self.station_b.iter()) {
            if !(station.theta_deg > 0.0 && station.theta_deg < 180.0) {
                return Err(Error::ScenarioInvalid(format!(
                    "station {}: theta_deg = {} must lie strictly between 0 and 180",
                    station.name, station.theta_deg
                )));
            }
            if station.radius < self.earth.earth_radius {
                return Err(Error::ScenarioInvalid(format!(
                    "station {}: radius {} m lies below the surface",
                    station.name, station.radius
                )));
            }
        }
        if self.probes == 0 {
            return Err(Error::ScenarioInvalid("probes must be at least 1".into()));
        }
        self.orbit
            .to_orbit_spec(&self.earth)
            .map_err(|e| Error::ScenarioInvalid(e.to_string()))?;
        Ok(())
    }
}

/// A fully resolved scenario: legs, shift, and metrology, plus an echo of the
/// inputs that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioReport {
    pub scenario: Scenario,
    /// The perturbative parameter sqrt(M/R_s).
    pub epsilon: f64,
    pub legs: Vec<LegGeometry>,
    pub shift: ShiftResult,
    pub metrology: MetrologyReport,
}

fn lab1(earth: &EarthModel) -> StationSpec {
    StationSpec::on_surface("Lab1", earth, 37.48, 13.40)
}

fn lab2(earth: &EarthModel) -> StationSpec {
    StationSpec::on_surface("Lab2", earth, 51.88, 13.36)
}

const LEO_ORBIT: OrbitConfig = OrbitConfig {
    class: OrbitClass::Leo,
    altitude_km: 2000.0,
    inclination_deg: 0.0,
    event_theta_deg: 15.0,
    event_phi_deg: 13.38,
};

const VLEO_ORBIT: OrbitConfig = OrbitConfig {
    class: OrbitClass::Vleo,
    altitude_km: 255.0,
    inclination_deg: 6.7,
    event_theta_deg: 30.0,
    event_phi_deg: 13.38,
};

// The equatorial template carries no reference values; the radius is the
// standard geostationary one.
const GEO_ORBIT: OrbitConfig = OrbitConfig {
    class: OrbitClass::Geo,
    altitude_km: 35_793.0,
    inclination_deg: 90.0,
    event_theta_deg: 90.0,
    event_phi_deg: 13.38,
};

/// The built-in configurations: the reference reflection and link setups for
/// the low and very low orbits, plus equatorial templates.
pub fn builtin_catalog() -> Vec<Scenario> {
    let earth = EarthModel::default();
    let base = |name: &str, scheme: Scheme, orbit: OrbitConfig| Scenario {
        name: name.to_owned(),
        scheme,
        earth,
        orbit,
        station_a: lab1(&earth),
        station_b: None,
        link_direction: None,
        wavepacket: WavePacket::default(),
        probes: DEFAULT_PROBES,
    };
    let link = |name: &str, orbit: OrbitConfig, direction: LegDirection| Scenario {
        link_direction: Some(direction),
        ..base(name, Scheme::Link, orbit)
    };

    vec![
        base("leo-reflect-lab1", Scheme::Reflection, LEO_ORBIT),
        Scenario {
            station_a: lab2(&earth),
            ..base("leo-reflect-lab2", Scheme::Reflection, LEO_ORBIT)
        },
        Scenario {
            station_b: Some(lab2(&earth)),
            ..base("leo-reflect-lab1-lab2", Scheme::Reflection, LEO_ORBIT)
        },
        link("leo-link-up-lab1", LEO_ORBIT, LegDirection::Uplink),
        link("leo-link-down-lab1", LEO_ORBIT, LegDirection::Downlink),
        Scenario {
            station_a: lab2(&earth),
            ..link("leo-link-up-lab2", LEO_ORBIT, LegDirection::Uplink)
        },
        Scenario {
            station_a: lab2(&earth),
            ..link("leo-link-down-lab2", LEO_ORBIT, LegDirection::Downlink)
        },
        base("vleo-reflect-lab1", Scheme::Reflection, VLEO_ORBIT),
        link("vleo-link-up-lab1", VLEO_ORBIT, LegDirection::Uplink),
        link("vleo-link-down-lab1", VLEO_ORBIT, LegDirection::Downlink),
        base("geo-reflect-lab1", Scheme::Reflection, GEO_ORBIT),
        link("geo-link-down-lab1", GEO_ORBIT, LegDirection::Downlink),
    ]
}

/// Solves the legs, shift, and metrology chain of a scenario.
pub fn resolve(scenario: &Scenario) -> Result<ScenarioReport> {
    scenario.validate()?;
    let model = &scenario.earth;
    let orbit = scenario.orbit.to_orbit_spec(model)?;
    let sat_event = Event::spatial(orbit.orbit_radius, orbit.event_theta, orbit.event_phi);
    let ground_a = scenario.station_a.event();

    let (legs, shift) = match scenario.scheme {
        Scheme::Reflection => {
            let up = solve_leg(model, ground_a, sat_event, LegDirection::Uplink)?;
            let down = match &scenario.station_b {
                // Same-station return: the mirror flips the angular senses.
                None => LegGeometry {
                    from: sat_event,
                    to: ground_a,
                    constants: reflect_return_constants(&up.constants),
                    direction: LegDirection::Downlink,
                },
                // Two-station return: an independent geometry with its own constants.
                Some(b) => solve_leg(model, sat_event, b.event(), LegDirection::Downlink)?,
            };
            let shift = reflection_shift(model, &orbit, &up.constants, &down.constants)?;
            (vec![up, down], shift)
        }
        Scheme::Link => {
            let direction = scenario
                .link_direction
                .expect("validated: link scenarios carry a direction");
            let leg = match direction {
                LegDirection::Uplink => solve_leg(model, ground_a, sat_event, direction)?,
                LegDirection::Downlink => solve_leg(model, sat_event, ground_a, direction)?,
            };
            let shift = link_shift(model, &orbit, &leg.constants)?;
            (vec![leg], shift)
        }
    };

    let epsilon = (model.mass_length / orbit.orbit_radius).sqrt();
    let inputs = MetrologyInputs::new(
        epsilon,
        shift.delta_ang_in,
        shift.delta_ang_out.unwrap_or(0.0),
        scenario.probes,
        0.0,
        scenario.wavepacket,
    )?;
    let metrology = metrology::report(&inputs, model, &orbit)?;

    Ok(ScenarioReport {
        scenario: scenario.clone(),
        epsilon,
        legs,
        shift,
        metrology,
    })
}

/// Parses a scenario from the flat `key = value` text format.
///
/// Lines are independent; `#` starts a comment; unknown or duplicate keys are
/// rejected. Angles are degrees and the altitude is kilometers. Omitted
/// wavepacket and probe keys fall back to the standard defaults.
pub fn parse_scenario(text: &str) -> Result<Scenario> {
    let mut entries: BTreeMap<String, (usize, String)> = BTreeMap::new();
    for (idx, raw_line) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw_line.find('#') {
            Some(pos) => &raw_line[..pos],
            None => raw_line,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(Error::ScenarioParse {
                line: line_no,
                message: format!("expected 'key = value', found {line:?}"),
            });
        };
        let key = key.trim().to_owned();
        let value = value.trim().to_owned();
        if value.is_empty() {
            return Err(Error::ScenarioParse {
                line: line_no,
                message: format!("key '{key}' has an empty value"),
            });
        }
        if let Some((first_line, _)) = entries.get(&key) {
            return Err(Error::ScenarioParse {
                line: line_no,
                message: format!("duplicate key '{key}' (first set on line {first_line})"),
            });
        }
        entries.insert(key, (line_no, value));
    }

    let mut take = |key: &str| entries.remove(key);
    let required = |field: Option<(usize, String)>, key: &str| {
        field.ok_or_else(|| Error::ScenarioParse {
            line: 0,
            message: format!("missing required key '{key}'"),
        })
    };
    let number = |(line, value): (usize, String), key: &str| {
        value.parse::<f64>().map_err(|_| Error::ScenarioParse {
            line,
            message: format!("key '{key}': {value:?} is not a number"),
        })
    };

    let scheme = match required(take("scheme"), "scheme")? {
        (_, v) if v == "reflection" => Scheme::Reflection,
        (_, v) if v == "link" => Scheme::Link,
        (line, v) => {
            return Err(Error::ScenarioParse {
                line,
                message: format!("scheme must be 'reflection' or 'link', found {v:?}"),
            })
        }
    };

    let class = match take("orbit.class") {
        None => OrbitClass::Custom,
        Some((_, v)) if v == "GEO" => OrbitClass::Geo,
        Some((_, v)) if v == "LEO" => OrbitClass::Leo,
        Some((_, v)) if v == "VLEO" => OrbitClass::Vleo,
        Some((_, v)) if v == "custom" => OrbitClass::Custom,
        Some((line, v)) => {
            return Err(Error::ScenarioParse {
                line,
                message: format!("orbit.class must be GEO, LEO, VLEO, or custom, found {v:?}"),
            })
        }
    };

    let orbit = OrbitConfig {
        class,
        altitude_km: number(
            required(take("orbit.altitude_km"), "orbit.altitude_km")?,
            "orbit.altitude_km",
        )?,
        inclination_deg: number(
            required(take("orbit.inclination_deg"), "orbit.inclination_deg")?,
            "orbit.inclination_deg",
        )?,
        event_theta_deg: number(
            required(take("orbit.event_theta_deg"), "orbit.event_theta_deg")?,
            "orbit.event_theta_deg",
        )?,
        event_phi_deg: number(
            required(take("orbit.event_phi_deg"), "orbit.event_phi_deg")?,
            "orbit.event_phi_deg",
        )?,
    };

    let earth = EarthModel::default();
    let station_a = StationSpec::on_surface(
        "station_a",
        &earth,
        number(
            required(take("station_a.theta_deg"), "station_a.theta_deg")?,
            "station_a.theta_deg",
        )?,
        number(
            required(take("station_a.phi_deg"), "station_a.phi_deg")?,
            "station_a.phi_deg",
        )?,
    );

    let station_b = match (take("station_b.theta_deg"), take("station_b.phi_deg")) {
        (None, None) => None,
        (Some(theta), Some(phi)) => Some(StationSpec::on_surface(
            "station_b",
            &earth,
            number(theta, "station_b.theta_deg")?,
            number(phi, "station_b.phi_deg")?,
        )),
        (Some((line, _)), None) | (None, Some((line, _))) => {
            return Err(Error::ScenarioParse {
                line,
                message: "station_b requires both theta_deg and phi_deg".into(),
            })
        }
    };

    let link_direction = match take("direction") {
        None => None,
        Some((_, v)) if v == "uplink" => Some(LegDirection::Uplink),
        Some((_, v)) if v == "downlink" => Some(LegDirection::Downlink),
        Some((line, v)) => {
            return Err(Error::ScenarioParse {
                line,
                message: format!("direction must be 'uplink' or 'downlink', found {v:?}"),
            })
        }
    };

    let default_wp = WavePacket::default();
    let peak = match take("wavepacket.peak_hz") {
        None => default_wp.peak_frequency,
        Some(entry) => number(entry, "wavepacket.peak_hz")?,
    };
    let sigma = match take("wavepacket.sigma_hz") {
        None => default_wp.bandwidth,
        Some(entry) => number(entry, "wavepacket.sigma_hz")?,
    };
    let wavepacket =
        WavePacket::new(peak, sigma).map_err(|e| Error::ScenarioInvalid(e.to_string()))?;

    let probes = match take("probes") {
        None => DEFAULT_PROBES,
        Some((line, v)) => {
            let parsed = v
                .parse::<u64>()
                .ok()
                .or_else(|| {
                    v.parse::<f64>().ok().and_then(|x| {
                        (x.is_finite() && x >= 1.0 && x <= 2f64.powi(53) && x.fract() == 0.0)
                            .then_some(x as u64)
                    })
                })
                .ok_or_else(|| Error::ScenarioParse {
                    line,
                    message: format!("probes must be a positive integer, found {v:?}"),
                })?;
            parsed
        }
    };

    if let Some((key, (line, _))) = entries.iter().next() {
        return Err(Error::ScenarioParse {
            line: *line,
            message: format!("unknown key '{key}'"),
        });
    }

    let scenario = Scenario {
        name: "custom".to_owned(),
        scheme,
        earth,
        orbit,
        station_a,
        station_b,
        link_direction,
        wavepacket,
        probes,
    };
    scenario.validate()?;
    Ok(scenario)
}

/// Loads a scenario file, naming it after the file stem.
pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_owned(),
        source,
    })?;
    let mut scenario = parse_scenario(&text)?;
    if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
        scenario.name = stem.to_owned();
    }
    Ok(scenario)
}

/// Renders a scenario in the flat text format understood by
/// [`parse_scenario`].
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let mut out = String::new();
    let mut push = |key: &str, value: String| {
        out.push_str(key);
        out.push_str(" = ");
        out.push_str(&value);
        out.push('\n');
    };
    push("scheme", scenario.scheme.to_string());
    push("orbit.class", scenario.orbit.class.to_string());
    push("orbit.altitude_km", scenario.orbit.altitude_km.to_string());
    push(
        "orbit.inclination_deg",
        scenario.orbit.inclination_deg.to_string(),
    );
    push(
        "orbit.event_theta_deg",
        scenario.orbit.event_theta_deg.to_string(),
    );
    push(
        "orbit.event_phi_deg",
        scenario.orbit.event_phi_deg.to_string(),
    );
    push(
        "station_a.theta_deg",
        scenario.station_a.theta_deg.to_string(),
    );
    push("station_a.phi_deg", scenario.station_a.phi_deg.to_string());
    if let Some(b) = &scenario.station_b {
        push("station_b.theta_deg", b.theta_deg.to_string());
        push("station_b.phi_deg", b.phi_deg.to_string());
    }
    if let Some(direction) = scenario.link_direction {
        push("direction", direction.to_string());
    }
    push(
        "wavepacket.peak_hz",
        scenario.wavepacket.peak_frequency.to_string(),
    );
    push(
        "wavepacket.sigma_hz",
        scenario.wavepacket.bandwidth.to_string(),
    );
    push("probes", scenario.probes.to_string());
    out
}
