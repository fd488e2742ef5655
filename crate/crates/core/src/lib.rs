//! Frequency shifts and quantum-metrology precision bounds for photons
//! exchanged between ground stations and orbiting satellites around a
//! Schwarzschild mass.
//!
//! The computation proceeds in four stages:
//!
//! 1. [`spacetime`] solves the conserved constants of each photon leg from
//!    the endpoint coordinates (an adaptive quadrature plus bracketed root
//!    finding, both in [`numerics`]).
//! 2. [`shifts`] turns those constants into the frequency ratio of the
//!    exchange: an energy kick for mirror reflections, gravitational plus
//!    Doppler shift for one-way links.
//! 3. [`metrology`] converts the shift into wavepacket overlaps, quantum
//!    Fisher information, Cramer-Rao precision bounds on the central mass's
//!    Schwarzschild radius, the surface radius, and the orbit altitude, and
//!    the quantum bit error rate of an uncorrected key exchange.
//! 4. [`scenario`] wires the stages together for named configurations, with
//!    a built-in catalog and a plain-text file format.

pub mod error;
pub mod metrology;
pub mod numerics;
pub mod scenario;
pub mod shifts;
pub mod spacetime;

pub use error::{Error, Result};
pub use metrology::{MetrologyInputs, MetrologyReport, WavePacket};
pub use scenario::{
    builtin_catalog, load_scenario, resolve, Scenario, ScenarioReport, StationSpec,
};
pub use shifts::{Scheme, ShiftResult};
pub use spacetime::{
    EarthModel, Event, FourVector, LegDirection, LegGeometry, MetricDiag, OrbitClass, OrbitSpec,
    RayConstants, Sign,
};
