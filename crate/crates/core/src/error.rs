//! Error types shared across the crate.

use crate::numerics::QuadratureResult;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;

/// Which radicand of the null vector failed to stay non-negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RadicandKind {
    /// The radial radicand `1 - (1 - 2M/r)(l_phi^2 + kappa)/r^2`.
    Radial,
    /// The polar radicand `kappa - l_phi^2 cot^2(theta)`.
    Polar,
}

impl std::fmt::Display for RadicandKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RadicandKind::Radial => write!(f, "radial"),
            RadicandKind::Polar => write!(f, "polar"),
        }
    }
}

/// Unified error type for all modules.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid integration interval [{a}, {b}]: bounds must be finite with a < b")]
    InvalidInterval { a: f64, b: f64 },

    #[error("invalid relative tolerance {0}: outside the accepted range")]
    InvalidTolerance(f64),

    #[error(
        "quadrature did not converge within the subdivision budget; \
         partial value {value}, error estimate {error}",
        value = partial.value,
        error = partial.abs_error_estimate
    )]
    QuadratureBudget { partial: QuadratureResult },

    #[error("function returned a non-finite value at x = {abscissa}")]
    NonFiniteEvaluation { abscissa: f64 },

    #[error("invalid root bracket [{lo}, {hi}]: lo must be strictly below hi")]
    InvalidBracket { lo: f64, hi: f64 },

    #[error("no sign change on [{lo}, {hi}]: g(lo) = {g_lo}, g(hi) = {g_hi}")]
    NoSignChange {
        lo: f64,
        hi: f64,
        g_lo: f64,
        g_hi: f64,
    },

    #[error("root finder exhausted its iteration budget; best bracket [{lo}, {hi}]")]
    RootBudget { lo: f64, hi: f64 },

    #[error("radius {r} m does not exceed the Schwarzschild radius {schwarzschild_radius} m")]
    HorizonViolation { r: f64, schwarzschild_radius: f64 },

    #[error("polar angle {theta} rad lies outside the open interval (0, pi)")]
    PolarAngleRange { theta: f64 },

    #[error("inclination domain violated: sin(alpha) = {sin_alpha} exceeds sin(theta_s) = {sin_theta_s}")]
    InclinationDomain { sin_alpha: f64, sin_theta_s: f64 },

    #[error("satellite four-velocity radicand {radicand} is not positive; orbit is too deep in the potential")]
    OrbitRadicand { radicand: f64 },

    #[error("{kind} radicand is negative ({value}) at r = {r} m, theta = {theta} rad: turning point reached")]
    TurningPoint {
        kind: RadicandKind,
        r: f64,
        theta: f64,
        value: f64,
    },

    #[error("measured frequency {omega} is not positive; vectors are not a future-directed pair")]
    NonPositiveFrequency { omega: f64 },

    #[error(
        "no turning-point-free null geodesic connects the endpoints: \
         requested polar separation {requested_deg} deg exceeds the maximum {max_deg} deg \
         subtendable between r = {r_min} m and r = {r_max} m"
    )]
    NoGeodesic {
        requested_deg: f64,
        max_deg: f64,
        r_min: f64,
        r_max: f64,
    },

    #[error("degenerate leg geometry: {0}")]
    DegenerateLeg(String),

    #[error(
        "azimuthal perturbative regime violated: |delta_phi| / |cot(theta2) - cot(theta1)| = {ratio} \
         exceeds the validity threshold {threshold}"
    )]
    AzimuthalRegime { ratio: f64, threshold: f64 },

    #[error("shift denominator {denominator} is not positive: unphysical parameters")]
    UnphysicalShift { denominator: f64 },

    #[error("quantum Fisher information is zero; the precision bound is unbounded")]
    UnboundedBound,

    #[error("invalid {name} = {value}: {requirement}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        requirement: &'static str,
    },

    #[error("scenario parse error at line {line}: {message}")]
    ScenarioParse { line: usize, message: String },

    #[error("scenario validation failed: {0}")]
    ScenarioInvalid(String),

    #[error("could not read {path}: {source}")]
    Io {
        path: std::path::PathBuf,
        source: std::io::Error,
    },
}
