//! Schwarzschild spacetime primitives: metric, observer four-velocities,
//! photon null vectors, and the solver for the conserved constants of a
//! light leg between two spatial points.
//!
//! Geometric units are used throughout (c = G = 1), so the central mass has
//! the dimension of a length. Angles are radians; the polar angle theta is
//! measured from the North pole. The photon energy constant is stored as an
//! angular frequency (energy over hbar), so downstream formulas only ever
//! consume frequency ratios.

use crate::error::{Error, RadicandKind, Result};
use crate::numerics::{self, RootBracket};

/// Sign of a direction component, constrained to +1 or -1.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// The sign as a floating-point factor.
    pub fn factor(self) -> f64 {
        match self {
            Sign::Plus => 1.0,
            Sign::Minus => -1.0,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// Sign of `x`, mapping non-negative values to `Plus`.
    pub fn of(x: f64) -> Sign {
        if x < 0.0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }
}

/// Central mass model: geometric mass and surface radius, both in meters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EarthModel {
    /// Geometric mass M (meters).
    pub mass_length: f64,
    /// Surface radius R_E (meters).
    pub earth_radius: f64,
}

impl EarthModel {
    /// Builds a model, requiring a weak-field hierarchy M/R_E < 1e-6.
    ///
    /// A zero mass is accepted; it yields flat spacetime and is useful for
    /// cross-checks against closed forms.
    pub fn new(mass_length: f64, earth_radius: f64) -> Result<Self> {
        if !(mass_length >= 0.0 && mass_length.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "mass_length",
                value: mass_length,
                requirement: "must be finite and non-negative",
            });
        }
        if !(earth_radius > 0.0 && earth_radius.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "earth_radius",
                value: earth_radius,
                requirement: "must be finite and positive",
            });
        }
        if mass_length / earth_radius >= 1e-6 {
            return Err(Error::InvalidParameter {
                name: "mass_length",
                value: mass_length,
                requirement: "mass_length / earth_radius must stay below 1e-6",
            });
        }
        Ok(Self {
            mass_length,
            earth_radius,
        })
    }

    /// Schwarzschild radius r_S = 2M (meters).
    pub fn schwarzschild_radius(&self) -> f64 {
        2.0 * self.mass_length
    }
}

impl Default for EarthModel {
    /// Standard Earth: M = 4.43 mm, R_E = 6371 km.
    fn default() -> Self {
        Self {
            mass_length: 4.43e-3,
            earth_radius: 6.371e6,
        }
    }
}

/// A spacetime point in Schwarzschild coordinates.
///
/// The time coordinate is carried for completeness but plays no role in the
/// static computations of this crate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub t: f64,
    /// Areal radius (meters).
    pub r: f64,
    /// Polar angle from the North pole (radians).
    pub theta: f64,
    /// Azimuth (radians).
    pub phi: f64,
}

impl Event {
    /// Event at coordinate time zero.
    pub fn spatial(r: f64, theta: f64, phi: f64) -> Self {
        Self {
            t: 0.0,
            r,
            theta,
            phi,
        }
    }
}

/// Diagonal metric components at an event.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetricDiag {
    pub g_tt: f64,
    pub g_rr: f64,
    pub g_thth: f64,
    pub g_phph: f64,
}

/// Coordinate-basis components of a four-vector.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FourVector {
    pub t: f64,
    pub r: f64,
    pub theta: f64,
    pub phi: f64,
}

/// Circular-orbit satellite description.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitSpec {
    /// Orbit radius R_s (meters).
    pub orbit_radius: f64,
    /// Inclination of the orbital plane relative to the polar axis (radians).
    pub inclination: f64,
    /// Sign of the polar angular velocity.
    pub eps_omega: Sign,
    /// Sign of the azimuthal angular velocity.
    pub eps_zeta: Sign,
    /// Polar angle of the exchange event (radians).
    pub event_theta: f64,
    /// Azimuth of the exchange event (radians).
    pub event_phi: f64,
    pub class: OrbitClass,
}

/// Coarse orbit family tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    Geo,
    Leo,
    Vleo,
    Custom,
}

impl std::fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitClass::Geo => write!(f, "GEO"),
            OrbitClass::Leo => write!(f, "LEO"),
            OrbitClass::Vleo => write!(f, "VLEO"),
            OrbitClass::Custom => write!(f, "custom"),
        }
    }
}

impl OrbitSpec {
    /// Builds an orbit with the default positive angular-velocity signs.
    pub fn new(
        model: &EarthModel,
        orbit_radius: f64,
        inclination: f64,
        event_theta: f64,
        event_phi: f64,
        class: OrbitClass,
    ) -> Result<Self> {
        if !(orbit_radius.is_finite() && orbit_radius > model.earth_radius) {
            return Err(Error::InvalidParameter {
                name: "orbit_radius",
                value: orbit_radius,
                requirement: "must exceed the model's surface radius",
            });
        }
        if !(0.0..=std::f64::consts::PI).contains(&inclination) {
            return Err(Error::InvalidParameter {
                name: "inclination",
                value: inclination,
                requirement: "must lie in [0, pi]",
            });
        }
        if !(event_theta > 0.0 && event_theta < std::f64::consts::PI) {
            return Err(Error::PolarAngleRange { theta: event_theta });
        }
        let (sin_alpha, sin_theta) = (inclination.sin(), event_theta.sin());
        if sin_alpha > sin_theta {
            return Err(Error::InclinationDomain {
                sin_alpha,
                sin_theta_s: sin_theta,
            });
        }
        Ok(Self {
            orbit_radius,
            inclination,
            eps_omega: Sign::Plus,
            eps_zeta: Sign::Plus,
            event_theta,
            event_phi,
            class,
        })
    }

    /// Height above the surface (meters).
    pub fn altitude(&self, model: &EarthModel) -> f64 {
        self.orbit_radius - model.earth_radius
    }

    pub fn with_signs(mut self, eps_omega: Sign, eps_zeta: Sign) -> Self {
        self.eps_omega = eps_omega;
        self.eps_zeta = eps_zeta;
        self
    }
}

/// Conserved constants of a photon's null geodesic.
///
/// The angular constants are rescaled by the photon energy: `l_phi` has units
/// of meters and `kappa` of meters squared. The unrescaled angular momentum
/// and Carter constant follow by multiplying with the energy constant and its
/// square respectively.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RayConstants {
    /// Energy constant expressed as an angular frequency (E_p over hbar).
    pub omega_infinity: f64,
    /// Sign of the radial component.
    pub eps_r: Sign,
    /// Sign of the polar component.
    pub eps_theta: Sign,
    /// Rescaled azimuthal angular momentum (meters), signed.
    pub l_phi: f64,
    /// Rescaled Carter constant (meters squared), non-negative.
    pub kappa: f64,
}

impl RayConstants {
    pub fn new(
        omega_infinity: f64,
        eps_r: Sign,
        eps_theta: Sign,
        l_phi: f64,
        kappa: f64,
    ) -> Result<Self> {
        if !(omega_infinity > 0.0 && omega_infinity.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "omega_infinity",
                value: omega_infinity,
                requirement: "must be finite and positive",
            });
        }
        if !(kappa >= 0.0 && kappa.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "kappa",
                value: kappa,
                requirement: "must be finite and non-negative",
            });
        }
        if !l_phi.is_finite() {
            return Err(Error::InvalidParameter {
                name: "l_phi",
                value: l_phi,
                requirement: "must be finite",
            });
        }
        Ok(Self {
            omega_infinity,
            eps_r,
            eps_theta,
            l_phi,
            kappa,
        })
    }
}

/// Propagation sense of a leg relative to the ground.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LegDirection {
    /// Ground to satellite.
    Uplink,
    /// Satellite to ground.
    Downlink,
}

impl std::fmt::Display for LegDirection {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            LegDirection::Uplink => write!(f, "uplink"),
            LegDirection::Downlink => write!(f, "downlink"),
        }
    }
}

/// How the polar sign of a solved leg is assigned.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ThetaSignConvention {
    /// Uplinks get eps_theta = +1 and downlinks -1, reproducing the published
    /// reference tables (with the default eps_omega = +1 this fixes the sign
    /// product entering the angular shift function).
    #[default]
    TableOrientation,
    /// eps_theta follows the geometric sense of the polar sweep,
    /// sign(theta_to - theta_from).
    Geometric,
}

/// Tunable knobs of the leg solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    pub theta_sign: ThetaSignConvention,
    /// Upper bound on |delta_phi| / |cot(theta2) - cot(theta1)| for the
    /// perturbative azimuthal constant to be trusted.
    pub azimuthal_validity_threshold: f64,
    /// Relative tolerance for quadrature and root finding.
    pub tolerance: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            theta_sign: ThetaSignConvention::default(),
            azimuthal_validity_threshold: DEFAULT_AZIMUTHAL_VALIDITY_THRESHOLD,
            tolerance: numerics::DEFAULT_REL_TOL,
        }
    }
}

/// Default validity threshold for the perturbative azimuthal constant.
pub const DEFAULT_AZIMUTHAL_VALIDITY_THRESHOLD: f64 = 0.1;

/// A solved one-way light path between two spatial points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegGeometry {
    pub from: Event,
    pub to: Event,
    pub constants: RayConstants,
    pub direction: LegDirection,
}

/// Diagonal Schwarzschild metric at radius `r` and polar angle `theta`.
pub fn metric_diag(model: &EarthModel, r: f64, theta: f64) -> Result<MetricDiag> {
    let rs = model.schwarzschild_radius();
    if !(r.is_finite() && r > rs) {
        return Err(Error::HorizonViolation {
            r,
            schwarzschild_radius: rs,
        });
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::PolarAngleRange { theta });
    }
    let lapse = 1.0 - 2.0 * model.mass_length / r;
    let sin_theta = theta.sin();
    Ok(MetricDiag {
        g_tt: -lapse,
        g_rr: 1.0 / lapse,
        g_thth: r * r,
        g_phph: r * r * sin_theta * sin_theta,
    })
}

/// Metric inner product of two four-vectors expressed at the same event.
pub fn inner_product(a: &FourVector, b: &FourVector, g: &MetricDiag) -> f64 {
    g.g_tt * a.t * b.t
        + g.g_rr * a.r * b.r
        + g.g_thth * a.theta * b.theta
        + g.g_phph * a.phi * b.phi
}

/// Four-velocity of a static observer at radius `r`.
pub fn static_observer(model: &EarthModel, r: f64) -> Result<FourVector> {
    let rs = model.schwarzschild_radius();
    if !(r.is_finite() && r > rs) {
        return Err(Error::HorizonViolation {
            r,
            schwarzschild_radius: rs,
        });
    }
    Ok(FourVector {
        t: 1.0 / (1.0 - 2.0 * model.mass_length / r).sqrt(),
        r: 0.0,
        theta: 0.0,
        phi: 0.0,
    })
}

/// Coordinate angular velocities (omega, zeta) of the satellite, in rad/m of
/// coordinate time.
pub fn orbit_angular_velocities(model: &EarthModel, orbit: &OrbitSpec) -> Result<(f64, f64)> {
    let sin_alpha = orbit.inclination.sin();
    let sin_theta = orbit.event_theta.sin();
    let ratio2 = (sin_alpha / sin_theta).powi(2);
    if ratio2 > 1.0 {
        return Err(Error::InclinationDomain {
            sin_alpha,
            sin_theta_s: sin_theta,
        });
    }
    let base = (model.mass_length / orbit.orbit_radius.powi(3)).sqrt();
    let omega = orbit.eps_omega.factor() * base * (1.0 - ratio2).sqrt();
    let zeta = orbit.eps_zeta.factor() * base * sin_alpha / (sin_theta * sin_theta);
    Ok((omega, zeta))
}

/// Normalized four-velocity of the orbiting satellite at its exchange event.
pub fn satellite_observer(model: &EarthModel, orbit: &OrbitSpec) -> Result<FourVector> {
    let (omega, zeta) = orbit_angular_velocities(model, orbit)?;
    let r = orbit.orbit_radius;
    let sin_theta = orbit.event_theta.sin();
    let radicand = 1.0
        - 2.0 * model.mass_length / r
        - r * r * (omega * omega + zeta * zeta * sin_theta * sin_theta);
    if radicand <= 0.0 {
        return Err(Error::OrbitRadicand { radicand });
    }
    let norm = radicand.sqrt();
    Ok(FourVector {
        t: 1.0 / norm,
        r: 0.0,
        theta: omega / norm,
        phi: zeta / norm,
    })
}

/// Null tangent vector of a photon with constants `c` at `(r, theta)`.
pub fn null_vector(model: &EarthModel, c: &RayConstants, r: f64, theta: f64) -> Result<FourVector> {
    let rs = model.schwarzschild_radius();
    if !(r.is_finite() && r > rs) {
        return Err(Error::HorizonViolation {
            r,
            schwarzschild_radius: rs,
        });
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::PolarAngleRange { theta });
    }
    let lapse = 1.0 - 2.0 * model.mass_length / r;
    let sin_theta = theta.sin();
    let cot_theta = theta.cos() / sin_theta;

    let radial = 1.0 - lapse * (c.l_phi * c.l_phi + c.kappa) / (r * r);
    if radial < 0.0 {
        return Err(Error::TurningPoint {
            kind: RadicandKind::Radial,
            r,
            theta,
            value: radial,
        });
    }
    let polar = c.kappa - c.l_phi * c.l_phi * cot_theta * cot_theta;
    if polar < 0.0 {
        return Err(Error::TurningPoint {
            kind: RadicandKind::Polar,
            r,
            theta,
            value: polar,
        });
    }

    let e = c.omega_infinity;
    Ok(FourVector {
        t: e / lapse,
        r: c.eps_r.factor() * e * radial.sqrt(),
        theta: c.eps_theta.factor() * e * polar.sqrt() / (r * r),
        phi: e * c.l_phi / (r * r * sin_theta * sin_theta),
    })
}

/// Angular frequency of a photon `k` as measured by an observer `v`.
pub fn measured_frequency(k: &FourVector, v: &FourVector, g: &MetricDiag) -> Result<f64> {
    let omega = -inner_product(k, v, g);
    if omega <= 0.0 {
        return Err(Error::NonPositiveFrequency { omega });
    }
    Ok(omega)
}

/// Polar angle swept by a turning-point-free geodesic with Carter constant
/// `kappa` between radii `r_min` and `r_max`.
pub fn subtended_angle(
    model: &EarthModel,
    r_min: f64,
    r_max: f64,
    kappa: f64,
    rel_tol: f64,
) -> Result<f64> {
    if kappa == 0.0 {
        return Ok(0.0);
    }
    let m = model.mass_length;
    let integrand =
        move |r: f64| 1.0 / (r * r * (1.0 - (1.0 - 2.0 * m / r) * kappa / (r * r)).sqrt());
    let integral = numerics::integrate(integrand, r_min, r_max, rel_tol)?;
    Ok(kappa.sqrt() * integral.value)
}

/// Largest admissible Carter constant before a radial turning point appears
/// on `[r_min, r_max]`.
fn kappa_ceiling(model: &EarthModel, r_min: f64, r_max: f64) -> f64 {
    let m = model.mass_length;
    let value = |r: f64| r * r / (1.0 - 2.0 * m / r);
    // r^2 / (1 - 2M/r) decreases up to r = 3M and increases beyond it.
    let min_value = if r_min >= 3.0 * m {
        value(r_min)
    } else if r_max <= 3.0 * m {
        value(r_max)
    } else {
        27.0 * m * m
    };
    (1.0 - 1e-12) * min_value
}

/// Solves the radial constraint for the rescaled Carter constant `kappa`.
///
/// The equation balances the geodesic's radial sweep against the requested
/// polar separation `delta_theta`; only monotonic-radius geodesics are
/// considered, and the perturbative small-`l_phi` regime is assumed so the
/// constraint is independent of the azimuthal constant.
pub fn solve_kappa(model: &EarthModel, r1: f64, r2: f64, delta_theta: f64) -> Result<f64> {
    solve_kappa_with(model, r1, r2, delta_theta, numerics::DEFAULT_REL_TOL)
}

/// `solve_kappa` with an explicit solver tolerance.
pub fn solve_kappa_with(
    model: &EarthModel,
    r1: f64,
    r2: f64,
    delta_theta: f64,
    rel_tol: f64,
) -> Result<f64> {
    let rs = model.schwarzschild_radius();
    let (r_min, r_max) = if r1 < r2 { (r1, r2) } else { (r2, r1) };
    if !(r_min.is_finite() && r_min > rs) {
        return Err(Error::HorizonViolation {
            r: r_min,
            schwarzschild_radius: rs,
        });
    }
    if r1 == r2 {
        return Err(Error::DegenerateLeg(
            "endpoint radii coincide; the radial constraint is empty".into(),
        ));
    }
    if !(delta_theta.is_finite() && delta_theta != 0.0) {
        return Err(Error::DegenerateLeg(
            "polar separation is zero; only radial propagation connects the endpoints".into(),
        ));
    }

    let target = delta_theta.abs();
    let ceiling = kappa_ceiling(model, r_min, r_max);

    // The subtendable angle grows monotonically with kappa, so the angle at
    // the ceiling bounds what any turning-point-free geodesic can reach. The
    // ceiling integrand is nearly singular; a looser tolerance is ample for
    // the feasibility decision.
    let max_angle = subtended_angle(model, r_min, r_max, ceiling, rel_tol.max(1e-10))?;
    if target > max_angle {
        return Err(Error::NoGeodesic {
            requested_deg: target.to_degrees(),
            max_deg: max_angle.to_degrees(),
            r_min,
            r_max,
        });
    }

    let residual_error: std::cell::Cell<Option<Error>> = std::cell::Cell::new(None);
    let g = |kappa: f64| match subtended_angle(model, r_min, r_max, kappa, rel_tol) {
        Ok(angle) => angle - target,
        Err(e) => {
            residual_error.set(Some(e));
            f64::NAN
        }
    };
    let bracket = RootBracket::new(0.0, ceiling)?;
    match numerics::find_root(g, bracket, rel_tol) {
        Ok(kappa) => Ok(kappa),
        Err(root_err) => Err(residual_error.take().unwrap_or(root_err)),
    }
}

/// Perturbative rescaled azimuthal angular momentum for a leg sweeping
/// `delta_phi` in azimuth between polar angles `theta1` and `theta2`.
pub fn solve_l_phi(kappa: f64, theta1: f64, theta2: f64, delta_phi: f64) -> Result<f64> {
    solve_l_phi_with(
        kappa,
        theta1,
        theta2,
        delta_phi,
        DEFAULT_AZIMUTHAL_VALIDITY_THRESHOLD,
    )
}

/// `solve_l_phi` with an explicit validity threshold.
pub fn solve_l_phi_with(
    kappa: f64,
    theta1: f64,
    theta2: f64,
    delta_phi: f64,
    threshold: f64,
) -> Result<f64> {
    if kappa < 0.0 || !kappa.is_finite() {
        return Err(Error::InvalidParameter {
            name: "kappa",
            value: kappa,
            requirement: "must be finite and non-negative",
        });
    }
    if delta_phi == 0.0 {
        return Ok(0.0);
    }
    let cot = |theta: f64| theta.cos() / theta.sin();
    let spread = (cot(theta2) - cot(theta1)).abs();
    if spread == 0.0 {
        return Err(Error::DegenerateLeg(
            "cot(theta1) equals cot(theta2); the azimuthal constraint is degenerate".into(),
        ));
    }
    let ratio = delta_phi.abs() / spread;
    if ratio > threshold {
        return Err(Error::AzimuthalRegime { ratio, threshold });
    }
    Ok(kappa.sqrt() * delta_phi / spread)
}

/// Solves the full constant set of a leg between two events.
pub fn solve_leg(
    model: &EarthModel,
    from: Event,
    to: Event,
    direction: LegDirection,
) -> Result<LegGeometry> {
    solve_leg_with(model, from, to, direction, &SolverConfig::default())
}

/// `solve_leg` with explicit solver configuration.
pub fn solve_leg_with(
    model: &EarthModel,
    from: Event,
    to: Event,
    direction: LegDirection,
    config: &SolverConfig,
) -> Result<LegGeometry> {
    for event in [&from, &to] {
        // Validates both endpoints against the horizon and the polar range.
        metric_diag(model, event.r, event.theta)?;
    }
    if from.r == to.r {
        return Err(Error::DegenerateLeg(
            "endpoint radii coincide; legs must change radius".into(),
        ));
    }
    let radially_outward = to.r > from.r;
    match direction {
        LegDirection::Uplink if !radially_outward => {
            return Err(Error::DegenerateLeg(
                "uplink legs must end at a larger radius than they start".into(),
            ));
        }
        LegDirection::Downlink if radially_outward => {
            return Err(Error::DegenerateLeg(
                "downlink legs must end at a smaller radius than they start".into(),
            ));
        }
        _ => {}
    }

    let kappa = solve_kappa_with(model, from.r, to.r, to.theta - from.theta, config.tolerance)?;
    let l_phi = solve_l_phi_with(
        kappa,
        from.theta,
        to.theta,
        to.phi - from.phi,
        config.azimuthal_validity_threshold,
    )?;

    let eps_r = if radially_outward {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let eps_theta = match config.theta_sign {
        ThetaSignConvention::TableOrientation => match direction {
            LegDirection::Uplink => Sign::Plus,
            LegDirection::Downlink => Sign::Minus,
        },
        ThetaSignConvention::Geometric => Sign::of(to.theta - from.theta),
    };

    let constants = RayConstants::new(1.0, eps_r, eps_theta, l_phi, kappa)?;
    // The polar radicand must stay non-negative over the whole leg; theta is
    // monotone on these perturbative legs, so the endpoints bound it.
    for event in [&from, &to] {
        null_vector(model, &constants, event.r, event.theta)?;
    }

    Ok(LegGeometry {
        from,
        to,
        constants,
        direction,
    })
}
