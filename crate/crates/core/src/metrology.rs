//! Wavepacket overlaps, quantum Fisher information, precision bounds, and the
//! quantum bit error rate of the photon exchange.
//!
//! The estimated parameter is the dimensionless eps = sqrt(M/R_s). Its Fisher
//! information is dominated by the frequency-space displacement of the
//! Gaussian wavepacket, which is what all expressions below are built from.
//! Fidelity deficits in the near-unity regime are evaluated through
//! `ln_1p`/`exp_m1` so that differences of order 1e-24 survive.

use crate::error::{Error, Result};
use crate::spacetime::{EarthModel, OrbitSpec};

/// Gaussian frequency-space wavepacket.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WavePacket {
    /// Peak frequency Omega_0 (Hz).
    pub peak_frequency: f64,
    /// Bandwidth sigma (Hz).
    pub bandwidth: f64,
}

impl WavePacket {
    pub fn new(peak_frequency: f64, bandwidth: f64) -> Result<Self> {
        if !(peak_frequency > 0.0 && peak_frequency.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "peak_frequency",
                value: peak_frequency,
                requirement: "must be finite and positive",
            });
        }
        if !(bandwidth > 0.0 && bandwidth.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "bandwidth",
                value: bandwidth,
                requirement: "must be finite and positive",
            });
        }
        Ok(Self {
            peak_frequency,
            bandwidth,
        })
    }

    /// Whether the packet is comfortably narrowband (peak over bandwidth of
    /// at least a thousand).
    pub fn narrowband(&self) -> bool {
        self.peak_frequency / self.bandwidth >= 1e3
    }
}

impl Default for WavePacket {
    /// Telecom-grade optical pulse: 7e14 Hz peak, 1 MHz bandwidth.
    fn default() -> Self {
        Self {
            peak_frequency: 7e14,
            bandwidth: 1e6,
        }
    }
}

/// Everything needed to evaluate the metrology chain for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetrologyInputs {
    /// Perturbative parameter eps = sqrt(M/R_s).
    pub epsilon: f64,
    /// Angular function of the incident leg.
    pub delta_in: f64,
    /// Angular function of the return leg; zero for the link scheme.
    pub delta_out: f64,
    /// Number of probe photons.
    pub probes: u64,
    /// Helicity transport phase (radians); zero unless supplied externally.
    pub wigner_phase: f64,
    pub wavepacket: WavePacket,
}

impl MetrologyInputs {
    pub fn new(
        epsilon: f64,
        delta_in: f64,
        delta_out: f64,
        probes: u64,
        wigner_phase: f64,
        wavepacket: WavePacket,
    ) -> Result<Self> {
        if !(0.0..1e-3).contains(&epsilon) {
            return Err(Error::InvalidParameter {
                name: "epsilon",
                value: epsilon,
                requirement: "must lie in [0, 1e-3)",
            });
        }
        if probes == 0 {
            return Err(Error::InvalidParameter {
                name: "probes",
                value: 0.0,
                requirement: "at least one probe is required",
            });
        }
        if !(delta_in.is_finite() && delta_out.is_finite() && wigner_phase.is_finite()) {
            return Err(Error::InvalidParameter {
                name: "delta_in/delta_out/wigner_phase",
                value: f64::NAN,
                requirement: "must be finite",
            });
        }
        Ok(Self {
            epsilon,
            delta_in,
            delta_out,
            probes,
            wigner_phase,
            wavepacket,
        })
    }

    /// Difference of the angular functions, the quantity every bound scales with.
    pub fn delta_diff(&self) -> f64 {
        self.delta_in - self.delta_out
    }

    /// Whether eps is small against eps^2 Omega_0^2 / sigma^2, the regime in
    /// which the leading-order expressions hold. Quantified as
    /// eps Omega_0^2 / sigma^2 > 100.
    pub fn regime_ok(&self) -> bool {
        let ratio = self.wavepacket.peak_frequency / self.wavepacket.bandwidth;
        self.epsilon * ratio * ratio > 100.0
    }
}

/// Full output of the metrology chain for one configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MetrologyReport {
    /// Leading-order quantum Fisher information.
    pub qfi: f64,
    /// Bound on |delta eps|; infinite when the QFI vanishes.
    pub eps_bound: f64,
    /// Relative bound on the Schwarzschild radius.
    pub rs_rel_bound: f64,
    /// Relative bound on the surface radius.
    pub re_rel_bound: f64,
    /// Relative bound on the orbit altitude.
    pub h_rel_bound: f64,
    /// Fidelity between sent and received states.
    pub fidelity: f64,
    /// Quantum bit error rate, 1 - fidelity.
    pub qber: f64,
    /// Whether the perturbative regime condition held.
    pub regime_ok: bool,
}

/// Gaussian amplitude of the wavepacket at frequency `omega`.
pub fn gaussian_amplitude(omega: f64, wp: &WavePacket) -> f64 {
    let two_pi_sigma2 = 2.0 * std::f64::consts::PI * wp.bandwidth * wp.bandwidth;
    let detuning = omega - wp.peak_frequency;
    two_pi_sigma2.powf(-0.25) * (-detuning * detuning / (4.0 * wp.bandwidth * wp.bandwidth)).exp()
}

/// Exact overlap between the emitted packet and one received with frequency
/// ratio `f`, including the helicity phase factor:
///
/// ```text
/// Theta = cos(psi) sqrt(2/(1 + f^2)) exp(-Omega_0^2 (1 - f)^2 / (4 sigma^2 (1 + f^2)))
/// ```
///
/// The closed form extends the frequency integral over the whole real line;
/// for narrowband packets the truncation error is far below double precision.
pub fn overlap_exact(f: f64, wp: &WavePacket, wigner_phase: f64) -> f64 {
    let one_plus_f2 = 1.0 + f * f;
    let displacement = wp.peak_frequency * (1.0 - f);
    wigner_phase.cos()
        * (2.0 / one_plus_f2).sqrt()
        * (-displacement * displacement / (4.0 * wp.bandwidth * wp.bandwidth * one_plus_f2)).exp()
}

/// Leading-order overlap of the momentum part,
/// `exp(-(delta_in - delta_out)^2 Omega_0^2 eps^2 / (8 sigma^2))`.
pub fn overlap_approx(inputs: &MetrologyInputs) -> f64 {
    let scaled = inputs.delta_diff() * inputs.wavepacket.peak_frequency * inputs.epsilon
        / inputs.wavepacket.bandwidth;
    (-scaled * scaled / 8.0).exp()
}

/// Leading-order quantum Fisher information,
/// `(delta_in - delta_out)^2 Omega_0^2 / sigma^2`.
pub fn qfi_leading(inputs: &MetrologyInputs) -> f64 {
    let scaled =
        inputs.delta_diff() * inputs.wavepacket.peak_frequency / inputs.wavepacket.bandwidth;
    scaled * scaled
}

/// A step size for `qfi_numeric` that keeps the displacement well inside the
/// linear regime: `d_eps * Omega_0 / sigma = 1e-3`.
pub fn default_qfi_step(wp: &WavePacket) -> f64 {
    1e-3 * wp.bandwidth / wp.peak_frequency
}

/// Log of the root fidelity between the unshifted state and one whose
/// frequency ratio falls short of unity by `deficit`. Built directly from the
/// deficit so that no `1 - (1 - tiny)` cancellation ever occurs; the shifted
/// state's norm is included, which is what makes the deficit-squared term the
/// leading one.
fn ln_sqrt_fidelity(deficit: f64, wp: &WavePacket) -> f64 {
    let one_plus_f2 = 2.0 - 2.0 * deficit + deficit * deficit;
    // sqrt(f) * sqrt(2/(1+f^2)) = sqrt(1 - deficit^2/(1+f^2))
    0.5 * (-deficit * deficit / one_plus_f2).ln_1p()
        - (wp.peak_frequency * deficit).powi(2) / (4.0 * wp.bandwidth * wp.bandwidth * one_plus_f2)
}

/// Quantum Fisher information from a finite-difference fidelity drop,
/// `8 (1 - sqrt(F(gamma_0, gamma_deps))) / d_eps^2`, with the shift
/// recomputed at eps = `d_eps`. Converges to `qfi_leading` as the step
/// shrinks.
pub fn qfi_numeric(inputs: &MetrologyInputs, d_eps: f64) -> Result<f64> {
    if !(d_eps > 0.0 && d_eps.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "d_eps",
            value: d_eps,
            requirement: "must be finite and positive",
        });
    }
    let displacement = d_eps * inputs.wavepacket.peak_frequency / inputs.wavepacket.bandwidth;
    if displacement > 0.1 {
        return Err(Error::InvalidParameter {
            name: "d_eps",
            value: d_eps,
            requirement: "d_eps * peak_frequency / bandwidth must stay below 0.1",
        });
    }
    let dd = inputs.delta_diff();
    if dd == 0.0 {
        return Ok(0.0);
    }
    // Frequency-ratio deficit of the kicked state at eps = d_eps:
    // 1 - f = d_eps (delta_in - delta_out) / (1 - d_eps delta_out).
    let deficit = d_eps * dd / (1.0 - d_eps * inputs.delta_out);
    let one_minus_sqrt_fidelity = -ln_sqrt_fidelity(deficit, &inputs.wavepacket).exp_m1();
    Ok(8.0 * one_minus_sqrt_fidelity / (d_eps * d_eps))
}

/// Cramer-Rao precision floor `1 / sqrt(N H)` for `probes` repetitions.
pub fn cramer_rao_bound(qfi: f64, probes: u64) -> Result<f64> {
    if probes == 0 {
        return Err(Error::InvalidParameter {
            name: "probes",
            value: 0.0,
            requirement: "at least one probe is required",
        });
    }
    if qfi <= 0.0 {
        return Err(Error::UnboundedBound);
    }
    Ok(1.0 / (probes as f64 * qfi).sqrt())
}

/// Relative precision bound on the central body's Schwarzschild radius,
/// `(2 sqrt(2) / sqrt(N H)) sqrt(R_s / r_S)`.
pub fn bound_schwarzschild(
    qfi: f64,
    probes: u64,
    orbit_radius: f64,
    schwarzschild_radius: f64,
) -> Result<f64> {
    let base = cramer_rao_bound(qfi, probes)?;
    Ok(base * 2.0 * std::f64::consts::SQRT_2 * (orbit_radius / schwarzschild_radius).sqrt())
}

/// Relative precision bound on the surface radius,
/// `(2 / sqrt(N H)) (R_s / R_E) sqrt(R_s / M)`.
pub fn bound_earth_radius(
    qfi: f64,
    probes: u64,
    orbit_radius: f64,
    earth_radius: f64,
    mass_length: f64,
) -> Result<f64> {
    let base = cramer_rao_bound(qfi, probes)?;
    Ok(base * 2.0 * (orbit_radius / earth_radius) * (orbit_radius / mass_length).sqrt())
}

/// Relative precision bound on the orbit altitude,
/// `(2 / sqrt(N H)) (R_s / h) sqrt(R_s / M)`.
pub fn bound_altitude(
    qfi: f64,
    probes: u64,
    orbit_radius: f64,
    altitude: f64,
    mass_length: f64,
) -> Result<f64> {
    if altitude.is_nan() || altitude <= 0.0 {
        return Err(Error::InvalidParameter {
            name: "altitude",
            value: altitude,
            requirement: "must be positive",
        });
    }
    let base = cramer_rao_bound(qfi, probes)?;
    Ok(base * 2.0 * (orbit_radius / altitude) * (orbit_radius / mass_length).sqrt())
}

/// Quantum bit error rate of the uncorrected exchange,
/// `1 - exp(-(delta_in - delta_out)^2 Omega_0^2 eps^2 / (4 sigma^2))`.
pub fn qber(inputs: &MetrologyInputs) -> f64 {
    let scaled = inputs.delta_diff() * inputs.wavepacket.peak_frequency * inputs.epsilon
        / inputs.wavepacket.bandwidth;
    (-(-scaled * scaled / 4.0).exp_m1()).clamp(0.0, 1.0)
}

/// Assembles the full metrology report for one configuration.
pub fn report(
    inputs: &MetrologyInputs,
    model: &EarthModel,
    orbit: &OrbitSpec,
) -> Result<MetrologyReport> {
    let qfi_value = qfi_leading(inputs);
    let (eps_bound, rs_rel_bound, re_rel_bound, h_rel_bound) = if qfi_value > 0.0 {
        (
            cramer_rao_bound(qfi_value, inputs.probes)?,
            bound_schwarzschild(
                qfi_value,
                inputs.probes,
                orbit.orbit_radius,
                model.schwarzschild_radius(),
            )?,
            bound_earth_radius(
                qfi_value,
                inputs.probes,
                orbit.orbit_radius,
                model.earth_radius,
                model.mass_length,
            )?,
            bound_altitude(
                qfi_value,
                inputs.probes,
                orbit.orbit_radius,
                orbit.altitude(model),
                model.mass_length,
            )?,
        )
    } else {
        (f64::INFINITY, f64::INFINITY, f64::INFINITY, f64::INFINITY)
    };

    let error_rate = qber(inputs);
    Ok(MetrologyReport {
        qfi: qfi_value,
        eps_bound,
        rs_rel_bound,
        re_rel_bound,
        h_rel_bound,
        fidelity: 1.0 - error_rate,
        qber: error_rate,
        regime_ok: inputs.regime_ok(),
    })
}
