//! Detector probabilities, fringe phases and which-way distinguishability.

use alloc::format;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::state::InternalState;
use crate::twofold::{self, DoubleDouble, REDUCTION_LIMIT};
use crate::visibility::{characteristic, checked_modulus, Characteristic};

/// A phase kept as `hi + lo` together with its residue in `[0, 2π)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase {
    pub hi: f64,
    pub lo: f64,
    pub reduced: f64,
    /// Set when `|hi + lo|` is beyond the range where the reduction is
    /// guaranteed to 1e-10 rad.
    pub precision_warning: bool,
}

impl Phase {
    pub fn from_dd(value: DoubleDouble) -> Self {
        Self {
            hi: value.hi,
            lo: value.lo,
            reduced: twofold::reduce_two_pi(value),
            precision_warning: !(value.hi.abs() <= REDUCTION_LIMIT),
        }
    }

    pub fn unreduced(&self) -> DoubleDouble {
        DoubleDouble::new(self.hi, self.lo)
    }
}

/// Probabilities and fringe parameters at the two output ports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterferenceOutcome {
    pub p_plus: f64,
    pub p_minus: f64,
    pub visibility: f64,
    /// rad, in `[0, 2π)`
    pub phase: f64,
    pub phase_unreduced_hi: f64,
    pub phase_unreduced_lo: f64,
}

/// `P± = ½ ± ½·V·cos Δφ`.
///
/// The smaller probability is computed first and the other as its complement,
/// which makes `p_plus + p_minus == 1.0` hold exactly in floating point.
pub fn detection_probabilities(visibility: f64, phase: f64) -> Result<(f64, f64)> {
    if !(0.0..=1.0).contains(&visibility) {
        return Err(Error::Precondition(format!(
            "visibility must be in [0, 1], got {visibility}"
        )));
    }
    let x = 0.5 * visibility * libm::cos(phase);
    if x >= 0.0 {
        let p_minus = 0.5 - x;
        Ok((1.0 - p_minus, p_minus))
    } else {
        let p_plus = 0.5 + x;
        Ok((p_plus, 1.0 - p_plus))
    }
}

/// `mc²Δτ/ħ` as a double-double.
fn rest_phase(mass: f64, delta_tau: f64, constants: &PhysicalConstants) -> DoubleDouble {
    DoubleDouble::from_product(mass, constants.c)
        .mul_f64(constants.c)
        .mul_f64(delta_tau)
        .div_f64(constants.hbar)
}

/// `mc²Δτ/ħ - arg χ(Δτ)`, the phase between the two arms' overlap.
fn composite_phase(
    chi: &Characteristic,
    mass: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Phase {
    let total = rest_phase(mass, delta_tau, constants) - chi.arg();
    Phase::from_dd(total)
}

/// Relative phase including the rest-energy and internal-energy terms.
///
/// Composed as `mc²Δτ/ħ - arg⟨exp(-iHΔτ/ħ)⟩`. For an energy distribution that
/// is symmetric about its mean, and while the real envelope of the
/// characteristic function stays positive, this equals `(mc² + ⟨H⟩)Δτ/ħ`;
/// when the envelope turns negative the phase jumps by π.
pub fn relative_phase_gr(
    state: &InternalState,
    mass: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<Phase> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::Precondition(format!("mass must be > 0, got {mass}")));
    }
    let chi = characteristic(state, delta_tau, constants);
    Ok(composite_phase(&chi, mass, delta_tau, constants))
}

/// `m·ΔΦ·t/ħ`, the phase a Newtonian potential difference alone would give.
pub fn relative_phase_newtonian(
    mass: f64,
    delta_potential: f64,
    hold_time: f64,
    constants: &PhysicalConstants,
) -> Result<Phase> {
    if !(mass.is_finite() && mass > 0.0) {
        return Err(Error::Precondition(format!("mass must be > 0, got {mass}")));
    }
    let value = DoubleDouble::from_product(mass, delta_potential)
        .mul_f64(hold_time)
        .div_f64(constants.hbar);
    Ok(Phase::from_dd(value))
}

/// `D = √(1 - V²)`; only defined for pure clock states.
pub fn distinguishability(
    state: &InternalState,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !state.is_pure() {
        return Err(Error::UnsupportedState(
            "distinguishability is defined for pure clock states only",
        ));
    }
    let v = checked_modulus(characteristic(state, delta_tau, constants).modulus)?;
    Ok(distinguishability_from_visibility(v))
}

pub(crate) fn distinguishability_from_visibility(v: f64) -> f64 {
    libm::sqrt(((1.0 - v) * (1.0 + v)).max(0.0))
}

/// Full outcome for a clock with rest mass `mass` (zero for photons).
pub fn interference_outcome(
    state: &InternalState,
    mass: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<InterferenceOutcome> {
    if !(mass.is_finite() && mass >= 0.0) {
        return Err(Error::Precondition(format!(
            "mass must be >= 0, got {mass}"
        )));
    }
    let chi = characteristic(state, delta_tau, constants);
    let visibility = checked_modulus(chi.modulus)?;
    let phase = composite_phase(&chi, mass, delta_tau, constants);
    let (p_plus, p_minus) = detection_probabilities(visibility, phase.reduced)?;
    Ok(InterferenceOutcome {
        p_plus,
        p_minus,
        visibility,
        phase: phase.reduced,
        phase_unreduced_hi: phase.hi,
        phase_unreduced_lo: phase.lo,
    })
}

/// Outcome for the high-temperature many-mode model, where only `N` and `T`
/// are known. The energy distribution is taken as Gaussian with mean
/// `N·k_B·T`, so the phase is `(mc² + N k_B T)Δτ/ħ`.
pub fn high_temperature_outcome(
    n_modes: f64,
    temperature: f64,
    mass: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<InterferenceOutcome> {
    let visibility =
        crate::visibility::visibility_thermal_high_t(n_modes, temperature, delta_tau, constants)?;
    let mean_energy = n_modes * constants.k_b * temperature;
    let value = rest_phase(mass, delta_tau, constants)
        + DoubleDouble::from_product(mean_energy, delta_tau).div_f64(constants.hbar);
    let phase = Phase::from_dd(value);
    let (p_plus, p_minus) = detection_probabilities(visibility, phase.reduced)?;
    Ok(InterferenceOutcome {
        p_plus,
        p_minus,
        visibility,
        phase: phase.reduced,
        phase_unreduced_hi: phase.hi,
        phase_unreduced_lo: phase.lo,
    })
}
