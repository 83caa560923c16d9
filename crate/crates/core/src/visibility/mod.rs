//! Visibility as the modulus of the characteristic function of the internal
//! energy distribution, `V = |⟨exp(-i H Δτ / ħ)⟩|`, and the closed forms and
//! approximations built on it.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use crate::complex::ComplexValue;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::state::{energy_spread, InternalState, ThermalHarmonicState, MAX_MOMENT_ORDER};
use crate::twofold::{self, CompensatedSum, DoubleDouble};

pub mod oracle;

pub use oracle::{thermal_char_bruteforce, BruteForceSum};

/// Excursions of `|χ|` above one that are treated as roundoff.
pub const CLAMP_TOLERANCE: f64 = 1e-12;

/// The characteristic function split as `χ = exp(-i·reference_phase) · χ_s`,
/// where `χ_s = modulus · exp(i·shifted_arg)` is evaluated on the spectrum
/// measured from the reference energy.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Characteristic {
    pub modulus: f64,
    pub shifted_arg: DoubleDouble,
    /// `E_ref·Δτ/ħ`
    pub reference_phase: DoubleDouble,
}

impl Characteristic {
    /// `arg χ`, unreduced.
    pub fn arg(&self) -> DoubleDouble {
        self.shifted_arg - self.reference_phase
    }

    pub fn value(&self) -> ComplexValue {
        ComplexValue::from_polar(self.modulus, twofold::reduce_symmetric(self.arg()))
    }
}

/// Per-mode factor `(1 - q) / (1 - q e^{-iθ})` with `q = e^{-βħω}` and
/// `θ = ωΔτ`, returned as `(ln |·|, arg ·)`.
fn thermal_mode_factor(x: f64, theta: DoubleDouble) -> (f64, f64) {
    let q = libm::exp(-x);
    let one_minus_q = -libm::expm1(-x);
    let (s_half, _) = twofold::sin_cos(theta.mul_f64(0.5));
    let (s, _) = twofold::sin_cos(theta);
    let ratio = 2.0 * libm::sqrt(q) * s_half / one_minus_q;
    let log_modulus = -0.5 * libm::log1p(ratio * ratio);
    // 1 - q cos θ = (1 - q) + 2q sin²(θ/2)
    let real = one_minus_q + 2.0 * q * s_half * s_half;
    let arg = -libm::atan2(q * s, real);
    (log_modulus, arg)
}

pub(crate) fn characteristic(
    state: &InternalState,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Characteristic {
    let hbar = constants.hbar;
    match state {
        InternalState::Pure(s) => {
            let e0 = s.min_energy();
            let mut re = CompensatedSum::new();
            let mut im = CompensatedSum::new();
            for (e, w) in s.spectrum() {
                let theta = twofold::scaled_product(e - e0, delta_tau, hbar);
                let (sin, cos) = twofold::sin_cos(theta);
                re.push(w * cos);
                im.push(-w * sin);
            }
            let z = ComplexValue::new(re.total(), im.total());
            Characteristic {
                modulus: z.modulus(),
                shifted_arg: DoubleDouble::from_f64(z.arg()),
                reference_phase: twofold::scaled_product(e0, delta_tau, hbar),
            }
        }
        InternalState::Gaussian(g) => {
            let r = delta_tau / (2.0 * g.a);
            Characteristic {
                modulus: libm::exp(-r * r),
                shifted_arg: DoubleDouble::ZERO,
                reference_phase: DoubleDouble::from_product(g.nu0, delta_tau),
            }
        }
        InternalState::Thermal(t) => thermal_characteristic(t, delta_tau, constants),
    }
}

fn thermal_characteristic(
    state: &ThermalHarmonicState,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Characteristic {
    let beta = state.beta(constants);
    let mut log_modulus = 0.0;
    let mut arg = CompensatedSum::new();
    let mut zero_point = CompensatedSum::new();
    for &w in state.mode_frequencies() {
        let theta = DoubleDouble::from_product(w, delta_tau);
        let (lm, a) = thermal_mode_factor(beta * constants.hbar * w, theta);
        log_modulus += lm;
        arg.push(a);
        zero_point.push_dd(theta.mul_f64(0.5));
    }
    Characteristic {
        modulus: libm::exp(log_modulus),
        shifted_arg: arg.value(),
        reference_phase: zero_point.value(),
    }
}

/// `⟨exp(-i H Δτ / ħ)⟩` for the given clock state.
///
/// Thermal states use the partition-function ratio `Z(β + iΔτ/ħ)/Z(β)`,
/// including the zero-point phase.
pub fn characteristic_function(
    state: &InternalState,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> ComplexValue {
    characteristic(state, delta_tau, constants).value()
}

pub(crate) fn checked_modulus(modulus: f64) -> Result<f64> {
    if !modulus.is_finite() || modulus < 0.0 {
        return Err(Error::NumericFault(format!(
            "characteristic function modulus {modulus} is not a valid visibility"
        )));
    }
    if modulus > 1.0 + CLAMP_TOLERANCE {
        return Err(Error::NumericFault(format!(
            "characteristic function modulus {modulus} exceeds 1 beyond roundoff"
        )));
    }
    Ok(modulus.min(1.0))
}

/// Fringe visibility `|⟨exp(-i H Δτ / ħ)⟩|` in `[0, 1]`.
pub fn visibility(
    state: &InternalState,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    checked_modulus(characteristic(state, delta_tau, constants).modulus)
}

/// `|cos(πΔτ / 2t⊥)|` for a clock oscillating between two orthogonal states.
pub fn visibility_two_level(t_perp: f64, delta_tau: f64) -> Result<f64> {
    if !(t_perp.is_finite() && t_perp > 0.0) {
        return Err(Error::Precondition(format!(
            "orthogonalisation time must be > 0, got {t_perp}"
        )));
    }
    // |cos(πx/2)| has period 2 in x; fold there and evaluate through sin so
    // that the zeros at odd x come out exactly.
    let x = libm::fmod((delta_tau / t_perp).abs(), 2.0);
    let v = if x <= 1.0 {
        libm::sin(0.5 * PI * (1.0 - x))
    } else {
        libm::sin(0.5 * PI * (x - 1.0))
    };
    Ok(v.abs())
}

/// `exp(-(Δτ/2a)²)` for a photon with a Gaussian spectrum of width parameter `a`.
pub fn visibility_gaussian(a: f64, delta_tau: f64) -> Result<f64> {
    if !(a.is_finite() && a > 0.0) {
        return Err(Error::Precondition(format!(
            "width parameter must be > 0, got {a}"
        )));
    }
    let r = delta_tau / (2.0 * a);
    Ok(libm::exp(-r * r))
}

/// Product over thermal harmonic modes of `|1 - e^{-βħω}| / |1 - e^{-(β + iΔτ/ħ)ħω}|`.
pub fn visibility_thermal(
    modes: &[f64],
    temperature: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let state = ThermalHarmonicState::new(modes.to_vec(), temperature)?;
    let beta = state.beta(constants);
    let log_modulus: f64 = modes
        .iter()
        .map(|&w| {
            thermal_mode_factor(
                beta * constants.hbar * w,
                DoubleDouble::from_product(w, delta_tau),
            )
            .0
        })
        .sum();
    checked_modulus(libm::exp(log_modulus))
}

/// High-temperature, many-mode limit `exp(-(√(N/2)·k_B T Δτ / ħ)²)`.
///
/// `n_modes` is a real number so that Avogadro-scale mode counts can be used
/// without enumerating modes.
pub fn visibility_thermal_high_t(
    n_modes: f64,
    temperature: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    if !(n_modes.is_finite() && n_modes >= 1.0) {
        return Err(Error::Precondition(format!(
            "mode count must be >= 1, got {n_modes}"
        )));
    }
    if !(temperature.is_finite() && temperature > 0.0) {
        return Err(Error::Precondition(format!(
            "temperature must be > 0, got {temperature}"
        )));
    }
    let u = constants.k_b * temperature * delta_tau / constants.hbar;
    Ok(libm::exp(-0.5 * n_modes * u * u))
}

/// Truncated moment expansion of the visibility.
///
/// `|χ|²` is expanded in powers of `Δτ`; its coefficients only involve
/// products of energy moments and odd orders vanish identically. The sum up to
/// `order` is returned under a square root, so `order = 2` reproduces
/// `√(1 - (ΔτΔH/ħ)²)` exactly. Moments are taken on the spectrum shifted to
/// the reference energy (lowest level) to keep the terms well conditioned.
pub fn visibility_moment_series(
    state: &InternalState,
    delta_tau: f64,
    order: usize,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let m = state.scaled_shifted_moments(order, delta_tau / constants.hbar, constants)?;
    let mut factorial = [1.0f64; MAX_MOMENT_ORDER + 1];
    for k in 1..=MAX_MOMENT_ORDER {
        factorial[k] = factorial[k - 1] * k as f64;
    }
    let mut total = CompensatedSum::new();
    total.push(1.0);
    for n in (2..=order).step_by(2) {
        let mut c = 0.0;
        for j in 0..=n {
            let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
            c += sign * m[j] * m[n - j] / (factorial[j] * factorial[n - j]);
        }
        let sign = if (n / 2) % 2 == 0 { 1.0 } else { -1.0 };
        total.push(sign * c);
    }
    let s = total.total();
    if s < 0.0 {
        return Err(Error::Domain(format!(
            "truncated series for |χ|² is negative ({s}); Δτ is outside its convergence region"
        )));
    }
    Ok(libm::sqrt(s))
}

/// Second-moment approximation `√(1 - (ΔτΔH/ħ)²)`.
pub fn visibility_variance_approx(
    delta_h: f64,
    delta_tau: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let x = (delta_tau * delta_h / constants.hbar).abs();
    if !(x <= 1.0) {
        return Err(Error::Domain(format!(
            "ΔτΔH/ħ = {x} > 1: the second-moment approximation does not apply"
        )));
    }
    Ok(libm::sqrt((1.0 - x) * (1.0 + x)))
}

/// Bounds on the time a state needs to evolve into an orthogonal one.
#[derive(Debug, Clone, PartialEq)]
pub struct OrthogonalizationBounds {
    /// `πħ / 2ΔH`, s; infinite for an eigenstate.
    pub lower: f64,
    /// `(n, πħ / (2⟨Hⁿ⟩)^{1/n})` on the ground-shifted spectrum, s.
    pub moment_bounds: Vec<(usize, f64)>,
    /// `πħ / |E₁ - E₂|` for an equal-weight two-level state.
    pub exact: Option<f64>,
    /// Width at which the overlap drops to 1/e, for clocks that never become
    /// exactly orthogonal (Gaussian photons: `2a`).
    pub conventional_precision: Option<f64>,
}

impl OrthogonalizationBounds {
    /// True for a "switched-off" clock.
    pub fn never_orthogonalizes(&self) -> bool {
        self.lower.is_infinite()
    }
}

pub fn orthogonalization_bounds(
    state: &InternalState,
    max_n: usize,
    constants: &PhysicalConstants,
) -> Result<OrthogonalizationBounds> {
    if max_n > MAX_MOMENT_ORDER {
        return Err(Error::Range(format!(
            "moment order {max_n} exceeds the supported maximum {MAX_MOMENT_ORDER}"
        )));
    }
    let pi_hbar = PI * constants.hbar;
    let spread = energy_spread(state, constants)?;
    let lower = if spread > 0.0 {
        pi_hbar / (2.0 * spread)
    } else {
        f64::INFINITY
    };
    let m = state.scaled_shifted_moments(max_n, 1.0, constants)?;
    let moment_bounds = (1..=max_n)
        .map(|n| {
            let bound = if m[n] > 0.0 {
                pi_hbar / libm::pow(2.0 * m[n], 1.0 / n as f64)
            } else {
                f64::INFINITY
            };
            (n, bound)
        })
        .collect();
    let exact = match state {
        InternalState::Pure(s) => {
            let spectrum = s.spectrum();
            match spectrum.as_slice() {
                [(e1, w1), (e2, w2)] if (w1 - w2).abs() <= 1e-12 => Some(pi_hbar / (e2 - e1).abs()),
                _ => None,
            }
        }
        _ => None,
    };
    let conventional_precision = match state {
        InternalState::Gaussian(g) => Some(2.0 * g.a),
        _ => None,
    };
    Ok(OrthogonalizationBounds {
        lower,
        moment_bounds,
        exact,
        conventional_precision,
    })
}
