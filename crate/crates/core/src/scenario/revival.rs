//! Revivals: the first `Δτ > 0` at which every internal frequency has
//! completed a whole number of periods, i.e. `2π` over the greatest common
//! divisor of the frequencies.

use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{ClockModel, DilationModel, LabAxis};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::state::InternalState;
use crate::visibility::visibility;

/// Relative tolerance for treating two frequency ratios as rational.
pub const COMMENSURABILITY_TOLERANCE: f64 = 1e-9;
/// Largest denominator (and LCM of denominators) accepted for a ratio.
/// Kept well below `COMMENSURABILITY_TOLERANCE^(-1/2)`, since every real has
/// convergents with error below `1/q²`.
pub const MAX_DENOMINATOR: u64 = 1_000;
/// A revival must bring the visibility to at least `1 - REVIVAL_SLACK`.
pub const REVIVAL_SLACK: f64 = 1e-9;

const QUASI_SCAN_PERIODS: f64 = 64.0;
const QUASI_SCAN_POINTS: usize = 8192;

#[derive(Debug, Clone, PartialEq)]
pub enum RevivalResult {
    Exact {
        /// rad/s
        fundamental_frequency: f64,
        delta_tau: f64,
        lab_value: f64,
        axis: LabAxis,
        visibility: f64,
    },
    /// An eigenstate: the visibility never drops.
    AlwaysMaximal,
    /// Frequencies are not commensurate within tolerance; carries the highest
    /// visibility found after the initial decay on the scanned range.
    NoExactRevival {
        best_delta_tau: f64,
        best_lab_value: f64,
        axis: LabAxis,
        best_visibility: f64,
    },
}

/// Best rational approximation `p/q` to `x > 0` from its continued fraction,
/// within `tol·x`, with `q <= max_den`.
fn rational_approx(x: f64, tol: f64, max_den: u64) -> Option<(u64, u64)> {
    let (mut h_prev, mut h) = (0.0f64, 1.0f64);
    let (mut k_prev, mut k) = (1.0f64, 0.0f64);
    let mut a = x;
    for _ in 0..64 {
        let ai = libm::floor(a);
        let h_next = ai * h + h_prev;
        let k_next = ai * k + k_prev;
        if k_next > max_den as f64 {
            return None;
        }
        (h_prev, h, k_prev, k) = (h, h_next, k, k_next);
        if (x - h / k).abs() <= tol * x {
            return Some((h as u64, k as u64));
        }
        let frac = a - ai;
        if frac <= 0.0 {
            return None;
        }
        a = 1.0 / frac;
    }
    None
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Greatest common divisor of a set of positive frequencies, treating ratios
/// as rational when a continued-fraction convergent matches them to
/// [`COMMENSURABILITY_TOLERANCE`]. `None` if the set is incommensurate.
pub fn fundamental_frequency(frequencies: &[f64]) -> Option<f64> {
    let f_min = frequencies.iter().copied().fold(f64::INFINITY, f64::min);
    if !(f_min.is_finite() && f_min > 0.0) {
        return None;
    }
    let mut lcm: u64 = 1;
    for &f in frequencies {
        let (_, q) = rational_approx(f / f_min, COMMENSURABILITY_TOLERANCE, MAX_DENOMINATOR)?;
        lcm = lcm / gcd(lcm, q) * q;
        if lcm > MAX_DENOMINATOR {
            return None;
        }
    }
    Some(f_min / lcm as f64)
}

/// Angular frequencies present in the internal dynamics.
fn internal_frequencies(state: &InternalState, constants: &PhysicalConstants) -> Result<Vec<f64>> {
    match state {
        InternalState::Pure(s) => {
            let spectrum = s.spectrum();
            let e0 = spectrum[0].0;
            Ok(spectrum[1..]
                .iter()
                .map(|(e, _)| (e - e0) / constants.hbar)
                .collect())
        }
        InternalState::Thermal(t) => {
            let mut f = t.mode_frequencies().to_vec();
            f.sort_by(f64::total_cmp);
            f.dedup();
            Ok(f)
        }
        InternalState::Gaussian(_) => Err(Error::UnsupportedState(
            "a Gaussian photon clock is not periodic and never revives",
        )),
    }
}

/// Golden-section search for the maximum of `f` on `[a, b]`.
pub(super) fn golden_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64) -> (f64, f64) {
    let r = 0.5 * (libm::sqrt(5.0) - 1.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= 1e-13 * b.abs() {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc > fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

fn quasi_revival(
    state: &InternalState,
    frequencies: &[f64],
    model: &DilationModel,
    constants: &PhysicalConstants,
) -> RevivalResult {
    let f_min = frequencies.iter().copied().fold(f64::INFINITY, f64::min);
    let f_max = frequencies.iter().copied().fold(0.0, f64::max);
    let start = PI / f_max;
    let stop = QUASI_SCAN_PERIODS * 2.0 * PI / f_min;
    let v = |dt: f64| visibility(state, dt, constants).unwrap_or(0.0);
    let step = (stop - start) / QUASI_SCAN_POINTS as f64;
    let (mut best_dt, mut best_v) = (start, v(start));
    for i in 1..=QUASI_SCAN_POINTS {
        let dt = start + step * i as f64;
        let vi = v(dt);
        if vi > best_v {
            best_dt = dt;
            best_v = vi;
        }
    }
    let lo = (best_dt - step).max(start);
    let hi = (best_dt + step).min(stop);
    let (dt, vv) = golden_max(v, lo, hi);
    let (best_dt, best_v) = if vv >= best_v {
        (dt, vv)
    } else {
        (best_dt, best_v)
    };
    RevivalResult::NoExactRevival {
        best_delta_tau: best_dt,
        best_lab_value: model.lab_value(best_dt),
        axis: model.axis,
        best_visibility: best_v,
    }
}

/// First revival of the visibility, mapped to the geometry's lab axis.
pub fn revival_time(
    clock: &ClockModel,
    model: &DilationModel,
    constants: &PhysicalConstants,
) -> Result<RevivalResult> {
    let state = match clock {
        ClockModel::State(s) => s,
        ClockModel::HighTemperature { .. } => {
            return Err(Error::UnsupportedState(
                "the high-temperature model has no discrete spectrum; use explicit modes",
            ))
        }
    };
    let frequencies = internal_frequencies(state, constants)?;
    if frequencies.is_empty() {
        return Ok(RevivalResult::AlwaysMaximal);
    }
    match fundamental_frequency(&frequencies) {
        Some(fundamental) => {
            let delta_tau = 2.0 * PI / fundamental;
            let v = visibility(state, delta_tau, constants)?;
            if v >= 1.0 - REVIVAL_SLACK {
                Ok(RevivalResult::Exact {
                    fundamental_frequency: fundamental,
                    delta_tau,
                    lab_value: model.lab_value(delta_tau),
                    axis: model.axis,
                    visibility: v,
                })
            } else {
                Ok(quasi_revival(state, &frequencies, model, constants))
            }
        }
        None => Ok(quasi_revival(state, &frequencies, model, constants)),
    }
}
