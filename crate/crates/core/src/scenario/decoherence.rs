use alloc::format;

use super::revival::golden_max;
use super::{ClockModel, DilationModel, LabAxis};
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::state::energy_spread;
use crate::visibility::{visibility, visibility_thermal_high_t};

/// Scan points used to bracket the first threshold crossing.
pub const SCAN_POINTS: usize = 1024;
/// Bisection stops once the bracket is this small relative to its upper end.
pub const ROOT_TOLERANCE: f64 = 1e-12;
/// Default scan range in units of `ħ/ΔH`.
const DEFAULT_RANGE_SPREADS: f64 = 64.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DecoherenceResult {
    Reached {
        lab_value: f64,
        axis: LabAxis,
        delta_tau: f64,
        /// Visibility at the reported point; at most the threshold.
        visibility: f64,
    },
    NotReached {
        /// Largest `|Δτ|` examined, s.
        scanned_up_to: f64,
        min_visibility: f64,
    },
}

fn bisect(v: &impl Fn(f64) -> f64, threshold: f64, mut lo: f64, mut hi: f64) -> f64 {
    // invariant: v(lo) > threshold >= v(hi)
    for _ in 0..200 {
        if hi - lo <= ROOT_TOLERANCE * hi {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if v(mid) > threshold {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Smallest lab value at which the visibility falls to `threshold` or below.
///
/// The high-temperature model decays monotonically and is bracketed by
/// doubling; explicit clock states are scanned on a uniform grid of `|Δτ|`
/// up to `max_delta_tau` (default `64 ħ/ΔH`) and the first crossing refined
/// by bisection.
pub fn decoherence_time(
    clock: &ClockModel,
    model: &DilationModel,
    threshold: f64,
    max_delta_tau: Option<f64>,
    constants: &PhysicalConstants,
) -> Result<DecoherenceResult> {
    if !(threshold > 0.0 && threshold < 1.0) {
        return Err(Error::Precondition(format!(
            "threshold must be in (0, 1), got {threshold}"
        )));
    }
    if model.per_unit == 0.0 {
        return Ok(DecoherenceResult::NotReached {
            scanned_up_to: 0.0,
            min_visibility: 1.0,
        });
    }
    let reached = |dt: f64, v: f64| DecoherenceResult::Reached {
        lab_value: model.lab_value(dt),
        axis: model.axis,
        delta_tau: dt,
        visibility: v,
    };

    match clock {
        ClockModel::HighTemperature {
            mode_count,
            temperature,
        } => {
            let v = |dt: f64| {
                visibility_thermal_high_t(*mode_count, *temperature, dt, constants).unwrap_or(0.0)
            };
            // Precondition errors surface here rather than inside the search.
            visibility_thermal_high_t(*mode_count, *temperature, 0.0, constants)?;
            let scale = constants.hbar / (constants.k_b * temperature * libm::sqrt(*mode_count));
            let mut hi = scale;
            let mut lo = 0.0;
            let mut doublings = 0;
            while v(hi) > threshold {
                lo = hi;
                hi *= 2.0;
                doublings += 1;
                if doublings > 2000 || max_delta_tau.is_some_and(|m| lo > m) {
                    return Ok(DecoherenceResult::NotReached {
                        scanned_up_to: lo,
                        min_visibility: v(lo),
                    });
                }
            }
            let dt = bisect(&v, threshold, lo, hi);
            Ok(reached(dt, v(dt)))
        }
        ClockModel::State(state) => {
            let spread = energy_spread(state, constants)?;
            if spread == 0.0 {
                return Ok(DecoherenceResult::NotReached {
                    scanned_up_to: max_delta_tau.unwrap_or(0.0),
                    min_visibility: 1.0,
                });
            }
            let range = max_delta_tau.unwrap_or(DEFAULT_RANGE_SPREADS * constants.hbar / spread);
            let v = |dt: f64| visibility(state, dt, constants).unwrap_or(0.0);
            let step = range / SCAN_POINTS as f64;
            // (Δτ, V) at the previous two grid points
            let mut back = [(0.0, 1.0), (0.0, 1.0)];
            let mut min_v = 1.0f64;
            for i in 1..=SCAN_POINTS {
                let dt = step * i as f64;
                let vi = visibility(state, dt, constants)?;
                if vi <= threshold {
                    let dt = bisect(&v, threshold, back[1].0, dt);
                    return Ok(reached(dt, v(dt)));
                }
                // A dip narrower than the grid shows up as a local minimum;
                // refine it before moving on.
                if i >= 2 && back[1].1 < back[0].1 && back[1].1 <= vi {
                    let (at, neg) = golden_max(|x| -v(x), back[0].0, dt);
                    if -neg <= threshold {
                        let dt = bisect(&v, threshold, back[0].0, at);
                        return Ok(reached(dt, v(dt)));
                    }
                    min_v = min_v.min(-neg);
                }
                min_v = min_v.min(vi);
                back = [back[1], (dt, vi)];
            }
            Ok(DecoherenceResult::NotReached {
                scanned_up_to: range,
                min_visibility: min_v,
            })
        }
    }
}
