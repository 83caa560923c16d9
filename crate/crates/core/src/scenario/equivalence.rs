//! Gravitational vs rotating-platform comparison: with `g·h = ω²R²/2` the two
//! set-ups must produce the same curves.

use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::PI;

use super::{run_sweep, GeometrySpec, Scenario, SweepVariable};
use crate::error::{Error, Result};

/// Pointwise agreement required for the curves to count as identical.
pub const EQUIVALENCE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct EquivalenceReport {
    pub points: usize,
    /// `g·h`, m²/s²
    pub gravitational_potential: f64,
    /// `ω²R²/2`, m²/s²
    pub centripetal_potential: f64,
    pub max_visibility_diff: f64,
    /// Largest circular distance between reduced phases, rad.
    pub max_phase_diff: f64,
    pub max_delta_tau_diff: f64,
    pub equivalent: bool,
}

fn circular_distance(a: f64, b: f64) -> f64 {
    let d = libm::fmod((a - b).abs(), 2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Runs both scenarios over their (identical) hold-time sweeps and compares
/// them point by point. A mismatch in the curves is reported, not an error;
/// scenarios that cannot be compared are.
pub fn equivalence_check(grav: &Scenario, rot: &Scenario) -> Result<EquivalenceReport> {
    grav.validate()?;
    rot.validate()?;
    let mut errors = Vec::new();
    let g_h = match grav.geometry {
        GeometrySpec::Gravitational {
            gravity,
            height: Some(h),
            ..
        } => Some(gravity * h),
        _ => {
            errors.push("first scenario must be gravitational with a fixed height".into());
            None
        }
    };
    let centripetal = match rot.geometry {
        GeometrySpec::Rotating {
            angular_velocity: Some(w),
            radius: Some(r),
            ..
        } => {
            let v = w * r;
            Some(0.5 * v * v)
        }
        _ => {
            errors.push(
                "second scenario must be rotating with fixed angular velocity and radius".into(),
            );
            None
        }
    };
    if grav.clock != rot.clock {
        errors.push("scenarios use different clocks".into());
    }
    if grav.mass != rot.mass {
        errors.push(format!("masses differ: {} vs {} kg", grav.mass, rot.mass));
    }
    if grav.constants != rot.constants {
        errors.push("scenarios use different constant presets".into());
    }
    if grav.sweep.variable != SweepVariable::HoldTime
        || rot.sweep.variable != SweepVariable::HoldTime
    {
        errors.push("both scenarios must sweep hold_time_s".into());
    } else if grav.sweep != rot.sweep {
        errors.push("hold-time sweeps differ".into());
    }
    if !errors.is_empty() {
        return Err(Error::Scenario(errors));
    }

    let a = run_sweep(grav)?;
    let b = run_sweep(rot)?;
    let mut report = EquivalenceReport {
        points: a.rows.len(),
        gravitational_potential: g_h.unwrap_or_default(),
        centripetal_potential: centripetal.unwrap_or_default(),
        max_visibility_diff: 0.0,
        max_phase_diff: 0.0,
        max_delta_tau_diff: 0.0,
        equivalent: false,
    };
    for (ra, rb) in a.rows.iter().zip(&b.rows) {
        report.max_visibility_diff = report
            .max_visibility_diff
            .max((ra.visibility - rb.visibility).abs());
        report.max_phase_diff = report
            .max_phase_diff
            .max(circular_distance(ra.phase, rb.phase));
        report.max_delta_tau_diff = report
            .max_delta_tau_diff
            .max((ra.delta_tau - rb.delta_tau).abs());
    }
    report.equivalent = report.max_visibility_diff <= EQUIVALENCE_TOLERANCE
        && report.max_phase_diff <= EQUIVALENCE_TOLERANCE;
    Ok(report)
}
