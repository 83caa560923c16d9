//! Proper time along piecewise-constant worldlines in a homogeneous field.
//!
//! To lowest post-Newtonian order the proper-time rate is
//! `dτ/dt = 1 + Φ/c² - v²/2c²` with `Φ = g·height`. Rates are kept as the
//! deviation from one so that effects of order 10⁻¹⁶ survive in `f64`.

use alloc::format;
use alloc::vec::Vec;

use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};
use crate::twofold::{CompensatedSum, DoubleDouble};

/// Relative mismatch tolerated between the lab durations of the two arms.
pub const ARM_DURATION_TOLERANCE: f64 = 1e-15;

/// `dτ/dt`, stored as `1 + deviation`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperTimeRate {
    pub deviation: f64,
}

impl ProperTimeRate {
    pub fn value(&self) -> f64 {
        1.0 + self.deviation
    }
}

/// Proper time split into the lab time and the dilation accumulated on top of it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProperTime {
    pub lab: DoubleDouble,
    pub dilation: DoubleDouble,
}

impl ProperTime {
    pub fn total(&self) -> f64 {
        (self.lab + self.dilation).to_f64()
    }

    pub fn dilation(&self) -> f64 {
        self.dilation.to_f64()
    }
}

fn check_speed(speed: f64, constants: &PhysicalConstants) -> Result<()> {
    let limit = constants.speed_limit();
    if !(speed.is_finite() && speed >= 0.0) || speed > limit {
        return Err(Error::PostNewtonian { speed, limit });
    }
    Ok(())
}

pub(crate) fn potential_dilation(
    duration: f64,
    potential: f64,
    constants: &PhysicalConstants,
) -> f64 {
    duration * potential / constants.c_squared()
}

pub(crate) fn kinetic_dilation(duration: f64, speed: f64, constants: &PhysicalConstants) -> f64 {
    duration * (0.5 * speed * speed) / constants.c_squared()
}

pub fn proper_time_rate(
    height: f64,
    speed: f64,
    gravity: f64,
    constants: &PhysicalConstants,
) -> Result<ProperTimeRate> {
    check_speed(speed, constants)?;
    let deviation = potential_dilation(1.0, gravity * height, constants)
        - kinetic_dilation(1.0, speed, constants);
    Ok(ProperTimeRate { deviation })
}

/// A stretch of lab time spent at fixed height and speed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PathSegment {
    /// Lab time, s.
    pub duration: f64,
    /// Height above the reference level, m.
    pub height: f64,
    /// Speed, m/s.
    pub speed: f64,
}

impl PathSegment {
    pub fn new(duration: f64, height: f64, speed: f64) -> Self {
        Self {
            duration,
            height,
            speed,
        }
    }

    pub fn validate(&self, constants: &PhysicalConstants) -> Result<()> {
        if !(self.duration.is_finite() && self.duration >= 0.0) {
            return Err(Error::Geometry(format!(
                "segment duration must be >= 0, got {}",
                self.duration
            )));
        }
        if !self.height.is_finite() {
            return Err(Error::Geometry("segment height is not finite".into()));
        }
        check_speed(self.speed, constants)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Worldline {
    segments: Vec<PathSegment>,
}

impl Worldline {
    pub fn new(segments: Vec<PathSegment>, constants: &PhysicalConstants) -> Result<Self> {
        if segments.is_empty() {
            return Err(Error::Geometry(
                "worldline needs at least one segment".into(),
            ));
        }
        for seg in &segments {
            seg.validate(constants)?;
        }
        let line = Self { segments };
        if !(line.lab_duration() > 0.0) {
            return Err(Error::Geometry(
                "worldline total duration must be > 0".into(),
            ));
        }
        Ok(line)
    }

    pub fn segments(&self) -> &[PathSegment] {
        &self.segments
    }

    pub fn lab_duration(&self) -> f64 {
        let mut sum = CompensatedSum::new();
        for s in &self.segments {
            sum.push(s.duration);
        }
        sum.total()
    }

    /// Copy with every segment duration multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            segments: self
                .segments
                .iter()
                .map(|s| PathSegment::new(s.duration * factor, s.height, s.speed))
                .collect(),
        }
    }

    fn push_dilation(
        &self,
        gravity: f64,
        sign: f64,
        constants: &PhysicalConstants,
        acc: &mut CompensatedSum,
    ) {
        for s in &self.segments {
            acc.push(sign * potential_dilation(s.duration, gravity * s.height, constants));
            acc.push(-sign * kinetic_dilation(s.duration, s.speed, constants));
        }
    }
}

/// Two arms that split and recombine at the same events.
#[derive(Debug, Clone, PartialEq)]
pub struct InterferometerGeometry {
    /// Arm at the higher (effective) potential.
    pub gamma1: Worldline,
    pub gamma2: Worldline,
    /// kg
    pub mass: f64,
    /// m/s²
    pub gravity: f64,
}

impl InterferometerGeometry {
    pub fn new(gamma1: Worldline, gamma2: Worldline, mass: f64, gravity: f64) -> Result<Self> {
        let geometry = Self {
            gamma1,
            gamma2,
            mass,
            gravity,
        };
        geometry.validate()?;
        Ok(geometry)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.mass.is_finite() && self.mass > 0.0) {
            return Err(Error::Geometry(format!(
                "mass must be > 0, got {}",
                self.mass
            )));
        }
        if !(self.gravity.is_finite() && self.gravity >= 0.0) {
            return Err(Error::Geometry(format!(
                "gravity must be >= 0, got {}",
                self.gravity
            )));
        }
        let t1 = self.gamma1.lab_duration();
        let t2 = self.gamma2.lab_duration();
        if (t1 - t2).abs() > ARM_DURATION_TOLERANCE * t1.max(t2) {
            return Err(Error::Geometry(format!(
                "arm durations differ: {t1} s vs {t2} s; the arms must recombine at one event"
            )));
        }
        Ok(())
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            gamma1: self.gamma1.scaled(factor),
            gamma2: self.gamma2.scaled(factor),
            mass: self.mass,
            gravity: self.gravity,
        }
    }
}

pub fn proper_time(
    worldline: &Worldline,
    gravity: f64,
    constants: &PhysicalConstants,
) -> ProperTime {
    let mut lab = CompensatedSum::new();
    let mut dilation = CompensatedSum::new();
    for s in worldline.segments() {
        lab.push(s.duration);
    }
    worldline.push_dilation(gravity, 1.0, constants, &mut dilation);
    ProperTime {
        lab: lab.value(),
        dilation: dilation.value(),
    }
}

/// `g·h·t/c²` for arms held at a height difference `h` for lab time `t`.
pub fn delta_tau_gravitational(
    gravity: f64,
    height: f64,
    hold_time: f64,
    constants: &PhysicalConstants,
) -> f64 {
    potential_dilation(hold_time, gravity * height, constants)
}

/// `t·ω²R²/2c²` between a trap at the rotation axis and one at radius `R`.
pub fn delta_tau_rotation(
    omega: f64,
    radius: f64,
    hold_time: f64,
    constants: &PhysicalConstants,
) -> Result<f64> {
    let speed = omega.abs() * radius.abs();
    check_speed(speed, constants)?;
    Ok(kinetic_dilation(hold_time, speed, constants))
}

/// `τ(γ₁) - τ(γ₂)`.
///
/// The lab-time parts cancel because both arms span the same lab interval, so
/// only the dilation terms are differenced.
pub fn delta_tau_general(
    geometry: &InterferometerGeometry,
    constants: &PhysicalConstants,
) -> Result<f64> {
    geometry.validate()?;
    let mut acc = CompensatedSum::new();
    geometry
        .gamma1
        .push_dilation(geometry.gravity, 1.0, constants, &mut acc);
    geometry
        .gamma2
        .push_dilation(geometry.gravity, -1.0, constants, &mut acc);
    Ok(acc.total())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn rounded() -> PhysicalConstants {
        PhysicalConstants::paper_rounded()
    }

    #[test]
    fn rate_examples() {
        let c = rounded();
        assert_eq!(proper_time_rate(0.0, 0.0, 10.0, &c).unwrap().value(), 1.0);
        let up = proper_time_rate(1.0, 0.0, 10.0, &c).unwrap();
        assert!((up.deviation - 10.0 / 9e16).abs() < 1e-30);
        let fast = proper_time_rate(0.0, 3000.0, 10.0, &c).unwrap();
        assert!((fast.deviation + 5.0e-11).abs() < 1e-24);
    }

    #[test]
    fn rate_rejects_fast_speeds() {
        let c = rounded();
        assert!(matches!(
            proper_time_rate(0.0, 0.5 * c.c, 10.0, &c),
            Err(Error::PostNewtonian { .. })
        ));
        assert!(proper_time_rate(0.0, c.speed_limit(), 10.0, &c).is_ok());
    }

    #[test]
    fn proper_time_single_segment() {
        let c = rounded();
        let w = Worldline::new(vec![PathSegment::new(1.0, 0.0, 0.0)], &c).unwrap();
        assert_eq!(proper_time(&w, 10.0, &c).total(), 1.0);
        let w = Worldline::new(vec![PathSegment::new(1.0, 1.0, 0.0)], &c).unwrap();
        let tau = proper_time(&w, 10.0, &c);
        assert!((tau.dilation() - 1.0 / 9e15).abs() < 1e-30);
        assert_eq!(tau.lab.to_f64(), 1.0);
    }

    #[test]
    fn delta_tau_examples() {
        let c = rounded();
        assert!(
            (delta_tau_gravitational(10.0, 1.0, 1.0, &c) - 1.111_111_111_111_111e-16).abs() < 1e-30
        );
        assert_eq!(delta_tau_gravitational(10.0, 0.0, 5.0, &c), 0.0);
        let dt = delta_tau_gravitational(10.0, 1e-3, 1.13e17, &c);
        assert!((dt - 1.255_555_555_555_555_6e-2).abs() < 1e-15);
        assert!((delta_tau_rotation(100.0, 1.0, 1.0, &c).unwrap() - 1e4 / 1.8e17).abs() < 1e-28);
        assert_eq!(delta_tau_rotation(0.0, 1.0, 1.0, &c).unwrap(), 0.0);
        assert!(delta_tau_rotation(1e5, 100.0, 1.0, &c).is_err());
    }

    #[test]
    fn geometry_rejects_mismatched_arms() {
        let c = rounded();
        let a = Worldline::new(vec![PathSegment::new(1.0, 1.0, 0.0)], &c).unwrap();
        let b = Worldline::new(vec![PathSegment::new(1.1, 0.0, 0.0)], &c).unwrap();
        assert!(matches!(
            InterferometerGeometry::new(a.clone(), b, 1.0, 10.0),
            Err(Error::Geometry(_))
        ));
        assert!(InterferometerGeometry::new(a.clone(), a.clone(), 0.0, 10.0).is_err());
        let g = InterferometerGeometry::new(a.clone(), a, 1.0, 10.0).unwrap();
        assert_eq!(delta_tau_general(&g, &c).unwrap(), 0.0);
    }

    #[test]
    fn worldline_rejects_empty_and_zero_duration() {
        let c = rounded();
        assert!(Worldline::new(vec![], &c).is_err());
        assert!(Worldline::new(vec![PathSegment::new(0.0, 1.0, 0.0)], &c).is_err());
        assert!(Worldline::new(vec![PathSegment::new(-1.0, 1.0, 0.0)], &c).is_err());
    }

    #[test]
    fn general_matches_speed_difference() {
        let c = rounded();
        let slow = Worldline::new(vec![PathSegment::new(1.0, 0.0, 0.0)], &c).unwrap();
        let fast = Worldline::new(vec![PathSegment::new(1.0, 0.0, 3000.0)], &c).unwrap();
        let g = InterferometerGeometry::new(fast, slow, 1.0, 10.0).unwrap();
        assert!((delta_tau_general(&g, &c).unwrap() + 5.0e-11).abs() < 1e-24);
    }
}
