//! Declarative experiments: a clock, an interferometer geometry and a
//! parameter sweep, plus the revival, decoherence and equivalence analyses
//! built on them.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::constants::{ConstantsPreset, PhysicalConstants};
use crate::error::{Error, Result};
use crate::interference::{
    distinguishability_from_visibility, high_temperature_outcome, interference_outcome,
};
use crate::state::InternalState;
use crate::worldline::{
    delta_tau_general, delta_tau_gravitational, delta_tau_rotation, InterferometerGeometry,
    PathSegment, Worldline,
};

mod decoherence;
mod equivalence;
mod revival;

pub use decoherence::{decoherence_time, DecoherenceResult};
pub use equivalence::{equivalence_check, EquivalenceReport, EQUIVALENCE_TOLERANCE};
pub use revival::{fundamental_frequency, revival_time, RevivalResult, COMMENSURABILITY_TOLERANCE};

/// The clock carried through the interferometer.
#[derive(Debug, Clone, PartialEq)]
pub enum ClockModel {
    State(InternalState),
    /// `N` thermal modes in the high-temperature limit, with `N` possibly far
    /// too large to enumerate.
    HighTemperature {
        mode_count: f64,
        temperature: f64,
    },
}

impl ClockModel {
    pub fn is_pure(&self) -> bool {
        matches!(self, ClockModel::State(s) if s.is_pure())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScenarioKind {
    GravitationalMz,
    RotatingPlatform,
    PhotonShapiro,
    CustomGeometry,
}

impl ScenarioKind {
    pub fn name(self) -> &'static str {
        match self {
            ScenarioKind::GravitationalMz => "gravitational_mz",
            ScenarioKind::RotatingPlatform => "rotating_platform",
            ScenarioKind::PhotonShapiro => "photon_shapiro",
            ScenarioKind::CustomGeometry => "custom_geometry",
        }
    }
}

/// Fixed geometry parameters. Whichever parameter is swept may be left unset.
#[derive(Debug, Clone, PartialEq)]
pub enum GeometrySpec {
    /// Arms held at a height difference `height` for lab time `hold_time`.
    Gravitational {
        gravity: f64,
        height: Option<f64>,
        hold_time: Option<f64>,
    },
    /// One trap at the rotation axis, one at `radius`.
    Rotating {
        angular_velocity: Option<f64>,
        radius: Option<f64>,
        hold_time: Option<f64>,
    },
    /// The proper-time difference is given directly (e.g. a Shapiro delay).
    PhotonDelay { delta_tau: Option<f64> },
    /// Explicit piecewise worldlines; swept by scaling all durations.
    Custom {
        gamma1: Vec<PathSegment>,
        gamma2: Vec<PathSegment>,
        gravity: f64,
    },
}

impl GeometrySpec {
    pub fn kind(&self) -> ScenarioKind {
        match self {
            GeometrySpec::Gravitational { .. } => ScenarioKind::GravitationalMz,
            GeometrySpec::Rotating { .. } => ScenarioKind::RotatingPlatform,
            GeometrySpec::PhotonDelay { .. } => ScenarioKind::PhotonShapiro,
            GeometrySpec::Custom { .. } => ScenarioKind::CustomGeometry,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepVariable {
    Height,
    HoldTime,
    Area,
    AngularVelocity,
    Radius,
    DeltaTau,
    DurationScale,
}

impl SweepVariable {
    pub const ALL: [SweepVariable; 7] = [
        SweepVariable::Height,
        SweepVariable::HoldTime,
        SweepVariable::Area,
        SweepVariable::AngularVelocity,
        SweepVariable::Radius,
        SweepVariable::DeltaTau,
        SweepVariable::DurationScale,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepVariable::Height => "height_m",
            SweepVariable::HoldTime => "hold_time_s",
            SweepVariable::Area => "area_m_s",
            SweepVariable::AngularVelocity => "angular_velocity_rad_per_s",
            SweepVariable::Radius => "radius_m",
            SweepVariable::DeltaTau => "delta_tau_s",
            SweepVariable::DurationScale => "duration_scale",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|v| v.name() == name)
    }

    pub fn applies_to(self, kind: ScenarioKind) -> bool {
        use SweepVariable::*;
        match kind {
            ScenarioKind::GravitationalMz => matches!(self, Height | HoldTime | Area),
            ScenarioKind::RotatingPlatform => matches!(self, AngularVelocity | Radius | HoldTime),
            ScenarioKind::PhotonShapiro => self == DeltaTau,
            ScenarioKind::CustomGeometry => self == DurationScale,
        }
    }

    fn non_negative(self) -> bool {
        !matches!(self, SweepVariable::Height | SweepVariable::DeltaTau)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

impl Spacing {
    pub fn name(self) -> &'static str {
        match self {
            Spacing::Linear => "linear",
            Spacing::Log => "log",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "linear" => Some(Spacing::Linear),
            "log" => Some(Spacing::Log),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Sweep {
    pub variable: SweepVariable,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
    pub spacing: Spacing,
}

impl Sweep {
    /// Sweep points in ascending order; the end points are hit exactly.
    pub fn values(&self) -> Vec<f64> {
        let n = self.count;
        let last = (n - 1) as f64;
        (0..n)
            .map(|i| {
                if i == 0 {
                    return self.start;
                }
                if i == n - 1 {
                    return self.stop;
                }
                let f = i as f64 / last;
                match self.spacing {
                    Spacing::Linear => self.start + (self.stop - self.start) * f,
                    Spacing::Log => {
                        let (a, b) = (libm::log(self.start), libm::log(self.stop));
                        libm::exp(a + (b - a) * f)
                    }
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub name: Option<String>,
    pub clock: ClockModel,
    pub geometry: GeometrySpec,
    /// Rest mass, kg. May be zero for photon scenarios.
    pub mass: f64,
    pub sweep: Sweep,
    pub constants: ConstantsPreset,
}

/// One sweep point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VisibilityRow {
    pub sweep_value: f64,
    /// s
    pub delta_tau: f64,
    pub visibility: f64,
    /// rad, in `[0, 2π)`
    pub phase: f64,
    pub p_plus: f64,
    pub p_minus: f64,
    /// Absent for mixed clocks.
    pub distinguishability: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VisibilityCurve {
    pub variable: SweepVariable,
    pub rows: Vec<VisibilityRow>,
}

fn finite_positive(errors: &mut Vec<String>, field: &str, v: f64) {
    if !(v.is_finite() && v > 0.0) {
        errors.push(format!("{field}: must be > 0, got {v}"));
    }
}

fn finite_non_negative(errors: &mut Vec<String>, field: &str, v: f64) {
    if !(v.is_finite() && v >= 0.0) {
        errors.push(format!("{field}: must be >= 0, got {v}"));
    }
}

impl Scenario {
    pub fn kind(&self) -> ScenarioKind {
        self.geometry.kind()
    }

    pub fn physical_constants(&self) -> PhysicalConstants {
        self.constants.constants()
    }

    /// Checks every field and reports all problems at once.
    pub fn validate(&self) -> Result<()> {
        let mut errors = Vec::new();
        let constants = self.physical_constants();
        let kind = self.kind();

        if kind == ScenarioKind::PhotonShapiro {
            finite_non_negative(&mut errors, "mass_kg", self.mass);
        } else {
            finite_positive(&mut errors, "mass_kg", self.mass);
        }

        if let ClockModel::HighTemperature {
            mode_count,
            temperature,
        } = self.clock
        {
            if !(mode_count.is_finite() && mode_count >= 1.0) {
                errors.push(format!("clock.mode_count: must be >= 1, got {mode_count}"));
            }
            finite_positive(&mut errors, "clock.temperature_k", temperature);
        }

        let sweep = &self.sweep;
        let var = sweep.variable;
        if !var.applies_to(kind) {
            errors.push(format!(
                "sweep.variable: `{}` is not a parameter of a {} scenario",
                var.name(),
                kind.name()
            ));
        }
        if sweep.count < 2 {
            errors.push(format!("sweep.count: must be >= 2, got {}", sweep.count));
        }
        if !(sweep.start.is_finite() && sweep.stop.is_finite()) {
            errors.push("sweep: start and stop must be finite".into());
        } else if !(sweep.start < sweep.stop) {
            errors.push(format!(
                "sweep: start ({}) must be < stop ({})",
                sweep.start, sweep.stop
            ));
        }
        if sweep.spacing == Spacing::Log && !(sweep.start > 0.0) {
            errors.push("sweep.start: log spacing needs start > 0".into());
        }
        if var.non_negative() && sweep.start < 0.0 {
            errors.push(format!("sweep.start: `{}` must be >= 0", var.name()));
        }

        let swept = |v: SweepVariable| var == v;
        match &self.geometry {
            GeometrySpec::Gravitational {
                gravity,
                height,
                hold_time,
            } => {
                finite_non_negative(
                    &mut errors,
                    "geometry.gravitational.gravity_m_per_s2",
                    *gravity,
                );
                let needs_fixed = !swept(SweepVariable::Area);
                match height {
                    Some(h) if !h.is_finite() => {
                        errors.push("geometry.gravitational.height_m: not finite".into())
                    }
                    None if needs_fixed && !swept(SweepVariable::Height) => {
                        errors.push("geometry.gravitational.height_m: required unless swept".into())
                    }
                    _ => {}
                }
                match hold_time {
                    Some(t) => {
                        finite_non_negative(&mut errors, "geometry.gravitational.hold_time_s", *t)
                    }
                    None if needs_fixed && !swept(SweepVariable::HoldTime) => errors
                        .push("geometry.gravitational.hold_time_s: required unless swept".into()),
                    None => {}
                }
            }
            GeometrySpec::Rotating {
                angular_velocity,
                radius,
                hold_time,
            } => {
                let fields = [
                    (
                        SweepVariable::AngularVelocity,
                        angular_velocity,
                        "angular_velocity_rad_per_s",
                    ),
                    (SweepVariable::Radius, radius, "radius_m"),
                    (SweepVariable::HoldTime, hold_time, "hold_time_s"),
                ];
                for (v, value, name) in fields {
                    match value {
                        Some(x) => finite_non_negative(
                            &mut errors,
                            &format!("geometry.rotating.{name}"),
                            *x,
                        ),
                        None if !swept(v) => {
                            errors.push(format!("geometry.rotating.{name}: required unless swept"))
                        }
                        None => {}
                    }
                }
                let omega_max = if swept(SweepVariable::AngularVelocity) {
                    Some(sweep.stop)
                } else {
                    *angular_velocity
                };
                let radius_max = if swept(SweepVariable::Radius) {
                    Some(sweep.stop)
                } else {
                    *radius
                };
                if let (Some(w), Some(r)) = (omega_max, radius_max) {
                    let speed = w.abs() * r.abs();
                    if speed > constants.speed_limit() {
                        errors.push(format!(
                            "geometry.rotating: rim speed {speed} m/s exceeds the post-Newtonian guard {} m/s (0.01 c)",
                            constants.speed_limit()
                        ));
                    }
                }
            }
            GeometrySpec::PhotonDelay { delta_tau } => match delta_tau {
                Some(d) if !d.is_finite() => {
                    errors.push("geometry.photon_delay.delta_tau_s: not finite".into())
                }
                None if !swept(SweepVariable::DeltaTau) => {
                    errors.push("geometry.photon_delay.delta_tau_s: required unless swept".into())
                }
                _ => {}
            },
            GeometrySpec::Custom { .. } => {
                if let Err(e) = self.custom_geometry(&constants) {
                    errors.push(format!("geometry.custom: {e}"));
                }
            }
        }

        if errors.is_empty() {
            Ok(())
        } else {
            Err(Error::Scenario(errors))
        }
    }

    fn custom_geometry(&self, constants: &PhysicalConstants) -> Result<InterferometerGeometry> {
        match &self.geometry {
            GeometrySpec::Custom {
                gamma1,
                gamma2,
                gravity,
            } => {
                let g1 = Worldline::new(gamma1.clone(), constants)?;
                let g2 = Worldline::new(gamma2.clone(), constants)?;
                // mass is validated on its own
                let mass = self.mass.max(f64::MIN_POSITIVE);
                InterferometerGeometry::new(g1, g2, mass, *gravity)
            }
            _ => Err(Error::Geometry("not a custom geometry".into())),
        }
    }

    /// Proper-time difference at one sweep point.
    pub fn delta_tau_at(&self, value: f64) -> Result<f64> {
        let constants = self.physical_constants();
        let var = self.sweep.variable;
        let pick = |v: SweepVariable, fixed: Option<f64>| -> Result<f64> {
            if var == v {
                Ok(value)
            } else {
                fixed
                    .ok_or_else(|| Error::Scenario(alloc::vec![format!("{} is not set", v.name())]))
            }
        };
        match &self.geometry {
            GeometrySpec::Gravitational {
                gravity,
                height,
                hold_time,
            } => {
                if var == SweepVariable::Area {
                    return Ok(delta_tau_gravitational(*gravity, value, 1.0, &constants));
                }
                let h = pick(SweepVariable::Height, *height)?;
                let t = pick(SweepVariable::HoldTime, *hold_time)?;
                Ok(delta_tau_gravitational(*gravity, h, t, &constants))
            }
            GeometrySpec::Rotating {
                angular_velocity,
                radius,
                hold_time,
            } => {
                let w = pick(SweepVariable::AngularVelocity, *angular_velocity)?;
                let r = pick(SweepVariable::Radius, *radius)?;
                let t = pick(SweepVariable::HoldTime, *hold_time)?;
                delta_tau_rotation(w, r, t, &constants)
            }
            GeometrySpec::PhotonDelay { delta_tau } => pick(SweepVariable::DeltaTau, *delta_tau),
            GeometrySpec::Custom { .. } => {
                let geometry = self.custom_geometry(&constants)?;
                delta_tau_general(&geometry.scaled(value), &constants)
            }
        }
    }

    /// Evaluates one sweep point. Pure, so rows may be computed in any order.
    pub fn evaluate_row(&self, value: f64) -> Result<VisibilityRow> {
        let constants = self.physical_constants();
        let delta_tau = self.delta_tau_at(value)?;
        let (outcome, pure) = match &self.clock {
            ClockModel::State(state) => (
                interference_outcome(state, self.mass, delta_tau, &constants)?,
                state.is_pure(),
            ),
            ClockModel::HighTemperature {
                mode_count,
                temperature,
            } => (
                high_temperature_outcome(
                    *mode_count,
                    *temperature,
                    self.mass,
                    delta_tau,
                    &constants,
                )?,
                false,
            ),
        };
        Ok(VisibilityRow {
            sweep_value: value,
            delta_tau,
            visibility: outcome.visibility,
            phase: outcome.phase,
            p_plus: outcome.p_plus,
            p_minus: outcome.p_minus,
            distinguishability: pure
                .then(|| distinguishability_from_visibility(outcome.visibility)),
        })
    }

    /// Linear map from the scenario's lab-time axis to `Δτ`, built from the
    /// fixed geometry parameters (the sweep is ignored).
    pub fn dilation_model(&self) -> Result<DilationModel> {
        self.validate()?;
        let constants = self.physical_constants();
        let missing = |name: &str| {
            Error::Scenario(alloc::vec![format!(
                "{name} must be fixed in the geometry to map Δτ onto lab time"
            )])
        };
        let model = match &self.geometry {
            GeometrySpec::Gravitational {
                gravity, height, ..
            } => match height {
                Some(h) => DilationModel {
                    per_unit: delta_tau_gravitational(*gravity, *h, 1.0, &constants),
                    axis: LabAxis::HoldTime,
                },
                None => DilationModel {
                    per_unit: delta_tau_gravitational(*gravity, 1.0, 1.0, &constants),
                    axis: LabAxis::Area,
                },
            },
            GeometrySpec::Rotating {
                angular_velocity,
                radius,
                ..
            } => {
                let w = angular_velocity.ok_or_else(|| missing("angular_velocity_rad_per_s"))?;
                let r = radius.ok_or_else(|| missing("radius_m"))?;
                DilationModel {
                    per_unit: delta_tau_rotation(w, r, 1.0, &constants)?,
                    axis: LabAxis::HoldTime,
                }
            }
            GeometrySpec::PhotonDelay { .. } => DilationModel {
                per_unit: 1.0,
                axis: LabAxis::DelayDirect,
            },
            GeometrySpec::Custom { .. } => DilationModel {
                per_unit: delta_tau_general(&self.custom_geometry(&constants)?, &constants)?,
                axis: LabAxis::DurationScale,
            },
        };
        Ok(model)
    }
}

/// What the lab-side variable of a [`DilationModel`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabAxis {
    /// Hold time, s.
    HoldTime,
    /// Space-time area `h·t`, m·s.
    Area,
    /// `Δτ` itself, s.
    DelayDirect,
    /// Multiplier on all segment durations of a custom geometry.
    DurationScale,
}

impl LabAxis {
    pub fn unit(self) -> &'static str {
        match self {
            LabAxis::HoldTime | LabAxis::DelayDirect => "s",
            LabAxis::Area => "m·s",
            LabAxis::DurationScale => "",
        }
    }
}

/// `Δτ = per_unit · x`, where `x` is measured along `axis`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DilationModel {
    pub per_unit: f64,
    pub axis: LabAxis,
}

impl DilationModel {
    pub fn delta_tau(&self, x: f64) -> f64 {
        self.per_unit * x
    }

    /// Lab value producing `|Δτ| = delta_tau`; infinite if there is no dilation.
    pub fn lab_value(&self, delta_tau: f64) -> f64 {
        if self.per_unit == 0.0 {
            f64::INFINITY
        } else {
            delta_tau / self.per_unit.abs()
        }
    }
}

/// Evaluates every sweep point in order.
pub fn run_sweep(scenario: &Scenario) -> Result<VisibilityCurve> {
    scenario.validate()?;
    let rows = scenario
        .sweep
        .values()
        .into_iter()
        .map(|v| scenario.evaluate_row(v))
        .collect::<Result<Vec<_>>>()?;
    Ok(VisibilityCurve {
        variable: scenario.sweep.variable,
        rows,
    })
}
