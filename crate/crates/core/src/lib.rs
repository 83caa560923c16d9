//! Quantum "clocks" in interferometers with time dilation between the arms.
//!
//! A particle with internal dynamics that traverses two paths with different
//! proper time ends up with its internal state entangled with the path. The
//! fringe visibility is then the modulus of the characteristic function of the
//! internal energy distribution evaluated at the proper-time difference, and the
//! fringe phase picks up the rest-energy term `mc²Δτ/ħ`.
//!
//! The crate is `no_std` and only needs `alloc`. File formats and the command
//! line live in the companion `qclock` crate.
#![no_std]
// `!(x > 0.0)` rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod complex;
pub mod constants;
pub mod error;
pub mod interference;
pub mod scenario;
pub mod state;
pub mod twofold;
pub mod visibility;
pub mod worldline;

pub use complex::ComplexValue;
pub use constants::{ConstantsPreset, PhysicalConstants, ATOMIC_MASS_UNIT};
pub use error::{Error, Result};
pub use interference::{
    detection_probabilities, distinguishability, relative_phase_gr, relative_phase_newtonian,
    InterferenceOutcome, Phase,
};
pub use scenario::{
    decoherence_time, equivalence_check, revival_time, run_sweep, ClockModel, DecoherenceResult,
    DilationModel, EquivalenceReport, GeometrySpec, RevivalResult, Scenario, Spacing, Sweep,
    SweepVariable, VisibilityCurve, VisibilityRow,
};
pub use state::{
    energy_moments, GaussianPhotonState, InternalState, Level, PureDiscreteState,
    ThermalHarmonicState,
};
pub use visibility::{
    characteristic_function, orthogonalization_bounds, visibility, visibility_gaussian,
    visibility_moment_series, visibility_thermal, visibility_thermal_high_t, visibility_two_level,
    visibility_variance_approx, OrthogonalizationBounds,
};
pub use worldline::{
    delta_tau_general, delta_tau_gravitational, delta_tau_rotation, proper_time, proper_time_rate,
    InterferometerGeometry, PathSegment, ProperTime, ProperTimeRate, Worldline,
};
