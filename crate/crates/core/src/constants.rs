/// Unified atomic mass unit, kg (CODATA 2018).
pub const ATOMIC_MASS_UNIT: f64 = 1.660_539_066_60e-27;

const CODATA_C: f64 = 299_792_458.0;
const CODATA_HBAR: f64 = 1.054_571_817e-34;
const CODATA_KB: f64 = 1.380_649e-23;
const STANDARD_GRAVITY: f64 = 9.806_65;

/// Physical constants used by every computation, in SI units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Speed of light, m/s.
    pub c: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Boltzmann constant, J/K.
    pub k_b: f64,
    /// Default gravitational acceleration, m/s².
    pub g_default: f64,
}

impl PhysicalConstants {
    /// CODATA values with standard gravity.
    pub const fn si() -> Self {
        Self {
            c: CODATA_C,
            hbar: CODATA_HBAR,
            k_b: CODATA_KB,
            g_default: STANDARD_GRAVITY,
        }
    }

    /// `c = 3e8 m/s` and `g = 10 m/s²`, for order-of-magnitude estimates.
    /// `hbar` and `k_b` keep their CODATA values.
    pub const fn paper_rounded() -> Self {
        Self {
            c: 3.0e8,
            hbar: CODATA_HBAR,
            k_b: CODATA_KB,
            g_default: 10.0,
        }
    }

    pub fn c_squared(&self) -> f64 {
        self.c * self.c
    }

    /// Largest speed accepted by the post-Newtonian expansion.
    pub fn speed_limit(&self) -> f64 {
        0.01 * self.c
    }

    pub fn is_valid(&self) -> bool {
        [self.c, self.hbar, self.k_b, self.g_default]
            .iter()
            .all(|v| v.is_finite() && *v > 0.0)
    }
}

/// Named constant sets, as referenced from scenario files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ConstantsPreset {
    #[default]
    Si,
    PaperRounded,
}

impl ConstantsPreset {
    pub fn constants(self) -> PhysicalConstants {
        match self {
            ConstantsPreset::Si => PhysicalConstants::si(),
            ConstantsPreset::PaperRounded => PhysicalConstants::paper_rounded(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            ConstantsPreset::Si => "si",
            ConstantsPreset::PaperRounded => "paper_rounded",
        }
    }

    /// Accepts `si`, `paper_rounded` and `paper-rounded`.
    pub fn from_name(name: &str) -> Option<Self> {
        match name {
            "si" => Some(ConstantsPreset::Si),
            "paper_rounded" | "paper-rounded" => Some(ConstantsPreset::PaperRounded),
            _ => None,
        }
    }
}

impl Default for PhysicalConstants {
    fn default() -> Self {
        Self::si()
    }
}
