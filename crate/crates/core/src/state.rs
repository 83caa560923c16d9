//! Clock models: the internal state whose energy distribution sets the
//! visibility.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::complex::ComplexValue;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

/// Highest moment order that the moment-based operations accept.
pub const MAX_MOMENT_ORDER: usize = 8;

const NORMALIZATION_TOLERANCE: f64 = 1e-12;

/// One internal energy eigenstate and its amplitude.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Level {
    /// Energy, J.
    pub energy: f64,
    pub amplitude: ComplexValue,
}

impl Level {
    pub fn weight(&self) -> f64 {
        self.amplitude.norm_sqr()
    }
}

/// A pure superposition of internal energy eigenstates.
#[derive(Debug, Clone, PartialEq)]
pub struct PureDiscreteState {
    levels: Vec<Level>,
}

impl PureDiscreteState {
    pub fn new(levels: Vec<Level>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::InvalidState("at least one level is required".into()));
        }
        for (i, level) in levels.iter().enumerate() {
            if !level.energy.is_finite() {
                return Err(Error::InvalidState(format!(
                    "level {i}: energy is not finite"
                )));
            }
            if !level.amplitude.is_finite() {
                return Err(Error::InvalidState(format!(
                    "level {i}: amplitude is not finite"
                )));
            }
        }
        let norm: f64 = levels.iter().map(Level::weight).sum();
        if (norm - 1.0).abs() > NORMALIZATION_TOLERANCE {
            return Err(Error::InvalidState(format!(
                "sum of |amplitude|^2 is {norm}, expected 1 within {NORMALIZATION_TOLERANCE:e}"
            )));
        }
        Ok(Self { levels })
    }

    /// Equal-weight superposition of two energy eigenstates.
    pub fn two_level(e1: f64, e2: f64) -> Result<Self> {
        let a = ComplexValue::new(core::f64::consts::FRAC_1_SQRT_2, 0.0);
        Self::new(vec![
            Level {
                energy: e1,
                amplitude: a,
            },
            Level {
                energy: e2,
                amplitude: a,
            },
        ])
    }

    /// Equal superposition of `0` and `ħν`, i.e. a periodic clock with angular
    /// frequency `nu`.
    pub fn from_transition_frequency(nu: f64, constants: &PhysicalConstants) -> Result<Self> {
        if !(nu.is_finite() && nu > 0.0) {
            return Err(Error::InvalidState(format!(
                "transition frequency must be positive, got {nu}"
            )));
        }
        Self::two_level(0.0, constants.hbar * nu)
    }

    /// A single energy eigenstate: a "switched-off" clock.
    pub fn eigenstate(energy: f64) -> Result<Self> {
        Self::new(vec![Level {
            energy,
            amplitude: ComplexValue::ONE,
        }])
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn min_energy(&self) -> f64 {
        self.levels
            .iter()
            .map(|l| l.energy)
            .fold(f64::INFINITY, f64::min)
    }

    /// Distinct energies carrying non-zero weight, ascending, with summed weights.
    pub fn spectrum(&self) -> Vec<(f64, f64)> {
        let mut pairs: Vec<(f64, f64)> = self
            .levels
            .iter()
            .filter(|l| l.weight() > 0.0)
            .map(|l| (l.energy, l.weight()))
            .collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(pairs.len());
        for (e, w) in pairs {
            match merged.last_mut() {
                Some(last) if last.0 == e => last.1 += w,
                _ => merged.push((e, w)),
            }
        }
        merged
    }

    /// True when only one energy carries weight.
    pub fn is_eigenstate(&self) -> bool {
        self.spectrum().len() == 1
    }
}

/// A single photon with a Gaussian frequency distribution
/// `f(ν) = (a²/π)^{1/4} exp(-a²(ν - ν₀)²/2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPhotonState {
    /// Centre angular frequency, rad/s.
    pub nu0: f64,
    /// Width parameter, s.
    pub a: f64,
}

impl GaussianPhotonState {
    pub fn new(nu0: f64, a: f64) -> Result<Self> {
        if !(nu0.is_finite() && nu0 > 0.0) {
            return Err(Error::InvalidState(format!(
                "centre frequency must be positive, got {nu0}"
            )));
        }
        if !(a.is_finite() && a > 0.0) {
            return Err(Error::InvalidState(format!(
                "width parameter must be positive, got {a}"
            )));
        }
        Ok(Self { nu0, a })
    }

    /// Variance of the angular frequency under `|f(ν)|²`.
    pub fn frequency_variance(&self) -> f64 {
        0.5 / (self.a * self.a)
    }
}

/// Independent harmonic modes in thermal equilibrium,
/// `H = Σ (n_i + ½) ħω_i`.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermalHarmonicState {
    mode_frequencies: Vec<f64>,
    temperature: f64,
}

impl ThermalHarmonicState {
    pub fn new(mode_frequencies: Vec<f64>, temperature: f64) -> Result<Self> {
        if mode_frequencies.is_empty() {
            return Err(Error::InvalidState("at least one mode is required".into()));
        }
        if let Some((i, w)) = mode_frequencies
            .iter()
            .enumerate()
            .find(|(_, w)| !(w.is_finite() && **w > 0.0))
        {
            return Err(Error::InvalidState(format!(
                "mode {i}: frequency must be positive, got {w}"
            )));
        }
        if !(temperature.is_finite() && temperature > 0.0) {
            return Err(Error::InvalidState(format!(
                "temperature must be positive, got {temperature}"
            )));
        }
        Ok(Self {
            mode_frequencies,
            temperature,
        })
    }

    /// `n` modes sharing one frequency.
    pub fn uniform(omega: f64, n: usize, temperature: f64) -> Result<Self> {
        Self::new(vec![omega; n], temperature)
    }

    pub fn mode_frequencies(&self) -> &[f64] {
        &self.mode_frequencies
    }

    pub fn temperature(&self) -> f64 {
        self.temperature
    }

    pub fn beta(&self, constants: &PhysicalConstants) -> f64 {
        1.0 / (constants.k_b * self.temperature)
    }

    pub fn zero_point_energy(&self, constants: &PhysicalConstants) -> f64 {
        self.mode_frequencies
            .iter()
            .map(|w| 0.5 * constants.hbar * w)
            .sum()
    }
}

/// Bose-Einstein occupation `1/(e^x - 1)` for `x = βħω`.
pub(crate) fn occupation(x: f64) -> f64 {
    1.0 / libm::expm1(x)
}

#[derive(Debug, Clone, PartialEq)]
pub enum InternalState {
    Pure(PureDiscreteState),
    Gaussian(GaussianPhotonState),
    Thermal(ThermalHarmonicState),
}

impl InternalState {
    pub fn is_pure(&self) -> bool {
        !matches!(self, InternalState::Thermal(_))
    }

    /// Energy subtracted before moment-based work: the lowest level for pure
    /// states, the zero-point energy for thermal modes and `ħν₀` for photons
    /// (a Gaussian spectrum has no lowest level).
    pub fn reference_energy(&self, constants: &PhysicalConstants) -> f64 {
        match self {
            InternalState::Pure(s) => s.min_energy(),
            InternalState::Gaussian(g) => constants.hbar * g.nu0,
            InternalState::Thermal(t) => t.zero_point_energy(constants),
        }
    }

    /// `⟨(H - E_ref)^n · s^n⟩` for `n = 0..=order`.
    pub(crate) fn scaled_shifted_moments(
        &self,
        order: usize,
        scale: f64,
        constants: &PhysicalConstants,
    ) -> Result<Vec<f64>> {
        check_order(order)?;
        let moments = match self {
            InternalState::Pure(s) => {
                let e0 = s.min_energy();
                let mut m = vec![0.0; order + 1];
                for (e, w) in s.spectrum() {
                    let x = (e - e0) * scale;
                    let mut p = w;
                    for slot in m.iter_mut() {
                        *slot += p;
                        p *= x;
                    }
                }
                m[0] = 1.0;
                m
            }
            InternalState::Gaussian(g) => {
                let mut kappa = vec![0.0; order + 1];
                if order >= 2 {
                    let sigma = constants.hbar * scale;
                    kappa[2] = g.frequency_variance() * sigma * sigma;
                }
                moments_from_cumulants(&kappa)
            }
            InternalState::Thermal(t) => {
                let kappa = thermal_cumulants(t, order, scale, constants);
                moments_from_cumulants(&kappa)
            }
        };
        if let Some(n) = moments.iter().position(|m| !m.is_finite()) {
            return Err(Error::Range(format!("moment of order {n} is not finite")));
        }
        Ok(moments)
    }
}

fn check_order(order: usize) -> Result<()> {
    if order > MAX_MOMENT_ORDER {
        return Err(Error::Range(format!(
            "moment order {order} exceeds the supported maximum {MAX_MOMENT_ORDER}"
        )));
    }
    Ok(())
}

/// Cumulants `κ_1..κ_order` (index 0 unused) of `s·Σ ħω_i n_i` for thermal modes.
fn thermal_cumulants(
    state: &ThermalHarmonicState,
    order: usize,
    scale: f64,
    constants: &PhysicalConstants,
) -> Vec<f64> {
    // The r-th cumulant of a Bose-Einstein occupation is a polynomial in n̄:
    // κ_1 = n̄, κ_{r+1} = n̄(1 + n̄) dκ_r/dn̄.
    let mut polys: Vec<Vec<f64>> = vec![vec![]; order + 1];
    if order >= 1 {
        polys[1] = vec![0.0, 1.0];
    }
    for r in 1..order {
        let p = &polys[r];
        let deriv: Vec<f64> = (1..p.len()).map(|k| k as f64 * p[k]).collect();
        let mut next = vec![0.0; deriv.len() + 2];
        for (k, d) in deriv.iter().enumerate() {
            next[k + 1] += d;
            next[k + 2] += d;
        }
        polys[r + 1] = next;
    }

    let beta = state.beta(constants);
    let mut kappa = vec![0.0; order + 1];
    for &w in state.mode_frequencies() {
        let quantum = constants.hbar * w;
        let nbar = occupation(beta * quantum);
        let step = quantum * scale;
        let mut step_pow = step;
        for r in 1..=order {
            let poly = polys[r].iter().rev().fold(0.0, |acc, c| acc * nbar + c);
            kappa[r] += step_pow * poly;
            step_pow *= step;
        }
    }
    kappa
}

/// Raw moments from cumulants (`kappa[0]` is ignored).
fn moments_from_cumulants(kappa: &[f64]) -> Vec<f64> {
    let order = kappa.len() - 1;
    let mut m = vec![0.0; order + 1];
    m[0] = 1.0;
    for n in 1..=order {
        let mut binom = 1.0;
        let mut acc = 0.0;
        for k in 1..=n {
            acc += binom * kappa[k] * m[n - k];
            binom = binom * (n - k) as f64 / k as f64;
        }
        m[n] = acc;
    }
    m
}

/// Raw energy moments `⟨H⁰⟩ … ⟨H^order⟩` in Jⁿ.
pub fn energy_moments(
    state: &InternalState,
    order: usize,
    constants: &PhysicalConstants,
) -> Result<Vec<f64>> {
    check_order(order)?;
    let moments = match state {
        InternalState::Pure(s) => {
            let mut m = vec![0.0; order + 1];
            for level in s.levels() {
                let mut p = level.weight();
                for slot in m.iter_mut() {
                    *slot += p;
                    p *= level.energy;
                }
            }
            m[0] = 1.0;
            m
        }
        InternalState::Gaussian(g) => {
            let mut kappa = vec![0.0; order + 1];
            if order >= 1 {
                kappa[1] = constants.hbar * g.nu0;
            }
            if order >= 2 {
                kappa[2] = g.frequency_variance() * constants.hbar * constants.hbar;
            }
            moments_from_cumulants(&kappa)
        }
        InternalState::Thermal(t) => {
            let mut kappa = thermal_cumulants(t, order, 1.0, constants);
            if order >= 1 {
                kappa[1] += t.zero_point_energy(constants);
            }
            moments_from_cumulants(&kappa)
        }
    };
    if let Some(n) = moments.iter().position(|m| !m.is_finite()) {
        return Err(Error::Range(format!("moment of order {n} is not finite")));
    }
    Ok(moments)
}

/// Energy standard deviation `ΔH`, J.
pub fn energy_spread(state: &InternalState, constants: &PhysicalConstants) -> Result<f64> {
    let m = state.scaled_shifted_moments(2, 1.0, constants)?;
    Ok(libm::sqrt((m[2] - m[1] * m[1]).max(0.0)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn consts() -> PhysicalConstants {
        PhysicalConstants::si()
    }

    #[test]
    fn rejects_unnormalised_and_empty() {
        assert!(PureDiscreteState::new(vec![]).is_err());
        let bad = PureDiscreteState::new(vec![Level {
            energy: 0.0,
            amplitude: ComplexValue::new(0.9, 0.0),
        }]);
        assert!(matches!(bad, Err(Error::InvalidState(_))));
        assert!(ThermalHarmonicState::new(vec![], 300.0).is_err());
        assert!(ThermalHarmonicState::new(vec![1.0, -1.0], 300.0).is_err());
        assert!(ThermalHarmonicState::new(vec![1.0], 0.0).is_err());
        assert!(GaussianPhotonState::new(1.0, 0.0).is_err());
    }

    #[test]
    fn duplicate_energies_merge() {
        let h = core::f64::consts::FRAC_1_SQRT_2;
        let s = PureDiscreteState::new(vec![
            Level {
                energy: 1.0,
                amplitude: ComplexValue::new(0.5, 0.0),
            },
            Level {
                energy: 1.0,
                amplitude: ComplexValue::new(0.0, 0.5),
            },
            Level {
                energy: 2.0,
                amplitude: ComplexValue::new(h, 0.0),
            },
        ])
        .unwrap();
        let spectrum = s.spectrum();
        assert_eq!(spectrum.len(), 2);
        assert!((spectrum[0].1 - 0.5).abs() < 1e-15);
    }

    #[test]
    fn two_level_mean_and_variance() {
        let c = consts();
        let nu = 1e15;
        let s = InternalState::Pure(PureDiscreteState::from_transition_frequency(nu, &c).unwrap());
        let m = energy_moments(&s, 2, &c).unwrap();
        let e = c.hbar * nu;
        assert!((m[1] - e / 2.0).abs() <= 1e-15 * e);
        let var = m[2] - m[1] * m[1];
        assert!((var - (e / 2.0).powi(2)).abs() <= 1e-12 * (e / 2.0).powi(2));
    }

    #[test]
    fn order_zero_is_one_and_cap_enforced() {
        let c = consts();
        let states = [
            InternalState::Pure(PureDiscreteState::eigenstate(3.0e-19).unwrap()),
            InternalState::Gaussian(GaussianPhotonState::new(1e15, 1e-12).unwrap()),
            InternalState::Thermal(ThermalHarmonicState::new(vec![1e13, 2e13], 300.0).unwrap()),
        ];
        for s in &states {
            assert_eq!(energy_moments(s, 0, &c).unwrap(), vec![1.0]);
            assert!(matches!(energy_moments(s, 9, &c), Err(Error::Range(_))));
        }
    }

    #[test]
    fn thermal_high_temperature_variance() {
        let c = consts();
        let t = 300.0;
        // βħω = 0.005
        let omega = 0.005 * c.k_b * t / c.hbar;
        let s = InternalState::Thermal(ThermalHarmonicState::new(vec![omega], t).unwrap());
        let m = energy_moments(&s, 2, &c).unwrap();
        let var = m[2] - m[1] * m[1];
        let kt = c.k_b * t;
        assert!((var / (kt * kt) - 1.0).abs() < 0.01);
        assert!((energy_spread(&s, &c).unwrap() / kt - 1.0).abs() < 0.01);
    }

    #[test]
    fn gaussian_moments() {
        let c = consts();
        let g = GaussianPhotonState::new(2e15, 1e-14).unwrap();
        let m = energy_moments(&InternalState::Gaussian(g), 4, &c).unwrap();
        let mu = c.hbar * g.nu0;
        let var = c.hbar * c.hbar / (2.0 * g.a * g.a);
        assert!((m[1] / mu - 1.0).abs() < 1e-15);
        assert!(((m[2] - mu * mu) / var - 1.0).abs() < 1e-6);
        let m4 = mu.powi(4) + 6.0 * mu * mu * var + 3.0 * var * var;
        assert!((m[4] / m4 - 1.0).abs() < 1e-12);
    }
}
