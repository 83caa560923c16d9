//! Direct Fock-space summation of the thermal characteristic function.
//!
//! This is a test oracle for the closed-form partition-function ratio. It does
//! not share any code path with the production engine: plain `f64` phases and
//! its own Kahan summation.

use alloc::format;
use alloc::vec::Vec;

use crate::complex::ComplexValue;
use crate::constants::PhysicalConstants;
use crate::error::{Error, Result};

pub const MAX_TERMS: u64 = 100_000_000;
pub const MAX_MODES: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BruteForceSum {
    pub value: ComplexValue,
    /// Probability mass of the Fock states left out; bounds the truncation
    /// error of `value` in absolute terms.
    pub tail_mass: f64,
    pub terms: u64,
}

#[derive(Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }
}

struct Mode {
    q: f64,
    ground: f64,
    omega: f64,
}

struct Walk<'a> {
    modes: &'a [Mode],
    /// Product of ground-state weights of modes `i..`.
    ground_tail: Vec<f64>,
    cutoff: f64,
    delta_tau: f64,
    re: Kahan,
    im: Kahan,
    mass: Kahan,
    terms: u64,
}

impl Walk<'_> {
    fn visit(&mut self, depth: usize, weight: f64, angle: f64) -> Result<()> {
        if depth == self.modes.len() {
            self.terms += 1;
            if self.terms > MAX_TERMS {
                return Err(Error::Resource {
                    terms: self.terms,
                    limit: MAX_TERMS,
                });
            }
            self.re.add(weight * libm::cos(angle));
            self.im.add(-weight * libm::sin(angle));
            self.mass.add(weight);
            return Ok(());
        }
        let mode = &self.modes[depth];
        let rest = self.ground_tail[depth + 1];
        let mut w = weight * mode.ground;
        let mut n = 0u64;
        while w * rest >= self.cutoff {
            let a = angle + (n as f64 + 0.5) * mode.omega * self.delta_tau;
            self.visit(depth + 1, w, a)?;
            w *= mode.q;
            n += 1;
        }
        Ok(())
    }
}

/// `Σ_n p(n) exp(-i E(n) Δτ / ħ)` over Fock states whose Boltzmann weight is
/// at least `weight_cutoff`.
pub fn thermal_char_bruteforce(
    modes: &[f64],
    temperature: f64,
    delta_tau: f64,
    weight_cutoff: f64,
    constants: &PhysicalConstants,
) -> Result<BruteForceSum> {
    if modes.is_empty() || modes.len() > MAX_MODES {
        return Err(Error::Precondition(format!(
            "brute-force sum supports 1 to {MAX_MODES} modes, got {}",
            modes.len()
        )));
    }
    if !(weight_cutoff > 0.0 && weight_cutoff <= 1e-12) {
        return Err(Error::Precondition(format!(
            "weight cutoff must be in (0, 1e-12], got {weight_cutoff}"
        )));
    }
    if !(temperature > 0.0) || modes.iter().any(|w| !(*w > 0.0)) {
        return Err(Error::Precondition(
            "temperature and mode frequencies must be positive".into(),
        ));
    }
    let beta = 1.0 / (constants.k_b * temperature);
    let modes: Vec<Mode> = modes
        .iter()
        .map(|&omega| {
            let q = libm::exp(-beta * constants.hbar * omega);
            Mode {
                q,
                ground: 1.0 - q,
                omega,
            }
        })
        .collect();
    let mut ground_tail = alloc::vec![1.0; modes.len() + 1];
    for i in (0..modes.len()).rev() {
        ground_tail[i] = ground_tail[i + 1] * modes[i].ground;
    }
    let mut walk = Walk {
        modes: &modes,
        ground_tail,
        cutoff: weight_cutoff,
        delta_tau,
        re: Kahan::default(),
        im: Kahan::default(),
        mass: Kahan::default(),
        terms: 0,
    };
    walk.visit(0, 1.0, 0.0)?;
    Ok(BruteForceSum {
        value: ComplexValue::new(walk.re.sum, walk.im.sum),
        tail_mass: (1.0 - walk.mass.sum).max(0.0),
        terms: walk.terms,
    })
}
