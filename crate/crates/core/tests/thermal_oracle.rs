//! Thermal clocks against explicit sums over Fock states.

use qclock_core::visibility::thermal_char_bruteforce;
use qclock_core::{
    characteristic_function, energy_moments, visibility_thermal, Error, InternalState,
    PhysicalConstants, ThermalHarmonicState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Moments of `Σ (n_i + ½)ħω_i` summed over occupation numbers until the
/// Boltzmann weight falls below 1e-15.
fn fock_moments(modes: &[f64], t: f64, order: usize, c: &PhysicalConstants) -> Vec<f64> {
    let beta = 1.0 / (c.k_b * t);
    let mut per_mode: Vec<Vec<(f64, f64)>> = Vec::new();
    for &w in modes {
        let x = beta * c.hbar * w;
        let z = 1.0 / (1.0 - (-x).exp());
        let mut levels = Vec::new();
        for n in 0.. {
            let p = (-x * n as f64).exp() / z;
            if p < 1e-15 * 1e-3 {
                break;
            }
            levels.push((p, (n as f64 + 0.5) * c.hbar * w));
        }
        per_mode.push(levels);
    }
    let mut m = vec![0.0; order + 1];
    let mut stack = vec![(0usize, 1.0f64, 0.0f64)];
    while let Some((i, p, e)) = stack.pop() {
        if i == per_mode.len() {
            let mut pow = 1.0;
            for slot in m.iter_mut() {
                *slot += p * pow;
                pow *= e;
            }
            continue;
        }
        for &(q, de) in &per_mode[i] {
            if p * q < 1e-15 * 1e-6 {
                break;
            }
            stack.push((i + 1, p * q, e + de));
        }
    }
    m
}

#[test]
fn thermal_moments_match_fock_sums() {
    let c = PhysicalConstants::si();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let n = rng.gen_range(1..=3);
        let modes: Vec<f64> = (0..n).map(|_| rng.gen_range(2e12..5e13)).collect();
        let t = rng.gen_range(20.0..400.0);
        let state = InternalState::Thermal(ThermalHarmonicState::new(modes.clone(), t).unwrap());
        let got = energy_moments(&state, 6, &c).unwrap();
        let want = fock_moments(&modes, t, 6, &c);
        for k in 0..=6 {
            let rel = ((got[k] - want[k]) / want[k]).abs();
            assert!(
                rel <= 1e-9,
                "k={k} modes={modes:?} T={t}: {} vs {}",
                got[k],
                want[k]
            );
        }
    }
}

#[test]
fn closed_form_matches_fock_oracle() {
    let c = PhysicalConstants::si();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..50 {
        let n = rng.gen_range(1..=3);
        let modes: Vec<f64> = (0..n).map(|_| rng.gen_range(5e12..5e13)).collect();
        let t = rng.gen_range(10.0..300.0);
        let dt = rng.gen_range(0.0..2e-12);
        let state = InternalState::Thermal(ThermalHarmonicState::new(modes.clone(), t).unwrap());
        let chi = characteristic_function(&state, dt, &c);
        let oracle = thermal_char_bruteforce(&modes, t, dt, 1e-16, &c).unwrap();
        let v = visibility_thermal(&modes, t, dt, &c).unwrap();
        let vo = oracle.value.modulus();
        assert!(
            ((v - vo) / vo).abs() <= 1e-9,
            "{modes:?} T={t} dt={dt}: {v} vs {vo}"
        );
        assert!(
            (chi.re - oracle.value.re).abs() <= 1e-9 && (chi.im - oracle.value.im).abs() <= 1e-9
        );
    }
}

#[test]
fn oracle_refuses_oversized_sums() {
    let c = PhysicalConstants::si();
    let r = thermal_char_bruteforce(&[1e9, 1e9, 1e9], 300.0, 1e-12, 1e-16, &c);
    assert!(matches!(r, Err(Error::Resource { .. })));
    assert!(thermal_char_bruteforce(&[1e13; 4], 300.0, 0.0, 1e-16, &c).is_err());
}
