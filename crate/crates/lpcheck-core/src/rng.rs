//! Seeded random sources shared by the trial batteries.
//!
//! Every randomized check threads an explicit `u64` seed through a ChaCha
//! stream so reports are reproducible byte for byte.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic generator for a given seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal sample via Box-Muller.
pub fn gaussian(rng: &mut impl Rng) -> f64 {
    let u1: f64 = 1.0 - rng.gen::<f64>();
    let u2: f64 = rng.gen();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Complex sample with independent standard normal parts.
pub fn complex_gaussian(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng))
}

/// Uniform point on the unit circle.
pub fn unit_phase(rng: &mut impl Rng) -> Complex64 {
    Complex64::cis(std::f64::consts::TAU * rng.gen::<f64>())
}
