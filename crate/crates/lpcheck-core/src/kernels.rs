//! The dyadic kernel bank: frequency profiles and closed time-domain forms.
//!
//! The bank consists of the Fejer triangle of width parameter `a`, the dyadic
//! band profile for block `n` supported on `[2^(n-1), 2^(n+1)]`, the base
//! lowpass trapezoid on `[-1, 1]`, and the wide de la Vallee Poussin trapezoid.
//! Consecutive pieces telescope: the lowpass plus blocks `0..=N` sum to a ramp
//! that is exactly `1` on `[-1/2, 2^N]` and `0` left of `-1`, and blocks
//! `-M..=N` alone sum to `1` exactly on `[2^-M, 2^N]`.
//!
//! Time-domain closed forms are provided for the Fejer kernel and for the
//! blocks (a two-term modulation of the Fejer kernel). The tests validate both
//! against quadrature of the inverse transform with the convention
//! `f(x) = (1/2pi) Int fhat(s) e^{isx} ds`.

use crate::exact::{dyadic, pow2, rat_int, Rat};
use crate::profile::{FrequencyProfile, ProfileError};
use num_complex::Complex64;
use std::f64::consts::TAU;
use thiserror::Error;

/// Largest block magnitude the exact constructors accept; keeps `2^(n+1)`
/// comfortably inside both i64 mantissas and f64 rendering.
pub const MAX_BLOCK: i32 = 48;

#[derive(Debug, Error, PartialEq)]
pub enum KernelError {
    #[error("fejer width must be positive and finite, got {width}")]
    BadWidth { width: f64 },
    #[error("block index {n} outside supported range [-{MAX_BLOCK}, {MAX_BLOCK}]")]
    BlockOutOfRange { n: i32 },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Triangle profile: value `1 - |s|/a` for `|s| < a`, zero outside.
pub fn fejer(a: f64) -> Result<FrequencyProfile, KernelError> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(KernelError::BadWidth { width: a });
    }
    let a = crate::exact::rat_from_f64(a);
    Ok(FrequencyProfile::from_breakpoints(vec![
        (-a.clone(), Rat::from_integer(0.into())),
        (Rat::from_integer(0.into()), rat_int(1)),
        (a, rat_int(0)),
    ])?)
}

/// Band profile for dyadic block `n`: supported on `[2^(n-1), 2^(n+1)]`,
/// rising to `1` at `2^n`, passing through `1/2` at `3 * 2^(n-1)`.
pub fn dyadic_block(n: i32) -> Result<FrequencyProfile, KernelError> {
    if n.abs() > MAX_BLOCK {
        return Err(KernelError::BlockOutOfRange { n });
    }
    Ok(FrequencyProfile::from_breakpoints(vec![
        (pow2(n - 1), rat_int(0)),
        (pow2(n), rat_int(1)),
        (rat_int(3) * pow2(n - 1), dyadic(1, -1)),
        (pow2(n + 1), rat_int(0)),
    ])?)
}

/// Base lowpass trapezoid: `1` on `[-1/2, 1/2]`, supported on `[-1, 1]`.
pub fn base_lowpass() -> FrequencyProfile {
    FrequencyProfile::from_breakpoints(vec![
        (rat_int(-1), rat_int(0)),
        (dyadic(-1, -1), rat_int(1)),
        (dyadic(1, -1), rat_int(1)),
        (rat_int(1), rat_int(0)),
    ])
    .expect("static breakpoints are valid")
}

/// Wide trapezoid: `1` on `[-2^n, 2^n]`, supported on `[-2^(n+1), 2^(n+1)]`.
pub fn de_la_vallee_poussin(n: i32) -> Result<FrequencyProfile, KernelError> {
    if n < 0 || n > MAX_BLOCK - 1 {
        return Err(KernelError::BlockOutOfRange { n });
    }
    Ok(FrequencyProfile::from_breakpoints(vec![
        (-pow2(n + 1), rat_int(0)),
        (-pow2(n), rat_int(1)),
        (pow2(n), rat_int(1)),
        (pow2(n + 1), rat_int(0)),
    ])?)
}

/// Exact sum of the base lowpass and blocks `0..=nmax`.
pub fn one_sided_partition(nmax: i32) -> Result<FrequencyProfile, KernelError> {
    let lowpass = base_lowpass();
    let blocks: Vec<FrequencyProfile> =
        (0..=nmax).map(dyadic_block).collect::<Result<_, _>>()?;
    let mut terms: Vec<(Rat, &FrequencyProfile)> = vec![(rat_int(1), &lowpass)];
    terms.extend(blocks.iter().map(|b| (rat_int(1), b)));
    Ok(FrequencyProfile::combine(&terms)?)
}

/// Exact sum of blocks `-neg_depth..=nmax`.
pub fn two_sided_partition(neg_depth: i32, nmax: i32) -> Result<FrequencyProfile, KernelError> {
    if neg_depth < 0 {
        return Err(KernelError::BlockOutOfRange { n: -neg_depth });
    }
    let blocks: Vec<FrequencyProfile> =
        (-neg_depth..=nmax).map(dyadic_block).collect::<Result<_, _>>()?;
    let terms: Vec<(Rat, &FrequencyProfile)> =
        blocks.iter().map(|b| (rat_int(1), b)).collect();
    Ok(FrequencyProfile::combine(&terms)?)
}

/// Closed form of the Fejer kernel with frequency-domain width `a`:
/// `(a/2pi) * (sin(ax/2) / (ax/2))^2`, with the removable singularity at
/// `x = 0` filled by its limit `a/2pi`.
pub fn fejer_time(a: f64, x: f64) -> f64 {
    let u = 0.5 * a * x;
    let scale = a / TAU;
    if u.abs() < 1e-6 {
        // Second-order Taylor keeps full double precision through the
        // removable singularity.
        scale * (1.0 - u * u / 3.0)
    } else {
        let r = u.sin() / u;
        scale * r * r
    }
}

/// Closed form of the block-`n` kernel: the Fejer kernel of width `2^(n-1)`
/// modulated to the block center plus half of it modulated to `3 * 2^(n-1)`.
pub fn dyadic_block_time(n: i32, x: f64) -> Complex64 {
    let half_width = (n - 1) as f64;
    let a = half_width.exp2();
    let k = fejer_time(a, x);
    let center = (n as f64).exp2();
    let upper = 3.0 * a;
    Complex64::cis(center * x) * k + Complex64::cis(upper * x) * (0.5 * k)
}
