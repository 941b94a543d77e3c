//! Complex signals sampled on uniform grids, with transforms that track the
//! continuous convention `fhat(s) = Int f(x) e^{-isx} dx`.
//!
//! A signal carries its origin, spacing, and samples. Its discrete transform
//! lives on the bins `s_k = 2 pi k / (L dx)` (`k` signed the usual FFT way)
//! and is weighted by `dx`, so it approximates the continuous transform of a
//! signal supported inside the window. Convolution zero-pads to the full
//! linear-convolution length before going through the FFT, so no cyclic
//! wraparound ever contaminates results. Anything sampled from a frequency
//! profile insists on the profile fitting under the Nyquist frequency.

use crate::profile::FrequencyProfile;
use num_complex::Complex64;
use num_traits::Zero;
use rustfft::FftPlanner;
use std::f64::consts::{PI, TAU};
use std::io;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GridError {
    #[error("grid spacing must be positive and finite, got {dx}")]
    BadSpacing { dx: f64 },
    #[error("grid must contain at least two samples")]
    TooShort,
    #[error("sample vector has length {got}, grid expects {want}")]
    LengthMismatch { got: usize, want: usize },
    #[error("grid spacings differ: {a} vs {b}")]
    SpacingMismatch { a: f64, b: f64 },
    #[error("grids are not aligned (origin or length differ)")]
    GridMismatch,
    #[error("profile support radius {radius} reaches the grid Nyquist frequency {nyquist}")]
    Aliasing { radius: f64, nyquist: f64 },
    #[error("band [{lo}, {hi}] holds no positive bins below the Nyquist frequency {nyquist}")]
    EmptyBand { lo: f64, hi: f64, nyquist: f64 },
    #[error("point {x} is not a grid point (spacing {dx})")]
    OffGrid { x: f64, dx: f64 },
}

/// Geometry of a uniform grid: `x_j = origin + j * dx` for `j < len`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec {
    pub origin: f64,
    pub dx: f64,
    pub len: usize,
}

impl GridSpec {
    pub fn new(origin: f64, dx: f64, len: usize) -> Result<Self, GridError> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(GridError::BadSpacing { dx });
        }
        if len < 2 {
            return Err(GridError::TooShort);
        }
        Ok(Self { origin, dx, len })
    }

    /// Grid covering `[-half_width, half_width)` with the given spacing.
    pub fn symmetric(half_width: f64, dx: f64) -> Result<Self, GridError> {
        if !(dx > 0.0) || !dx.is_finite() {
            return Err(GridError::BadSpacing { dx });
        }
        let len = (2.0 * half_width / dx).round() as usize;
        Self::new(-half_width, dx, len)
    }

    pub fn x(&self, j: usize) -> f64 {
        self.origin + j as f64 * self.dx
    }

    /// Signed frequency of FFT bin `k`.
    pub fn freq(&self, k: usize) -> f64 {
        let half = (self.len - 1) / 2;
        let signed = if k <= half { k as i64 } else { k as i64 - self.len as i64 };
        TAU * signed as f64 / (self.len as f64 * self.dx)
    }

    pub fn nyquist(&self) -> f64 {
        PI / self.dx
    }

    /// Spacing between adjacent frequency bins.
    pub fn freq_resolution(&self) -> f64 {
        TAU / (self.len as f64 * self.dx)
    }

    /// Index of the grid point equal to `x`, within a small snap tolerance.
    pub fn index_of_x(&self, x: f64) -> Result<usize, GridError> {
        let raw = (x - self.origin) / self.dx;
        let j = raw.round();
        if (raw - j).abs() > 1e-6 || j < 0.0 || j >= self.len as f64 {
            return Err(GridError::OffGrid { x, dx: self.dx });
        }
        Ok(j as usize)
    }
}

/// Sampled complex signal on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridSignal {
    spec: GridSpec,
    samples: Vec<Complex64>,
}

impl GridSignal {
    pub fn zero(spec: GridSpec) -> Self {
        let samples = vec![Complex64::zero(); spec.len];
        Self { spec, samples }
    }

    pub fn from_samples(spec: GridSpec, samples: Vec<Complex64>) -> Result<Self, GridError> {
        if samples.len() != spec.len {
            return Err(GridError::LengthMismatch { got: samples.len(), want: spec.len });
        }
        Ok(Self { spec, samples })
    }

    pub fn from_fn(spec: GridSpec, f: impl Fn(f64) -> Complex64) -> Self {
        let samples = (0..spec.len).map(|j| f(spec.x(j))).collect();
        Self { spec, samples }
    }

    /// Discrete unit point mass: a single sample of height `1/dx`.
    pub fn delta(spec: GridSpec, index: usize) -> Self {
        let mut sig = Self::zero(spec);
        sig.samples[index] = Complex64::new(1.0 / sig.spec.dx, 0.0);
        sig
    }

    pub fn spec(&self) -> &GridSpec {
        &self.spec
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn samples_mut(&mut self) -> &mut [Complex64] {
        &mut self.samples
    }

    /// `dx * sum |f|`, the grid rendering of the L1 norm.
    pub fn l1_norm(&self) -> f64 {
        let sum: f64 = self.samples.iter().map(|v| (v.re * v.re + v.im * v.im).sqrt()).sum();
        sum * self.spec.dx
    }

    pub fn sup_norm(&self) -> f64 {
        self.samples.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self {
            spec: self.spec.clone(),
            samples: self.samples.iter().map(|v| v * c).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GridError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, GridError> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(
        &self,
        other: &Self,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self, GridError> {
        if self.spec != other.spec {
            return Err(GridError::GridMismatch);
        }
        let samples =
            self.samples.iter().zip(&other.samples).map(|(&a, &b)| op(a, b)).collect();
        Ok(Self { spec: self.spec.clone(), samples })
    }

    /// Transform values on the grid bins: `F(s_k) = dx sum_j f(x_j) e^{-i s_k x_j}`.
    pub fn spectrum(&self) -> Vec<Complex64> {
        let mut vals = self.samples.clone();
        fft_in_place(&mut vals, false);
        for (k, v) in vals.iter_mut().enumerate() {
            *v *= self.spec.dx * Complex64::cis(-self.spec.freq(k) * self.spec.origin);
        }
        vals
    }

    /// Inverse of [`GridSignal::spectrum`]: builds the signal whose transform
    /// takes the given values on the bins.
    pub fn from_spectrum(spec: GridSpec, bins: &[Complex64]) -> Result<Self, GridError> {
        if bins.len() != spec.len {
            return Err(GridError::LengthMismatch { got: bins.len(), want: spec.len });
        }
        let mut vals: Vec<Complex64> = bins
            .iter()
            .enumerate()
            .map(|(k, v)| v * Complex64::cis(spec.freq(k) * spec.origin))
            .collect();
        fft_in_place(&mut vals, true);
        let scale = 1.0 / (spec.len as f64 * spec.dx);
        for v in &mut vals {
            *v *= scale;
        }
        Ok(Self { spec, samples: vals })
    }

    /// Linear convolution `(f * g)(x) ~ dx * sum f(x_i) g(x - x_i)`, computed
    /// in the frequency domain after zero-padding past the combined support.
    pub fn convolve(&self, other: &Self) -> Result<Self, GridError> {
        let dx = self.spec.dx;
        if (dx - other.spec.dx).abs() > 1e-12 * dx {
            return Err(GridError::SpacingMismatch { a: dx, b: other.spec.dx });
        }
        let out_len = self.spec.len + other.spec.len - 1;
        let padded = out_len.next_power_of_two();
        let mut a = self.samples.clone();
        a.resize(padded, Complex64::zero());
        let mut b = other.samples.clone();
        b.resize(padded, Complex64::zero());
        fft_in_place(&mut a, false);
        fft_in_place(&mut b, false);
        for (x, y) in a.iter_mut().zip(&b) {
            *x *= y;
        }
        fft_in_place(&mut a, true);
        let scale = dx / padded as f64;
        let samples = a[..out_len].iter().map(|v| v * scale).collect();
        let spec = GridSpec::new(self.spec.origin + other.spec.origin, dx, out_len)?;
        Ok(Self { spec, samples })
    }

    /// Applies a frequency profile as a multiplier on the grid bins.
    pub fn multiply_profile(&self, p: &FrequencyProfile) -> Result<Self, GridError> {
        let radius = p.support_radius();
        let nyquist = self.spec.nyquist();
        if radius >= nyquist {
            return Err(GridError::Aliasing { radius, nyquist });
        }
        let mut vals = self.samples.clone();
        fft_in_place(&mut vals, false);
        for (k, v) in vals.iter_mut().enumerate() {
            *v *= p.eval_f64(self.spec.freq(k));
        }
        fft_in_place(&mut vals, true);
        let scale = 1.0 / self.spec.len as f64;
        for v in &mut vals {
            *v *= scale;
        }
        Ok(Self { spec: self.spec.clone(), samples: vals })
    }

    /// Zeroes every bin whose frequency fails the predicate.
    pub fn spectral_projection(&self, keep: impl Fn(f64) -> bool) -> Self {
        let mut vals = self.samples.clone();
        fft_in_place(&mut vals, false);
        for (k, v) in vals.iter_mut().enumerate() {
            if !keep(self.spec.freq(k)) {
                *v = Complex64::zero();
            }
        }
        fft_in_place(&mut vals, true);
        let scale = 1.0 / self.spec.len as f64;
        for v in &mut vals {
            *v *= scale;
        }
        Self { spec: self.spec.clone(), samples: vals }
    }

    /// Multiplies the samples by a raised-cosine taper that vanishes at both
    /// window edges; used before transforming trajectories so the finite
    /// window does not leak energy across the spectrum.
    pub fn apply_hann_taper(&mut self) {
        let n = self.samples.len();
        for (j, v) in self.samples.iter_mut().enumerate() {
            let w = 0.5 - 0.5 * (TAU * j as f64 / n as f64).cos();
            *v *= w;
        }
    }

    /// Writes `x,re,im` rows.
    pub fn write_csv<W: io::Write>(&self, w: &mut W) -> io::Result<()> {
        writeln!(w, "x,re,im")?;
        for (j, v) in self.samples.iter().enumerate() {
            writeln!(w, "{},{},{}", self.spec.x(j), v.re, v.im)?;
        }
        Ok(())
    }
}

/// Builds the grid signal whose transform equals the profile on every bin.
pub fn sample_profile_kernel(
    p: &FrequencyProfile,
    spec: &GridSpec,
) -> Result<GridSignal, GridError> {
    let radius = p.support_radius();
    let nyquist = spec.nyquist();
    if radius >= nyquist {
        return Err(GridError::Aliasing { radius, nyquist });
    }
    let bins: Vec<Complex64> =
        (0..spec.len).map(|k| Complex64::new(p.eval_f64(spec.freq(k)), 0.0)).collect();
    GridSignal::from_spectrum(spec.clone(), &bins)
}

/// Random band-limited test signal with unit L1 norm.
///
/// The transform is supported on the bins inside `band` (strictly positive
/// frequencies), shaped by a raised-cosine envelope and randomized by
/// independent unit phases, so the signal has no energy at or below zero
/// frequency by construction.
pub fn make_h1_test(
    seed: u64,
    band: (f64, f64),
    spec: &GridSpec,
) -> Result<GridSignal, GridError> {
    let (lo, hi) = band;
    let nyquist = spec.nyquist();
    if !(lo > 0.0) || !(hi > lo) || hi >= nyquist {
        return Err(GridError::EmptyBand { lo, hi, nyquist });
    }
    let mut rng = crate::rng::seeded(seed);
    let mut bins = vec![Complex64::zero(); spec.len];
    let mut hit = false;
    for (k, bin) in bins.iter_mut().enumerate() {
        let s = spec.freq(k);
        if s > lo && s < hi {
            let t = (s - lo) / (hi - lo);
            let envelope = (PI * t).sin().powi(2);
            *bin = crate::rng::unit_phase(&mut rng) * envelope;
            hit = true;
        }
    }
    if !hit {
        return Err(GridError::EmptyBand { lo, hi, nyquist });
    }
    let sig = GridSignal::from_spectrum(spec.clone(), &bins)?;
    let norm = sig.l1_norm();
    Ok(sig.scale(Complex64::new(1.0 / norm, 0.0)))
}

fn fft_in_place(vals: &mut [Complex64], inverse: bool) {
    let mut planner = FftPlanner::new();
    let fft = if inverse {
        planner.plan_fft_inverse(vals.len())
    } else {
        planner.plan_fft_forward(vals.len())
    };
    fft.process(vals);
}
