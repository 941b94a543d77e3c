//! Piecewise-linear frequency profiles with exact rational breakpoints.
//!
//! A profile is a real function of frequency that is linear between its
//! breakpoints and zero outside the span they cover. Breakpoints are stored as
//! arbitrary-precision rationals, so linear combinations and evaluations at
//! rational points are exact; partition identities can therefore be asserted
//! with tolerance zero rather than within an epsilon. A cached `f64` rendering
//! serves sampling onto grids.

use crate::exact::{rat_from_f64, rat_to_f64, Rat};
use num_traits::{Signed, Zero};
use std::io;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProfileError {
    #[error("a profile needs at least two breakpoints")]
    TooFewBreakpoints,
    #[error("breakpoint {index} does not increase strictly")]
    NotStrictlyIncreasing { index: usize },
    #[error("breakpoint coordinate is not finite")]
    NonFinite,
}

/// Compactly supported piecewise-linear function of frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyProfile {
    points: Vec<(Rat, Rat)>,
    points_f64: Vec<(f64, f64)>,
}

impl FrequencyProfile {
    pub fn from_breakpoints(points: Vec<(Rat, Rat)>) -> Result<Self, ProfileError> {
        if points.len() < 2 {
            return Err(ProfileError::TooFewBreakpoints);
        }
        for i in 1..points.len() {
            if points[i].0 <= points[i - 1].0 {
                return Err(ProfileError::NotStrictlyIncreasing { index: i });
            }
        }
        let points_f64 = points.iter().map(|(s, v)| (rat_to_f64(s), rat_to_f64(v))).collect();
        Ok(Self { points, points_f64 })
    }

    /// Convenience constructor from float coordinates (every finite float is
    /// an exact dyadic rational, so nothing is rounded here).
    pub fn from_f64_breakpoints(points: &[(f64, f64)]) -> Result<Self, ProfileError> {
        if points.iter().any(|(s, v)| !s.is_finite() || !v.is_finite()) {
            return Err(ProfileError::NonFinite);
        }
        Self::from_breakpoints(
            points.iter().map(|(s, v)| (rat_from_f64(*s), rat_from_f64(*v))).collect(),
        )
    }

    pub fn breakpoints(&self) -> &[(Rat, Rat)] {
        &self.points
    }

    pub fn breakpoints_f64(&self) -> &[(f64, f64)] {
        &self.points_f64
    }

    /// Exact value at a rational frequency.
    pub fn eval_exact(&self, s: &Rat) -> Rat {
        let n = self.points.len();
        if *s < self.points[0].0 || *s > self.points[n - 1].0 {
            return Rat::zero();
        }
        // Binary search for the segment containing s.
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if self.points[mid].0 <= *s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (s0, v0) = &self.points[lo];
        if s == s0 {
            return v0.clone();
        }
        let (s1, v1) = &self.points[hi];
        if s == s1 {
            return v1.clone();
        }
        v0 + (v1 - v0) * (s - s0) / (s1 - s0)
    }

    /// Nearest-double value at a float frequency.
    pub fn eval_f64(&self, s: f64) -> f64 {
        let pts = &self.points_f64;
        let n = pts.len();
        if s < pts[0].0 || s > pts[n - 1].0 {
            return 0.0;
        }
        let mut lo = 0;
        let mut hi = n - 1;
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if pts[mid].0 <= s {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let (s0, v0) = pts[lo];
        let (s1, v1) = pts[hi];
        if s == s0 {
            return v0;
        }
        v0 + (v1 - v0) * (s - s0) / (s1 - s0)
    }

    /// Exact linear combination on the merged breakpoint grid.
    ///
    /// Between merged breakpoints every term is linear, so the combination is
    /// again piecewise linear and the result represents it exactly.
    pub fn combine(terms: &[(Rat, &FrequencyProfile)]) -> Result<Self, ProfileError> {
        if terms.is_empty() {
            return Err(ProfileError::TooFewBreakpoints);
        }
        let mut grid: Vec<Rat> = terms
            .iter()
            .flat_map(|(_, p)| p.points.iter().map(|(s, _)| s.clone()))
            .collect();
        grid.sort();
        grid.dedup();
        let points = grid
            .into_iter()
            .map(|s| {
                let v = terms.iter().map(|(c, p)| c * p.eval_exact(&s)).sum();
                (s, v)
            })
            .collect();
        Self::from_breakpoints(points)
    }

    /// Largest |value| over the whole line. For a continuous profile with
    /// zero tails this is attained at a breakpoint.
    pub fn sup_abs(&self) -> Rat {
        self.points.iter().map(|(_, v)| v.abs()).max().unwrap_or_else(Rat::zero)
    }

    /// Radius of the tight support: the profile vanishes outside
    /// `[-r, r]` for the returned `r`.
    pub fn support_radius(&self) -> f64 {
        let nonzero: Vec<usize> = (0..self.points.len())
            .filter(|&i| !self.points[i].1.is_zero())
            .collect();
        let Some((&first, &last)) = nonzero.first().zip(nonzero.last()) else {
            return 0.0;
        };
        let lo = self.points_f64[first.saturating_sub(1)].0;
        let hi = self.points_f64[(last + 1).min(self.points.len() - 1)].0;
        lo.abs().max(hi.abs())
    }

    /// Writes `s,value` rows at the breakpoints, plus an optional uniform
    /// dense sampling of the span.
    pub fn write_csv<W: io::Write>(&self, w: &mut W, dense: Option<usize>) -> io::Result<()> {
        writeln!(w, "s,value")?;
        for (s, v) in &self.points_f64 {
            writeln!(w, "{s},{v}")?;
        }
        if let Some(n) = dense {
            let (lo, hi) = (self.points_f64[0].0, self.points_f64[self.points_f64.len() - 1].0);
            for k in 0..=n {
                let s = lo + (hi - lo) * k as f64 / n as f64;
                writeln!(w, "{s},{}", self.eval_f64(s))?;
            }
        }
        Ok(())
    }
}
