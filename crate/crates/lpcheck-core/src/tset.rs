//! Witness search for the shift property of subsets of `R^m`: a set `S` has
//! the property when every compact `K` inside `S` admits a small open ball
//! `W` with `W + K` still inside `S`.
//!
//! The search is one-sided by design. It scans candidate ball centers on a
//! lattice and certifies a witness by sampling the shifted ball; a failed
//! scan is reported as inconclusive at the given resolution, never as a
//! refutation, because the property quantifies over all neighborhoods.

use serde::Serialize;

/// Result of a witness scan: a certified ball, or an inconclusive outcome
/// recording how many candidate centers were examined.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum WitnessOutcome {
    Found { center: Vec<f64>, radius: f64 },
    Inconclusive { centers_tried: usize },
}

impl WitnessOutcome {
    pub fn found(&self) -> bool {
        matches!(self, WitnessOutcome::Found { .. })
    }
}

/// Sample offsets covering a ball of the given radius: the center, axis
/// points at the full and half radius, and the normalized corner directions
/// at both scales.
fn ball_stencil(dim: usize, radius: f64) -> Vec<Vec<f64>> {
    let mut offsets = vec![vec![0.0; dim]];
    for scale in [radius, radius / 2.0] {
        for axis in 0..dim {
            for sign in [1.0, -1.0] {
                let mut o = vec![0.0; dim];
                o[axis] = sign * scale;
                offsets.push(o);
            }
        }
        if dim > 1 {
            let corner = scale / (dim as f64).sqrt();
            for mask in 0..(1usize << dim) {
                let o = (0..dim)
                    .map(|i| if mask & (1 << i) != 0 { corner } else { -corner })
                    .collect();
                offsets.push(o);
            }
        }
    }
    offsets
}

/// Scans ball centers `w` with `|w| < epsilon` on a lattice of the given
/// spacing, radii `epsilon/4, epsilon/8, ...`, and returns the first ball
/// whose sampled shift keeps every point of `K` inside `S`.
///
/// Callers supply `K` already inside `S`; an empty `K` is witnessed
/// vacuously. Centers are visited lexicographically, first coordinate
/// slowest, and radii largest first, so the outcome is deterministic.
pub fn t_set_witness(
    s: impl Fn(&[f64]) -> bool,
    k: &[Vec<f64>],
    epsilon: f64,
    resolution: f64,
) -> WitnessOutcome {
    assert!(epsilon > 0.0 && resolution > 0.0, "epsilon and resolution must be positive");
    let Some(first) = k.first() else {
        return WitnessOutcome::Found { center: Vec::new(), radius: epsilon / 4.0 };
    };
    let dim = first.len();
    assert!(k.iter().all(|p| p.len() == dim), "sample points must share a dimension");

    let per_axis = (2.0 * epsilon / resolution).round() as usize + 1;
    let total = (per_axis as f64).powi(dim as i32);
    if total > 2_000_000.0 {
        return WitnessOutcome::Inconclusive { centers_tried: 0 };
    }
    let radii: Vec<f64> = (2..=7).map(|j| epsilon / f64::powi(2.0, j)).collect();

    let mut centers_tried = 0usize;
    let mut counter = vec![0usize; dim];
    let mut point = vec![0.0; dim];
    loop {
        for (slot, &c) in point.iter_mut().zip(&counter) {
            *slot = -epsilon + c as f64 * resolution;
        }
        let norm_sq: f64 = point.iter().map(|v| v * v).sum();
        if norm_sq < epsilon * epsilon {
            centers_tried += 1;
            for &radius in &radii {
                let stencil = ball_stencil(dim, radius);
                let mut probe = vec![0.0; dim];
                let ok = k.iter().all(|base| {
                    stencil.iter().all(|offset| {
                        for i in 0..dim {
                            probe[i] = base[i] + point[i] + offset[i];
                        }
                        s(&probe)
                    })
                });
                if ok {
                    return WitnessOutcome::Found { center: point, radius };
                }
            }
        }
        let mut axis = dim;
        loop {
            if axis == 0 {
                return WitnessOutcome::Inconclusive { centers_tried };
            }
            axis -= 1;
            counter[axis] += 1;
            if counter[axis] < per_axis {
                break;
            }
            counter[axis] = 0;
        }
    }
}
