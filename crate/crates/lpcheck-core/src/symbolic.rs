//! Symbolic model of the co-countable sigma algebra on the line: sets are
//! countable lists or complements of countable lists, and measures combine a
//! translation-invariant diffuse unit with finitely many atoms.
//!
//! No grid can carry this algebra faithfully, so evaluation is exact set
//! bookkeeping. The point of the model is a nonzero measure, diffuse unit
//! minus a unit atom, whose orbit trajectories vanish off a finite set of
//! shifts for every measurable set. Its orbit supremum therefore stays at
//! zero while the norm is 2, so the translation representation on this
//! algebra is not sup path attaining.

use num_complex::Complex64;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SymbolicError {
    #[error("symbolic set contains the non-finite point {x}")]
    NonFinitePoint { x: f64 },
}

/// A measurable set of the co-countable algebra: an explicit countable list
/// of points, or the complement of one.
#[derive(Debug, Clone, PartialEq)]
pub enum SymbolicSet {
    Countable(Vec<f64>),
    CoCountable(Vec<f64>),
}

impl SymbolicSet {
    fn points(&self) -> &[f64] {
        match self {
            SymbolicSet::Countable(p) | SymbolicSet::CoCountable(p) => p,
        }
    }

    pub fn validate(&self) -> Result<(), SymbolicError> {
        match self.points().iter().find(|x| !x.is_finite()) {
            Some(&x) => Err(SymbolicError::NonFinitePoint { x }),
            None => Ok(()),
        }
    }

    pub fn contains(&self, x: f64) -> bool {
        match self {
            SymbolicSet::Countable(p) => p.contains(&x),
            SymbolicSet::CoCountable(p) => !p.contains(&x),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            SymbolicSet::Countable(p) => format!("countable set of {} points", p.len()),
            SymbolicSet::CoCountable(p) => {
                format!("complement of {} points", p.len())
            }
        }
    }
}

/// Measure on the co-countable algebra: `diffuse * nu + sum of atoms`, where
/// `nu` assigns 1 to every co-countable set and 0 to every countable set.
/// The diffuse unit is singular to every atom, so the total variation is the
/// plain sum of the coefficient magnitudes.
#[derive(Debug, Clone, PartialEq)]
pub struct CoCountMeasure {
    diffuse: Complex64,
    atoms: Vec<(f64, Complex64)>,
}

impl CoCountMeasure {
    pub fn new(diffuse: Complex64, atoms: &[(f64, Complex64)]) -> Self {
        let mut merged: Vec<(f64, Complex64)> = Vec::new();
        for &(p, m) in atoms {
            match merged.iter_mut().find(|(q, _)| *q == p) {
                Some((_, acc)) => *acc += m,
                None => merged.push((p, m)),
            }
        }
        merged.retain(|&(_, m)| m != Complex64::zero());
        Self { diffuse, atoms: merged }
    }

    /// The canonical witness: diffuse unit minus a unit atom at the origin.
    pub fn diffuse_minus_origin_atom() -> Self {
        Self::new(Complex64::new(1.0, 0.0), &[(0.0, Complex64::new(-1.0, 0.0))])
    }

    pub fn diffuse(&self) -> Complex64 {
        self.diffuse
    }

    pub fn atoms(&self) -> &[(f64, Complex64)] {
        &self.atoms
    }

    pub fn tv_norm(&self) -> f64 {
        self.diffuse.norm() + self.atoms.iter().map(|(_, m)| m.norm()).sum::<f64>()
    }

    /// `T_t mu(A) = mu(A + t)`: the diffuse part is translation invariant
    /// and an atom at `p` moves to `p - t`.
    pub fn translate(&self, t: f64) -> Self {
        Self {
            diffuse: self.diffuse,
            atoms: self.atoms.iter().map(|&(p, m)| (p - t, m)).collect(),
        }
    }

    pub fn eval(&self, set: &SymbolicSet) -> Complex64 {
        let atom_part: Complex64 =
            self.atoms.iter().filter(|&&(p, _)| set.contains(p)).map(|&(_, m)| m).sum();
        match set {
            SymbolicSet::Countable(_) => atom_part,
            SymbolicSet::CoCountable(_) => self.diffuse + atom_part,
        }
    }
}

/// Trajectory census for one symbolic set.
#[derive(Debug, Clone, Serialize)]
pub struct SetTrajectoryReport {
    pub set: String,
    pub nonzero_samples: usize,
    pub phased_nonzero_samples: usize,
    pub exceptional_bound: usize,
    pub bound_is_finite: bool,
    pub within_bound: bool,
}

/// Outcome of the co-countable orbit demonstration.
#[derive(Debug, Clone, Serialize)]
pub struct CocountableReport {
    pub norm: f64,
    pub phase_alpha: f64,
    pub sets: Vec<SetTrajectoryReport>,
    pub certified: bool,
    pub conclusion: String,
}

/// How many shifts `t` can make `T_t mu(A)` nonzero: for a countable set,
/// only shifts aligning an atom with a listed point; for a co-countable set
/// whose diffuse and atom masses cancel in total, only shifts parking an
/// atom on an excluded point. Without that cancellation the trajectory is
/// nonzero off a countable set and the bound is infinite.
fn exceptional_bound(mu: &CoCountMeasure, set: &SymbolicSet) -> (usize, bool) {
    let points = set.points().len();
    match set {
        SymbolicSet::Countable(_) => (mu.atoms().len() * points, true),
        SymbolicSet::CoCountable(_) => {
            let total = mu.diffuse() + mu.atoms().iter().map(|&(_, m)| m).sum::<Complex64>();
            if total.norm() <= 1e-15 {
                (mu.atoms().len() * points, true)
            } else {
                (usize::MAX, false)
            }
        }
    }
}

/// Evaluates the orbit trajectories `t -> exp(i alpha t) * T_t mu(A)` of a
/// symbolic measure over the sample shifts, counts the nonzero values per
/// set against the finite exceptional bound, and certifies the conclusion:
/// a nonzero measure whose trajectories vanish off finite sets defeats any
/// norm bound on the orbit supremum, so the action is not sup path
/// attaining. The phase variant must agree since a unit phase never changes
/// whether a value is zero.
pub fn cocountable_demo(
    mu: &CoCountMeasure,
    sets: &[SymbolicSet],
    t_samples: &[f64],
    alpha: f64,
) -> Result<CocountableReport, SymbolicError> {
    for set in sets {
        set.validate()?;
    }
    let mut reports = Vec::with_capacity(sets.len());
    let mut certified = !sets.is_empty() && mu.tv_norm() > 0.0;
    for set in sets {
        let (bound, finite) = exceptional_bound(mu, set);
        let mut nonzero = 0usize;
        let mut phased_nonzero = 0usize;
        for &t in t_samples {
            let value = mu.translate(t).eval(set);
            if value != Complex64::zero() {
                nonzero += 1;
            }
            if Complex64::cis(alpha * t) * value != Complex64::zero() {
                phased_nonzero += 1;
            }
        }
        let within = finite && nonzero <= bound && phased_nonzero <= bound;
        certified &= within;
        reports.push(SetTrajectoryReport {
            set: set.describe(),
            nonzero_samples: nonzero,
            phased_nonzero_samples: phased_nonzero,
            exceptional_bound: if finite { bound } else { t_samples.len() },
            bound_is_finite: finite,
            within_bound: within,
        });
    }
    let conclusion = if certified {
        format!(
            "measure of norm {} has orbit trajectories vanishing off finite sets, \
             so the action is not sup path attaining",
            mu.tv_norm()
        )
    } else {
        "trajectories do not vanish off finite sets; no conclusion".to_string()
    };
    Ok(CocountableReport {
        norm: mu.tv_norm(),
        phase_alpha: alpha,
        sets: reports,
        certified,
        conclusion,
    })
}
