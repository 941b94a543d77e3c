//! Complex measures on finite atom spaces: total variation, componentwise
//! Lebesgue decomposition with norm certificates, and the phased-permutation
//! isometries that preserve those verdicts.
//!
//! A measure is a complex mass per atom, and the total variation norm is the
//! plain sum of mass moduli. Singularity and absolute continuity reduce to
//! support bookkeeping, but the checks here certify them through the norm
//! identities they imply, so the verdicts stay meaningful under any map that
//! merely preserves norms.

use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum MeasureError {
    #[error("measure has {got} atoms, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("map is not a total-variation isometry: probe {probe} changed norm by {deviation}")]
    NotIsometric { probe: usize, deviation: f64 },
    #[error("atom index {index} out of range for {dim} atoms")]
    AtomOutOfRange { index: usize, dim: usize },
}

/// Complex measure on a finite space of atoms.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMeasure {
    masses: Vec<Complex64>,
}

impl FiniteMeasure {
    pub fn new(masses: Vec<Complex64>) -> Self {
        Self { masses }
    }

    pub fn zero(dim: usize) -> Self {
        Self { masses: vec![Complex64::zero(); dim] }
    }

    /// Unit mass on one atom.
    pub fn delta(dim: usize, index: usize) -> Result<Self, MeasureError> {
        if index >= dim {
            return Err(MeasureError::AtomOutOfRange { index, dim });
        }
        let mut m = Self::zero(dim);
        m.masses[index] = Complex64::new(1.0, 0.0);
        Ok(m)
    }

    pub fn random(dim: usize, rng: &mut impl Rng) -> Self {
        Self { masses: (0..dim).map(|_| crate::rng::complex_gaussian(rng)).collect() }
    }

    pub fn dim(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[Complex64] {
        &self.masses
    }

    pub fn masses_mut(&mut self) -> &mut [Complex64] {
        &mut self.masses
    }

    /// Total variation: the sum of atom mass moduli.
    pub fn tv_norm(&self) -> f64 {
        self.masses.iter().map(|m| m.norm()).sum()
    }

    /// Measure of a set of atoms.
    pub fn eval(&self, set: &[usize]) -> Complex64 {
        set.iter().map(|&i| self.masses[i]).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.masses[i] != Complex64::zero()).collect()
    }

    pub fn add(&self, other: &Self) -> Result<Self, MeasureError> {
        self.zip(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, MeasureError> {
        self.zip(other, |a, b| a - b)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { masses: self.masses.iter().map(|m| m * c).collect() }
    }

    fn zip(
        &self,
        other: &Self,
        op: impl Fn(Complex64, Complex64) -> Complex64,
    ) -> Result<Self, MeasureError> {
        if self.dim() != other.dim() {
            return Err(MeasureError::DimensionMismatch { got: other.dim(), want: self.dim() });
        }
        Ok(Self {
            masses: self.masses.iter().zip(&other.masses).map(|(&a, &b)| op(a, b)).collect(),
        })
    }

    pub fn to_vector(&self) -> nalgebra::DVector<Complex64> {
        nalgebra::DVector::from_column_slice(&self.masses)
    }

    pub fn from_vector(v: &nalgebra::DVector<Complex64>) -> Self {
        Self { masses: v.iter().copied().collect() }
    }
}

/// Applies a linear map (atoms to atoms) to a measure.
pub fn apply_matrix(map: &DMatrix<Complex64>, mu: &FiniteMeasure) -> Result<FiniteMeasure, MeasureError> {
    if map.ncols() != mu.dim() {
        return Err(MeasureError::DimensionMismatch { got: mu.dim(), want: map.ncols() });
    }
    Ok(FiniteMeasure::from_vector(&(map * mu.to_vector())))
}

/// Splits `mu` against the support of `sigma`: the first part carries the
/// atoms where `sigma` has mass, the second the rest. The parts recombine to
/// `mu` exactly, the first vanishes wherever `sigma` does, and the second
/// shares no atom with `sigma`.
pub fn lebesgue_decompose(
    mu: &FiniteMeasure,
    sigma: &FiniteMeasure,
) -> Result<(FiniteMeasure, FiniteMeasure), MeasureError> {
    if mu.dim() != sigma.dim() {
        return Err(MeasureError::DimensionMismatch { got: sigma.dim(), want: mu.dim() });
    }
    let mut part_ac = FiniteMeasure::zero(mu.dim());
    let mut part_sing = FiniteMeasure::zero(mu.dim());
    for i in 0..mu.dim() {
        if sigma.masses[i] != Complex64::zero() {
            part_ac.masses[i] = mu.masses[i];
        } else {
            part_sing.masses[i] = mu.masses[i];
        }
    }
    Ok((part_ac, part_sing))
}

/// Mutual singularity certified by the norm identities: both
/// `|mu + sigma|` and `|mu - sigma|` must equal `|mu| + |sigma|`.
pub fn mutually_singular(mu: &FiniteMeasure, sigma: &FiniteMeasure) -> Result<bool, MeasureError> {
    let target = mu.tv_norm() + sigma.tv_norm();
    let plus = mu.add(sigma)?.tv_norm();
    let minus = mu.sub(sigma)?.tv_norm();
    let tol = 1e-12 * target.max(1.0);
    Ok((plus - target).abs() <= tol && (minus - target).abs() <= tol)
}

/// Absolute continuity on atoms: `mu` vanishes wherever `sigma` does.
pub fn absolutely_continuous(
    mu: &FiniteMeasure,
    sigma: &FiniteMeasure,
) -> Result<bool, MeasureError> {
    if mu.dim() != sigma.dim() {
        return Err(MeasureError::DimensionMismatch { got: sigma.dim(), want: mu.dim() });
    }
    Ok((0..mu.dim())
        .all(|i| sigma.masses[i] != Complex64::zero() || mu.masses[i] == Complex64::zero()))
}

/// Builds the matrix of the isometry that sends atom `i` to atom `perm[i]`
/// with the phase `phases[i]`.
pub fn phased_permutation(perm: &[usize], phases: &[Complex64]) -> DMatrix<Complex64> {
    let d = perm.len();
    let mut m = DMatrix::zeros(d, d);
    for i in 0..d {
        m[(perm[i], i)] = phases[i];
    }
    m
}

/// Random phased permutation on `dim` atoms.
pub fn random_phased_permutation(dim: usize, rng: &mut impl Rng) -> DMatrix<Complex64> {
    let mut perm: Vec<usize> = (0..dim).collect();
    perm.shuffle(rng);
    let phases: Vec<Complex64> = (0..dim).map(|_| crate::rng::unit_phase(rng)).collect();
    phased_permutation(&perm, &phases)
}

/// Checks that a map preserves total variation on every atom and on random
/// probe measures; the failing probe index is reported otherwise.
pub fn verify_isometry(
    map: &DMatrix<Complex64>,
    probes: usize,
    rng: &mut impl Rng,
) -> Result<(), MeasureError> {
    let d = map.ncols();
    let mut candidates = Vec::new();
    for i in 0..d {
        candidates.push(FiniteMeasure::delta(d, i).expect("index in range"));
    }
    for _ in 0..probes {
        candidates.push(FiniteMeasure::random(d, rng));
    }
    for (probe, mu) in candidates.iter().enumerate() {
        let image = apply_matrix(map, mu)?;
        let deviation = (image.tv_norm() - mu.tv_norm()).abs();
        if deviation > 1e-9 * mu.tv_norm().max(1.0) {
            return Err(MeasureError::NotIsometric { probe, deviation });
        }
    }
    Ok(())
}

/// Relation verdicts for a pair of measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RelationVerdicts {
    pub mutually_singular: bool,
    pub absolutely_continuous: bool,
}

pub fn relation_verdicts(
    mu: &FiniteMeasure,
    sigma: &FiniteMeasure,
) -> Result<RelationVerdicts, MeasureError> {
    Ok(RelationVerdicts {
        mutually_singular: mutually_singular(mu, sigma)?,
        absolutely_continuous: absolutely_continuous(mu, sigma)?,
    })
}

/// Outcome of transporting a pair of measures through an isometry.
#[derive(Debug, Clone, Serialize)]
pub struct IsometryReport {
    pub before: RelationVerdicts,
    pub after: RelationVerdicts,
    pub preserved: bool,
}

/// Verifies that singularity and absolute-continuity verdicts survive a
/// total-variation isometry; non-isometric maps are rejected up front.
pub fn isometry_preservation_check(
    map: &DMatrix<Complex64>,
    mu: &FiniteMeasure,
    sigma: &FiniteMeasure,
    rng: &mut impl Rng,
) -> Result<IsometryReport, MeasureError> {
    verify_isometry(map, 8, rng)?;
    let before = relation_verdicts(mu, sigma)?;
    let after = relation_verdicts(&apply_matrix(map, mu)?, &apply_matrix(map, sigma)?)?;
    Ok(IsometryReport { before, after, preserved: before == after })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn measure(vals: &[(f64, f64)]) -> FiniteMeasure {
        FiniteMeasure::new(vals.iter().map(|&(re, im)| Complex64::new(re, im)).collect())
    }

    #[test]
    fn total_variation_sums_mass_moduli() {
        let mu = measure(&[(3.0, 4.0), (0.0, -1.0), (0.0, 0.0)]);
        assert_eq!(mu.tv_norm(), 6.0);
        assert_eq!(mu.eval(&[0, 2]), Complex64::new(3.0, 4.0));
        assert_eq!(mu.support(), vec![0, 1]);
    }

    #[test]
    fn decomposition_splits_on_the_reference_support() {
        let mu = measure(&[(1.0, 0.0), (2.0, 0.0)]);
        let sigma = measure(&[(0.0, 0.0), (3.0, 0.0)]);
        let (ac, sing) = lebesgue_decompose(&mu, &sigma).unwrap();
        assert_eq!(ac.masses(), &[Complex64::zero(), Complex64::new(2.0, 0.0)]);
        assert_eq!(sing.masses(), &[Complex64::new(1.0, 0.0), Complex64::zero()]);
        let back = ac.add(&sing).unwrap();
        assert_eq!(back.masses(), mu.masses());
        assert!(absolutely_continuous(&ac, &sigma).unwrap());
        assert!(mutually_singular(&sing, &sigma).unwrap());
    }

    #[test]
    fn full_support_reference_leaves_no_singular_part() {
        let mut rng = crate::rng::seeded(3);
        let mu = FiniteMeasure::random(5, &mut rng);
        let mut sigma = FiniteMeasure::random(5, &mut rng);
        for m in sigma.masses_mut() {
            if m.norm() < 0.05 {
                *m = Complex64::new(1.0, 0.0);
            }
        }
        let (ac, sing) = lebesgue_decompose(&mu, &sigma).unwrap();
        assert_eq!(sing.tv_norm(), 0.0);
        assert_eq!(ac.masses(), mu.masses());
    }

    #[test]
    fn norm_certificates_detect_overlap() {
        let mu = measure(&[(1.0, 0.0), (0.0, 0.0)]);
        let disjoint = measure(&[(0.0, 0.0), (0.0, 2.0)]);
        let overlapping = measure(&[(0.5, 0.5), (0.0, 0.0)]);
        assert!(mutually_singular(&mu, &disjoint).unwrap());
        assert!(!mutually_singular(&mu, &overlapping).unwrap());
        assert!(!absolutely_continuous(&mu, &disjoint).unwrap());
        assert!(absolutely_continuous(&mu, &mu).unwrap());
    }

    #[test]
    fn phased_permutations_pass_the_isometry_probe() {
        let mut rng = crate::rng::seeded(11);
        let map = random_phased_permutation(6, &mut rng);
        verify_isometry(&map, 8, &mut rng).unwrap();
        let mu = FiniteMeasure::random(6, &mut rng);
        let image = apply_matrix(&map, &mu).unwrap();
        assert!((image.tv_norm() - mu.tv_norm()).abs() <= 1e-12 * mu.tv_norm());
    }

    #[test]
    fn scaling_maps_fail_the_isometry_probe() {
        let mut rng = crate::rng::seeded(12);
        let mut map = DMatrix::identity(2, 2).map(|x: f64| Complex64::new(x, 0.0));
        map[(0, 0)] = Complex64::new(2.0, 0.0);
        let err = verify_isometry(&map, 4, &mut rng).unwrap_err();
        assert!(matches!(err, MeasureError::NotIsometric { .. }));
    }

    #[test]
    fn verdicts_survive_phased_permutations() {
        let mut rng = crate::rng::seeded(13);
        for trial in 0..25 {
            let d = 6;
            let mut mu = FiniteMeasure::random(d, &mut rng);
            let mut sigma = FiniteMeasure::random(d, &mut rng);
            // Vary the overlap structure across trials.
            match trial % 3 {
                0 => {
                    for i in 0..3 {
                        mu.masses_mut()[i] = Complex64::zero();
                        sigma.masses_mut()[i + 3] = Complex64::zero();
                    }
                }
                1 => {
                    for i in 0..3 {
                        sigma.masses_mut()[i] = Complex64::zero();
                    }
                }
                _ => {}
            }
            let map = random_phased_permutation(d, &mut rng);
            let report = isometry_preservation_check(&map, &mu, &sigma, &mut rng).unwrap();
            assert!(report.preserved, "trial {trial}: {report:?}");
        }
    }

    #[test]
    fn identity_is_trivially_verdict_preserving() {
        let mut rng = crate::rng::seeded(14);
        let map = DMatrix::identity(4, 4).map(|x: f64| Complex64::new(x, 0.0));
        let mu = FiniteMeasure::random(4, &mut rng);
        let sigma = FiniteMeasure::random(4, &mut rng);
        let report = isometry_preservation_check(&map, &mu, &sigma, &mut rng).unwrap();
        assert!(report.preserved);
        assert_eq!(report.before, report.after);
    }
}
