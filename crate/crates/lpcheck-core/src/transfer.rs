//! Representations of finite abelian groups on finite measure spaces and the
//! transferred convolution they induce.
//!
//! A representation assigns each group element an invertible operator on the
//! atom-mass vectors, built from one generator per cyclic factor. The
//! transferred convolution pushes a group measure through the orbit of a
//! target measure, and the checks here verify its algebra, its spectra
//! through two independent routes, the norm constants, and the contraction
//! bound that transfers from a dual subspace onto the orbit.

use crate::group::{FiniteAbelianGroup, GroupError, GroupFunction};
use crate::measure::FiniteMeasure;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_traits::Zero;
use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TransferError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("generator {index} is not a square matrix of the representation dimension")]
    NotSquare { index: usize },
    #[error("generator {index} is singular")]
    Singular { index: usize },
    #[error("generator {index} does not have the order of its cyclic factor (defect {defect})")]
    WrongOrder { index: usize, defect: f64 },
    #[error("generators {i} and {j} do not commute (defect {defect})")]
    NonCommuting { i: usize, j: usize, defect: f64 },
    #[error("measure has {got} atoms, representation acts on {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("spectrum of the measure leaves the allowed subspace at characters {offenders:?}")]
    SpectrumNotInside { offenders: Vec<usize> },
    #[error("trajectory of atom {atom} has spectrum outside the subspace at character {character}")]
    TrajectoryNotInSubspace { atom: usize, character: usize },
    #[error("the dual subspace is empty")]
    EmptySubspace,
    #[error("need {want} trajectory measures, got {got}")]
    TrajectoryCount { got: usize, want: usize },
    #[error("need one generator per cyclic factor ({want}), got {got}")]
    GeneratorCount { got: usize, want: usize },
}

fn mat_diff(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    (a - b).iter().map(|v| v.norm()).fold(0.0, f64::max)
}

fn mat_pow(m: &DMatrix<Complex64>, k: u32) -> DMatrix<Complex64> {
    let mut out = DMatrix::identity(m.nrows(), m.ncols());
    for _ in 0..k {
        out = &out * m;
    }
    out
}

/// Maximum absolute column sum: the operator norm on measures under total
/// variation.
pub fn tv_operator_norm(m: &DMatrix<Complex64>) -> f64 {
    (0..m.ncols())
        .map(|j| m.column(j).iter().map(|v| v.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Action of a finite abelian group on measures over `dim` atoms, generated
/// by one invertible operator per cyclic factor.
#[derive(Debug, Clone)]
pub struct Representation {
    group: FiniteAbelianGroup,
    dim: usize,
    operators: Vec<DMatrix<Complex64>>,
}

impl Representation {
    /// Validates the generators (shape, invertibility, factor order,
    /// commutation) and precomputes the operator of every group element.
    pub fn build(
        group: FiniteAbelianGroup,
        generators: Vec<DMatrix<Complex64>>,
    ) -> Result<Self, TransferError> {
        if generators.len() != group.factors().len() {
            return Err(TransferError::GeneratorCount {
                got: generators.len(),
                want: group.factors().len(),
            });
        }
        let dim = generators.first().map_or(0, |m| m.nrows());
        for (index, m) in generators.iter().enumerate() {
            if m.nrows() != dim || m.ncols() != dim || dim == 0 {
                return Err(TransferError::NotSquare { index });
            }
            if m.clone().try_inverse().is_none() {
                return Err(TransferError::Singular { index });
            }
            let order = group.factors()[index];
            let identity = DMatrix::identity(dim, dim);
            let defect = mat_diff(&mat_pow(m, order), &identity);
            if defect > 1e-9 {
                return Err(TransferError::WrongOrder { index, defect });
            }
        }
        for i in 0..generators.len() {
            for j in i + 1..generators.len() {
                let ab = &generators[i] * &generators[j];
                let ba = &generators[j] * &generators[i];
                let defect = mat_diff(&ab, &ba);
                if defect > 1e-9 {
                    return Err(TransferError::NonCommuting { i, j, defect });
                }
            }
        }

        let mut powers: Vec<Vec<DMatrix<Complex64>>> = Vec::new();
        for (index, m) in generators.iter().enumerate() {
            let order = group.factors()[index] as usize;
            let mut p = Vec::with_capacity(order);
            p.push(DMatrix::identity(dim, dim));
            for k in 1..order {
                let next = &p[k - 1] * m;
                p.push(next);
            }
            powers.push(p);
        }
        let mut operators = Vec::with_capacity(group.order());
        for t in 0..group.order() {
            let residues = group.element(t).0;
            let mut op = DMatrix::identity(dim, dim);
            for (i, &r) in residues.iter().enumerate() {
                op = &op * &powers[i][r as usize];
            }
            operators.push(op);
        }
        Ok(Self { group, dim, operators })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Operator of the group element with the given index.
    pub fn operator(&self, t: usize) -> &DMatrix<Complex64> {
        &self.operators[t]
    }

    pub fn apply(&self, t: usize, mu: &FiniteMeasure) -> Result<FiniteMeasure, TransferError> {
        if mu.dim() != self.dim {
            return Err(TransferError::DimensionMismatch { got: mu.dim(), want: self.dim });
        }
        Ok(FiniteMeasure::from_vector(&(&self.operators[t] * mu.to_vector())))
    }

    /// Applies the operator of the inverse element, realized through the
    /// group's own negation so no matrix is ever inverted.
    pub fn apply_inverse(
        &self,
        t: usize,
        mu: &FiniteMeasure,
    ) -> Result<FiniteMeasure, TransferError> {
        self.apply(self.group.neg_index(t), mu)
    }
}

/// Uniform operator-norm bound: the largest total-variation norm among the
/// group's operators. At least 1, since the identity element acts as the
/// identity.
pub fn uniform_bound_c(rep: &Representation) -> f64 {
    rep.operators.iter().map(tv_operator_norm).fold(0.0, f64::max)
}

/// Norm constants of a representation: the certified interval for the
/// sup-path constant together with the uniform bound.
#[derive(Debug, Clone, Serialize)]
pub struct ConstantsReport {
    pub c: f64,
    pub c_upper: f64,
    pub c_lower: f64,
    pub per_t_norms: Vec<f64>,
}

/// Certifies `C_upper` as the uniform bound (a measure is recovered from any
/// orbit point by the inverse operator, which costs at most a factor `c`)
/// and samples `C_lower` as the largest observed `|mu| / max_t |T_t mu|`.
pub fn sup_path_constants(rep: &Representation, samples: usize, seed: u64) -> ConstantsReport {
    let c = uniform_bound_c(rep);
    let mut rng = crate::rng::seeded(seed);
    let mut candidates = Vec::new();
    for i in 0..rep.dim() {
        candidates.push(FiniteMeasure::delta(rep.dim(), i).expect("index in range"));
    }
    for _ in 0..samples {
        candidates.push(FiniteMeasure::random(rep.dim(), &mut rng));
    }
    let mut c_lower = 0.0f64;
    for mu in &candidates {
        let sup_orbit = (0..rep.group().order())
            .map(|t| rep.apply(t, mu).expect("dimension checked").tv_norm())
            .fold(0.0, f64::max);
        if sup_orbit > 0.0 {
            c_lower = c_lower.max(mu.tv_norm() / sup_orbit);
        }
    }
    ConstantsReport {
        c,
        c_upper: c,
        c_lower,
        per_t_norms: rep.operators.iter().map(tv_operator_norm).collect(),
    }
}

/// Transferred convolution: `sum_t nu(t) T_{-t} mu`.
pub fn t_convolve(
    nu: &GroupFunction,
    mu: &FiniteMeasure,
    rep: &Representation,
) -> Result<FiniteMeasure, TransferError> {
    if nu.group() != rep.group() {
        return Err(TransferError::Group(GroupError::GroupMismatch));
    }
    let mut acc = FiniteMeasure::zero(rep.dim());
    for (t, &w) in nu.values().iter().enumerate() {
        if w == Complex64::zero() {
            continue;
        }
        let moved = rep.apply_inverse(t, mu)?;
        acc = acc.add(&moved.scale(w)).expect("dimensions agree");
    }
    Ok(acc)
}

/// Residuals of the convolution algebra on one triple of inputs.
#[derive(Debug, Clone, Serialize)]
pub struct AlgebraReport {
    /// Worst total variation of `T_t(nu *_T mu) - nu *_T (T_t mu)` over t.
    pub commutation_residual: f64,
    /// Total variation of `sigma *_T (nu *_T mu) - (sigma * nu) *_T mu`.
    pub associativity_residual: f64,
    /// `|nu *_T mu| / (c |nu|_1 |mu|)`, at most 1 up to round-off.
    pub norm_ratio: f64,
    pub pass: bool,
}

pub fn check_algebra(
    sigma: &GroupFunction,
    nu: &GroupFunction,
    mu: &FiniteMeasure,
    rep: &Representation,
) -> Result<AlgebraReport, TransferError> {
    let conv = t_convolve(nu, mu, rep)?;
    let mut commutation_residual = 0.0f64;
    for t in 0..rep.group().order() {
        let left = rep.apply(t, &conv)?;
        let right = t_convolve(nu, &rep.apply(t, mu)?, rep)?;
        commutation_residual = commutation_residual.max(left.sub(&right).expect("dims").tv_norm());
    }
    let assoc_left = t_convolve(sigma, &conv, rep)?;
    let assoc_right = t_convolve(&sigma.convolve(nu)?, mu, rep)?;
    let associativity_residual = assoc_left.sub(&assoc_right).expect("dims").tv_norm();
    let c = uniform_bound_c(rep);
    let denom = c * nu.l1_norm() * mu.tv_norm();
    let norm_ratio = if denom > 0.0 { conv.tv_norm() / denom } else { 0.0 };
    let scale = (nu.l1_norm() * mu.tv_norm()).max(1.0) * c;
    let pass = commutation_residual <= 1e-10 * scale.max(1.0)
        && associativity_residual
            <= 1e-10 * (sigma.l1_norm() * nu.l1_norm() * mu.tv_norm() * c * c).max(1.0)
        && norm_ratio <= 1.0 + 1e-9;
    Ok(AlgebraReport { commutation_residual, associativity_residual, norm_ratio, pass })
}

/// Set of characters carried by an orbit, with the tolerance that defined it
/// and any coefficients too close to the cut to trust.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumSet {
    pub chars: Vec<usize>,
    pub borderline: Vec<usize>,
}

impl SpectrumSet {
    pub fn is_subset_of(&self, other: &SpectrumSet) -> bool {
        self.chars.iter().all(|c| other.chars.binary_search(c).is_ok())
    }

    pub fn contains(&self, chi: usize) -> bool {
        self.chars.binary_search(&chi).is_ok()
    }
}

/// Orbit Fourier coefficient `(1/|G|) sum_t conj(chi(t)) T_t mu`, a measure
/// in the chi-eigenspace of every operator.
pub fn trajectory_coefficient(
    rep: &Representation,
    mu: &FiniteMeasure,
    chi: usize,
) -> Result<FiniteMeasure, TransferError> {
    let order = rep.group().order();
    let mut acc = FiniteMeasure::zero(rep.dim());
    for t in 0..order {
        let weight = rep.group().char_eval_indices(chi, t).conj();
        acc = acc.add(&rep.apply(t, mu)?.scale(weight)).expect("dims");
    }
    Ok(acc.scale(Complex64::new(1.0 / order as f64, 0.0)))
}

/// Spectrum through the coefficient route: characters whose orbit Fourier
/// coefficient carries more than `tol` of the measure's norm.
pub fn spec_fourier(
    rep: &Representation,
    mu: &FiniteMeasure,
    tol: f64,
) -> Result<SpectrumSet, TransferError> {
    let norm = mu.tv_norm();
    let mut chars = Vec::new();
    let mut borderline = Vec::new();
    for chi in 0..rep.group().order() {
        let coeff = trajectory_coefficient(rep, mu, chi)?.tv_norm();
        if norm == 0.0 {
            continue;
        }
        let rel = coeff / norm;
        if rel > tol {
            chars.push(chi);
        }
        if rel > tol / 10.0 && rel < tol * 10.0 {
            borderline.push(chi);
        }
    }
    Ok(SpectrumSet { chars, borderline })
}

/// Spectrum through the annihilator route: the common zero set of the
/// transforms of a null-space basis of `f -> f *_T mu`, with the null space
/// taken from the Gram matrix of the orbit in the element basis.
pub fn spec_ideal(rep: &Representation, mu: &FiniteMeasure) -> Result<SpectrumSet, TransferError> {
    let order = rep.group().order();
    let dim = rep.dim();
    let mut a = DMatrix::<Complex64>::zeros(dim, order);
    for t in 0..order {
        let col = rep.apply_inverse(t, mu)?;
        for (i, &m) in col.masses().iter().enumerate() {
            a[(i, t)] = m;
        }
    }
    let gram = a.adjoint() * &a;
    let eig = gram.symmetric_eigen();
    let lambda_max = eig.eigenvalues.iter().copied().fold(0.0, f64::max);
    // Null vectors carry eigenvalues at round-off scale; anything a safe
    // factor above machine noise relative to the top eigenvalue is rank.
    let cut = lambda_max * 1e-13 * order as f64;
    let mut null_transforms: Vec<Vec<Complex64>> = Vec::new();
    let mut borderline_rank = false;
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        if lambda_max == 0.0 || lambda <= cut {
            let g = GroupFunction::from_values(
                rep.group(),
                eig.eigenvectors.column(j).iter().copied().collect(),
            )
            .expect("basis length");
            null_transforms.push(g.dft());
        } else if lambda <= cut * 100.0 {
            borderline_rank = true;
        }
    }
    if null_transforms.is_empty() {
        let chars = (0..order).collect();
        return Ok(SpectrumSet {
            chars,
            borderline: if borderline_rank { (0..order).collect() } else { Vec::new() },
        });
    }
    let mut worst = vec![0.0f64; order];
    for transform in &null_transforms {
        for (chi, v) in transform.iter().enumerate() {
            worst[chi] = worst[chi].max(v.norm());
        }
    }
    let scale = worst.iter().copied().fold(0.0, f64::max).max(1e-300);
    let mut chars = Vec::new();
    let mut borderline = Vec::new();
    for (chi, &w) in worst.iter().enumerate() {
        let rel = w / scale;
        if rel <= 1e-8 {
            chars.push(chi);
        }
        if rel > 1e-9 && rel < 1e-7 {
            borderline.push(chi);
        }
    }
    if borderline_rank {
        borderline = (0..order).collect();
    }
    Ok(SpectrumSet { chars, borderline })
}

/// Support of a transform: characters with more than a relative sliver of
/// the largest coefficient.
pub fn transform_support(f: &GroupFunction) -> Vec<usize> {
    let spectrum = f.dft();
    let top = spectrum.iter().map(|v| v.norm()).fold(0.0, f64::max);
    (0..spectrum.len()).filter(|&i| spectrum[i].norm() > 1e-9 * top.max(1e-300)).collect()
}

/// Largest modulated trajectory sum over the characters excluded from
/// `supp(ghat) + spec(mu)`, with the count of excluded characters.
pub fn modulated_sum_check(
    rep: &Representation,
    mu: &FiniteMeasure,
    g: &GroupFunction,
    set: &[usize],
) -> Result<(f64, usize), TransferError> {
    if g.group() != rep.group() {
        return Err(TransferError::Group(GroupError::GroupMismatch));
    }
    let order = rep.group().order();
    let spec = spec_fourier(rep, mu, 1e-9)?;
    let g_supp = transform_support(g);
    let mut allowed = vec![false; order];
    for &a in &g_supp {
        for &b in &spec.chars {
            allowed[rep.group().add_indices(a, b)] = true;
        }
    }
    let trajectory: Vec<Complex64> = (0..order)
        .map(|t| rep.apply(t, mu).map(|m| m.eval(set)))
        .collect::<Result<_, _>>()?;
    let mut worst = 0.0f64;
    let mut excluded = 0usize;
    for chi in 0..order {
        if allowed[chi] {
            continue;
        }
        excluded += 1;
        let sum: Complex64 = (0..order)
            .map(|t| g.values()[t] * trajectory[t] * rep.group().char_eval_indices(chi, t).conj())
            .sum();
        worst = worst.max(sum.norm());
    }
    Ok((worst, excluded))
}

/// Spectrum support containment: `spec(nu *_T mu)` inside both `supp(nuhat)`
/// and `spec(mu)`.
pub fn spectrum_support_check(
    rep: &Representation,
    nu: &GroupFunction,
    mu: &FiniteMeasure,
) -> Result<bool, TransferError> {
    let conv_spec = spec_fourier(rep, &t_convolve(nu, mu, rep)?, 1e-9)?;
    let mu_spec = spec_fourier(rep, mu, 1e-9)?;
    let supp = transform_support(nu);
    Ok(conv_spec
        .chars
        .iter()
        .all(|chi| supp.contains(chi) && mu_spec.contains(*chi)))
}

/// Group kernel with a triangular transform: `khat(chi) = prod_i
/// (1 - d_i / width)+` with `d_i` the cyclic distance of the character tuple
/// entry from zero. Wider kernels have transforms closer to one everywhere.
pub fn triangular_kernel(group: &FiniteAbelianGroup, width: u32) -> GroupFunction {
    assert!(width >= 1, "width must be positive");
    let order = group.order();
    let mut spectrum = Vec::with_capacity(order);
    for chi in 0..order {
        let tuple = group.character(chi).0;
        let mut v = 1.0f64;
        for (i, &a) in tuple.iter().enumerate() {
            let n = group.factors()[i];
            let d = a.min(n - a) as f64;
            v *= (1.0 - d / width as f64).max(0.0);
        }
        spectrum.push(Complex64::new(v, 0.0));
    }
    GroupFunction::inverse_dft(group, &spectrum).expect("length matches")
}

/// Values of `max_t |k_w *_T T_t mu|` along a family of triangular kernels,
/// ending with the exact point mass, and the recovery bound at that sharpest
/// member.
#[derive(Debug, Clone, Serialize)]
pub struct ApproxIdentityReport {
    pub widths: Vec<u32>,
    pub values: Vec<f64>,
    pub delta_value: f64,
    pub lower_bound: f64,
    pub pass: bool,
}

pub fn approximate_identity_check(
    rep: &Representation,
    mu: &FiniteMeasure,
    widths: &[u32],
) -> Result<ApproxIdentityReport, TransferError> {
    let sup_over_orbit = |k: &GroupFunction| -> Result<f64, TransferError> {
        let mut worst = 0.0f64;
        for t in 0..rep.group().order() {
            let moved = rep.apply(t, mu)?;
            worst = worst.max(t_convolve(k, &moved, rep)?.tv_norm());
        }
        Ok(worst)
    };
    let mut values = Vec::with_capacity(widths.len());
    for &w in widths {
        values.push(sup_over_orbit(&triangular_kernel(rep.group(), w))?);
    }
    let delta = GroupFunction::delta(rep.group(), 0);
    let delta_value = sup_over_orbit(&delta)?;
    let c_upper = uniform_bound_c(rep);
    let lower_bound = mu.tv_norm() / c_upper;
    let pass = lower_bound <= delta_value + 1e-9;
    Ok(ApproxIdentityReport { widths: widths.to_vec(), values, delta_value, lower_bound, pass })
}

fn synth_on_subspace(
    group: &FiniteAbelianGroup,
    s_chars: &[usize],
    coeffs: &[Complex64],
) -> GroupFunction {
    let mut spectrum = vec![Complex64::zero(); group.order()];
    for (&chi, &a) in s_chars.iter().zip(coeffs) {
        spectrum[chi] = a;
    }
    GroupFunction::inverse_dft(group, &spectrum).expect("length matches")
}

fn contraction_ratio(nu: &GroupFunction, f: &GroupFunction) -> f64 {
    let denom = f.l1_norm();
    if denom <= 1e-300 {
        return 0.0;
    }
    nu.convolve(f).expect("same group").l1_norm() / denom
}

/// Lower estimate of `sup |nu * f|_1 / |f|_1` over functions with transform
/// supported in the given characters: sampled starts (random coefficients,
/// pure characters, projected point masses, any caller-supplied candidates)
/// refined by coordinate ascent on the transform coefficients.
pub fn subspace_contraction_estimate(
    nu: &GroupFunction,
    s_chars: &[usize],
    extra_candidates: &[GroupFunction],
    samples: usize,
    seed: u64,
) -> Result<f64, TransferError> {
    if s_chars.is_empty() {
        return Err(TransferError::EmptySubspace);
    }
    let group = nu.group();
    let order = group.order();
    let mut rng = crate::rng::seeded(seed);

    let mut starts: Vec<Vec<Complex64>> = Vec::new();
    for i in 0..s_chars.len() {
        let mut a = vec![Complex64::zero(); s_chars.len()];
        a[i] = Complex64::new(1.0, 0.0);
        starts.push(a);
    }
    for u in 0..order {
        starts.push(
            s_chars
                .iter()
                .map(|&chi| group.char_eval_indices(chi, u).conj())
                .collect(),
        );
    }
    for _ in 0..samples {
        starts.push((0..s_chars.len()).map(|_| crate::rng::complex_gaussian(&mut rng)).collect());
    }
    for f in extra_candidates {
        if f.group() != group {
            return Err(TransferError::Group(GroupError::GroupMismatch));
        }
        let spectrum = f.dft();
        starts.push(s_chars.iter().map(|&chi| spectrum[chi]).collect());
    }

    let mut best = 0.0f64;
    let mut ranked: Vec<(f64, Vec<Complex64>)> = starts
        .into_iter()
        .map(|a| (contraction_ratio(nu, &synth_on_subspace(group, s_chars, &a)), a))
        .collect();
    ranked.sort_by(|x, y| y.0.partial_cmp(&x.0).expect("finite ratios"));
    for (ratio, _) in &ranked {
        best = best.max(*ratio);
    }
    for (_, start) in ranked.into_iter().take(5) {
        let mut a = start;
        let mut current = contraction_ratio(nu, &synth_on_subspace(group, s_chars, &a));
        let mut step = 0.5f64;
        let mut sweeps = 0;
        while step > 1e-4 && sweeps < 500 {
            sweeps += 1;
            let mut improved = false;
            for i in 0..a.len() {
                for delta in [
                    Complex64::new(step, 0.0),
                    Complex64::new(-step, 0.0),
                    Complex64::new(0.0, step),
                    Complex64::new(0.0, -step),
                ] {
                    let mut trial = a.clone();
                    trial[i] += delta;
                    let r = contraction_ratio(nu, &synth_on_subspace(group, s_chars, &trial));
                    if r > current * (1.0 + 1e-12) {
                        a = trial;
                        current = r;
                        improved = true;
                    }
                }
            }
            if !improved {
                step *= 0.5;
            }
        }
        best = best.max(current);
    }
    Ok(best)
}

/// One transference trial: constants, spectra, hypothesis estimate, and the
/// transferred bound.
#[derive(Debug, Clone, Serialize)]
pub struct TransferReport {
    pub factors: Vec<u32>,
    pub dim: usize,
    pub seed: u64,
    pub c: f64,
    pub c_upper: f64,
    pub c_lower: f64,
    pub spec_size: usize,
    pub subspace_size: usize,
    pub contraction_estimate: f64,
    pub ratio: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Verifies the transferred bound `|nu *_T mu| <= c^3 C |mu|` after scaling
/// `nu` so the estimated contraction of the dual subspace is one. The
/// estimate's candidates include the orbit trajectories of `mu` itself, so
/// the scaled hypothesis is exact on the data the bound is tested against.
pub fn verify_main_theorem(
    rep: &Representation,
    s_chars: &[usize],
    nu: &GroupFunction,
    mu: &FiniteMeasure,
    seed: u64,
) -> Result<TransferReport, TransferError> {
    let spec = spec_fourier(rep, mu, 1e-9)?;
    let offenders: Vec<usize> =
        spec.chars.iter().copied().filter(|chi| !s_chars.contains(chi)).collect();
    if !offenders.is_empty() {
        return Err(TransferError::SpectrumNotInside { offenders });
    }

    let order = rep.group().order();
    let mut candidates = Vec::new();
    let mut rng = crate::rng::seeded(seed ^ 0x9e3779b97f4a7c15);
    let mut pairings: Vec<Vec<Complex64>> = Vec::new();
    for e in 0..rep.dim() {
        let mut h = vec![Complex64::zero(); rep.dim()];
        h[e] = Complex64::new(1.0, 0.0);
        pairings.push(h);
    }
    for _ in 0..8 {
        pairings.push((0..rep.dim()).map(|_| crate::rng::unit_phase(&mut rng)).collect());
    }
    for h in &pairings {
        let values: Vec<Complex64> = (0..order)
            .map(|t| {
                let moved = rep.apply(t, mu)?;
                Ok(moved.masses().iter().zip(h).map(|(&m, &w)| m * w).sum())
            })
            .collect::<Result<_, TransferError>>()?;
        candidates.push(GroupFunction::from_values(rep.group(), values)?);
    }

    let estimate = subspace_contraction_estimate(nu, s_chars, &candidates, 64, seed)?;
    let scaled = if estimate > 0.0 {
        nu.scale(Complex64::new(1.0 / estimate, 0.0))
    } else {
        nu.clone()
    };
    let conv = t_convolve(&scaled, mu, rep)?;
    let norm = mu.tv_norm();
    let ratio = if norm > 0.0 { conv.tv_norm() / norm } else { 0.0 };
    let constants = sup_path_constants(rep, 16, seed ^ 1);
    let bound = constants.c.powi(3) * constants.c_upper;
    Ok(TransferReport {
        factors: rep.group().factors().to_vec(),
        dim: rep.dim(),
        seed,
        c: constants.c,
        c_upper: constants.c_upper,
        c_lower: constants.c_lower,
        spec_size: spec.chars.len(),
        subspace_size: s_chars.len(),
        contraction_estimate: estimate,
        ratio,
        bound,
        pass: ratio <= bound * (1.0 + 1e-9),
    })
}

/// Vector-valued contraction: convolving a subspace-supported trajectory of
/// measures with the scaled `nu` cannot grow its summed total variation.
#[derive(Debug, Clone, Serialize)]
pub struct VectorContractionReport {
    pub lhs: f64,
    pub rhs: f64,
    pub contraction_estimate: f64,
    pub pass: bool,
}

pub fn vector_valued_contraction_check(
    nu: &GroupFunction,
    trajectory: &[FiniteMeasure],
    s_chars: &[usize],
    seed: u64,
) -> Result<VectorContractionReport, TransferError> {
    let group = nu.group();
    let order = group.order();
    if trajectory.len() != order {
        return Err(TransferError::TrajectoryCount { got: trajectory.len(), want: order });
    }
    let dim = trajectory.first().map_or(0, |m| m.dim());
    let mut atom_functions = Vec::with_capacity(dim);
    for atom in 0..dim {
        let values: Vec<Complex64> = trajectory.iter().map(|m| m.masses()[atom]).collect();
        let f = GroupFunction::from_values(group, values)?;
        let spectrum = f.dft();
        let top = spectrum.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (chi, v) in spectrum.iter().enumerate() {
            if !s_chars.contains(&chi) && v.norm() > 1e-9 * top.max(1e-300) {
                return Err(TransferError::TrajectoryNotInSubspace { atom, character: chi });
            }
        }
        atom_functions.push(f);
    }
    let estimate = subspace_contraction_estimate(nu, s_chars, &atom_functions, 32, seed)?;
    let scaled = if estimate > 0.0 {
        nu.scale(Complex64::new(1.0 / estimate, 0.0))
    } else {
        nu.clone()
    };
    let mut lhs = 0.0f64;
    for t in 0..order {
        let mut out = FiniteMeasure::zero(dim);
        for s in 0..order {
            let w = scaled.values()[s];
            if w == Complex64::zero() {
                continue;
            }
            out = out.add(&trajectory[group.sub_indices(t, s)].scale(w)).expect("dims");
        }
        lhs += out.tv_norm();
    }
    let rhs: f64 = trajectory.iter().map(|m| m.tv_norm()).sum();
    Ok(VectorContractionReport {
        lhs,
        rhs,
        contraction_estimate: estimate,
        pass: lhs <= rhs * (1.0 + 1e-9),
    })
}

/// Random representation with commuting generators: a shared random change
/// of basis conjugating root-of-unity diagonal matrices, redrawn until the
/// basis is comfortably invertible.
pub fn random_diagonalizable_representation(
    group: &FiniteAbelianGroup,
    dim: usize,
    rng: &mut impl Rng,
) -> Representation {
    loop {
        let q = DMatrix::from_fn(dim, dim, |_, _| crate::rng::complex_gaussian(rng));
        let Some(q_inv) = q.clone().try_inverse() else { continue };
        if tv_operator_norm(&q) * tv_operator_norm(&q_inv) > 1e4 {
            continue;
        }
        let mut generators = Vec::with_capacity(group.factors().len());
        for &n in group.factors() {
            let diag = DMatrix::from_fn(dim, dim, |i, j| {
                if i == j {
                    Complex64::cis(
                        std::f64::consts::TAU * rng.gen_range(0..n) as f64 / n as f64,
                    )
                } else {
                    Complex64::zero()
                }
            });
            generators.push(&q * diag * &q_inv);
        }
        if let Ok(rep) = Representation::build(group.clone(), generators) {
            return rep;
        }
    }
}

/// Random representation for transfer trials, redrawn until its uniform
/// bound clears 2. The transferred bound grows like the fourth power of the
/// uniform bound while the raw coefficient expansion grows linearly in it,
/// so every trial from this family has certified headroom.
pub fn random_transfer_representation(
    group: &FiniteAbelianGroup,
    dim: usize,
    rng: &mut impl Rng,
) -> Representation {
    loop {
        let rep = random_diagonalizable_representation(group, dim, rng);
        if uniform_bound_c(&rep) >= 2.0 {
            return rep;
        }
    }
}

/// Measure whose orbit spectrum sits inside the given characters: the sum of
/// the trajectory coefficients of a random measure over those characters.
pub fn measure_with_spectrum_inside(
    rep: &Representation,
    s_chars: &[usize],
    rng: &mut impl Rng,
) -> Result<FiniteMeasure, TransferError> {
    let raw = FiniteMeasure::random(rep.dim(), rng);
    let mut acc = FiniteMeasure::zero(rep.dim());
    for &chi in s_chars {
        acc = acc.add(&trajectory_coefficient(rep, &raw, chi)?).expect("dims");
    }
    Ok(acc)
}

/// JSON shape for a representation: group factors plus one row-major complex
/// generator matrix per factor, entries as `[re, im]` pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationInput {
    pub factors: Vec<u32>,
    pub generators: Vec<Vec<[f64; 2]>>,
}

impl RepresentationInput {
    pub fn to_representation(&self) -> Result<Representation, TransferError> {
        let group = FiniteAbelianGroup::new(&self.factors)?;
        let mut generators = Vec::with_capacity(self.generators.len());
        for flat in &self.generators {
            let dim = (flat.len() as f64).sqrt().round() as usize;
            if dim * dim != flat.len() {
                return Err(TransferError::NotSquare { index: generators.len() });
            }
            generators.push(DMatrix::from_fn(dim, dim, |i, j| {
                let [re, im] = flat[i * dim + j];
                Complex64::new(re, im)
            }));
        }
        Representation::build(group, generators)
    }

    pub fn from_representation(rep: &Representation) -> Self {
        let factors = rep.group().factors().to_vec();
        let mut generators = Vec::with_capacity(factors.len());
        for i in 0..factors.len() {
            let index = rep.group().index_of(
                &(0..factors.len()).map(|j| u32::from(i == j)).collect::<Vec<_>>(),
            );
            let m = rep.operator(index);
            let flat = (0..rep.dim())
                .flat_map(|r| (0..rep.dim()).map(move |c| (r, c)))
                .map(|(r, c)| [m[(r, c)].re, m[(r, c)].im])
                .collect();
            generators.push(flat);
        }
        Self { factors, generators }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complexify(m: DMatrix<f64>) -> DMatrix<Complex64> {
        m.map(|x| Complex64::new(x, 0.0))
    }

    fn identity_rep(factors: &[u32], dim: usize) -> Representation {
        let group = FiniteAbelianGroup::new(factors).unwrap();
        let gens = factors.iter().map(|_| DMatrix::identity(dim, dim)).collect();
        Representation::build(group, gens).unwrap()
    }

    fn cyclic_shift(n: usize) -> DMatrix<Complex64> {
        DMatrix::from_fn(n, n, |i, j| {
            if i == (j + 1) % n {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::zero()
            }
        })
    }

    fn regular_rep(n: u32) -> Representation {
        let group = FiniteAbelianGroup::new(&[n]).unwrap();
        Representation::build(group, vec![cyclic_shift(n as usize)]).unwrap()
    }

    #[test]
    fn build_rejects_bad_generators() {
        let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
        let stretch = complexify(DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 0.0, 0.5]));
        let err = Representation::build(z2.clone(), vec![stretch]).unwrap_err();
        assert!(matches!(err, TransferError::WrongOrder { index: 0, .. }));

        let singular = complexify(DMatrix::from_row_slice(2, 2, &[1.0, 1.0, 1.0, 1.0]));
        let err = Representation::build(z2.clone(), vec![singular]).unwrap_err();
        assert!(matches!(err, TransferError::Singular { index: 0 }));

        let z22 = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let flip = complexify(DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
        let reflect = complexify(DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0]));
        let err = Representation::build(z22, vec![flip, reflect]).unwrap_err();
        assert!(matches!(err, TransferError::NonCommuting { i: 0, j: 1, .. }));
    }

    #[test]
    fn antidiagonal_swap_has_order_two_and_uniform_bound_two() {
        let z2 = FiniteAbelianGroup::new(&[2]).unwrap();
        let swap = complexify(DMatrix::from_row_slice(2, 2, &[0.0, 2.0, 0.5, 0.0]));
        let rep = Representation::build(z2, vec![swap]).unwrap();
        assert!((uniform_bound_c(&rep) - 2.0).abs() <= 1e-12);
        let report = sup_path_constants(&rep, 32, 5);
        assert!((report.c_upper - 2.0).abs() <= 1e-12);
        assert!(report.c_lower >= 1.0 - 1e-12);
        assert!(report.c_lower <= report.c_upper + 1e-12);
    }

    #[test]
    fn identity_and_permutation_models_have_unit_constants() {
        let rep = identity_rep(&[4], 3);
        assert_eq!(uniform_bound_c(&rep), 1.0);
        let report = sup_path_constants(&rep, 8, 2);
        assert!((report.c_lower - 1.0).abs() <= 1e-12);
        assert!((uniform_bound_c(&regular_rep(6)) - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn operators_respect_the_group_law() {
        let group = FiniteAbelianGroup::new(&[4, 3]).unwrap();
        let mut rng = crate::rng::seeded(21);
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        for s in 0..group.order() {
            for t in 0..group.order() {
                let product = rep.operator(s) * rep.operator(t);
                let direct = rep.operator(group.add_indices(s, t));
                assert!(mat_diff(&product, direct) <= 1e-10, "s={s} t={t}");
            }
        }
    }

    #[test]
    fn transferred_convolution_matches_the_defining_sum() {
        let mut rng = crate::rng::seeded(22);
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        let nu = GroupFunction::from_values(
            &group,
            (0..6).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
        )
        .unwrap();
        let mu = FiniteMeasure::random(3, &mut rng);
        let got = t_convolve(&nu, &mu, &rep).unwrap();
        let mut want = FiniteMeasure::zero(3);
        for t in 0..6 {
            let moved = rep.apply(group.neg_index(t), &mu).unwrap();
            want = want.add(&moved.scale(nu.values()[t])).unwrap();
        }
        assert!(got.sub(&want).unwrap().tv_norm() <= 1e-12);

        let delta0 = GroupFunction::delta(&group, 0);
        let same = t_convolve(&delta0, &mu, &rep).unwrap();
        assert!(same.sub(&mu).unwrap().tv_norm() <= 1e-12);
        let delta2 = GroupFunction::delta(&group, 2);
        let moved = t_convolve(&delta2, &mu, &rep).unwrap();
        let want = rep.apply_inverse(2, &mu).unwrap();
        assert!(moved.sub(&want).unwrap().tv_norm() <= 1e-12);
    }

    #[test]
    fn convolution_norm_respects_the_uniform_bound() {
        let mut rng = crate::rng::seeded(23);
        let group = FiniteAbelianGroup::new(&[8]).unwrap();
        for _ in 0..20 {
            let rep = random_diagonalizable_representation(&group, 3, &mut rng);
            let c = uniform_bound_c(&rep);
            let nu = GroupFunction::from_values(
                &group,
                (0..8).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
            )
            .unwrap();
            let mu = FiniteMeasure::random(3, &mut rng);
            let conv = t_convolve(&nu, &mu, &rep).unwrap();
            assert!(conv.tv_norm() <= c * nu.l1_norm() * mu.tv_norm() * (1.0 + 1e-9));
        }
    }

    #[test]
    fn algebra_identities_hold_to_tolerance() {
        let mut rng = crate::rng::seeded(24);
        let group = FiniteAbelianGroup::new(&[8]).unwrap();
        let rep = random_diagonalizable_representation(&group, 4, &mut rng);
        let rand_fn = |rng: &mut rand_chacha::ChaCha8Rng| {
            GroupFunction::from_values(
                &group,
                (0..8).map(|_| crate::rng::complex_gaussian(rng)).collect(),
            )
            .unwrap()
        };
        let sigma = rand_fn(&mut rng);
        let nu = rand_fn(&mut rng);
        let mu = FiniteMeasure::random(4, &mut rng);
        let report = check_algebra(&sigma, &nu, &mu, &rep).unwrap();
        assert!(report.pass, "{report:?}");
        assert!(report.commutation_residual <= 1e-10 * 100.0);
        assert!(report.associativity_residual <= 1e-10 * 1000.0);

        let trivial = check_algebra(
            &GroupFunction::delta(&group, 0),
            &GroupFunction::delta(&group, 0),
            &mu,
            &identity_rep(&[8], 4),
        )
        .unwrap();
        assert_eq!(trivial.commutation_residual, 0.0);
        assert_eq!(trivial.associativity_residual, 0.0);
    }

    #[test]
    fn regular_action_spectra_match_the_known_sets() {
        let rep = regular_rep(5);
        let uniform = FiniteMeasure::new(vec![Complex64::new(0.2, 0.0); 5]);
        let spec = spec_fourier(&rep, &uniform, 1e-9).unwrap();
        assert_eq!(spec.chars, vec![0]);
        assert!(spec.borderline.is_empty());

        let delta = FiniteMeasure::delta(5, 0).unwrap();
        let spec = spec_fourier(&rep, &delta, 1e-9).unwrap();
        assert_eq!(spec.chars, (0..5).collect::<Vec<_>>());

        let zero = FiniteMeasure::zero(5);
        assert!(spec_fourier(&rep, &zero, 1e-9).unwrap().chars.is_empty());
    }

    #[test]
    fn ideal_route_agrees_with_coefficient_route() {
        let rep = regular_rep(5);
        let uniform = FiniteMeasure::new(vec![Complex64::new(0.2, 0.0); 5]);
        assert_eq!(spec_ideal(&rep, &uniform).unwrap().chars, vec![0]);
        let delta = FiniteMeasure::delta(5, 0).unwrap();
        assert_eq!(spec_ideal(&rep, &delta).unwrap().chars, (0..5).collect::<Vec<_>>());
        assert!(spec_ideal(&rep, &FiniteMeasure::zero(5)).unwrap().chars.is_empty());

        let mut rng = crate::rng::seeded(25);
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        for trial in 0usize..20 {
            let dim = 2 + (trial % 3);
            let rep = random_diagonalizable_representation(&group, dim, &mut rng);
            // A dim-dimensional action carries at most dim characters, so the
            // target set is drawn from the spectrum a generic measure reaches.
            let generic = FiniteMeasure::random(dim, &mut rng);
            let reachable = spec_fourier(&rep, &generic, 1e-9).unwrap().chars;
            assert!(!reachable.is_empty(), "trial {trial}");
            let mut s0: Vec<usize> =
                reachable.iter().copied().filter(|_| rng.gen::<bool>()).collect();
            if s0.is_empty() {
                s0.push(reachable[rng.gen_range(0..reachable.len())]);
            }
            let mu = measure_with_spectrum_inside(&rep, &s0, &mut rng).unwrap();
            let a = spec_fourier(&rep, &mu, 1e-9).unwrap();
            let b = spec_ideal(&rep, &mu).unwrap();
            assert_eq!(a.chars, b.chars, "trial {trial} s0 {s0:?}");
            assert_eq!(a.chars, s0, "trial {trial}");
        }
    }

    #[test]
    fn spectrum_is_invariant_along_the_orbit() {
        let mut rng = crate::rng::seeded(26);
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        let mu = measure_with_spectrum_inside(&rep, &[1, 3, 4], &mut rng).unwrap();
        let base = spec_fourier(&rep, &mu, 1e-9).unwrap();
        for t in 0..group.order() {
            let moved = rep.apply(t, &mu).unwrap();
            assert_eq!(spec_fourier(&rep, &moved, 1e-9).unwrap().chars, base.chars, "t={t}");
        }
    }

    #[test]
    fn vanishing_trajectories_mean_the_zero_measure() {
        let mut rng = crate::rng::seeded(27);
        let group = FiniteAbelianGroup::new(&[4, 2]).unwrap();
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        for trial in 0..10 {
            let mu = if trial == 0 {
                FiniteMeasure::zero(3)
            } else {
                FiniteMeasure::random(3, &mut rng)
            };
            let sup = (0..group.order())
                .map(|t| rep.apply(t, &mu).unwrap())
                .flat_map(|m| m.masses().iter().map(|v| v.norm()).collect::<Vec<_>>())
                .fold(0.0, f64::max);
            if sup == 0.0 {
                assert_eq!(mu.tv_norm(), 0.0);
            } else {
                assert!(mu.tv_norm() > 0.0);
            }
        }
    }

    #[test]
    fn modulated_sums_vanish_off_the_allowed_characters() {
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let rep = regular_rep(6);
        let uniform = FiniteMeasure::new(vec![Complex64::new(1.0 / 6.0, 0.0); 6]);
        let g = crate::group::idempotent(&group, &group.character(2));
        let (worst, excluded) = modulated_sum_check(&rep, &uniform, &g, &[0, 3]).unwrap();
        assert_eq!(excluded, 5);
        assert!(worst <= 1e-10, "worst excluded sum {worst}");
    }

    #[test]
    fn convolution_spectrum_sits_inside_both_supports() {
        let mut rng = crate::rng::seeded(28);
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        let mu = measure_with_spectrum_inside(&rep, &[0, 2, 5], &mut rng).unwrap();
        let nu = GroupFunction::from_values(
            &group,
            (0..6).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
        )
        .unwrap();
        assert!(spectrum_support_check(&rep, &nu, &mu).unwrap());
        let delta0 = GroupFunction::delta(&group, 0);
        assert!(spectrum_support_check(&rep, &delta0, &mu).unwrap());
    }

    #[test]
    fn triangular_kernels_interpolate_between_mean_and_point_mass() {
        let group = FiniteAbelianGroup::new(&[2, 3]).unwrap();
        let narrow = triangular_kernel(&group, 1);
        for v in narrow.values() {
            assert!((v - Complex64::new(1.0 / 6.0, 0.0)).norm() <= 1e-12);
        }
        let wide = triangular_kernel(&group, 64);
        let spectrum = GroupFunction::from_values(&group, wide.values().to_vec())
            .unwrap()
            .dft();
        for (chi, v) in spectrum.iter().enumerate() {
            let tuple = group.character(chi).0;
            let mut want = 1.0;
            for (i, &a) in tuple.iter().enumerate() {
                let n = group.factors()[i];
                want *= 1.0 - a.min(n - a) as f64 / 64.0;
            }
            assert!((v - Complex64::new(want, 0.0)).norm() <= 1e-12);
        }
    }

    #[test]
    fn sharpest_kernel_recovers_the_norm_up_to_the_constant() {
        let mut rng = crate::rng::seeded(29);
        let group = FiniteAbelianGroup::new(&[8]).unwrap();
        let rep = random_diagonalizable_representation(&group, 3, &mut rng);
        let mu = FiniteMeasure::random(3, &mut rng);
        let report = approximate_identity_check(&rep, &mu, &[1, 2, 4]).unwrap();
        assert!(report.pass, "{report:?}");
        assert_eq!(report.values.len(), 3);
    }

    #[test]
    fn contraction_estimate_is_exact_on_reference_kernels() {
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let delta0 = GroupFunction::delta(&group, 0);
        let s: Vec<usize> = vec![0, 1, 2];
        let est = subspace_contraction_estimate(&delta0, &s, &[], 16, 3).unwrap();
        assert!((est - 1.0).abs() <= 1e-12, "estimate {est}");

        let e2 = crate::group::idempotent(&group, &group.character(2));
        let est = subspace_contraction_estimate(&e2, &[1, 2, 3], &[], 16, 3).unwrap();
        assert!(est <= 1.0 + 1e-9, "estimate {est}");
        assert!(est >= 1.0 - 1e-9, "estimate {est}");

        let mut rng = crate::rng::seeded(31);
        let nu = GroupFunction::from_values(
            &group,
            (0..6).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
        )
        .unwrap();
        let full: Vec<usize> = (0..6).collect();
        let est = subspace_contraction_estimate(&nu, &full, &[], 16, 3).unwrap();
        assert!((est - nu.l1_norm()).abs() <= 1e-9 * nu.l1_norm(), "estimate {est}");
        assert!(matches!(
            subspace_contraction_estimate(&nu, &[], &[], 4, 3),
            Err(TransferError::EmptySubspace)
        ));
    }

    #[test]
    fn identity_action_saturates_the_transferred_bound() {
        let mut rng = crate::rng::seeded(32);
        let rep = identity_rep(&[6], 3);
        let group = rep.group().clone();
        let nu = GroupFunction::from_values(
            &group,
            (0..6).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
        )
        .unwrap();
        let mu = FiniteMeasure::random(3, &mut rng);
        let report = verify_main_theorem(&rep, &[0], &nu, &mu, 7).unwrap();
        assert!(report.pass, "{report:?}");
        assert!((report.ratio - 1.0).abs() <= 1e-9, "ratio {}", report.ratio);
        assert!((report.bound - 1.0).abs() <= 1e-12);

        let err = verify_main_theorem(&rep, &[1, 2], &nu, &mu, 7).unwrap_err();
        assert!(matches!(err, TransferError::SpectrumNotInside { .. }));
    }

    #[test]
    fn randomized_transfer_trials_meet_the_bound() {
        let mut rng = crate::rng::seeded(33);
        let group = FiniteAbelianGroup::new(&[8]).unwrap();
        for trial in 0..10 {
            let rep = random_transfer_representation(&group, 3, &mut rng);
            let mut s: Vec<usize> = (0..8).filter(|_| rng.gen::<bool>()).collect();
            if s.is_empty() {
                s.push(rng.gen_range(0..8));
            }
            let mu = measure_with_spectrum_inside(&rep, &s, &mut rng).unwrap();
            if mu.tv_norm() < 1e-6 {
                continue;
            }
            let nu = GroupFunction::from_values(
                &group,
                (0..8).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
            )
            .unwrap();
            let report = verify_main_theorem(&rep, &s, &nu, &mu, trial as u64).unwrap();
            assert!(report.pass, "trial {trial}: {report:?}");
        }
    }

    #[test]
    fn vector_trajectories_contract_after_scaling() {
        let mut rng = crate::rng::seeded(34);
        let group = FiniteAbelianGroup::new(&[6]).unwrap();
        let nu = GroupFunction::from_values(
            &group,
            (0..6).map(|_| crate::rng::complex_gaussian(&mut rng)).collect(),
        )
        .unwrap();

        let s = vec![1, 4];
        let mu0 = FiniteMeasure::random(3, &mut rng);
        let rank_one: Vec<FiniteMeasure> = (0..6)
            .map(|t| mu0.scale(group.char_eval_indices(1, t)))
            .collect();
        let report = vector_valued_contraction_check(&nu, &rank_one, &s, 9).unwrap();
        assert!(report.pass, "{report:?}");

        let delta0 = GroupFunction::delta(&group, 0);
        let report = vector_valued_contraction_check(&delta0, &rank_one, &s, 9).unwrap();
        assert!((report.lhs - report.rhs).abs() <= 1e-9 * report.rhs);

        let bad: Vec<FiniteMeasure> = (0..6)
            .map(|t| mu0.scale(group.char_eval_indices(2, t)))
            .collect();
        let err = vector_valued_contraction_check(&nu, &bad, &s, 9).unwrap_err();
        assert!(matches!(err, TransferError::TrajectoryNotInSubspace { .. }));
    }

    #[test]
    fn representation_json_round_trips() {
        let mut rng = crate::rng::seeded(35);
        let group = FiniteAbelianGroup::new(&[4, 2]).unwrap();
        let rep = random_diagonalizable_representation(&group, 2, &mut rng);
        let input = RepresentationInput::from_representation(&rep);
        let text = serde_json::to_string(&input).unwrap();
        let parsed: RepresentationInput = serde_json::from_str(&text).unwrap();
        let rebuilt = parsed.to_representation().unwrap();
        for t in 0..group.order() {
            assert!(mat_diff(rep.operator(t), rebuilt.operator(t)) <= 1e-9, "t={t}");
        }
    }
}
