//! Finite abelian groups, their characters, and Fourier analysis on them.
//!
//! Groups are products of cyclic factors. Elements and characters are both
//! tuples of residues enumerated lexicographically (first factor most
//! significant), Haar measure is counting measure, and the transform pair is
//!
//! ```text
//! fhat(chi) = sum_t f(t) conj(chi(t))        f(t) = (1/|G|) sum_chi fhat(chi) chi(t)
//! ```
//!
//! The transform is computed one factor at a time; the tests check it against
//! direct double summation so the two routes stay independent.

use num_complex::Complex64;
use num_traits::Zero;
use std::f64::consts::TAU;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("group must have at least one cyclic factor")]
    EmptyFactors,
    #[error("cyclic factor {index} has order zero")]
    ZeroFactor { index: usize },
    #[error("operands belong to different groups")]
    GroupMismatch,
    #[error("value vector has length {got}, group has order {want}")]
    LengthMismatch { got: usize, want: usize },
}

/// Product of cyclic groups `Z_{n_1} x ... x Z_{n_k}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteAbelianGroup {
    factors: Vec<u32>,
}

/// Element of a group, stored as one residue per factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupElement(pub Vec<u32>);

/// Character of a group, identified by one residue per factor.
///
/// `Character(a)` sends `t` to `exp(2 pi i sum_i a_i t_i / n_i)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character(pub Vec<u32>);

impl FiniteAbelianGroup {
    pub fn new(factors: &[u32]) -> Result<Self, GroupError> {
        if factors.is_empty() {
            return Err(GroupError::EmptyFactors);
        }
        if let Some(index) = factors.iter().position(|&n| n == 0) {
            return Err(GroupError::ZeroFactor { index });
        }
        Ok(Self { factors: factors.to_vec() })
    }

    pub fn factors(&self) -> &[u32] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.factors.iter().map(|&n| n as usize).product()
    }

    /// Index of an element in lexicographic enumeration.
    pub fn index_of(&self, residues: &[u32]) -> usize {
        debug_assert_eq!(residues.len(), self.factors.len());
        let mut idx = 0;
        for (&r, &n) in residues.iter().zip(&self.factors) {
            debug_assert!(r < n);
            idx = idx * n as usize + r as usize;
        }
        idx
    }

    /// Element at a lexicographic index.
    pub fn element(&self, mut index: usize) -> GroupElement {
        let mut residues = vec![0u32; self.factors.len()];
        for (slot, &n) in residues.iter_mut().zip(&self.factors).rev() {
            *slot = (index % n as usize) as u32;
            index /= n as usize;
        }
        GroupElement(residues)
    }

    /// Character at a lexicographic index.
    pub fn character(&self, index: usize) -> Character {
        Character(self.element(index).0)
    }

    /// All elements in lexicographic order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// All characters in lexicographic order.
    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        (0..self.order()).map(|i| self.character(i))
    }

    /// Index arithmetic: index of `s + t`.
    pub fn add_indices(&self, s: usize, t: usize) -> usize {
        let (a, b) = (self.element(s), self.element(t));
        let sum: Vec<u32> =
            a.0.iter().zip(&b.0).zip(&self.factors).map(|((&x, &y), &n)| (x + y) % n).collect();
        self.index_of(&sum)
    }

    /// Index arithmetic: index of `-t`.
    pub fn neg_index(&self, t: usize) -> usize {
        let a = self.element(t);
        let neg: Vec<u32> =
            a.0.iter().zip(&self.factors).map(|(&x, &n)| if x == 0 { 0 } else { n - x }).collect();
        self.index_of(&neg)
    }

    /// Index arithmetic: index of `s - t`.
    pub fn sub_indices(&self, s: usize, t: usize) -> usize {
        self.add_indices(s, self.neg_index(t))
    }

    /// Value of the character with index `chi` at the element with index `t`.
    pub fn char_eval_indices(&self, chi: usize, t: usize) -> Complex64 {
        char_eval(self, &self.character(chi), &self.element(t))
    }
}

/// Value of a character at an element: `exp(2 pi i sum_i a_i t_i / n_i)`.
///
/// The residue product is reduced per factor before dividing, so the phase
/// stays well inside the exact integer range of `f64`.
pub fn char_eval(group: &FiniteAbelianGroup, chi: &Character, t: &GroupElement) -> Complex64 {
    let mut phase = 0.0;
    for ((&a, &x), &n) in chi.0.iter().zip(&t.0).zip(group.factors()) {
        let prod = (a as u64 * x as u64) % n as u64;
        phase += prod as f64 / n as f64;
    }
    Complex64::cis(TAU * phase)
}

/// Complex-valued function on a finite abelian group; equivalently a measure
/// on the group with counting-measure Haar normalization.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupFunction {
    group: FiniteAbelianGroup,
    values: Vec<Complex64>,
}

impl GroupFunction {
    pub fn zero(group: &FiniteAbelianGroup) -> Self {
        Self { group: group.clone(), values: vec![Complex64::zero(); group.order()] }
    }

    /// Point mass at the element with the given index.
    pub fn delta(group: &FiniteAbelianGroup, index: usize) -> Self {
        let mut f = Self::zero(group);
        f.values[index] = Complex64::new(1.0, 0.0);
        f
    }

    pub fn from_values(
        group: &FiniteAbelianGroup,
        values: Vec<Complex64>,
    ) -> Result<Self, GroupError> {
        if values.len() != group.order() {
            return Err(GroupError::LengthMismatch { got: values.len(), want: group.order() });
        }
        Ok(Self { group: group.clone(), values })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [Complex64] {
        &mut self.values
    }

    /// Total mass `sum_t f(t)`.
    pub fn haar_sum(&self) -> Complex64 {
        self.values.iter().sum()
    }

    /// `sum_t |f(t)|`, the total variation of the associated measure.
    pub fn l1_norm(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).sum()
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect();
        Ok(Self { group: self.group.clone(), values })
    }

    /// Convolution `(f * g)(t) = sum_s f(s) g(t - s)` by direct summation.
    pub fn convolve(&self, other: &Self) -> Result<Self, GroupError> {
        if self.group != other.group {
            return Err(GroupError::GroupMismatch);
        }
        let order = self.group.order();
        let mut values = vec![Complex64::zero(); order];
        for s in 0..order {
            let fs = self.values[s];
            if fs == Complex64::zero() {
                continue;
            }
            for t in 0..order {
                let diff = self.group.sub_indices(t, s);
                values[t] += fs * other.values[diff];
            }
        }
        Ok(Self { group: self.group.clone(), values })
    }

    /// Transform values indexed by character: `fhat(chi) = sum_t f(t) conj(chi(t))`.
    ///
    /// Computed factor by factor, one cyclic transform per axis.
    pub fn dft(&self) -> Vec<Complex64> {
        transform(&self.group, &self.values, -1.0, 1.0)
    }

    /// Inverse of [`GroupFunction::dft`].
    pub fn inverse_dft(
        group: &FiniteAbelianGroup,
        spectrum: &[Complex64],
    ) -> Result<Self, GroupError> {
        if spectrum.len() != group.order() {
            return Err(GroupError::LengthMismatch { got: spectrum.len(), want: group.order() });
        }
        let values = transform(group, spectrum, 1.0, 1.0 / group.order() as f64);
        Ok(Self { group: group.clone(), values })
    }
}

/// Normalized idempotent `e_chi(t) = chi(t) / |G|`; its transform is the
/// indicator of `chi` and it reproduces itself under convolution.
pub fn idempotent(group: &FiniteAbelianGroup, chi: &Character) -> GroupFunction {
    let scale = 1.0 / group.order() as f64;
    let values = group.elements().map(|t| char_eval(group, chi, &t) * scale).collect();
    GroupFunction { group: group.clone(), values }
}

fn transform(
    group: &FiniteAbelianGroup,
    input: &[Complex64],
    sign: f64,
    scale: f64,
) -> Vec<Complex64> {
    let order = group.order();
    let mut vals = input.to_vec();
    let mut stride = order;
    for &n in group.factors() {
        let n = n as usize;
        stride /= n;
        let mut out = vals.clone();
        for base in 0..order {
            if (base / stride) % n != 0 {
                continue;
            }
            for a in 0..n {
                let mut acc = Complex64::zero();
                for t in 0..n {
                    let w = Complex64::cis(sign * TAU * ((a * t) % n) as f64 / n as f64);
                    acc += vals[base + t * stride] * w;
                }
                out[base + a * stride] = acc;
            }
        }
        vals = out;
    }
    if scale != 1.0 {
        for v in &mut vals {
            *v *= scale;
        }
    }
    vals
}
