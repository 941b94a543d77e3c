//! Numerical verification toolkit for dyadic kernel banks, Littlewood-Paley
//! decompositions, and convolution actions of group representations on spaces
//! of measures.
//!
//! Everything here is desk scale: finite abelian groups of a few hundred
//! elements, piecewise-linear frequency profiles with exact rational
//! breakpoints, and sampled signals on uniform grids small enough that every
//! claimed identity or inequality can be checked directly against an
//! independent route (quadrature, brute-force summation, or a second
//! algorithm). Checks never assume the algebra they are meant to verify.

pub mod exact;
pub mod grid;
pub mod group;
pub mod kernels;
pub mod line;
pub mod lp;
pub mod measure;
pub mod profile;
pub mod quad;
pub mod report;
pub mod rng;
pub mod symbolic;
pub mod transfer;
pub mod tset;

pub use num_complex::Complex64;
