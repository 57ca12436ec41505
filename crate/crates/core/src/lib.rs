//! Exact computer algebra for the quantum cohomology of orbifold curves:
//! Chen–Ruan rings, WDVV-driven reconstruction of genus-zero potentials,
//! quantum Euler class determinants, Gröbner-based small-quantum solving,
//! and connected Hurwitz numbers. All verdicts come from exact rational
//! arithmetic; floating point appears only in explicit solution tables.

pub mod curve;
pub mod error;
pub mod frobenius;
pub mod hurwitz;
pub mod matrix;
pub mod mpoly;
pub mod potential;
pub mod qseries;
pub mod ratio;
pub mod reconstruct;
pub mod ring;
pub mod smallqh;
pub mod unipoly;
pub mod vars;
