//! Spectral analysis of pseudo-Hermitian matrices.
//!
//! A matrix `H` is pseudo-Hermitian when `G H = H^H G` for some invertible
//! Hermitian `G` (the intertwining operator). This crate classifies the
//! spectrum of such matrices by Krein kind, discovers intertwining
//! operators, decides protection from pseudo-Hermiticity breaking,
//! distinguishes exceptional from diabolic degeneracies, and maps stable
//! phase regions over parameter grids.
//!
//! Layout:
//! * [`matrix`], [`eig`], [`svd`], [`expm`] — self-contained dense complex
//!   linear algebra kernel.
//! * [`intertwiner`] — discovery of the Hermitian solutions of `G H = H^H G`.
//! * [`krein`] — kind classification, protection predicates, breaking
//!   constructions, boundary probe, Chern index, symmetry checks.
//! * [`models`] — the model Hamiltonians with their known intertwiners.
//! * [`dynamics`] — time evolution and conserved-quantity tracking.
//! * [`sweep`] — parameter sweeps, phase maps, transition location.
//! * [`report`] — the CSV/JSON serializations of sweep and trajectory data.

pub mod eig;
pub mod error;
pub mod expm;
pub mod intertwiner;
pub mod krein;
pub mod matrix;
pub mod models;
pub mod svd;
pub mod tolerances;

pub use error::{IntertwinerError, KreinError, MatrixError, ModelError};
pub use matrix::ComplexMatrix;
pub use tolerances::Tolerances;
