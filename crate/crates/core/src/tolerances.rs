//! Default numerical tolerances, collected in one place.
//!
//! All defaults are sized for double precision at desk-scale dimensions
//! (n <= 100). Relative scales are stated next to each constant.

/// Hermiticity check: ||A - A^H|| <= HERM_TOL * ||A||.
pub const HERM_TOL: f64 = 1e-10;

/// Numerical rank cutoff, relative to the largest singular value.
pub const RANK_TOL: f64 = 1e-9;

/// An eigenvalue is treated as real when |Im| <= REAL_TOL * spectral scale.
pub const REAL_TOL: f64 = 1e-8;

/// Degeneracy grouping distance, relative to the spectral scale.
pub const CLUSTER_TOL: f64 = 1e-7;

/// Restricted inertia treats |eigenvalue| <= KIND_ZERO_TOL * ||G|| as zero.
pub const KIND_ZERO_TOL: f64 = 1e-7;

/// Eigenvalue-gap threshold for degeneracy bisection, relative to scale.
pub const GAP_TOL: f64 = 1e-6;

/// Acceptable intertwining residual ||GH - H^H G|| / max(||H||, 1).
pub const INTERTWINER_RESIDUAL_TOL: f64 = 1e-8;

/// Smallest relative singular value accepted when picking an invertible
/// combination out of an intertwiner basis.
pub const INVERTIBLE_SV_TOL: f64 = 1e-6;

/// Runtime-adjustable tolerance bundle passed through classification and sweeps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub herm: f64,
    pub rank: f64,
    pub real: f64,
    pub cluster: f64,
    pub kind_zero: f64,
    pub gap: f64,
    pub intertwiner: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            herm: HERM_TOL,
            rank: RANK_TOL,
            real: REAL_TOL,
            cluster: CLUSTER_TOL,
            kind_zero: KIND_ZERO_TOL,
            gap: GAP_TOL,
            intertwiner: INTERTWINER_RESIDUAL_TOL,
        }
    }
}
