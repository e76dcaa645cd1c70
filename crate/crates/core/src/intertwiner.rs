//! Discovery of intertwining operators.
//!
//! `H` is pseudo-Hermitian iff `G H = H^H G` has an invertible Hermitian
//! solution `G`. Vectorizing turns that equation into a null-space problem
//! for the n² x n² operator `K = H^H ⊗ I − I ⊗ H^T`; the Hermitian
//! solutions form a real vector space, recovered here as an orthonormal
//! basis.

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::eig::gen_eig;
use crate::error::IntertwinerError;
use crate::matrix::{kron, ComplexMatrix};
use crate::svd::{null_space_basis, svd};
use crate::tolerances::{INVERTIBLE_SV_TOL, REAL_TOL};

/// Real-linear basis of Hermitian solutions of `G H = H^H G`.
#[derive(Debug, Clone)]
pub struct IntertwinerBasis {
    /// Orthonormal (Frobenius) Hermitian basis elements.
    pub basis: Vec<ComplexMatrix>,
    /// Intertwining residual of each element.
    pub residuals: Vec<f64>,
    /// Complex dimension of the raw Sylvester null space.
    pub source_dimension: usize,
}

impl IntertwinerBasis {
    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn dimension(&self) -> usize {
        self.basis.len()
    }
}

/// The n² x n² operator whose null space (row-major vectorization) is the
/// solution set of `H^H G = G H`.
pub fn sylvester_operator(h: &ComplexMatrix) -> ComplexMatrix {
    let n = h.rows();
    let identity = ComplexMatrix::identity(n);
    &kron(&h.adjoint(), &identity) - &kron(&identity, &h.transpose())
}

/// Intertwining residual `||G H − H^H G|| / max(||H||, 1)`.
pub fn verify_intertwiner(h: &ComplexMatrix, g: &ComplexMatrix) -> Result<f64, IntertwinerError> {
    if !h.is_square() || h.rows() != g.rows() || h.cols() != g.cols() {
        return Err(IntertwinerError::DimensionMismatch(format!(
            "H is {}x{}, G is {}x{}",
            h.rows(),
            h.cols(),
            g.rows(),
            g.cols()
        )));
    }
    let defect = &(g * h) - &(&h.adjoint() * g);
    Ok(defect.fro_norm() / h.fro_norm().max(1.0))
}

/// All Hermitian intertwiners of `H`, as an orthonormal real basis.
///
/// Each raw null-space element `G0` contributes its two Hermitian parts
/// `(G0 + G0^H)/2` and `i (G0 − G0^H)/2` (both solve the same equation);
/// the candidates are then orthonormalized over the reals and near-zero
/// directions dropped. An empty basis means no Hermitian intertwiner
/// exists at this rank tolerance.
pub fn intertwiner_basis(
    h: &ComplexMatrix,
    rank_tol: f64,
) -> Result<IntertwinerBasis, IntertwinerError> {
    let n = h.require_square().map_err(IntertwinerError::Matrix)?;
    let k = sylvester_operator(h);
    let raw = null_space_basis(&k, rank_tol).map_err(IntertwinerError::Matrix)?;
    let source_dimension = raw.cols();

    let mut candidates: Vec<ComplexMatrix> = Vec::with_capacity(2 * source_dimension);
    for j in 0..source_dimension {
        let g0 = ComplexMatrix::from_vectorized(n, &raw.col(j));
        let herm = g0.hermitian_part();
        let anti = (&g0 - &g0.adjoint()).scale(Complex64::new(0.0, 0.5));
        candidates.push(herm);
        candidates.push(anti);
    }

    // Modified Gram-Schmidt over the reals with re-orthogonalization;
    // <A, B> = Re tr(A^H B) is the real inner product on Hermitian matrices.
    let mut basis: Vec<ComplexMatrix> = Vec::new();
    for cand in candidates {
        let original_norm = cand.fro_norm();
        if original_norm <= 1e-14 {
            continue;
        }
        let mut w = cand;
        for _ in 0..2 {
            for b in &basis {
                let coeff = real_inner(b, &w);
                w = &w - &b.scale_re(coeff);
            }
        }
        let w_norm = w.fro_norm();
        if w_norm <= 1e-6 * original_norm {
            continue;
        }
        basis.push(w.scale_re(1.0 / w_norm).hermitian_part());
    }

    let residuals = basis
        .iter()
        .map(|g| verify_intertwiner(h, g))
        .collect::<Result<Vec<f64>, _>>()?;
    Ok(IntertwinerBasis { basis, residuals, source_dimension })
}

fn real_inner(a: &ComplexMatrix, b: &ComplexMatrix) -> f64 {
    a.data().iter().zip(b.data()).map(|(x, y)| x.re * y.re + x.im * y.im).sum()
}

/// Draw random real combinations of the basis until one is safely
/// invertible; returns the (unit Frobenius norm) combination and its
/// condition number. Deterministic for a fixed seed.
pub fn select_invertible(
    basis: &IntertwinerBasis,
    seed: u64,
    max_tries: usize,
) -> Result<(ComplexMatrix, f64), IntertwinerError> {
    if basis.is_empty() {
        return Err(IntertwinerError::EmptyBasis);
    }
    let n = basis.basis[0].rows();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..max_tries {
        let mut g = ComplexMatrix::zeros(n, n);
        for b in &basis.basis {
            let coeff: f64 = rng.sample(StandardNormal);
            g = &g + &b.scale_re(coeff);
        }
        let norm = g.fro_norm();
        if norm <= 1e-14 {
            continue;
        }
        g = g.scale_re(1.0 / norm);
        let s = svd(&g).map_err(IntertwinerError::Matrix)?;
        let top = s.singular_values[0];
        let bottom = *s.singular_values.last().unwrap();
        if bottom >= INVERTIBLE_SV_TOL * top {
            return Ok((g.hermitian_part(), top / bottom));
        }
    }
    Err(IntertwinerError::NoInvertibleFound { tries: max_tries })
}

/// Decide pseudo-Hermiticity and return an invertible Hermitian witness
/// when one exists. A conjugation-closed spectrum is necessary, so the
/// eigenvalues are checked first as a fast pre-filter.
pub fn is_pseudo_hermitian(
    h: &ComplexMatrix,
    rank_tol: f64,
) -> Result<(bool, Option<ComplexMatrix>), IntertwinerError> {
    is_pseudo_hermitian_seeded(h, rank_tol, 0)
}

pub fn is_pseudo_hermitian_seeded(
    h: &ComplexMatrix,
    rank_tol: f64,
    seed: u64,
) -> Result<(bool, Option<ComplexMatrix>), IntertwinerError> {
    let eig = gen_eig(h).map_err(IntertwinerError::Matrix)?;
    if eig.converged && !spectrum_conjugation_closed(&eig.eigenvalues, REAL_TOL) {
        return Ok((false, None));
    }
    let basis = intertwiner_basis(h, rank_tol)?;
    match select_invertible(&basis, seed, 64) {
        Ok((g, _)) => Ok((true, Some(g))),
        Err(IntertwinerError::EmptyBasis | IntertwinerError::NoInvertibleFound { .. }) => {
            Ok((false, None))
        }
        Err(e) => Err(e),
    }
}

/// Multiset check that the spectrum equals its own conjugate.
pub fn spectrum_conjugation_closed(eigenvalues: &[Complex64], tol: f64) -> bool {
    let scale = eigenvalues.iter().map(|z| z.norm()).fold(1.0_f64, f64::max);
    let mut used = vec![false; eigenvalues.len()];
    for &z in eigenvalues {
        let target = z.conj();
        let mut found = false;
        for (i, &w) in eigenvalues.iter().enumerate() {
            if !used[i] && (w - target).norm() <= tol * scale {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return false;
        }
    }
    true
}
