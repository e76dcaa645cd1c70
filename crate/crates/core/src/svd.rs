//! Singular value decomposition by one-sided Jacobi, plus the numerical
//! rank and null-space helpers built on it.

use num_complex::Complex64;

use crate::error::MatrixError;
use crate::matrix::{dot, normalize, vec_norm, ComplexMatrix};

const MAX_SWEEPS: usize = 60;

/// Thin SVD: `u` is m x k, `v` is n x k with k = min(m, n), and
/// A = U diag(s) V^H. Singular values are nonnegative and descending.
#[derive(Debug, Clone)]
pub struct Svd {
    pub u: ComplexMatrix,
    pub singular_values: Vec<f64>,
    pub v: ComplexMatrix,
}

pub fn svd(a: &ComplexMatrix) -> Result<Svd, MatrixError> {
    if a.rows() >= a.cols() {
        svd_tall(a)
    } else {
        let s = svd_tall(&a.adjoint())?;
        Ok(Svd { u: s.v, singular_values: s.singular_values, v: s.u })
    }
}

/// One-sided Jacobi on the columns of a tall (m >= n) matrix.
fn svd_tall(a: &ComplexMatrix) -> Result<Svd, MatrixError> {
    let (m, n) = (a.rows(), a.cols());
    let mut b = a.clone();
    let mut v = ComplexMatrix::identity(n);
    let eps = f64::EPSILON;
    // Columns below this norm are numerically zero; rotating against them
    // chases underflow dust and never converges.
    let dead = eps * a.fro_norm();
    // Skip threshold for |<b_p, b_q>| relative to ||b_p|| ||b_q||: a few
    // ulps of headroom above eps, scaled with the summation length, or the
    // last rounding-floor pair can keep the sweep loop alive forever.
    let skip = eps * 4.0 * (m as f64).sqrt();

    let mut converged = n < 2;
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let bp = b.col(p);
                let bq = b.col(q);
                let np = vec_norm(&bp);
                let nq = vec_norm(&bq);
                if np <= dead || nq <= dead {
                    continue;
                }
                let alpha = np * np;
                let beta = nq * nq;
                let gamma = dot(&bp, &bq);
                let g = gamma.norm();
                if g <= skip * (alpha * beta).sqrt() || g == 0.0 {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (alpha - beta) / (2.0 * g);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // [b_p', b_q'] = [b_p, b_q] R,
                // R = [[c, -s e^{i phi}], [s e^{-i phi}, c]].
                let sp = Complex64::new(s, 0.0) * phase.conj();
                let sm = Complex64::new(s, 0.0) * phase;
                for i in 0..m {
                    let (x, y) = (b[(i, p)], b[(i, q)]);
                    b[(i, p)] = c * x + sp * y;
                    b[(i, q)] = -sm * x + c * y;
                }
                for i in 0..n {
                    let (x, y) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * x + sp * y;
                    v[(i, q)] = -sm * x + c * y;
                }
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(MatrixError::NoConvergence(MAX_SWEEPS));
    }

    let mut sigma: Vec<f64> = (0..n).map(|j| vec_norm(&b.col(j))).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| sigma[j].total_cmp(&sigma[i]));
    let v = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    let mut u = ComplexMatrix::zeros(m, n);
    let mut fixed: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let sorted_sigma: Vec<f64> = order.iter().map(|&j| sigma[j]).collect();
    sigma = sorted_sigma;
    let floor = sigma.first().copied().unwrap_or(0.0) * 1e-250;
    for (jj, &src) in order.iter().enumerate() {
        let col = if sigma[jj] > floor && sigma[jj] > 0.0 {
            let mut col = b.col(src);
            for z in col.iter_mut() {
                *z /= sigma[jj];
            }
            col
        } else {
            sigma[jj] = 0.0;
            orthonormal_filler(m, &fixed)
        };
        u.set_col(jj, &col);
        fixed.push(u.col(jj));
    }
    Ok(Svd { u, singular_values: sigma, v })
}

/// Deterministic unit vector orthogonal to all of `fixed`.
fn orthonormal_filler(m: usize, fixed: &[Vec<Complex64>]) -> Vec<Complex64> {
    for seed in 0..m {
        let mut cand = vec![Complex64::ZERO; m];
        cand[seed] = Complex64::ONE;
        for _ in 0..2 {
            for f in fixed {
                let overlap = dot(f, &cand);
                for i in 0..m {
                    cand[i] -= overlap * f[i];
                }
            }
        }
        if normalize(&mut cand) > 0.5 {
            return cand;
        }
    }
    vec![Complex64::ZERO; m]
}

/// Number of singular values above `rank_tol` times the largest one.
pub fn numerical_rank(a: &ComplexMatrix, rank_tol: f64) -> Result<usize, MatrixError> {
    let s = svd(a)?;
    let top = s.singular_values.first().copied().unwrap_or(0.0);
    Ok(s.singular_values.iter().filter(|&&x| x > rank_tol * top).count())
}

/// Orthonormal basis (as columns) of the numerical null space:
/// right singular vectors whose singular value is at most
/// `rank_tol` times the largest one.
pub fn null_space_basis(a: &ComplexMatrix, rank_tol: f64) -> Result<ComplexMatrix, MatrixError> {
    // Pad wide matrices with zero rows so V comes back square.
    let n = a.cols();
    let padded;
    let work = if a.rows() < n {
        let mut p = ComplexMatrix::zeros(n, n);
        p.set_block(0, 0, a);
        padded = p;
        &padded
    } else {
        a
    };
    let s = svd(work)?;
    let top = s.singular_values.first().copied().unwrap_or(0.0);
    let keep: Vec<usize> = (0..n)
        .filter(|&j| s.singular_values.get(j).copied().unwrap_or(0.0) <= rank_tol * top)
        .collect();
    Ok(ComplexMatrix::from_fn(n, keep.len(), |i, j| s.v[(i, keep[j])]))
}
