//! Eigensolvers for dense complex matrices.
//!
//! * [`herm_eig`] — cyclic complex Jacobi for Hermitian matrices.
//! * [`schur_decompose`] / [`gen_eig`] — Hessenberg reduction followed by
//!   single-shift (Wilkinson) QR, then eigenvectors by back-substitution
//!   in the triangular factor.
//! * [`reorder_schur`] — adjacent-swap reordering that moves a selected
//!   eigenvalue cluster to the leading block.
//! * [`inertia_of`] — signed eigenvalue counts of a Hermitian matrix.

use num_complex::Complex64;

use crate::error::MatrixError;
use crate::matrix::{normalize, ComplexMatrix};
use crate::tolerances::{CLUSTER_TOL, HERM_TOL};

/// Maximum QR iterations as a multiple of the dimension.
const QR_MAX_ITER_PER_DIM: usize = 30;
/// Maximum Jacobi sweeps for Hermitian diagonalization.
const JACOBI_MAX_SWEEPS: usize = 64;

/// Eigenvalues with matching unit-norm right eigenvectors (column i pairs
/// with eigenvalue i), sorted by (Re, Im).
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub eigenvalues: Vec<Complex64>,
    pub right_vectors: ComplexMatrix,
    pub converged: bool,
}

/// Unitary Q and upper-triangular T with A = Q T Q^H.
#[derive(Debug, Clone)]
pub struct Schur {
    pub q: ComplexMatrix,
    pub t: ComplexMatrix,
    pub converged: bool,
}

/// Counts of positive / negative / zero eigenvalues of a Hermitian matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Inertia {
    pub n_positive: usize,
    pub n_negative: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn dimension(&self) -> usize {
        self.n_positive + self.n_negative + self.n_zero
    }

    /// All of one sign, none of the other, none zero.
    pub fn is_definite(&self) -> bool {
        self.n_zero == 0 && (self.n_positive == 0 || self.n_negative == 0) && self.dimension() > 0
    }
}

// ── Hermitian Jacobi ────────────────────────────────────────────────

/// Diagonalize a Hermitian matrix: returns ascending real eigenvalues and
/// the unitary matrix of eigenvectors (column i pairs with eigenvalue i).
pub fn herm_eig(a: &ComplexMatrix) -> Result<(Vec<f64>, ComplexMatrix), MatrixError> {
    herm_eig_with(a, HERM_TOL)
}

pub fn herm_eig_with(a: &ComplexMatrix, herm_tol: f64) -> Result<(Vec<f64>, ComplexMatrix), MatrixError> {
    let n = a.require_square()?;
    let deviation = a.hermiticity_deviation();
    if deviation > herm_tol {
        return Err(MatrixError::NotHermitian { deviation, tol: herm_tol });
    }

    let mut w = a.hermitian_part();
    let mut v = ComplexMatrix::identity(n);
    let scale = w.fro_norm();
    if scale == 0.0 {
        return Ok((vec![0.0; n], v));
    }

    let target = 1e-13 * scale;
    let mut converged = false;
    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = {
            let mut s = 0.0;
            for p in 0..n {
                for q in p + 1..n {
                    s += w[(p, q)].norm_sqr();
                }
            }
            s.sqrt()
        };
        if off <= target {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = w[(p, q)];
                let g = apq.norm();
                if g <= 1e-300 {
                    continue;
                }
                let phase = apq / g;
                let alpha = w[(p, p)].re;
                let beta = w[(q, q)].re;
                let (c, s) = jacobi_rotation(alpha, beta, g);
                // Columns p, q of W and V: [col_p', col_q'] = [col_p, col_q] R
                // with R = [[c, -s e^{i phi}], [s e^{-i phi}, c]].
                let sp = Complex64::new(s, 0.0) * phase.conj();
                let sm = Complex64::new(s, 0.0) * phase;
                for i in 0..n {
                    let (wp, wq) = (w[(i, p)], w[(i, q)]);
                    w[(i, p)] = c * wp + sp * wq;
                    w[(i, q)] = -sm * wp + c * wq;
                    let (vp, vq) = (v[(i, p)], v[(i, q)]);
                    v[(i, p)] = c * vp + sp * vq;
                    v[(i, q)] = -sm * vp + c * vq;
                }
                // Rows p, q: R^H from the left.
                for j in 0..n {
                    let (wp, wq) = (w[(p, j)], w[(q, j)]);
                    w[(p, j)] = c * wp + sm * wq;
                    w[(q, j)] = -sp * wp + c * wq;
                }
                w[(p, q)] = Complex64::ZERO;
                w[(q, p)] = Complex64::ZERO;
                w[(p, p)] = Complex64::new(w[(p, p)].re, 0.0);
                w[(q, q)] = Complex64::new(w[(q, q)].re, 0.0);
            }
        }
    }
    if !converged {
        return Err(MatrixError::NoConvergence(JACOBI_MAX_SWEEPS));
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| w[(i, i)].re.total_cmp(&w[(j, j)].re));
    let values: Vec<f64> = order.iter().map(|&i| w[(i, i)].re).collect();
    let vectors = ComplexMatrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    Ok((values, vectors))
}

/// Classic Rutishauser rotation for the 2x2 Hermitian block
/// [[alpha, g], [g, beta]] with g > 0 real: returns (cos, sin).
fn jacobi_rotation(alpha: f64, beta: f64, g: f64) -> (f64, f64) {
    let zeta = (alpha - beta) / (2.0 * g);
    let t = if zeta >= 0.0 {
        1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
    } else {
        -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
    };
    let c = 1.0 / (1.0 + t * t).sqrt();
    (c, t * c)
}

/// Inertia of a Hermitian matrix: eigenvalue counts above `zero_tol`,
/// below `-zero_tol`, and within the band (absolute threshold).
pub fn inertia_of(a: &ComplexMatrix, zero_tol: f64) -> Result<Inertia, MatrixError> {
    let (values, _) = herm_eig(a)?;
    let mut inertia = Inertia { n_positive: 0, n_negative: 0, n_zero: 0 };
    for v in values {
        if v > zero_tol {
            inertia.n_positive += 1;
        } else if v < -zero_tol {
            inertia.n_negative += 1;
        } else {
            inertia.n_zero += 1;
        }
    }
    Ok(inertia)
}

// ── Hessenberg + shifted QR ─────────────────────────────────────────

/// Reduce A to upper Hessenberg form H = Q^H A Q, accumulating Q.
fn hessenberg(a: &ComplexMatrix) -> (ComplexMatrix, ComplexMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = ComplexMatrix::identity(n);
    for k in 0..n.saturating_sub(2) {
        let m = n - k - 1;
        let mut x = vec![Complex64::ZERO; m];
        for i in 0..m {
            x[i] = h[(k + 1 + i, k)];
        }
        let r = crate::matrix::vec_norm(&x);
        if r <= 1e-300 {
            continue;
        }
        let phase = if x[0].norm() > 1e-300 { x[0] / x[0].norm() } else { Complex64::ONE };
        let alpha = -phase * r;
        let mut u = x;
        u[0] -= alpha;
        let un = crate::matrix::vec_norm(&u);
        if un <= 1e-15 * r {
            continue;
        }
        for z in u.iter_mut() {
            *z /= un;
        }
        // H <- P H P with P = I - 2 u u^H acting on rows/cols k+1..n.
        for j in k..n {
            let mut w = Complex64::ZERO;
            for i in 0..m {
                w += u[i].conj() * h[(k + 1 + i, j)];
            }
            w *= 2.0;
            for i in 0..m {
                let sub = w * u[i];
                h[(k + 1 + i, j)] -= sub;
            }
        }
        for i in 0..n {
            let mut w = Complex64::ZERO;
            for j in 0..m {
                w += h[(i, k + 1 + j)] * u[j];
            }
            w *= 2.0;
            for j in 0..m {
                let sub = w * u[j].conj();
                h[(i, k + 1 + j)] -= sub;
            }
        }
        for i in 0..n {
            let mut w = Complex64::ZERO;
            for j in 0..m {
                w += q[(i, k + 1 + j)] * u[j];
            }
            w *= 2.0;
            for j in 0..m {
                let sub = w * u[j].conj();
                q[(i, k + 1 + j)] -= sub;
            }
        }
        for i in k + 2..n {
            h[(i, k)] = Complex64::ZERO;
        }
        h[(k + 1, k)] = alpha;
    }
    (h, q)
}

/// Complex Givens rotation: returns (c, s) with c real so that
/// [[c, s], [-conj(s), c]] · (f, g)^T = (r, 0)^T.
fn givens(f: Complex64, g: Complex64) -> (f64, Complex64) {
    let gn = g.norm();
    if gn == 0.0 {
        return (1.0, Complex64::ZERO);
    }
    let fn_ = f.norm();
    if fn_ == 0.0 {
        return (0.0, g.conj() / gn);
    }
    let d = (fn_ * fn_ + gn * gn).sqrt();
    let c = fn_ / d;
    let s = (f / fn_) * (g.conj() / d);
    (c, s)
}

/// Wilkinson shift: eigenvalue of the trailing 2x2 block closest to the
/// bottom-right entry.
fn wilkinson_shift(h: &ComplexMatrix, hi: usize) -> Complex64 {
    let a = h[(hi - 1, hi - 1)];
    let b = h[(hi - 1, hi)];
    let c = h[(hi, hi - 1)];
    let d = h[(hi, hi)];
    let tr_half = (a + d) * 0.5;
    let det = a * d - b * c;
    let disc = (tr_half * tr_half - det).sqrt();
    let r1 = tr_half + disc;
    let r2 = tr_half - disc;
    if (r1 - d).norm() <= (r2 - d).norm() {
        r1
    } else {
        r2
    }
}

/// Single-shift QR on a Hessenberg matrix, accumulating Q. Returns false
/// when the iteration budget is exhausted before full deflation.
fn qr_iterate(h: &mut ComplexMatrix, q: &mut ComplexMatrix, max_iter: usize) -> bool {
    let n = h.rows();
    if n <= 1 {
        return true;
    }
    let overall = h.fro_norm().max(f64::MIN_POSITIVE);
    let eps = f64::EPSILON;
    let mut hi = n - 1;
    let mut iters = 0usize;
    let mut stagnation = 0usize;

    while hi > 0 {
        // Deflation scan: find the active block [lo..=hi].
        let mut lo = hi;
        while lo > 0 {
            let mut tol = eps * (h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm());
            if tol == 0.0 {
                tol = eps * overall;
            }
            if h[(lo, lo - 1)].norm() <= tol {
                h[(lo, lo - 1)] = Complex64::ZERO;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            stagnation = 0;
            continue;
        }

        if iters >= max_iter {
            return false;
        }
        iters += 1;
        stagnation += 1;

        let mu = if stagnation % 16 == 0 {
            // Exceptional shift to break symmetric stalls.
            h[(hi, hi)] + Complex64::new(0.75 * h[(hi, hi - 1)].norm(), 0.0)
        } else {
            wilkinson_shift(h, hi)
        };

        // Implicit single-shift sweep with bulge chasing.
        let mut x = h[(lo, lo)] - mu;
        let mut y = h[(lo + 1, lo)];
        for k in lo..hi {
            let (c, s) = givens(x, y);
            let sc = Complex64::new(c, 0.0);
            let j0 = if k == lo { lo } else { k - 1 };
            for j in j0..n {
                let (a, b) = (h[(k, j)], h[(k + 1, j)]);
                h[(k, j)] = sc * a + s * b;
                h[(k + 1, j)] = -s.conj() * a + sc * b;
            }
            let i_end = (k + 2).min(hi);
            for i in 0..=i_end {
                let (a, b) = (h[(i, k)], h[(i, k + 1)]);
                h[(i, k)] = sc * a + s.conj() * b;
                h[(i, k + 1)] = -s * a + sc * b;
            }
            for i in 0..n {
                let (a, b) = (q[(i, k)], q[(i, k + 1)]);
                q[(i, k)] = sc * a + s.conj() * b;
                q[(i, k + 1)] = -s * a + sc * b;
            }
            if k + 1 < hi {
                x = h[(k + 1, k)];
                y = h[(k + 2, k)];
            }
        }
    }
    true
}

fn schur_internal(a: &ComplexMatrix) -> Result<Schur, MatrixError> {
    let n = a.require_square()?;
    if n == 0 {
        return Ok(Schur { q: ComplexMatrix::zeros(0, 0), t: ComplexMatrix::zeros(0, 0), converged: true });
    }
    let (mut h, mut q) = hessenberg(a);
    let converged = qr_iterate(&mut h, &mut q, QR_MAX_ITER_PER_DIM * n);
    // Clean below the diagonal; QR leaves eps-size dust there.
    for i in 0..n {
        for j in 0..i {
            h[(i, j)] = Complex64::ZERO;
        }
    }
    Ok(Schur { q, t: h, converged })
}

/// Complex Schur decomposition A = Q T Q^H.
pub fn schur_decompose(a: &ComplexMatrix) -> Result<Schur, MatrixError> {
    let s = schur_internal(a)?;
    if !s.converged {
        return Err(MatrixError::NoConvergence(QR_MAX_ITER_PER_DIM * a.rows()));
    }
    Ok(s)
}

/// General complex eigendecomposition. On iteration-budget exhaustion the
/// partial result is returned with `converged = false`.
pub fn gen_eig(a: &ComplexMatrix) -> Result<EigenDecomposition, MatrixError> {
    let schur = schur_internal(a)?;
    Ok(eigen_from_schur(&schur).0)
}

/// Eigenvalues/eigenvectors from a Schur factorization. Also returns the
/// permutation mapping sorted eigenvalue index -> T diagonal position.
pub fn eigen_from_schur(schur: &Schur) -> (EigenDecomposition, Vec<usize>) {
    let n = schur.t.rows();
    let t = &schur.t;
    let scale = t.fro_norm().max(f64::MIN_POSITIVE);
    let smallnum = f64::EPSILON * scale;

    let mut vectors = ComplexMatrix::zeros(n, n);
    for k in 0..n {
        let lambda = t[(k, k)];
        let mut y = vec![Complex64::ZERO; n];
        y[k] = Complex64::ONE;
        for i in (0..k).rev() {
            let mut acc = Complex64::ZERO;
            for j in i + 1..=k {
                acc += t[(i, j)] * y[j];
            }
            let mut den = t[(i, i)] - lambda;
            if den.norm() < smallnum {
                den = Complex64::new(smallnum, 0.0);
            }
            y[i] = -acc / den;
            // Rescale if the defective-case guard inflates the solution.
            if y[i].norm() > 1e250 {
                let inv = 1.0 / y[i].norm();
                for z in y.iter_mut() {
                    *z *= inv;
                }
            }
        }
        let mut v = schur.q.mul_vec(&y);
        normalize(&mut v);
        vectors.set_col(k, &v);
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        let (a, b) = (t[(i, i)], t[(j, j)]);
        a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im))
    });
    let eigenvalues: Vec<Complex64> = order.iter().map(|&i| t[(i, i)]).collect();
    let right_vectors = ComplexMatrix::from_fn(n, n, |i, j| vectors[(i, order[j])]);
    (
        EigenDecomposition { eigenvalues, right_vectors, converged: schur.converged },
        order,
    )
}

// ── Schur reordering ────────────────────────────────────────────────

/// Swap the diagonal entries at positions (i, i+1) of T by a unitary
/// similarity, updating Q.
fn swap_adjacent(t: &mut ComplexMatrix, q: &mut ComplexMatrix, i: usize) {
    let n = t.rows();
    let a = t[(i, i)];
    let b = t[(i, i + 1)];
    let c = t[(i + 1, i + 1)];
    // First column of W spans the eigenvector of [[a, b], [0, c]] for c.
    let v0 = b;
    let v1 = c - a;
    let r = (v0.norm_sqr() + v1.norm_sqr()).sqrt();
    if r <= 1e-300 {
        return; // block is a scalar multiple of I; nothing to swap
    }
    let w00 = v0 / r;
    let w10 = v1 / r;
    let w01 = -w10.conj();
    let w11 = w00.conj();
    // Rows i, i+1 <- W^H * rows.
    for j in 0..n {
        let (x, y) = (t[(i, j)], t[(i + 1, j)]);
        t[(i, j)] = w00.conj() * x + w10.conj() * y;
        t[(i + 1, j)] = w01.conj() * x + w11.conj() * y;
    }
    // Columns i, i+1 <- columns * W.
    for mat in [&mut *t, q] {
        for row in 0..n {
            let (x, y) = (mat[(row, i)], mat[(row, i + 1)]);
            mat[(row, i)] = x * w00 + y * w10;
            mat[(row, i + 1)] = x * w01 + y * w11;
        }
    }
    t[(i + 1, i)] = Complex64::ZERO;
}

/// Move the selected diagonal positions of T to the leading block via
/// adjacent swaps, preserving relative order. Errors with
/// [`MatrixError::InseparableCluster`] when a swap would have to pass a
/// selected eigenvalue through a numerically equal unselected one.
pub fn reorder_schur(
    q: &ComplexMatrix,
    t: &ComplexMatrix,
    selection: &[usize],
) -> Result<(ComplexMatrix, ComplexMatrix), MatrixError> {
    let n = t.require_square()?;
    let mut selected = vec![false; n];
    for &idx in selection {
        if idx >= n {
            return Err(MatrixError::DimensionMismatch(format!(
                "selection index {idx} out of range for dimension {n}"
            )));
        }
        selected[idx] = true;
    }
    let mut q = q.clone();
    let mut t = t.clone();
    let scale = (0..n).map(|i| t[(i, i)].norm()).fold(1.0_f64, f64::max);
    let sep_tol = CLUSTER_TOL * scale;

    let mut front = 0usize;
    for pos in 0..n {
        if !selected[pos] {
            continue;
        }
        let mut p = pos;
        while p > front {
            let gap = (t[(p - 1, p - 1)] - t[(p, p)]).norm();
            if gap <= sep_tol {
                return Err(MatrixError::InseparableCluster { gap, tol: sep_tol });
            }
            swap_adjacent(&mut t, &mut q, p - 1);
            selected.swap(p - 1, p);
            p -= 1;
        }
        front += 1;
    }
    Ok((q, t))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::dot;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn random_matrix(n: usize, rng: &mut ChaCha8Rng) -> ComplexMatrix {
        ComplexMatrix::from_fn(n, n, |_, _| {
            c(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))
        })
    }

    fn unitary_deviation(u: &ComplexMatrix) -> f64 {
        (&(&u.adjoint() * u) - &ComplexMatrix::identity(u.rows())).fro_norm()
    }

    #[test]
    fn herm_eig_pauli_x() {
        let sx = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let (vals, v) = herm_eig(&sx).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14);
        assert!((vals[1] - 1.0).abs() < 1e-14);
        assert!(unitary_deviation(&v) < 1e-12);
    }

    #[test]
    fn herm_eig_identity_three() {
        let (vals, v) = herm_eig(&ComplexMatrix::identity(3)).unwrap();
        assert_eq!(vals, vec![1.0, 1.0, 1.0]);
        assert!((&v - &ComplexMatrix::identity(3)).fro_norm() < 1e-12);
    }

    #[test]
    fn herm_eig_signature_diag() {
        let g = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let (vals, _) = herm_eig(&g).unwrap();
        assert_eq!(vals, vec![-1.0, 1.0, 1.0]);
    }

    #[test]
    fn herm_eig_reconstructs_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in [2usize, 5, 9, 20] {
            let a = random_matrix(n, &mut rng).hermitian_part();
            let (vals, v) = herm_eig(&a).unwrap();
            let lam = ComplexMatrix::diagonal(&vals.iter().map(|&x| c(x, 0.0)).collect::<Vec<_>>());
            let rec = &(&v * &lam) * &v.adjoint();
            let scale = a.fro_norm().max(1.0);
            assert!((&rec - &a).fro_norm() <= 1e-10 * scale, "n={n}");
            assert!(unitary_deviation(&v) <= 1e-10);
        }
    }

    #[test]
    fn herm_eig_rejects_non_hermitian() {
        let a = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![0.0, 0.0]]);
        assert!(matches!(herm_eig(&a), Err(MatrixError::NotHermitian { .. })));
    }

    #[test]
    fn inertia_counts() {
        let g = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let i = inertia_of(&g, 1e-12).unwrap();
        assert_eq!(i, Inertia { n_positive: 2, n_negative: 1, n_zero: 0 });

        // Antidiagonal ones, M = 5: eigenvalues +1 (x3) and -1 (x2).
        let m = 5;
        let anti = ComplexMatrix::from_fn(m, m, |i, j| {
            if i + j == m - 1 { Complex64::ONE } else { Complex64::ZERO }
        });
        let i = inertia_of(&anti, 1e-12).unwrap();
        assert_eq!(i, Inertia { n_positive: 3, n_negative: 2, n_zero: 0 });

        let z = ComplexMatrix::zeros(2, 2);
        let i = inertia_of(&z, 1e-12).unwrap();
        assert_eq!(i, Inertia { n_positive: 0, n_negative: 0, n_zero: 2 });
    }

    #[test]
    fn gen_eig_qubit_closed_form() {
        // [[-i g, k], [k, i g]] with g = 0.5, k = 1: eigenvalues ±sqrt(k²-g²).
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.0, -0.5), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 0.5)],
        ]);
        let e = gen_eig(&h).unwrap();
        assert!(e.converged);
        let expected = (1.0_f64 - 0.25).sqrt();
        assert!((e.eigenvalues[0] - c(-expected, 0.0)).norm() < 1e-12);
        assert!((e.eigenvalues[1] - c(expected, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn gen_eig_diagonal_passthrough() {
        let h = ComplexMatrix::diagonal(&[c(2.0, 0.0), c(3.0, 1.0)]);
        let e = gen_eig(&h).unwrap();
        assert!((e.eigenvalues[0] - c(2.0, 0.0)).norm() < 1e-14);
        assert!((e.eigenvalues[1] - c(3.0, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn gen_eig_jordan_block_parallel_vectors() {
        let h = ComplexMatrix::from_real_rows(&[vec![5.0, 1.0], vec![0.0, 5.0]]);
        let e = gen_eig(&h).unwrap();
        assert!((e.eigenvalues[0] - c(5.0, 0.0)).norm() < 1e-7);
        assert!((e.eigenvalues[1] - c(5.0, 0.0)).norm() < 1e-7);
        let v0 = e.right_vectors.col(0);
        let v1 = e.right_vectors.col(1);
        let overlap = dot(&v0, &v1).norm();
        assert!(overlap > 1.0 - 1e-6, "vectors should be numerically parallel, overlap {overlap}");
    }

    #[test]
    fn gen_eig_residuals_random_up_to_50() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for n in [2usize, 3, 8, 17, 50] {
            let a = random_matrix(n, &mut rng);
            let e = gen_eig(&a).unwrap();
            assert!(e.converged, "n={n}");
            let scale = a.fro_norm();
            for k in 0..n {
                let v = e.right_vectors.col(k);
                let av = a.mul_vec(&v);
                let residual: f64 = av
                    .iter()
                    .zip(&v)
                    .map(|(x, y)| (x - e.eigenvalues[k] * y).norm_sqr())
                    .sum::<f64>()
                    .sqrt();
                assert!(residual <= 1e-8 * scale, "n={n} k={k} residual {residual:e}");
                assert!((crate::matrix::vec_norm(&v) - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn gen_eig_matches_herm_eig_on_hermitian() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for n in [3usize, 7, 12] {
            let a = random_matrix(n, &mut rng).hermitian_part();
            let (hv, _) = herm_eig(&a).unwrap();
            let e = gen_eig(&a).unwrap();
            for (x, y) in hv.iter().zip(&e.eigenvalues) {
                assert!((y - c(*x, 0.0)).norm() < 1e-8 * a.fro_norm().max(1.0));
            }
        }
    }

    #[test]
    fn schur_reconstructs_and_matches_gen_eig() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let a = random_matrix(4, &mut rng);
        let s = schur_decompose(&a).unwrap();
        let rec = &(&s.q * &s.t) * &s.q.adjoint();
        assert!((&rec - &a).fro_norm() <= 1e-10 * a.fro_norm());
        assert!(unitary_deviation(&s.q) <= 1e-10);
        // Diagonal of T equals the spectrum as a multiset.
        let mut diag: Vec<Complex64> = (0..4).map(|i| s.t[(i, i)]).collect();
        diag.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
        let e = gen_eig(&a).unwrap();
        for (x, y) in diag.iter().zip(&e.eigenvalues) {
            assert!((x - y).norm() < 1e-8);
        }
    }

    #[test]
    fn schur_hermitian_gives_diagonal_t() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = random_matrix(5, &mut rng).hermitian_part();
        let s = schur_decompose(&a).unwrap();
        let mut offdiag = 0.0_f64;
        for i in 0..5 {
            for j in 0..5 {
                if i != j {
                    offdiag += s.t[(i, j)].norm_sqr();
                }
            }
        }
        assert!(offdiag.sqrt() <= 1e-9 * a.fro_norm());
    }

    #[test]
    fn schur_upper_triangular_passthrough() {
        let a = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(2.0, 1.0)],
            vec![c(0.0, 0.0), c(3.0, 0.0)],
        ]);
        let s = schur_decompose(&a).unwrap();
        let rec = &(&s.q * &s.t) * &s.q.adjoint();
        assert!((&rec - &a).fro_norm() <= 1e-12 * a.fro_norm());
    }

    #[test]
    fn reorder_moves_selected_to_front() {
        let t = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let q = ComplexMatrix::identity(3);
        let (q2, t2) = reorder_schur(&q, &t, &[2]).unwrap();
        assert!((t2[(0, 0)] - c(3.0, 0.0)).norm() < 1e-12);
        let rec = &(&q2 * &t2) * &q2.adjoint();
        assert!((&rec - &t).fro_norm() < 1e-12);
    }

    #[test]
    fn reorder_select_all_is_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let a = random_matrix(4, &mut rng);
        let s = schur_decompose(&a).unwrap();
        let (q2, t2) = reorder_schur(&s.q, &s.t, &[0, 1, 2, 3]).unwrap();
        let rec = &(&q2 * &t2) * &q2.adjoint();
        assert!((&rec - &a).fro_norm() <= 1e-9 * a.fro_norm());
    }

    #[test]
    fn reorder_random_preserves_similarity_and_leads_cluster() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let a = random_matrix(6, &mut rng);
        let s = schur_decompose(&a).unwrap();
        let (q2, t2) = reorder_schur(&s.q, &s.t, &[3, 5]).unwrap();
        let rec = &(&q2 * &t2) * &q2.adjoint();
        assert!((&rec - &a).fro_norm() <= 1e-9 * a.fro_norm());
        let lead: Vec<Complex64> = vec![t2[(0, 0)], t2[(1, 1)]];
        for expect in [s.t[(3, 3)], s.t[(5, 5)]] {
            assert!(
                lead.iter().any(|z| (z - expect).norm() < 1e-8),
                "expected {expect} in leading block"
            );
        }
        assert!(unitary_deviation(&q2) <= 1e-10);
    }

    #[test]
    fn reorder_refuses_to_split_degenerate_pair() {
        let t = ComplexMatrix::from_rows(&[
            vec![c(5.0, 0.0), c(1.0, 0.0)],
            vec![c(0.0, 0.0), c(5.0, 0.0)],
        ]);
        let q = ComplexMatrix::identity(2);
        assert!(matches!(
            reorder_schur(&q, &t, &[1]),
            Err(MatrixError::InseparableCluster { .. })
        ));
    }
}
