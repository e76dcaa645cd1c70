//! Construction of pseudo-Hermiticity-breaking perturbation families.
//!
//! Given a two-fold real cluster of indefinite kind, builds the explicit
//! one-parameter family H(x) with H(0) = H whose cluster eigenvalues move
//! to `lambda e^{±ix}` while the rest of the spectrum stays put and every
//! H(x) remains intertwined by the same G. Both the diagonalizable (DP)
//! and defective (EP) sub-cases are covered.

use num_complex::Complex64;

use crate::eig::{herm_eig, reorder_schur, schur_decompose};
use crate::error::KreinError;
use crate::intertwiner::verify_intertwiner;
use crate::matrix::{dot, ComplexMatrix, Lu};
use crate::tolerances::Tolerances;

use super::{spectral_scale, Cluster};

enum FamilyKind {
    /// Diagonalizable cluster; eta are the opposite-sign diagonal values
    /// of the G-restriction in the biorthonormal frame.
    Diabolic { eta1: f64, eta2: f64 },
    /// Defective cluster in a Jordan frame; eta1 = <R1|G|R2>, eta2 = <R2|G|R2>.
    Exceptional { eta1: f64, eta2: f64 },
}

/// One-parameter breaking family around a fixed pseudo-Hermitian matrix.
pub struct BreakingFamily {
    base: ComplexMatrix,
    g: ComplexMatrix,
    g_lu: Lu,
    /// Right (n x 2) and left (n x 2) cluster bases with L^H R = I.
    right: ComplexMatrix,
    left: ComplexMatrix,
    /// Actual cluster block L^H H R; carries the numerical resolution of
    /// the degeneracy that the ideal model block removes.
    actual_block: ComplexMatrix,
    lambda: f64,
    kind: FamilyKind,
}

impl BreakingFamily {
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn is_exceptional(&self) -> bool {
        matches!(self.kind, FamilyKind::Exceptional { .. })
    }

    /// Cluster block of the model family in the (R, L) frame.
    fn model_block(&self, x: f64) -> ComplexMatrix {
        let l = Complex64::new(self.lambda, 0.0);
        let (c, s) = (x.cos(), x.sin());
        match self.kind {
            FamilyKind::Diabolic { eta1, eta2 } => {
                let root = (eta1 * eta2).abs().sqrt();
                ComplexMatrix::from_rows(&[
                    vec![l * c, l * (eta2 * s / root)],
                    vec![l * (eta1 * s / root), l * c],
                ])
            }
            FamilyKind::Exceptional { eta1, eta2 } => {
                let phase_minus = Complex64::new(0.0, -x).exp();
                let phase_plus = Complex64::new(0.0, x).exp();
                let coupling = Complex64::new(c, -self.lambda * eta2 * s / eta1);
                ComplexMatrix::from_rows(&[
                    vec![l * phase_minus, coupling],
                    vec![Complex64::ZERO, l * phase_plus],
                ])
            }
        }
    }

    /// The family member at parameter x; `at(0.0)` returns the base matrix
    /// exactly. For x != 0 the cluster block is replaced by the ideal model
    /// block, and the update is Hermitized against G so that every member
    /// stays pseudo-Hermitian with respect to G to the accuracy of the input.
    pub fn at(&self, x: f64) -> ComplexMatrix {
        if x == 0.0 {
            return self.base.clone();
        }
        let delta = &self.model_block(x) - &self.actual_block;
        let dh = &(&self.right * &delta) * &self.left.adjoint();
        let s = (&self.g * &dh).hermitian_part();
        &self.base + &self.g_lu.solve(&s)
    }
}

/// Build the breaking family for a two-fold real cluster of indefinite
/// kind. Errors: `NotIndefinite` when the cluster kind is definite,
/// `UnsupportedMultiplicity` for clusters larger than two.
pub fn construct_breaking_perturbation(
    h: &ComplexMatrix,
    g: &ComplexMatrix,
    cluster: &Cluster,
) -> Result<BreakingFamily, KreinError> {
    let tol = Tolerances::default();
    let n = h.require_square()?;
    let residual = verify_intertwiner(h, g)
        .map_err(|e| KreinError::InvalidArgument(e.to_string()))?;
    if residual > tol.intertwiner {
        return Err(KreinError::NotAnIntertwiner { residual, tol: tol.intertwiner });
    }
    let m = cluster.multiplicity();
    if m != 2 {
        return Err(KreinError::UnsupportedMultiplicity(m));
    }

    let schur = schur_decompose(h)?;
    let diag: Vec<Complex64> = (0..n).map(|i| schur.t[(i, i)]).collect();
    let scale = spectral_scale(&diag);
    if cluster.representative.im.abs() > tol.real * scale {
        return Err(KreinError::ComplexCluster);
    }
    let lambda = cluster.representative.re;

    // Match the cluster members to diagonal positions of T.
    let mut selection = Vec::with_capacity(2);
    let mut used = vec![false; n];
    for _ in 0..2 {
        let mut best = usize::MAX;
        let mut best_d = f64::INFINITY;
        for (i, &d) in diag.iter().enumerate() {
            if used[i] {
                continue;
            }
            let dist = (d - cluster.representative).norm();
            if dist < best_d {
                best_d = dist;
                best = i;
            }
        }
        if best_d > tol.cluster * scale * 10.0 {
            return Err(KreinError::InvalidArgument(
                "cluster representative does not match the spectrum".into(),
            ));
        }
        used[best] = true;
        selection.push(best);
    }

    let (q, t) = reorder_schur(&schur.q, &schur.t, &selection)?;

    // Complement root subspace: solve T11 Y - Y T22 = -T12, then
    // B = Q [[I, Y], [0, I]] block-diagonalizes H and B^{-1} is explicit.
    let mut right = q.col_range(0, 2);
    let mut left = if n > 2 {
        let t12 = ComplexMatrix::from_fn(2, n - 2, |i, j| t[(i, 2 + j)]);
        let y = solve_block_sylvester(&t, &t12, n)?;
        let q_rest = q.col_range(2, n);
        &right - &(&q_rest * &y.adjoint())
    } else {
        right.clone()
    };

    // Restriction of G in the biorthonormal frame.
    let w = (&right.adjoint() * &(g * &right)).hermitian_part();
    let zero_tol = tol.kind_zero * g.fro_norm();

    let t01 = t[(0, 1)];
    let geo_defective = {
        // Defect test on M = T11 - lambda I: a diabolic block is zero up to
        // solver noise, a defective one keeps an O(1) coupling while its
        // smallest singular value collapses.
        let m22 = ComplexMatrix::from_rows(&[
            vec![t[(0, 0)] - Complex64::new(lambda, 0.0), t01],
            vec![Complex64::ZERO, t[(1, 1)] - Complex64::new(lambda, 0.0)],
        ]);
        let sv = crate::svd::svd(&m22)?.singular_values;
        let floor = tol.rank * h.fro_norm().max(1.0);
        sv[0] > floor && (sv[1] <= floor || sv[1] <= 1e-3 * sv[0])
    };

    let kind = if geo_defective {
        // Jordan-normalize: R2 -> R2 / t01, L2 -> L2 * conj(t01).
        for i in 0..n {
            right[(i, 1)] /= t01;
            left[(i, 1)] = left[(i, 1)] * t01.conj();
        }
        // A defective real cluster is indefinite whenever the restriction
        // straddles zero, i.e. det W < 0.
        let det_w = (w[(0, 0)] * w[(1, 1)] - w[(0, 1)] * w[(1, 0)]).re;
        if det_w >= 0.0 {
            return Err(KreinError::NotIndefinite);
        }
        let gr2 = g.mul_vec(&right.col(1));
        let eta1 = dot(&right.col(0), &gr2).re;
        let eta2 = dot(&right.col(1), &gr2).re;
        if eta1.abs() <= zero_tol {
            return Err(KreinError::InvalidArgument(
                "defective cluster has vanishing <R1|G|R2>; G is singular on the cluster".into(),
            ));
        }
        FamilyKind::Exceptional { eta1, eta2 }
    } else {
        let (vals, vecs) = herm_eig(&w)?;
        if !(vals[0] < -zero_tol && vals[1] > zero_tol) {
            return Err(KreinError::NotIndefinite);
        }
        right = &right * &vecs;
        left = &left * &vecs;
        FamilyKind::Diabolic { eta1: vals[0], eta2: vals[1] }
    };

    let actual_block = &left.adjoint() * &(h * &right);
    Ok(BreakingFamily {
        base: h.clone(),
        g: g.clone(),
        g_lu: g.lu().map_err(|_| KreinError::SingularG)?,
        right,
        left,
        actual_block,
        lambda,
        kind,
    })
}

/// Solve T11 Y - Y T22 = -T12 for the leading 2x2 block of a reordered
/// triangular T (columns of Y in order; T22 upper triangular).
fn solve_block_sylvester(
    t: &ComplexMatrix,
    t12: &ComplexMatrix,
    n: usize,
) -> Result<ComplexMatrix, KreinError> {
    let m = n - 2;
    let mut y = ComplexMatrix::zeros(2, m);
    for j in 0..m {
        let mu = t[(2 + j, 2 + j)];
        let mut rhs = [-t12[(0, j)], -t12[(1, j)]];
        for i in 0..j {
            rhs[0] -= y[(0, i)] * t[(2 + i, 2 + j)];
            rhs[1] -= y[(1, i)] * t[(2 + i, 2 + j)];
        }
        let a = t[(0, 0)] - mu;
        let b = t[(0, 1)];
        let c = t[(1, 1)] - mu;
        if a.norm() <= 1e-300 || c.norm() <= 1e-300 {
            return Err(KreinError::InvalidArgument(
                "cluster is not separated from the rest of the spectrum".into(),
            ));
        }
        let y1 = rhs[1] / c;
        let y0 = (rhs[0] - b * y1) / a;
        y[(0, j)] = y0;
        y[(1, j)] = y1;
    }
    Ok(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::gen_eig;
    use crate::krein::cluster_eigenvalues;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn schematic_h(x: f64, y: f64) -> ComplexMatrix {
        let s = 0.5 * (std::f64::consts::PI * y / 8.0).sin();
        ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(y, 0.0), c(0.0, x)],
            vec![c(y, 0.0), c(1.5, 0.0), c(0.0, s)],
            vec![c(0.0, x), c(0.0, s), c(9.0, 0.0)],
        ])
    }

    fn schematic_g() -> ComplexMatrix {
        ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)])
    }

    fn two_fold_cluster(h: &ComplexMatrix) -> Cluster {
        let e = gen_eig(h).unwrap();
        cluster_eigenvalues(&e.eigenvalues, 1e-7)
            .into_iter()
            .find(|cl| cl.multiplicity() == 2)
            .expect("two-fold cluster")
    }

    fn sorted_by_im(mut v: Vec<Complex64>) -> Vec<Complex64> {
        v.sort_by(|a, b| a.im.total_cmp(&b.im));
        v
    }

    #[test]
    fn diabolic_case_rotates_eigenvalues_exactly() {
        let h = ComplexMatrix::diagonal(&[c(5.0, 0.0), c(5.0, 0.0)]);
        let g = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let family = construct_breaking_perturbation(&h, &g, &two_fold_cluster(&h)).unwrap();
        assert!(!family.is_exceptional());

        assert_eq!(family.at(0.0), h);

        let x = 0.1;
        let hx = family.at(x);
        assert!(verify_intertwiner(&hx, &g).unwrap() <= 1e-12);
        let e = sorted_by_im(gen_eig(&hx).unwrap().eigenvalues);
        let expected = [c(5.0 * x.cos(), -5.0 * x.sin()), c(5.0 * x.cos(), 5.0 * x.sin())];
        assert!((e[0] - expected[0]).norm() < 1e-12, "{e:?}");
        assert!((e[1] - expected[1]).norm() < 1e-12);
    }

    #[test]
    fn exceptional_case_on_schematic_ep() {
        let h = schematic_h(4.0, 0.0);
        let g = schematic_g();
        let cluster = two_fold_cluster(&h);
        let family = construct_breaking_perturbation(&h, &g, &cluster).unwrap();
        assert!(family.is_exceptional());
        assert_eq!(family.at(0.0), h);

        let x = 0.05;
        let hx = family.at(x);
        assert!(verify_intertwiner(&hx, &g).unwrap() <= 1e-8);
        let mut eig = gen_eig(&hx).unwrap().eigenvalues;
        // The spectator eigenvalue at 1.5 stays put.
        let spectator_pos = eig
            .iter()
            .enumerate()
            .min_by(|a, b| (a.1 - c(1.5, 0.0)).norm().total_cmp(&(b.1 - c(1.5, 0.0)).norm()))
            .unwrap()
            .0;
        let spectator = eig.remove(spectator_pos);
        assert!((spectator - c(1.5, 0.0)).norm() <= 1e-8 * h.fro_norm());
        let pair = sorted_by_im(eig);
        let expected = [c(5.0 * x.cos(), -5.0 * x.sin()), c(5.0 * x.cos(), 5.0 * x.sin())];
        assert!((pair[0] - expected[0]).norm() < 1e-7, "{pair:?}");
        assert!((pair[1] - expected[1]).norm() < 1e-7);
    }

    #[test]
    fn breaking_family_is_nonreal_for_small_x() {
        let h = schematic_h(4.0, 0.0);
        let g = schematic_g();
        let family = construct_breaking_perturbation(&h, &g, &two_fold_cluster(&h)).unwrap();
        for x in [-0.1, -0.01, 0.01, 0.1] {
            let e = gen_eig(&family.at(x)).unwrap().eigenvalues;
            assert!(!super::super::all_real(&e, 1e-8), "x = {x} should break realness");
        }
    }

    #[test]
    fn rejects_definite_cluster_and_high_multiplicity() {
        // Same-kind diabolic collision: both members positive kind.
        let x = 15.0_f64.sqrt() / 2.0;
        let h = schematic_h(x, 0.0);
        let g = schematic_g();
        let cluster = two_fold_cluster(&h);
        assert!(matches!(
            construct_breaking_perturbation(&h, &g, &cluster),
            Err(KreinError::NotIndefinite)
        ));

        let h3 = ComplexMatrix::diagonal(&[c(5.0, 0.0); 3]);
        let g3 = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
        let e = gen_eig(&h3).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert!(matches!(
            construct_breaking_perturbation(&h3, &g3, &cl[0]),
            Err(KreinError::UnsupportedMultiplicity(3))
        ));
    }

    #[test]
    fn qubit_ep_breaks_into_conjugate_pair() {
        // Balanced two-level system at threshold: eigenvalue 0, defective.
        let h = ComplexMatrix::from_rows(&[
            vec![c(0.0, -1.0), c(1.0, 0.0)],
            vec![c(1.0, 0.0), c(0.0, 1.0)],
        ]);
        let g = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        let cluster = two_fold_cluster(&h);
        let family = construct_breaking_perturbation(&h, &g, &cluster).unwrap();
        assert!(family.is_exceptional());
        // lambda = 0: the rotated eigenvalues 0·e^{±ix} stay 0, but the family
        // still satisfies the intertwining relation for every x.
        let hx = family.at(0.3);
        assert!(verify_intertwiner(&hx, &g).unwrap() <= 1e-10);
    }
}
