//! Local exploration around a symmetry-breaking point, the zeroth Chern
//! number of an exceptional locus, and the symmetry-commutation stability
//! check.

use std::collections::BTreeSet;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::eig::{herm_eig, inertia_of};
use crate::error::KreinError;
use crate::matrix::ComplexMatrix;
use crate::tolerances::Tolerances;

use super::{classify_kind, classify_spectrum_with, Cluster, KreinKind};

/// Signatures seen among strongly stable samples near a boundary point.
#[derive(Debug, Clone)]
pub struct ProbeOutcome {
    pub signatures: BTreeSet<String>,
    pub stable_samples: usize,
    pub total_samples: usize,
}

/// Sample the two-level displacement family around a degenerate
/// `H0 = [[l+a, eta2 b e^{i t}], [-eta1 b e^{-i t}, l-a]]` with
/// `G0 = diag(eta1, -eta2)` and collect the sub-signatures of the strongly
/// stable samples. Displacements draw the four slopes uniformly from
/// [-1, 1]; the phase and trace displacements are frozen at zero, which
/// does not restrict the reachable eigenvalue behavior.
pub fn boundary_probe(
    h0: &ComplexMatrix,
    g0: &ComplexMatrix,
    cluster: &Cluster,
    epsilon: f64,
    sample_count: usize,
    seed: u64,
) -> Result<ProbeOutcome, KreinError> {
    if h0.rows() != 2 || h0.cols() != 2 || g0.rows() != 2 || g0.cols() != 2 {
        return Err(KreinError::CanonicalFormRequired("H0 and G0 must be 2x2".into()));
    }
    if !(epsilon > 0.0 && epsilon <= 1e-2) {
        return Err(KreinError::InvalidArgument(format!(
            "epsilon must lie in (0, 1e-2], got {epsilon}"
        )));
    }
    let g_scale = g0.fro_norm();
    if g0[(0, 1)].norm() > 1e-10 * g_scale || g0[(1, 0)].norm() > 1e-10 * g_scale {
        return Err(KreinError::CanonicalFormRequired("G0 must be diagonal".into()));
    }
    let eta1 = g0[(0, 0)].re;
    let eta2 = -g0[(1, 1)].re;
    if !(eta1 > 0.0 && eta2 > 0.0) {
        return Err(KreinError::CanonicalFormRequired(
            "G0 must be diag(eta1, -eta2) with positive eta".into(),
        ));
    }

    let h_scale = h0.fro_norm().max(1.0);
    if h0[(0, 0)].im.abs() > 1e-10 * h_scale || h0[(1, 1)].im.abs() > 1e-10 * h_scale {
        return Err(KreinError::CanonicalFormRequired("diagonal of H0 must be real".into()));
    }
    let lambda = 0.5 * (h0[(0, 0)].re + h0[(1, 1)].re);
    let gain = 0.5 * (h0[(0, 0)].re - h0[(1, 1)].re);
    let coupling_mag = h0[(0, 1)].norm() / eta2;
    let theta = if coupling_mag > 1e-14 * h_scale {
        h0[(0, 1)].arg()
    } else {
        0.0
    };
    let expected_lower = -Complex64::from_polar(eta1 * coupling_mag, -theta);
    if (h0[(1, 0)] - expected_lower).norm() > 1e-8 * h_scale {
        return Err(KreinError::CanonicalFormRequired(
            "off-diagonal entries must satisfy h10 = -eta1 b e^{-i theta}".into(),
        ));
    }

    // The probe is anchored at a two-fold indefinite degeneracy.
    if cluster.multiplicity() != 2 {
        return Err(KreinError::UnsupportedMultiplicity(cluster.multiplicity()));
    }
    let tol = Tolerances::default();
    let (kind, _) = classify_kind(h0, g0, cluster, tol.kind_zero * g_scale)?;
    if kind != KreinKind::Indefinite {
        return Err(KreinError::NotIndefinite);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut signatures = BTreeSet::new();
    let mut stable = 0usize;
    for _ in 0..sample_count {
        let da: f64 = rng.random_range(-1.0..=1.0);
        let db: f64 = rng.random_range(-1.0..=1.0);
        let de1: f64 = rng.random_range(-1.0..=1.0);
        let de2: f64 = rng.random_range(-1.0..=1.0);
        let e1 = eta1 + epsilon * de1;
        let e2 = eta2 + epsilon * de2;
        let a = gain + epsilon * da;
        let b = coupling_mag + epsilon * db;
        let g = ComplexMatrix::diagonal(&[
            Complex64::new(e1, 0.0),
            Complex64::new(-e2, 0.0),
        ]);
        let h = ComplexMatrix::from_rows(&[
            vec![
                Complex64::new(lambda + a, 0.0),
                Complex64::from_polar(e2 * b, theta),
            ],
            vec![
                -Complex64::from_polar(e1 * b, -theta),
                Complex64::new(lambda - a, 0.0),
            ],
        ]);
        let verdict = classify_spectrum_with(&h, &g, &tol)?;
        if verdict.kgl_protected {
            stable += 1;
            if let Some(sig) = verdict.signature {
                signatures.insert(sig);
            }
        }
    }
    Ok(ProbeOutcome { signatures, stable_samples: stable, total_samples: sample_count })
}

/// Zeroth Chern number of the exceptional locus b² = a² in the two-level
/// family with G = diag(1, -1): the count of negative eigenvalues of the
/// plus-sector block H+ = -i s2 H s1 of the doubled Hermitian matrix.
/// Errors with [`KreinError::OnDiabolicPoint`] at a = 0.
pub fn chern_zero(a: f64, b: f64) -> Result<usize, KreinError> {
    if a == 0.0 {
        return Err(KreinError::OnDiabolicPoint);
    }
    let h = ComplexMatrix::from_real_rows(&[vec![a, b], vec![-b, -a]]);
    let sigma1 = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    let sigma2 = ComplexMatrix::from_rows(&[
        vec![Complex64::ZERO, Complex64::new(0.0, -1.0)],
        vec![Complex64::new(0.0, 1.0), Complex64::ZERO],
    ]);
    let h_plus = (&(&sigma2 * &h) * &sigma1).scale(Complex64::new(0.0, -1.0));
    let (values, _) = herm_eig(&h_plus)?;
    let zero_tol = 1e-12 * (a.abs() + b.abs()).max(1.0);
    Ok(values.iter().filter(|&&v| v < -zero_tol).count())
}

/// Verdict of the symmetry-commutation check.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymmetryVerdict {
    /// G commutes with every group element (and the irrep restriction, if
    /// given, is definite): symmetry-induced degeneracies stay on the real
    /// axis when the symmetry is explicitly broken.
    StableDegeneracy,
    /// Some commutator is large or the irrep restriction is indefinite:
    /// the degeneracy can break at infinitesimal non-Hermiticity.
    PotentiallyThresholdless,
}

/// Check whether G commutes with a unitary symmetry representation, and
/// optionally whether its restriction to an irrep subspace is definite.
/// Returns the verdict together with the commutator norms.
pub fn symmetry_stability_check(
    g: &ComplexMatrix,
    unitaries: &[ComplexMatrix],
    irrep_basis: Option<&ComplexMatrix>,
) -> Result<(SymmetryVerdict, Vec<f64>), KreinError> {
    let n = g.require_square()?;
    let identity = ComplexMatrix::identity(n);
    let mut norms = Vec::with_capacity(unitaries.len());
    let g_norm = g.fro_norm();
    let mut stable = true;
    for (index, u) in unitaries.iter().enumerate() {
        if u.rows() != n || u.cols() != n {
            return Err(KreinError::InvalidArgument(format!(
                "operator {index} has shape {}x{}, expected {n}x{n}",
                u.rows(),
                u.cols()
            )));
        }
        let deviation = (&(&u.adjoint() * u) - &identity).fro_norm();
        if deviation > 1e-10 {
            return Err(KreinError::NotUnitary { index, deviation });
        }
        let commutator = (&(g * u) - &(u * g)).fro_norm();
        if commutator > 1e-8 * g_norm {
            stable = false;
        }
        norms.push(commutator);
    }
    if stable {
        if let Some(basis) = irrep_basis {
            let restriction = (&basis.adjoint() * &(g * basis)).hermitian_part();
            let inertia = inertia_of(&restriction, 1e-7 * g_norm)?;
            if !inertia.is_definite() {
                stable = false;
            }
        }
    }
    let verdict = if stable {
        SymmetryVerdict::StableDegeneracy
    } else {
        SymmetryVerdict::PotentiallyThresholdless
    };
    Ok((verdict, norms))
}
