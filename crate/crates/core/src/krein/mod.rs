//! Krein-kind classification of pseudo-Hermitian spectra.
//!
//! Every real eigenvalue of a pseudo-Hermitian `H` carries a kind given by
//! the sign behavior of `<v|G|v>` on its root subspace: positive, negative,
//! or indefinite. The kind is computed here as the inertia of `Q^H G Q`
//! with `Q` an orthonormal basis of the root subspace — exact and
//! basis-independent, where individual eigenvectors are ill-conditioned
//! near exceptional points. Real spectra are protected from
//! pseudo-Hermiticity breaking exactly when every eigenvalue is definite;
//! protected spectra get a signature, the ordered list of kinds.

mod breaking;
mod probe;

pub use breaking::{construct_breaking_perturbation, BreakingFamily};
pub use probe::{boundary_probe, chern_zero, symmetry_stability_check, ProbeOutcome, SymmetryVerdict};

use num_complex::Complex64;

use crate::eig::{eigen_from_schur, inertia_of, reorder_schur, schur_decompose, EigenDecomposition, Inertia, Schur};
use crate::error::KreinError;
use crate::intertwiner::verify_intertwiner;
use crate::matrix::ComplexMatrix;
use crate::svd::svd;
use crate::tolerances::Tolerances;

/// Kind of an eigenvalue cluster.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KreinKind {
    Positive,
    Negative,
    Indefinite,
    ComplexPaired,
}

impl KreinKind {
    pub fn is_definite(&self) -> bool {
        matches!(self, KreinKind::Positive | KreinKind::Negative)
    }

    pub fn label(&self) -> &'static str {
        match self {
            KreinKind::Positive => "positive",
            KreinKind::Negative => "negative",
            KreinKind::Indefinite => "indefinite",
            KreinKind::ComplexPaired => "complex",
        }
    }

    /// One-character code used in CSV columns: + - i c.
    pub fn code(&self) -> char {
        match self {
            KreinKind::Positive => '+',
            KreinKind::Negative => '-',
            KreinKind::Indefinite => 'i',
            KreinKind::ComplexPaired => 'c',
        }
    }
}

/// One degenerate group of eigenvalues.
#[derive(Debug, Clone)]
pub struct Cluster {
    /// Mean of the member eigenvalues.
    pub representative: Complex64,
    /// Indices into the (sorted) eigenvalue list.
    pub member_indices: Vec<usize>,
}

impl Cluster {
    pub fn multiplicity(&self) -> usize {
        self.member_indices.len()
    }
}

/// A classified cluster.
#[derive(Debug, Clone)]
pub struct EigenCluster {
    pub representative: Complex64,
    pub member_indices: Vec<usize>,
    pub algebraic_multiplicity: usize,
    pub geometric_multiplicity: usize,
    pub kind: KreinKind,
    pub g_restriction_inertia: Inertia,
}

impl EigenCluster {
    pub fn is_exceptional(&self) -> bool {
        self.geometric_multiplicity < self.algebraic_multiplicity
    }
}

/// Full verdict for a pair (H, G).
#[derive(Debug, Clone)]
pub struct SpectralClassification {
    pub clusters: Vec<EigenCluster>,
    /// Eigenvalues sorted by (Re, Im); cluster members index into this.
    pub eigenvalues: Vec<Complex64>,
    pub all_real: bool,
    pub kgl_protected: bool,
    /// Present iff protected: '+'/'-' per eigenvalue, ascending order.
    pub signature: Option<String>,
    pub positive_kind_count: usize,
    pub negative_kind_count: usize,
}

impl SpectralClassification {
    /// Kind of each eigenvalue, aligned with `eigenvalues`.
    pub fn kinds(&self) -> Vec<KreinKind> {
        let mut kinds = vec![KreinKind::ComplexPaired; self.eigenvalues.len()];
        for cluster in &self.clusters {
            for &i in &cluster.member_indices {
                kinds[i] = cluster.kind;
            }
        }
        kinds
    }

    /// First real cluster with multiplicity >= 2, if any.
    pub fn degenerate_real_cluster(&self) -> Option<&EigenCluster> {
        self.clusters.iter().find(|c| {
            c.algebraic_multiplicity >= 2 && c.kind != KreinKind::ComplexPaired
        })
    }
}

/// Spectral scale used by relative tolerances: max(1, max |lambda|).
pub fn spectral_scale(eigenvalues: &[Complex64]) -> f64 {
    eigenvalues.iter().map(|z| z.norm()).fold(1.0_f64, f64::max)
}

/// True when every eigenvalue is real within `real_tol` times the scale.
pub fn all_real(eigenvalues: &[Complex64], real_tol: f64) -> bool {
    let scale = spectral_scale(eigenvalues);
    eigenvalues.iter().all(|z| z.im.abs() <= real_tol * scale)
}

/// Group eigenvalues by transitive closure of pairwise distance
/// `<= cluster_tol * scale`. Clusters are disjoint, exhaustive, and sorted
/// by representative (Re, then Im).
pub fn cluster_eigenvalues(eigenvalues: &[Complex64], cluster_tol: f64) -> Vec<Cluster> {
    let n = eigenvalues.len();
    let scale = spectral_scale(eigenvalues);
    let limit = cluster_tol * scale;

    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        let mut root = i;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = i;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    for i in 0..n {
        for j in i + 1..n {
            if (eigenvalues[i] - eigenvalues[j]).norm() <= limit {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }

    let mut groups: std::collections::BTreeMap<usize, Vec<usize>> = std::collections::BTreeMap::new();
    for i in 0..n {
        let root = find(&mut parent, i);
        groups.entry(root).or_default().push(i);
    }
    let mut clusters: Vec<Cluster> = groups
        .into_values()
        .map(|mut members| {
            members.sort_unstable();
            let sum: Complex64 = members.iter().map(|&i| eigenvalues[i]).sum();
            Cluster { representative: sum / members.len() as f64, member_indices: members }
        })
        .collect();
    clusters.sort_by(|a, b| {
        a.representative
            .re
            .total_cmp(&b.representative.re)
            .then(a.representative.im.total_cmp(&b.representative.im))
    });
    clusters
}

// ── shared Schur workspace ──────────────────────────────────────────

struct Workspace {
    schur: Schur,
    eig: EigenDecomposition,
    /// sorted eigenvalue index -> diagonal position in T
    perm: Vec<usize>,
    scale: f64,
}

fn workspace(h: &ComplexMatrix) -> Result<Workspace, KreinError> {
    let schur = schur_decompose(h)?;
    let (eig, perm) = eigen_from_schur(&schur);
    let scale = spectral_scale(&eig.eigenvalues);
    Ok(Workspace { schur, eig, perm, scale })
}

/// Orthonormal basis of the root subspace of the given members (sorted
/// eigenvalue indices), via Schur reordering.
fn root_subspace_from(ws: &Workspace, members: &[usize]) -> Result<ComplexMatrix, KreinError> {
    let selection: Vec<usize> = members.iter().map(|&i| ws.perm[i]).collect();
    let (q, _t) = reorder_schur(&ws.schur.q, &ws.schur.t, &selection)?;
    Ok(q.col_range(0, members.len()))
}

/// Orthonormal columns spanning the root subspace of a cluster.
///
/// The span is invariant under H: `||(I - QQ^H) H Q|| <= 1e-8 ||H||`.
pub fn root_subspace_basis(h: &ComplexMatrix, cluster: &Cluster) -> Result<ComplexMatrix, KreinError> {
    let ws = workspace(h)?;
    root_subspace_from(&ws, &cluster.member_indices)
}

fn geometric_multiplicity(
    h: &ComplexMatrix,
    q: &ComplexMatrix,
    representative: Complex64,
    rank_tol: f64,
) -> Result<usize, KreinError> {
    let m = q.cols();
    let restricted = &(&q.adjoint() * &(h * q))
        - &ComplexMatrix::identity(m).scale(representative);
    let s = svd(&restricted)?;
    // Zero detection is relative to the scale of H itself: the restriction
    // of an exactly diabolic cluster is the zero matrix up to solver noise.
    let threshold = rank_tol * h.fro_norm().max(1.0);
    Ok(s.singular_values.iter().filter(|&&x| x <= threshold).count())
}

/// Algebraic and geometric multiplicity of a cluster.
pub fn multiplicities(h: &ComplexMatrix, cluster: &Cluster) -> Result<(usize, usize), KreinError> {
    let tol = Tolerances::default();
    let ws = workspace(h)?;
    let q = root_subspace_from(&ws, &cluster.member_indices)?;
    let geo = geometric_multiplicity(h, &q, cluster.representative, tol.rank)?;
    Ok((cluster.multiplicity(), geo))
}

fn kind_from_inertia(
    restriction: &ComplexMatrix,
    multiplicity: usize,
    zero_tol: f64,
) -> (KreinKind, Inertia) {
    let inertia = inertia_of(restriction, zero_tol).expect("restriction is Hermitian by construction");
    if multiplicity == 1 && inertia.n_zero == 1 {
        // A nondegenerate real eigenvalue is never indefinite; near the
        // zero threshold the sign of the 1x1 restriction still decides.
        let value = restriction[(0, 0)].re;
        if value > 0.0 {
            return (KreinKind::Positive, Inertia { n_positive: 1, n_negative: 0, n_zero: 0 });
        } else if value < 0.0 {
            return (KreinKind::Negative, Inertia { n_positive: 0, n_negative: 1, n_zero: 0 });
        }
        return (KreinKind::Indefinite, inertia);
    }
    let kind = if inertia.n_positive == multiplicity {
        KreinKind::Positive
    } else if inertia.n_negative == multiplicity {
        KreinKind::Negative
    } else {
        KreinKind::Indefinite
    };
    (kind, inertia)
}

/// Kind of a real cluster from the inertia of `Q^H G Q`.
///
/// `zero_tol` is the absolute eigenvalue threshold treated as zero;
/// the conventional choice is `1e-7 * ||G||`.
pub fn classify_kind(
    h: &ComplexMatrix,
    g: &ComplexMatrix,
    cluster: &Cluster,
    zero_tol: f64,
) -> Result<(KreinKind, Inertia), KreinError> {
    let tol = Tolerances::default();
    let residual = verify_intertwiner(h, g)
        .map_err(|e| KreinError::InvalidArgument(e.to_string()))?;
    if residual > tol.intertwiner {
        return Err(KreinError::NotAnIntertwiner { residual, tol: tol.intertwiner });
    }
    let ws = workspace(h)?;
    if cluster.representative.im.abs() > tol.real * ws.scale {
        return Err(KreinError::ComplexCluster);
    }
    let q = root_subspace_from(&ws, &cluster.member_indices)?;
    let restriction = (&q.adjoint() * &(g * &q)).hermitian_part();
    Ok(kind_from_inertia(&restriction, cluster.multiplicity(), zero_tol))
}

/// Classify the whole spectrum of (H, G) with default tolerances.
pub fn classify_spectrum(
    h: &ComplexMatrix,
    g: &ComplexMatrix,
) -> Result<SpectralClassification, KreinError> {
    classify_spectrum_with(h, g, &Tolerances::default())
}

pub fn classify_spectrum_with(
    h: &ComplexMatrix,
    g: &ComplexMatrix,
    tol: &Tolerances,
) -> Result<SpectralClassification, KreinError> {
    let residual = verify_intertwiner(h, g)
        .map_err(|e| KreinError::InvalidArgument(e.to_string()))?;
    if residual > tol.intertwiner {
        return Err(KreinError::NotAnIntertwiner { residual, tol: tol.intertwiner });
    }
    let sg = svd(g)?;
    let top_sv = sg.singular_values.first().copied().unwrap_or(0.0);
    let bottom_sv = sg.singular_values.last().copied().unwrap_or(0.0);
    if top_sv == 0.0 || bottom_sv <= tol.rank * top_sv {
        return Err(KreinError::SingularG);
    }

    let ws = workspace(h)?;
    let clusters_raw = cluster_eigenvalues(&ws.eig.eigenvalues, tol.cluster);
    let zero_tol = tol.kind_zero * g.fro_norm();

    let mut clusters = Vec::with_capacity(clusters_raw.len());
    let mut positive = 0usize;
    let mut negative = 0usize;
    let mut everything_real = true;

    for cluster in &clusters_raw {
        let is_real = cluster.representative.im.abs() <= tol.real * ws.scale;
        let q = root_subspace_from(&ws, &cluster.member_indices)?;
        let geo = geometric_multiplicity(h, &q, cluster.representative, tol.rank)?;
        let restriction = (&q.adjoint() * &(g * &q)).hermitian_part();
        let (kind, inertia) = if is_real {
            kind_from_inertia(&restriction, cluster.multiplicity(), zero_tol)
        } else {
            everything_real = false;
            let inertia = inertia_of(&restriction, zero_tol)
                .expect("restriction is Hermitian by construction");
            (KreinKind::ComplexPaired, inertia)
        };
        if is_real {
            positive += inertia.n_positive;
            negative += inertia.n_negative;
        } else {
            // Appendix-C accounting: upper-half-plane eigenvalues count as
            // positive kind, lower-half as negative.
            for &i in &cluster.member_indices {
                if ws.eig.eigenvalues[i].im > 0.0 {
                    positive += 1;
                } else {
                    negative += 1;
                }
            }
        }
        clusters.push(EigenCluster {
            representative: cluster.representative,
            member_indices: cluster.member_indices.clone(),
            algebraic_multiplicity: cluster.multiplicity(),
            geometric_multiplicity: geo,
            kind,
            g_restriction_inertia: inertia,
        });
    }

    verify_conjugate_pairing(&clusters, &ws.eig.eigenvalues, tol, ws.scale)?;

    let kgl_protected = everything_real && clusters.iter().all(|c| c.kind.is_definite());
    let signature = if kgl_protected {
        let mut s = String::new();
        for c in &clusters {
            let ch = match c.kind {
                KreinKind::Positive => '+',
                KreinKind::Negative => '-',
                _ => unreachable!("protected clusters are definite"),
            };
            for _ in 0..c.algebraic_multiplicity {
                s.push(ch);
            }
        }
        Some(s)
    } else {
        None
    };

    Ok(SpectralClassification {
        clusters,
        eigenvalues: ws.eig.eigenvalues,
        all_real: everything_real,
        kgl_protected,
        signature,
        positive_kind_count: positive,
        negative_kind_count: negative,
    })
}

fn verify_conjugate_pairing(
    clusters: &[EigenCluster],
    eigenvalues: &[Complex64],
    tol: &Tolerances,
    scale: f64,
) -> Result<(), KreinError> {
    let complex_values: Vec<Complex64> = clusters
        .iter()
        .filter(|c| c.kind == KreinKind::ComplexPaired)
        .flat_map(|c| c.member_indices.iter().map(|&i| eigenvalues[i]))
        .collect();
    let mut used = vec![false; complex_values.len()];
    for &z in &complex_values {
        let target = z.conj();
        let mut found = false;
        for (i, &w) in complex_values.iter().enumerate() {
            if !used[i] && (w - target).norm() <= tol.real * scale {
                used[i] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Err(KreinError::ConjugatePairingViolated);
        }
    }
    Ok(())
}

/// Protection from pseudo-Hermiticity breaking: real spectrum with every
/// eigenvalue definite.
pub fn kgl_protected(h: &ComplexMatrix, g: &ComplexMatrix) -> Result<bool, KreinError> {
    Ok(classify_spectrum(h, g)?.kgl_protected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eig::gen_eig;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn qubit_h(g: f64, kappa: f64) -> ComplexMatrix {
        ComplexMatrix::from_rows(&[
            vec![c(0.0, -g), c(kappa, 0.0)],
            vec![c(kappa, 0.0), c(0.0, g)],
        ])
    }

    fn sigma_x() -> ComplexMatrix {
        ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]])
    }

    /// H(x, y) of the three-level example with G = diag(1, 1, -1).
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

    #[test]
    fn clustering_basics() {
        let clusters = cluster_eigenvalues(
            &[c(1.0, 0.0), c(1.0 + 1e-12, 0.0), c(5.0, 0.0)],
            1e-8,
        );
        assert_eq!(clusters.len(), 2);
        assert_eq!(clusters[0].member_indices, vec![0, 1]);
        assert_eq!(clusters[1].member_indices, vec![2]);

        // All-distinct spectrum: singletons.
        let clusters = cluster_eigenvalues(&[c(0.3, 0.1), c(-2.0, 0.0), c(4.0, -1.0)], 1e-7);
        assert_eq!(clusters.len(), 3);
        assert!(clusters.iter().all(|cl| cl.multiplicity() == 1));
    }

    #[test]
    fn clustering_schematic_ep_spectrum() {
        // Closed form at x = 4, y = 0: eigenvalues (1.5, 5, 5).
        let e = gen_eig(&schematic_h(4.0, 0.0)).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert_eq!(clusters.len(), 2);
        assert!((clusters[0].representative - c(1.5, 0.0)).norm() < 1e-9);
        assert!((clusters[1].representative - c(5.0, 0.0)).norm() < 1e-7);
        assert_eq!(clusters[1].multiplicity(), 2);
    }

    #[test]
    fn root_subspace_diagonal_and_jordan() {
        let h = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0), c(3.0, 0.0)]);
        let e = gen_eig(&h).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let q = root_subspace_basis(&h, &clusters[1]).unwrap();
        assert_eq!(q.cols(), 1);
        assert!((q[(1, 0)].norm() - 1.0).abs() < 1e-12);

        let j = ComplexMatrix::from_real_rows(&[vec![5.0, 1.0], vec![0.0, 5.0]]);
        let e = gen_eig(&j).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert_eq!(clusters.len(), 1);
        let q = root_subspace_basis(&j, &clusters[0]).unwrap();
        assert_eq!(q.cols(), 2);
    }

    #[test]
    fn root_subspace_invariance_at_dp() {
        // Two-fold degeneracy at 1.5 when x = sqrt(15)/2.
        let x = 15.0_f64.sqrt() / 2.0;
        let h = schematic_h(x, 0.0);
        let e = gen_eig(&h).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let cluster = clusters.iter().find(|cl| cl.multiplicity() == 2).expect("2-fold cluster");
        assert!((cluster.representative - c(1.5, 0.0)).norm() < 1e-8);
        let q = root_subspace_basis(&h, cluster).unwrap();
        assert_eq!(q.cols(), 2);
        let hq = &h * &q;
        let proj = &q * &(&q.adjoint() * &hq);
        let residual = (&hq - &proj).fro_norm();
        assert!(residual <= 1e-8 * h.fro_norm(), "residual {residual:e}");
    }

    #[test]
    fn multiplicities_jordan_diag_and_ep() {
        let j = ComplexMatrix::from_real_rows(&[vec![5.0, 1.0], vec![0.0, 5.0]]);
        let e = gen_eig(&j).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert_eq!(multiplicities(&j, &cl[0]).unwrap(), (2, 1));

        let d = ComplexMatrix::diagonal(&[c(5.0, 0.0), c(5.0, 0.0)]);
        let e = gen_eig(&d).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert_eq!(multiplicities(&d, &cl[0]).unwrap(), (2, 2));

        let h = schematic_h(4.0, 0.0);
        let e = gen_eig(&h).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let cluster = cl.iter().find(|x| x.multiplicity() == 2).unwrap();
        assert_eq!(multiplicities(&h, cluster).unwrap(), (2, 1));
    }

    #[test]
    fn classify_kind_qubit_modes() {
        let h = qubit_h(0.5, 1.0);
        let g = sigma_x();
        let e = gen_eig(&h).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let zero_tol = 1e-7 * g.fro_norm();
        let (kind_low, _) = classify_kind(&h, &g, &clusters[0], zero_tol).unwrap();
        let (kind_high, _) = classify_kind(&h, &g, &clusters[1], zero_tol).unwrap();
        assert_eq!(kind_low, KreinKind::Negative);
        assert_eq!(kind_high, KreinKind::Positive);
    }

    #[test]
    fn classify_kind_dp_same_kind_and_ep_indefinite() {
        let g = schematic_g();
        let zero_tol = 1e-7 * g.fro_norm();

        let x = 15.0_f64.sqrt() / 2.0;
        let h = schematic_h(x, 0.0);
        let e = gen_eig(&h).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let dp = cl.iter().find(|c| c.multiplicity() == 2).unwrap();
        let (kind, inertia) = classify_kind(&h, &g, dp, zero_tol).unwrap();
        assert_eq!(kind, KreinKind::Positive);
        assert_eq!(inertia, Inertia { n_positive: 2, n_negative: 0, n_zero: 0 });

        let h = schematic_h(4.0, 0.0);
        let e = gen_eig(&h).unwrap();
        let cl = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let ep = cl.iter().find(|c| c.multiplicity() == 2).unwrap();
        let (kind, _) = classify_kind(&h, &g, ep, zero_tol).unwrap();
        assert_eq!(kind, KreinKind::Indefinite);
    }

    #[test]
    fn classify_kind_rejects_bad_inputs() {
        let h = qubit_h(0.5, 1.0);
        let e = gen_eig(&h).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        let not_g = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(2.0, 0.0)]);
        assert!(matches!(
            classify_kind(&h, &not_g, &clusters[0], 1e-7),
            Err(KreinError::NotAnIntertwiner { .. })
        ));

        // Broken phase: complex cluster must be rejected.
        let h = qubit_h(1.5, 1.0);
        let e = gen_eig(&h).unwrap();
        let clusters = cluster_eigenvalues(&e.eigenvalues, 1e-7);
        assert!(matches!(
            classify_kind(&h, &sigma_x(), &clusters[0], 1e-7),
            Err(KreinError::ComplexCluster)
        ));
    }

    #[test]
    fn classify_spectrum_schematic_origin() {
        let verdict = classify_spectrum(&schematic_h(0.0, 0.0), &schematic_g()).unwrap();
        assert!(verdict.all_real);
        assert!(verdict.kgl_protected);
        assert_eq!(verdict.signature.as_deref(), Some("++-"));
        assert_eq!(verdict.positive_kind_count, 2);
        assert_eq!(verdict.negative_kind_count, 1);
    }

    #[test]
    fn classify_spectrum_schematic_second_region() {
        // At (0, 8) the spectrum is about (-6.754, 9, 9.254) with kinds (+, -, +).
        let verdict = classify_spectrum(&schematic_h(0.0, 8.0), &schematic_g()).unwrap();
        assert!(verdict.kgl_protected);
        assert_eq!(verdict.signature.as_deref(), Some("+-+"));
        let e = &verdict.eigenvalues;
        assert!((e[0] - c(-6.753905296791061, 0.0)).norm() < 1e-9);
        assert!((e[1] - c(9.0, 0.0)).norm() < 1e-9);
        assert!((e[2] - c(9.253905296791061, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn classify_spectrum_broken_qubit() {
        let verdict = classify_spectrum(&qubit_h(1.5, 1.0), &sigma_x()).unwrap();
        assert!(!verdict.all_real);
        assert!(!verdict.kgl_protected);
        assert!(verdict.signature.is_none());
        let mu = (1.5_f64 * 1.5 - 1.0).sqrt();
        assert!(verdict
            .eigenvalues
            .iter()
            .any(|z| (z - c(0.0, mu)).norm() < 1e-10));
        assert!(verdict
            .eigenvalues
            .iter()
            .any(|z| (z - c(0.0, -mu)).norm() < 1e-10));
    }

    #[test]
    fn kgl_protection_predicates() {
        // Quasi-Hermitian: Hermitian H with G = I is always protected.
        let h = ComplexMatrix::from_rows(&[
            vec![c(1.0, 0.0), c(0.0, 0.5)],
            vec![c(0.0, -0.5), c(-1.0, 0.0)],
        ]);
        assert!(kgl_protected(&h, &ComplexMatrix::identity(2)).unwrap());

        // Near the same-kind diabolic collision: still protected.
        assert!(kgl_protected(&schematic_h(1.94, 0.0), &schematic_g()).unwrap());

        // At the exceptional point: not protected.
        assert!(!kgl_protected(&schematic_h(4.0, 0.0), &schematic_g()).unwrap());
    }

    #[test]
    fn classify_spectrum_rejects_singular_g() {
        let h = qubit_h(0.5, 1.0);
        let g = ComplexMatrix::zeros(2, 2);
        assert!(matches!(classify_spectrum(&h, &g), Err(KreinError::SingularG)));
    }
}
