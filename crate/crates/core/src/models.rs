//! Model Hamiltonians with their known intertwining operators.
//!
//! Each constructor returns a [`ModelInstance`]: the Hamiltonian, an
//! optional traceless shift (used when the physical matrix carries a
//! uniform loss term), and the list of (anti-)intertwiners with the
//! relation each one satisfies. Classification consumes the first usable
//! entry, transforming `H -> iH` for anti-intertwiners.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::ModelError;
use crate::matrix::ComplexMatrix;
use crate::svd::svd;
use crate::tolerances::RANK_TOL;

/// How a stored operator relates to its target matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Relation {
    /// G H = H^H G: a usable Hermitian intertwiner.
    Intertwines,
    /// G H = -H^H G: classification applies after the H -> iH transform.
    AntiIntertwines,
    /// G H = H^T G: recorded relation; not a dagger intertwiner.
    TransposeIntertwines,
}

/// Which matrix of the instance an operator intertwines.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Hamiltonian,
    Shifted,
}

#[derive(Debug, Clone)]
pub struct IntertwinerEntry {
    pub name: &'static str,
    pub matrix: ComplexMatrix,
    pub relation: Relation,
    pub target: Target,
}

/// A parameterized model: Hamiltonian, optional traceless shift, known
/// intertwiners, and an echo of the parameters that built it.
#[derive(Debug, Clone)]
pub struct ModelInstance {
    pub name: &'static str,
    pub hamiltonian: ComplexMatrix,
    /// Traceless variant (H + i gamma/2 I for the oscillator chain); the
    /// spectral object for classification when present.
    pub shifted: Option<ComplexMatrix>,
    pub intertwiners: Vec<IntertwinerEntry>,
    pub parameters: BTreeMap<String, f64>,
}

impl ModelInstance {
    /// The matrix classification runs on: the traceless shift when the
    /// model has one, otherwise the Hamiltonian itself.
    pub fn classification_matrix(&self) -> &ComplexMatrix {
        self.shifted.as_ref().unwrap_or(&self.hamiltonian)
    }

    pub fn target_matrix(&self, target: Target) -> &ComplexMatrix {
        match target {
            Target::Hamiltonian => &self.hamiltonian,
            Target::Shifted => self.shifted.as_ref().unwrap_or(&self.hamiltonian),
        }
    }

    /// Residual of the stored relation for one entry, relative to
    /// max(||target||, 1).
    pub fn relation_residual(&self, entry: &IntertwinerEntry) -> f64 {
        let h = self.target_matrix(entry.target);
        let g = &entry.matrix;
        let defect = match entry.relation {
            Relation::Intertwines => &(g * h) - &(&h.adjoint() * g),
            Relation::AntiIntertwines => &(g * h) + &(&h.adjoint() * g),
            Relation::TransposeIntertwines => &(g * h) - &(&h.transpose() * g),
        };
        defect.fro_norm() / h.fro_norm().max(1.0)
    }

    /// First dagger intertwiner usable for classification, resolved to a
    /// concrete (matrix, G) pair; anti-intertwiners contribute (i H, G).
    pub fn classification_pair(&self) -> Option<(ComplexMatrix, ComplexMatrix, &'static str)> {
        for entry in &self.intertwiners {
            match entry.relation {
                Relation::Intertwines => {
                    return Some((
                        self.target_matrix(entry.target).clone(),
                        entry.matrix.clone(),
                        entry.name,
                    ));
                }
                Relation::AntiIntertwines => {
                    let target = self.target_matrix(entry.target).scale(Complex64::I);
                    return Some((target, entry.matrix.clone(), entry.name));
                }
                Relation::TransposeIntertwines => continue,
            }
        }
        None
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn antidiagonal_ones(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        if i + j == n - 1 {
            Complex64::ONE
        } else {
            Complex64::ZERO
        }
    })
}

/// Balanced gain/loss two-level system: H = [[-i g, k], [k, i g]] with
/// intertwiner sigma_x.
pub fn qubit(g: f64, kappa: f64) -> ModelInstance {
    let h = ComplexMatrix::from_rows(&[
        vec![c(0.0, -g), c(kappa, 0.0)],
        vec![c(kappa, 0.0), c(0.0, g)],
    ]);
    let sigma_x = ComplexMatrix::from_real_rows(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
    ModelInstance {
        name: "qubit",
        hamiltonian: h,
        shifted: None,
        intertwiners: vec![IntertwinerEntry {
            name: "sigma_x",
            matrix: sigma_x,
            relation: Relation::Intertwines,
            target: Target::Hamiltonian,
        }],
        parameters: BTreeMap::from([("g".into(), g), ("kappa".into(), kappa)]),
    }
}

/// Three-level schematic with G = diag(1, 1, -1):
/// H(x, y) = [[1, y, ix], [y, 3/2, (i/2) sin(pi y / 8)], [ix, (i/2) sin(pi y / 8), 9]].
pub fn schematic(x: f64, y: f64) -> ModelInstance {
    let s = 0.5 * (std::f64::consts::PI * y / 8.0).sin();
    let h = ComplexMatrix::from_rows(&[
        vec![c(1.0, 0.0), c(y, 0.0), c(0.0, x)],
        vec![c(y, 0.0), c(1.5, 0.0), c(0.0, s)],
        vec![c(0.0, x), c(0.0, s), c(9.0, 0.0)],
    ]);
    let g = ComplexMatrix::diagonal(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)]);
    ModelInstance {
        name: "schematic",
        hamiltonian: h,
        shifted: None,
        intertwiners: vec![IntertwinerEntry {
            name: "G",
            matrix: g,
            relation: Relation::Intertwines,
            target: Target::Hamiltonian,
        }],
        parameters: BTreeMap::from([("x".into(), x), ("y".into(), y)]),
    }
}

fn check_inversion_symmetric(v: &[f64]) -> Result<(), ModelError> {
    let m = v.len();
    let scale = v.iter().fold(1.0_f64, |acc, x| acc.max(x.abs()));
    for i in 0..m / 2 {
        if (v[i] - v[m - 1 - i]).abs() > 1e-12 * scale {
            return Err(ModelError::NotInversionSymmetric);
        }
    }
    Ok(())
}

fn bloch_matrix(k: f64, h: f64, v: &[f64]) -> ComplexMatrix {
    let m = v.len();
    let mut mat = ComplexMatrix::zeros(m, m);
    for (i, &vi) in v.iter().enumerate() {
        mat[(i, i)] = c(vi, 0.0);
    }
    let hop_left = c((-h).exp(), 0.0);
    let hop_right = c(h.exp(), 0.0);
    for i in 0..m - 1 {
        mat[(i, i + 1)] += hop_left;
        mat[(i + 1, i)] += hop_right;
    }
    // Cell-boundary hops pick up the Bloch phase.
    mat[(0, m - 1)] += Complex64::from_polar(h.exp(), k);
    mat[(m - 1, 0)] += Complex64::from_polar((-h).exp(), -k);
    mat
}

/// True at the inversion-symmetric wave numbers k = 0 and k = pi (mod 2 pi),
/// where the Bloch phase is real.
fn bloch_phase_is_real(k: f64) -> bool {
    k.sin().abs() <= 1e-12
}

/// Single Bloch block of the asymmetric-hopping ring. The antidiagonal G
/// is a dagger intertwiner only at k = 0 and k = pi; at generic k only the
/// transpose relation G H = H^T G survives and is recorded as such.
pub fn lattice_bloch(k: f64, h: f64, v: &[f64]) -> Result<ModelInstance, ModelError> {
    if v.len() < 2 {
        return Err(ModelError::InvalidParameter("lattice needs at least 2 sites".into()));
    }
    check_inversion_symmetric(v)?;
    let m = v.len();
    let mat = bloch_matrix(k, h, v);
    let g = antidiagonal_ones(m);
    let mut intertwiners = vec![];
    if bloch_phase_is_real(k) {
        intertwiners.push(IntertwinerEntry {
            name: "G",
            matrix: g.clone(),
            relation: Relation::Intertwines,
            target: Target::Hamiltonian,
        });
    }
    intertwiners.push(IntertwinerEntry {
        name: "G_transpose",
        matrix: g,
        relation: Relation::TransposeIntertwines,
        target: Target::Hamiltonian,
    });
    let mut parameters = BTreeMap::from([
        ("h".into(), h),
        ("k".into(), k),
        ("M".into(), m as f64),
    ]);
    for (i, &vi) in v.iter().enumerate() {
        parameters.insert(format!("V{}", i + 1), vi);
    }
    Ok(ModelInstance {
        name: "lattice",
        hamiltonian: mat,
        shifted: None,
        intertwiners,
        parameters,
    })
}

/// Doubled block H(+k) ⊕ H(-k) with the 2M x 2M antidiagonal intertwiner;
/// requires k away from 0 and pi (those blocks are handled directly).
pub fn lattice_doubled(k: f64, h: f64, v: &[f64]) -> Result<ModelInstance, ModelError> {
    if v.len() < 2 {
        return Err(ModelError::InvalidParameter("lattice needs at least 2 sites".into()));
    }
    check_inversion_symmetric(v)?;
    if bloch_phase_is_real(k) {
        return Err(ModelError::InvalidWaveNumber);
    }
    let m = v.len();
    let plus = bloch_matrix(k, h, v);
    let minus = bloch_matrix(-k, h, v);
    let mut big = ComplexMatrix::zeros(2 * m, 2 * m);
    big.set_block(0, 0, &plus);
    big.set_block(m, m, &minus);
    let g = antidiagonal_ones(2 * m);
    let mut parameters = BTreeMap::from([
        ("h".into(), h),
        ("k".into(), k),
        ("M".into(), m as f64),
    ]);
    for (i, &vi) in v.iter().enumerate() {
        parameters.insert(format!("V{}", i + 1), vi);
    }
    Ok(ModelInstance {
        name: "lattice2",
        hamiltonian: big,
        shifted: None,
        intertwiners: vec![IntertwinerEntry {
            name: "G_tilde",
            matrix: g,
            relation: Relation::Intertwines,
            target: Target::Hamiltonian,
        }],
        parameters,
    })
}

/// Coupled damped oscillators with stiffness K and viscous damping gamma:
/// H = -i [[0, -I], [K, gamma I]] on (positions, momenta). Ships with the
/// symplectic intertwiner G_b = iJ and the shifted-frame anti-intertwiner
/// G_a, both attached to the traceless matrix H + i gamma/2 I.
///
/// `tau` defaults to 2/gamma for gamma > 0 (the strongest overdamped
/// conditions) and to 1 for gamma = 0.
pub fn oscillators(
    stiffness: &[Vec<f64>],
    gamma: f64,
    tau: Option<f64>,
) -> Result<ModelInstance, ModelError> {
    let n = stiffness.len();
    if n == 0 || stiffness.iter().any(|row| row.len() != n) {
        return Err(ModelError::InvalidParameter("stiffness matrix must be square".into()));
    }
    let scale = stiffness
        .iter()
        .flatten()
        .fold(1.0_f64, |acc, x| acc.max(x.abs()));
    for i in 0..n {
        for j in 0..n {
            if (stiffness[i][j] - stiffness[j][i]).abs() > 1e-12 * scale {
                return Err(ModelError::NotSymmetric);
            }
        }
    }
    if gamma < 0.0 {
        return Err(ModelError::InvalidParameter("gamma must be nonnegative".into()));
    }
    let tau = tau.unwrap_or(if gamma > 0.0 { 2.0 / gamma } else { 1.0 });

    let dim = 2 * n;
    let mut h = ComplexMatrix::zeros(dim, dim);
    let mut shifted = ComplexMatrix::zeros(dim, dim);
    let mut g_b = ComplexMatrix::zeros(dim, dim);
    let mut g_a = ComplexMatrix::zeros(dim, dim);
    for i in 0..n {
        h[(i, n + i)] = c(0.0, 1.0);
        h[(n + i, n + i)] = c(0.0, -gamma);
        shifted[(i, n + i)] = c(0.0, 1.0);
        shifted[(i, i)] = c(0.0, gamma / 2.0);
        shifted[(n + i, n + i)] = c(0.0, -gamma / 2.0);
        g_b[(i, n + i)] = c(0.0, 1.0);
        g_b[(n + i, i)] = c(0.0, -1.0);
        g_a[(i, n + i)] = c(1.0, 0.0);
        g_a[(n + i, i)] = c(1.0, 0.0);
        g_a[(n + i, n + i)] = c(tau, 0.0);
        for j in 0..n {
            h[(n + i, j)] = c(0.0, -stiffness[i][j]);
            shifted[(n + i, j)] = c(0.0, -stiffness[i][j]);
            g_a[(i, j)] = c(-tau * stiffness[i][j], 0.0);
        }
        g_a[(i, i)] += c(gamma, 0.0);
    }

    let sv = svd(&g_a)?.singular_values;
    let top = sv.first().copied().unwrap_or(0.0);
    let bottom = sv.last().copied().unwrap_or(0.0);
    if top == 0.0 || bottom <= RANK_TOL * top {
        return Err(ModelError::SingularGa);
    }

    Ok(ModelInstance {
        name: "oscillators",
        hamiltonian: h,
        shifted: Some(shifted),
        intertwiners: vec![
            IntertwinerEntry {
                name: "G_b",
                matrix: g_b,
                relation: Relation::Intertwines,
                target: Target::Shifted,
            },
            IntertwinerEntry {
                name: "G_a",
                matrix: g_a,
                relation: Relation::AntiIntertwines,
                target: Target::Shifted,
            },
        ],
        parameters: BTreeMap::from([
            ("gamma".into(), gamma),
            ("tau".into(), tau),
            ("n".into(), n as f64),
        ]),
    })
}

/// Seeded random Hermitian matrix: real normal diagonal, complex normal
/// off-diagonal entries scaled by 1/sqrt(2).
pub fn random_hermitian(n: usize, seed: u64) -> ComplexMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = ComplexMatrix::zeros(n, n);
    for i in 0..n {
        let d: f64 = rng.sample(StandardNormal);
        s[(i, i)] = c(d, 0.0);
        for j in i + 1..n {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            let z = c(re, im).scale(std::f64::consts::FRAC_1_SQRT_2);
            s[(i, j)] = z;
            s[(j, i)] = z.conj();
        }
    }
    s
}

/// Seeded random pseudo-Hermitian matrix H = G^{-1} S with S Hermitian,
/// so that G H = S = H^H G holds by construction.
pub fn random_pseudo_hermitian(g: &ComplexMatrix, seed: u64) -> Result<ComplexMatrix, ModelError> {
    let n = g.require_square()?;
    if !g.is_hermitian_within(1e-10) {
        return Err(ModelError::InvalidParameter("G must be Hermitian".into()));
    }
    let s = random_hermitian(n, seed);
    let lu = g.lu().map_err(|_| ModelError::SingularG)?;
    Ok(lu.solve(&s))
}

// ── generic model configuration (the CLI/sweep contract) ───────────

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModelKind {
    Qubit,
    Schematic,
    Lattice,
    LatticeDoubled,
    Oscillators,
}

impl ModelKind {
    pub fn parse(name: &str) -> Result<Self, ModelError> {
        match name {
            "qubit" => Ok(Self::Qubit),
            "schematic" => Ok(Self::Schematic),
            "lattice" => Ok(Self::Lattice),
            "lattice2" => Ok(Self::LatticeDoubled),
            "oscillators" => Ok(Self::Oscillators),
            other => Err(ModelError::InvalidParameter(format!("unknown model `{other}`"))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Self::Qubit => "qubit",
            Self::Schematic => "schematic",
            Self::Lattice => "lattice",
            Self::LatticeDoubled => "lattice2",
            Self::Oscillators => "oscillators",
        }
    }

    /// Scalar parameters a sweep may vary.
    pub fn sweepable(&self) -> &'static [&'static str] {
        match self {
            Self::Qubit => &["g", "kappa"],
            Self::Schematic => &["x", "y"],
            Self::Lattice | Self::LatticeDoubled => &["h", "k"],
            Self::Oscillators => &["gamma", "tau"],
        }
    }

    fn required_scalars(&self) -> &'static [&'static str] {
        match self {
            Self::Qubit => &["g", "kappa"],
            Self::Schematic => &["x", "y"],
            Self::Lattice | Self::LatticeDoubled => &["h", "k"],
            Self::Oscillators => &["gamma"],
        }
    }

    fn optional_scalars(&self) -> &'static [&'static str] {
        match self {
            Self::Lattice | Self::LatticeDoubled => &["m"],
            Self::Oscillators => &["tau"],
            _ => &[],
        }
    }
}

/// Instantiable model description: kind plus named scalar parameters,
/// onsite potentials (lattices) and the stiffness matrix (oscillators).
#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub kind: ModelKind,
    pub scalars: BTreeMap<String, f64>,
    pub potentials: Option<Vec<f64>>,
    pub stiffness: Option<Vec<Vec<f64>>>,
}

impl ModelConfig {
    pub fn new(kind: ModelKind) -> Self {
        Self { kind, scalars: BTreeMap::new(), potentials: None, stiffness: None }
    }

    pub fn with_scalar(&self, name: &str, value: f64) -> Self {
        let mut next = self.clone();
        next.scalars.insert(name.to_string(), value);
        next
    }

    fn scalar(&self, name: &str) -> Result<f64, ModelError> {
        self.scalars
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::InvalidParameter(format!("missing parameter `{name}`")))
    }

    pub fn instantiate(&self) -> Result<ModelInstance, ModelError> {
        // Reject unknown keys outright.
        for key in self.scalars.keys() {
            let known = self
                .kind
                .required_scalars()
                .iter()
                .chain(self.kind.optional_scalars())
                .any(|k| k == key);
            if !known {
                return Err(ModelError::UnknownParameter(key.clone()));
            }
        }
        match self.kind {
            ModelKind::Qubit => Ok(qubit(self.scalar("g")?, self.scalar("kappa")?)),
            ModelKind::Schematic => Ok(schematic(self.scalar("x")?, self.scalar("y")?)),
            ModelKind::Lattice | ModelKind::LatticeDoubled => {
                let v = self
                    .potentials
                    .as_deref()
                    .ok_or_else(|| ModelError::InvalidParameter("missing potentials V".into()))?;
                if let Some(m) = self.scalars.get("m") {
                    if *m as usize != v.len() {
                        return Err(ModelError::InvalidParameter(format!(
                            "M = {m} does not match {} potentials",
                            v.len()
                        )));
                    }
                }
                let (k, h) = (self.scalar("k")?, self.scalar("h")?);
                if self.kind == ModelKind::Lattice {
                    lattice_bloch(k, h, v)
                } else {
                    lattice_doubled(k, h, v)
                }
            }
            ModelKind::Oscillators => {
                let k = self
                    .stiffness
                    .as_deref()
                    .ok_or_else(|| ModelError::InvalidParameter("missing stiffness matrix".into()))?;
                oscillators(k, self.scalar("gamma")?, self.scalars.get("tau").copied())
            }
        }
    }
}
