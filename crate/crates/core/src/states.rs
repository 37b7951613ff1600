//! Finite-dimensional density operators and the brute-force quantities every
//! closed form in the crate is checked against: ergotropy by spectral
//! rearrangement, passive states, entropies and partial traces.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, Order, Spectrum, C64, ZERO};

pub const STATE_HERMITIAN_TOL: f64 = 1e-12;
pub const STATE_TRACE_TOL: f64 = 1e-12;
pub const STATE_PSD_TOL: f64 = 1e-10;

/// A validated density matrix.
#[derive(Debug, Clone)]
pub struct DensityOperator {
    matrix: CMat,
}

impl DensityOperator {
    /// Validates Hermiticity, unit trace and positivity.
    pub fn new(matrix: CMat) -> Result<Self> {
        let n = matrix.nrows();
        if matrix.ncols() != n || n == 0 {
            return Err(Error::DimensionMismatch { expected: n.max(1), found: matrix.ncols() });
        }
        let defect = linalg::hermitian_defect(&matrix);
        if defect > STATE_HERMITIAN_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (defect {defect:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > STATE_TRACE_TOL {
            return Err(Error::InvalidState(format!("trace {tr} differs from 1")));
        }
        let min = linalg::eigh(&matrix, Order::Ascending)?.eigenvalues[0];
        if min < -STATE_PSD_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { matrix: linalg::hermitian_part(&matrix) })
    }

    /// Hermitian-symmetrizes and renormalizes before validating. Meant for
    /// matrices assembled by floating-point products.
    pub fn from_numeric(matrix: CMat) -> Result<Self> {
        let h = linalg::hermitian_part(&matrix);
        let tr = h.trace().re;
        if !(tr > 0.0) {
            return Err(Error::InvalidState(format!("non-positive trace {tr}")));
        }
        Self::new(h.unscale(tr))
    }

    pub fn pure(psi: &[C64]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(Error::InvalidState("zero vector".into()));
        }
        let v: Vec<C64> = psi.iter().map(|z| z / norm).collect();
        Self::from_numeric(linalg::outer(&v, &v))
    }

    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        Self::new(linalg::diag_real(populations))
    }

    pub fn maximally_mixed(dim: usize) -> Self {
        Self { matrix: linalg::identity(dim).unscale(dim as f64) }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMat {
        self.matrix
    }

    pub fn spectrum(&self, order: Order) -> Spectrum {
        // Hermitian by construction
        linalg::eigh(&self.matrix, order).expect("density operator is Hermitian")
    }

    /// Eigenvalues with round-off negatives in (−1e−10, 0) clamped to zero.
    pub fn populations(&self, order: Order) -> Vec<f64> {
        self.spectrum(order).eigenvalues.into_iter().map(|l| l.max(0.0)).collect()
    }

    pub fn tensor(&self, other: &DensityOperator) -> DensityOperator {
        Self { matrix: linalg::kron(&self.matrix, &other.matrix) }
    }

    /// `U ρ U†`.
    pub fn evolve(&self, unitary: &CMat) -> Result<DensityOperator> {
        check_dim(self.dim(), unitary.nrows())?;
        Self::from_numeric(unitary * &self.matrix * unitary.adjoint())
    }

    pub fn expectation(&self, op: &CMat) -> Result<f64> {
        check_dim(self.dim(), op.nrows())?;
        Ok((&self.matrix * op).trace().re)
    }

    pub fn trace_distance(&self, other: &DensityOperator) -> Result<f64> {
        check_dim(self.dim(), other.dim())?;
        linalg::trace_distance(&self.matrix, &other.matrix)
    }
}

fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Hamiltonian given by its (ascending) energies and eigenbasis.
#[derive(Debug, Clone)]
pub struct HamiltonianSpec {
    energies: Vec<f64>,
    basis: Option<CMat>,
}

impl HamiltonianSpec {
    /// Diagonal Hamiltonian in the computational basis.
    pub fn diagonal(energies: Vec<f64>) -> Result<Self> {
        Self::with_basis(energies, None)
    }

    pub fn with_basis(energies: Vec<f64>, basis: Option<CMat>) -> Result<Self> {
        if energies.is_empty() {
            return Err(Error::domain("empty spectrum"));
        }
        if energies.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::domain("energies must be nondecreasing"));
        }
        if let Some(b) = &basis {
            check_dim(energies.len(), b.nrows())?;
            if linalg::unitarity_defect(b) > 1e-12 {
                return Err(Error::domain("Hamiltonian eigenbasis is not unitary"));
            }
        }
        Ok(Self { energies, basis })
    }

    /// Diagonal Hamiltonian whose energies may come in any order; the basis is
    /// permuted so that energies are ascending.
    pub fn from_unsorted_diagonal(energies: &[f64]) -> Result<Self> {
        let n = energies.len();
        let mut idx: Vec<usize> = (0..n).collect();
        idx.sort_by(|&a, &b| energies[a].total_cmp(&energies[b]));
        let basis = CMat::from_fn(n, n, |r, k| if r == idx[k] { linalg::ONE } else { ZERO });
        Self::with_basis(idx.iter().map(|&i| energies[i]).collect(), Some(basis))
    }

    /// `ω|e⟩⟨e|` in the basis `(|g⟩, |e⟩)`.
    pub fn qubit(omega: f64) -> Self {
        Self { energies: vec![0.0, omega], basis: None }
    }

    /// `ω(a†a + ½)` truncated to `dim` levels.
    pub fn harmonic(omega: f64, dim: usize) -> Self {
        Self { energies: (0..dim).map(|n| omega * (n as f64 + 0.5)).collect(), basis: None }
    }

    /// `ω|e⟩⟨e| ⊗ 1 + 1 ⊗ ω|e⟩⟨e|` with basis index `2·q₁ + q₂`.
    pub fn two_qubit(omega: f64) -> Self {
        Self::from_unsorted_diagonal(&[0.0, omega, omega, 2.0 * omega]).expect("valid energies")
    }

    pub fn dim(&self) -> usize {
        self.energies.len()
    }

    pub fn energies(&self) -> &[f64] {
        &self.energies
    }

    pub fn basis(&self) -> CMat {
        self.basis.clone().unwrap_or_else(|| linalg::identity(self.dim()))
    }

    /// Energy eigenvector `k` (ascending energy order).
    pub fn eigenvector(&self, k: usize) -> Vec<C64> {
        match &self.basis {
            Some(b) => b.column(k).iter().copied().collect(),
            None => (0..self.dim()).map(|i| if i == k { linalg::ONE } else { ZERO }).collect(),
        }
    }

    pub fn matrix(&self) -> CMat {
        let b = self.basis();
        &b * linalg::diag_real(&self.energies) * b.adjoint()
    }

    pub fn ground_energy(&self) -> f64 {
        self.energies[0]
    }

    /// `ρ` expressed in the energy eigenbasis: `B† ρ B`.
    pub fn to_energy_basis(&self, rho: &DensityOperator) -> CMat {
        match &self.basis {
            Some(b) => b.adjoint() * rho.matrix() * b,
            None => rho.matrix().clone(),
        }
    }

    /// Gibbs state at inverse temperature `beta`.
    pub fn gibbs(&self, beta: f64) -> DensityOperator {
        let e0 = self.ground_energy();
        let weights: Vec<f64> = self.energies.iter().map(|e| (-beta * (e - e0)).exp()).collect();
        let z: f64 = weights.iter().sum();
        let pops: Vec<f64> = weights.iter().map(|w| w / z).collect();
        let b = self.basis();
        DensityOperator::from_numeric(&b * linalg::diag_real(&pops) * b.adjoint()).expect("Gibbs state is valid")
    }
}

/// Total ergotropy plus a named decomposition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErgotropyBreakdown {
    pub total: f64,
    pub components: Vec<(String, f64)>,
}

impl ErgotropyBreakdown {
    pub fn new(components: &[(&str, f64)]) -> Self {
        Self {
            total: components.iter().map(|(_, v)| v).sum(),
            components: components.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
        }
    }

    pub fn component(&self, name: &str) -> Option<f64> {
        self.components.iter().find(|(k, _)| k == name).map(|(_, v)| *v)
    }

    pub fn component_sum(&self) -> f64 {
        self.components.iter().map(|(_, v)| v).sum()
    }
}

fn populations_desc(rho: &DensityOperator) -> Vec<f64> {
    rho.populations(Order::Descending)
}

/// Mean energy minus the passive-state energy. Clamped at zero.
pub fn ergotropy(rho: &DensityOperator, h: &HamiltonianSpec) -> Result<f64> {
    check_dim(h.dim(), rho.dim())?;
    let mean = rho.expectation(&h.matrix())?;
    let passive: f64 = populations_desc(rho).iter().zip(h.energies()).map(|(p, e)| p * e).sum();
    Ok((mean - passive).max(0.0))
}

/// Zero-ergotropy state with the spectrum of `rho`: largest population on the
/// lowest energy. Equal populations keep their spectral index order.
pub fn passive_state(rho: &DensityOperator, h: &HamiltonianSpec) -> Result<DensityOperator> {
    check_dim(h.dim(), rho.dim())?;
    let pops = populations_desc(rho);
    let b = h.basis();
    DensityOperator::from_numeric(&b * linalg::diag_real(&pops) * b.adjoint())
}

/// Ergotropy of the dephased state (populations in the energy basis only).
pub fn incoherent_ergotropy(rho: &DensityOperator, h: &HamiltonianSpec) -> Result<f64> {
    check_dim(h.dim(), rho.dim())?;
    let in_basis = h.to_energy_basis(rho);
    let diag: Vec<f64> = (0..h.dim()).map(|k| in_basis[(k, k)].re.max(0.0)).collect();
    let dephased = DensityOperator::from_numeric(linalg::diag_real(&diag))?;
    ergotropy(&dephased, &HamiltonianSpec::diagonal(h.energies().to_vec())?)
}

fn shannon(pops: &[f64]) -> f64 {
    pops.iter().filter(|&&p| p > 0.0).map(|&p| -p * p.ln()).sum()
}

/// Von Neumann entropy in nats.
pub fn von_neumann_entropy(rho: &DensityOperator) -> f64 {
    shannon(&rho.populations(Order::Ascending))
}

/// `Tr ρ²`.
pub fn purity(rho: &DensityOperator) -> f64 {
    rho.matrix().iter().map(|z| z.norm_sqr()).sum()
}

/// `−ln Tr ρ²`.
pub fn renyi2_entropy(rho: &DensityOperator) -> f64 {
    -purity(rho).ln()
}

/// Sum of off-diagonal moduli in the energy eigenbasis.
pub fn l1_coherence(rho: &DensityOperator, h: &HamiltonianSpec) -> Result<f64> {
    check_dim(h.dim(), rho.dim())?;
    let m = h.to_energy_basis(rho);
    let n = m.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += m[(i, j)].norm();
            }
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Keep {
    First,
    Second,
}

/// Reduced state of a bipartite operator with subsystem dimensions `dims`.
pub fn partial_trace(rho: &DensityOperator, dims: (usize, usize), keep: Keep) -> Result<DensityOperator> {
    DensityOperator::from_numeric(partial_trace_matrix(rho.matrix(), dims, keep)?)
}

pub fn partial_trace_matrix(m: &CMat, dims: (usize, usize), keep: Keep) -> Result<CMat> {
    let (da, db) = dims;
    if da == 0 || db == 0 || da * db != m.nrows() {
        return Err(Error::DimensionMismatch { expected: da * db, found: m.nrows() });
    }
    Ok(match keep {
        Keep::First => CMat::from_fn(da, da, |i, j| (0..db).map(|k| m[(i * db + k, j * db + k)]).sum()),
        Keep::Second => CMat::from_fn(db, db, |i, j| (0..da).map(|k| m[(k * db + i, k * db + j)]).sum()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum EntropyKind {
    VonNeumann,
    Renyi2,
}

pub fn entropy(rho: &DensityOperator, kind: EntropyKind) -> f64 {
    match kind {
        EntropyKind::VonNeumann => von_neumann_entropy(rho),
        EntropyKind::Renyi2 => renyi2_entropy(rho),
    }
}

/// `S(ρ_A) + S(ρ_B) − S(ρ_AB)`.
pub fn mutual_information(rho: &DensityOperator, dims: (usize, usize), kind: EntropyKind) -> Result<f64> {
    let a = partial_trace(rho, dims, Keep::First)?;
    let b = partial_trace(rho, dims, Keep::Second)?;
    Ok(entropy(&a, kind) + entropy(&b, kind) - entropy(rho, kind))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, from_rows};
    use approx::assert_abs_diff_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn excited() -> DensityOperator {
        DensityOperator::diagonal(&[0.0, 1.0]).unwrap()
    }

    fn plus() -> DensityOperator {
        let s = 0.5f64.sqrt();
        DensityOperator::pure(&[c(s, 0.0), c(s, 0.0)]).unwrap()
    }

    fn bell() -> DensityOperator {
        let s = 0.5f64.sqrt();
        DensityOperator::pure(&[c(s, 0.0), ZERO, ZERO, c(s, 0.0)]).unwrap()
    }

    fn random_qubit(rng: &mut ChaCha8Rng) -> DensityOperator {
        // uniform direction, radius ∈ [0, 1]
        let r: f64 = rng.gen_range(0.0..1.0);
        let z: f64 = rng.gen_range(-1.0..1.0);
        let phi: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
        let s = (1.0 - z * z).sqrt();
        let (x, y, z) = (r * s * phi.cos(), r * s * phi.sin(), r * z);
        DensityOperator::new(from_rows(&[
            &[c(0.5 * (1.0 + z), 0.0), c(0.5 * x, -0.5 * y)],
            &[c(0.5 * x, 0.5 * y), c(0.5 * (1.0 - z), 0.0)],
        ]))
        .unwrap()
    }

    #[test]
    fn validation_rejects_bad_states() {
        assert!(DensityOperator::diagonal(&[0.5, 0.6]).is_err());
        assert!(DensityOperator::diagonal(&[1.2, -0.2]).is_err());
        let m = from_rows(&[&[c(0.5, 0.0), c(0.1, 0.0)], &[c(0.0, 0.0), c(0.5, 0.0)]]);
        assert!(DensityOperator::new(m).is_err());
    }

    #[test]
    fn ergotropy_examples() {
        let h = HamiltonianSpec::qubit(1.0);
        assert_abs_diff_eq!(ergotropy(&excited(), &h).unwrap(), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(ergotropy(&h.gibbs(0.7), &h).unwrap(), 0.0, epsilon = 1e-15);
        // ⟨H⟩ = 1/2 minus ground energy 0
        assert_abs_diff_eq!(ergotropy(&plus(), &h).unwrap(), 0.5, epsilon = 1e-14);
    }

    #[test]
    fn ergotropy_dimension_mismatch() {
        let h = HamiltonianSpec::harmonic(1.0, 3);
        assert!(matches!(ergotropy(&plus(), &h), Err(Error::DimensionMismatch { .. })));
        assert!(passive_state(&plus(), &h).is_err());
    }

    #[test]
    fn passive_state_examples() {
        let h = HamiltonianSpec::qubit(1.0);
        let p = passive_state(&excited(), &h).unwrap();
        assert!(linalg::max_abs_diff(p.matrix(), &linalg::diag_real(&[1.0, 0.0])) < 1e-15);
        let g = h.gibbs(1.3);
        let pg = passive_state(&g, &h).unwrap();
        assert!(linalg::max_abs_diff(pg.matrix(), g.matrix()) < 1e-14);
        // spectrum (0.7, 0.3) with coherence: rotate diag(0.3, 0.7)
        let th: f64 = 0.4;
        let u = from_rows(&[&[c(th.cos(), 0.0), c(-th.sin(), 0.0)], &[c(th.sin(), 0.0), c(th.cos(), 0.0)]]);
        let rho = DensityOperator::diagonal(&[0.3, 0.7]).unwrap().evolve(&u).unwrap();
        let p = passive_state(&rho, &h).unwrap();
        assert!(linalg::max_abs_diff(p.matrix(), &linalg::diag_real(&[0.7, 0.3])) < 1e-14);
    }

    #[test]
    fn entropy_examples() {
        assert_abs_diff_eq!(von_neumann_entropy(&plus()), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(von_neumann_entropy(&DensityOperator::maximally_mixed(2)), 2f64.ln(), epsilon = 1e-15);
        let s = von_neumann_entropy(&DensityOperator::diagonal(&[0.9, 0.1]).unwrap());
        let binary = -0.9 * 0.9f64.ln() - 0.1 * 0.1f64.ln();
        assert_abs_diff_eq!(s, binary, epsilon = 1e-15);
        assert_abs_diff_eq!(s, 0.325_082_973_391_448_2, epsilon = 1e-15);
    }

    #[test]
    fn purity_coherence_renyi() {
        let h = HamiltonianSpec::qubit(1.0);
        assert_abs_diff_eq!(purity(&plus()), 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(renyi2_entropy(&plus()), 0.0, epsilon = 1e-15);
        let d = DensityOperator::diagonal(&[0.4, 0.6]).unwrap();
        assert_eq!(l1_coherence(&d, &h).unwrap(), 0.0);
        assert_abs_diff_eq!(l1_coherence(&plus(), &h).unwrap(), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn partial_trace_examples() {
        let a = DensityOperator::diagonal(&[0.2, 0.8]).unwrap();
        let b = plus();
        let ab = a.tensor(&b);
        assert!(linalg::max_abs_diff(partial_trace(&ab, (2, 2), Keep::First).unwrap().matrix(), a.matrix()) < 1e-15);
        assert!(linalg::max_abs_diff(partial_trace(&ab, (2, 2), Keep::Second).unwrap().matrix(), b.matrix()) < 1e-15);
        let mixed = linalg::identity(2).scale(0.5);
        for keep in [Keep::First, Keep::Second] {
            let r = partial_trace(&bell(), (2, 2), keep).unwrap();
            assert!(linalg::max_abs_diff(r.matrix(), &mixed) < 1e-15);
        }
        assert!(partial_trace(&bell(), (3, 2), Keep::First).is_err());
    }

    #[test]
    fn mutual_information_examples() {
        let prod = DensityOperator::diagonal(&[0.2, 0.8]).unwrap().tensor(&plus());
        assert_abs_diff_eq!(mutual_information(&prod, (2, 2), EntropyKind::VonNeumann).unwrap(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            mutual_information(&bell(), (2, 2), EntropyKind::VonNeumann).unwrap(),
            2.0 * 2f64.ln(),
            epsilon = 1e-12
        );
    }

    #[test]
    fn random_qubit_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..1000 {
            let rho = random_qubit(&mut rng);
            let e0: f64 = rng.gen_range(-1.0..1.0);
            let e1 = e0 + rng.gen_range(0.0..3.0);
            let h = HamiltonianSpec::diagonal(vec![e0, e1]).unwrap();
            let r = ergotropy(&rho, &h).unwrap();
            let mean = rho.expectation(&h.matrix()).unwrap();
            assert!(r >= 0.0);
            assert!(r <= mean - e0 + 1e-12);
            let p = passive_state(&rho, &h).unwrap();
            assert!(ergotropy(&p, &h).unwrap() <= 1e-10);
            let a = rho.populations(Order::Ascending);
            let b = p.populations(Order::Ascending);
            assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() <= 1e-10));
        }
    }

    #[test]
    fn degenerate_relabeling_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let energies = vec![0.0, 1.0, 1.0, 2.0];
        let swap = CMat::from_fn(4, 4, |r, k| {
            let perm = [0, 2, 1, 3];
            if r == perm[k] { linalg::ONE } else { ZERO }
        });
        let h1 = HamiltonianSpec::diagonal(energies.clone()).unwrap();
        let h2 = HamiltonianSpec::with_basis(energies, Some(swap)).unwrap();
        for _ in 0..50 {
            let psi: Vec<C64> = (0..4).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
            let mix = DensityOperator::pure(&psi).unwrap().matrix().scale(0.6) + linalg::identity(4).scale(0.1);
            let rho = DensityOperator::from_numeric(mix).unwrap();
            let a = ergotropy(&rho, &h1).unwrap();
            let b = ergotropy(&rho, &h2).unwrap();
            assert!((a - b).abs() <= 1e-10);
        }
    }

    #[test]
    fn passive_ties_are_harmless() {
        let h = HamiltonianSpec::diagonal(vec![0.0, 0.5, 1.0]).unwrap();
        let rho = DensityOperator::diagonal(&[0.25, 0.5, 0.25]).unwrap();
        let p = passive_state(&rho, &h).unwrap();
        assert!(linalg::max_abs_diff(p.matrix(), &linalg::diag_real(&[0.5, 0.25, 0.25])) < 1e-15);
        assert_abs_diff_eq!(ergotropy(&rho, &h).unwrap(), 0.5 * 0.5 - 0.25 * 0.5, epsilon = 1e-15);
    }

    #[test]
    fn local_unitary_leaves_other_marginal() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let psi: Vec<C64> = (0..4).map(|_| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect();
        let rho = DensityOperator::pure(&psi).unwrap();
        let g = CMat::from_fn(2, 2, |_, _| c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        let u = linalg::expm(&(linalg::hermitian_part(&g) * C64::new(0.0, -1.0)));
        let full = linalg::kron(&linalg::identity(2), &u);
        let evolved = rho.evolve(&full).unwrap();
        let before = partial_trace(&rho, (2, 2), Keep::First).unwrap();
        let after = partial_trace(&evolved, (2, 2), Keep::First).unwrap();
        assert!(linalg::max_abs_diff(before.matrix(), after.matrix()) <= 1e-12);
    }

    #[test]
    fn incoherent_part_of_plus_state() {
        let h = HamiltonianSpec::qubit(1.0);
        assert_eq!(incoherent_ergotropy(&plus(), &h).unwrap(), 0.0);
        assert_abs_diff_eq!(incoherent_ergotropy(&excited(), &h).unwrap(), 1.0, epsilon = 1e-15);
    }
}
