//! Two-level battery: the incoherent/coherent ergotropy split, the
//! isoergotropic family anchored at an incoherent active state, its
//! thermodynamic bookkeeping, and three constructions that move states within
//! a family (a replacer channel, its SWAP realization, selective measurements).
//!
//! Matrices use the basis `(|g⟩, |e⟩)` with `H = ω|e⟩⟨e|`. A state with
//! excited population `p`, l₁ coherence `C` and phase `θ` is
//!
//! ```text
//! ρ = [[1 − p,          C e^{iθ/2}/2],
//!      [C e^{−iθ/2}/2,  p           ]]
//! ```
//!
//! The phase is physical modulo 4π in `θ` (2π in `θ/2`); nothing here
//! restricts its range.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, Order, C64, ONE, ZERO};
use crate::states::{self, DensityOperator, ErgotropyBreakdown, HamiltonianSpec, Keep};

/// Slack on the Bloch-ball constraint `C² ≤ 4p(1−p)`.
pub const BLOCH_TOL: f64 = 1e-12;
/// Slack on both ends of a family's population range.
pub const FAMILY_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TlsState {
    pub p: f64,
    pub coherence: f64,
    pub theta: f64,
    pub omega: f64,
}

impl TlsState {
    pub fn new(p: f64, coherence: f64, theta: f64, omega: f64) -> Result<Self> {
        check_population(p)?;
        if !(coherence >= 0.0) {
            return Err(Error::domain(format!("coherence must be nonnegative, got {coherence}")));
        }
        if coherence * coherence > 4.0 * p * (1.0 - p) + BLOCH_TOL {
            return Err(Error::domain(format!("C² = {} exceeds 4p(1−p) = {}", coherence * coherence, 4.0 * p * (1.0 - p))));
        }
        Ok(Self { p, coherence, theta, omega })
    }

    pub fn incoherent(p: f64, omega: f64) -> Result<Self> {
        Self::new(p, 0.0, 0.0, omega)
    }

    pub fn density_matrix(&self) -> CMat {
        let off = C64::from_polar(0.5 * self.coherence, 0.5 * self.theta);
        linalg::from_rows(&[&[c(1.0 - self.p, 0.0), off], &[off.conj(), c(self.p, 0.0)]])
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator::from_numeric(self.density_matrix()).expect("TlsState invariants imply a valid state")
    }

    /// Reads `(p, C, θ)` back from a qubit density operator.
    pub fn from_density(rho: &DensityOperator, omega: f64) -> Result<Self> {
        if rho.dim() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: rho.dim() });
        }
        let m = rho.matrix();
        let p = m[(1, 1)].re.clamp(0.0, 1.0);
        let off = m[(0, 1)];
        let coherence = 2.0 * off.norm();
        let theta = if coherence > 0.0 { 2.0 * off.arg() } else { 0.0 };
        let coherence = coherence.min((4.0 * p * (1.0 - p)).sqrt());
        Self::new(p, coherence, theta, omega)
    }

    pub fn hamiltonian(&self) -> HamiltonianSpec {
        HamiltonianSpec::qubit(self.omega)
    }

    pub fn purity(&self) -> f64 {
        let z = 2.0 * self.p - 1.0;
        0.5 * (1.0 + z * z + self.coherence * self.coherence)
    }

    pub fn ergotropy(&self) -> ErgotropyBreakdown {
        ergotropy_split(self).expect("valid state")
    }

    /// Bloch vector `(s_x, s_y, s_z)` with `ρ = (1 + s·σ)/2` and `s_z = +1`
    /// at the ground state.
    pub fn bloch(&self) -> [f64; 3] {
        let off = C64::from_polar(0.5 * self.coherence, 0.5 * self.theta);
        [2.0 * off.re, -2.0 * off.im, 1.0 - 2.0 * self.p]
    }
}

fn check_population(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::domain(format!("population {p} outside [0, 1]")));
    }
    Ok(())
}

/// Population-inversion ergotropy `ω(2p − 1)` for `p > 1/2`, zero otherwise
/// (including `p = 1/2`).
pub fn inc_ergotropy(p: f64, omega: f64) -> Result<f64> {
    check_population(p)?;
    Ok(if p > 0.5 { omega * (2.0 * p - 1.0) } else { 0.0 })
}

/// Coherence ergotropy `(ω/2)(ψ − √(ψ² − C²))` with `ψ² = (2p−1)² + C²`.
pub fn coh_ergotropy(p: f64, coherence: f64, omega: f64) -> Result<f64> {
    let s = TlsState::new(p, coherence, 0.0, omega)?;
    if s.coherence == 0.0 {
        return Ok(0.0);
    }
    let z2 = (2.0 * p - 1.0).powi(2);
    let psi = (z2 + coherence * coherence).sqrt();
    // ψ² − C² = (2p−1)²
    Ok(0.5 * omega * (psi - z2.sqrt()))
}

pub fn ergotropy_split(s: &TlsState) -> Result<ErgotropyBreakdown> {
    let inc = inc_ergotropy(s.p, s.omega)?;
    let coh = coh_ergotropy(s.p, s.coherence, s.omega)?;
    Ok(ErgotropyBreakdown::new(&[("incoherent", inc), ("coherent", coh)]))
}

/// The isoergotropic family of the incoherent state with excited population
/// `p_bar ∈ (1/2, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoFamilyTls {
    pub p_bar: f64,
    pub omega: f64,
}

impl IsoFamilyTls {
    pub fn new(p_bar: f64, omega: f64) -> Result<Self> {
        if !(p_bar > 0.5 && p_bar <= 1.0) {
            return Err(Error::domain(format!("p_bar must lie in (1/2, 1], got {p_bar}")));
        }
        Ok(Self { p_bar, omega })
    }

    /// Population of the pure member, `2p̄ − 1`.
    pub fn pure_population(&self) -> f64 {
        2.0 * self.p_bar - 1.0
    }

    /// Total ergotropy shared by every member.
    pub fn charge(&self) -> f64 {
        self.omega * (2.0 * self.p_bar - 1.0)
    }

    pub fn reference(&self) -> TlsState {
        TlsState { p: self.p_bar, coherence: 0.0, theta: 0.0, omega: self.omega }
    }

    pub fn contains(&self, p: f64) -> bool {
        p >= self.pure_population() - FAMILY_TOL && p <= self.p_bar + FAMILY_TOL
    }

    fn check(&self, p: f64) -> Result<f64> {
        if !self.contains(p) {
            return Err(Error::OutOfFamilyRange { value: p, low: self.pure_population(), high: self.p_bar });
        }
        Ok(p.clamp(self.pure_population(), self.p_bar))
    }
}

/// `C_p̄(p) = √(8(p̄ − p)(2p̄ − 1))`.
pub fn iso_coherence(family: &IsoFamilyTls, p: f64) -> Result<f64> {
    let p = family.check(p)?;
    let c2 = 8.0 * (family.p_bar - p) * family.pure_population();
    // at p = 2p̄ − 1 this equals 4p(1−p) exactly in real arithmetic
    Ok(c2.max(0.0).min(4.0 * p * (1.0 - p)).sqrt())
}

pub fn family_member(family: &IsoFamilyTls, p: f64, theta: f64) -> Result<TlsState> {
    let coherence = iso_coherence(family, p)?;
    let p = family.check(p)?;
    TlsState::new(p, coherence, theta, family.omega)
}

/// `⟨H⟩ = ωp`.
pub fn internal_energy(s: &TlsState) -> f64 {
    s.omega * s.p
}

/// Heat absorbed moving from population `p` to `p_prime` at fixed
/// Hamiltonian. Positive means absorbed by the battery.
pub fn heat(p: f64, p_prime: f64, omega: f64) -> f64 {
    omega * (p_prime - p)
}

pub fn binary_entropy(x: f64) -> f64 {
    let term = |y: f64| if y > 0.0 { -y * y.ln() } else { 0.0 };
    term(x) + term(1.0 - x)
}

/// Von Neumann entropy of the family member at `p`: `H₂(2p̄ − p)`.
pub fn entropy_on_family(family: &IsoFamilyTls, p: f64) -> Result<f64> {
    let p = family.check(p)?;
    Ok(binary_entropy(2.0 * family.p_bar - p))
}

/// Charge over internal energy, `(2p̄ − 1)/p`.
pub fn charge_energy_ratio(family: &IsoFamilyTls, p: f64) -> Result<f64> {
    let p = family.check(p)?;
    Ok(family.pure_population() / p)
}

#[derive(Debug, Clone)]
pub struct KrausSet {
    pub operators: Vec<CMat>,
}

impl KrausSet {
    pub fn new(operators: Vec<CMat>) -> Result<Self> {
        let set = Self { operators };
        let defect = set.completeness_defect();
        if defect > 1e-12 {
            return Err(Error::domain(format!("Kraus operators are not complete (defect {defect:.3e})")));
        }
        Ok(set)
    }

    /// Largest entry of `|Σ K†K − 1|`.
    pub fn completeness_defect(&self) -> f64 {
        let n = self.operators.first().map_or(0, |k| k.ncols());
        let sum = self.operators.iter().fold(CMat::zeros(n, n), |acc, k| acc + k.adjoint() * k);
        linalg::max_abs_diff(&sum, &linalg::identity(n))
    }

    pub fn apply(&self, rho: &DensityOperator) -> Result<DensityOperator> {
        let n = rho.dim();
        let mut out = CMat::zeros(n, n);
        for k in &self.operators {
            if k.ncols() != n {
                return Err(Error::DimensionMismatch { expected: k.ncols(), found: n });
            }
            out += k * rho.matrix() * k.adjoint();
        }
        DensityOperator::from_numeric(out)
    }
}

/// Kraus set of the generalized-amplitude-damping-type channel whose output is
/// always the family member at `(p_prime, theta_prime)`.
pub fn gadc_kraus(family: &IsoFamilyTls, p_prime: f64, theta_prime: f64) -> Result<KrausSet> {
    let target = family_member(family, p_prime, theta_prime)?;
    let spec = target.to_density().spectrum(Order::Ascending);
    let p_e = spec.eigenvalues[1].clamp(0.0, 1.0);
    let psi_g: Vec<C64> = spec.eigenvectors.column(0).iter().copied().collect();
    let psi_e: Vec<C64> = spec.eigenvectors.column(1).iter().copied().collect();
    let se = p_e.sqrt();
    let sg = (1.0 - p_e).sqrt();
    KrausSet::new(vec![
        linalg::outer(&psi_e, &psi_e).scale(se),
        linalg::outer(&psi_e, &psi_g).scale(se),
        linalg::outer(&psi_g, &psi_g).scale(sg),
        linalg::outer(&psi_g, &psi_e).scale(sg),
    ])
}

/// Two-qubit SWAP.
pub fn swap_gate() -> CMat {
    linalg::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
    ])
}

/// `Tr_Aux[SWAP (ρ ⊗ τ) SWAP†]` evaluated on the full 4×4 space.
pub fn swap_realization(input: &TlsState, aux_target: &TlsState) -> Result<TlsState> {
    let joint = input.to_density().tensor(&aux_target.to_density());
    let swapped = joint.evolve(&swap_gate())?;
    let reduced = states::partial_trace(&swapped, (2, 2), Keep::First)?;
    TlsState::from_density(&reduced, input.omega)
}

/// Rank-one selective measurement `M = |Ψ⟩⟨e|` acting on the incoherent
/// reference, with `|Ψ⟩ ∝ (C/(2p)) e^{iθ/2}|g⟩ + |e⟩`. A rank-one element
/// always yields a pure output, so the target must be the pure member
/// (`p = 2p̄ − 1`). Returns the operator and its success probability `p̄`.
pub fn rank_one_measurement(family: &IsoFamilyTls, p: f64, theta: f64) -> Result<(CMat, f64)> {
    let pure = family.pure_population();
    if (p - pure).abs() > FAMILY_TOL {
        return Err(Error::OutOfFamilyRange { value: p, low: pure, high: pure });
    }
    let p = pure;
    let coherence = iso_coherence(family, p)?;
    let amp = C64::from_polar(coherence / (2.0 * p), 0.5 * theta);
    let norm = (1.0 + amp.norm_sqr()).sqrt();
    let out = [amp / norm, ONE / norm];
    let e = [ZERO, ONE];
    let m = linalg::outer(&out, &e);
    let reference = family.reference().to_density();
    let success = (m.adjoint() * &m * reference.matrix()).trace().re;
    Ok((m, success))
}

/// Higher-rank selective measurement `M = √q √ρ' ϱ^{−1/2}` reaching a mixed
/// family member from the incoherent reference, with `q` set to its largest
/// admissible value.
pub fn general_measurement_qmax(family: &IsoFamilyTls, p_prime: f64, theta_prime: f64) -> Result<(CMat, f64)> {
    if family.p_bar >= 1.0 {
        return Err(Error::SingularReference);
    }
    let target = family_member(family, p_prime, theta_prime)?;
    let q = q_max(family, target.p)?;
    let inv_sqrt_ref = linalg::diag_real(&[1.0 / (1.0 - family.p_bar).sqrt(), 1.0 / family.p_bar.sqrt()]);
    let sqrt_target = linalg::sqrt_psd(&target.density_matrix())?;
    Ok(((sqrt_target * inv_sqrt_ref).scale(q.sqrt()), q))
}

/// `q_max = 2/(T + √(T² − 4D))`.
pub fn q_max(family: &IsoFamilyTls, p_prime: f64) -> Result<f64> {
    if family.p_bar >= 1.0 {
        return Err(Error::SingularReference);
    }
    let pp = family.check(p_prime)?;
    let pb = family.p_bar;
    let cc = iso_coherence(family, pp)?;
    let t = (1.0 - pp) / (1.0 - pb) + pp / pb;
    let d = ((1.0 - pp) * pp - (0.5 * cc).powi(2)) / ((1.0 - pb) * pb);
    Ok(2.0 / (t + (t * t - 4.0 * d).max(0.0).sqrt()))
}

/// `ϱ^{−1/2} ρ' ϱ^{−1/2}` for the reference `ϱ` and family target `ρ'`.
pub fn measurement_a_matrix(family: &IsoFamilyTls, p_prime: f64, theta_prime: f64) -> Result<CMat> {
    if family.p_bar >= 1.0 {
        return Err(Error::SingularReference);
    }
    let target = family_member(family, p_prime, theta_prime)?;
    let inv_sqrt_ref = linalg::diag_real(&[1.0 / (1.0 - family.p_bar).sqrt(), 1.0 / family.p_bar.sqrt()]);
    Ok(&inv_sqrt_ref * target.density_matrix() * &inv_sqrt_ref)
}

/// Success probability after `attempts` independent tries with reset.
pub fn cumulative_success(q: f64, attempts: u32) -> f64 {
    1.0 - (1.0 - q).powi(attempts as i32)
}

/// Applies a single measurement element and renormalizes. Returns the
/// post-measurement state and the outcome probability.
pub fn apply_measurement(m: &CMat, rho: &DensityOperator) -> Result<(DensityOperator, f64)> {
    let un = m * rho.matrix() * m.adjoint();
    let prob = un.trace().re;
    if !(prob > 0.0) {
        return Err(Error::domain("measurement outcome has zero probability"));
    }
    Ok((DensityOperator::from_numeric(un)?, prob))
}
