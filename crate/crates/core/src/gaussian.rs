//! Single-mode Gaussian battery `ρ = D(μ)S(ξ)π(N)S†(ξ)D†(μ)` with
//! `S(ξ) = exp[(ξa†² − ξ*a²)/2]`, `ξ = |ξ|e^{iφ}`, `μ = |μ|e^{iθ}` and
//! `H = ω(a†a + ½)`.
//!
//! Moments use the complex ordering `x = (a, a†)`:
//! `d = (μ, μ*)`, `Θ = (N + ½) F(ξ)` with
//!
//! ```text
//! F = [[cosh 2|ξ|,           e^{iφ} sinh 2|ξ|],
//!      [e^{−iφ} sinh 2|ξ|,   cosh 2|ξ|       ]]
//! ```
//!
//! so `Θ₁₁ = ⟨δa†δa⟩ + ½`, `Θ₁₂ = ⟨δa²⟩` and the vacuum has `Θ = I/2`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, Order, C64, ZERO};
use crate::states::ErgotropyBreakdown;

/// Slack on the uncertainty bound `det Θ ≥ 1/4`.
pub const UNCERTAINTY_TOL: f64 = 1e-10;
/// Slack on the family constraint `f ≥ 0`.
pub const FAMILY_TOL: f64 = 1e-12;
/// Below this `|ξ|` the squeezing phase is reported as 0.
pub const PHASE_GAUGE_TOL: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianState {
    pub mu: C64,
    pub xi_mag: f64,
    pub phi: f64,
    pub n_thermal: f64,
    pub omega: f64,
}

impl GaussianState {
    pub fn new(mu: C64, xi_mag: f64, phi: f64, n_thermal: f64, omega: f64) -> Result<Self> {
        if !(mu.re.is_finite() && mu.im.is_finite() && phi.is_finite()) {
            return Err(Error::domain("displacement and phase must be finite"));
        }
        if !(xi_mag >= 0.0 && xi_mag.is_finite()) {
            return Err(Error::domain(format!("squeezing magnitude must be nonnegative, got {xi_mag}")));
        }
        if !(n_thermal >= 0.0 && n_thermal.is_finite()) {
            return Err(Error::domain(format!("thermal occupation must be nonnegative, got {n_thermal}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!("mode frequency must be positive, got {omega}")));
        }
        Ok(Self { mu, xi_mag, phi, n_thermal, omega })
    }

    pub fn vacuum(omega: f64) -> Self {
        Self { mu: ZERO, xi_mag: 0.0, phi: 0.0, n_thermal: 0.0, omega }
    }

    pub fn thermal(n_thermal: f64, omega: f64) -> Result<Self> {
        Self::new(ZERO, 0.0, 0.0, n_thermal, omega)
    }

    pub fn coherent(mu: C64, omega: f64) -> Result<Self> {
        Self::new(mu, 0.0, 0.0, 0.0, omega)
    }

    /// Complex squeezing parameter `|ξ|e^{iφ}`.
    pub fn xi(&self) -> C64 {
        C64::from_polar(self.xi_mag, self.phi)
    }

    /// Displacement phase `θ = arg μ`.
    pub fn theta(&self) -> f64 {
        self.mu.arg()
    }

    pub fn to_moments(&self) -> MomentForm {
        to_moments(self)
    }

    pub fn ergotropy(&self) -> ErgotropyBreakdown {
        ergotropy_split(self)
    }
}

/// Symplectic action of `S(ξ)` on `(a, a†)`: `a → a cosh r + a† e^{iφ} sinh r`.
pub fn squeeze_matrix(r: f64, phi: f64) -> CMat {
    let (ch, sh) = (r.cosh(), r.sinh());
    let e = C64::from_polar(sh, phi);
    linalg::from_rows(&[&[c(ch, 0.0), e], &[e.conj(), c(ch, 0.0)]])
}

/// `F(ξ, φ) = S S†`.
pub fn f_matrix(r: f64, phi: f64) -> CMat {
    let (ch, sh) = ((2.0 * r).cosh(), (2.0 * r).sinh());
    let e = C64::from_polar(sh, phi);
    linalg::from_rows(&[&[c(ch, 0.0), e], &[e.conj(), c(ch, 0.0)]])
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentForm {
    pub d: [C64; 2],
    pub theta: CMat,
}

impl MomentForm {
    pub fn det(&self) -> f64 {
        let t = &self.theta;
        (t[(0, 0)] * t[(1, 1)] - t[(0, 1)] * t[(1, 0)]).re
    }

    /// Checks the complex-form structure and `det Θ ≥ 1/4`.
    pub fn validate(&self) -> Result<()> {
        let t = &self.theta;
        if t.nrows() != 2 || t.ncols() != 2 {
            return Err(Error::DimensionMismatch { expected: 2, found: t.nrows() });
        }
        let scale = 1.0 + linalg::max_abs(t);
        let defect = linalg::hermitian_defect(t)
            .max((t[(0, 0)] - t[(1, 1)]).norm())
            .max((t[(0, 1)] - t[(1, 0)].conj()).norm());
        if defect > 1e-10 * scale {
            return Err(Error::NonHermitianInput(defect));
        }
        if (self.d[1] - self.d[0].conj()).norm() > 1e-10 * (1.0 + self.d[0].norm()) {
            return Err(Error::InvalidState("first moments are not of the form (μ, μ*)".into()));
        }
        let det = self.det();
        if !(det >= 0.25 - UNCERTAINTY_TOL) || t[(0, 0)].re <= 0.0 {
            return Err(Error::UnphysicalCovariance(det));
        }
        Ok(())
    }
}

pub fn to_moments(s: &GaussianState) -> MomentForm {
    MomentForm { d: [s.mu, s.mu.conj()], theta: f_matrix(s.xi_mag, s.phi).scale(s.n_thermal + 0.5) }
}

/// Inverts [`to_moments`]: `N + ½ = √det Θ`, `cosh 2|ξ| = Tr Θ/(2√det Θ)`,
/// `φ = arg Θ₁₂`.
pub fn from_moments(m: &MomentForm, omega: f64) -> Result<GaussianState> {
    m.validate()?;
    let det = m.det().max(0.25);
    let root = det.sqrt();
    let n_thermal = (root - 0.5).max(0.0);
    let cosh2 = (m.theta[(0, 0)].re / root).max(1.0);
    let xi_mag = 0.5 * cosh2.acosh();
    let off = m.theta[(0, 1)];
    let phi = if xi_mag > PHASE_GAUGE_TOL && off.norm() > 0.0 { off.arg() } else { 0.0 };
    GaussianState::new(m.d[0], xi_mag, phi, n_thermal, omega)
}

/// `R^d = ω|μ|²`, `R^s = ω(N + ½)(cosh 2|ξ| − 1)`.
pub fn ergotropy_split(s: &GaussianState) -> ErgotropyBreakdown {
    let rd = s.omega * s.mu.norm_sqr();
    let rs = s.omega * squeezing_ergotropy_unit(s.xi_mag, s.n_thermal);
    ErgotropyBreakdown::new(&[("displacement", rd), ("squeezing", rs)])
}

fn squeezing_ergotropy_unit(xi_mag: f64, n_thermal: f64) -> f64 {
    // cosh 2r − 1 = 2 sinh² r, accurate at small r
    (n_thermal + 0.5) * 2.0 * xi_mag.sinh().powi(2)
}

/// `⟨H⟩ = ω(|μ|² + (N + ½) cosh 2|ξ|)`.
pub fn internal_energy(s: &GaussianState) -> f64 {
    s.omega * (s.mu.norm_sqr() + (s.n_thermal + 0.5) * (2.0 * s.xi_mag).cosh())
}

/// `S₂ = ln(1 + 2N)`.
pub fn renyi2(s: &GaussianState) -> f64 {
    (1.0 + 2.0 * s.n_thermal).ln()
}

/// The isoergotropic family with charge `ω|μ̄|²`, anchored at the displaced
/// vacuum `|μ̄⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoFamilyGaussian {
    pub mu_bar_sq: f64,
    pub omega: f64,
}

impl IsoFamilyGaussian {
    pub fn new(mu_bar_sq: f64, omega: f64) -> Result<Self> {
        if !(mu_bar_sq >= 0.0 && mu_bar_sq.is_finite()) {
            return Err(Error::domain(format!("|μ̄|² must be nonnegative, got {mu_bar_sq}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!("mode frequency must be positive, got {omega}")));
        }
        Ok(Self { mu_bar_sq, omega })
    }

    pub fn charge(&self) -> f64 {
        self.omega * self.mu_bar_sq
    }

    /// `f = |μ̄|² − (N + ½)(cosh 2|ξ| − 1)`.
    pub fn f(&self, xi_mag: f64, n_thermal: f64) -> f64 {
        self.mu_bar_sq - squeezing_ergotropy_unit(xi_mag, n_thermal)
    }

    /// Largest squeezing on the family at occupation `N`, where `f = 0`.
    pub fn boundary_xi(&self, n_thermal: f64) -> f64 {
        0.5 * (1.0 + self.mu_bar_sq / (n_thermal + 0.5)).acosh()
    }

    /// Squeezing at which displacement and squeezing ergotropies are equal.
    pub fn equal_split_xi(&self, n_thermal: f64) -> f64 {
        0.5 * (1.0 + 0.5 * self.mu_bar_sq / (n_thermal + 0.5)).acosh()
    }

    pub fn reference(&self, theta: f64) -> GaussianState {
        GaussianState { mu: C64::from_polar(self.mu_bar_sq.sqrt(), theta), xi_mag: 0.0, phi: 0.0, n_thermal: 0.0, omega: self.omega }
    }

    pub fn contains(&self, s: &GaussianState, tol: f64) -> bool {
        (s.omega - self.omega).abs() <= tol && (ergotropy_split(s).total - self.charge()).abs() <= tol * (1.0 + self.charge())
    }
}

/// `|μ| = √f`.
pub fn iso_displacement(family: &IsoFamilyGaussian, xi_mag: f64, n_thermal: f64) -> Result<f64> {
    if !(xi_mag >= 0.0) || !(n_thermal >= 0.0) {
        return Err(Error::domain("squeezing and occupation must be nonnegative"));
    }
    let f = family.f(xi_mag, n_thermal);
    if f < -FAMILY_TOL {
        return Err(Error::OutOfFamilyRange { value: xi_mag, low: 0.0, high: family.boundary_xi(n_thermal) });
    }
    Ok(f.max(0.0).sqrt())
}

pub fn family_member(family: &IsoFamilyGaussian, xi_mag: f64, phi: f64, n_thermal: f64, theta: f64) -> Result<GaussianState> {
    let m = iso_displacement(family, xi_mag, n_thermal)?;
    GaussianState::new(C64::from_polar(m, theta), xi_mag, phi, n_thermal, family.omega)
}

/// `R_μ̄ / (R_μ̄ + ω(N + ½))`.
pub fn charge_energy_ratio(family: &IsoFamilyGaussian, n_thermal: f64) -> f64 {
    let r = family.charge();
    r / (r + family.omega * (n_thermal + 0.5))
}

/// `W(α) = exp[−½ v†Θ⁻¹v] / (π√det Θ)` with `v = (α − μ, α* − μ*)`.
pub fn wigner(s: &GaussianState, alpha: C64) -> f64 {
    wigner_moments(&s.to_moments(), alpha)
}

pub fn wigner_moments(m: &MomentForm, alpha: C64) -> f64 {
    let det = m.det();
    let t = &m.theta;
    let v = [alpha - m.d[0], alpha.conj() - m.d[1]];
    // Θ⁻¹ = adj(Θ)/det
    let inv = [[t[(1, 1)] / det, -t[(0, 1)] / det], [-t[(1, 0)] / det, t[(0, 0)] / det]];
    let mut q = ZERO;
    for i in 0..2 {
        for j in 0..2 {
            q += v[i].conj() * inv[i][j] * v[j];
        }
    }
    (-0.5 * q.re).exp() / (std::f64::consts::PI * det.sqrt())
}

/// Thermal attenuator: `d → √η d`, `Θ → ηΘ + (1 − η)(N′ + ½)I`.
pub fn attenuator_moments(m: &MomentForm, eta: f64, n_env: f64) -> Result<MomentForm> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain(format!("transmissivity must lie in [0, 1], got {eta}")));
    }
    if !(n_env >= 0.0) {
        return Err(Error::domain(format!("environment occupation must be nonnegative, got {n_env}")));
    }
    let s = eta.sqrt();
    let out = MomentForm {
        d: [m.d[0] * s, m.d[1] * s],
        theta: m.theta.scale(eta) + linalg::identity(2).scale((1.0 - eta) * (n_env + 0.5)),
    };
    out.validate()?;
    Ok(out)
}

pub fn attenuator_channel(s: &GaussianState, eta: f64, n_env: f64) -> Result<GaussianState> {
    from_moments(&attenuator_moments(&s.to_moments(), eta, n_env)?, s.omega)
}

/// `S(ξ)` on moments: `d → S d`, `Θ → S Θ S†`.
pub fn squeeze_moments(m: &MomentForm, r: f64, phi: f64) -> MomentForm {
    let s = squeeze_matrix(r, phi);
    let d = [s[(0, 0)] * m.d[0] + s[(0, 1)] * m.d[1], s[(1, 0)] * m.d[0] + s[(1, 1)] * m.d[1]];
    MomentForm { d, theta: &s * &m.theta * s.adjoint() }
}

/// `D(μ)` on moments: `d → d + (μ, μ*)`.
pub fn displace_moments(m: &MomentForm, mu: C64) -> MomentForm {
    MomentForm { d: [m.d[0] + mu, m.d[1] + mu.conj()], theta: m.theta.clone() }
}

fn check_same_family(s_in: &GaussianState, target: &GaussianState) -> Result<()> {
    let (a, b) = (ergotropy_split(s_in).total, ergotropy_split(target).total);
    if (a - b).abs() > 1e-10 * (1.0 + a.abs()) || (s_in.omega - target.omega).abs() > 1e-12 {
        return Err(Error::OutOfFamilyRange { value: b, low: a, high: a });
    }
    Ok(())
}

/// Thermalize to `N′` (attenuator at `η = 0`), squeeze by `ξ′`, displace by
/// `μ′`.
pub fn iso_channel_three_step(s_in: &GaussianState, target: &GaussianState) -> Result<GaussianState> {
    check_same_family(s_in, target)?;
    let m = attenuator_moments(&s_in.to_moments(), 0.0, target.n_thermal)?;
    let m = squeeze_moments(&m, target.xi_mag, target.phi);
    let m = displace_moments(&m, target.mu);
    from_moments(&m, s_in.omega)
}

/// Moments of `n` modes in the ordering `(a₁, a₁†, a₂, a₂†, …)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModeMoments {
    pub d: Vec<C64>,
    pub theta: CMat,
}

impl ModeMoments {
    pub fn modes(&self) -> usize {
        self.d.len() / 2
    }

    pub fn direct_sum(parts: &[MomentForm]) -> Self {
        let n = parts.len();
        let mut d = Vec::with_capacity(2 * n);
        let mut theta = CMat::zeros(2 * n, 2 * n);
        for (k, m) in parts.iter().enumerate() {
            d.extend_from_slice(&m.d);
            theta.view_mut((2 * k, 2 * k), (2, 2)).copy_from(&m.theta);
        }
        Self { d, theta }
    }

    pub fn mode(&self, k: usize) -> MomentForm {
        MomentForm { d: [self.d[2 * k], self.d[2 * k + 1]], theta: self.theta.view((2 * k, 2 * k), (2, 2)).into_owned() }
    }

    /// `d → U d`, `Θ → U Θ U†`.
    pub fn transform(&self, u: &CMat) -> Self {
        let d: Vec<C64> = (0..u.nrows()).map(|i| (0..u.ncols()).map(|j| u[(i, j)] * self.d[j]).sum()).collect();
        Self { d, theta: u * &self.theta * u.adjoint() }
    }

    /// `S₂ = ½ ln(4ⁿ det Θ)`, with the determinant from the spectrum.
    pub fn renyi2(&self) -> Result<f64> {
        let spec = linalg::eigh(&linalg::hermitian_part(&self.theta), Order::Ascending)?;
        let log_det: f64 = spec.eigenvalues.iter().map(|&l| l.ln()).sum();
        Ok(0.5 * (self.modes() as f64 * 4f64.ln() + log_det))
    }
}

/// Mode-swap block on two modes.
pub fn mode_swap() -> CMat {
    linalg::from_real_rows(&[
        &[0.0, 0.0, 1.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
    ])
}

/// Appends an auxiliary prepared in `target`, swaps the modes and keeps the
/// first mode.
pub fn swap_realization(s_in: &GaussianState, target: &GaussianState) -> Result<GaussianState> {
    check_same_family(s_in, target)?;
    let joint = ModeMoments::direct_sum(&[s_in.to_moments(), target.to_moments()]);
    from_moments(&joint.transform(&mode_swap()).mode(0), s_in.omega)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SelectiveMeasurement {
    /// `|φ_opt⟩ = D(μ)S(ξ)|0⟩`, the input's principal eigenvector.
    pub optimal_vector: GaussianState,
    /// Conditional output `|μ̄⟩`.
    pub output: GaussianState,
    pub success_probability: f64,
}

/// Optimal rank-one element `M = |μ̄⟩⟨φ_opt|` on a family input. Succeeds
/// with probability `1/(N + 1)`.
pub fn selective_measurement(s: &GaussianState, family: &IsoFamilyGaussian, theta_bar: f64) -> SelectiveMeasurement {
    SelectiveMeasurement {
        optimal_vector: GaussianState { n_thermal: 0.0, ..*s },
        output: family.reference(theta_bar),
        success_probability: 1.0 / (s.n_thermal + 1.0),
    }
}
