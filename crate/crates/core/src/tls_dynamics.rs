//! Two resonant two-level systems, battery `B` and auxiliary `A`, coupled by
//! `V = iη(σ₊ᴮσ₋ᴬ − σ₋ᴮσ₊ᴬ)`. The battery starts at the pure member of its
//! family and the auxiliary at the incoherent reference.
//!
//! Joint basis index is `2·q_B + q_A` with `g = 0`, `e = 1`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, C64, I, ZERO};
use crate::states::{self, DensityOperator, EntropyKind, HamiltonianSpec, Keep};
use crate::series::TimeSeries;
use crate::tls::{self, IsoFamilyTls, TlsState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoTlsConfig {
    pub omega: f64,
    pub eta: f64,
    pub family: IsoFamilyTls,
    pub theta_b: f64,
    pub phi_a: f64,
}

impl TwoTlsConfig {
    pub fn new(p_bar: f64, omega: f64, eta: f64, theta_b: f64, phi_a: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::domain(format!("coupling must be positive, got {eta}")));
        }
        if !(omega > 0.0 && omega.is_finite()) {
            return Err(Error::domain(format!("splitting must be positive, got {omega}")));
        }
        Ok(Self { omega, eta, family: IsoFamilyTls::new(p_bar, omega)?, theta_b, phi_a })
    }

    pub fn battery0(&self) -> TlsState {
        tls::family_member(&self.family, self.family.pure_population(), self.theta_b).expect("pure member is in range")
    }

    pub fn auxiliary0(&self) -> TlsState {
        tls::family_member(&self.family, self.family.p_bar, self.phi_a).expect("reference is in range")
    }

    pub fn initial_joint(&self) -> DensityOperator {
        self.battery0().to_density().tensor(&self.auxiliary0().to_density())
    }

    /// One full period of the battery components, `π/η`.
    pub fn period(&self) -> f64 {
        std::f64::consts::PI / self.eta
    }

    pub fn default_grid(&self) -> Vec<f64> {
        crate::numeric::linspace(0.0, self.period(), 200)
    }
}

/// `H_B + H_A`, diagonal with energies `ω(q_B + q_A)`.
pub fn bare_hamiltonian(omega: f64) -> CMat {
    linalg::diag_real(&[0.0, omega, omega, 2.0 * omega])
}

pub fn interaction(eta: f64) -> CMat {
    let mut v = CMat::zeros(4, 4);
    // σ₊ᴮσ₋ᴬ |g_B e_A⟩ = |e_B g_A⟩
    v[(2, 1)] = I * eta;
    v[(1, 2)] = -I * eta;
    v
}

pub fn full_hamiltonian(cfg: &TwoTlsConfig) -> CMat {
    bare_hamiltonian(cfg.omega) + interaction(cfg.eta)
}

/// Closed-form `exp(−i(H_B + H_A + V)t)`.
pub fn propagator(cfg: &TwoTlsConfig, t: f64) -> CMat {
    let (s, co) = (cfg.eta * t).sin_cos();
    let ph = C64::from_polar(1.0, -cfg.omega * t);
    let mut u = CMat::zeros(4, 4);
    u[(0, 0)] = c(1.0, 0.0);
    u[(1, 1)] = ph * co;
    u[(1, 2)] = -ph * s;
    u[(2, 1)] = ph * s;
    u[(2, 2)] = ph * co;
    u[(3, 3)] = ph * ph;
    u
}

/// Propagator by exponentiating the Hamiltonian.
pub fn propagator_expm(cfg: &TwoTlsConfig, t: f64) -> CMat {
    linalg::expm(&(full_hamiltonian(cfg) * C64::new(0.0, -t)))
}

pub fn joint_state(cfg: &TwoTlsConfig, t: f64) -> DensityOperator {
    cfg.initial_joint().evolve(&propagator(cfg, t)).expect("4×4 unitary on a 4×4 state")
}

/// Reduced battery and auxiliary states at time `t`.
pub fn evolve(cfg: &TwoTlsConfig, t: f64) -> (DensityOperator, DensityOperator) {
    let joint = joint_state(cfg, t);
    let b = states::partial_trace(&joint, (2, 2), Keep::First).expect("2⊗2");
    let a = states::partial_trace(&joint, (2, 2), Keep::Second).expect("2⊗2");
    (b, a)
}

/// `p_B(t) = ½[(p̄ − 1)cos 2ηt + p̄ + (2p̄ − 1)]`.
pub fn battery_population(cfg: &TwoTlsConfig, t: f64) -> f64 {
    let pb = cfg.family.p_bar;
    0.5 * ((pb - 1.0) * (2.0 * cfg.eta * t).cos() + pb + cfg.family.pure_population())
}

/// The battery state predicted in closed form: the family member at
/// `p_B(t)` with phase `θ + 2ωt`. The coherence amplitude carries a factor
/// `cos ηt`; its sign is absorbed as a `2π` shift of the phase.
pub fn battery_closed_form(cfg: &TwoTlsConfig, t: f64) -> Result<TlsState> {
    let p = battery_population(cfg, t).clamp(cfg.family.pure_population(), cfg.family.p_bar);
    let flip = if (cfg.eta * t).cos() < 0.0 { 2.0 * std::f64::consts::PI } else { 0.0 };
    tls::family_member(&cfg.family, p, cfg.theta_b + 2.0 * cfg.omega * t + flip)
}

#[derive(Debug, Clone)]
pub struct JointTrajectory {
    pub times: Vec<f64>,
    pub joint_states: Vec<DensityOperator>,
    pub reduced_b: Vec<DensityOperator>,
    pub reduced_a: Vec<DensityOperator>,
}

pub fn trajectory(cfg: &TwoTlsConfig, times: &[f64]) -> JointTrajectory {
    let samples: Vec<_> = times
        .par_iter()
        .map(|&t| {
            let joint = joint_state(cfg, t);
            let b = states::partial_trace(&joint, (2, 2), Keep::First).expect("2⊗2");
            let a = states::partial_trace(&joint, (2, 2), Keep::Second).expect("2⊗2");
            (joint, b, a)
        })
        .collect();
    let mut out = JointTrajectory {
        times: times.to_vec(),
        joint_states: Vec::with_capacity(times.len()),
        reduced_b: Vec::with_capacity(times.len()),
        reduced_a: Vec::with_capacity(times.len()),
    };
    for (j, b, a) in samples {
        out.joint_states.push(j);
        out.reduced_b.push(b);
        out.reduced_a.push(a);
    }
    out
}

pub const METRIC_COLUMNS: [&str; 12] =
    ["t", "R_B", "R_B_inc", "R_B_coh", "R_A", "R_A_inc", "R_A_coh", "R_total", "S_B", "S_A", "S_BA", "I"];

/// Ergotropies (total, incoherent, coherent) for both cells, composite
/// ergotropy against `H_B + H_A` (no interaction), von Neumann entropies and
/// mutual information.
pub fn trajectory_metrics(cfg: &TwoTlsConfig, times: &[f64]) -> Result<TimeSeries> {
    let h_single = HamiltonianSpec::qubit(cfg.omega);
    let h_joint = HamiltonianSpec::two_qubit(cfg.omega);
    let rows: Vec<Result<Vec<f64>>> = times
        .par_iter()
        .map(|&t| {
            let joint = joint_state(cfg, t);
            let b = states::partial_trace(&joint, (2, 2), Keep::First)?;
            let a = states::partial_trace(&joint, (2, 2), Keep::Second)?;
            let rb = states::ergotropy(&b, &h_single)?;
            let ra = states::ergotropy(&a, &h_single)?;
            let rb_inc = tls::inc_ergotropy(b.matrix()[(1, 1)].re.clamp(0.0, 1.0), cfg.omega)?;
            let ra_inc = tls::inc_ergotropy(a.matrix()[(1, 1)].re.clamp(0.0, 1.0), cfg.omega)?;
            let s_b = states::von_neumann_entropy(&b);
            let s_a = states::von_neumann_entropy(&a);
            let s_ba = states::von_neumann_entropy(&joint);
            Ok(vec![
                t,
                rb,
                rb_inc,
                rb - rb_inc,
                ra,
                ra_inc,
                ra - ra_inc,
                states::ergotropy(&joint, &h_joint)?,
                s_b,
                s_a,
                s_ba,
                states::mutual_information(&joint, (2, 2), EntropyKind::VonNeumann)?,
            ])
        })
        .collect();
    let mut ts = TimeSeries::new(&METRIC_COLUMNS);
    for row in rows {
        ts.push(row?)?;
    }
    Ok(ts)
}

/// Off-diagonal `⟨g|ρ|e⟩` of a qubit state.
pub fn coherence_element(rho: &DensityOperator) -> C64 {
    if rho.dim() == 2 {
        rho.matrix()[(0, 1)]
    } else {
        ZERO
    }
}
