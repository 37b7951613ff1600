//! Thermal decay of both battery types under the GKLS master equation.
//!
//! TLS: damping `σ₋ = |g⟩⟨e|` at rate `γ(1 − n̄)` and pumping `σ₊` at rate
//! `γn̄`, so `ṗ = −γ(p − n̄)` and the coherence amplitude decays at `γ/2`.
//! The phase `θ` is held fixed (rotating frame); no reported quantity
//! depends on it.
//!
//! Mode: `a` at rate `γ(1 + n̄)` and `a†` at rate `γn̄`, tracked in the lab
//! frame, so `θ_t = θ₀ − ωt` and `φ_t = φ₀ − 2ωt`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianState, IsoFamilyGaussian, MomentForm};
use crate::linalg::{self, c, CMat, C64, ZERO};
use crate::numeric;
use crate::series::TimeSeries;
use crate::states::{self, DensityOperator, HamiltonianSpec};
use crate::tls::{self, IsoFamilyTls, TlsState};

/// Half-life search gives up beyond this many `1/γ`.
pub const HALF_LIFE_HORIZON: f64 = 100.0;
pub const HALF_LIFE_BISECTIONS: usize = 60;
/// RK4 step in units of `1/γ`.
pub const RK4_STEP: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BathSpec {
    pub gamma: f64,
    pub n_bar: f64,
}

impl BathSpec {
    /// Bosonic bath, `n̄ ≥ 0`.
    pub fn new(gamma: f64, n_bar: f64) -> Result<Self> {
        if !(gamma > 0.0 && gamma.is_finite()) {
            return Err(Error::domain(format!("decay rate must be positive, got {gamma}")));
        }
        if !(n_bar >= 0.0 && n_bar.is_finite()) {
            return Err(Error::domain(format!("bath occupation must be nonnegative, got {n_bar}")));
        }
        Ok(Self { gamma, n_bar })
    }

    /// Fermionic bath for a TLS, `n̄ ∈ [0, 1]`.
    pub fn fermionic(gamma: f64, n_bar: f64) -> Result<Self> {
        let b = Self::new(gamma, n_bar)?;
        if n_bar > 1.0 {
            return Err(Error::domain(format!("fermionic occupation must lie in [0, 1], got {n_bar}")));
        }
        Ok(b)
    }
}

fn check_time(t: f64) -> Result<()> {
    if !(t >= 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("time must be finite and nonnegative, got {t}")));
    }
    Ok(())
}

/// `p_t = (p₀ − n̄)e^{−γt} + n̄`, `C_t² = C₀² e^{−γt}`.
pub fn tls_decay(s0: &TlsState, bath: &BathSpec, t: f64) -> Result<TlsState> {
    check_time(t)?;
    if bath.n_bar > 1.0 {
        return Err(Error::domain("TLS bath occupation must lie in [0, 1]"));
    }
    let e = (-bath.gamma * t).exp();
    let p = (s0.p - bath.n_bar) * e + bath.n_bar;
    let coherence = s0.coherence * e.sqrt();
    TlsState::new(p.clamp(0.0, 1.0), coherence, s0.theta, s0.omega)
}

fn dissipator(l: &CMat, rho: &CMat) -> CMat {
    let ldl = l.adjoint() * l;
    l * rho * l.adjoint() - (&ldl * rho + rho * &ldl) * c(0.5, 0.0)
}

/// GKLS generator of the TLS in the rotating frame.
pub fn tls_generator(bath: &BathSpec, rho: &CMat) -> CMat {
    let lower = linalg::from_rows(&[&[ZERO, c(1.0, 0.0)], &[ZERO, ZERO]]);
    let raise = lower.adjoint();
    dissipator(&lower, rho) * c(bath.gamma * (1.0 - bath.n_bar), 0.0) + dissipator(&raise, rho) * c(bath.gamma * bath.n_bar, 0.0)
}

/// RK4 integration of the TLS master equation with step `10⁻³/γ`.
pub fn tls_decay_rk4(s0: &TlsState, bath: &BathSpec, t: f64) -> Result<TlsState> {
    check_time(t)?;
    let steps = ((t * bath.gamma / RK4_STEP).ceil() as usize).max(1);
    let rho = numeric::rk4_matrix(|_, r| tls_generator(bath, r), &s0.density_matrix(), 0.0, t, steps);
    TlsState::from_density(&DensityOperator::from_numeric(rho)?, s0.omega)
}

/// `τ_½ = γ⁻¹ ln[(p₀ − n̄)/(½ − n̄)]`, when the population crosses ½.
pub fn tls_tau_half_inc(p0: f64, bath: &BathSpec) -> Result<f64> {
    if !(p0 > 0.5 && 0.5 > bath.n_bar && p0 <= 1.0) {
        return Err(Error::domain(format!("requires p0 > 1/2 > n_bar, got p0 = {p0}, n_bar = {}", bath.n_bar)));
    }
    Ok(((p0 - bath.n_bar) / (0.5 - bath.n_bar)).ln() / bath.gamma)
}

/// Time at which `r(t)` first falls to `r(0)/2`. The upper bracket doubles
/// from `hint`; gives up past `100/γ`.
pub fn half_life(r: impl Fn(f64) -> f64, hint: f64, gamma: f64) -> Result<f64> {
    let r0 = r(0.0);
    if !(r0 > 0.0) {
        return Err(Error::domain("half-life needs positive initial ergotropy"));
    }
    let target = 0.5 * r0;
    let cap = HALF_LIFE_HORIZON / gamma;
    let (mut lo, mut hi) = (0.0, hint.min(cap));
    while r(hi) > target {
        if hi >= cap {
            return Err(Error::NoBracket(cap));
        }
        lo = hi;
        hi = (2.0 * hi).min(cap);
    }
    numeric::bisect(|t| r(t) - target, lo, hi, 0.0, HALF_LIFE_BISECTIONS)
}

pub fn tls_half_life(s0: &TlsState, bath: &BathSpec) -> Result<f64> {
    let s0 = *s0;
    let bath = *bath;
    half_life(move |t| tls_decay(&s0, &bath, t).map(|s| s.ergotropy().total).unwrap_or(f64::NAN), 1.0 / bath.gamma, bath.gamma)
}

/// `Δ_t = (N − n̄)e^{−γt} + n̄ + ½`.
pub fn delta_t(n0: f64, bath: &BathSpec, t: f64) -> f64 {
    (n0 - bath.n_bar) * (-bath.gamma * t).exp() + bath.n_bar + 0.5
}

/// Closed-form decay of a Gaussian state:
/// `|μ_t|² = |μ₀|²e^{−γt}`,
/// `N_t = √(Δ_t² + (2N+1)(2n̄+1)e^{−γt}(1 − e^{−γt}) sinh²|ξ₀|) − ½`,
/// `cosh 2|ξ_t| = [Δ_t + (2N+1)e^{−γt} sinh²|ξ₀|]/(N_t + ½)`.
pub fn gaussian_decay(s0: &GaussianState, bath: &BathSpec, t: f64) -> Result<GaussianState> {
    check_time(t)?;
    let e = (-bath.gamma * t).exp();
    let sh2 = s0.xi_mag.sinh().powi(2);
    let w = 2.0 * s0.n_thermal + 1.0;
    let delta = delta_t(s0.n_thermal, bath, t);
    let root = (delta * delta + w * (2.0 * bath.n_bar + 1.0) * e * (1.0 - e) * sh2).sqrt();
    let cosh2 = ((delta + w * e * sh2) / root).max(1.0);
    let mu = s0.mu * C64::from_polar(e.sqrt(), -s0.omega * t);
    GaussianState::new(mu, 0.5 * cosh2.acosh(), s0.phi - 2.0 * s0.omega * t, (root - 0.5).max(0.0), s0.omega)
}

fn rotation(omega: f64, t: f64) -> CMat {
    linalg::from_rows(&[&[C64::from_polar(1.0, -omega * t), ZERO], &[ZERO, C64::from_polar(1.0, omega * t)]])
}

/// Moment flow `d(t) = e^{−(γ/2 + iω)t} d(0)`,
/// `Θ(t) = e^{−γt} R Θ(0) R† + (1 − e^{−γt})(n̄ + ½)I` with the free rotation `R`.
pub fn gaussian_moment_flow(m0: &MomentForm, omega: f64, bath: &BathSpec, t: f64) -> MomentForm {
    let e = (-bath.gamma * t).exp();
    let r = rotation(omega, t);
    let amp = C64::from_polar(e.sqrt(), -omega * t);
    MomentForm {
        d: [m0.d[0] * amp, m0.d[1] * amp.conj()],
        theta: (&r * &m0.theta * r.adjoint()).scale(e) + linalg::identity(2).scale((1.0 - e) * (bath.n_bar + 0.5)),
    }
}

/// RK4 on `ḋ = A d`, `Θ̇ = AΘ + ΘA† + γ(n̄ + ½)I`, `A = diag(−iω − γ/2, iω − γ/2)`.
pub fn gaussian_moment_rk4(m0: &MomentForm, omega: f64, bath: &BathSpec, t: f64) -> MomentForm {
    let a = linalg::from_rows(&[&[c(-0.5 * bath.gamma, -omega), ZERO], &[ZERO, c(-0.5 * bath.gamma, omega)]]);
    let source = linalg::identity(2).scale(bath.gamma * (bath.n_bar + 0.5));
    // pack d as a third column next to Θ
    let mut y = CMat::zeros(2, 3);
    y.view_mut((0, 0), (2, 2)).copy_from(&m0.theta);
    y[(0, 2)] = m0.d[0];
    y[(1, 2)] = m0.d[1];
    let steps = ((t * bath.gamma / RK4_STEP).ceil() as usize).max(1);
    let f = |_: f64, y: &CMat| {
        let th = y.view((0, 0), (2, 2)).into_owned();
        let d = y.view((0, 2), (2, 1)).into_owned();
        let mut out = CMat::zeros(2, 3);
        out.view_mut((0, 0), (2, 2)).copy_from(&(&a * &th + &th * a.adjoint() + &source));
        out.view_mut((0, 2), (2, 1)).copy_from(&(&a * d));
        out
    };
    let y = numeric::rk4_matrix(f, &y, 0.0, t, steps);
    MomentForm { d: [y[(0, 2)], y[(1, 2)]], theta: y.view((0, 0), (2, 2)).into_owned() }
}

pub fn gaussian_half_life(s0: &GaussianState, bath: &BathSpec) -> Result<f64> {
    let s0 = *s0;
    let bath = *bath;
    half_life(move |t| gaussian_decay(&s0, &bath, t).map(|s| s.ergotropy().total).unwrap_or(f64::NAN), 1.0 / bath.gamma, bath.gamma)
}

/// Parameter distance used to compare decayed states.
pub fn gaussian_param_distance(a: &GaussianState, b: &GaussianState) -> f64 {
    let ma = a.to_moments();
    let mb = b.to_moments();
    (ma.d[0] - mb.d[0]).norm().max(linalg::max_abs_diff(&ma.theta, &mb.theta))
}

/// Trajectory rows and the half-life row of one grid point.
type SweepPoint = (Vec<Vec<f64>>, Vec<f64>);

/// One trajectory per grid point plus a half-life table.
#[derive(Debug, Clone)]
pub struct DecaySweep {
    pub trajectories: TimeSeries,
    pub half_lives: TimeSeries,
}

/// Decay of TLS family members `(p̄, p)` for each `p̄` in `p_bars` and
/// `points` populations evenly spaced over `[2p̄ − 1, p̄]`.
pub fn tls_decay_sweep(p_bars: &[f64], points: usize, omega: f64, bath: &BathSpec, times: &[f64]) -> Result<DecaySweep> {
    let mut grid = Vec::new();
    for &pb in p_bars {
        let fam = IsoFamilyTls::new(pb, omega)?;
        for p in numeric::linspace(fam.pure_population(), pb, points) {
            grid.push((fam, p));
        }
    }
    let results: Vec<Result<SweepPoint>> = grid
        .par_iter()
        .map(|&(fam, p)| {
            let s0 = tls::family_member(&fam, p, 0.0)?;
            let mut rows = Vec::with_capacity(times.len());
            for &t in times {
                let s = tls_decay(&s0, bath, t)?;
                let r = s.ergotropy();
                rows.push(vec![
                    fam.p_bar,
                    p,
                    t,
                    s.p,
                    s.coherence,
                    r.total,
                    r.component("incoherent").unwrap_or(0.0),
                    r.component("coherent").unwrap_or(0.0),
                ]);
            }
            let th = tls_half_life(&s0, bath)?;
            let tau = tls_tau_half_inc(p, bath).unwrap_or(f64::NAN);
            Ok((rows, vec![fam.p_bar, p, s0.coherence, th, tau]))
        })
        .collect();
    let mut trajectories = TimeSeries::new(&["p_bar", "p0", "t", "p", "C", "R", "R_inc", "R_coh"]);
    let mut half_lives = TimeSeries::new(&["p_bar", "p0", "C0", "T_half", "tau_half_inc"]);
    for r in results {
        let (rows, hl) = r?;
        for row in rows {
            trajectories.push(row)?;
        }
        half_lives.push(hl)?;
    }
    Ok(DecaySweep { trajectories, half_lives })
}

/// Decay of Gaussian family members with `(N, |ξ|)` for each `N` and
/// `points` squeezings evenly spaced over `[0, ξ*(N)]`.
pub fn gaussian_decay_sweep(
    family: &IsoFamilyGaussian,
    occupations: &[f64],
    points: usize,
    phi: f64,
    bath: &BathSpec,
    times: &[f64],
) -> Result<DecaySweep> {
    let mut grid = Vec::new();
    for &n in occupations {
        if !(n >= 0.0) {
            return Err(Error::domain(format!("thermal occupation must be nonnegative, got {n}")));
        }
        for xi in numeric::linspace(0.0, family.boundary_xi(n), points) {
            grid.push((n, xi));
        }
    }
    let results: Vec<Result<SweepPoint>> = grid
        .par_iter()
        .map(|&(n, xi)| {
            let s0 = gaussian::family_member(family, xi, phi, n, 0.0)?;
            let mut rows = Vec::with_capacity(times.len());
            for &t in times {
                let s = gaussian_decay(&s0, bath, t)?;
                let r = s.ergotropy();
                rows.push(vec![
                    n,
                    xi,
                    t,
                    s.mu.norm(),
                    s.xi_mag,
                    s.n_thermal,
                    r.total,
                    r.component("displacement").unwrap_or(0.0),
                    r.component("squeezing").unwrap_or(0.0),
                ]);
            }
            Ok((rows, vec![n, xi, gaussian_half_life(&s0, bath)?]))
        })
        .collect();
    let mut trajectories = TimeSeries::new(&["N0", "xi0", "t", "mu_abs", "xi", "N", "R", "R_d", "R_s"]);
    let mut half_lives = TimeSeries::new(&["N0", "xi0", "T_half"]);
    for r in results {
        let (rows, hl) = r?;
        for row in rows {
            trajectories.push(row)?;
        }
        half_lives.push(hl)?;
    }
    Ok(DecaySweep { trajectories, half_lives })
}

/// Ergotropy of a decayed TLS checked against the brute-force definition.
pub fn tls_decay_ergotropy_brute(s0: &TlsState, bath: &BathSpec, t: f64) -> Result<f64> {
    let s = tls_decay(s0, bath, t)?;
    states::ergotropy(&s.to_density(), &HamiltonianSpec::qubit(s.omega))
}
