//! Direct charging of a TLS under a bounded drive `‖H(t)‖ ≤ ε`.
//!
//! The optimal drive `H = −(ε/2) sin φ₀ σ_x + (ε/2) cos φ₀ σ_y` rotates the
//! Bloch vector away from the north pole (`|g⟩`) at fixed azimuth, so the
//! polar angle is `α_t = εt` and the radius stays `s₀`. Kinematics are
//! written in the frame where `H_B = ω|e⟩⟨e|` causes no precession.

use std::f64::consts::PI;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, ZERO};
use crate::numeric;
use crate::series::TimeSeries;
use crate::tls::{IsoFamilyTls, TlsState};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChargingConfig {
    pub epsilon: f64,
    pub s0: f64,
    pub phi0: f64,
    pub omega: f64,
}

impl ChargingConfig {
    pub fn new(epsilon: f64, s0: f64, phi0: f64, omega: f64) -> Result<Self> {
        if !(epsilon > 0.0 && epsilon.is_finite()) {
            return Err(Error::domain(format!("drive bound must be positive, got {epsilon}")));
        }
        if !(0.0..=1.0).contains(&s0) {
            return Err(Error::domain(format!("Bloch radius must lie in [0, 1], got {s0}")));
        }
        if !(omega > 0.0 && omega.is_finite()) || !phi0.is_finite() {
            return Err(Error::domain("splitting must be positive and azimuth finite"));
        }
        Ok(Self { epsilon, s0, phi0, omega })
    }

    /// Duration maximizing the average power, `α_T/ε`.
    pub fn optimal_duration(&self) -> f64 {
        solve_alpha_t() / self.epsilon
    }

    /// Passive starting state: radius `s₀` at the north pole.
    pub fn initial_state(&self) -> TlsState {
        TlsState { p: 0.5 * (1.0 - self.s0), coherence: 0.0, theta: 0.0, omega: self.omega }
    }

    pub fn drive(&self) -> CMat {
        let h = 0.5 * self.epsilon;
        let (s, co) = self.phi0.sin_cos();
        // −h sin φ σx + h cos φ σy
        linalg::from_rows(&[&[ZERO, c(-h * s, -h * co)], &[c(-h * s, h * co), ZERO]])
    }
}

/// `cos x + x sin x − 1`.
pub fn optimality_condition(x: f64) -> f64 {
    x.cos() + x * x.sin() - 1.0
}

/// Nontrivial root of `cos x + x sin x = 1` below `2π`, about `0.74π`.
pub fn solve_alpha_t() -> f64 {
    static ROOT: OnceLock<f64> = OnceLock::new();
    *ROOT.get_or_init(|| {
        // sign change on [π/2, π]; x = 0 and x = 2π are the excluded roots
        numeric::bisect(optimality_condition, 0.5 * PI, PI, 0.0, 200).expect("bracket is fixed")
    })
}

/// `⟨P⟩ = ω s₀ (1 − cos εT)/(2T)`.
pub fn avg_power(cfg: &ChargingConfig, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::domain(format!("charging time must be positive, got {t}")));
    }
    Ok(cfg.omega * cfg.s0 * (1.0 - (cfg.epsilon * t).cos()) / (2.0 * t))
}

/// Golden-section maximum of `avg_power` over `(0, 2π/ε)`.
pub fn optimal_duration_numeric(cfg: &ChargingConfig) -> f64 {
    let hi = 2.0 * PI / cfg.epsilon;
    numeric::golden_section_max(|t| avg_power(cfg, t).unwrap_or(f64::NEG_INFINITY), 1e-9 * hi, hi, 1e-12 * hi)
}

/// Bloch vector at polar angle `εt` and azimuth `φ₀`.
pub fn bloch_at(cfg: &ChargingConfig, t: f64) -> [f64; 3] {
    let a = cfg.epsilon * t;
    let r = cfg.s0 * a.sin();
    [r * cfg.phi0.cos(), r * cfg.phi0.sin(), cfg.s0 * a.cos()]
}

pub fn state_at(cfg: &ChargingConfig, t: f64) -> Result<TlsState> {
    from_bloch(bloch_at(cfg, t), cfg.omega)
}

/// TLS state with Bloch vector `s` (north pole `|g⟩`).
pub fn from_bloch(s: [f64; 3], omega: f64) -> Result<TlsState> {
    let transverse = s[0].hypot(s[1]);
    let theta = if transverse > 0.0 { -2.0 * s[1].atan2(s[0]) } else { 0.0 };
    TlsState::new((0.5 * (1.0 - s[2])).clamp(0.0, 1.0), transverse, theta, omega)
}

pub fn bloch_of(rho: &CMat) -> [f64; 3] {
    let off = rho[(0, 1)];
    [2.0 * off.re, -2.0 * off.im, (rho[(0, 0)] - rho[(1, 1)]).re]
}

/// RK4 on `ρ̇ = −i[H, ρ]` with the stated drive.
pub fn driven_rk4(cfg: &ChargingConfig, t: f64, steps: usize) -> CMat {
    let h = cfg.drive();
    let mi = c(0.0, -1.0);
    numeric::rk4_matrix(|_, r| (&h * r - r * &h) * mi, &cfg.initial_state().density_matrix(), 0.0, t, steps)
}

pub const TRAJECTORY_COLUMNS: [&str; 9] = ["t", "s_x", "s_y", "s_z", "alpha", "p", "C", "E", "R"];

pub fn driven_trajectory(cfg: &ChargingConfig, times: &[f64]) -> Result<TimeSeries> {
    let mut ts = TimeSeries::new(&TRAJECTORY_COLUMNS);
    let e0 = cfg.omega * cfg.initial_state().p;
    for &t in times {
        let b = bloch_at(cfg, t);
        let s = from_bloch(b, cfg.omega)?;
        ts.push(vec![t, b[0], b[1], b[2], cfg.epsilon * t, s.p, s.coherence, cfg.omega * s.p - e0, s.ergotropy().total])?;
    }
    Ok(ts)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConeIntersection {
    pub p_bar: f64,
    pub p: f64,
    pub s_bar: f64,
}

impl ConeIntersection {
    pub fn family(&self, omega: f64) -> Result<IsoFamilyTls> {
        IsoFamilyTls::new(self.p_bar, omega)
    }
}

/// Family reached at maximum power from radius `s₀`:
/// `p̄ = ½(1 + s₀ sin²(α_T/2))`, `s̄ = (2p̄ − 1) csc²(α_T/2)`,
/// `p = ½(1 − s̄ cos α_T)`.
pub fn cone_intersection(s0: f64) -> Result<ConeIntersection> {
    if !(s0 > 0.0 && s0 <= 1.0) {
        return Err(Error::domain(format!("Bloch radius must lie in (0, 1], got {s0}")));
    }
    let a = solve_alpha_t();
    let sin2 = (0.5 * a).sin().powi(2);
    let p_bar = 0.5 * (1.0 + s0 * sin2);
    let s_bar = (2.0 * p_bar - 1.0) / sin2;
    Ok(ConeIntersection { p_bar, p: 0.5 * (1.0 - s_bar * a.cos()), s_bar })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tls;

    #[test]
    fn alpha_t_root() {
        let a = solve_alpha_t();
        assert!(a > 0.735 * PI && a < 0.745 * PI, "{}", a / PI);
        assert!(optimality_condition(a).abs() <= 1e-12);
        assert_eq!(optimality_condition(0.0), 0.0);
    }

    #[test]
    fn power_examples() {
        let zero = ChargingConfig::new(1.0, 0.0, 0.0, 1.0).unwrap();
        assert_eq!(avg_power(&zero, 1.3).unwrap(), 0.0);
        let cfg = ChargingConfig::new(2.0, 0.7, 0.4, 1.5).unwrap();
        let p = avg_power(&cfg, PI / 2.0).unwrap();
        assert!((p - 0.7 * 2.0 / PI * 1.5).abs() < 1e-14);
        assert!(avg_power(&cfg, 0.0).is_err());
        let t = optimal_duration_numeric(&cfg);
        assert!((t - cfg.optimal_duration()).abs() < 1e-7);
        let best = avg_power(&cfg, cfg.optimal_duration()).unwrap();
        for t in numeric::linspace(4.0 * PI / cfg.epsilon / 1000.0, 4.0 * PI / cfg.epsilon, 1000) {
            assert!(avg_power(&cfg, t).unwrap() <= best + 1e-15);
        }
    }

    #[test]
    fn trajectory_follows_drive() {
        let cfg = ChargingConfig::new(1.3, 0.9, 0.7, 1.0).unwrap();
        assert_eq!(bloch_at(&cfg, 0.0), [0.0, 0.0, 0.9]);
        let flip = bloch_at(&cfg, PI / cfg.epsilon);
        assert!((flip[2] + 0.9).abs() < 1e-15);
        for t in numeric::linspace(0.0, 2.0 * PI / cfg.epsilon, 9) {
            let rho = driven_rk4(&cfg, t, 4000);
            let b = bloch_of(&rho);
            let exact = bloch_at(&cfg, t);
            for k in 0..3 {
                assert!((b[k] - exact[k]).abs() < 1e-10, "t={t} k={k}");
            }
            let radius = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
            assert!((radius - 0.9).abs() < 1e-10);
            let s = state_at(&cfg, t).unwrap();
            assert!(linalg::max_abs_diff(&s.density_matrix(), &rho) < 1e-10);
        }
    }

    #[test]
    fn power_matches_energy_gain() {
        let cfg = ChargingConfig::new(0.8, 0.6, 1.1, 2.0).unwrap();
        for t in [0.3, 1.0, cfg.optimal_duration(), 7.0] {
            let ts = driven_trajectory(&cfg, &[t]).unwrap();
            let de = ts.rows[0][7];
            assert!((de / t - avg_power(&cfg, t).unwrap()).abs() < 1e-10);
        }
    }

    #[test]
    fn cone_lands_on_family() {
        assert!(cone_intersection(0.0).is_err());
        let a = solve_alpha_t();
        for s0 in numeric::linspace(0.05, 1.0, 20) {
            let ci = cone_intersection(s0).unwrap();
            assert!((ci.s_bar - s0).abs() < 1e-12);
            let fam = ci.family(1.0).unwrap();
            assert!(fam.contains(ci.p));
            let member = tls::family_member(&fam, ci.p, 0.0).unwrap();
            let b = member.bloch();
            let r = (b[0] * b[0] + b[1] * b[1] + b[2] * b[2]).sqrt();
            assert!((r - ci.s_bar).abs() < 1e-12);
            assert!((b[0].hypot(b[1]).atan2(b[2]) - a).abs() < 1e-10);
            assert!((member.ergotropy().total - fam.charge()).abs() < 1e-12);
            let cfg = ChargingConfig::new(1.0, s0, 0.0, 1.0).unwrap();
            let end = state_at(&cfg, cfg.optimal_duration()).unwrap();
            assert!((end.ergotropy().total - fam.charge()).abs() < 1e-12);
        }
        let top = cone_intersection(1.0).unwrap();
        assert!((top.p_bar - 0.5 * (1.0 + (0.5 * a).sin().powi(2))).abs() < 1e-15);
    }
}
