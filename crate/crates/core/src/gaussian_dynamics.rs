//! Battery mode `B` and auxiliary mode `A` under the resonant beam-splitter
//! coupling, propagated on moments: `D(t) = Λ D(0)`, `Ξ(t) = Λ Ξ(0) Λ†` with
//! `Λ = e^{Wt}`. Moments are ordered `(a_B, a_B†, a_A, a_A†)`.
//!
//! Both modes start on the same family with the same squeezing, and the
//! auxiliary displacement phase is `θ_B + π/2`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{self, GaussianState, IsoFamilyGaussian, ModeMoments};
use crate::linalg::{self, c, CMat, C64, ZERO};
use crate::series::TimeSeries;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoModeConfig {
    pub omega: f64,
    pub eta: f64,
    pub family: IsoFamilyGaussian,
    pub xi_mag: f64,
    pub phi: f64,
    pub n_b0: f64,
    pub n_a0: f64,
    pub theta_b: f64,
}

impl TwoModeConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(mu_bar_sq: f64, omega: f64, eta: f64, xi_mag: f64, phi: f64, n_b0: f64, n_a0: f64, theta_b: f64) -> Result<Self> {
        if !(eta > 0.0 && eta.is_finite()) {
            return Err(Error::domain(format!("coupling must be positive, got {eta}")));
        }
        let cfg = Self { omega, eta, family: IsoFamilyGaussian::new(mu_bar_sq, omega)?, xi_mag, phi, n_b0, n_a0, theta_b };
        cfg.battery0()?;
        cfg.auxiliary0()?;
        Ok(cfg)
    }

    /// Figure parameters: `|μ̄|² = 5`, `N_B(0) = 0.8`, `N_A(0) = 0`, `|ξ| = 1`,
    /// `θ_B = 0`, `φ = π`, `ω = η = 1`.
    pub fn figure_default() -> Self {
        Self::new(5.0, 1.0, 1.0, 1.0, std::f64::consts::PI, 0.8, 0.0, 0.0).expect("figure parameters are valid")
    }

    pub fn theta_a(&self) -> f64 {
        self.theta_b + std::f64::consts::FRAC_PI_2
    }

    pub fn battery0(&self) -> Result<GaussianState> {
        gaussian::family_member(&self.family, self.xi_mag, self.phi, self.n_b0, self.theta_b)
    }

    pub fn auxiliary0(&self) -> Result<GaussianState> {
        gaussian::family_member(&self.family, self.xi_mag, self.phi, self.n_a0, self.theta_a())
    }

    pub fn initial(&self) -> JointMoments {
        let b = self.battery0().expect("validated");
        let a = self.auxiliary0().expect("validated");
        JointMoments(ModeMoments::direct_sum(&[b.to_moments(), a.to_moments()]))
    }

    pub fn period(&self) -> f64 {
        std::f64::consts::PI / self.eta
    }
}

/// Joint first moments `(μ_B, μ_B*, μ_A, μ_A*)` and covariance `Ξ`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointMoments(pub ModeMoments);

impl JointMoments {
    pub fn battery(&self, omega: f64) -> Result<GaussianState> {
        gaussian::from_moments(&self.0.mode(0), omega)
    }

    pub fn auxiliary(&self, omega: f64) -> Result<GaussianState> {
        gaussian::from_moments(&self.0.mode(1), omega)
    }

    pub fn max_abs_diff(&self, other: &JointMoments) -> f64 {
        let dd = self.0.d.iter().zip(&other.0.d).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
        dd.max(linalg::max_abs_diff(&self.0.theta, &other.0.theta))
    }
}

/// `W = [[−iω, 0, η, 0], [0, iω, 0, η], [−η, 0, −iω, 0], [0, −η, 0, iω]]`.
pub fn drift_matrix(omega: f64, eta: f64) -> CMat {
    let (m, p) = (c(0.0, -omega), c(0.0, omega));
    let (e, z) = (c(eta, 0.0), ZERO);
    linalg::from_rows(&[&[m, z, e, z], &[z, p, z, e], &[-e, z, m, z], &[z, -e, z, p]])
}

/// Closed-form `Λ(t) = e^{Wt}`.
pub fn propagator(omega: f64, eta: f64, t: f64) -> CMat {
    let (s, co) = (eta * t).sin_cos();
    let em = C64::from_polar(1.0, -omega * t);
    let ep = em.conj();
    let z = ZERO;
    linalg::from_rows(&[
        &[em * co, z, em * s, z],
        &[z, ep * co, z, ep * s],
        &[-em * s, z, em * co, z],
        &[z, -ep * s, z, ep * co],
    ])
}

pub fn propagator_expm(omega: f64, eta: f64, t: f64) -> CMat {
    linalg::expm(&(drift_matrix(omega, eta) * c(t, 0.0)))
}

pub fn propagate(cfg: &TwoModeConfig, t: f64) -> JointMoments {
    JointMoments(cfg.initial().0.transform(&propagator(cfg.omega, cfg.eta, t)))
}

pub fn propagate_expm(cfg: &TwoModeConfig, t: f64) -> JointMoments {
    JointMoments(cfg.initial().0.transform(&propagator_expm(cfg.omega, cfg.eta, t)))
}

/// `(μ_B(t), μ_A(t))` in closed form.
pub fn displacements(cfg: &TwoModeConfig, t: f64) -> (C64, C64) {
    let b0 = cfg.battery0().expect("validated").mu;
    let a0 = cfg.auxiliary0().expect("validated").mu;
    let (s, co) = (cfg.eta * t).sin_cos();
    let ph = C64::from_polar(1.0, -cfg.omega * t);
    (ph * (a0 * s + b0 * co), ph * (a0 * co - b0 * s))
}

/// `N_K(t) = ½(N_K(0) − N_K'(0)) cos 2ηt + ½(N_A(0) + N_B(0))`.
pub fn occupations(cfg: &TwoModeConfig, t: f64) -> (f64, f64) {
    let cs = (2.0 * cfg.eta * t).cos();
    let mean = 0.5 * (cfg.n_a0 + cfg.n_b0);
    (0.5 * (cfg.n_b0 - cfg.n_a0) * cs + mean, 0.5 * (cfg.n_a0 - cfg.n_b0) * cs + mean)
}

pub const MODE_COLUMNS: [&str; 10] = ["mu_re", "mu_im", "mu_abs", "xi", "phi", "N", "R", "R_d", "R_s", "S2"];

fn mode_row(s: &GaussianState) -> [f64; 10] {
    let r = s.ergotropy();
    [
        s.mu.re,
        s.mu.im,
        s.mu.norm(),
        s.xi_mag,
        s.phi,
        s.n_thermal,
        r.total,
        r.component("displacement").unwrap_or(0.0),
        r.component("squeezing").unwrap_or(0.0),
        gaussian::renyi2(s),
    ]
}

pub fn trajectory_columns() -> Vec<String> {
    let mut cols = vec!["t".to_string()];
    for k in ["B", "A"] {
        cols.extend(MODE_COLUMNS.iter().map(|c| format!("{c}_{k}")));
    }
    cols.push("S2_BA".into());
    cols.push("I2".into());
    cols
}

/// Per-mode parameters, ergotropies and Rényi-2 entropies, plus the joint
/// Rényi-2 entropy and the Rényi-2 mutual information.
pub fn mode_trajectory(cfg: &TwoModeConfig, times: &[f64]) -> Result<TimeSeries> {
    let rows: Vec<Result<Vec<f64>>> = times
        .par_iter()
        .map(|&t| {
            let m = propagate(cfg, t);
            let b = m.battery(cfg.omega)?;
            let a = m.auxiliary(cfg.omega)?;
            let s_ba = m.0.renyi2()?;
            let mut row = vec![t];
            row.extend_from_slice(&mode_row(&b));
            row.extend_from_slice(&mode_row(&a));
            row.push(s_ba);
            row.push(gaussian::renyi2(&b) + gaussian::renyi2(&a) - s_ba);
            Ok(row)
        })
        .collect();
    let mut ts = TimeSeries::new(&trajectory_columns());
    for row in rows {
        ts.push(row?)?;
    }
    Ok(ts)
}

/// First time at which `R_B^d − R_B^s` changes sign, by linear interpolation
/// on the sampled grid.
pub fn equal_split_time(ts: &TimeSeries) -> Option<f64> {
    let t = ts.column("t")?;
    let d = ts.column("R_d_B")?;
    let s = ts.column("R_s_B")?;
    let g: Vec<f64> = d.iter().zip(&s).map(|(a, b)| a - b).collect();
    (1..g.len()).find(|&k| g[k - 1] == 0.0 || g[k - 1] * g[k] < 0.0).map(|k| {
        if g[k - 1] == 0.0 {
            t[k - 1]
        } else {
            t[k - 1] + (t[k] - t[k - 1]) * g[k - 1] / (g[k - 1] - g[k])
        }
    })
}

/// Battery Wigner function sampled on a rectangular grid at each time.
pub fn wigner_frames(cfg: &TwoModeConfig, times: &[f64], re: &[f64], im: &[f64]) -> Result<TimeSeries> {
    let mut ts = TimeSeries::new(&["t", "re", "im", "W_B"]);
    for &t in times {
        let b = propagate(cfg, t).0.mode(0);
        for &x in re {
            for &y in im {
                ts.push(vec![t, x, y, gaussian::wigner_moments(&b, c(x, y))])?;
            }
        }
    }
    Ok(ts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::{linspace, zero_crossing_period};
    use std::f64::consts::PI;

    #[test]
    fn drift_examples() {
        let w0 = drift_matrix(1.3, 0.0);
        assert!(w0[(0, 2)].norm() == 0.0 && w0[(1, 3)].norm() == 0.0);
        let w = drift_matrix(1.3, 0.7);
        let sym = &w + w.adjoint();
        assert!((0..4).all(|k| sym[(k, k)].norm() == 0.0));
        // exp(Wt) with t = 1 has eigenvalues exp(∓iω ± iη)
        let u = propagator(1.3, 0.7, 1.0);
        assert!(linalg::unitarity_defect(&u) < 1e-14);
        let tr = linalg::trace(&u);
        let want = 2.0 * (c(0.0, -1.3).exp() + c(0.0, 1.3).exp()) * 0.7f64.cos();
        assert!((tr - want).norm() < 1e-14);
    }

    #[test]
    fn closed_form_matches_expm() {
        let cfg = TwoModeConfig::figure_default();
        for t in linspace(0.0, 2.0 * PI, 200) {
            assert!(linalg::max_abs_diff(&propagator(1.0, 1.0, t), &propagator_expm(1.0, 1.0, t)) < 1e-12);
            let a = propagate(&cfg, t);
            assert!(a.max_abs_diff(&propagate_expm(&cfg, t)) <= 1e-10);
            let (mb, ma) = displacements(&cfg, t);
            assert!((a.0.d[0] - mb).norm() <= 1e-10 && (a.0.d[2] - ma).norm() <= 1e-10);
            let (nb, na) = occupations(&cfg, t);
            let b = a.battery(1.0).unwrap();
            let x = a.auxiliary(1.0).unwrap();
            assert!((b.n_thermal - nb).abs() <= 1e-10 && (x.n_thermal - na).abs() <= 1e-10);
            assert!((nb + na - 0.8).abs() <= 1e-12);
            assert!((b.xi_mag - 1.0).abs() <= 1e-10 && (x.xi_mag - 1.0).abs() <= 1e-10);
            let dphi = (b.phi - (PI - 2.0 * t)).rem_euclid(2.0 * PI);
            assert!(dphi.min(2.0 * PI - dphi) < 1e-8);
        }
        assert!(propagate(&cfg, 0.0).max_abs_diff(&cfg.initial()) < 1e-15);
    }

    #[test]
    fn half_period_exchanges_displacements() {
        let cfg = TwoModeConfig::figure_default();
        let t = PI / 2.0;
        let (mb, ma) = displacements(&cfg, t);
        let ph = C64::from_polar(1.0, -t);
        assert!((mb - ph * cfg.auxiliary0().unwrap().mu).norm() < 1e-14);
        assert!((ma + ph * cfg.battery0().unwrap().mu).norm() < 1e-14);
    }

    #[test]
    fn both_modes_stay_on_family() {
        let cfg = TwoModeConfig::figure_default();
        let grid = linspace(0.0, 2.0 * PI, 200);
        let ts = mode_trajectory(&cfg, &grid).unwrap();
        for k in ["R_B", "R_A"] {
            assert!(ts.column(k).unwrap().iter().all(|r| (r - 5.0).abs() <= 1e-10));
        }
        let period = zero_crossing_period(&grid, &ts.column("R_d_B").unwrap()).unwrap();
        assert!((period - PI).abs() < grid[1] - grid[0]);
        let te = equal_split_time(&ts).unwrap();
        assert!((te - PI / 4.0).abs() < grid[1] - grid[0]);
        let i2 = ts.column("I2").unwrap();
        assert!(i2[0].abs() < 1e-12);
        assert!(i2.iter().any(|x| x.abs() > 1e-3));
    }

    #[test]
    fn rejects_off_family_start() {
        assert!(TwoModeConfig::new(0.5, 1.0, 1.0, 1.0, 0.0, 0.8, 0.0, 0.0).is_err());
        assert!(TwoModeConfig::new(5.0, 1.0, 0.0, 1.0, 0.0, 0.8, 0.0, 0.0).is_err());
    }

    #[test]
    fn wigner_frames_shape() {
        let cfg = TwoModeConfig::figure_default();
        let ax = linspace(-1.0, 1.0, 5);
        let ts = wigner_frames(&cfg, &[0.0, PI / 4.0, PI / 2.0], &ax, &ax).unwrap();
        assert_eq!(ts.len(), 75);
    }
}
