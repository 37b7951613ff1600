//! Oracle-equivalence checks runnable from the command line.
//!
//! Each check compares a closed form against an independent computation.
//! Naming a check in `perturb` shifts its reference value, which must make
//! that check fail; this guards against checks that cannot fail.

use std::f64::consts::PI;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::charging::{self, ChargingConfig};
use crate::error::{Error, Result};
use crate::fock::{self, FockOracleConfig};
use crate::gaussian::{self, GaussianState, IsoFamilyGaussian};
use crate::gaussian_dynamics::{self, TwoModeConfig};
use crate::linalg::{self, c};
use crate::multicell::{self, XState};
use crate::numeric::linspace;
use crate::open_system::{self, BathSpec};
use crate::states::{self, HamiltonianSpec};
use crate::tls::{self, IsoFamilyTls, TlsState};
use crate::tls_dynamics::{self, TwoTlsConfig};

pub const PERTURBATION: f64 = 1e-3;

/// Worst deviation found by a check and the tolerance it must meet.
#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub deviation: f64,
    pub tolerance: f64,
    pub seconds: f64,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.deviation <= self.tolerance
    }
}

type Check = fn(f64) -> Result<f64>;

pub const CHECKS: [(&str, f64, Check); 10] = [
    ("tls-split-vs-brute-force", 1e-10, tls_split),
    ("gaussian-split-vs-fock", 1e-4, gaussian_split),
    ("tls-family-charge", 1e-12, tls_family_charge),
    ("kraus-vs-swap", 1e-12, kraus_vs_swap),
    ("two-tls-closed-vs-expm", 1e-10, two_tls),
    ("two-mode-closed-vs-expm", 1e-10, two_mode),
    ("x-state-iso-map", 1e-12, x_state),
    ("tls-decay-vs-rk4", 1e-8, tls_decay),
    ("gaussian-decay-vs-moment-rk4", 1e-8, gaussian_decay),
    ("charging-root-vs-golden-section", 1e-6, charging_root),
];

pub fn check_names() -> Vec<&'static str> {
    CHECKS.iter().map(|c| c.0).collect()
}

/// Runs every check, shifting the reference of the one named `perturb`.
pub fn run(perturb: Option<&str>) -> Result<Vec<CheckOutcome>> {
    check_names().into_iter().map(|name| run_check(name, perturb == Some(name))).collect()
}

pub fn run_check(name: &str, perturbed: bool) -> Result<CheckOutcome> {
    let &(name, tolerance, f) = CHECKS
        .iter()
        .find(|c| c.0 == name)
        .ok_or_else(|| Error::Config(format!("unknown check '{name}'")))?;
    let start = Instant::now();
    let deviation = f(if perturbed { PERTURBATION } else { 0.0 })?;
    Ok(CheckOutcome { name, deviation, tolerance, seconds: start.elapsed().as_secs_f64() })
}

fn tls_split(shift: f64) -> Result<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let p: f64 = rng.gen();
        let c_max = 2.0 * (p * (1.0 - p)).sqrt();
        let s = TlsState::new(p, c_max * rng.gen::<f64>(), 4.0 * PI * rng.gen::<f64>(), 0.5 + rng.gen::<f64>())?;
        let brute = states::ergotropy(&s.to_density(), &HamiltonianSpec::qubit(s.omega))? + shift;
        worst = worst.max((s.ergotropy().component_sum() - brute).abs());
    }
    Ok(worst)
}

fn gaussian_split(shift: f64) -> Result<f64> {
    let cfg = FockOracleConfig::new(80)?.with_tolerance(1e-6);
    let mut worst: f64 = 0.0;
    for (mu, xi, n) in [(1.5, 0.8, 0.5), (0.0, 1.0, 1.0), (2.0, 0.0, 0.0)] {
        let s = GaussianState::new(c(mu, 0.0), xi, 0.3, n, 1.0)?;
        let rho = fock::fock_gaussian_adaptive(s.mu, s.xi(), n, &cfg)?;
        let brute = states::ergotropy(&rho, &HamiltonianSpec::harmonic(1.0, rho.dim()))? * (1.0 + shift);
        let closed = s.ergotropy().total;
        worst = worst.max(((brute - closed) / closed).abs());
    }
    Ok(worst)
}

fn tls_family_charge(shift: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for pb in linspace(0.55, 1.0, 10) {
        let fam = IsoFamilyTls::new(pb, 1.0)?;
        for p in linspace(fam.pure_population(), pb, 21) {
            let r = tls::family_member(&fam, p, 1.0)?.ergotropy().total;
            worst = worst.max((r - fam.charge() - shift).abs());
        }
    }
    Ok(worst)
}

fn kraus_vs_swap(shift: f64) -> Result<f64> {
    let fam = IsoFamilyTls::new(0.7, 1.0)?;
    let input = tls::family_member(&fam, 0.55, 0.4)?;
    let mut worst: f64 = 0.0;
    for p in linspace(fam.pure_population(), 0.7, 7) {
        let target = tls::family_member(&fam, p, 2.0)?;
        let out = tls::gadc_kraus(&fam, p, 2.0)?.apply(&input.to_density())?;
        let swap = tls::swap_realization(&input, &target)?;
        worst = worst.max(out.trace_distance(&swap.to_density())? + shift);
    }
    Ok(worst)
}

fn two_tls(shift: f64) -> Result<f64> {
    let cfg = TwoTlsConfig::new(0.8, 1.0, 1.0, 0.3, 0.0)?;
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 2.0 * PI, 25) {
        let d = linalg::max_abs_diff(&tls_dynamics::propagator(&cfg, t), &tls_dynamics::propagator_expm(&cfg, t));
        worst = worst.max(d + shift);
    }
    Ok(worst)
}

fn two_mode(shift: f64) -> Result<f64> {
    let cfg = TwoModeConfig::figure_default();
    let mut worst: f64 = 0.0;
    for t in linspace(0.0, 2.0 * PI, 25) {
        let d = gaussian_dynamics::propagate(&cfg, t).max_abs_diff(&gaussian_dynamics::propagate_expm(&cfg, t));
        worst = worst.max(d + shift);
    }
    Ok(worst)
}

fn x_state(shift: f64) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for q in linspace(0.0, 1.0, 21) {
        let out = multicell::iso_map(q, 1.0)?;
        let want = XState::new(1.0 - q, 1.0)?.to_density();
        worst = worst.max(linalg::max_abs_diff(out.matrix(), want.matrix()) + shift);
    }
    Ok(worst)
}

fn tls_decay(shift: f64) -> Result<f64> {
    let bath = BathSpec::fermionic(1.0, 0.2)?;
    let fam = IsoFamilyTls::new(0.8, 1.0)?;
    let s0 = tls::family_member(&fam, 0.65, 0.7)?;
    let mut worst: f64 = 0.0;
    for t in [0.5, 2.0, 6.0] {
        let a = open_system::tls_decay(&s0, &bath, t)?.to_density();
        let b = open_system::tls_decay_rk4(&s0, &bath, t)?.to_density();
        worst = worst.max(a.trace_distance(&b)? + shift);
    }
    Ok(worst)
}

fn gaussian_decay(shift: f64) -> Result<f64> {
    let bath = BathSpec::new(1.0, 0.3)?;
    let fam = IsoFamilyGaussian::new(5.0, 1.0)?;
    let s0 = gaussian::family_member(&fam, 0.8, PI, 0.5, 0.0)?;
    let mut worst: f64 = 0.0;
    for t in [0.5, 2.0, 6.0] {
        let closed = open_system::gaussian_decay(&s0, &bath, t)?.to_moments();
        let rk = open_system::gaussian_moment_rk4(&s0.to_moments(), s0.omega, &bath, t);
        let d = (closed.d[0] - rk.d[0]).norm().max(linalg::max_abs_diff(&closed.theta, &rk.theta));
        worst = worst.max(d + shift);
    }
    Ok(worst)
}

fn charging_root(shift: f64) -> Result<f64> {
    let cfg = ChargingConfig::new(1.0, 1.0, 0.0, 1.0)?;
    Ok((charging::optimal_duration_numeric(&cfg) - charging::solve_alpha_t() - shift).abs())
}
