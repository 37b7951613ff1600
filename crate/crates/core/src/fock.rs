//! Truncated Fock-space constructions of single-mode Gaussian states.
//!
//! These are deliberately brute force: the displacement and squeeze operators
//! come from exponentiating the truncated generators, and the state is built
//! on a padded space before being cut back to the requested truncation. The
//! weight lost in that cut is the trace deficit.

use crate::error::{Error, Result};
use crate::linalg::{self, CMat, C64, ZERO};
use crate::states::DensityOperator;

/// Largest cutoff the adaptive constructor will try.
pub const MAX_TRUNCATION: usize = 512;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockOracleConfig {
    pub truncation: usize,
    pub trace_deficit_tol: f64,
}

impl FockOracleConfig {
    pub fn new(truncation: usize) -> Result<Self> {
        if truncation < 2 {
            return Err(Error::domain("Fock truncation must be at least 2"));
        }
        Ok(Self { truncation, trace_deficit_tol: 1e-8 })
    }

    pub fn with_tolerance(mut self, tol: f64) -> Self {
        self.trace_deficit_tol = tol;
        self
    }
}

pub fn annihilation(dim: usize) -> CMat {
    CMat::from_fn(dim, dim, |i, j| if j == i + 1 { C64::new((j as f64).sqrt(), 0.0) } else { ZERO })
}

fn displacement_in(mu: C64, dim: usize) -> CMat {
    let a = annihilation(dim);
    let gen = a.adjoint().scale(1.0) * mu - &a * mu.conj();
    linalg::expm(&gen)
}

fn squeeze_in(xi: C64, dim: usize) -> CMat {
    let a = annihilation(dim);
    let a2 = &a * &a;
    let gen = (a2.adjoint() * xi - a2 * xi.conj()) * C64::new(0.5, 0.0);
    linalg::expm(&gen)
}

/// `exp(μa† − μ*a)` on the truncated space.
pub fn fock_displacement(mu: C64, cfg: &FockOracleConfig) -> CMat {
    displacement_in(mu, cfg.truncation)
}

/// `exp[(ξa†² − ξ*a²)/2]` on the truncated space.
pub fn fock_squeeze(xi: C64, cfg: &FockOracleConfig) -> CMat {
    squeeze_in(xi, cfg.truncation)
}

fn thermal_populations(n_thermal: f64, dim: usize) -> Vec<f64> {
    if n_thermal == 0.0 {
        return (0..dim).map(|n| if n == 0 { 1.0 } else { 0.0 }).collect();
    }
    let ratio = n_thermal / (n_thermal + 1.0);
    (0..dim).map(|n| ratio.powi(n as i32) / (n_thermal + 1.0)).collect()
}

/// Thermal state with populations `Nⁿ/(N+1)ⁿ⁺¹`, renormalized after the
/// deficit check.
pub fn fock_thermal(n_thermal: f64, cfg: &FockOracleConfig) -> Result<DensityOperator> {
    if !(n_thermal >= 0.0) {
        return Err(Error::domain(format!("thermal occupation must be nonnegative, got {n_thermal}")));
    }
    let pops = thermal_populations(n_thermal, cfg.truncation);
    let deficit = 1.0 - pops.iter().sum::<f64>();
    if deficit > cfg.trace_deficit_tol {
        return Err(Error::TruncationTooSmall { truncation: cfg.truncation, deficit });
    }
    DensityOperator::from_numeric(linalg::diag_real(&pops))
}

/// Generator stored by diagonals: `(offset, entries)` with entry `i` at
/// row `i + max(0, -offset)`, column `i + max(0, offset)`.
struct Banded {
    dim: usize,
    bands: Vec<(isize, Vec<C64>)>,
}

impl Banded {
    fn apply(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![ZERO; self.dim];
        for (off, entries) in &self.bands {
            let (r0, c0) = if *off >= 0 { (0, *off as usize) } else { ((-off) as usize, 0) };
            for (i, e) in entries.iter().enumerate() {
                out[r0 + i] += e * v[c0 + i];
            }
        }
        out
    }

    fn norm_bound(&self) -> f64 {
        self.bands.iter().map(|(_, e)| e.iter().map(|x| x.norm()).fold(0.0, f64::max)).sum()
    }

    /// `exp(G)v` by Taylor series on substeps of norm at most 2.
    fn exp_apply(&self, v: Vec<C64>) -> Vec<C64> {
        let steps = (0.5 * self.norm_bound()).ceil().max(1.0) as usize;
        let h = 1.0 / steps as f64;
        let mut acc = v;
        for _ in 0..steps {
            let mut term = acc.clone();
            for k in 1..200 {
                term = self.apply(&term);
                let scale = h / k as f64;
                let mut size: f64 = 0.0;
                for (a, t) in acc.iter_mut().zip(term.iter_mut()) {
                    *t *= scale;
                    *a += *t;
                    size = size.max(t.norm());
                }
                if size < 1e-18 {
                    break;
                }
            }
        }
        acc
    }
}

fn displacement_generator(mu: C64, dim: usize) -> Banded {
    let root: Vec<f64> = (1..dim).map(|n| (n as f64).sqrt()).collect();
    Banded {
        dim,
        bands: vec![
            (-1, root.iter().map(|r| mu * r).collect()),
            (1, root.iter().map(|r| -mu.conj() * r).collect()),
        ],
    }
}

fn squeeze_generator(xi: C64, dim: usize) -> Banded {
    let root: Vec<f64> = (0..dim.saturating_sub(2)).map(|n| (((n + 1) * (n + 2)) as f64).sqrt()).collect();
    Banded {
        dim,
        bands: vec![
            (-2, root.iter().map(|r| xi * (0.5 * r)).collect()),
            (2, root.iter().map(|r| -xi.conj() * (0.5 * r)).collect()),
        ],
    }
}

/// `D(μ)S(ξ)π(N)S†(ξ)D†(μ)` cut to `cfg.truncation` levels. The unitaries
/// act on a space padded to twice the truncation, one thermal level at a time.
pub fn fock_gaussian(mu: C64, xi: C64, n_thermal: f64, cfg: &FockOracleConfig) -> Result<DensityOperator> {
    if !(n_thermal >= 0.0) {
        return Err(Error::domain(format!("thermal occupation must be nonnegative, got {n_thermal}")));
    }
    let keep = cfg.truncation;
    let padded = 2 * keep;
    let weights: Vec<f64> = thermal_populations(n_thermal, padded).into_iter().take_while(|&w| w > 1e-14).collect();
    let d = displacement_generator(mu, padded);
    let s = squeeze_generator(xi, padded);
    let mut psi = CMat::zeros(keep, weights.len());
    for (k, w) in weights.iter().enumerate() {
        let mut v = vec![ZERO; padded];
        v[k] = C64::new(w.sqrt(), 0.0);
        let out = d.exp_apply(s.exp_apply(v));
        for (i, x) in out.into_iter().take(keep).enumerate() {
            psi[(i, k)] = x;
        }
    }
    let block = &psi * psi.adjoint();
    let deficit = 1.0 - block.trace().re;
    if deficit > cfg.trace_deficit_tol {
        return Err(Error::TruncationTooSmall { truncation: keep, deficit });
    }
    DensityOperator::from_numeric(block)
}

/// Like [`fock_gaussian`] but grows the truncation by half until the deficit fits,
/// up to [`MAX_TRUNCATION`].
pub fn fock_gaussian_adaptive(mu: C64, xi: C64, n_thermal: f64, cfg: &FockOracleConfig) -> Result<DensityOperator> {
    let mut trial = *cfg;
    loop {
        match fock_gaussian(mu, xi, n_thermal, &trial) {
            Err(Error::TruncationTooSmall { .. }) if trial.truncation < MAX_TRUNCATION => {
                trial.truncation = (trial.truncation * 3 / 2).min(MAX_TRUNCATION);
            }
            other => return other,
        }
    }
}
