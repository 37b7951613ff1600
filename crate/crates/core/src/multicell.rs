//! Two-cell X-state battery
//!
//! ```text
//! ρ_X(q) = [[q/2,       0,        0,       q² − q/2],
//!           [0,         q(1−q),   0,       0       ],
//!           [0,         0,        (1−q)²,  0       ],
//!           [q² − q/2,  0,        0,       q/2     ]]
//! ```
//!
//! with basis index `2·q₁ + q₂` and `H = ω(n₁ + n₂)`. Cell 1 is the first
//! tensor factor. Its excited population is `1 − 3q/2 + q²`, so for `q < 1/2`
//! it is cell 1 that carries the local charge.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMat, ZERO};
use crate::numeric;
use crate::states::{self, DensityOperator, HamiltonianSpec, Keep};

fn check_q(q: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::domain(format!("q must lie in [0, 1], got {q}")));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct XState {
    pub q: f64,
    pub omega: f64,
}

impl XState {
    pub fn new(q: f64, omega: f64) -> Result<Self> {
        check_q(q)?;
        Ok(Self { q, omega })
    }

    pub fn matrix(&self) -> CMat {
        let q = self.q;
        let mut m = linalg::diag_real(&[q / 2.0, q * (1.0 - q), (1.0 - q) * (1.0 - q), q / 2.0]);
        let corner = c(q * q - q / 2.0, 0.0);
        m[(0, 3)] = corner;
        m[(3, 0)] = corner;
        m
    }

    pub fn to_density(&self) -> DensityOperator {
        DensityOperator::from_numeric(self.matrix()).expect("X-state is valid for q in [0, 1]")
    }

    pub fn hamiltonian(&self) -> HamiltonianSpec {
        HamiltonianSpec::two_qubit(self.omega)
    }

    pub fn partner(&self) -> XState {
        XState { q: 1.0 - self.q, omega: self.omega }
    }
}

/// `(ω|1 − 2q|, ω|(q − 2)(q − ½)|)`.
pub fn x_ergotropy(q: f64, omega: f64) -> Result<(f64, f64)> {
    check_q(q)?;
    Ok((omega * (1.0 - 2.0 * q).abs(), omega * ((q - 2.0) * (q - 0.5)).abs()))
}

/// `max{0, 2q² − q − 2(1−q)√(q(1−q))}`.
pub fn concurrence(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(concurrence_argument(q).max(0.0))
}

fn concurrence_argument(q: f64) -> f64 {
    2.0 * q * q - q - 2.0 * (1.0 - q) * (q * (1.0 - q)).max(0.0).sqrt()
}

/// Wootters concurrence of an arbitrary two-qubit state.
pub fn wootters_concurrence(rho: &DensityOperator) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    let sy = linalg::from_rows(&[&[ZERO, c(0.0, -1.0)], &[c(0.0, 1.0), ZERO]]);
    let yy = linalg::kron(&sy, &sy);
    let tilde = &yy * rho.matrix().map(|z| z.conj()) * &yy;
    let sqrt_rho = linalg::sqrt_psd(rho.matrix())?;
    let r = linalg::hermitian_part(&(&sqrt_rho * tilde * &sqrt_rho));
    let spec = linalg::eigh(&r, linalg::Order::Descending)?;
    let l: Vec<f64> = spec.eigenvalues.iter().map(|x| x.max(0.0).sqrt()).collect();
    Ok((l[0] - l[1] - l[2] - l[3]).max(0.0))
}

/// Largest `q` below which the concurrence vanishes.
pub fn sudden_death_point() -> Result<f64> {
    numeric::bisect(concurrence_argument, 0.5, 1.0, 1e-15, 200)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocalErgotropyReport {
    pub r_total: f64,
    pub r_1: f64,
    pub r_2: f64,
    pub deficit: f64,
    pub p_1: f64,
    pub p_2: f64,
}

/// Local ergotropies of both cells from partial traces, labeled by tensor
/// position.
pub fn local_report(q: f64, omega: f64) -> Result<LocalErgotropyReport> {
    let x = XState::new(q, omega)?;
    let rho = x.to_density();
    let h = HamiltonianSpec::qubit(omega);
    let r_total = states::ergotropy(&rho, &x.hamiltonian())?;
    let c1 = states::partial_trace(&rho, (2, 2), Keep::First)?;
    let c2 = states::partial_trace(&rho, (2, 2), Keep::Second)?;
    let r_1 = states::ergotropy(&c1, &h)?;
    let r_2 = states::ergotropy(&c2, &h)?;
    Ok(LocalErgotropyReport {
        r_total,
        r_1,
        r_2,
        deficit: r_total - r_1 - r_2,
        p_1: c1.matrix()[(1, 1)].re,
        p_2: c2.matrix()[(1, 1)].re,
    })
}

/// `p₁(q) = 1 − 3q/2 + q²`.
pub fn p1(q: f64) -> f64 {
    1.0 - 1.5 * q + q * q
}

/// `p₂(q) = 3q/2 − q²`.
pub fn p2(q: f64) -> f64 {
    1.5 * q - q * q
}

/// Thermal auxiliary `τ = (1−q)|g⟩⟨g| + q|e⟩⟨e|` for each cell.
pub fn auxiliary(q: f64) -> Result<DensityOperator> {
    check_q(q)?;
    let tau = DensityOperator::diagonal(&[1.0 - q, q])?;
    Ok(tau.tensor(&tau))
}

/// Exchanges `|eg⟩ ↔ |ee⟩`.
pub fn v1() -> CMat {
    linalg::from_real_rows(&[
        &[1.0, 0.0, 0.0, 0.0],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 0.0, 1.0],
        &[0.0, 0.0, 1.0, 0.0],
    ])
}

/// `|gg⟩ → |φ⁺⟩`, `|ee⟩ → |φ⁻⟩`, identity on the single-excitation sector.
pub fn v2() -> CMat {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    linalg::from_real_rows(&[
        &[h, 0.0, 0.0, h],
        &[0.0, 1.0, 0.0, 0.0],
        &[0.0, 0.0, 1.0, 0.0],
        &[h, 0.0, 0.0, -h],
    ])
}

pub fn post_unitary() -> CMat {
    v2() * v1()
}

/// SWAP between two `d`-dimensional registers on `C^d ⊗ C^d`.
pub fn register_swap(d: usize) -> CMat {
    let n = d * d;
    CMat::from_fn(n, n, |r, col| {
        let (i, j) = (col / d, col % d);
        if r == j * d + i {
            linalg::ONE
        } else {
            ZERO
        }
    })
}

/// Applies the replacer-plus-`V` map to an arbitrary two-qubit input. The
/// SWAP with the auxiliary leaves the auxiliary state behind, so the
/// intermediate state is `τ₁ ⊗ τ₂` regardless of the input.
pub fn iso_map_on(rho: &DensityOperator, q: f64) -> Result<DensityOperator> {
    if rho.dim() != 4 {
        return Err(Error::DimensionMismatch { expected: 4, found: rho.dim() });
    }
    auxiliary(q)?.evolve(&post_unitary())
}

/// `K[ρ_X(q)]`, which equals `ρ_X(1 − q)`.
pub fn iso_map(q: f64, omega: f64) -> Result<DensityOperator> {
    let x = XState::new(q, omega)?;
    iso_map_on(&x.to_density(), q)
}

/// The same map assembled on the 16-dimensional system ⊗ auxiliary space.
pub fn iso_map_explicit(q: f64, omega: f64) -> Result<DensityOperator> {
    let x = XState::new(q, omega)?;
    let joint = x.to_density().tensor(&auxiliary(q)?);
    let swapped = joint.evolve(&register_swap(4))?;
    let reduced = states::partial_trace(&swapped, (4, 4), Keep::First)?;
    reduced.evolve(&post_unitary())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsoMapThermo {
    /// Heat from the auxiliary, `ω(2q − 1)`.
    pub q_heat: f64,
    /// Work by the post-processing unitary, `−Q`.
    pub work: f64,
    pub q_1: f64,
    pub q_2: f64,
    pub delta_u: f64,
    pub delta_s: f64,
}

pub fn iso_map_thermo(q: f64, omega: f64) -> Result<IsoMapThermo> {
    let x = XState::new(q, omega)?;
    let h = x.hamiltonian().matrix();
    let before = x.to_density();
    let middle = auxiliary(q)?;
    let after = middle.evolve(&post_unitary())?;
    let u0 = before.expectation(&h)?;
    let u1 = middle.expectation(&h)?;
    let u2 = after.expectation(&h)?;
    let c1_before = states::partial_trace(&before, (2, 2), Keep::First)?.matrix()[(1, 1)].re;
    let c1_after = states::partial_trace(&after, (2, 2), Keep::First)?.matrix()[(1, 1)].re;
    let c2_before = states::partial_trace(&before, (2, 2), Keep::Second)?.matrix()[(1, 1)].re;
    let c2_after = states::partial_trace(&after, (2, 2), Keep::Second)?.matrix()[(1, 1)].re;
    Ok(IsoMapThermo {
        q_heat: u1 - u0,
        work: u2 - u1,
        q_1: omega * (c1_after - c1_before),
        q_2: omega * (c2_after - c2_before),
        delta_u: u2 - u0,
        delta_s: states::von_neumann_entropy(&after) - states::von_neumann_entropy(&before),
    })
}

/// Closed forms `Q = ω(2q−1)`, `W = −Q`, `Q₁ = ω(q − ½) = −Q₂`.
pub fn iso_map_thermo_closed(q: f64, omega: f64) -> Result<IsoMapThermo> {
    check_q(q)?;
    let heat = omega * (2.0 * q - 1.0);
    let q1 = omega * (q - 0.5);
    Ok(IsoMapThermo { q_heat: heat, work: -heat, q_1: q1, q_2: -q1, delta_u: 0.0, delta_s: 0.0 })
}

/// Spectrum `{q², q(1−q), q(1−q), (1−q)²}` sorted ascending.
pub fn x_spectrum(q: f64) -> [f64; 4] {
    let mut s = [q * q, q * (1.0 - q), q * (1.0 - q), (1.0 - q) * (1.0 - q)];
    s.sort_by(f64::total_cmp);
    s
}
