//! Dense complex linear algebra for the small matrices used throughout the
//! crate: Hermitian eigendecomposition, matrix exponential and a few helpers.
//!
//! Hermitian spectra use a closed form for 2×2 inputs and cyclic complex
//! Jacobi rotations otherwise. Both are accurate to round-off for the
//! dimensions that appear here (at most a few hundred).

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;
pub type CMat = DMatrix<Complex64>;

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Absolute tolerance on `|A_jk - conj(A_kj)|` accepted by [`eigh`].
pub const HERMITIAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Order {
    Ascending,
    Descending,
}

/// Eigenvalues with matching eigenvectors stored as the columns of a unitary.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMat,
}

impl Spectrum {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// `V diag(λ) V†`.
    pub fn reconstruct(&self) -> CMat {
        let n = self.dim();
        let mut scaled = self.eigenvectors.clone();
        for j in 0..n {
            let l = self.eigenvalues[j];
            for i in 0..n {
                scaled[(i, j)] *= l;
            }
        }
        &scaled * self.eigenvectors.adjoint()
    }

    /// Applies `f` to the eigenvalues: `V diag(f(λ)) V†`.
    pub fn map(&self, f: impl Fn(f64) -> f64) -> CMat {
        Spectrum {
            eigenvalues: self.eigenvalues.iter().map(|&l| f(l)).collect(),
            eigenvectors: self.eigenvectors.clone(),
        }
        .reconstruct()
    }
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

pub fn identity(n: usize) -> CMat {
    CMat::identity(n, n)
}

pub fn from_rows(rows: &[&[C64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| rows[i][j])
}

pub fn from_real_rows(rows: &[&[f64]]) -> CMat {
    let n = rows.len();
    let m = rows.first().map_or(0, |r| r.len());
    CMat::from_fn(n, m, |i, j| C64::new(rows[i][j], 0.0))
}

pub fn diag_real(values: &[f64]) -> CMat {
    let n = values.len();
    CMat::from_fn(n, n, |i, j| if i == j { C64::new(values[i], 0.0) } else { ZERO })
}

pub fn kron(a: &CMat, b: &CMat) -> CMat {
    a.kronecker(b)
}

pub fn trace(a: &CMat) -> C64 {
    a.trace()
}

/// `|ψ⟩⟨φ|`.
pub fn outer(psi: &[C64], phi: &[C64]) -> CMat {
    CMat::from_fn(psi.len(), phi.len(), |i, j| psi[i] * phi[j].conj())
}

/// Largest entry of `|A - A†|`.
pub fn hermitian_defect(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut worst = 0.0f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((a[(i, j)] - a[(j, i)].conj()).norm());
        }
    }
    worst
}

/// `(A + A†) / 2`.
pub fn hermitian_part(a: &CMat) -> CMat {
    (a + a.adjoint()).scale(0.5)
}

pub fn max_abs(a: &CMat) -> f64 {
    a.iter().fold(0.0, |m, z| m.max(z.norm()))
}

/// Largest entry of `|A - B|`.
pub fn max_abs_diff(a: &CMat, b: &CMat) -> f64 {
    max_abs(&(a - b))
}

pub fn commutator(a: &CMat, b: &CMat) -> CMat {
    a * b - b * a
}

/// Deviation of `U†U` from the identity.
pub fn unitarity_defect(u: &CMat) -> f64 {
    max_abs_diff(&(u.adjoint() * u), &identity(u.ncols()))
}

/// Hermitian eigendecomposition with eigenvalues sorted as requested.
pub fn eigh(a: &CMat, order: Order) -> Result<Spectrum> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch { expected: n, found: a.ncols() });
    }
    let scale = max_abs(a).max(1.0);
    let defect = hermitian_defect(a);
    if defect > HERMITIAN_TOL * scale {
        return Err(Error::NonHermitianInput(defect));
    }
    let h = hermitian_part(a);
    let (values, vectors) = match n {
        0 => (Vec::new(), CMat::zeros(0, 0)),
        1 => (vec![h[(0, 0)].re], identity(1)),
        2 => eigh_2x2(&h),
        _ => eigh_jacobi(h),
    };
    Ok(sorted(values, vectors, order))
}

fn sorted(values: Vec<f64>, vectors: CMat, order: Order) -> Spectrum {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    // stable: equal eigenvalues keep their original relative order
    idx.sort_by(|&i, &j| {
        let o = values[i].total_cmp(&values[j]);
        match order {
            Order::Ascending => o,
            Order::Descending => o.reverse(),
        }
    });
    let n = values.len();
    let eigenvectors = CMat::from_fn(n, n, |r, k| vectors[(r, idx[k])]);
    Spectrum { eigenvalues: idx.iter().map(|&i| values[i]).collect(), eigenvectors }
}

fn eigh_2x2(h: &CMat) -> (Vec<f64>, CMat) {
    let a = h[(0, 0)].re;
    let d = h[(1, 1)].re;
    let b = h[(0, 1)];
    let mean = 0.5 * (a + d);
    let half_gap = 0.5 * (a - d);
    let radius = half_gap.hypot(b.norm());
    if b.norm() <= f64::EPSILON * (a.abs() + d.abs()).max(f64::MIN_POSITIVE) {
        return (vec![a, d], identity(2));
    }
    let lo = mean - radius;
    let hi = mean + radius;
    // (A - λ)v = 0: rows give v ∝ (b, λ - a) or (λ - d, b*)
    let vec_for = |l: f64| -> [C64; 2] {
        let v1 = [b, C64::new(l - a, 0.0)];
        let v2 = [C64::new(l - d, 0.0), b.conj()];
        let n1 = (v1[0].norm_sqr() + v1[1].norm_sqr()).sqrt();
        let n2 = (v2[0].norm_sqr() + v2[1].norm_sqr()).sqrt();
        if n1 >= n2 {
            [v1[0] / n1, v1[1] / n1]
        } else {
            [v2[0] / n2, v2[1] / n2]
        }
    };
    let vl = vec_for(lo);
    let vh = vec_for(hi);
    // Gram-Schmidt the second vector against the first for exact orthogonality.
    let overlap = vl[0].conj() * vh[0] + vl[1].conj() * vh[1];
    let mut w = [vh[0] - overlap * vl[0], vh[1] - overlap * vl[1]];
    let wn = (w[0].norm_sqr() + w[1].norm_sqr()).sqrt();
    w = [w[0] / wn, w[1] / wn];
    let vectors = CMat::from_fn(2, 2, |r, k| if k == 0 { vl[r] } else { w[r] });
    (vec![lo, hi], vectors)
}

fn off_diagonal_norm(a: &CMat) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

fn eigh_jacobi(mut a: CMat) -> (Vec<f64>, CMat) {
    let n = a.nrows();
    let mut v = identity(n);
    let total = a.norm().max(f64::MIN_POSITIVE);
    for _sweep in 0..100 {
        if off_diagonal_norm(&a) <= 1e-15 * total {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[(p, q)];
                let mag = apq.norm();
                if mag <= 1e-300 {
                    continue;
                }
                let phase = apq / mag;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let tau = (aqq - app) / (2.0 * mag);
                let t = if tau == 0.0 {
                    1.0
                } else {
                    tau.signum() / (tau.abs() + (1.0 + tau * tau).sqrt())
                };
                let cs = 1.0 / (1.0 + t * t).sqrt();
                let sn = t * cs;
                // J = diag(1, e^{-iφ}) · R(c, s) restricted to (p, q)
                let jpp = C64::new(cs, 0.0);
                let jpq = C64::new(sn, 0.0);
                let jqp = -phase.conj() * sn;
                let jqq = phase.conj() * cs;
                // A ← A J
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * jpp + akq * jqp;
                    a[(k, q)] = akp * jpq + akq * jqq;
                }
                // A ← J† A
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = jpp.conj() * apk + jqp.conj() * aqk;
                    a[(q, k)] = jpq.conj() * apk + jqq.conj() * aqk;
                }
                a[(p, q)] = ZERO;
                a[(q, p)] = ZERO;
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * jpp + vkq * jqp;
                    v[(k, q)] = vkp * jpq + vkq * jqq;
                }
            }
        }
    }
    ((0..n).map(|i| a[(i, i)].re).collect(), v)
}

fn one_norm(a: &CMat) -> f64 {
    (0..a.ncols())
        .map(|j| (0..a.nrows()).map(|i| a[(i, j)].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Matrix exponential by scaling and squaring with a truncated Taylor series.
pub fn expm(a: &CMat) -> CMat {
    let n = a.nrows();
    let norm = one_norm(a);
    let mut squarings = 0u32;
    if norm > 0.5 {
        squarings = (norm / 0.5).log2().ceil() as u32;
    }
    let scaled = a.scale(1.0 / 2f64.powi(squarings as i32));
    let mut result = identity(n);
    let mut term = identity(n);
    for k in 1..=30 {
        term = (&term * &scaled).scale(1.0 / k as f64);
        result += &term;
        if max_abs(&term) <= 1e-18 {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Principal square root of a positive semidefinite Hermitian matrix.
pub fn sqrt_psd(a: &CMat) -> Result<CMat> {
    let s = eigh(a, Order::Ascending)?;
    Ok(s.map(|l| l.max(0.0).sqrt()))
}

/// `½ ‖A − B‖₁` for Hermitian `A`, `B`.
pub fn trace_distance(a: &CMat, b: &CMat) -> Result<f64> {
    let s = eigh(&hermitian_part(&(a - b)), Order::Ascending)?;
    Ok(0.5 * s.eigenvalues.iter().map(|l| l.abs()).sum::<f64>())
}

/// Largest eigenvalue of a Hermitian matrix.
pub fn lambda_max(a: &CMat) -> Result<f64> {
    Ok(eigh(a, Order::Descending)?.eigenvalues[0])
}
