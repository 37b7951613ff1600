//! Scalar root finding, 1-D maximization and a fixed-step RK4 for matrix ODEs.

use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};

/// Bisection on a sign-changing bracket. Stops when the bracket is narrower
/// than `xtol` or after `max_iter` halvings.
pub fn bisect(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64, xtol: f64, max_iter: usize) -> Result<f64> {
    let mut flo = f(lo);
    let fhi = f(hi);
    if flo == 0.0 {
        return Ok(lo);
    }
    if fhi == 0.0 {
        return Ok(hi);
    }
    if flo.signum() == fhi.signum() {
        return Err(Error::NoBracket(hi));
    }
    for _ in 0..max_iter {
        let mid = 0.5 * (lo + hi);
        let fm = f(mid);
        if fm == 0.0 {
            return Ok(mid);
        }
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
        if hi - lo <= xtol {
            break;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Golden-section search for the maximum of a unimodal function on `[a, b]`.
pub fn golden_section_max(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, xtol: f64) -> f64 {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - inv_phi * (b - a);
    let mut x2 = a + inv_phi * (b - a);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while (b - a).abs() > xtol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + inv_phi * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - inv_phi * (b - a);
            f1 = f(x1);
        }
    }
    0.5 * (a + b)
}

/// Classic fourth-order Runge–Kutta for `dY/dt = f(t, Y)` with `steps`
/// equal steps from `t0` to `t1`.
pub fn rk4_matrix(f: impl Fn(f64, &CMat) -> CMat, y0: &CMat, t0: f64, t1: f64, steps: usize) -> CMat {
    let mut y = y0.clone();
    if steps == 0 {
        return y;
    }
    let h = (t1 - t0) / steps as f64;
    let half = C64::new(0.5 * h, 0.0);
    let full = C64::new(h, 0.0);
    let sixth = C64::new(h / 6.0, 0.0);
    let two = C64::new(2.0, 0.0);
    for k in 0..steps {
        let t = t0 + k as f64 * h;
        let k1 = f(t, &y);
        let k2 = f(t + 0.5 * h, &(&y + &k1 * half));
        let k3 = f(t + 0.5 * h, &(&y + &k2 * half));
        let k4 = f(t + h, &(&y + &k3 * full));
        y += (k1 + k2 * two + k3 * two + k4) * sixth;
    }
    y
}

/// `n` equally spaced points on `[a, b]` inclusive.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

/// Oscillation period from crossings of `y` through its mean, located by
/// linear interpolation. Spacing is measured between crossings of the same
/// direction so a biased mean cancels out.
pub fn zero_crossing_period(t: &[f64], y: &[f64]) -> Option<f64> {
    if t.len() != y.len() || t.len() < 3 {
        return None;
    }
    let mean = y.iter().sum::<f64>() / y.len() as f64;
    let (mut up, mut down) = (Vec::new(), Vec::new());
    for k in 1..y.len() {
        let (a, b) = (y[k - 1] - mean, y[k] - mean);
        if a < 0.0 && b >= 0.0 {
            up.push(t[k - 1] + (t[k] - t[k - 1]) * a / (a - b));
        } else if a > 0.0 && b <= 0.0 {
            down.push(t[k - 1] + (t[k] - t[k - 1]) * a / (a - b));
        }
    }
    let spacing = |v: &[f64]| (v.len() >= 2).then(|| (v[v.len() - 1] - v[0]) / (v.len() - 1) as f64);
    match (spacing(&up), spacing(&down)) {
        (Some(a), Some(b)) => Some(0.5 * (a + b)),
        (Some(a), None) | (None, Some(a)) => Some(a),
        (None, None) => None,
    }
}
