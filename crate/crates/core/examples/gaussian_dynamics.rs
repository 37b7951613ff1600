//! Two-mode beam-splitter dynamics on the surface with |mu_bar|^2 = 5.

use ergokit::gaussian_dynamics::{self, TwoModeConfig};
use ergokit::numeric::linspace;

fn main() -> ergokit::Result<()> {
    let cfg = TwoModeConfig::figure_default();
    let times = linspace(0.0, cfg.period(), 201);
    let ts = gaussian_dynamics::mode_trajectory(&cfg, &times)?;
    let (rb, ra) = (ts.column("R_B").expect("R_B"), ts.column("R_A").expect("R_A"));
    println!("R_B in [{:.6}, {:.6}]", rb.iter().cloned().fold(f64::INFINITY, f64::min), rb.iter().cloned().fold(0.0, f64::max));
    println!("R_A in [{:.6}, {:.6}]", ra.iter().cloned().fold(f64::INFINITY, f64::min), ra.iter().cloned().fold(0.0, f64::max));
    println!("equal split at t = {:?}", gaussian_dynamics::equal_split_time(&ts));
    let grid = linspace(-4.0, 4.0, 5);
    let frames = gaussian_dynamics::wigner_frames(&cfg, &[0.0, std::f64::consts::FRAC_PI_4], &grid, &grid)?;
    println!("wigner frames: {} samples", frames.len());
    Ok(())
}
