//! Closed-form Gaussian ergotropy against a truncated Fock-space computation.

use ergokit::fock::{self, FockOracleConfig};
use ergokit::gaussian::GaussianState;
use ergokit::linalg::c;
use ergokit::states::{self, HamiltonianSpec};

fn main() -> ergokit::Result<()> {
    let cfg = FockOracleConfig::new(80)?;
    for (mu, xi, n) in [(1.0, 0.0, 0.0), (0.0, 0.6, 0.0), (1.2, 0.5, 0.5)] {
        let s = GaussianState::new(c(mu, 0.0), xi, 0.0, n, 1.0)?;
        let rho = fock::fock_gaussian_adaptive(s.mu, s.xi(), n, &cfg)?;
        let brute = states::ergotropy(&rho, &HamiltonianSpec::harmonic(1.0, rho.dim()))?;
        println!("mu={mu} xi={xi} N={n}: closed {:.8} fock {:.8} (cutoff {})", s.ergotropy().total, brute, rho.dim());
    }
    Ok(())
}
