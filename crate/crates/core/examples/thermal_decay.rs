//! Thermal decay and half-lives for TLS and Gaussian family members.

use std::f64::consts::PI;

use ergokit::gaussian::{self, IsoFamilyGaussian};
use ergokit::numeric::linspace;
use ergokit::open_system::{self, BathSpec};
use ergokit::tls::{self, IsoFamilyTls};

fn main() -> ergokit::Result<()> {
    let bath = BathSpec::fermionic(1.0, 0.2)?;
    let fam = IsoFamilyTls::new(0.8, 1.0)?;
    println!("TLS, p_bar = 0.8, n_bar = 0.2");
    for p in linspace(0.6, 0.8, 5) {
        let s0 = tls::family_member(&fam, p, 0.0)?;
        println!("  p0={p:.2} T_half={:.4}", open_system::tls_half_life(&s0, &bath)?);
    }
    println!("  tau_half(p0=0.8) = {:.6}", open_system::tls_tau_half_inc(0.8, &bath)?);

    let bath = BathSpec::new(1.0, 0.3)?;
    let fam = IsoFamilyGaussian::new(5.0, 1.0)?;
    println!("Gaussian, |mu_bar|^2 = 5, N = 0.5, n_bar = 0.3");
    for xi in linspace(0.0, fam.boundary_xi(0.5), 6) {
        let s0 = gaussian::family_member(&fam, xi, PI, 0.5, 0.0)?;
        println!("  xi={xi:.3} T_half={:.4}", open_system::gaussian_half_life(&s0, &bath)?);
    }
    Ok(())
}
