//! Displacement and squeezing split along a Gaussian isoergotropic family.

use std::f64::consts::PI;

use ergokit::gaussian::{self, IsoFamilyGaussian};
use ergokit::numeric::linspace;

fn main() -> ergokit::Result<()> {
    let fam = IsoFamilyGaussian::new(5.0, 1.0)?;
    let n = 0.5;
    println!("boundary |xi| = {:.4}, equal split |xi| = {:.4}", fam.boundary_xi(n), fam.equal_split_xi(n));
    for xi in linspace(0.0, fam.boundary_xi(n), 6) {
        let s = gaussian::family_member(&fam, xi, PI, n, 0.0)?;
        let r = s.ergotropy();
        println!(
            "xi={xi:.3} |mu|^2={:.4} R_d={:.4} R_s={:.4} R={:.4}",
            s.mu.norm_sqr(),
            r.component("displacement").unwrap_or(0.0),
            r.component("squeezing").unwrap_or(0.0),
            r.total
        );
    }
    Ok(())
}
