//! Walk along a TLS isoergotropic family from the pure to the incoherent member.

use ergokit::numeric::linspace;
use ergokit::tls::{self, IsoFamilyTls};

fn main() -> ergokit::Result<()> {
    let fam = IsoFamilyTls::new(0.8, 1.0)?;
    println!("charge {:.4}, pure member at p = {:.4}", fam.charge(), fam.pure_population());
    println!("{:>6} {:>8} {:>8} {:>8} {:>8} {:>8}", "p", "C", "R_inc", "R_coh", "S", "R/E");
    for p in linspace(fam.pure_population(), fam.p_bar, 7) {
        let s = tls::family_member(&fam, p, 0.0)?;
        let r = s.ergotropy();
        println!(
            "{p:>6.3} {:>8.4} {:>8.4} {:>8.4} {:>8.4} {:>8.4}",
            s.coherence,
            r.component("incoherent").unwrap_or(0.0),
            r.component("coherent").unwrap_or(0.0),
            tls::entropy_on_family(&fam, p)?,
            tls::charge_energy_ratio(&fam, p)?
        );
    }
    Ok(())
}
