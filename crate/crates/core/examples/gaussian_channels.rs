//! Gaussian charge-preserving operations: three-step channel, mode swap and
//! the selective measurement.

use std::f64::consts::PI;

use ergokit::gaussian::{self, IsoFamilyGaussian};

fn main() -> ergokit::Result<()> {
    let fam = IsoFamilyGaussian::new(5.0, 1.0)?;
    let input = gaussian::family_member(&fam, 0.0, PI, 0.5, 0.0)?;
    let target = gaussian::family_member(&fam, 1.0, PI, 0.8, 0.0)?;
    let out = gaussian::iso_channel_three_step(&input, &target)?;
    println!("three-step output: xi={:.4} N={:.4} R={:.6}", out.xi_mag, out.n_thermal, out.ergotropy().total);
    let swapped = gaussian::swap_realization(&input, &target)?;
    println!("swap output:       xi={:.4} N={:.4} R={:.6}", swapped.xi_mag, swapped.n_thermal, swapped.ergotropy().total);
    let att = gaussian::attenuator_channel(&input, 0.6, 0.2)?;
    println!("attenuated input loses charge: R={:.6}", att.ergotropy().total);
    let m = gaussian::selective_measurement(&input, &fam, 0.0);
    println!("selective measurement success {:.4}, output R={:.6}", m.success_probability, m.output.ergotropy().total);
    Ok(())
}
