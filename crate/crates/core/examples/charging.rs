//! Optimal-power direct charging and where it lands on the families.

use std::f64::consts::PI;

use ergokit::charging::{self, ChargingConfig};

fn main() -> ergokit::Result<()> {
    let alpha = charging::solve_alpha_t();
    println!("alpha_T = {:.6} pi", alpha / PI);
    let cfg = ChargingConfig::new(1.0, 1.0, 0.0, 1.0)?;
    println!("T_opt = {:.6}, golden section {:.6}", cfg.optimal_duration(), charging::optimal_duration_numeric(&cfg));
    println!("P_max = {:.6}", charging::avg_power(&cfg, cfg.optimal_duration())?);
    for s0 in [0.25, 0.5, 1.0] {
        let ci = charging::cone_intersection(s0)?;
        println!("s0={s0:.2}: p_bar={:.6} p={:.6} s_bar={:.6}", ci.p_bar, ci.p, ci.s_bar);
    }
    Ok(())
}
