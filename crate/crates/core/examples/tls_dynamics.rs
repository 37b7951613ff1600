//! Battery-auxiliary exchange: the battery stays on its family while the
//! auxiliary's ergotropy oscillates.

use ergokit::numeric::{linspace, zero_crossing_period};
use ergokit::tls_dynamics::{self, TwoTlsConfig};

fn main() -> ergokit::Result<()> {
    let cfg = TwoTlsConfig::new(0.8, 1.0, 1.0, 0.0, 0.0)?;
    let times = linspace(0.0, 4.0 * cfg.period(), 400);
    let ts = tls_dynamics::trajectory_metrics(&cfg, &times)?;
    for name in ["R_B", "R_A", "R_total", "I"] {
        let col = ts.column(name).expect("column");
        let (lo, hi) = col.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), &x| (a.min(x), b.max(x)));
        println!("{name:>8}: min {lo:.6} max {hi:.6}");
    }
    let period = zero_crossing_period(&times, &ts.column("R_A").expect("R_A"));
    println!("auxiliary period {:?} (expected {:.6})", period, cfg.period());
    Ok(())
}
