//! Two-qubit X states: ergotropy symmetry, concurrence and the q -> 1-q map.

use ergokit::linalg;
use ergokit::multicell::{self, XState};

fn main() -> ergokit::Result<()> {
    println!("sudden death at q = {:.6}", multicell::sudden_death_point()?);
    for q in [0.0, 0.2, 0.5, 0.8, 1.0] {
        let (r, inc) = multicell::x_ergotropy(q, 1.0)?;
        let loc = multicell::local_report(q, 1.0)?;
        println!(
            "q={q:.1} R={r:.4} R_inc={inc:.4} C={:.4} R_1={:.4} R_2={:.4}",
            multicell::concurrence(q)?,
            loc.r_1,
            loc.r_2
        );
    }
    let q = 0.2;
    let mapped = multicell::iso_map(q, 1.0)?;
    let partner = XState::new(1.0 - q, 1.0)?.to_density();
    println!("iso map error {:.2e}", linalg::max_abs_diff(mapped.matrix(), partner.matrix()));
    let th = multicell::iso_map_thermo(q, 1.0)?;
    println!("heat {:.4}, work {:.4}, dS {:.4}", th.q_heat, th.work, th.delta_s);
    Ok(())
}
