//! Charge-preserving channel and measurements on a TLS family.

use ergokit::states::{self, HamiltonianSpec};
use ergokit::tls::{self, IsoFamilyTls};

fn main() -> ergokit::Result<()> {
    let fam = IsoFamilyTls::new(0.7, 1.0)?;
    let input = tls::family_member(&fam, fam.pure_population(), 0.0)?;
    let (p_out, theta_out) = (0.7, 1.0);

    let kraus = tls::gadc_kraus(&fam, p_out, theta_out)?;
    let out = kraus.apply(&input.to_density())?;
    let swap = tls::swap_realization(&input, &tls::family_member(&fam, p_out, theta_out)?)?;
    println!("Kraus operators: {}, completeness defect {:.2e}", kraus.operators.len(), kraus.completeness_defect());
    println!("ergotropy in {:.6} out {:.6}", input.ergotropy().total, states::ergotropy(&out, &HamiltonianSpec::qubit(1.0))?);
    println!("channel vs SWAP trace distance {:.2e}", out.trace_distance(&swap.to_density())?);
    println!("heat absorbed {:.4}", tls::heat(input.p, p_out, 1.0));

    let incoherent = fam.reference().to_density();
    let (m, prob) = tls::rank_one_measurement(&fam, fam.pure_population(), 0.3)?;
    let (post, p_check) = tls::apply_measurement(&m, &incoherent)?;
    println!("rank-one purification succeeds with p = {prob:.4} (applied: {p_check:.4}), output purity {:.6}", states::purity(&post));
    println!("q_max towards p' = 0.55: {:.4}", tls::q_max(&fam, 0.55)?);
    println!("success within 5 attempts at q = 0.4: {:.4}", tls::cumulative_success(0.4, 5));
    Ok(())
}
