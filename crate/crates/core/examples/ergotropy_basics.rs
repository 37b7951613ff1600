//! Ergotropy of an arbitrary density matrix against a diagonal Hamiltonian.

use ergokit::linalg::c;
use ergokit::states::{self, DensityOperator, HamiltonianSpec};

fn main() -> ergokit::Result<()> {
    let s = 0.5f64.sqrt();
    let plus = DensityOperator::pure(&[c(s, 0.0), c(s, 0.0)])?;
    let h = HamiltonianSpec::qubit(1.0);
    println!("|+>: ergotropy {:.6}", states::ergotropy(&plus, &h)?);
    println!("     incoherent {:.6}", states::incoherent_ergotropy(&plus, &h)?);
    let passive = states::passive_state(&plus, &h)?;
    println!("     passive populations {:?}", passive.populations(ergokit::linalg::Order::Ascending));

    let qutrit = DensityOperator::diagonal(&[0.2, 0.3, 0.5])?;
    let h3 = HamiltonianSpec::harmonic(1.0, 3);
    println!("population-inverted qutrit: ergotropy {:.6}", states::ergotropy(&qutrit, &h3)?);
    println!("entropy {:.6}, purity {:.6}", states::von_neumann_entropy(&qutrit), states::purity(&qutrit));
    Ok(())
}
