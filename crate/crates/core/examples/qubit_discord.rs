//! Discord of a qubit: spectral engine against the closed form, and the
//! two ways it vanishes (pure state, commuting observable).

use fisher_discord::closed_forms::qubit_discord_closed;
use fisher_discord::linalg::ComplexMatrix;
use fisher_discord::states::qubit_from_bloch;
use fisher_discord::{fisher_discord, BlochVector, HermitianOperator, C64};

fn main() -> fisher_discord::Result<()> {
    let c = |re, im| C64::new(re, im);
    let sigma_x = HermitianOperator::new(ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)])?)?;
    let sigma_z = HermitianOperator::new(ComplexMatrix::from_row_slice(2, 2, &[c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)])?)?;

    println!("{:>6} {:>12} {:>12} {:>12} {:>12}", "r", "I_F", "I_W", "C", "closed");
    for r in [0.0, 0.25, 0.5, 0.75, 0.9, 0.99, 1.0] {
        let b = BlochVector::new(0.0, 0.0, r)?;
        let rho = qubit_from_bloch(&b)?;
        let rep = fisher_discord(&rho, &sigma_x)?;
        let closed = qubit_discord_closed(&b, &sigma_x)?;
        println!("{r:>6} {:>12.8} {:>12.8} {:>12.3e} {:>12.3e}", rep.i_f, rep.i_w, rep.c, closed);
    }

    // sigma_z commutes with a state polarised along z
    let rho = qubit_from_bloch(&BlochVector::new(0.0, 0.0, 0.6)?)?;
    println!("commuting: C = {:e}", fisher_discord(&rho, &sigma_z)?.c);
    Ok(())
}
