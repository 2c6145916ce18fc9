//! The invariant suite at smoke scale, plus one law worked by hand.

use fisher_discord::linalg::tensor_hermitian;
use fisher_discord::random::{random_hermitian, random_psd_unit_trace, rng};
use fisher_discord::sweep::{run_verify, VerifyOptions};
use fisher_discord::{fisher_discord, DensityMatrix, HermitianOperator};

fn main() -> fisher_discord::Result<()> {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(5);
    for row in run_verify(&VerifyOptions { trials, ..VerifyOptions::default() })? {
        println!("{}", row.render());
    }

    // tensor additivity on a qubit x qutrit product
    let mut g = rng(7);
    let (r1, r2) = (random_psd_unit_trace(2, &mut g), random_psd_unit_trace(3, &mut g));
    let (h1, h2) = (random_hermitian(2, &mut g), random_hermitian(3, &mut g));
    let rho = DensityMatrix::new(tensor_hermitian(r1.operator(), r2.operator()))?;
    let h = tensor_hermitian(&h1, &HermitianOperator::identity(3)).combine(1.0, &tensor_hermitian(&HermitianOperator::identity(2), &h2), 1.0)?;
    let joint = fisher_discord(&rho, &h)?.c;
    let parts = fisher_discord(&r1, &h1)?.c + fisher_discord(&r2, &h2)?.c;
    println!("\nC(rho1 x rho2, H1 + H2) = {joint:.15}\nC(rho1,H1) + C(rho2,H2) = {parts:.15}");
    Ok(())
}
