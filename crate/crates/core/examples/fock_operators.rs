//! Truncated ladder operators, quadratures and the convergence loop.

use fisher_discord::fock::{annihilation, converged_value, displacement, number_op, quadrature, squeeze};
use fisher_discord::{FockConfig, C64};

fn main() -> fisher_discord::Result<()> {
    let cfg = FockConfig::with_dim(5);
    let a = annihilation(&cfg);
    println!("a on 5 levels, first superdiagonal:");
    for n in 1..5 {
        println!("  <{}|a|{n}> = {:.6}", n - 1, a.get(n - 1, n).re);
    }
    println!("N diagonal: {:?}", (0..5).map(|k| number_op(&cfg).get(k, k).re).collect::<Vec<_>>());
    println!("X_0 (0,1) entry: {}", quadrature(0.0, &cfg).get(0, 1));

    // <0|D(z)|0> = exp(-|z|^2/2), exact once the truncation is large enough
    let z = C64::from_polar(1.0, 0.3);
    let vac = converged_value(|c| displacement(z, c).map(|d| d.value.get(0, 0).norm()).unwrap_or(f64::NAN), &FockConfig::default());
    println!(
        "|<0|D(z)|0>| = {:.15} at N = {} (exact {:.15})",
        vac.value,
        vac.used_dim,
        (-0.5f64).exp()
    );

    let zeta = C64::new(0.5, 0.0);
    let s = squeeze(zeta, &FockConfig::default())?;
    println!(
        "<0|S(0.5)|0> = {:.15} (1/sqrt(cosh 0.5) = {:.15}), warning: {}",
        s.value.get(0, 0).re,
        1.0 / 0.5f64.cosh().sqrt(),
        s.truncation_warning
    );

    let big = displacement(C64::new(4.0, 0.0), &FockConfig::with_dim(32))?;
    println!("|z| = 4 on 32 levels raises the truncation warning: {}", big.truncation_warning);
    Ok(())
}
