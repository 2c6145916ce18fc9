//! Every closed-form family against the spectral engine at a few random points.

use fisher_discord::closed_forms::{evaluate_closed_form, sample_params, spectral_discord, FamilyId, FormulaFamily};
use fisher_discord::random::{rng, DEFAULT_SEED};
use fisher_discord::FockConfig;

fn main() -> fisher_discord::Result<()> {
    let points: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(3);
    let cfg = FockConfig::default();
    let mut g = rng(DEFAULT_SEED);
    println!("{:<16} {:>12} {:>6}", "family", "worst gap", "max N");
    for &id in FamilyId::ALL {
        let (mut worst, mut dim) = (0.0f64, 0);
        for _ in 0..points {
            let fam = FormulaFamily::new(id, sample_params(id, &mut g));
            let closed = evaluate_closed_form(&fam)?;
            let r = spectral_discord(&fam, &cfg)?;
            worst = worst.max((closed - r.c).abs());
            dim = dim.max(r.truncation_dim.unwrap_or(0));
        }
        println!("{:<16} {worst:>12.3e} {dim:>6}", id.as_str());
    }
    Ok(())
}
