//! Discord of displaced squeezed thermal states under a^dagger a, X_theta and Lambda_theta.

use fisher_discord::closed_forms::{evaluate_closed_form, lambda0, spectral_discord, FamilyId, FormulaFamily, Params};
use fisher_discord::{FockConfig, C64};

fn main() -> fisher_discord::Result<()> {
    let cfg = FockConfig::default();
    let params = Params {
        lambda: Some(lambda0()),
        z: C64::from_polar(0.8, 0.4),
        zeta: C64::from_polar(0.35, 1.1),
        theta: 0.25,
        ..Params::default()
    };
    for id in [FamilyId::GaussianN, FamilyId::GaussianX, FamilyId::GaussianL] {
        let fam = FormulaFamily::new(id, params.clone());
        let closed = evaluate_closed_form(&fam)?;
        let r = spectral_discord(&fam, &cfg)?;
        println!(
            "{id:<12} closed {closed:.12} spectral {:.12} (N = {}, converged {:?}) I_F {:.6} I_W {:.6}",
            r.c,
            r.truncation_dim.unwrap_or(0),
            r.converged,
            r.i_f,
            r.i_w
        );
    }
    Ok(())
}
