//! The maxima and minima quoted for the single-mode families.

use std::f64::consts::FRAC_PI_4;

use fisher_discord::closed_forms::{lambda0, FamilyId, FormulaFamily, Params};
use fisher_discord::sweep::{family_extremum, Mode};

fn search(label: &str, id: FamilyId, p: Params, param: &str, bracket: (f64, f64), mode: Mode) -> fisher_discord::Result<()> {
    let e = family_extremum(&FormulaFamily::new(id, p), param, bracket, mode)?;
    println!("{label:<28} {param:<9} arg {:.7}  value {:.7}  ({} evaluations)", e.arg, e.value, e.evaluations);
    Ok(())
}

fn main() -> fisher_discord::Result<()> {
    let d = Params::default;
    search("THERMAL_X", FamilyId::ThermalX, d(), "lambda", (0.01, 0.5), Mode::Max)?;
    println!("{:<28} lambda0 = {:.7}", "", lambda0());
    search("TRUNC_THERMAL_X", FamilyId::TruncThermalX, d(), "lambda", (0.01, 0.5), Mode::Max)?;
    search("TWO_LEVEL_X, left peak", FamilyId::TwoLevelX, d(), "p", (0.01, 0.5), Mode::Max)?;
    search("TWO_LEVEL_X, right peak", FamilyId::TwoLevelX, d(), "p", (0.5, 0.99), Mode::Max)?;
    let mix = Params { m: 0, n: Some(1), ..d() };
    search("MIXTURE_N (0,1)", FamilyId::MixtureN, mix.clone(), "p", (0.5, 0.99), Mode::Max)?;
    search("MIXTURE_X (0,1), theta=0", FamilyId::MixtureX, mix.clone(), "p", (0.01, 0.5), Mode::Max)?;
    let mix_quarter = Params { theta: FRAC_PI_4, ..mix };
    search("MIXTURE_X (0,1), theta=pi/4", FamilyId::MixtureX, mix_quarter, "p", (0.01, 0.5), Mode::Max)?;
    let mut g = Params { lambda: Some(lambda0()), ..d() };
    g.set("theta_prime", FRAC_PI_4)?;
    search("GAUSSIAN_X, theta'=pi/4", FamilyId::GaussianX, g, "zeta_abs", (0.01, 1.5), Mode::Min)?;
    println!("{:<28} ln(1+sqrt 2)/2 = {:.7}", "", (1.0 + 2f64.sqrt()).ln() / 2.0);
    Ok(())
}
