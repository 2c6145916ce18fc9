//! Monotonicity and sign patterns of the closed forms on preset-like grids.

use fisher_discord::closed_forms::{evaluate_closed_form, FamilyId, FormulaFamily, Params};
use fisher_discord::sweep::{preset, run_sweep, Grid, SweepSpec, Target};
use fisher_discord::FockConfig;
use proptest::prelude::*;

fn closed_curve(id: FamilyId, fixed: &[(&str, f64)], param: &str, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let mut p = Params::default();
    for (k, v) in fixed {
        p.set(k, *v).unwrap();
    }
    let spec = SweepSpec::new(Target::Family(FormulaFamily::new(id, p)), param, Grid::new(lo, hi, n).unwrap(), FockConfig::default())
        .unwrap()
        .closed_only(true)
        .unwrap();
    run_sweep(&spec).unwrap().column("c_closed").unwrap()
}

fn increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

#[test]
fn sqz_thermal_n_increases_in_both_parameters() {
    for l in [0.05, 0.3, 0.7] {
        assert!(increasing(&closed_curve(FamilyId::SqzThermalN, &[("lambda", l)], "zeta_abs", 0.01, 1.5, 60)));
    }
    for r in [0.1, 0.5, 1.0] {
        assert!(increasing(&closed_curve(FamilyId::SqzThermalN, &[("zeta_abs", r)], "lambda", 0.01, 0.99, 60)));
    }
}

#[test]
fn fig5_curves_rise_then_fall() {
    let p = preset("fig5", &FockConfig::default()).unwrap().closed_only(true).unwrap();
    for (name, t) in p.run().unwrap() {
        let c = t.column("c_closed").unwrap();
        let peak = c.iter().enumerate().fold((0, f64::MIN), |a, (i, &v)| if v > a.1 { (i, v) } else { a }).0;
        assert!(peak > 0 && peak < c.len() - 1, "{name}");
        assert!(increasing(&c[..=peak]), "{name}");
        assert!(c[peak..].windows(2).all(|w| w[1] < w[0]), "{name}");
    }
}

#[test]
fn fig3_and_fig7_vanish_at_the_ends() {
    for name in ["fig3", "fig7"] {
        for (file, t) in preset(name, &FockConfig::default()).unwrap().closed_only(true).unwrap().run().unwrap() {
            let c = t.column("c_closed").unwrap();
            assert!(c[0].abs() < 1e-15 && c[c.len() - 1].abs() < 1e-15, "{file}");
            assert!(c.iter().all(|&v| v >= 0.0), "{file}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn mixture_x_bounded_by_its_theta_half_pi_value(p in 0.0f64..1.0, theta in 0.0f64..std::f64::consts::TAU) {
        let at = |t: f64| {
            let params = Params { p: Some(p), m: 0, n: Some(1), theta: t, ..Params::default() };
            evaluate_closed_form(&FormulaFamily::new(FamilyId::MixtureX, params)).unwrap()
        };
        prop_assert!(at(theta) <= at(std::f64::consts::FRAC_PI_2) + 1e-15);
    }

    #[test]
    fn gaussian_n_nonnegative(l in 0.0f64..0.99, r in 0.0f64..2.0, zr in 0.0f64..2.0, za in 0.0f64..6.3) {
        let mut params = Params { lambda: Some(l), ..Params::default() };
        params.set("zeta_abs", r).unwrap();
        params.set("z_abs", zr).unwrap();
        params.set("z_arg", za).unwrap();
        prop_assert!(evaluate_closed_form(&FormulaFamily::new(FamilyId::GaussianN, params)).unwrap() >= 0.0);
    }
}
