use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI, TAU};
use std::path::{Path, PathBuf};

use crate::closed_forms::{lambda0, FamilyId, FormulaFamily, Params};
use crate::error::{Error, Result};
use crate::fock::FockConfig;

use super::{run_sweep, CsvTable, Grid, SweepSpec, Target};

pub const PRESET_NAMES: [&str; 8] = ["fig1", "fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8"];

#[derive(Debug, Clone, PartialEq)]
pub struct Curve {
    pub label: String,
    pub spec: SweepSpec,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub name: &'static str,
    pub curves: Vec<Curve>,
}

impl Preset {
    pub fn file_name(&self, curve: &Curve) -> String {
        format!("{}_{}.csv", self.name, curve.label)
    }

    /// Same curves on a coarser (or finer) grid.
    pub fn with_count(mut self, count: usize) -> Result<Self> {
        for c in &mut self.curves {
            c.spec = c.spec.clone().with_count(count)?;
        }
        Ok(self)
    }

    pub fn closed_only(mut self, on: bool) -> Result<Self> {
        for c in &mut self.curves {
            c.spec = c.spec.clone().closed_only(on)?;
        }
        Ok(self)
    }

    pub fn run(&self) -> Result<Vec<(String, CsvTable)>> {
        self.curves
            .iter()
            .map(|c| Ok((self.file_name(c), run_sweep(&c.spec)?)))
            .collect()
    }
}

fn family(id: FamilyId, fixed: &[(&str, f64)], levels: &[(&str, usize)]) -> Result<FormulaFamily> {
    let mut p = Params::default();
    for (k, v) in fixed {
        p.set(k, *v)?;
    }
    for (k, v) in levels {
        p.set_level(k, *v)?;
    }
    Ok(FormulaFamily::new(id, p))
}

fn curve(label: &str, f: FormulaFamily, param: &str, grid: (f64, f64, usize), cfg: &FockConfig) -> Result<Curve> {
    let grid = Grid::new(grid.0, grid.1, grid.2)?;
    Ok(Curve {
        label: label.to_string(),
        spec: SweepSpec::new(Target::Family(f), param, grid, *cfg)?,
    })
}

pub fn preset(name: &str, cfg: &FockConfig) -> Result<Preset> {
    use FamilyId::*;
    let l0 = lambda0();
    let mut curves = Vec::new();
    let name = PRESET_NAMES
        .iter()
        .copied()
        .find(|n| *n == name)
        .ok_or_else(|| Error::Parse(format!("unknown preset '{name}'")))?;
    match name {
        "fig1" => {
            for (label, l) in [("lambda_0p01", 0.01), ("lambda_lambda0", l0), ("lambda_0p3", 0.3), ("lambda_0p8", 0.8)] {
                let f = family(GaussianN, &[("lambda", l), ("z_abs", 1.0), ("disp_sqz_phase", 0.0)], &[])?;
                curves.push(curve(label, f, "zeta_abs", (0.0, 1.0, 41), cfg)?);
            }
        }
        "fig2" => {
            for (label, r) in [("zeta_0p01", 0.01), ("zeta_0p1", 0.1), ("zeta_0p3", 0.3), ("zeta_0p5", 0.5)] {
                let f = family(GaussianN, &[("zeta_abs", r), ("z_abs", 1.0), ("disp_sqz_phase", 0.0)], &[])?;
                curves.push(curve(label, f, "lambda", (0.01, 0.93, 47), cfg)?);
            }
        }
        "fig3" => {
            let f = family(MixtureN, &[], &[("m", 0), ("n", 1)])?;
            curves.push(curve("mixture_n", f, "p", (0.0, 1.0, 201), cfg)?);
        }
        "fig4" => {
            let f = family(TwoLevelX, &[], &[])?;
            curves.push(curve("two_level_x", f, "p", (0.0, 1.0, 201), cfg)?);
        }
        "fig5" => {
            for (label, id) in [("thermal_x", ThermalX), ("trunc_thermal_x", TruncThermalX), ("pa_thermal_x", PaThermalX)] {
                curves.push(curve(label, family(id, &[], &[])?, "lambda", (0.01, 0.95, 95), cfg)?);
            }
        }
        "fig6" => {
            for (label, t) in [
                ("theta_prime_0", 0.0),
                ("theta_prime_pi_4", FRAC_PI_4),
                ("theta_prime_pi_2", FRAC_PI_2),
                ("theta_prime_pi", PI),
            ] {
                let f = family(GaussianX, &[("lambda", l0), ("theta_prime", t)], &[])?;
                curves.push(curve(label, f, "zeta_abs", (0.0, 1.5, 61), cfg)?);
            }
        }
        "fig7" => {
            for (label, t) in [("theta_0", 0.0), ("theta_pi_4", FRAC_PI_4), ("theta_pi_2", FRAC_PI_2)] {
                let f = family(MixtureX, &[("theta", t)], &[("m", 0), ("n", 1)])?;
                curves.push(curve(label, f, "p", (0.0, 1.0, 201), cfg)?);
            }
        }
        _ => {
            for (label, t) in [
                ("theta_z_0", 0.0),
                ("theta_z_pi_4", FRAC_PI_4),
                ("theta_z_pi_2", FRAC_PI_2),
                ("theta_z_pi", PI),
            ] {
                let f = family(
                    GaussianL,
                    &[("lambda", l0), ("z_abs", 1.0), ("zeta_abs", 1.0), ("theta", 0.0), ("theta_z", t)],
                    &[],
                )?;
                curves.push(curve(label, f, "theta_zeta", (0.0, TAU, 61), cfg)?);
            }
        }
    }
    Ok(Preset { name, curves })
}

/// Runs every preset and writes one CSV per curve into `dir`; returns the written paths.
pub fn write_figures(dir: &Path, cfg: &FockConfig, closed_only: bool) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(dir)?;
    let mut written = Vec::new();
    for name in PRESET_NAMES {
        let p = preset(name, cfg)?.closed_only(closed_only)?;
        for (file, table) in p.run()? {
            let path = dir.join(file);
            table.write_to(&path)?;
            written.push(path);
        }
    }
    Ok(written)
}
