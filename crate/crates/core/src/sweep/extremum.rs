use crate::closed_forms::{evaluate_closed_form, FormulaFamily};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Max,
    Min,
}

impl std::str::FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "max" => Ok(Mode::Max),
            "min" => Ok(Mode::Min),
            _ => Err(Error::Parse(format!("mode must be max or min, got '{s}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum {
    pub arg: f64,
    pub value: f64,
    pub evaluations: usize,
}

/// Bracket width at which the search stops.
pub const BRACKET_TOL: f64 = 1e-7;

/// Golden-section search of a unimodal `f` on `[lo, hi]`.
pub fn golden_section<F>(mut f: F, lo: f64, hi: f64, mode: Mode, tol: f64) -> Result<Extremum>
where
    F: FnMut(f64) -> Result<f64>,
{
    if lo.is_nan() || hi.is_nan() || lo >= hi || tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidConfig(format!("bad bracket [{lo}, {hi}] or tolerance {tol}")));
    }
    let sign = if mode == Mode::Max { -1.0 } else { 1.0 };
    let mut evaluations = 0;
    let mut g = |x: f64| -> Result<f64> {
        evaluations += 1;
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::NonFinite);
        }
        Ok(sign * v)
    };
    // Domain errors at the edges surface before any search.
    g(lo)?;
    g(hi)?;
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let (mut a, mut b) = (lo, hi);
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (g(c)?, g(d)?);
    while b - a > tol {
        if fc < fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = g(c)?;
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = g(d)?;
        }
    }
    let arg = 0.5 * (a + b);
    let value = sign * g(arg)?;
    Ok(Extremum {
        arg,
        value,
        evaluations,
    })
}

/// Extremum of a closed-form family along one parameter, the others held fixed.
pub fn family_extremum(family: &FormulaFamily, param: &str, bracket: (f64, f64), mode: Mode) -> Result<Extremum> {
    if !family.id.accepts(param) {
        return Err(Error::Parse(format!("'{param}' is not a parameter of {}", family.id)));
    }
    golden_section(
        |x| {
            let mut f = family.clone();
            f.params.set(param, x)?;
            evaluate_closed_form(&f)
        },
        bracket.0,
        bracket.1,
        mode,
        BRACKET_TOL,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closed_forms::{lambda0, FamilyId, Params};

    #[test]
    fn parabola() {
        let e = golden_section(|x| Ok(-(x - 0.3) * (x - 0.3)), 0.0, 1.0, Mode::Max, 1e-9).unwrap();
        assert!((e.arg - 0.3).abs() < 1e-8);
        let e = golden_section(|x| Ok((x + 1.0).powi(2)), -3.0, 2.0, Mode::Min, 1e-9).unwrap();
        assert!((e.arg + 1.0).abs() < 1e-8);
    }

    #[test]
    fn thermal_x_peak_at_lambda0() {
        let f = FormulaFamily::new(FamilyId::ThermalX, Params::default());
        let e = family_extremum(&f, "lambda", (0.01, 0.5), Mode::Max).unwrap();
        assert!((e.arg - lambda0()).abs() < 1e-6);
        assert!((e.value - 0.3003).abs() < 5e-4);
    }

    #[test]
    fn domain_error_at_bracket_edge() {
        let f = FormulaFamily::new(FamilyId::ThermalX, Params::default());
        assert!(family_extremum(&f, "lambda", (0.5, 1.2), Mode::Max).is_err());
        assert!(family_extremum(&f, "p", (0.1, 0.5), Mode::Max).unwrap_err().is_parse());
    }
}
