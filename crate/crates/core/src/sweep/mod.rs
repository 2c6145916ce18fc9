//! Single evaluations, parameter sweeps to CSV, extremum searches, figure
//! presets and the verification suite behind the `fdiscord` binary.

mod csv;
mod extremum;
mod presets;
pub mod spec;
mod verify;

use rayon::prelude::*;

use crate::closed_forms::{evaluate_closed_form, spectral_discord, FamilyId, FormulaFamily, Params};
use crate::error::{Error, Result};
use crate::fock::FockConfig;
use crate::measures::{converged_discord, fisher_discord, DiscordReport};

pub use csv::CsvTable;
pub use extremum::{family_extremum, golden_section, Extremum, Mode};
pub use presets::{preset, write_figures, Curve, Preset, PRESET_NAMES};
pub use spec::{parse_complex, parse_real, HamSpec, StateSpec};
pub use verify::{run_verify, VerifyOptions, VerifyRow};

/// Linearly spaced points with exact endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    start: f64,
    stop: f64,
    count: usize,
}

impl Grid {
    pub fn new(start: f64, stop: f64, count: usize) -> Result<Self> {
        if count < 2 {
            return Err(Error::InvalidConfig(format!("grid needs at least 2 points, got {count}")));
        }
        if !(start.is_finite() && stop.is_finite() && start < stop) {
            return Err(Error::InvalidConfig(format!("grid needs start < stop, got [{start}, {stop}]")));
        }
        Ok(Self { start, stop, count })
    }

    pub fn start(&self) -> f64 {
        self.start
    }

    pub fn stop(&self) -> f64 {
        self.stop
    }

    pub fn count(&self) -> usize {
        self.count
    }

    pub fn points(&self) -> Vec<f64> {
        let last = (self.count - 1) as f64;
        (0..self.count)
            .map(|i| {
                let t = i as f64 / last;
                self.start * (1.0 - t) + self.stop * t
            })
            .collect()
    }
}

/// What a sweep evaluates: an analytic family, or an explicit state and observable.
#[allow(clippy::large_enum_variant)]
#[derive(Debug, Clone, PartialEq)]
pub enum Target {
    Family(FormulaFamily),
    Pair { state: StateSpec, ham: HamSpec },
}

impl Target {
    fn accepts(&self, name: &str) -> bool {
        match self {
            Target::Family(f) => f.id.accepts(name),
            Target::Pair { state, ham } => ham.accepts(name) || state.kind.accepts(name),
        }
    }

    fn set(&mut self, name: &str, value: f64) -> Result<()> {
        match self {
            Target::Family(f) => f.params.set(name, value),
            Target::Pair { ham, .. } if ham.accepts(name) => ham.params.set(name, value),
            Target::Pair { state, .. } => state.params.set(name, value),
        }
    }

    pub fn describe(&self) -> String {
        match self {
            Target::Family(f) => format!("family={} {}", f.id, describe_params(&f.params)),
            Target::Pair { state, ham } => format!("state={state} ham={ham}"),
        }
    }
}

fn describe_params(p: &Params) -> String {
    let mut out = Vec::new();
    if let Some(v) = p.lambda {
        out.push(format!("lambda={v}"));
    }
    if let Some(v) = p.p {
        out.push(format!("p={v}"));
    }
    out.push(format!("theta={}", p.theta));
    out.push(format!("z={}@{}", p.z.norm(), p.z.arg()));
    out.push(format!("zeta={}@{}", p.zeta.norm(), p.zeta.arg()));
    out.push(format!("m={}", p.m));
    for (name, v) in [("n", p.n), ("k", p.k), ("l", p.l)] {
        if let Some(v) = v {
            out.push(format!("{name}={v}"));
        }
    }
    if let Some(w) = &p.weights {
        let w: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        out.push(format!("weights={}", w.join(";")));
    }
    if let Some(b) = p.bloch {
        out.push(format!("r={};{};{}", b.r1, b.r2, b.r3));
    }
    if let Some(h) = p.h12 {
        out.push(format!("h12={}@{}", h.norm(), h.arg()));
    }
    out.join(" ")
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub target: Target,
    pub param: String,
    pub grid: Grid,
    pub fock: FockConfig,
    /// Skip the spectral engine; only valid for family targets.
    pub closed_only: bool,
}

impl SweepSpec {
    pub fn new(target: Target, param: &str, grid: Grid, fock: FockConfig) -> Result<Self> {
        fock.validate()?;
        if !target.accepts(param) {
            return Err(Error::Parse(format!("'{param}' is not a sweepable parameter of {}", target.describe())));
        }
        Ok(Self {
            target,
            param: param.to_string(),
            grid,
            fock,
            closed_only: false,
        })
    }

    pub fn closed_only(mut self, on: bool) -> Result<Self> {
        if on && matches!(self.target, Target::Pair { .. }) {
            return Err(Error::InvalidConfig("closed-only output needs a family target".into()));
        }
        self.closed_only = on;
        Ok(self)
    }

    pub fn with_count(mut self, count: usize) -> Result<Self> {
        self.grid = Grid::new(self.grid.start, self.grid.stop, count)?;
        Ok(self)
    }

    /// The target with the swept parameter set to `value`.
    pub fn at(&self, value: f64) -> Result<Target> {
        let mut t = self.target.clone();
        t.set(&self.param, value)?;
        Ok(t)
    }
}

/// One evaluated grid point.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub param: f64,
    pub c_closed: Option<f64>,
    pub spectral: Option<DiscordReport>,
}

/// Discord of an explicit state and observable; Fock-space pairs grow the truncation until converged.
pub fn compute(state: &StateSpec, ham: &HamSpec, cfg: &FockConfig) -> Result<DiscordReport> {
    match (state.is_qubit(), ham.is_qubit()) {
        (true, true) => Ok(DiscordReport {
            truncation_dim: Some(2),
            converged: Some(true),
            ..fisher_discord(&state.build(cfg)?.value, &ham.build(cfg)?)?
        }),
        (false, false) => converged_discord(|c| Ok((state.build(c)?.value, ham.build(c)?)), cfg),
        _ => Err(Error::DimensionMismatch(format!(
            "state {state} and observable {ham} act on different spaces"
        ))),
    }
}

/// `key=value` lines as printed by `fdiscord compute`.
pub fn format_report(r: &DiscordReport) -> String {
    let opt = |v: Option<String>| v.unwrap_or_else(|| "none".into());
    format!(
        "i_f={}\ni_w={}\nc={}\nrank={}\nmin_eigenvalue={:e}\ntruncation_dim={}\nconverged={}\n",
        r.i_f,
        r.i_w,
        r.c,
        r.rank,
        r.min_eigenvalue,
        opt(r.truncation_dim.map(|d| d.to_string())),
        opt(r.converged.map(|c| c.to_string())),
    )
}

fn evaluate(target: &Target, closed_only: bool, cfg: &FockConfig) -> Result<(Option<f64>, Option<DiscordReport>)> {
    match target {
        Target::Family(f) => {
            let closed = evaluate_closed_form(f)?;
            let spectral = if closed_only { None } else { Some(spectral_discord(f, cfg)?) };
            Ok((Some(closed), spectral))
        }
        Target::Pair { state, ham } => Ok((None, Some(compute(state, ham, cfg)?))),
    }
}

/// Evaluates every grid point, in parallel, keeping grid order.
pub fn sweep_rows(spec: &SweepSpec) -> Result<Vec<SweepRow>> {
    spec.grid
        .points()
        .into_par_iter()
        .map(|v| {
            let (c_closed, spectral) = evaluate(&spec.at(v)?, spec.closed_only, &spec.fock)?;
            Ok(SweepRow {
                param: v,
                c_closed,
                spectral,
            })
        })
        .collect()
}

pub fn run_sweep(spec: &SweepSpec) -> Result<CsvTable> {
    let rows = sweep_rows(spec)?;
    Ok(CsvTable::from_sweep(spec, &rows))
}

/// Family by name with parameters given as `key=value` pairs (levels and weights included).
pub fn family_from_args(name: &str, args: &[(String, String)]) -> Result<FormulaFamily> {
    let id: FamilyId = name.parse()?;
    let mut params = Params::default();
    for (k, v) in args {
        match k.as_str() {
            "m" | "n" | "k" | "l" => params.set_level(
                k,
                v.parse().map_err(|_| Error::Parse(format!("'{v}' is not a nonnegative integer")))?,
            )?,
            "z" => params.z = parse_complex(v)?,
            "zeta" => params.zeta = parse_complex(v)?,
            "h12" => params.h12 = Some(parse_complex(v)?),
            "eps" => params.eps = parse_real(v)?,
            "weights" => {
                params.weights = Some(v.split(';').map(parse_real).collect::<Result<_>>()?);
            }
            _ if id.accepts(k) => params.set(k, parse_real(v)?)?,
            _ => return Err(Error::Parse(format!("family {id} has no parameter '{k}'"))),
        }
    }
    Ok(FormulaFamily::new(id, params))
}
