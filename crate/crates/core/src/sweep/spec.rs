//! `name:key=value,...` descriptions of states and observables.
//!
//! Complex values are written `modulus@argument` (radians). Reals accept a
//! plain float or a multiple of pi such as `pi/4` or `3pi/2`. `bloch` and
//! `fock` also take positional components, `pauli` takes an axis.

use std::fmt;

use crate::closed_forms::Params;
use crate::error::{Error, Result};
use crate::fock::{ladder_power, number_op, quad_squared, quadrature, FockConfig, Truncated};
use crate::linalg::{ComplexMatrix, HermitianOperator, C64};
use crate::states::{
    counterexample_state, fock_diagonal, gaussian, photon_added_thermal, qubit_from_bloch, rho_pk,
    superposition_mixture, thermal, truncated_thermal, BlochVector, DensityMatrix, TailPolicy,
};

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

/// Float, or `[k]pi[/d]`.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    if let Ok(v) = t.parse::<f64>() {
        return Ok(v);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t),
    };
    let bad = || parse_err(format!("'{s}' is not a number"));
    let (head, den) = match body.split_once('/') {
        Some((h, d)) => (h, d.parse::<f64>().map_err(|_| bad())?),
        None => (body, 1.0),
    };
    let coef = match head.strip_suffix("pi") {
        Some("") => 1.0,
        Some(k) => k.trim_end_matches('*').parse::<f64>().map_err(|_| bad())?,
        None => return Err(bad()),
    };
    let v = coef * std::f64::consts::PI / den;
    Ok(if neg { -v } else { v })
}

/// `modulus@argument`, or a plain real.
pub fn parse_complex(s: &str) -> Result<C64> {
    match s.split_once('@') {
        Some((m, a)) => Ok(C64::from_polar(parse_real(m)?, parse_real(a)?)),
        None => Ok(C64::new(parse_real(s)?, 0.0)),
    }
}

fn parse_level(s: &str) -> Result<usize> {
    s.trim()
        .parse::<usize>()
        .map_err(|_| parse_err(format!("'{s}' is not a nonnegative integer")))
}

struct Raw<'a> {
    name: &'a str,
    named: Vec<(&'a str, &'a str)>,
    positional: Vec<&'a str>,
}

fn split(spec: &str) -> Result<Raw<'_>> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let name = name.trim();
    if name.is_empty() {
        return Err(parse_err("empty specification"));
    }
    let mut named = Vec::new();
    let mut positional = Vec::new();
    for item in rest.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        match item.split_once('=') {
            Some((k, v)) => named.push((k.trim(), v.trim())),
            None => positional.push(item),
        }
    }
    Ok(Raw { name, named, positional })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StateKind {
    Bloch,
    Fock,
    Thermal,
    TruncThermal,
    PaThermal,
    Mixture,
    Gaussian,
    Counterexample,
    RhoPk,
}

impl StateKind {
    fn from_name(s: &str) -> Result<Self> {
        Ok(match s {
            "bloch" => Self::Bloch,
            "fock" => Self::Fock,
            "thermal" => Self::Thermal,
            "trunc_thermal" => Self::TruncThermal,
            "pa_thermal" => Self::PaThermal,
            "mixture" => Self::Mixture,
            "gaussian" => Self::Gaussian,
            "counterexample" => Self::Counterexample,
            "rho_pk" => Self::RhoPk,
            _ => return Err(parse_err(format!("unknown state '{s}'"))),
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Bloch => "bloch",
            Self::Fock => "fock",
            Self::Thermal => "thermal",
            Self::TruncThermal => "trunc_thermal",
            Self::PaThermal => "pa_thermal",
            Self::Mixture => "mixture",
            Self::Gaussian => "gaussian",
            Self::Counterexample => "counterexample",
            Self::RhoPk => "rho_pk",
        }
    }

    /// Named keys the state accepts; the first group is required.
    fn keys(self) -> (&'static [&'static str], &'static [&'static str]) {
        match self {
            Self::Bloch => (&[], &["r1", "r2", "r3"]),
            Self::Fock | Self::Counterexample => (&[], &[]),
            Self::Thermal | Self::TruncThermal | Self::PaThermal => (&["lambda"], &[]),
            Self::Mixture => (&["p", "n"], &["m"]),
            Self::Gaussian => (&["lambda"], &["z", "zeta", "z_abs", "z_arg", "zeta_abs", "zeta_arg"]),
            Self::RhoPk => (&["p", "k"], &[]),
        }
    }

    /// Whether a real parameter can be swept on this state.
    pub fn accepts(self, name: &str) -> bool {
        let (req, opt) = self.keys();
        !matches!(name, "n" | "m" | "k" | "z" | "zeta") && (req.contains(&name) || opt.contains(&name))
    }
}

/// A state description.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSpec {
    pub kind: StateKind,
    pub params: Params,
}

impl StateSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let raw = split(spec)?;
        let kind = StateKind::from_name(raw.name)?;
        let mut params = Params::default();
        let (req, opt) = kind.keys();
        match kind {
            StateKind::Bloch => {
                if !raw.positional.is_empty() {
                    if raw.positional.len() != 3 || !raw.named.is_empty() {
                        return Err(parse_err("bloch takes three components r1,r2,r3"));
                    }
                    let r: Vec<f64> = raw.positional.iter().map(|s| parse_real(s)).collect::<Result<_>>()?;
                    params.bloch = Some(BlochVector {
                        r1: r[0],
                        r2: r[1],
                        r3: r[2],
                    });
                }
            }
            StateKind::Fock => {
                if raw.positional.is_empty() || !raw.named.is_empty() {
                    return Err(parse_err("fock takes its weights positionally, e.g. fock:0.5,0.5"));
                }
                params.weights = Some(raw.positional.iter().map(|s| parse_real(s)).collect::<Result<_>>()?);
            }
            _ if !raw.positional.is_empty() => {
                return Err(parse_err(format!("{} takes only key=value arguments", kind.name())));
            }
            _ => {}
        }
        for (k, v) in &raw.named {
            if !req.contains(k) && !opt.contains(k) {
                return Err(parse_err(format!("state {} has no parameter '{k}'", kind.name())));
            }
            match *k {
                "z" => params.z = parse_complex(v)?,
                "zeta" => params.zeta = parse_complex(v)?,
                "m" | "n" | "k" => params.set_level(k, parse_level(v)?)?,
                _ => params.set(k, parse_real(v)?)?,
            }
        }
        for k in req {
            if !raw.named.iter().any(|(n, _)| n == k) {
                return Err(parse_err(format!("state {} requires '{k}'", kind.name())));
            }
        }
        if kind == StateKind::Bloch && params.bloch.is_none() {
            params.bloch = Some(BlochVector { r1: 0.0, r2: 0.0, r3: 0.0 });
        }
        Ok(Self { kind, params })
    }

    pub fn is_qubit(&self) -> bool {
        self.kind == StateKind::Bloch
    }

    pub fn build(&self, cfg: &FockConfig) -> Result<Truncated<DensityMatrix>> {
        let p = &self.params;
        let tail = TailPolicy::Renormalize;
        let exact = |rho| Truncated {
            value: rho,
            truncation_warning: false,
        };
        Ok(match self.kind {
            StateKind::Bloch => exact(qubit_from_bloch(&p.bloch()?)?),
            StateKind::Fock => exact(fock_diagonal(p.weights()?, cfg)?),
            StateKind::Thermal => exact(thermal(p.lambda()?, cfg, tail)?),
            StateKind::TruncThermal => exact(truncated_thermal(p.lambda()?, cfg, tail)?),
            StateKind::PaThermal => exact(photon_added_thermal(p.lambda()?, cfg, tail)?),
            StateKind::Mixture => exact(superposition_mixture(p.p()?, p.m, p.n()?, cfg)?),
            StateKind::Gaussian => gaussian(p.lambda()?, p.zeta, p.z, cfg, tail)?,
            StateKind::Counterexample => exact(counterexample_state(cfg)?),
            StateKind::RhoPk => exact(rho_pk(p.p()?, p.k()?, cfg)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
    Z,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamKind {
    Number,
    Quadrature,
    QuadSquared,
    Ladder,
    Pauli(PauliAxis),
}

/// An observable description.
#[derive(Debug, Clone, PartialEq)]
pub struct HamSpec {
    pub kind: HamKind,
    pub params: Params,
}

impl HamSpec {
    pub fn parse(spec: &str) -> Result<Self> {
        let raw = split(spec)?;
        let mut params = Params::default();
        let kind = match raw.name {
            "number" => HamKind::Number,
            "quadrature" => HamKind::Quadrature,
            "quad_squared" => HamKind::QuadSquared,
            "ladder" => HamKind::Ladder,
            "pauli" => {
                let axis = match raw.positional.as_slice() {
                    ["x"] => PauliAxis::X,
                    ["y"] => PauliAxis::Y,
                    ["z"] => PauliAxis::Z,
                    _ => return Err(parse_err("pauli takes one axis: x, y or z")),
                };
                if !raw.named.is_empty() {
                    return Err(parse_err("pauli takes no named parameters"));
                }
                return Ok(Self {
                    kind: HamKind::Pauli(axis),
                    params,
                });
            }
            other => return Err(parse_err(format!("unknown Hamiltonian '{other}'"))),
        };
        if !raw.positional.is_empty() {
            return Err(parse_err(format!("{} takes only key=value arguments", raw.name)));
        }
        for (k, v) in &raw.named {
            match (kind, *k) {
                (HamKind::Quadrature | HamKind::QuadSquared | HamKind::Ladder, "theta") => params.theta = parse_real(v)?,
                (HamKind::Ladder, "l") => params.l = Some(parse_level(v)?),
                _ => return Err(parse_err(format!("Hamiltonian {} has no parameter '{k}'", raw.name))),
            }
        }
        if kind == HamKind::Ladder && params.l.is_none() {
            return Err(parse_err("ladder requires 'l'"));
        }
        Ok(Self { kind, params })
    }

    pub fn is_qubit(&self) -> bool {
        matches!(self.kind, HamKind::Pauli(_))
    }

    pub fn accepts(&self, name: &str) -> bool {
        name == "theta" && matches!(self.kind, HamKind::Quadrature | HamKind::QuadSquared | HamKind::Ladder)
    }

    pub fn build(&self, cfg: &FockConfig) -> Result<HermitianOperator> {
        let t = self.params.theta;
        let c = |re: f64, im: f64| C64::new(re, im);
        Ok(match self.kind {
            HamKind::Number => number_op(cfg),
            HamKind::Quadrature => quadrature(t, cfg),
            HamKind::QuadSquared => quad_squared(t, cfg),
            HamKind::Ladder => ladder_power(self.params.l()?, t, cfg)?,
            HamKind::Pauli(axis) => {
                let e = match axis {
                    PauliAxis::X => [c(0., 0.), c(1., 0.), c(1., 0.), c(0., 0.)],
                    PauliAxis::Y => [c(0., 0.), c(0., -1.), c(0., 1.), c(0., 0.)],
                    PauliAxis::Z => [c(1., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)],
                };
                HermitianOperator::new(ComplexMatrix::from_row_slice(2, 2, &e)?)?
            }
        })
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.kind.name())?;
        let p = &self.params;
        let mut parts = Vec::new();
        match self.kind {
            StateKind::Bloch => {
                if let Some(b) = p.bloch {
                    parts.push(format!("{},{},{}", b.r1, b.r2, b.r3));
                }
            }
            StateKind::Fock => {
                if let Some(w) = &p.weights {
                    parts.push(w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
                }
            }
            _ => {
                if let Some(l) = p.lambda {
                    parts.push(format!("lambda={l}"));
                }
                if let Some(v) = p.p {
                    parts.push(format!("p={v}"));
                }
                if self.kind == StateKind::Mixture {
                    parts.push(format!("m={}", p.m));
                }
                if let Some(n) = p.n {
                    parts.push(format!("n={n}"));
                }
                if let Some(k) = p.k {
                    parts.push(format!("k={k}"));
                }
                if self.kind == StateKind::Gaussian {
                    parts.push(format!("zeta={}@{}", p.zeta.norm(), p.zeta.arg()));
                    parts.push(format!("z={}@{}", p.z.norm(), p.z.arg()));
                }
            }
        }
        if !parts.is_empty() {
            write!(f, ":{}", parts.join(","))?;
        }
        Ok(())
    }
}

impl fmt::Display for HamSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            HamKind::Number => f.write_str("number"),
            HamKind::Quadrature => write!(f, "quadrature:theta={}", self.params.theta),
            HamKind::QuadSquared => write!(f, "quad_squared:theta={}", self.params.theta),
            HamKind::Ladder => write!(f, "ladder:l={},theta={}", self.params.l.unwrap_or(0), self.params.theta),
            HamKind::Pauli(a) => write!(f, "pauli:{}", format!("{a:?}").to_lowercase()),
        }
    }
}
