use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::C64;
use crate::states::BlochVector;

macro_rules! families {
    ($($variant:ident => $name:literal, $ham:ident;)*) => {
        /// Stable identifiers of the analytic discord formulas. The strings are part of the CLI contract.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FamilyId {
            $($variant,)*
        }

        impl FamilyId {
            pub const ALL: &'static [FamilyId] = &[$(FamilyId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(FamilyId::$variant => $name,)*
                }
            }

            /// Observable the formula is stated for.
            pub fn hamiltonian(self) -> HamiltonianKind {
                match self {
                    $(FamilyId::$variant => HamiltonianKind::$ham,)*
                }
            }
        }

        impl FromStr for FamilyId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.to_ascii_uppercase().as_str() {
                    $($name => Ok(FamilyId::$variant),)*
                    _ => Err(Error::Parse(format!("unknown family '{s}'"))),
                }
            }
        }
    };
}

families! {
    Qubit => "QUBIT", Qubit;
    FockdiagN => "FOCKDIAG_N", Number;
    DispFockdiagN => "DISP_FOCKDIAG_N", Number;
    SqzFockdiagN => "SQZ_FOCKDIAG_N", Number;
    DispThermalN => "DISP_THERMAL_N", Number;
    SqzThermalN => "SQZ_THERMAL_N", Number;
    GaussianN => "GAUSSIAN_N", Number;
    MixtureN => "MIXTURE_N", Number;
    FockdiagX => "FOCKDIAG_X", Quadrature;
    SqzFockdiagX => "SQZ_FOCKDIAG_X", Quadrature;
    TwoLevelX => "TWO_LEVEL_X", Quadrature;
    RhoPkLpower => "RHO_PK_LPOWER", LadderPower;
    ThermalX => "THERMAL_X", Quadrature;
    TruncThermalX => "TRUNC_THERMAL_X", Quadrature;
    PaThermalX => "PA_THERMAL_X", Quadrature;
    GaussianX => "GAUSSIAN_X", Quadrature;
    MixtureX => "MIXTURE_X", Quadrature;
    FockdiagL => "FOCKDIAG_L", QuadSquared;
    DispFockdiagL => "DISP_FOCKDIAG_L", QuadSquared;
    SqzFockdiagL => "SQZ_FOCKDIAG_L", QuadSquared;
    RhoPkL => "RHO_PK_L", QuadSquared;
    ThermalL => "THERMAL_L", QuadSquared;
    DispThermalL => "DISP_THERMAL_L", QuadSquared;
    SqzThermalL => "SQZ_THERMAL_L", QuadSquared;
    GaussianL => "GAUSSIAN_L", QuadSquared;
    MixtureL => "MIXTURE_L", QuadSquared;
    MixtureHalfX => "MIXTURE_HALF_X", Quadrature;
    MixtureHalfL => "MIXTURE_HALF_L", QuadSquared;
}

impl FamilyId {
    fn uses_lambda(self) -> bool {
        use FamilyId::*;
        matches!(
            self,
            DispThermalN
                | SqzThermalN
                | GaussianN
                | ThermalX
                | TruncThermalX
                | PaThermalX
                | GaussianX
                | ThermalL
                | DispThermalL
                | SqzThermalL
                | GaussianL
        )
    }

    fn uses_p(self) -> bool {
        use FamilyId::*;
        matches!(self, MixtureN | TwoLevelX | RhoPkLpower | MixtureX | RhoPkL | MixtureL)
    }

    fn uses_z(self) -> bool {
        use FamilyId::*;
        matches!(self, DispFockdiagN | DispThermalN | GaussianN | GaussianX | DispFockdiagL | DispThermalL | GaussianL)
    }

    fn uses_zeta(self) -> bool {
        use FamilyId::*;
        matches!(
            self,
            SqzFockdiagN | SqzThermalN | GaussianN | SqzFockdiagX | GaussianX | SqzFockdiagL | SqzThermalL | GaussianL
        )
    }

    fn uses_theta(self) -> bool {
        matches!(
            self.hamiltonian(),
            HamiltonianKind::Quadrature | HamiltonianKind::QuadSquared | HamiltonianKind::LadderPower
        )
    }

    /// Whether `name` (one of [`Params::SCALAR_NAMES`]) is a parameter of this family.
    pub fn accepts(self, name: &str) -> bool {
        match name {
            "lambda" => self.uses_lambda(),
            "p" => self.uses_p(),
            "theta" => self.uses_theta(),
            "z_abs" | "z_arg" => self.uses_z(),
            "zeta_abs" | "zeta_arg" => self.uses_zeta(),
            "theta_prime" | "theta_zeta" => self.uses_theta() && self.uses_zeta(),
            "theta_z" => self.uses_theta() && self.uses_z(),
            "disp_sqz_phase" => self.uses_z() && self.uses_zeta(),
            "r1" | "r2" | "r3" => self == FamilyId::Qubit,
            _ => false,
        }
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HamiltonianKind {
    /// `a^dagger a`
    Number,
    /// `X_theta`
    Quadrature,
    /// `Lambda_theta`
    QuadSquared,
    /// `e^{-i theta} a^l + h.c.`
    LadderPower,
    /// Arbitrary 2x2 observable given through `h12`.
    Qubit,
}

/// Named parameters shared by all families; each family reads the subset it needs.
#[derive(Debug, Clone, PartialEq)]
pub struct Params {
    pub lambda: Option<f64>,
    pub p: Option<f64>,
    pub theta: f64,
    pub z: C64,
    pub zeta: C64,
    pub m: usize,
    pub n: Option<usize>,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub weights: Option<Vec<f64>>,
    pub bloch: Option<BlochVector>,
    pub h12: Option<C64>,
    /// Relative tail cutoff for series families.
    pub eps: f64,
}

impl Default for Params {
    fn default() -> Self {
        Self {
            lambda: None,
            p: None,
            theta: 0.0,
            z: C64::new(0.0, 0.0),
            zeta: C64::new(0.0, 0.0),
            m: 0,
            n: None,
            k: None,
            l: None,
            weights: None,
            bloch: None,
            h12: None,
            eps: 1e-14,
        }
    }
}

fn missing(name: &str) -> Error {
    Error::ParamOutOfDomain(format!("missing parameter '{name}'"))
}

impl Params {
    pub fn lambda(&self) -> Result<f64> {
        self.lambda.ok_or_else(|| missing("lambda"))
    }

    pub fn p(&self) -> Result<f64> {
        self.p.ok_or_else(|| missing("p"))
    }

    pub fn n(&self) -> Result<usize> {
        self.n.ok_or_else(|| missing("n"))
    }

    pub fn k(&self) -> Result<usize> {
        self.k.ok_or_else(|| missing("k"))
    }

    pub fn l(&self) -> Result<usize> {
        self.l.ok_or_else(|| missing("l"))
    }

    pub fn weights(&self) -> Result<&[f64]> {
        self.weights.as_deref().ok_or_else(|| missing("weights"))
    }

    pub fn bloch(&self) -> Result<BlochVector> {
        self.bloch.ok_or_else(|| missing("r"))
    }

    pub fn h12(&self) -> Result<C64> {
        self.h12.ok_or_else(|| missing("h12"))
    }

    /// Names accepted by [`Params::set`], the swept or fixed scalars of a sweep.
    pub const SCALAR_NAMES: &'static [&'static str] = &[
        "lambda",
        "p",
        "theta",
        "z_abs",
        "z_arg",
        "zeta_abs",
        "zeta_arg",
        "theta_prime",
        "theta_zeta",
        "theta_z",
        "disp_sqz_phase",
        "r1",
        "r2",
        "r3",
    ];

    /// Sets a real parameter by name.
    ///
    /// Besides the primary scalars this accepts phase combinations that the
    /// formulas depend on, each realised by moving one underlying angle:
    /// `theta_prime = 2 theta - arg zeta` (moves `theta`),
    /// `theta_zeta = theta - arg zeta` (moves `arg zeta`),
    /// `theta_z = theta - 2 arg z` (moves `arg z`),
    /// `disp_sqz_phase = 2 arg z - arg zeta` (moves `arg z`).
    pub fn set(&mut self, name: &str, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::ParamOutOfDomain(format!("{name} = {value} is not finite")));
        }
        match name {
            "lambda" => self.lambda = Some(value),
            "p" => self.p = Some(value),
            "theta" => self.theta = value,
            "z_abs" => self.z = C64::from_polar(value, self.z.arg()),
            "z_arg" => self.z = C64::from_polar(self.z.norm(), value),
            "zeta_abs" => self.zeta = C64::from_polar(value, self.zeta.arg()),
            "zeta_arg" => self.zeta = C64::from_polar(self.zeta.norm(), value),
            "theta_prime" => self.theta = (value + self.zeta.arg()) / 2.0,
            "theta_zeta" => self.zeta = C64::from_polar(self.zeta.norm(), self.theta - value),
            "theta_z" => self.z = C64::from_polar(self.z.norm(), (self.theta - value) / 2.0),
            "disp_sqz_phase" => self.z = C64::from_polar(self.z.norm(), (value + self.zeta.arg()) / 2.0),
            "r1" | "r2" | "r3" => {
                let mut b = self.bloch.unwrap_or(BlochVector { r1: 0.0, r2: 0.0, r3: 0.0 });
                match name {
                    "r1" => b.r1 = value,
                    "r2" => b.r2 = value,
                    _ => b.r3 = value,
                }
                self.bloch = Some(b);
            }
            _ => return Err(Error::Parse(format!("unknown or non-scalar parameter '{name}'"))),
        }
        Ok(())
    }

    /// Sets an integer Fock level or power by name.
    pub fn set_level(&mut self, name: &str, value: usize) -> Result<()> {
        match name {
            "m" => self.m = value,
            "n" => self.n = Some(value),
            "k" => self.k = Some(value),
            "l" => self.l = Some(value),
            _ => return Err(Error::Parse(format!("unknown level parameter '{name}'"))),
        }
        Ok(())
    }
}

/// A family together with the parameter values it is evaluated at.
#[derive(Debug, Clone, PartialEq)]
pub struct FormulaFamily {
    pub id: FamilyId,
    pub params: Params,
}

impl FormulaFamily {
    pub fn new(id: FamilyId, params: Params) -> Self {
        Self { id, params }
    }
}
