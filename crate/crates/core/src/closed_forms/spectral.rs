//! The state and observable each family describes, built as truncated matrices
//! so the spectral engine can check the formula independently.

use std::f64::consts::TAU;

use rand::Rng;

use crate::error::Result;
use crate::fock::{ladder_power, number_op, quad_squared, quadrature, FockConfig, Truncated};
use crate::linalg::{ComplexMatrix, HermitianOperator, C64};
use crate::measures::{converged_discord, fisher_discord, DiscordReport};
use crate::random::{random_bloch, random_simplex, StateRng};
use crate::states::{
    displaced, fock_diagonal, gaussian, photon_added_thermal, qubit_from_bloch, rho_pk, squeezed,
    superposition_mixture, thermal, truncated_thermal, DensityMatrix, TailPolicy,
};

use super::family::{FamilyId, FormulaFamily, HamiltonianKind, Params};
use super::formulas::qubit_eigenvectors;

const ZERO: C64 = C64::new(0.0, 0.0);

fn observable(id: FamilyId, p: &Params, cfg: &FockConfig) -> Result<HermitianOperator> {
    Ok(match id.hamiltonian() {
        HamiltonianKind::Number => number_op(cfg),
        HamiltonianKind::Quadrature => quadrature(p.theta, cfg),
        HamiltonianKind::QuadSquared => quad_squared(p.theta, cfg),
        HamiltonianKind::LadderPower => ladder_power(p.l()?, p.theta, cfg)?,
        HamiltonianKind::Qubit => unreachable!("qubit family has no Fock observable"),
    })
}

fn exact(rho: DensityMatrix) -> Truncated<DensityMatrix> {
    Truncated {
        value: rho,
        truncation_warning: false,
    }
}

fn state(id: FamilyId, p: &Params, cfg: &FockConfig) -> Result<Truncated<DensityMatrix>> {
    use FamilyId::*;
    let tail = TailPolicy::Renormalize;
    Ok(match id {
        FockdiagN | FockdiagX | FockdiagL => exact(fock_diagonal(p.weights()?, cfg)?),
        DispFockdiagN | DispFockdiagL => displaced(&fock_diagonal(p.weights()?, cfg)?, p.z, cfg)?,
        SqzFockdiagN | SqzFockdiagX | SqzFockdiagL => squeezed(&fock_diagonal(p.weights()?, cfg)?, p.zeta, cfg)?,
        DispThermalN | DispThermalL => gaussian(p.lambda()?, ZERO, p.z, cfg, tail)?,
        SqzThermalN | SqzThermalL => gaussian(p.lambda()?, p.zeta, ZERO, cfg, tail)?,
        GaussianN | GaussianX | GaussianL => gaussian(p.lambda()?, p.zeta, p.z, cfg, tail)?,
        ThermalX | ThermalL => exact(thermal(p.lambda()?, cfg, tail)?),
        TruncThermalX => exact(truncated_thermal(p.lambda()?, cfg, tail)?),
        PaThermalX => exact(photon_added_thermal(p.lambda()?, cfg, tail)?),
        TwoLevelX => {
            let pp = p.p()?;
            exact(fock_diagonal(&[pp, 1.0 - pp], cfg)?)
        }
        RhoPkLpower | RhoPkL => exact(rho_pk(p.p()?, p.k()?, cfg)?),
        MixtureN | MixtureX | MixtureL => exact(superposition_mixture(p.p()?, p.m, p.n()?, cfg)?),
        MixtureHalfX | MixtureHalfL => exact(superposition_mixture(0.5, p.m, p.n()?, cfg)?),
        Qubit => unreachable!("qubit family is handled separately"),
    })
}

/// Truncated state and observable for a Fock-space family at one dimension.
pub fn spectral_problem(
    family: &FormulaFamily,
    cfg: &FockConfig,
) -> Result<(Truncated<DensityMatrix>, HermitianOperator)> {
    Ok((state(family.id, &family.params, cfg)?, observable(family.id, &family.params, cfg)?))
}

/// Qubit state from the Bloch vector and the observable `h12 |up><down| + h.c.`.
pub fn qubit_problem(p: &Params) -> Result<(DensityMatrix, HermitianOperator)> {
    let b = p.bloch()?;
    let rho = qubit_from_bloch(&b)?;
    let h12 = p.h12()?;
    let (up, down) = qubit_eigenvectors(&b).unwrap_or((
        [C64::new(1.0, 0.0), ZERO],
        [ZERO, C64::new(1.0, 0.0)],
    ));
    let mut entries = [ZERO; 4];
    for i in 0..2 {
        for j in 0..2 {
            entries[2 * i + j] = h12 * up[i] * down[j].conj() + h12.conj() * down[i] * up[j].conj();
        }
    }
    let h = HermitianOperator::from_hermitian_part(&ComplexMatrix::from_row_slice(2, 2, &entries)?)?;
    Ok((rho, h))
}

/// Discord of the family's state computed by the spectral engine, growing the truncation until it settles.
pub fn spectral_discord(family: &FormulaFamily, cfg: &FockConfig) -> Result<DiscordReport> {
    if family.id == FamilyId::Qubit {
        let (rho, h) = qubit_problem(&family.params)?;
        return Ok(DiscordReport {
            truncation_dim: Some(2),
            converged: Some(true),
            ..fisher_discord(&rho, &h)?
        });
    }
    converged_discord(
        |c| {
            let (rho, h) = spectral_problem(family, c)?;
            Ok((rho.value, h))
        },
        cfg,
    )
}

/// Random in-domain parameters for the oracle comparison, kept where default truncations converge.
pub fn sample_params(id: FamilyId, rng: &mut StateRng) -> Params {
    use FamilyId::*;
    let mut p = Params {
        theta: rng.random_range(0.0..TAU),
        ..Params::default()
    };
    let lambda = |r: &mut StateRng| r.random_range(0.02..0.6);
    let prob = |r: &mut StateRng| r.random_range(0.02..0.98);
    let z = |r: &mut StateRng| C64::from_polar(r.random_range(0.0..1.2), r.random_range(0.0..TAU));
    let zeta = |r: &mut StateRng| C64::from_polar(r.random_range(0.0..0.6), r.random_range(0.0..TAU));
    let weights = |r: &mut StateRng| {
        let len = r.random_range(2..=6);
        random_simplex(len, r)
    };
    match id {
        Qubit => {
            p.bloch = Some(random_bloch(rng));
            p.h12 = Some(C64::new(rng.random_range(-1.5..1.5), rng.random_range(-1.5..1.5)));
        }
        FockdiagN | FockdiagX | FockdiagL => p.weights = Some(weights(rng)),
        DispFockdiagN | DispFockdiagL => {
            p.weights = Some(weights(rng));
            p.z = z(rng);
        }
        SqzFockdiagN | SqzFockdiagX | SqzFockdiagL => {
            p.weights = Some(weights(rng));
            p.zeta = zeta(rng);
        }
        DispThermalN | DispThermalL => {
            p.lambda = Some(lambda(rng));
            p.z = z(rng);
        }
        SqzThermalN | SqzThermalL => {
            p.lambda = Some(lambda(rng));
            p.zeta = zeta(rng);
        }
        GaussianN | GaussianX | GaussianL => {
            p.lambda = Some(lambda(rng));
            p.z = z(rng);
            p.zeta = zeta(rng);
        }
        ThermalX | ThermalL | TruncThermalX | PaThermalX => p.lambda = Some(lambda(rng)),
        TwoLevelX => p.p = Some(prob(rng)),
        RhoPkLpower => {
            p.p = Some(prob(rng));
            p.k = Some(rng.random_range(1..=4));
            // half the draws on the diagonal k = l, where the value is nonzero
            p.l = Some(if rng.random_bool(0.5) { p.k.unwrap() } else { rng.random_range(1..=4) });
        }
        RhoPkL => {
            p.p = Some(prob(rng));
            p.k = Some(rng.random_range(1..=4));
        }
        MixtureN | MixtureX | MixtureL => {
            p.p = Some(prob(rng));
            let m = if rng.random_bool(0.6) { 0 } else { rng.random_range(1..=3) };
            let mut n = rng.random_range(1..=4);
            if n == m {
                n += 1;
            }
            p.m = m;
            p.n = Some(n);
        }
        MixtureHalfX | MixtureHalfL => {
            p.m = 0;
            p.n = Some(rng.random_range(1..=3));
        }
    }
    p
}
