//! Seeded invariant suite and closed-form oracle grid.

use std::f64::consts::TAU;

use rayon::prelude::*;

use crate::closed_forms::{evaluate_closed_form, sample_params, spectral_discord, FamilyId, FormulaFamily};
use crate::error::{Error, Result};
use crate::fock::{number_op, FockConfig};
use crate::linalg::{commutator, direct_sum_weighted, tensor_hermitian, tensor_product, HermitianOperator, WeightedBlock, C64};
use crate::measures::{
    fisher_discord, orbit_invariance_check, skew_information, skew_information_commutator, variance,
};
use crate::random::{
    haar_unitary, random_bloch, random_commuting_pair, random_dim, random_hermitian, random_psd_unit_trace,
    random_pure, rng, StateRng, DEFAULT_SEED,
};
use crate::states::{counterexample_state, qubit_from_bloch, BlochVector, DensityMatrix};
use rand::Rng;

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub seed: u64,
    pub trials: usize,
    pub fock: FockConfig,
    /// Test hook: perturbs this family's closed form so its oracle row must fail.
    pub corrupt: Option<FamilyId>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            seed: DEFAULT_SEED,
            trials: 500,
            fock: FockConfig::default(),
            corrupt: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct VerifyRow {
    pub name: String,
    pub cases: usize,
    /// Largest error metric seen.
    pub worst: f64,
    pub tol: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl VerifyRow {
    fn new(name: impl Into<String>, cases: usize, worst: f64, tol: f64) -> Self {
        Self {
            name: name.into(),
            cases,
            worst,
            tol,
            passed: worst <= tol,
            note: None,
        }
    }

    fn failed(name: impl Into<String>, cases: usize, err: &Error) -> Self {
        Self {
            name: name.into(),
            cases,
            worst: f64::INFINITY,
            tol: 0.0,
            passed: false,
            note: Some(err.to_string()),
        }
    }

    pub fn render(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let mut line = format!(
            "{status}  {:<32} cases={:<6} worst={:.3e} tol={:.0e}",
            self.name, self.cases, self.worst, self.tol
        );
        if let Some(n) = &self.note {
            line.push_str("  ");
            line.push_str(n);
        }
        line
    }
}

fn rel(a: f64, b: f64) -> f64 {
    if a == b {
        return 0.0;
    }
    (a - b).abs() / a.abs().max(b.abs())
}

fn row_from(name: &str, cases: usize, tol: f64, f: impl FnOnce() -> Result<f64>) -> VerifyRow {
    match f() {
        Ok(worst) => VerifyRow::new(name, cases, worst, tol),
        Err(e) => VerifyRow::failed(name, cases, &e),
    }
}

fn random_pair(g: &mut StateRng, lo: usize, hi: usize) -> (DensityMatrix, HermitianOperator) {
    let d = random_dim(lo, hi, g);
    (random_psd_unit_trace(d, g), random_hermitian(d, g))
}

fn ordering(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h) = random_pair(&mut g, 2, 16);
        let r = fisher_discord(&rho, &h)?;
        worst = worst
            .max(-r.c)
            .max(r.c - r.i_w)
            .max(r.i_w - r.i_f)
            .max(r.i_f - 2.0 * r.i_w)
            .max((r.c - (r.i_f - r.i_w)).abs());
    }
    Ok(worst)
}

fn pure_zero(seed: u64, n: usize) -> Result<(f64, f64)> {
    let mut g = rng(seed);
    let (mut c_worst, mut var_worst): (f64, f64) = (0.0, 0.0);
    for _ in 0..n {
        let d = random_dim(2, 16, &mut g);
        let rho = random_pure(d, &mut g);
        let h = random_hermitian(d, &mut g);
        let r = fisher_discord(&rho, &h)?;
        let v = variance(&rho, &h)?;
        c_worst = c_worst.max(r.c.abs());
        var_worst = var_worst.max((r.i_f - v).abs()).max((r.i_w - v).abs());
    }
    Ok((c_worst, var_worst))
}

fn commuting_zero(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let d = random_dim(2, 16, &mut g);
        let (rho, h) = random_commuting_pair(d, &mut g);
        worst = worst.max(fisher_discord(&rho, &h)?.c.abs());
    }
    Ok(worst)
}

/// Returns `C` and fails when the commutator is too small to make the case meaningful.
fn counterexample(cfg: &FockConfig) -> Result<f64> {
    let rho = counterexample_state(cfg)?;
    let n = number_op(cfg);
    let comm = commutator(rho.matrix(), n.as_matrix())?.max_abs();
    if comm <= 0.1 {
        return Err(Error::InvariantViolation(format!("commutator {comm} does not exceed 0.1")));
    }
    Ok(fisher_discord(&rho, &n)?.c.abs())
}

fn skew_paths(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h) = random_pair(&mut g, 2, 16);
        worst = worst.max(rel(skew_information(&rho, &h)?, skew_information_commutator(&rho, &h)?));
    }
    Ok(worst)
}

fn covariance(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h) = random_pair(&mut g, 2, 10);
        let u = haar_unitary(rho.dim(), &mut g);
        let left = fisher_discord(&rho.conjugated(&u)?, &h.conjugate(&u)?)?.c;
        let right = fisher_discord(&rho, &h)?.c;
        worst = worst.max(rel(left, right));
    }
    Ok(worst)
}

fn shift_scale(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h) = random_pair(&mut g, 2, 10);
        let omega = g.random_range(-3.0..3.0);
        let base = fisher_discord(&rho, &h)?.c;
        let shifted = fisher_discord(&rho, &h.shifted(omega))?.c;
        let scaled = fisher_discord(&rho, &h.scaled(omega))?.c;
        worst = worst.max(rel(shifted, base)).max(rel(scaled, omega * omega * base));
    }
    Ok(worst)
}

fn parallelogram(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h1) = random_pair(&mut g, 2, 10);
        let h2 = random_hermitian(rho.dim(), &mut g);
        let cd = |h: &HermitianOperator| fisher_discord(&rho, h).map(|r| r.c);
        let lhs = cd(&h1.combine(1.0, &h2, 1.0)?)? + cd(&h1.combine(1.0, &h2, -1.0)?)?;
        worst = worst.max(rel(lhs, 2.0 * cd(&h1)? + 2.0 * cd(&h2)?));
    }
    Ok(worst)
}

fn lifted(g: &mut StateRng) -> (usize, usize, HermitianOperator, HermitianOperator, HermitianOperator, HermitianOperator) {
    let (d1, d2) = (random_dim(2, 4, g), random_dim(2, 4, g));
    let (h1, h2) = (random_hermitian(d1, g), random_hermitian(d2, g));
    let a = tensor_hermitian(&h1, &HermitianOperator::identity(d2));
    let b = tensor_hermitian(&HermitianOperator::identity(d1), &h2);
    (d1, d2, h1, h2, a, b)
}

fn tensor_additivity(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (d1, d2, h1, h2, a, b) = lifted(&mut g);
        let (r1, r2) = (random_psd_unit_trace(d1, &mut g), random_psd_unit_trace(d2, &mut g));
        let rho = DensityMatrix::new(HermitianOperator::from_hermitian_part(&tensor_product(r1.matrix(), r2.matrix()))?)?;
        let joint = fisher_discord(&rho, &a.combine(1.0, &b, 1.0)?)?.c;
        worst = worst.max(rel(joint, fisher_discord(&r1, &h1)?.c + fisher_discord(&r2, &h2)?.c));
    }
    Ok(worst)
}

fn composite_parallelogram(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (d1, d2, _, _, a, b) = lifted(&mut g);
        let rho = random_psd_unit_trace(d1 * d2, &mut g);
        let cd = |h: &HermitianOperator| fisher_discord(&rho, h).map(|r| r.c);
        let lhs = cd(&a.combine(1.0, &b, 1.0)?)? + cd(&a.combine(1.0, &b, -1.0)?)?;
        worst = worst.max(rel(lhs, 2.0 * cd(&a)? + 2.0 * cd(&b)?));
    }
    Ok(worst)
}

fn direct_sum(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let blocks = random_dim(2, 4, &mut g);
        let weights = crate::random::random_simplex(blocks, &mut g);
        let mut parts = Vec::with_capacity(blocks);
        let mut expect = 0.0;
        for &w in &weights {
            let (state, hamiltonian) = random_pair(&mut g, 1, 5);
            expect += w * fisher_discord(&state, &hamiltonian)?.c;
            parts.push(WeightedBlock {
                weight: w,
                state,
                hamiltonian,
            });
        }
        let (rho, h) = direct_sum_weighted(&parts)?;
        worst = worst.max(rel(fisher_discord(&rho, &h)?.c, expect));
    }
    Ok(worst)
}

fn orbit(seed: u64, n: usize) -> Result<f64> {
    let mut g = rng(seed);
    let thetas: Vec<f64> = (1..=8).map(|k| TAU * k as f64 / 8.0).collect();
    let mut worst: f64 = 0.0;
    for _ in 0..n {
        let (rho, h) = random_pair(&mut g, 2, 16);
        worst = worst.max(orbit_invariance_check(&rho, &h, &thetas)?);
    }
    Ok(worst)
}

fn pauli_combination(c: [f64; 4]) -> Result<HermitianOperator> {
    let e = [
        C64::new(c[0] + c[3], 0.0),
        C64::new(c[1], -c[2]),
        C64::new(c[1], c[2]),
        C64::new(c[0] - c[3], 0.0),
    ];
    HermitianOperator::new(crate::linalg::ComplexMatrix::from_row_slice(2, 2, &e)?)
}

/// Worst offence of "C < 1e-12 implies pure or commuting" over `n` random qubit pairs, and
/// the largest `C` among constructed pure and commuting pairs.
pub fn qubit_iff(seed: u64, n: usize) -> Result<(f64, f64)> {
    let mut g = rng(seed);
    let mut implication: f64 = 0.0;
    let mut constructed: f64 = 0.0;
    for i in 0..n {
        let mut b = random_bloch(&mut g);
        let mut h = [g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), g.random_range(-1.0..1.0), g.random_range(-1.0..1.0)];
        match i % 4 {
            // pure: push the Bloch vector to the sphere
            0 => {
                let r = b.norm().max(1e-300);
                b = BlochVector::new(b.r1 / r, b.r2 / r, b.r3 / r)?;
            }
            // commuting: H along the Bloch vector
            1 => {
                let s = g.random_range(-1.0..1.0);
                h = [h[0], s * b.r1, s * b.r2, s * b.r3];
            }
            _ => {}
        }
        let rho = qubit_from_bloch(&b)?;
        let hop = pauli_combination(h)?;
        let c = fisher_discord(&rho, &hop)?.c;
        if i % 4 < 2 {
            constructed = constructed.max(c.abs());
        }
        if c < 1e-12 {
            let impure = 1.0 - b.norm();
            let comm = commutator(rho.matrix(), hop.as_matrix())?.max_abs();
            // distance from satisfying either side of the disjunction
            implication = implication.max(impure.min(comm));
        }
    }
    Ok((implication, constructed))
}

/// Closed form against the spectral engine for one family; returns the worst relative gap.
fn oracle(id: FamilyId, seed: u64, points: usize, cfg: &FockConfig, corrupt: bool) -> Result<f64> {
    let mut g = rng(seed ^ (id as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut worst: f64 = 0.0;
    for _ in 0..points {
        let fam = FormulaFamily::new(id, sample_params(id, &mut g));
        let mut closed = evaluate_closed_form(&fam)?;
        if corrupt {
            closed = closed * (1.0 + 1e-3) + 1e-6;
        }
        let r = spectral_discord(&fam, cfg)?;
        if r.converged != Some(true) {
            return Err(Error::ConvergenceFailure {
                dim: r.truncation_dim.unwrap_or(0),
            });
        }
        // identically zero families are compared absolutely
        worst = worst.max(if closed.abs() < 1e-12 { (closed - r.c).abs() } else { rel(closed, r.c) });
    }
    Ok(worst)
}

pub const LAW_TOL: f64 = 1e-9;
pub const ZERO_TOL: f64 = 1e-10;
pub const ORACLE_TOL: f64 = 1e-6;

/// Runs every check; `trials` scales the random case counts.
pub fn run_verify(opts: &VerifyOptions) -> Result<Vec<VerifyRow>> {
    if opts.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    opts.fock.validate()?;
    let t = opts.trials;
    let s = opts.seed;
    let laws = t.clamp(1, 100);
    let mut rows = vec![row_from("ordering chain", t, ZERO_TOL, || ordering(s, t))];
    match pure_zero(s.wrapping_add(1), t.clamp(1, 100)) {
        Ok((c, v)) => {
            rows.push(VerifyRow::new("zero law: pure states", t.clamp(1, 100), c, ZERO_TOL));
            rows.push(VerifyRow::new("pure states: I_F = I_W = Var", t.clamp(1, 100), v, 1e-8));
        }
        Err(e) => rows.push(VerifyRow::failed("zero law: pure states", t.clamp(1, 100), &e)),
    }
    rows.extend([
        row_from("zero law: commuting pairs", t.clamp(1, 100), ZERO_TOL, || commuting_zero(s.wrapping_add(2), t.clamp(1, 100))),
        row_from("non-commuting zero (a^dagger a)", 1, ZERO_TOL, || counterexample(&opts.fock)),
        row_from("skew information two paths", laws, LAW_TOL, || skew_paths(s.wrapping_add(3), laws)),
        row_from("unitary covariance", laws, LAW_TOL, || covariance(s.wrapping_add(4), laws)),
        row_from("shift invariance, scaling", laws, LAW_TOL, || shift_scale(s.wrapping_add(5), laws)),
        row_from("parallelogram", laws, LAW_TOL, || parallelogram(s.wrapping_add(6), laws)),
        row_from("composite parallelogram", laws, LAW_TOL, || composite_parallelogram(s.wrapping_add(7), laws)),
        row_from("tensor additivity", laws, LAW_TOL, || tensor_additivity(s.wrapping_add(8), laws)),
        row_from("direct-sum additivity", laws, LAW_TOL, || direct_sum(s.wrapping_add(9), laws)),
        row_from("orbit invariance", t.clamp(1, 50), LAW_TOL, || orbit(s.wrapping_add(10), t.clamp(1, 50))),
    ]);
    let qubits = (20 * t).min(10_000);
    match qubit_iff(s.wrapping_add(11), qubits) {
        Ok((imp, cons)) => {
            rows.push(VerifyRow::new("qubit: C = 0 only if pure/commuting", qubits, imp, 1e-6));
            rows.push(VerifyRow::new("qubit: pure/commuting give C = 0", qubits / 2, cons, ZERO_TOL));
        }
        Err(e) => rows.push(VerifyRow::failed("qubit iff", qubits, &e)),
    }
    let points = t.clamp(1, 20);
    let oracle_rows: Vec<VerifyRow> = FamilyId::ALL
        .par_iter()
        .map(|&id| {
            row_from(&format!("oracle {id}"), points, ORACLE_TOL, || {
                oracle(id, s.wrapping_add(12), points, &opts.fock, opts.corrupt == Some(id))
            })
        })
        .collect();
    rows.extend(oracle_rows);
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smoke_passes() {
        let rows = run_verify(&VerifyOptions {
            trials: 1,
            ..VerifyOptions::default()
        })
        .unwrap();
        for r in &rows {
            assert!(r.passed, "{}", r.render());
        }
        assert!(rows.iter().any(|r| r.name == "oracle MIXTURE_X"));
    }

    #[test]
    fn corrupted_family_fails_by_name() {
        let rows = run_verify(&VerifyOptions {
            trials: 1,
            corrupt: Some(FamilyId::ThermalX),
            ..VerifyOptions::default()
        })
        .unwrap();
        let failed: Vec<&str> = rows.iter().filter(|r| !r.passed).map(|r| r.name.as_str()).collect();
        assert_eq!(failed, ["oracle THERMAL_X"]);
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(run_verify(&VerifyOptions {
            trials: 0,
            ..VerifyOptions::default()
        })
        .is_err());
    }
}
