//! Quantum states evaluated by the library: qubit Bloch states, Fock-diagonal
//! families, thermal variants, two-component mixtures and Gaussian states.

use nalgebra::DMatrix;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fock::{displacement, squeeze, FockConfig, Truncated};
use crate::linalg::{eig_hermitian, ComplexMatrix, HermitianOperator, C64};

/// Unit-trace positive-semidefinite Hermitian matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix(HermitianOperator);

impl DensityMatrix {
    /// Validates trace and positivity (one eigendecomposition).
    pub fn new(op: HermitianOperator) -> Result<Self> {
        let tol = Tolerances::default();
        check_trace(&op, tol.trace_tol)?;
        let spec = eig_hermitian(&op)?;
        if let Some(&min) = spec.eigenvalues.first() {
            if min < -tol.psd_clip {
                return Err(Error::NotPsd {
                    min_eigenvalue: min,
                    clip: tol.psd_clip,
                });
            }
        }
        Ok(Self(op))
    }

    /// For matrices that are PSD by construction; only the trace is checked.
    pub(crate) fn from_psd_unchecked(op: HermitianOperator) -> Result<Self> {
        check_trace(&op, Tolerances::default().trace_tol)?;
        Ok(Self(op))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.0
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        self.0.as_matrix()
    }

    pub fn into_operator(self) -> HermitianOperator {
        self.0
    }

    /// `tr rho^2`.
    pub fn purity(&self) -> f64 {
        let m = self.matrix().matrix();
        m.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `U rho U^dagger`, re-Hermitized and renormalized.
    pub fn conjugated(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.mul(self.matrix())?.mul(&u.adjoint())?;
        Self::from_psd_unchecked(renormalized(&m)?)
    }
}

fn check_trace(op: &HermitianOperator, tol: f64) -> Result<()> {
    let trace = op.as_matrix().trace().re;
    if (trace - 1.0).abs() > tol {
        return Err(Error::TraceNotUnit { trace });
    }
    Ok(())
}

fn renormalized(m: &ComplexMatrix) -> Result<HermitianOperator> {
    let h = m.hermitian_part();
    let tr = h.trace().re;
    if tr.is_nan() || tr <= 0.0 {
        return Err(Error::TraceNotUnit { trace: tr });
    }
    HermitianOperator::from_hermitian_part(&h.scale(C64::new(1.0 / tr, 0.0)))
}

/// Real Bloch vector `(r1, r2, r3)` with norm at most 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochVector {
    pub r1: f64,
    pub r2: f64,
    pub r3: f64,
}

impl BlochVector {
    pub fn new(r1: f64, r2: f64, r3: f64) -> Result<Self> {
        let v = Self { r1, r2, r3 };
        let norm = v.norm();
        if !norm.is_finite() || norm > 1.0 + 1e-12 {
            return Err(Error::BlochOutOfBall { norm });
        }
        Ok(v)
    }

    pub fn norm(&self) -> f64 {
        (self.r1 * self.r1 + self.r2 * self.r2 + self.r3 * self.r3).sqrt()
    }
}

/// `(1 + r . sigma) / 2`.
pub fn qubit_from_bloch(r: &BlochVector) -> Result<DensityMatrix> {
    let r = BlochVector::new(r.r1, r.r2, r.r3)?;
    let m = ComplexMatrix::from_row_slice(
        2,
        2,
        &[
            C64::new((1.0 + r.r3) / 2.0, 0.0),
            C64::new(r.r1 / 2.0, -r.r2 / 2.0),
            C64::new(r.r1 / 2.0, r.r2 / 2.0),
            C64::new((1.0 - r.r3) / 2.0, 0.0),
        ],
    )?;
    DensityMatrix::from_psd_unchecked(HermitianOperator::new(m)?)
}

/// What to do when a geometric Fock distribution has mass beyond the cutoff.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailPolicy {
    /// Reject when the lost mass exceeds 1e-12.
    Strict,
    /// Renormalize the kept weights onto the cutoff.
    Renormalize,
}

const MAX_TAIL: f64 = 1e-12;

fn diagonal_state(weights: &[f64], dim: usize) -> Result<DensityMatrix> {
    let mut diag = vec![0.0; dim];
    diag[..weights.len()].copy_from_slice(weights);
    DensityMatrix::from_psd_unchecked(HermitianOperator::from_real_diagonal(&diag))
}

/// `sum_n w_n |n><n|`.
pub fn fock_diagonal(weights: &[f64], cfg: &FockConfig) -> Result<DensityMatrix> {
    let tol = Tolerances::default();
    if weights.len() > cfg.dim {
        return Err(Error::LevelOutOfRange {
            level: weights.len() - 1,
            dim: cfg.dim,
        });
    }
    let sum: f64 = weights.iter().sum();
    if weights.is_empty() || weights.iter().any(|&w| !w.is_finite() || w < 0.0) || (sum - 1.0).abs() > tol.weight_tol {
        return Err(Error::WeightNotNormalized { sum });
    }
    diagonal_state(weights, cfg.dim)
}

/// `p|0><0| + (1-p)|k><k|`.
pub fn rho_pk(p: f64, k: usize, cfg: &FockConfig) -> Result<DensityMatrix> {
    check_probability(p)?;
    if k == 0 {
        return Err(Error::EqualLevels(0));
    }
    if k >= cfg.dim {
        return Err(Error::LevelOutOfRange { level: k, dim: cfg.dim });
    }
    let mut w = vec![0.0; k + 1];
    w[0] = p;
    w[k] = 1.0 - p;
    diagonal_state(&w, cfg.dim)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfDomain(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_noise(lambda: f64, open_at_zero: bool) -> Result<()> {
    let ok = if open_at_zero {
        lambda > 0.0 && lambda < 1.0
    } else {
        (0.0..1.0).contains(&lambda)
    };
    if !ok {
        let range = if open_at_zero { "(0, 1)" } else { "[0, 1)" };
        return Err(Error::ParamOutOfDomain(format!("noise parameter {lambda} outside {range}")));
    }
    Ok(())
}

fn finish_geometric(mut w: Vec<f64>, tail: f64, policy: TailPolicy) -> Result<DensityMatrix> {
    if policy == TailPolicy::Strict && tail > MAX_TAIL {
        return Err(Error::TailTooHeavy { tail });
    }
    let s: f64 = w.iter().sum();
    w.iter_mut().for_each(|x| *x /= s);
    let n = w.len();
    diagonal_state(&w, n)
}

/// Thermal state `(1-lambda) sum_n lambda^n |n><n|` on the cutoff.
pub fn thermal(lambda: f64, cfg: &FockConfig, policy: TailPolicy) -> Result<DensityMatrix> {
    check_noise(lambda, false)?;
    let n = cfg.dim;
    let w: Vec<f64> = (0..n).map(|k| (1.0 - lambda) * lambda.powi(k as i32)).collect();
    finish_geometric(w, lambda.powi(n as i32), policy)
}

/// Thermal state with the vacuum removed: `((1-lambda)/lambda) sum_{n>=1} lambda^n |n><n|`.
pub fn truncated_thermal(lambda: f64, cfg: &FockConfig, policy: TailPolicy) -> Result<DensityMatrix> {
    check_noise(lambda, true)?;
    let n = cfg.dim;
    let w: Vec<f64> = (0..n)
        .map(|k| if k == 0 { 0.0 } else { (1.0 - lambda) * lambda.powi(k as i32 - 1) })
        .collect();
    finish_geometric(w, lambda.powi(n as i32 - 1), policy)
}

/// Photon-added thermal state `a^dagger tau a / tr(a^dagger tau a)`.
pub fn photon_added_thermal(lambda: f64, cfg: &FockConfig, policy: TailPolicy) -> Result<DensityMatrix> {
    check_noise(lambda, true)?;
    let n = cfg.dim;
    let w: Vec<f64> = (0..n)
        .map(|k| (1.0 - lambda).powi(2) * k as f64 * lambda.powi(k as i32 - 1))
        .collect();
    // sum_{k>=N} k lambda^k = lambda^N (N(1-lambda) + lambda) / (1-lambda)^2
    let tail = lambda.powi(n as i32 - 1) * (n as f64 * (1.0 - lambda) + lambda);
    finish_geometric(w, tail, policy)
}

/// `p |psi_mn><psi_mn| + (1-p)|0><0|` with `|psi_mn> = (|m> + |n>)/sqrt(2)`.
pub fn superposition_mixture(p: f64, m: usize, n: usize, cfg: &FockConfig) -> Result<DensityMatrix> {
    check_probability(p)?;
    if m == n {
        return Err(Error::EqualLevels(m));
    }
    for level in [m, n] {
        if level >= cfg.dim {
            return Err(Error::LevelOutOfRange { level, dim: cfg.dim });
        }
    }
    let d = cfg.dim;
    let mut mat = DMatrix::<C64>::zeros(d, d);
    let half = C64::new(p / 2.0, 0.0);
    for i in [m, n] {
        for j in [m, n] {
            mat[(i, j)] += half;
        }
    }
    mat[(0, 0)] += C64::new(1.0 - p, 0.0);
    DensityMatrix::from_psd_unchecked(HermitianOperator::new(ComplexMatrix::new(mat)?)?)
}

/// `1/2 |psi_01><psi_01| + 1/2 |2><2|`: zero discord against `a^dagger a` despite not commuting with it.
pub fn counterexample_state(cfg: &FockConfig) -> Result<DensityMatrix> {
    if cfg.dim < 3 {
        return Err(Error::LevelOutOfRange { level: 2, dim: cfg.dim });
    }
    let d = cfg.dim;
    let mut mat = DMatrix::<C64>::zeros(d, d);
    for i in 0..2 {
        for j in 0..2 {
            mat[(i, j)] = C64::new(0.25, 0.0);
        }
    }
    mat[(2, 2)] = C64::new(0.5, 0.0);
    DensityMatrix::from_psd_unchecked(HermitianOperator::new(ComplexMatrix::new(mat)?)?)
}

/// `D_z rho D_z^dagger`.
pub fn displaced(rho: &DensityMatrix, z: C64, cfg: &FockConfig) -> Result<Truncated<DensityMatrix>> {
    check_dim(rho, cfg)?;
    let d = displacement(z, cfg)?;
    Ok(Truncated {
        value: rho.conjugated(&d.value)?,
        truncation_warning: d.truncation_warning,
    })
}

/// `S_zeta rho S_zeta^dagger`.
pub fn squeezed(rho: &DensityMatrix, zeta: C64, cfg: &FockConfig) -> Result<Truncated<DensityMatrix>> {
    check_dim(rho, cfg)?;
    let s = squeeze(zeta, cfg)?;
    Ok(Truncated {
        value: rho.conjugated(&s.value)?,
        truncation_warning: s.truncation_warning,
    })
}

fn check_dim(rho: &DensityMatrix, cfg: &FockConfig) -> Result<()> {
    if rho.dim() != cfg.dim {
        return Err(Error::DimensionMismatch(format!(
            "state has dim {}, config has {}",
            rho.dim(),
            cfg.dim
        )));
    }
    Ok(())
}

/// Gaussian state `D_z S_zeta tau_lambda S_zeta^dagger D_z^dagger`.
pub fn gaussian(lambda: f64, zeta: C64, z: C64, cfg: &FockConfig, policy: TailPolicy) -> Result<Truncated<DensityMatrix>> {
    let tau = thermal(lambda, cfg, policy)?;
    let mut warn = false;
    let mut u = ComplexMatrix::identity(cfg.dim);
    if zeta != C64::new(0.0, 0.0) {
        let s = squeeze(zeta, cfg)?;
        warn |= s.truncation_warning;
        u = s.value;
    }
    if z != C64::new(0.0, 0.0) {
        let d = displacement(z, cfg)?;
        warn |= d.truncation_warning;
        u = d.value.mul(&u)?;
    }
    Ok(Truncated {
        value: tau.conjugated(&u)?,
        truncation_warning: warn,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{annihilation, number_op};
    use crate::linalg::commutator;
    use crate::measures::fisher_discord;

    fn cfg(n: usize) -> FockConfig {
        FockConfig::with_dim(n)
    }

    fn assert_valid(rho: &DensityMatrix) {
        DensityMatrix::new(rho.operator().clone()).expect("density matrix invariants");
    }

    #[test]
    fn bloch_examples() {
        let r = qubit_from_bloch(&BlochVector::new(0., 0., 0.).unwrap()).unwrap();
        assert!(r.matrix().max_abs_diff(&ComplexMatrix::identity(2).scale(C64::new(0.5, 0.))) < 1e-15);
        let r = qubit_from_bloch(&BlochVector::new(0., 0., 1.).unwrap()).unwrap();
        assert_eq!(r.matrix().get(0, 0).re, 1.0);
        assert_eq!(r.matrix().get(1, 1).re, 0.0);
        let r = qubit_from_bloch(&BlochVector::new(0., 0., 0.6).unwrap()).unwrap();
        assert!((r.matrix().get(0, 0).re - 0.8).abs() < 1e-15);
        assert!((r.matrix().get(1, 1).re - 0.2).abs() < 1e-15);
        assert!(matches!(BlochVector::new(1., 1., 0.), Err(Error::BlochOutOfBall { .. })));
    }

    #[test]
    fn bloch_eigenvalues() {
        let b = BlochVector::new(0.3, -0.4, 0.5).unwrap();
        let rho = qubit_from_bloch(&b).unwrap();
        let s = eig_hermitian(rho.operator()).unwrap();
        let r = b.norm();
        assert!((s.eigenvalues[0] - (1.0 - r) / 2.0).abs() < 1e-14);
        assert!((s.eigenvalues[1] - (1.0 + r) / 2.0).abs() < 1e-14);
    }

    #[test]
    fn fock_diagonal_examples() {
        let v = fock_diagonal(&[1.0], &cfg(4)).unwrap();
        assert_eq!(v.matrix().get(0, 0).re, 1.0);
        let p = 0.3;
        let rp = fock_diagonal(&[p, 1.0 - p], &cfg(4)).unwrap();
        assert_eq!(rp, rho_pk(p, 1, &cfg(4)).unwrap());
        let r = fock_diagonal(&[0.5, 0.0, 0.5], &cfg(4)).unwrap();
        assert_eq!(r, rho_pk(0.5, 2, &cfg(4)).unwrap());
        assert!(matches!(fock_diagonal(&[0.5, 0.4], &cfg(4)), Err(Error::WeightNotNormalized { .. })));
        assert!(matches!(fock_diagonal(&[1.2, -0.2], &cfg(4)), Err(Error::WeightNotNormalized { .. })));
    }

    #[test]
    fn thermal_examples() {
        let v = thermal(0.0, &cfg(8), TailPolicy::Strict).unwrap();
        assert_eq!(v.matrix().get(0, 0).re, 1.0);
        let t = thermal(0.5, &cfg(50), TailPolicy::Strict).unwrap();
        assert!((t.matrix().get(1, 1).re - 0.25).abs() < 1e-12);
        assert!((t.matrix().trace().re - 1.0).abs() < 1e-15);
        assert!(matches!(thermal(0.5, &cfg(20), TailPolicy::Strict), Err(Error::TailTooHeavy { .. })));
        let r = thermal(0.5, &cfg(20), TailPolicy::Renormalize).unwrap();
        assert!((r.matrix().trace().re - 1.0).abs() < 1e-15);
        assert!(thermal(1.0, &cfg(8), TailPolicy::Renormalize).is_err());
    }

    #[test]
    fn thermal_mean_photon_number() {
        let lambda = 0.4;
        let c = cfg(64);
        let t = thermal(lambda, &c, TailPolicy::Strict).unwrap();
        let mean = t.matrix().mul(number_op(&c).as_matrix()).unwrap().trace().re;
        assert!((mean - lambda / (1.0 - lambda)).abs() < 1e-6);
    }

    #[test]
    fn truncated_thermal_examples() {
        let t = truncated_thermal(0.5, &cfg(60), TailPolicy::Strict).unwrap();
        assert_eq!(t.matrix().get(0, 0).re, 0.0);
        assert!((t.matrix().get(1, 1).re - 0.5).abs() < 1e-12);
        assert!((t.matrix().trace().re - 1.0).abs() < 1e-15);
        assert!(truncated_thermal(0.0, &cfg(60), TailPolicy::Strict).is_err());
    }

    #[test]
    fn photon_added_thermal_examples() {
        let c = cfg(80);
        let lambda = 0.5;
        let t = photon_added_thermal(lambda, &c, TailPolicy::Strict).unwrap();
        assert_eq!(t.matrix().get(0, 0).re, 0.0);
        assert!((t.matrix().get(1, 1).re - 0.25).abs() < 1e-12);
        // a^dagger tau a / tr(...)
        let tau = thermal(lambda, &c, TailPolicy::Strict).unwrap();
        let a = annihilation(&c);
        let m = a.adjoint().mul(tau.matrix()).unwrap().mul(&a).unwrap();
        let tr = m.trace().re;
        let oracle = m.scale(C64::new(1.0 / tr, 0.0));
        assert!(oracle.max_abs_diff(t.matrix()) < 1e-10);
    }

    #[test]
    fn superposition_mixture_examples() {
        let c = cfg(6);
        let v = superposition_mixture(0.0, 0, 1, &c).unwrap();
        assert_eq!(v.matrix().get(0, 0).re, 1.0);
        assert_eq!(v.purity(), 1.0);
        let pure = superposition_mixture(1.0, 0, 1, &c).unwrap();
        assert!((pure.purity() - 1.0).abs() < 1e-15);
        assert!((pure.matrix().get(0, 1).re - 0.5).abs() < 1e-15);
        let h = superposition_mixture(0.5, 0, 1, &c).unwrap();
        let expect = [[0.75, 0.25], [0.25, 0.25]];
        for (i, row) in expect.iter().enumerate() {
            for (j, want) in row.iter().enumerate() {
                assert!((h.matrix().get(i, j).re - want).abs() < 1e-15);
            }
        }
        assert!(matches!(superposition_mixture(0.5, 2, 2, &c), Err(Error::EqualLevels(2))));
        assert!(matches!(superposition_mixture(0.5, 0, 6, &c), Err(Error::LevelOutOfRange { .. })));
    }

    #[test]
    fn superposition_mixture_spectrum() {
        for &(p, m, n) in &[(0.3, 0, 1), (0.7, 1, 3), (0.5, 0, 4), (0.9, 2, 5)] {
            let rho = superposition_mixture(p, m, n, &cfg(8)).unwrap();
            let s = eig_hermitian(rho.operator()).unwrap();
            let disc = (1.0 - 2.0 * p + 2.0 * p * p).sqrt();
            let top = s.eigenvalues[7];
            let second = s.eigenvalues[6];
            if m == 0 {
                assert!((top - (1.0 + disc) / 2.0).abs() < 1e-10);
                assert!((second - (1.0 - disc) / 2.0).abs() < 1e-10);
            } else {
                // vacuum is orthogonal to psi_mn: eigenvalues p and 1-p
                let mut ev = [p, 1.0 - p];
                ev.sort_by(f64::total_cmp);
                assert!((top - ev[1]).abs() < 1e-10 && (second - ev[0]).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn counterexample_properties() {
        let c = cfg(6);
        let rho = counterexample_state(&c).unwrap();
        assert!((rho.matrix().trace().re - 1.0).abs() < 1e-15);
        let s = eig_hermitian(rho.operator()).unwrap();
        let nonzero: Vec<f64> = s.eigenvalues.iter().copied().filter(|x| x.abs() > 1e-12).collect();
        assert_eq!(nonzero.len(), 2);
        assert!(nonzero.iter().all(|x| (x - 0.5).abs() < 1e-14));
        let comm = commutator(rho.matrix(), number_op(&c).as_matrix()).unwrap();
        assert!(comm.max_abs() > 0.1);
        assert!(counterexample_state(&cfg(2)).is_err());
    }

    #[test]
    fn gaussian_examples() {
        let c = cfg(40);
        let zero = C64::new(0.0, 0.0);
        let v = gaussian(0.0, zero, zero, &c, TailPolicy::Strict).unwrap().value;
        assert_eq!(v.matrix().get(0, 0).re, 1.0);

        let lambda = 0.3;
        let c = cfg(96);
        let g = gaussian(lambda, zero, C64::from_polar(1.0, 0.4), &c, TailPolicy::Strict).unwrap();
        assert!(!g.truncation_warning);
        assert!((g.value.purity() - (1.0 - lambda) / (1.0 + lambda)).abs() < 1e-6);
        assert_valid(&g.value);

        let sq = gaussian(0.0, C64::from_polar(0.5, 0.3), zero, &c, TailPolicy::Strict).unwrap().value;
        assert!((sq.purity() - 1.0).abs() < 1e-9);
        for h in [number_op(&c), crate::fock::quadrature(0.7, &c), crate::fock::quad_squared(0.2, &c)] {
            assert!(fisher_discord(&sq, &h).unwrap().c < 1e-10);
        }
    }

    #[test]
    fn constructors_satisfy_invariants() {
        let c = cfg(24);
        let r = TailPolicy::Renormalize;
        assert_valid(&thermal(0.6, &c, r).unwrap());
        assert_valid(&truncated_thermal(0.6, &c, r).unwrap());
        assert_valid(&photon_added_thermal(0.6, &c, r).unwrap());
        assert_valid(&superposition_mixture(0.4, 1, 3, &c).unwrap());
        assert_valid(&counterexample_state(&c).unwrap());
        assert_valid(&gaussian(0.2, C64::from_polar(0.4, 1.0), C64::from_polar(0.8, 2.0), &c, r).unwrap().value);
        let rho = fock_diagonal(&[0.2, 0.3, 0.5], &c).unwrap();
        assert_valid(&displaced(&rho, C64::from_polar(0.7, 0.1), &c).unwrap().value);
        assert_valid(&squeezed(&rho, C64::from_polar(0.3, 0.9), &c).unwrap().value);
    }
}
