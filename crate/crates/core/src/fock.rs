//! Truncated single-mode bosonic operators.
//!
//! Levels `0..N` are kept. Operators are exact as matrices, but canonical
//! commutation fails in the last row and column, so convergence is judged on
//! scalar outputs across growing dimensions rather than on matrix identities.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{unitary_from_generator, ComplexMatrix, HermitianOperator, C64};

/// Truncation dimension plus the schedule used to grow it until results settle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockConfig {
    pub dim: usize,
    pub conv_tol: f64,
    pub max_dim: usize,
    pub growth: usize,
}

impl Default for FockConfig {
    fn default() -> Self {
        Self {
            dim: 32,
            conv_tol: 1e-8,
            max_dim: 512,
            growth: 2,
        }
    }
}

impl FockConfig {
    pub fn new(dim: usize, conv_tol: f64, max_dim: usize, growth: usize) -> Result<Self> {
        let cfg = Self {
            dim,
            conv_tol,
            max_dim,
            growth,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// Fixed dimension; `max_dim` follows so the config stays valid.
    pub fn with_dim(dim: usize) -> Self {
        let d = Self::default();
        Self {
            dim,
            max_dim: d.max_dim.max(dim),
            ..d
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.dim < 2 {
            return Err(Error::InvalidConfig(format!("dim must be >= 2, got {}", self.dim)));
        }
        if self.max_dim < self.dim {
            return Err(Error::InvalidConfig(format!(
                "max_dim {} is below dim {}",
                self.max_dim, self.dim
            )));
        }
        if self.conv_tol.is_nan() || self.conv_tol <= 0.0 {
            return Err(Error::InvalidConfig(format!("conv_tol must be > 0, got {}", self.conv_tol)));
        }
        if self.growth < 2 {
            return Err(Error::InvalidConfig(format!("growth must be >= 2, got {}", self.growth)));
        }
        Ok(())
    }

    /// Dimensions visited by the convergence loop: `dim, growth*dim, ...`, ending at `max_dim`.
    pub fn schedule(&self) -> Vec<usize> {
        let mut dims = vec![self.dim];
        let mut d = self.dim;
        while d < self.max_dim {
            d = (d * self.growth).min(self.max_dim);
            dims.push(d);
        }
        dims
    }
}

/// A value built on a truncated space, flagged when the truncation is likely too small.
#[derive(Debug, Clone)]
pub struct Truncated<T> {
    pub value: T,
    pub truncation_warning: bool,
}

impl<T> Truncated<T> {
    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Truncated<U> {
        Truncated {
            value: f(self.value),
            truncation_warning: self.truncation_warning,
        }
    }
}

/// `<n-1|a|n> = sqrt(n)`.
pub fn annihilation(cfg: &FockConfig) -> ComplexMatrix {
    let n = cfg.dim;
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in 1..n {
        m[(k - 1, k)] = C64::new((k as f64).sqrt(), 0.0);
    }
    ComplexMatrix::from_matrix_unchecked(m)
}

pub fn creation(cfg: &FockConfig) -> ComplexMatrix {
    annihilation(cfg).adjoint()
}

pub fn number_op(cfg: &FockConfig) -> HermitianOperator {
    let diag: Vec<f64> = (0..cfg.dim).map(|k| k as f64).collect();
    HermitianOperator::from_real_diagonal(&diag)
}

/// `X_theta = e^{-i theta} a + e^{i theta} a^dagger`.
pub fn quadrature(theta: f64, cfg: &FockConfig) -> HermitianOperator {
    ladder_band(1, theta, cfg.dim)
}

/// `Lambda_theta = e^{-i theta} a^2 + e^{i theta} a^dagger^2`.
pub fn quad_squared(theta: f64, cfg: &FockConfig) -> HermitianOperator {
    ladder_band(2, theta, cfg.dim)
}

/// `e^{-i theta} a^l + e^{i theta} a^dagger^l`.
pub fn ladder_power(l: usize, theta: f64, cfg: &FockConfig) -> Result<HermitianOperator> {
    if l == 0 {
        return Err(Error::ParamOutOfDomain("ladder power must be positive".into()));
    }
    if l >= cfg.dim {
        return Err(Error::PowerExceedsTruncation {
            power: l,
            dim: cfg.dim,
        });
    }
    Ok(ladder_band(l, theta, cfg.dim))
}

fn ladder_band(l: usize, theta: f64, n: usize) -> HermitianOperator {
    let phase = C64::new(0.0, -theta).exp();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for k in l..n {
        // <k-l| a^l |k> = sqrt(k!/(k-l)!)
        let amp: f64 = ((k - l + 1)..=k).map(|j| j as f64).product::<f64>().sqrt();
        m[(k - l, k)] = phase * amp;
        m[(k, k - l)] = phase.conj() * amp;
    }
    HermitianOperator::new(ComplexMatrix::from_matrix_unchecked(m)).expect("band matrix is Hermitian by construction")
}

/// `D_z = exp(z a^dagger - z* a)` from the truncated generator.
pub fn displacement(z: C64, cfg: &FockConfig) -> Result<Truncated<ComplexMatrix>> {
    let a = annihilation(cfg);
    let gen = a.adjoint().scale(z).sub(&a.scale(z.conj()))?;
    Ok(Truncated {
        value: unitary_from_generator(&gen)?,
        truncation_warning: z.norm_sqr() > cfg.dim as f64 / 4.0,
    })
}

/// `S_zeta = exp((zeta* a^2 - zeta a^dagger^2) / 2)` from the truncated generator.
pub fn squeeze(zeta: C64, cfg: &FockConfig) -> Result<Truncated<ComplexMatrix>> {
    let a = annihilation(cfg);
    let a2 = a.mul(&a)?;
    let gen = a2
        .scale(zeta.conj())
        .sub(&a2.adjoint().scale(zeta))?
        .scale(C64::new(0.5, 0.0));
    Ok(Truncated {
        value: unitary_from_generator(&gen)?,
        truncation_warning: (2.0 * zeta.norm()).exp() > cfg.dim as f64 / 4.0,
    })
}

/// Outcome of growing the truncation until successive evaluations agree.
#[derive(Debug, Clone)]
pub struct Converged<T> {
    pub value: T,
    pub used_dim: usize,
    pub converged: bool,
}

/// Evaluates `eval` along the dimension schedule until every scalar returned by
/// `scalars` changes by at most `conv_tol * max(1, |value|)` between consecutive dimensions.
pub fn converge<T, E, F, S>(cfg: &FockConfig, mut eval: F, scalars: S) -> std::result::Result<Converged<T>, E>
where
    F: FnMut(&FockConfig) -> std::result::Result<T, E>,
    S: Fn(&T) -> Vec<f64>,
{
    let mut prev: Option<Vec<f64>> = None;
    let mut last = None;
    for dim in cfg.schedule() {
        let sub = FockConfig { dim, ..*cfg };
        let value = eval(&sub)?;
        let current = scalars(&value);
        let settled = prev.as_ref().is_some_and(|p| {
            p.iter()
                .zip(&current)
                .all(|(a, b)| (a - b).abs() <= cfg.conv_tol * b.abs().max(1.0))
        });
        if settled {
            return Ok(Converged {
                value,
                used_dim: dim,
                converged: true,
            });
        }
        prev = Some(current);
        last = Some((value, dim));
    }
    let (value, used_dim) = last.expect("schedule is never empty");
    Ok(Converged {
        value,
        used_dim,
        converged: false,
    })
}

/// Scalar form of [`converge`]; non-convergence is reported, not raised.
pub fn converged_value<F>(f: F, cfg: &FockConfig) -> Converged<f64>
where
    F: Fn(&FockConfig) -> f64,
{
    converge::<_, std::convert::Infallible, _, _>(cfg, |c| Ok(f(c)), |v| vec![*v])
        .unwrap_or_else(|e| match e {})
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::commutator;
    use std::f64::consts::FRAC_PI_2;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn annihilation_small_cases() {
        let a = annihilation(&FockConfig::with_dim(2));
        let expect = ComplexMatrix::from_row_slice(2, 2, &[c(0., 0.), c(1., 0.), c(0., 0.), c(0., 0.)]).unwrap();
        assert_eq!(a, expect);
        let a3 = annihilation(&FockConfig::with_dim(3));
        assert!((a3.get(1, 2).re - std::f64::consts::SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn ladder_action_is_exact() {
        let cfg = FockConfig::with_dim(10);
        let a = annihilation(&cfg);
        for n in 0..10 {
            for m in 0..10 {
                let expect = if m + 1 == n { (n as f64).sqrt() } else { 0.0 };
                assert_eq!(a.get(m, n), c(expect, 0.0));
            }
        }
    }

    #[test]
    fn truncated_ccr_fails_only_in_corner() {
        let n = 6;
        let cfg = FockConfig::with_dim(n);
        let a = annihilation(&cfg);
        let comm = commutator(&a, &a.adjoint()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let expect = if i != j {
                    0.0
                } else if i == n - 1 {
                    1.0 - n as f64
                } else {
                    1.0
                };
                assert!((comm.get(i, j) - c(expect, 0.)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn number_operator() {
        let cfg = FockConfig::with_dim(3);
        let n = number_op(&cfg);
        assert_eq!(n, HermitianOperator::from_real_diagonal(&[0., 1., 2.]));
        let cfg = FockConfig::with_dim(12);
        let a = annihilation(&cfg);
        let ada = a.adjoint().mul(&a).unwrap();
        assert!(ada.max_abs_diff(number_op(&cfg).as_matrix()) < 1e-13);
    }

    #[test]
    fn quadrature_examples() {
        let cfg = FockConfig::with_dim(8);
        let a = annihilation(&cfg);
        let x0 = quadrature(0.0, &cfg);
        assert!(x0.as_matrix().max_abs_diff(&a.add(&a.adjoint()).unwrap()) < 1e-15);
        let xp = quadrature(FRAC_PI_2, &cfg);
        let expect = a.adjoint().sub(&a).unwrap().scale(c(0., 1.));
        assert!(xp.as_matrix().max_abs_diff(&expect) < 1e-15);
        for &t in &[0.0, 0.3, 1.7, 4.0] {
            let x = quadrature(t, &cfg);
            assert!((x.get(0, 1) - c(0., -t).exp()).norm() < 1e-15);
            assert!((x.get(0, 1).norm() - 1.0).abs() < 1e-15);
        }
    }

    #[test]
    fn quad_squared_examples() {
        let cfg = FockConfig::with_dim(6);
        let t = 0.9;
        let l = quad_squared(t, &cfg);
        assert!((l.get(0, 2) - c(0., -t).exp() * 2f64.sqrt()).norm() < 1e-15);
        let l0 = quad_squared(0.0, &FockConfig::with_dim(3));
        assert!((l0.get(0, 2).re - 2f64.sqrt()).abs() < 1e-15);
        assert!(l0.as_matrix().matrix().iter().all(|z| z.im == 0.0));
        for i in 0..6 {
            for j in 0..6 {
                if (i as i64 - j as i64).abs() != 2 {
                    assert_eq!(l.get(i, j), c(0., 0.));
                }
            }
        }
    }

    #[test]
    fn ladder_power_consistency() {
        let cfg = FockConfig::with_dim(9);
        let t = 1.1;
        assert!(ladder_power(1, t, &cfg).unwrap().as_matrix().max_abs_diff(quadrature(t, &cfg).as_matrix()) < 1e-15);
        assert!(ladder_power(2, t, &cfg).unwrap().as_matrix().max_abs_diff(quad_squared(t, &cfg).as_matrix()) < 1e-14);
        for k in 1..6usize {
            let h = ladder_power(k, t, &cfg).unwrap();
            let fact: f64 = (1..=k).map(|j| j as f64).product();
            assert!((h.get(0, k) - c(0., -t).exp() * fact.sqrt()).norm() < 1e-12);
        }
        assert!(matches!(
            ladder_power(9, t, &cfg),
            Err(Error::PowerExceedsTruncation { power: 9, dim: 9 })
        ));
    }

    #[test]
    fn displacement_examples() {
        let cfg = FockConfig::with_dim(40);
        let d0 = displacement(c(0., 0.), &cfg).unwrap();
        assert!(d0.value.max_abs_diff(&ComplexMatrix::identity(40)) < 1e-13);
        // <0|D_z|0> = exp(-|z|^2/2)
        let d = displacement(c(1., 0.), &cfg).unwrap();
        assert!((d.value.get(0, 0).re - 0.606_530_659_712_633_4).abs() < 1e-9);
        assert!(!d.truncation_warning);
        let z = C64::from_polar(0.5, 0.7);
        let d = displacement(z, &cfg).unwrap();
        assert!((d.value.get(0, 0).norm() - (-0.125f64).exp()).abs() < 1e-9);
        let dm = displacement(-z, &cfg).unwrap();
        assert!(d.value.mul(&dm.value).unwrap().max_abs_diff(&ComplexMatrix::identity(40)) < 1e-8);
        assert!(displacement(c(4.0, 0.), &cfg).unwrap().truncation_warning);
    }

    #[test]
    fn squeeze_examples() {
        let cfg = FockConfig::with_dim(60);
        let s0 = squeeze(c(0., 0.), &cfg).unwrap();
        assert!(s0.value.max_abs_diff(&ComplexMatrix::identity(60)) < 1e-13);
        // <0|S|0> = 1/sqrt(cosh r)
        let s = squeeze(c(0.5, 0.), &cfg).unwrap();
        assert!((s.value.get(0, 0).re - 0.941_710_615_831_675_7).abs() < 1e-9);
        assert!(!s.truncation_warning);
    }

    #[test]
    fn squeezed_vacuum_position_variance() {
        let cfg = FockConfig::with_dim(80);
        let r = 0.6;
        let s = squeeze(c(r, 0.), &cfg).unwrap().value;
        let x = quadrature(0.0, &cfg).scaled(std::f64::consts::FRAC_1_SQRT_2);
        let psi = s.matrix().column(0).into_owned();
        let xm = x.as_matrix().matrix();
        let mean = (psi.adjoint() * xm * &psi)[(0, 0)].re;
        let second = (psi.adjoint() * xm * xm * &psi)[(0, 0)].re;
        assert!((second - mean * mean - (-2.0 * r).exp() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn unitarity_at_small_truncation() {
        let cfg = FockConfig::with_dim(5);
        let d = displacement(C64::from_polar(1.3, 0.4), &cfg).unwrap().value;
        let s = squeeze(C64::from_polar(1.1, 2.0), &cfg).unwrap().value;
        let id = ComplexMatrix::identity(5);
        assert!(d.adjoint().mul(&d).unwrap().max_abs_diff(&id) < 1e-9);
        assert!(s.adjoint().mul(&s).unwrap().max_abs_diff(&id) < 1e-9);
    }

    #[test]
    fn rotation_conjugates_quadrature_away_from_edge() {
        let n = 12;
        let cfg = FockConfig::with_dim(n);
        let (theta, omega) = (0.4, 1.3);
        let diag: Vec<C64> = (0..n).map(|k| c(0., omega * k as f64).exp()).collect();
        let r = ComplexMatrix::from_diagonal(&diag);
        let rotated = r.mul(quadrature(theta, &cfg).as_matrix()).unwrap().mul(&r.adjoint()).unwrap();
        let target = quadrature(theta + omega, &cfg);
        for i in 0..n - 2 {
            for j in 0..n - 2 {
                assert!((rotated.get(i, j) - target.get(i, j)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn schedule_doubles_to_max() {
        let cfg = FockConfig::default();
        assert_eq!(cfg.schedule(), vec![32, 64, 128, 256, 512]);
        let cfg = FockConfig::new(20, 1e-8, 100, 2).unwrap();
        assert_eq!(cfg.schedule(), vec![20, 40, 80, 100]);
        assert!(FockConfig::new(1, 1e-8, 100, 2).is_err());
        assert!(FockConfig::new(64, 1e-8, 32, 2).is_err());
    }

    #[test]
    fn converged_value_constant_and_slow() {
        let cfg = FockConfig::default();
        let r = converged_value(|_| 3.5, &cfg);
        assert!(r.converged);
        assert_eq!(r.used_dim, 64);
        assert_eq!(r.value, 3.5);

        // 1/N never settles to 1e-8
        let r = converged_value(|c| 1.0 / c.dim as f64, &cfg);
        assert!(!r.converged);
        assert_eq!(r.used_dim, 512);
    }
}
