use crate::error::{Error, Result};
use crate::linalg::{HermitianOperator, C64};
use crate::states::BlochVector;

use super::family::{FamilyId, FormulaFamily, Params};

/// Maximum number of terms a series family may use.
pub const MAX_SERIES_TERMS: usize = 1_000_000;

/// `2 + sqrt(5) - 2 sqrt(2 + sqrt(5))`, the maximiser of the thermal quadrature discord.
pub fn lambda0() -> f64 {
    let s5 = 5f64.sqrt();
    2.0 + s5 - 2.0 * (2.0 + s5).sqrt()
}

fn check_p(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ParamOutOfDomain(format!("p = {p} outside [0, 1]")));
    }
    Ok(())
}

fn check_lambda(lambda: f64, open_at_zero: bool) -> Result<()> {
    let ok = if open_at_zero {
        lambda > 0.0 && lambda < 1.0
    } else {
        (0.0..1.0).contains(&lambda)
    };
    if !ok {
        return Err(Error::ParamOutOfDomain(format!("lambda = {lambda} outside the family's domain")));
    }
    Ok(())
}

/// `f_p = sqrt(2p(1-p)) (1 - sqrt(2p(1-p)))`.
pub fn f_p(p: f64) -> Result<f64> {
    check_p(p)?;
    let s = (2.0 * p * (1.0 - p)).sqrt();
    Ok(s * (1.0 - s))
}

/// `g_p = 2 sqrt(p(1-p)) (sqrt(p) - sqrt(1-p))^2`.
pub fn g_p(p: f64) -> Result<f64> {
    check_p(p)?;
    let d = p.sqrt() - (1.0 - p).sqrt();
    Ok(2.0 * (p * (1.0 - p)).sqrt() * d * d)
}

/// `e^{i theta} cosh|zeta| - e^{-i(theta - arg zeta)} sinh|zeta|`.
pub fn beta_theta_zeta(theta: f64, zeta: C64) -> C64 {
    let r = zeta.norm();
    C64::from_polar(r.cosh(), theta) - C64::from_polar(r.sinh(), -(theta - zeta.arg()))
}

/// `e^{i theta} cosh^2|zeta| + e^{-i(theta - 2 arg zeta)} sinh^2|zeta|`.
pub fn beta_prime_theta_zeta(theta: f64, zeta: C64) -> C64 {
    let r = zeta.norm();
    C64::from_polar(r.cosh().powi(2), theta) + C64::from_polar(r.sinh().powi(2), -(theta - 2.0 * zeta.arg()))
}

/// `z cosh|zeta| - z* e^{i arg zeta} sinh|zeta|`.
pub fn beta_z_zeta(z: C64, zeta: C64) -> C64 {
    let r = zeta.norm();
    z * r.cosh() - z.conj() * C64::from_polar(r.sinh(), zeta.arg())
}

/// `z* e^{i theta} cosh|zeta| - z e^{-i theta_zeta} sinh|zeta|` with `theta_zeta = theta - arg zeta`.
pub fn beta_theta_z_zeta(theta: f64, z: C64, zeta: C64) -> C64 {
    let r = zeta.norm();
    z.conj() * C64::from_polar(r.cosh(), theta) - z * C64::from_polar(r.sinh(), -(theta - zeta.arg()))
}

/// `sqrt(a b) (sqrt(a) - sqrt(b))^2 / (a + b)`, zero when both vanish.
fn pair_term(a: f64, b: f64) -> f64 {
    if a + b <= 0.0 {
        return 0.0;
    }
    let d = a.sqrt() - b.sqrt();
    (a * b).sqrt() * d * d / (a + b)
}

fn weight(w: &[f64], i: usize) -> f64 {
    w.get(i).copied().unwrap_or(0.0)
}

fn check_weights(w: &[f64]) -> Result<()> {
    let sum: f64 = w.iter().sum();
    if w.is_empty() || w.iter().any(|&x| x.is_nan() || x < 0.0) || (sum - 1.0).abs() > 1e-10 {
        return Err(Error::WeightNotNormalized { sum });
    }
    Ok(())
}

/// `2 sum_n pair(l_n, l_{n+1}) (n+1)`.
pub fn fockdiag_x(w: &[f64]) -> Result<f64> {
    check_weights(w)?;
    Ok(2.0 * (0..w.len()).map(|n| pair_term(w[n], weight(w, n + 1)) * (n + 1) as f64).sum::<f64>())
}

/// `2 sum_n pair(l_n, l_{n+2}) (n+1)(n+2)`.
pub fn fockdiag_l(w: &[f64]) -> Result<f64> {
    check_weights(w)?;
    Ok(2.0
        * (0..w.len())
            .map(|n| pair_term(w[n], weight(w, n + 2)) * ((n + 1) * (n + 2)) as f64)
            .sum::<f64>())
}

/// `sinh^2(2|zeta|)/2 sum_n pair(l_n, l_{n+2}) (n^2 + 3n + 2)`.
pub fn sqz_fockdiag_n(w: &[f64], zeta: C64) -> Result<f64> {
    check_weights(w)?;
    let s: f64 = (0..w.len())
        .map(|n| {
            let nf = n as f64;
            pair_term(w[n], weight(w, n + 2)) * (nf * nf + 3.0 * nf + 2.0)
        })
        .sum();
    Ok((2.0 * zeta.norm()).sinh().powi(2) / 2.0 * s)
}

/// `2 sqrt(l)(1 - sqrt(l))^2 / (1 - l^2)`.
fn thermal_core(lambda: f64) -> f64 {
    let s = lambda.sqrt();
    2.0 * s * (1.0 - s).powi(2) / (1.0 - lambda * lambda)
}

/// `(2(1-l)^2/sqrt(l)) sum_{n>=1} p_{l,n} l^n`.
///
/// The terms vanish where `(n+1) l = n`, so a "term below eps * sum" rule could
/// stop early. Instead the remainder is bounded by the envelope
/// `p_{l,n} <= (n+1)^2`, whose successive ratios decrease, giving
/// `tail after n <= e_{n+1} / (1 - r_{n+1})` once `r_{n+1} < 1`.
pub fn pa_thermal_x(lambda: f64, eps: f64) -> Result<f64> {
    check_lambda(lambda, true)?;
    let mut sum = 0.0;
    let mut pow = 1.0;
    for n in 1..=MAX_SERIES_TERMS {
        let nf = n as f64;
        pow *= lambda;
        let d = ((nf + 1.0) * lambda).sqrt() - nf.sqrt();
        let p = (nf * (nf + 1.0).powi(3)).sqrt() * d * d / ((nf + 1.0) * lambda + nf);
        sum += p * pow;
        let env_next = (nf + 2.0).powi(2) * pow * lambda;
        let ratio = ((nf + 3.0) / (nf + 2.0)).powi(2) * lambda;
        if ratio < 1.0 && env_next / (1.0 - ratio) <= eps * sum {
            return Ok(2.0 * (1.0 - lambda).powi(2) / lambda.sqrt() * sum);
        }
    }
    Err(Error::SeriesNotConverged {
        terms: MAX_SERIES_TERMS,
    })
}

/// Mixture `p|psi_mn><psi_mn| + (1-p)|0><0|` with the vacuum-containing level first.
fn mixture_levels(params: &Params) -> Result<(usize, usize)> {
    let (m, n) = (params.m, params.n()?);
    if m == n {
        return Err(Error::EqualLevels(m));
    }
    Ok(if n == 0 { (n, m) } else { (m, n) })
}

fn mixture_cos_factor(p: f64, theta: f64) -> f64 {
    p * p * theta.cos().powi(2) / (2.0 * p * p - 2.0 * p + 1.0)
}

fn require_m_zero(params: &Params) -> Result<usize> {
    let (m, n) = mixture_levels(params)?;
    if m != 0 {
        return Err(Error::ParamOutOfDomain("this family requires one level to be the vacuum".into()));
    }
    Ok(n)
}

fn factorial(k: usize) -> f64 {
    (1..=k).map(|j| j as f64).product()
}

pub fn evaluate_closed_form(family: &FormulaFamily) -> Result<f64> {
    let p = &family.params;
    let v = match family.id {
        FamilyId::Qubit => {
            let r = p.bloch()?;
            let r = BlochVector::new(r.r1, r.r2, r.r3)?.norm();
            qubit_coefficient(r) * p.h12()?.norm_sqr()
        }
        FamilyId::FockdiagN => {
            check_weights(p.weights()?)?;
            0.0
        }
        FamilyId::DispFockdiagN => p.z.norm_sqr() * fockdiag_x(p.weights()?)?,
        FamilyId::SqzFockdiagN => sqz_fockdiag_n(p.weights()?, p.zeta)?,
        FamilyId::DispThermalN => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            p.z.norm_sqr() * thermal_core(l)
        }
        FamilyId::SqzThermalN => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            l * (2.0 * p.zeta.norm()).sinh().powi(2) / (1.0 + l * l)
        }
        FamilyId::GaussianN => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            l * (2.0 * p.zeta.norm()).sinh().powi(2) / (1.0 + l * l)
                + thermal_core(l) * beta_z_zeta(p.z, p.zeta).norm_sqr()
        }
        FamilyId::MixtureN => {
            let pp = p.p()?;
            let (m, n) = mixture_levels(p)?;
            if m != 0 {
                check_p(pp)?;
                0.0
            } else {
                let nf = n as f64;
                nf * nf * pp * pp * f_p(pp)? / (4.0 * ((1.0 - pp).powi(2) + pp * pp))
            }
        }
        FamilyId::FockdiagX => fockdiag_x(p.weights()?)?,
        FamilyId::SqzFockdiagX => beta_theta_zeta(p.theta, p.zeta).norm_sqr() * fockdiag_x(p.weights()?)?,
        FamilyId::TwoLevelX => g_p(p.p()?)?,
        FamilyId::RhoPkLpower => {
            let (k, l) = (p.k()?, p.l()?);
            if k == 0 || l == 0 {
                return Err(Error::ParamOutOfDomain("k and l must be positive".into()));
            }
            let g = g_p(p.p()?)?;
            if k == l {
                g * factorial(k)
            } else {
                0.0
            }
        }
        FamilyId::ThermalX => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            thermal_core(l)
        }
        FamilyId::TruncThermalX => {
            let l = p.lambda()?;
            check_lambda(l, true)?;
            thermal_core(l) * (2.0 - l)
        }
        FamilyId::PaThermalX => pa_thermal_x(p.lambda()?, p.eps)?,
        FamilyId::GaussianX => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            thermal_core(l) * beta_theta_zeta(p.theta, p.zeta).norm_sqr()
        }
        FamilyId::MixtureX => {
            let pp = p.p()?;
            let (m, n) = mixture_levels(p)?;
            match (m, n) {
                (0, 1) => (1.0 - mixture_cos_factor(pp, p.theta)) * f_p(pp)?,
                (0, _) => {
                    check_p(pp)?;
                    0.0
                }
                _ if m == 1 || n == 1 => g_p(pp)? / 2.0,
                _ => {
                    check_p(pp)?;
                    0.0
                }
            }
        }
        FamilyId::FockdiagL => fockdiag_l(p.weights()?)?,
        FamilyId::DispFockdiagL => {
            let w = p.weights()?;
            fockdiag_l(w)? + 4.0 * p.z.norm_sqr() * fockdiag_x(w)?
        }
        FamilyId::SqzFockdiagL => beta_prime_theta_zeta(p.theta, p.zeta).norm_sqr() * fockdiag_l(p.weights()?)?,
        FamilyId::RhoPkL => {
            let k = p.k()?;
            if k == 0 {
                return Err(Error::ParamOutOfDomain("k must be positive".into()));
            }
            let g = g_p(p.p()?)?;
            if k == 2 {
                2.0 * g
            } else {
                0.0
            }
        }
        FamilyId::ThermalL => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            4.0 * l / (1.0 + l * l)
        }
        FamilyId::DispThermalL => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            4.0 * p.z.norm_sqr() * thermal_core(l) + 4.0 * l / (1.0 + l * l)
        }
        FamilyId::SqzThermalL => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            4.0 * l * beta_prime_theta_zeta(p.theta, p.zeta).norm_sqr() / (1.0 + l * l)
        }
        FamilyId::GaussianL => {
            let l = p.lambda()?;
            check_lambda(l, false)?;
            4.0 * l * beta_prime_theta_zeta(p.theta, p.zeta).norm_sqr() / (1.0 + l * l)
                + 4.0 * thermal_core(l) * beta_theta_z_zeta(p.theta, p.z, p.zeta).norm_sqr()
        }
        FamilyId::MixtureL => {
            let pp = p.p()?;
            let (m, n) = mixture_levels(p)?;
            match (m, n) {
                (0, 2) => (2.0 - 2.0 * mixture_cos_factor(pp, p.theta)) * f_p(pp)?,
                (0, _) => {
                    check_p(pp)?;
                    0.0
                }
                _ if m == 2 || n == 2 => g_p(pp)?,
                _ => {
                    check_p(pp)?;
                    0.0
                }
            }
        }
        FamilyId::MixtureHalfX => {
            let n = require_m_zero(p)?;
            if n == 1 {
                0.25 * (2f64.sqrt() - 1.0) * (1.0 + p.theta.sin().powi(2))
            } else {
                0.0
            }
        }
        FamilyId::MixtureHalfL => {
            let n = require_m_zero(p)?;
            if n == 2 {
                0.25 * (2f64.sqrt() - 1.0) * (3.0 - (2.0 * p.theta).cos())
            } else {
                0.0
            }
        }
    };
    Ok(v)
}

/// `r^2 - 1 + sqrt(1 - r^2)`, the qubit discord per unit `|h12|^2`.
fn qubit_coefficient(r: f64) -> f64 {
    let r2 = (r * r).min(1.0);
    r2 - 1.0 + (1.0 - r2).sqrt()
}

/// Unit eigenvectors of `(1 + r.sigma)/2` for eigenvalues `(1 + r)/2` and `(1 - r)/2`.
///
/// The branch on the sign of `r3` avoids dividing by `r - |r3|` near the poles.
pub fn qubit_eigenvectors(b: &BlochVector) -> Option<([C64; 2], [C64; 2])> {
    let r = b.norm();
    if r == 0.0 {
        return None;
    }
    let t = C64::new(b.r1, b.r2);
    if b.r3 >= 0.0 {
        let s = (2.0 * r * (r + b.r3)).sqrt();
        let a = C64::new(r + b.r3, 0.0);
        Some(([a / s, t / s], [-t.conj() / s, a / s]))
    } else {
        let s = (2.0 * r * (r - b.r3)).sqrt();
        let a = C64::new(r - b.r3, 0.0);
        Some(([t.conj() / s, a / s], [a / s, -t / s]))
    }
}

/// Closed-form qubit discord from the Bloch vector and the off-diagonal element of `H`
/// between the two eigenvectors of `rho`.
pub fn qubit_discord_closed(b: &BlochVector, h: &HermitianOperator) -> Result<f64> {
    let b = BlochVector::new(b.r1, b.r2, b.r3)?;
    if h.dim() != 2 {
        return Err(Error::DimensionMismatch(format!("qubit observable must be 2x2, got {}", h.dim())));
    }
    let Some((up, down)) = qubit_eigenvectors(&b) else {
        return Ok(0.0);
    };
    let m = h.as_matrix();
    let mut h12 = C64::new(0.0, 0.0);
    for (i, u) in up.iter().enumerate() {
        for (j, d) in down.iter().enumerate() {
            h12 += u.conj() * m.get(i, j) * d;
        }
    }
    Ok(qubit_coefficient(b.norm()) * h12.norm_sqr())
}
