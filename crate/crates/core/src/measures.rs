//! SLD Fisher information, Wigner-Yanase skew information and Fisher discord.
//!
//! All three are double sums over ordered eigenvalue pairs of `rho` with the
//! matrix elements of `H` taken in the eigenbasis of `rho`:
//!
//! ```text
//! I_W = 1/2 sum (sqrt(l_m) - sqrt(l_n))^2 |H_mn|^2
//! I_F = 1/2 sum (l_m - l_n)^2 / (l_m + l_n) |H_mn|^2
//! C   =     sum sqrt(l_m l_n) (sqrt(l_m) - sqrt(l_n))^2 / (l_m + l_n) |H_mn|^2
//! ```
//!
//! `C` is summed directly so it stays accurate when it is much smaller than `I_F`.

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::fock::{converge, FockConfig};
use crate::linalg::{
    commutator, eig_hermitian, partial_trace, psd_sqrt, tensor_hermitian, unitary_from_generator, ComplexMatrix,
    HermitianOperator, Subsystem, C64, I,
};
use crate::states::DensityMatrix;

#[derive(Debug, Clone, PartialEq)]
pub struct DiscordReport {
    pub i_f: f64,
    pub i_w: f64,
    pub c: f64,
    /// Eigenvalues of `rho` above the floor.
    pub rank: usize,
    pub min_eigenvalue: f64,
    pub truncation_dim: Option<usize>,
    pub converged: Option<bool>,
}

impl DiscordReport {
    /// `c = i_f - i_w` and `0 <= c <= i_w <= i_f <= 2 i_w`, with slack relative to `max(1, i_f)`.
    pub fn check_invariants(&self, slack: f64) -> Result<()> {
        let s = slack * self.i_f.abs().max(1.0);
        let fail = |what: &str| {
            Err(Error::InvariantViolation(format!(
                "{what} (i_f={:e}, i_w={:e}, c={:e})",
                self.i_f, self.i_w, self.c
            )))
        };
        if ![self.i_f, self.i_w, self.c].iter().all(|x| x.is_finite()) {
            return Err(Error::NonFinite);
        }
        if (self.c - (self.i_f - self.i_w)).abs() > s {
            return fail("c differs from i_f - i_w");
        }
        if self.c < -s || self.c > self.i_w + s || self.i_w > self.i_f + s || self.i_f > 2.0 * self.i_w + s {
            return fail("ordering 0 <= c <= i_w <= i_f <= 2 i_w broken");
        }
        Ok(())
    }
}

const REPORT_SLACK: f64 = 1e-10;

/// Floored spectrum of `rho` and `H` rotated into its eigenbasis.
struct Eigenframe {
    lambdas: Vec<f64>,
    vectors: ComplexMatrix,
    h_rot: ComplexMatrix,
    min_eigenvalue: f64,
}

fn eigenframe(rho: &DensityMatrix, h: &HermitianOperator, tol: &Tolerances) -> Result<Eigenframe> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dim {}, Hamiltonian has dim {}",
            rho.dim(),
            h.dim()
        )));
    }
    let spec = eig_hermitian(rho.operator())?;
    let min_eigenvalue = spec.eigenvalues.first().copied().unwrap_or(0.0);
    if min_eigenvalue < -tol.psd_clip {
        return Err(Error::NotPsd {
            min_eigenvalue,
            clip: tol.psd_clip,
        });
    }
    let lambdas = spec
        .eigenvalues
        .iter()
        .map(|&l| if l < tol.eig_floor { 0.0 } else { l })
        .collect();
    let v = spec.eigenvectors;
    let h_rot = v.adjoint().mul(h.as_matrix())?.mul(&v)?;
    Ok(Eigenframe {
        lambdas,
        vectors: v,
        h_rot,
        min_eigenvalue,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SpectralSums {
    pub i_f: f64,
    pub i_w: f64,
    pub c: f64,
}

/// The three pair sums for eigenvalues `lambdas` and `H` already in their eigenbasis.
pub(crate) fn spectral_sums(lambdas: &[f64], h_rot: &ComplexMatrix, pair_floor: f64) -> SpectralSums {
    let n = lambdas.len();
    let roots: Vec<f64> = lambdas.iter().map(|l| l.sqrt()).collect();
    let h = h_rot.matrix();
    let (mut i_f, mut i_w, mut c) = (0.0, 0.0, 0.0);
    // each unordered pair counted once and doubled; diagonal terms vanish
    for m in 0..n {
        for k in (m + 1)..n {
            let h2 = h[(m, k)].norm_sqr();
            if h2 == 0.0 {
                continue;
            }
            let (a, b) = (lambdas[m], lambdas[k]);
            let d = roots[m] - roots[k];
            i_w += d * d * h2;
            let s = a + b;
            if s > pair_floor {
                i_f += (a - b) * (a - b) / s * h2;
                c += 2.0 * roots[m] * roots[k] * d * d / s * h2;
            }
        }
    }
    SpectralSums { i_f, i_w, c }
}

pub fn skew_information(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    let tol = Tolerances::default();
    let f = eigenframe(rho, h, &tol)?;
    Ok(spectral_sums(&f.lambdas, &f.h_rot, tol.pair_floor).i_w)
}

/// `-1/2 tr [sqrt(rho), H]^2`, independent of the pair sums.
pub fn skew_information_commutator(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dim {}, Hamiltonian has dim {}",
            rho.dim(),
            h.dim()
        )));
    }
    let root = psd_sqrt(rho.operator(), Tolerances::default().psd_clip)?;
    let k = commutator(root.as_matrix(), h.as_matrix())?;
    // k is anti-Hermitian, so -tr k^2 = sum |k_ij|^2
    Ok(0.5 * k.matrix().iter().map(|z| z.norm_sqr()).sum::<f64>())
}

pub fn sld_fisher(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    let tol = Tolerances::default();
    let f = eigenframe(rho, h, &tol)?;
    Ok(spectral_sums(&f.lambdas, &f.h_rot, tol.pair_floor).i_f)
}

pub fn fisher_discord(rho: &DensityMatrix, h: &HermitianOperator) -> Result<DiscordReport> {
    fisher_discord_with(rho, h, &Tolerances::default())
}

pub fn fisher_discord_with(rho: &DensityMatrix, h: &HermitianOperator, tol: &Tolerances) -> Result<DiscordReport> {
    let f = eigenframe(rho, h, tol)?;
    let s = spectral_sums(&f.lambdas, &f.h_rot, tol.pair_floor);
    let report = DiscordReport {
        i_f: s.i_f,
        i_w: s.i_w,
        c: s.c,
        rank: f.lambdas.iter().filter(|&&l| l > 0.0).count(),
        min_eigenvalue: f.min_eigenvalue,
        truncation_dim: None,
        converged: None,
    };
    report.check_invariants(REPORT_SLACK)?;
    Ok(report)
}

/// Grows the truncation of a Fock-space problem until `(i_f, i_w, c)` settle.
pub fn converged_discord<F>(build: F, cfg: &FockConfig) -> Result<DiscordReport>
where
    F: Fn(&FockConfig) -> Result<(DensityMatrix, HermitianOperator)>,
{
    cfg.validate()?;
    let out = converge(
        cfg,
        |c| {
            let (rho, h) = build(c)?;
            fisher_discord(&rho, &h)
        },
        |r| vec![r.i_f, r.i_w, r.c],
    )?;
    Ok(DiscordReport {
        truncation_dim: Some(out.used_dim),
        converged: Some(out.converged),
        ..out.value
    })
}

/// Symmetric logarithmic derivative solving `i[rho, H] = (L rho + rho L)/2`.
pub fn sld_operator(rho: &DensityMatrix, h: &HermitianOperator) -> Result<HermitianOperator> {
    let tol = Tolerances::default();
    let f = eigenframe(rho, h, &tol)?;
    let n = rho.dim();
    let hr = f.h_rot.matrix();
    let l_rot = nalgebra::DMatrix::<C64>::from_fn(n, n, |m, k| {
        let (a, b) = (f.lambdas[m], f.lambdas[k]);
        if a + b > tol.pair_floor {
            I * (2.0 * (a - b) / (a + b)) * hr[(m, k)]
        } else {
            C64::new(0.0, 0.0)
        }
    });
    let l = f.vectors.mul(&ComplexMatrix::new(l_rot)?)?.mul(&f.vectors.adjoint())?;
    HermitianOperator::from_hermitian_part(&l)
}

/// `e^{-i theta H} rho e^{i theta H}`.
pub fn evolve(rho: &DensityMatrix, h: &HermitianOperator, theta: f64) -> Result<DensityMatrix> {
    if rho.dim() != h.dim() {
        return Err(Error::DimensionMismatch(format!(
            "state has dim {}, Hamiltonian has dim {}",
            rho.dim(),
            h.dim()
        )));
    }
    let u = unitary_from_generator(&h.as_matrix().scale(C64::new(0.0, -theta)))?;
    rho.conjugated(&u)
}

/// Largest change of `(i_f, i_w, c)` along the orbit generated by `H`.
pub fn orbit_invariance_check(rho: &DensityMatrix, h: &HermitianOperator, thetas: &[f64]) -> Result<f64> {
    if thetas.is_empty() {
        return Err(Error::ParamOutOfDomain("theta list is empty".into()));
    }
    let base = fisher_discord(rho, h)?;
    let mut worst: f64 = 0.0;
    for &t in thetas {
        let r = fisher_discord(&evolve(rho, h, t)?, h)?;
        worst = worst
            .max((r.i_f - base.i_f).abs())
            .max((r.i_w - base.i_w).abs())
            .max((r.c - base.c).abs());
    }
    Ok(worst)
}

/// `C(rho12, H1 x 1) - C(tr_2 rho12, H1)`. The sign is not known in general; callers log it.
pub fn bipartite_monotonicity_probe(
    rho12: &DensityMatrix,
    dims: (usize, usize),
    h1: &HermitianOperator,
) -> Result<f64> {
    if h1.dim() != dims.0 {
        return Err(Error::DimensionMismatch(format!(
            "H1 has dim {}, first subsystem has dim {}",
            h1.dim(),
            dims.0
        )));
    }
    let rho1 = partial_trace(rho12, dims, Subsystem::First)?;
    let lifted = tensor_hermitian(h1, &HermitianOperator::identity(dims.1));
    Ok(fisher_discord(rho12, &lifted)?.c - fisher_discord(&rho1, h1)?.c)
}

/// `<H^2> - <H>^2`.
pub fn variance(rho: &DensityMatrix, h: &HermitianOperator) -> Result<f64> {
    let rh = rho.matrix().mul(h.as_matrix())?;
    let mean = rh.trace().re;
    let second = rh.mul(h.as_matrix())?.trace().re;
    Ok(second - mean * mean)
}
