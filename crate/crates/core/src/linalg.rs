//! Dense complex matrix algebra.
//!
//! Everything here is a pure function of its inputs. Matrices are stored in
//! `nalgebra::DMatrix<Complex64>`; the newtypes carry the validated invariants
//! (finite entries, Hermiticity) so downstream code never re-checks them.

use nalgebra::linalg::SymmetricEigen;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::config::Tolerances;
use crate::error::{Error, Result};
use crate::states::DensityMatrix;

pub type C64 = Complex64;

pub(crate) const I: C64 = C64::new(0.0, 1.0);

/// Dense complex matrix with finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix(DMatrix<C64>);

impl ComplexMatrix {
    pub fn new(mat: DMatrix<C64>) -> Result<Self> {
        if mat.iter().all(|z| z.re.is_finite() && z.im.is_finite()) {
            Ok(Self(mat))
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Builds a matrix from row-major entries.
    pub fn from_row_slice(rows: usize, cols: usize, entries: &[C64]) -> Result<Self> {
        if rows == 0 || cols == 0 || rows * cols != entries.len() {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Self::new(DMatrix::from_row_slice(rows, cols, entries))
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self(DMatrix::zeros(rows, cols))
    }

    pub fn identity(dim: usize) -> Self {
        Self(DMatrix::identity(dim, dim))
    }

    pub fn from_diagonal(diag: &[C64]) -> Self {
        Self(DMatrix::from_diagonal(&DVector::from_column_slice(diag)))
    }

    pub(crate) fn from_matrix_unchecked(mat: DMatrix<C64>) -> Self {
        Self(mat)
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.0.is_square()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0[(row, col)]
    }

    pub fn adjoint(&self) -> Self {
        Self(self.0.adjoint())
    }

    pub fn trace(&self) -> C64 {
        self.0.trace()
    }

    /// Largest entry modulus.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &ComplexMatrix) -> f64 {
        assert_eq!(self.0.shape(), other.0.shape(), "max_abs_diff shape mismatch");
        self.0
            .iter()
            .zip(other.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: C64) -> Self {
        Self(&self.0 * s)
    }

    pub fn mul(&self, other: &ComplexMatrix) -> Result<Self> {
        if self.cols() != other.rows() {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows(),
                self.cols(),
                other.rows(),
                other.cols()
            )));
        }
        Ok(Self(&self.0 * &other.0))
    }

    pub fn add(&self, other: &ComplexMatrix) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self(&self.0 + &other.0))
    }

    pub fn sub(&self, other: &ComplexMatrix) -> Result<Self> {
        same_shape(self, other)?;
        Ok(Self(&self.0 - &other.0))
    }

    /// `(A + A^dagger) / 2`.
    pub fn hermitian_part(&self) -> Self {
        Self((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    pub fn hermiticity_deviation(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let n = self.rows();
        let mut dev = 0.0_f64;
        for i in 0..n {
            for j in i..n {
                dev = dev.max((self.0[(i, j)] - self.0[(j, i)].conj()).norm());
            }
        }
        dev
    }
}

fn same_shape(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<()> {
    if a.0.shape() != b.0.shape() {
        return Err(Error::DimensionMismatch(format!(
            "{:?} vs {:?}",
            a.0.shape(),
            b.0.shape()
        )));
    }
    Ok(())
}

/// Square matrix equal to its adjoint within `hermitian_tol`.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianOperator(ComplexMatrix);

impl HermitianOperator {
    pub fn new(mat: ComplexMatrix) -> Result<Self> {
        Self::with_tolerance(mat, &Tolerances::default())
    }

    pub fn with_tolerance(mat: ComplexMatrix, tol: &Tolerances) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "Hermitian operator must be square, got {}x{}",
                mat.rows(),
                mat.cols()
            )));
        }
        let deviation = mat.hermiticity_deviation();
        if deviation > tol.hermitian_tol {
            return Err(Error::NonHermitianInput { deviation });
        }
        Ok(Self(mat))
    }

    /// Projects onto the Hermitian part without checking how far off the input was.
    pub fn from_hermitian_part(mat: &ComplexMatrix) -> Result<Self> {
        if !mat.is_square() {
            return Err(Error::DimensionMismatch("Hermitian operator must be square".into()));
        }
        Ok(Self(mat.hermitian_part()))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let d: Vec<C64> = diag.iter().map(|&x| C64::new(x, 0.0)).collect();
        Self(ComplexMatrix::from_diagonal(&d))
    }

    pub fn identity(dim: usize) -> Self {
        Self(ComplexMatrix::identity(dim))
    }

    pub fn dim(&self) -> usize {
        self.0.rows()
    }

    pub fn as_matrix(&self) -> &ComplexMatrix {
        &self.0
    }

    pub fn into_inner(self) -> ComplexMatrix {
        self.0
    }

    pub fn get(&self, row: usize, col: usize) -> C64 {
        self.0.get(row, col)
    }

    /// Real linear combination `a*self + b*other`, still Hermitian.
    pub fn combine(&self, a: f64, other: &HermitianOperator, b: f64) -> Result<Self> {
        let lhs = self.0.scale(C64::new(a, 0.0));
        let rhs = other.0.scale(C64::new(b, 0.0));
        Ok(Self(lhs.add(&rhs)?))
    }

    pub fn scaled(&self, a: f64) -> Self {
        Self(self.0.scale(C64::new(a, 0.0)))
    }

    /// `self + shift * 1`.
    pub fn shifted(&self, shift: f64) -> Self {
        let mut m = self.0.clone().into_matrix();
        for i in 0..m.nrows() {
            m[(i, i)] += C64::new(shift, 0.0);
        }
        Self(ComplexMatrix(m))
    }

    /// `U^dagger self U`.
    pub fn conjugate_by_adjoint(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.adjoint().mul(&self.0)?.mul(u)?;
        Self::from_hermitian_part(&m)
    }

    /// `U self U^dagger`.
    pub fn conjugate(&self, u: &ComplexMatrix) -> Result<Self> {
        let m = u.mul(&self.0)?.mul(&u.adjoint())?;
        Self::from_hermitian_part(&m)
    }
}

/// Eigenvalues (ascending) and orthonormal eigenvectors (columns) of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: ComplexMatrix,
}

impl Spectrum {
    /// `V diag(f(lambda)) V^dagger`.
    pub fn reconstruct_with<F>(&self, f: F) -> ComplexMatrix
    where
        F: Fn(f64) -> C64,
    {
        let v = self.eigenvectors.matrix();
        let mut scaled = v.clone();
        for (j, &lam) in self.eigenvalues.iter().enumerate() {
            let s = f(lam);
            for i in 0..scaled.nrows() {
                scaled[(i, j)] *= s;
            }
        }
        ComplexMatrix(scaled * v.adjoint())
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        self.reconstruct_with(|x| C64::new(x, 0.0))
    }
}

pub fn eig_hermitian(a: &HermitianOperator) -> Result<Spectrum> {
    let n = a.dim();
    // implicit QR typically needs two or three sweeps per eigenvalue
    let max_iter = 1000 + 30 * n;
    let eig = SymmetricEigen::try_new(a.as_matrix().matrix().clone(), f64::EPSILON, max_iter)
        .ok_or(Error::ConvergenceFailure { dim: n })?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vecs = DMatrix::<C64>::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &eig.eigenvectors.column(src));
    }
    if eigenvalues.iter().any(|x| !x.is_finite()) {
        return Err(Error::ConvergenceFailure { dim: n });
    }
    Ok(Spectrum {
        eigenvalues,
        eigenvectors: ComplexMatrix(vecs),
    })
}

/// Principal square root of a PSD operator; eigenvalues in `[-clip, 0)` are clipped to zero.
pub fn psd_sqrt(a: &HermitianOperator, clip: f64) -> Result<HermitianOperator> {
    let spec = eig_hermitian(a)?;
    if let Some(&min) = spec.eigenvalues.first() {
        if min < -clip {
            return Err(Error::NotPsd {
                min_eigenvalue: min,
                clip,
            });
        }
    }
    let root = spec.reconstruct_with(|x| C64::new(x.max(0.0).sqrt(), 0.0));
    HermitianOperator::from_hermitian_part(&root)
}

/// `AB - BA`.
pub fn commutator(a: &ComplexMatrix, b: &ComplexMatrix) -> Result<ComplexMatrix> {
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "commutator needs equal square matrices, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(ComplexMatrix(a.matrix() * b.matrix() - b.matrix() * a.matrix()))
}

/// `exp(G)` for skew-Hermitian `G`, via the spectral decomposition of the Hermitian `iG`.
pub fn unitary_from_generator(g: &ComplexMatrix) -> Result<ComplexMatrix> {
    unitary_from_generator_with(g, &Tolerances::default())
}

pub fn unitary_from_generator_with(g: &ComplexMatrix, tol: &Tolerances) -> Result<ComplexMatrix> {
    if !g.is_square() {
        return Err(Error::DimensionMismatch("generator must be square".into()));
    }
    let n = g.rows();
    let mut deviation = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            deviation = deviation.max((g.get(i, j) + g.get(j, i).conj()).norm());
        }
    }
    if deviation > tol.skew_tol {
        return Err(Error::NotSkewHermitian { deviation });
    }
    // G = -i K with K = iG Hermitian, so exp(G) = V exp(-i Lambda) V^dagger.
    let k = HermitianOperator::from_hermitian_part(&g.scale(I))?;
    let spec = eig_hermitian(&k)?;
    Ok(spec.reconstruct_with(|x| C64::new(0.0, -x).exp()))
}

/// Kronecker product, left factor on the slow index.
pub fn tensor_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    ComplexMatrix(a.matrix().kronecker(b.matrix()))
}

pub fn tensor_hermitian(a: &HermitianOperator, b: &HermitianOperator) -> HermitianOperator {
    HermitianOperator(tensor_product(a.as_matrix(), b.as_matrix()))
}

/// One block of a weighted direct sum.
#[derive(Debug, Clone)]
pub struct WeightedBlock {
    pub weight: f64,
    pub state: DensityMatrix,
    pub hamiltonian: HermitianOperator,
}

/// Block-diagonal `(+)_i p_i rho_i` and `(+)_i H_i`.
pub fn direct_sum_weighted(blocks: &[WeightedBlock]) -> Result<(DensityMatrix, HermitianOperator)> {
    let tol = Tolerances::default();
    if blocks.is_empty() {
        return Err(Error::WeightNotNormalized { sum: 0.0 });
    }
    let sum: f64 = blocks.iter().map(|b| b.weight).sum();
    if blocks.iter().any(|b| b.weight < 0.0 || !b.weight.is_finite()) || (sum - 1.0).abs() > tol.weight_tol {
        return Err(Error::WeightNotNormalized { sum });
    }
    for b in blocks {
        if b.state.dim() != b.hamiltonian.dim() {
            return Err(Error::DimensionMismatch(format!(
                "block state dim {} vs Hamiltonian dim {}",
                b.state.dim(),
                b.hamiltonian.dim()
            )));
        }
    }
    let total: usize = blocks.iter().map(|b| b.state.dim()).sum();
    let mut rho = DMatrix::<C64>::zeros(total, total);
    let mut ham = DMatrix::<C64>::zeros(total, total);
    let mut offset = 0;
    for b in blocks {
        let d = b.state.dim();
        let w = C64::new(b.weight, 0.0);
        rho.view_mut((offset, offset), (d, d))
            .copy_from(&(b.state.matrix().matrix() * w));
        ham.view_mut((offset, offset), (d, d))
            .copy_from(b.hamiltonian.as_matrix().matrix());
        offset += d;
    }
    let rho = DensityMatrix::from_psd_unchecked(HermitianOperator(ComplexMatrix(rho)))?;
    Ok((rho, HermitianOperator(ComplexMatrix(ham))))
}

/// Which factor of a bipartite system to keep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Subsystem {
    First,
    Second,
}

pub fn partial_trace(rho: &DensityMatrix, dims: (usize, usize), keep: Subsystem) -> Result<DensityMatrix> {
    let (d1, d2) = dims;
    if d1 == 0 || d2 == 0 || d1 * d2 != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "subsystem dims {d1}x{d2} do not factor a {}-dimensional state",
            rho.dim()
        )));
    }
    let m = rho.matrix().matrix();
    let out = match keep {
        Subsystem::First => DMatrix::from_fn(d1, d1, |i, j| {
            (0..d2).map(|k| m[(i * d2 + k, j * d2 + k)]).sum()
        }),
        Subsystem::Second => DMatrix::from_fn(d2, d2, |i, j| {
            (0..d1).map(|k| m[(k * d2 + i, k * d2 + j)]).sum()
        }),
    };
    let h = HermitianOperator::from_hermitian_part(&ComplexMatrix(out))?;
    DensityMatrix::from_psd_unchecked(h)
}
