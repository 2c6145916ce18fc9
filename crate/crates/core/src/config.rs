/// Numerical thresholds shared by the linear-algebra and information-measure code.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Maximum entrywise `|A - A^dagger|` accepted for a Hermitian operator.
    pub hermitian_tol: f64,
    /// Maximum entrywise `|G + G^dagger|` accepted for a unitary generator.
    pub skew_tol: f64,
    /// Eigenvalues in `[-psd_clip, 0)` are clipped to zero; anything lower is an error.
    pub psd_clip: f64,
    /// Density-matrix eigenvalues below this are treated as exactly zero.
    pub eig_floor: f64,
    /// Eigenvalue pairs with `l_m + l_n` at or below this contribute nothing.
    pub pair_floor: f64,
    pub trace_tol: f64,
    pub weight_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            hermitian_tol: 1e-10,
            skew_tol: 1e-10,
            psd_clip: 1e-12,
            eig_floor: 1e-12,
            pair_floor: 1e-14,
            trace_tol: 1e-8,
            weight_tol: 1e-10,
        }
    }
}
