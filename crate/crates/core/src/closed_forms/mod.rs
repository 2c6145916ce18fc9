//! Analytic discord values for the state and observable families of the
//! single-mode analysis, each evaluated without the spectral engine so that
//! the two routes can check each other.

mod family;
mod formulas;
mod spectral;

pub use family::{FamilyId, FormulaFamily, HamiltonianKind, Params};
pub use formulas::{
    beta_prime_theta_zeta, beta_theta_z_zeta, beta_theta_zeta, beta_z_zeta, evaluate_closed_form, f_p, fockdiag_l,
    fockdiag_x, g_p, lambda0, pa_thermal_x, qubit_discord_closed, qubit_eigenvectors, sqz_fockdiag_n,
    MAX_SERIES_TERMS,
};
pub use spectral::{qubit_problem, sample_params, spectral_discord, spectral_problem};
