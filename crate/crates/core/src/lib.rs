//! Quantum Fisher information in two flavours, the SLD Fisher information and
//! the Wigner-Yanase skew information, and their difference, the Fisher
//! discord, for finite-dimensional and truncated single-mode bosonic states.
//!
//! Start with [`measures::fisher_discord`]; states come from [`states`],
//! Fock-space observables from [`fock`], analytic results from [`closed_forms`].

pub mod closed_forms;
pub mod config;
pub mod error;
pub mod fock;
pub mod linalg;
pub mod measures;
pub mod random;
pub mod states;
pub mod sweep;

pub use config::Tolerances;
pub use error::{Error, Result};
pub use fock::FockConfig;
pub use linalg::{ComplexMatrix, HermitianOperator, Spectrum, C64};
pub use measures::{fisher_discord, DiscordReport};
pub use states::{BlochVector, DensityMatrix, TailPolicy};
pub use closed_forms::{evaluate_closed_form, FamilyId, FormulaFamily, Params};
