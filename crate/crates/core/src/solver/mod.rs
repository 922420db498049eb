//! Modal solution of `C D^γŨ + K Ũ = 0` and an L1 time-stepping oracle.

mod eigen;
mod evolve;
mod l1;

pub use eigen::{eigendecompose, EigenFactorization, EigenMethod};
pub use evolve::{evolve, SolutionSeries};
pub use l1::{l1_caputo_derivative, l1_oracle, l1_solve_system, Forcing};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::MLConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverOptions {
    pub ml: MLConfig,
    pub eigen_residual_tol: f64,
    pub imag_residue_tol: f64,
    pub defect_cond_limit: f64,
    pub eigen_method: EigenMethod,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            ml: MLConfig::default(),
            eigen_residual_tol: 1e-9,
            imag_residue_tol: 1e-8,
            defect_cond_limit: 1e8,
            eigen_method: EigenMethod::Auto,
        }
    }
}

impl SolverOptions {
    pub fn validate(&self) -> Result<()> {
        self.ml.validate()?;
        for (name, v) in [
            ("eigen_residual_tol", self.eigen_residual_tol),
            ("imag_residue_tol", self.imag_residue_tol),
            ("defect_cond_limit", self.defect_cond_limit),
        ] {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!(
                    "{name} must be positive and finite, got {v}"
                )));
            }
        }
        Ok(())
    }
}

pub(crate) fn check_gamma(gamma: f64) -> Result<()> {
    if gamma > 0.0 && gamma <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidOrder(gamma))
    }
}
