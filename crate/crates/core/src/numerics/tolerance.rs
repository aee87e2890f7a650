use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Numeric thresholds shared by every PSD, rank and membership decision.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    /// Absolute threshold for orthonormality and subspace membership,
    /// scaled by `max(1, |v|)` at the point of use.
    pub abs: f64,
    /// Relative eigenvalue threshold, multiplied by the max absolute entry.
    pub eig_rel: f64,
    /// Relative bracket width at which bisection stops.
    pub bisect_rel: f64,
    pub max_iter: usize,
    pub sample_budget: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-9,
            eig_rel: 1e-9,
            bisect_rel: 1e-10,
            max_iter: 200,
            sample_budget: 100_000,
        }
    }
}

impl Tolerance {
    /// Default tolerance with `abs` and `eig_rel` both set to `eps`.
    pub fn uniform(eps: f64) -> Result<Self> {
        let tol = Self {
            abs: eps,
            eig_rel: eps,
            ..Self::default()
        };
        tol.validate()?;
        Ok(tol)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |v: f64| v.is_finite() && v > 0.0;
        if !(positive(self.abs) && positive(self.eig_rel) && positive(self.bisect_rel)) {
            return Err(Error::Argument("tolerances must be finite and positive".into()));
        }
        if self.max_iter == 0 || self.sample_budget == 0 {
            return Err(Error::Argument(
                "iteration and sample budgets must be at least 1".into(),
            ));
        }
        Ok(())
    }

    /// Smallest eigenvalue still accepted as PSD for a matrix of the given
    /// max-abs scale.
    pub fn psd_floor(&self, scale: f64) -> f64 {
        -self.eig_rel * scale.max(1.0)
    }

    /// Whether a residual `norm` is zero relative to a reference magnitude.
    pub fn negligible(&self, norm: f64, reference: f64) -> bool {
        norm <= self.abs * reference.max(1.0)
    }
}
