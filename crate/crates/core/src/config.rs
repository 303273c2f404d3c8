use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Which estimator to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// One joint step size for u and v.
    OneStep,
    /// Independent optimal step sizes (tau, xi).
    TwoStep,
}

/// Knobs for a single estimation run.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub max_iters: usize,
    /// Stopping threshold on |a_k| (one-step) or |b_k| + |c_k| (two-step).
    pub eps: f64,
    /// Number of consecutive sub-eps draws with fresh directions required
    /// before stopping.
    pub patience: usize,
    pub seed: u64,
    /// Relative threshold below which the initial objective is treated as
    /// a null difference (A = V).
    pub null_tol: f64,
    /// Fresh initialization draws before declaring an adjoint pair.
    pub init_resamples: usize,
    /// Direction redraws tolerated per iteration when the step
    /// coefficients are degenerate.
    pub max_direction_retries: usize,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            max_iters: 5000,
            eps: 1e-8,
            patience: 5,
            seed: 0,
            null_tol: 1e-12,
            init_resamples: 3,
            max_direction_retries: 50,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.max_iters < 1 {
            return Err(Error::InvalidConfig("max_iters must be >= 1".into()));
        }
        if !(self.eps > 0.0) {
            return Err(Error::InvalidConfig("eps must be positive".into()));
        }
        if self.patience < 1 {
            return Err(Error::InvalidConfig("patience must be >= 1".into()));
        }
        if !(self.null_tol >= 0.0) {
            return Err(Error::InvalidConfig("null_tol must be nonnegative".into()));
        }
        Ok(())
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}
