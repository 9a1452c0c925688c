use serde::{Deserialize, Serialize};

use crate::error::{ensure, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HyperParams {
    /// Weight of the content reconstruction term.
    pub alpha: f64,
    /// Weight of the network reconstruction term.
    pub beta: f64,
    /// Frobenius regularization weight.
    pub gamma: f64,
    /// Number of latent foci.
    pub k: usize,
    pub max_iters: usize,
    /// Relative objective change below which the fit stops.
    pub tol: f64,
    /// Added to every update denominator.
    pub eps: f64,
    pub seed: u64,
}

impl Default for HyperParams {
    fn default() -> Self {
        HyperParams {
            alpha: 1.0,
            beta: 1.0,
            gamma: 0.01,
            k: 50,
            max_iters: 300,
            tol: 1e-6,
            eps: 1e-12,
            seed: 0,
        }
    }
}

impl HyperParams {
    pub fn validate(&self) -> Result<()> {
        ensure!(
            self.alpha.is_finite() && self.alpha >= 0.0,
            Input,
            "alpha must be finite and >= 0, got {}",
            self.alpha
        );
        ensure!(
            self.beta.is_finite() && self.beta >= 0.0,
            Input,
            "beta must be finite and >= 0, got {}",
            self.beta
        );
        ensure!(
            self.alpha > 0.0 || self.beta > 0.0,
            Input,
            "alpha and beta cannot both be zero"
        );
        ensure!(
            self.gamma.is_finite() && self.gamma > 0.0,
            Input,
            "gamma must be > 0, got {}",
            self.gamma
        );
        ensure!(self.k >= 1, Input, "k must be >= 1");
        ensure!(self.max_iters >= 1, Input, "max_iters must be >= 1");
        ensure!(self.tol > 0.0, Input, "tol must be > 0, got {}", self.tol);
        ensure!(self.eps > 0.0, Input, "eps must be > 0, got {}", self.eps);
        Ok(())
    }
}
