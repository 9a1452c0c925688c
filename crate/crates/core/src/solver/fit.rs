use serde::{Deserialize, Serialize};

use crate::data::{EgoNetwork, UserWordMatrix};
use crate::error::{Error, Result};
use crate::solver::{check_dims, objective, update_step, FactorSet, HyperParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    Converged,
    MaxIters,
}

/// Objective value before the first update and after every update.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitTrace {
    pub objective: Vec<f64>,
    pub iterations: usize,
    pub stop_reason: StopReason,
}

/// Runs multiplicative updates from `init` (or a seeded random start) until
/// the relative objective change drops below `h.tol` or `h.max_iters`
/// updates have been applied.
pub fn fit(
    s: &UserWordMatrix,
    n: &EgoNetwork,
    h: &HyperParams,
    init: Option<FactorSet>,
) -> Result<(FactorSet, FitTrace)> {
    h.validate()?;
    let mut factors = match init {
        Some(f) => f,
        None => FactorSet::random(n.size(), s.num_words(), h.k, h.seed),
    };
    check_dims(s, n, &factors)?;

    let mut prev = objective(s, n, &factors, h)?;
    if !prev.is_finite() {
        return Err(Error::Numeric { iteration: 0 });
    }
    let mut values = vec![prev];
    let mut stop_reason = StopReason::MaxIters;
    for iteration in 1..=h.max_iters {
        factors = update_step(s, n, &factors, h)?;
        let current = objective(s, n, &factors, h)?;
        if !current.is_finite() {
            return Err(Error::Numeric { iteration });
        }
        values.push(current);
        let change = (current - prev).abs() / prev.max(h.eps);
        prev = current;
        if change < h.tol {
            stop_reason = StopReason::Converged;
            break;
        }
    }
    let trace = FitTrace {
        iterations: values.len() - 1,
        objective: values,
        stop_reason,
    };
    Ok((factors, trace))
}
