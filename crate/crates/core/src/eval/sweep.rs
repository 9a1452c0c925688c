use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{ensure, Error, Result};
use crate::eval::{evaluate, EvalReport, FociRanker, QAInstance};
use crate::rank::SimilarityMetric;
use crate::solver::{fit, HyperParams};

pub const DEFAULT_ALPHAS: [f64; 3] = [0.1, 1.0, 10.0];
pub const DEFAULT_BETAS: [f64; 4] = [0.0, 0.1, 1.0, 10.0];

/// One `(alpha, beta)` cell. Exactly one of `metrics` and `error` is set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub alpha: f64,
    pub beta: f64,
    pub metrics: Option<EvalReport>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub error: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub method: String,
    pub k_cutoff: usize,
    pub alphas: Vec<f64>,
    pub betas: Vec<f64>,
    /// Alpha-major order.
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, alpha: f64, beta: f64) -> Option<&SweepCell> {
        self.cells.iter().find(|c| c.alpha == alpha && c.beta == beta)
    }
}

fn run_cell(
    instance: &QAInstance,
    h: &HyperParams,
    metric: SimilarityMetric,
    k_cutoff: usize,
) -> Result<EvalReport> {
    let (factors, _) = fit(&instance.content, &instance.network, h, None)?;
    let ranker = FociRanker {
        factors: &factors,
        vocab: &instance.vocab,
        metric,
    };
    evaluate(&format!("foci-{metric}"), instance, &ranker, k_cutoff)
}

/// Fits and evaluates every `(alpha, beta)` pair with all other settings,
/// including the seed, held fixed. Cell failures are recorded in the cell.
/// `jobs` bounds the worker threads.
pub fn sweep(
    instance: &QAInstance,
    alphas: &[f64],
    betas: &[f64],
    h: &HyperParams,
    metric: SimilarityMetric,
    k_cutoff: usize,
    jobs: usize,
) -> Result<SweepGrid> {
    ensure!(
        !alphas.is_empty() && !betas.is_empty(),
        Input,
        "sweep grids must be non-empty"
    );
    let pairs: Vec<(f64, f64)> = alphas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    let one = |&(alpha, beta): &(f64, f64)| {
        let params = HyperParams {
            alpha,
            beta,
            ..h.clone()
        };
        match run_cell(instance, &params, metric, k_cutoff) {
            Ok(report) => SweepCell {
                alpha,
                beta,
                metrics: Some(report),
                error: None,
            },
            Err(e) => SweepCell {
                alpha,
                beta,
                metrics: None,
                error: Some(e.to_string()),
            },
        }
    };
    let cells = if jobs <= 1 {
        pairs.iter().map(one).collect()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .map_err(|e| Error::Input(format!("cannot start {jobs} workers: {e}")))?;
        pool.install(|| pairs.par_iter().map(one).collect())
    };
    Ok(SweepGrid {
        method: format!("foci-{metric}"),
        k_cutoff,
        alphas: alphas.to_vec(),
        betas: betas.to_vec(),
        cells,
    })
}
