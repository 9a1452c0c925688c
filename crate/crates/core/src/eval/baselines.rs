use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::data::{Question, UserId, Vocabulary};
use crate::error::{ensure, Result};
use crate::eval::{stable_hash, QAInstance, Ranker};
use crate::rank::{rank_answerers, rank_by_shared_foci, RankedList, SimilarityMetric};
use crate::solver::{fit, FactorSet, HyperParams};

/// The full model: question-domain projection over fitted factors.
#[derive(Debug, Clone)]
pub struct FociRanker<'a> {
    pub factors: &'a FactorSet,
    pub vocab: &'a Vocabulary,
    pub metric: SimilarityMetric,
}

impl Ranker for FociRanker<'_> {
    fn rank(&self, question: &Question) -> Result<RankedList> {
        rank_answerers(question, self.factors, self.vocab, self.metric)
    }
}

/// Averages the positions of `m` candidates over `trials` uniform random
/// orderings and sorts by mean position. Scores are negated mean positions.
pub fn baseline_random(m: usize, trials: usize, seed: u64) -> Result<RankedList> {
    ensure!(m >= 1, Contract, "random baseline needs at least one candidate");
    ensure!(trials >= 1, Contract, "random baseline needs at least one trial");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (1..=m).collect();
    let mut position_sum = vec![0u64; m + 1];
    for _ in 0..trials {
        order.shuffle(&mut rng);
        for (pos, &user) in order.iter().enumerate() {
            position_sum[user] += pos as u64 + 1;
        }
    }
    Ok(RankedList::from_scores((1..=m).map(|u| {
        (UserId(u), -(position_sum[u] as f64 / trials as f64))
    })))
}

/// Applies [`baseline_random`] per question, seeding from the question id so
/// results do not depend on evaluation order.
#[derive(Debug, Clone, Copy)]
pub struct RandomRanker {
    pub m: usize,
    pub trials: usize,
    pub seed: u64,
}

impl Ranker for RandomRanker {
    fn rank(&self, question: &Question) -> Result<RankedList> {
        baseline_random(self.m, self.trials, self.seed ^ stable_hash(&question.id))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SharedFociMode {
    /// Memberships from the network alone (`alpha = 0`).
    Network,
    /// Memberships from content alone (`beta = 0`).
    Content,
}

/// Ranks every question identically by full-membership similarity to the
/// asker.
#[derive(Debug, Clone)]
pub struct SharedFociRanker {
    pub mode: SharedFociMode,
    pub list: RankedList,
    pub factors: FactorSet,
}

impl Ranker for SharedFociRanker {
    fn rank(&self, _question: &Question) -> Result<RankedList> {
        Ok(self.list.clone())
    }
}

pub fn baseline_shared_foci(
    instance: &QAInstance,
    mode: SharedFociMode,
    h: &HyperParams,
    metric: SimilarityMetric,
) -> Result<SharedFociRanker> {
    let params = match mode {
        SharedFociMode::Network => HyperParams { alpha: 0.0, ..h.clone() },
        SharedFociMode::Content => HyperParams { beta: 0.0, ..h.clone() },
    };
    let (factors, _) = fit(&instance.content, &instance.network, &params, None)?;
    let list = rank_by_shared_foci(&factors, metric)?;
    Ok(SharedFociRanker { mode, list, factors })
}
