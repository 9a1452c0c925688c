//! Ranking metrics, baselines, and evaluation harnesses.

mod baselines;
mod metrics;
mod sweep;

use std::path::Path;

use serde::{Deserialize, Serialize};

pub use baselines::{
    baseline_random, baseline_shared_foci, FociRanker, RandomRanker, SharedFociMode, SharedFociRanker,
};
pub use metrics::{average_precision_at_k, ndcg_at_k, reciprocal_rank};
pub use sweep::{sweep, SweepCell, SweepGrid, DEFAULT_ALPHAS, DEFAULT_BETAS};

use crate::data::{
    build_user_word_matrix, io, load_ego_network, EgoNetwork, Question, UserWordMatrix, Vocabulary,
};
use crate::error::{ensure, Error, Result};
use crate::rank::RankedList;

/// Everything one evaluation run consumes.
#[derive(Debug, Clone)]
pub struct QAInstance {
    pub network: EgoNetwork,
    pub content: UserWordMatrix,
    pub vocab: Vocabulary,
    pub questions: Vec<Question>,
}

impl QAInstance {
    pub fn new(
        network: EgoNetwork,
        content: UserWordMatrix,
        vocab: Vocabulary,
        questions: Vec<Question>,
    ) -> Result<Self> {
        ensure!(
            network.size() == content.num_users(),
            Input,
            "network has {} users but content has {}",
            network.size(),
            content.num_users()
        );
        ensure!(
            content.num_words() == vocab.len(),
            Input,
            "content has {} columns but the vocabulary has {} words",
            content.num_words(),
            vocab.len()
        );
        let m = network.num_connections();
        for q in &questions {
            q.validate(m)?;
            ensure!(
                !q.accepted.is_empty(),
                Input,
                "question {:?} has no accepted answerer",
                q.id
            );
        }
        Ok(QAInstance {
            network,
            content,
            vocab,
            questions,
        })
    }

    /// Reads the three instance files. The user count is one more than the
    /// largest id in the network or content file.
    pub fn load(network: &Path, content: &Path, questions: &Path, min_df: usize) -> Result<Self> {
        let (net, s, vocab) = load_ego_instance(network, content, min_df)?;
        let qs = io::read_questions(questions)?;
        QAInstance::new(net, s, vocab, qs)
    }

    pub fn num_connections(&self) -> usize {
        self.network.num_connections()
    }
}

/// Loads a network and content file pair sized to the largest id in either.
pub fn load_ego_instance(
    network: &Path,
    content: &Path,
    min_df: usize,
) -> Result<(EgoNetwork, UserWordMatrix, Vocabulary)> {
    let edges = io::read_edges(network)?;
    let counts = io::read_content(content)?;
    let max_id = edges
        .iter()
        .flat_map(|&(a, b)| [a.0, b.0])
        .chain(counts.keys().map(|u| u.0))
        .max()
        .ok_or_else(|| Error::Input("network and content files are both empty".into()))?;
    let size = max_id + 1;
    let net = load_ego_network(size, &edges)?;
    let (s, vocab) = build_user_word_matrix(size, &counts, min_df)?;
    Ok((net, s, vocab))
}

/// Produces a ranked list of candidates for a question.
pub trait Ranker {
    fn rank(&self, question: &Question) -> Result<RankedList>;
}

impl<F> Ranker for F
where
    F: Fn(&Question) -> Result<RankedList>,
{
    fn rank(&self, question: &Question) -> Result<RankedList> {
        self(question)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub method: String,
    pub mrr: f64,
    pub map_at_k: f64,
    pub ndcg_at_k: f64,
    pub k_cutoff: usize,
    pub questions_evaluated: usize,
    pub questions_skipped: usize,
}

/// Macro-averages reciprocal rank, AP@k, and NDCG@k over the instance's
/// questions. Questions the ranker reports as out of vocabulary are skipped
/// and counted. Questions are reduced in id order so the result does not
/// depend on file order.
pub fn evaluate(
    method: &str,
    instance: &QAInstance,
    ranker: &dyn Ranker,
    k_cutoff: usize,
) -> Result<EvalReport> {
    ensure!(k_cutoff >= 1, Contract, "cutoff must be >= 1");
    let mut order: Vec<&Question> = instance.questions.iter().collect();
    order.sort_by(|a, b| (&a.id, &a.words, &a.accepted).cmp(&(&b.id, &b.words, &b.accepted)));

    let (mut rr, mut ap, mut ndcg) = (0.0, 0.0, 0.0);
    let (mut evaluated, mut skipped) = (0usize, 0usize);
    for q in order {
        let list = match ranker.rank(q) {
            Ok(list) => list,
            Err(Error::OutOfVocabulary) => {
                skipped += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        rr += reciprocal_rank(&list, &q.accepted)?;
        ap += average_precision_at_k(&list, &q.accepted, k_cutoff)?;
        ndcg += ndcg_at_k(&list, &q.accepted, k_cutoff)?;
        evaluated += 1;
    }
    if evaluated == 0 {
        return Err(Error::Eval(format!(
            "{method}: no evaluable questions ({skipped} skipped)"
        )));
    }
    let n = evaluated as f64;
    Ok(EvalReport {
        method: method.to_string(),
        mrr: rr / n,
        map_at_k: ap / n,
        ndcg_at_k: ndcg / n,
        k_cutoff,
        questions_evaluated: evaluated,
        questions_skipped: skipped,
    })
}

/// FNV-1a, used to derive per-question seeds independent of file order.
pub(crate) fn stable_hash(s: &str) -> u64 {
    s.bytes().fold(0xcbf2_9ce4_8422_2325, |h, b| {
        (h ^ b as u64).wrapping_mul(0x0000_0100_0000_01b3)
    })
}
