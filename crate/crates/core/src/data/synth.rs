//! Planted-foci instances: a directed stochastic block model over users
//! plus topic-blocked word usage, with user 0 as the asker.

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::{IndexedRandom, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::data::{
    build_user_word_matrix, load_ego_network, EgoNetwork, Question, UserId, UserWordMatrix,
    Vocabulary, DEFAULT_MIN_DF,
};
use crate::error::{ensure, Error, Result};

const MAX_RETRIES: usize = 32;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SyntheticSpec {
    pub communities: usize,
    pub users_per_community: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub words_per_topic: usize,
    /// Poisson rate of each word in the user's own topic block.
    pub in_topic_rate: f64,
    /// Poisson rate of each word outside the user's block.
    pub off_topic_rate: f64,
    pub questions_per_topic: usize,
    pub words_per_question: usize,
    pub min_df: usize,
    pub seed: u64,
}

impl Default for SyntheticSpec {
    fn default() -> Self {
        SyntheticSpec {
            communities: 5,
            users_per_community: 20,
            p_in: 0.3,
            p_out: 0.02,
            words_per_topic: 20,
            in_topic_rate: 1.5,
            off_topic_rate: 0.05,
            questions_per_topic: 4,
            words_per_question: 3,
            min_df: DEFAULT_MIN_DF,
            seed: 7,
        }
    }
}

impl SyntheticSpec {
    pub fn num_users(&self) -> usize {
        self.communities * self.users_per_community
    }

    /// Expected count per (user, word) cell, averaged over all words.
    pub fn mean_word_rate(&self) -> f64 {
        let c = self.communities as f64;
        (self.in_topic_rate + (c - 1.0) * self.off_topic_rate) / c
    }

    pub fn validate(&self) -> Result<()> {
        ensure!(self.communities >= 2, Input, "need at least 2 communities");
        ensure!(
            self.users_per_community >= 2,
            Input,
            "need at least 2 users per community"
        );
        ensure!(
            (0.0..=1.0).contains(&self.p_in) && (0.0..=1.0).contains(&self.p_out),
            Input,
            "link probabilities must lie in [0, 1]"
        );
        ensure!(self.p_in > self.p_out, Input, "p_in must exceed p_out");
        ensure!(
            self.off_topic_rate >= 0.0 && self.in_topic_rate > self.off_topic_rate,
            Input,
            "in-topic rate must exceed a non-negative off-topic rate"
        );
        ensure!(self.words_per_topic >= 1, Input, "words_per_topic must be >= 1");
        ensure!(
            self.words_per_question >= 1,
            Input,
            "words_per_question must be >= 1"
        );
        Ok(())
    }

    fn topic_word(topic: usize, index: usize) -> String {
        format!("t{topic}w{index}")
    }
}

/// A generated ego instance together with its planted labels and raw counts.
#[derive(Debug, Clone)]
pub struct SyntheticInstance {
    pub spec: SyntheticSpec,
    /// Planted community of every user.
    pub community: Vec<usize>,
    pub network: EgoNetwork,
    pub counts: BTreeMap<UserId, BTreeMap<String, u64>>,
    pub content: UserWordMatrix,
    pub vocab: Vocabulary,
    pub questions: Vec<Question>,
}

impl SyntheticInstance {
    /// Replaces the content with topic-free noise: every user draws every
    /// word at the same Poisson `rate`. Network and questions are kept.
    pub fn with_uniform_content(mut self, rate: f64, seed: u64) -> Result<Self> {
        ensure!(rate > 0.0, Input, "noise rate must be positive");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let words: Vec<String> = (0..self.spec.communities)
            .flat_map(|t| (0..self.spec.words_per_topic).map(move |i| SyntheticSpec::topic_word(t, i)))
            .collect();
        let mut counts = BTreeMap::new();
        for u in 0..self.spec.num_users() {
            let row = draw_counts(&mut rng, &words, |_| rate)?;
            if !row.is_empty() {
                counts.insert(UserId(u), row);
            }
        }
        let (content, vocab) =
            build_user_word_matrix(self.spec.num_users(), &counts, self.spec.min_df)?;
        self.counts = counts;
        self.content = content;
        self.vocab = vocab;
        Ok(self)
    }

    pub fn in_community(&self, user: UserId) -> bool {
        self.community[user.0] == self.community[0]
    }
}

fn draw_counts(
    rng: &mut ChaCha8Rng,
    words: &[String],
    rate_of: impl Fn(usize) -> f64,
) -> Result<BTreeMap<String, u64>> {
    let mut row = BTreeMap::new();
    for (i, word) in words.iter().enumerate() {
        let rate = rate_of(i);
        if rate <= 0.0 {
            continue;
        }
        let poisson =
            Poisson::new(rate).map_err(|e| Error::Input(format!("word rate {rate}: {e}")))?;
        let c = poisson.sample(rng) as u64;
        if c > 0 {
            row.insert(word.clone(), c);
        }
    }
    Ok(row)
}

/// Draws an instance from `spec`. Pure in `spec.seed`.
pub fn generate_synthetic(spec: &SyntheticSpec) -> Result<SyntheticInstance> {
    spec.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    for _ in 0..MAX_RETRIES {
        if let Some(instance) = draw_instance(spec, &mut rng)? {
            return Ok(instance);
        }
    }
    Err(Error::Input(format!(
        "no instance with a non-empty answerer set after {MAX_RETRIES} draws"
    )))
}

fn draw_instance(spec: &SyntheticSpec, rng: &mut ChaCha8Rng) -> Result<Option<SyntheticInstance>> {
    let n = spec.num_users();
    // Shuffled so that id order carries no community information.
    let mut community: Vec<usize> = (0..n).map(|u| u / spec.users_per_community).collect();
    community.shuffle(rng);

    let mut edges = Vec::new();
    for from in 0..n {
        for to in 0..n {
            if from == to {
                continue;
            }
            let p = if community[from] == community[to] {
                spec.p_in
            } else {
                spec.p_out
            };
            if rng.random_bool(p) {
                edges.push((UserId(from), UserId(to)));
            }
        }
    }
    let network = load_ego_network(n, &edges)?;

    let words: Vec<String> = (0..spec.communities)
        .flat_map(|t| (0..spec.words_per_topic).map(move |i| SyntheticSpec::topic_word(t, i)))
        .collect();
    let mut counts = BTreeMap::new();
    for (u, &c) in community.iter().enumerate() {
        let row = draw_counts(rng, &words, |i| {
            if i / spec.words_per_topic == c {
                spec.in_topic_rate
            } else {
                spec.off_topic_rate
            }
        })?;
        if !row.is_empty() {
            counts.insert(UserId(u), row);
        }
    }
    let (content, vocab) = build_user_word_matrix(n, &counts, spec.min_df)?;

    let accepted: BTreeSet<UserId> = (1..n)
        .filter(|&j| community[j] == community[0])
        .map(UserId)
        .filter(|&j| network.has_edge(j, UserId::ASKER))
        .collect();
    if accepted.is_empty() {
        return Ok(None);
    }

    let mut questions = Vec::with_capacity(spec.communities * spec.questions_per_topic);
    for topic in 0..spec.communities {
        let block = &words[topic * spec.words_per_topic..(topic + 1) * spec.words_per_topic];
        for q in 0..spec.questions_per_topic {
            let qwords = block
                .choose_multiple(rng, spec.words_per_question.min(block.len()))
                .cloned()
                .collect();
            questions.push(Question {
                id: format!("q{topic}_{q}"),
                words: qwords,
                accepted: accepted.clone(),
            });
        }
    }

    Ok(Some(SyntheticInstance {
        spec: spec.clone(),
        community,
        network,
        counts,
        content,
        vocab,
        questions,
    }))
}
