use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::data::UserId;
use crate::error::{Error, Result};
use crate::linalg::SparseMatrix;

pub const DEFAULT_MIN_DF: usize = 2;

/// Smoothed inverse document frequency over `num_users` users.
pub fn idf(num_users: usize, doc_freq: usize) -> f64 {
    ((1.0 + num_users as f64) / (1.0 + doc_freq as f64)).ln() + 1.0
}

/// Retained words in column order with their document frequencies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(from = "VocabularyRepr", into = "VocabularyRepr")]
pub struct Vocabulary {
    words: Vec<String>,
    doc_freq: Vec<usize>,
    index: HashMap<String, usize>,
}

#[derive(Serialize, Deserialize)]
struct VocabularyRepr {
    words: Vec<String>,
    doc_freq: Vec<usize>,
}

impl From<VocabularyRepr> for Vocabulary {
    fn from(r: VocabularyRepr) -> Self {
        Vocabulary::from_parts(r.words, r.doc_freq)
    }
}

impl From<Vocabulary> for VocabularyRepr {
    fn from(v: Vocabulary) -> Self {
        VocabularyRepr {
            words: v.words,
            doc_freq: v.doc_freq,
        }
    }
}

impl Vocabulary {
    fn from_parts(words: Vec<String>, doc_freq: Vec<usize>) -> Self {
        let index = words
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        Vocabulary {
            words,
            doc_freq,
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn words(&self) -> &[String] {
        &self.words
    }

    pub fn index_of(&self, word: &str) -> Option<usize> {
        self.index.get(word).copied()
    }

    pub fn doc_freq(&self, column: usize) -> usize {
        self.doc_freq[column]
    }
}

/// Non-negative sparse `(m + 1) x w` matrix of `count * idf` weights.
#[derive(Debug, Clone, PartialEq)]
pub struct UserWordMatrix {
    matrix: SparseMatrix,
}

impl UserWordMatrix {
    pub fn from_sparse(matrix: SparseMatrix) -> Self {
        UserWordMatrix { matrix }
    }

    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn num_users(&self) -> usize {
        self.matrix.rows()
    }

    pub fn num_words(&self) -> usize {
        self.matrix.cols()
    }
}

/// Builds the weighted user-word matrix for `num_users` users from raw
/// per-user word counts. Words used by fewer than `min_df` users are
/// dropped; the rest are ordered lexicographically.
pub fn build_user_word_matrix(
    num_users: usize,
    counts: &BTreeMap<UserId, BTreeMap<String, u64>>,
    min_df: usize,
) -> Result<(UserWordMatrix, Vocabulary)> {
    let mut df: BTreeMap<&str, usize> = BTreeMap::new();
    for (&user, words) in counts {
        if user.0 >= num_users {
            return Err(Error::Input(format!(
                "content for user {user} outside 0..{num_users}"
            )));
        }
        for (word, &count) in words {
            if count == 0 {
                return Err(Error::Input(format!(
                    "user {user} has a zero count for {word:?}"
                )));
            }
            *df.entry(word.as_str()).or_default() += 1;
        }
    }

    let (words, doc_freq): (Vec<String>, Vec<usize>) = df
        .into_iter()
        .filter(|&(_, d)| d >= min_df.max(1))
        .map(|(w, d)| (w.to_string(), d))
        .unzip();
    if words.is_empty() {
        return Err(Error::Input(format!(
            "no word reaches the minimum document frequency of {min_df}"
        )));
    }
    let vocab = Vocabulary::from_parts(words, doc_freq);
    let weights: Vec<f64> = vocab.doc_freq.iter().map(|&d| idf(num_users, d)).collect();

    let mut triplets = Vec::new();
    for (&user, words) in counts {
        for (word, &count) in words {
            if let Some(col) = vocab.index_of(word) {
                triplets.push((user.0, col, count as f64 * weights[col]));
            }
        }
    }
    let matrix = SparseMatrix::from_triplets(num_users, vocab.len(), triplets)?;
    Ok((UserWordMatrix { matrix }, vocab))
}
