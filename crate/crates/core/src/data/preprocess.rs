use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

/// A small English stopword list for question and status text.
pub const DEFAULT_STOPWORDS: &[&str] = &[
    "a", "about", "all", "am", "an", "and", "any", "anyone", "are", "as", "at", "be", "been",
    "but", "by", "can", "could", "do", "does", "for", "from", "get", "has", "have", "he", "her",
    "his", "how", "i", "if", "in", "is", "it", "its", "me", "my", "no", "not", "of", "on", "or",
    "our", "she", "so", "some", "that", "the", "their", "them", "there", "they", "this", "to",
    "us", "was", "we", "what", "when", "where", "which", "who", "why", "will", "with", "would",
    "you", "your",
];

/// Maps a token to its stem.
pub type Stemmer = Arc<dyn Fn(&str) -> String + Send + Sync>;

/// Tokenizer with a stopword set and an optional stemming hook.
#[derive(Clone, Default)]
pub struct Preprocessor {
    stopwords: HashSet<String>,
    stemmer: Option<Stemmer>,
}

impl fmt::Debug for Preprocessor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Preprocessor")
            .field("stopwords", &self.stopwords.len())
            .field("stemmer", &self.stemmer.is_some())
            .finish()
    }
}

impl Preprocessor {
    pub fn new<I, S>(stopwords: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Preprocessor {
            stopwords: stopwords.into_iter().map(Into::into).collect(),
            stemmer: None,
        }
    }

    pub fn english() -> Self {
        Self::new(DEFAULT_STOPWORDS.iter().copied())
    }

    pub fn with_stemmer(mut self, stemmer: Stemmer) -> Self {
        self.stemmer = Some(stemmer);
        self
    }

    /// Lowercases, splits on non-alphanumerics, drops stopwords and tokens
    /// shorter than two characters, then stems if a stemmer is set.
    pub fn tokens(&self, raw: &str) -> Vec<String> {
        raw.split(|c: char| !c.is_alphanumeric())
            .filter(|t| !t.is_empty())
            .map(str::to_lowercase)
            .filter(|t| t.chars().count() >= 2 && !self.stopwords.contains(t))
            .map(|t| match &self.stemmer {
                Some(stem) => stem(&t),
                None => t,
            })
            .collect()
    }
}

pub fn preprocess_text(raw: &str, stopwords: &HashSet<String>) -> Vec<String> {
    Preprocessor {
        stopwords: stopwords.clone(),
        stemmer: None,
    }
    .tokens(raw)
}
