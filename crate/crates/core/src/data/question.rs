use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::data::UserId;
use crate::error::{Error, Result};

/// A question posted by the asker (user 0) with its accepted answerers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Question {
    pub id: String,
    pub words: Vec<String>,
    #[serde(default)]
    pub accepted: BTreeSet<UserId>,
}

impl Question {
    pub fn new(
        id: impl Into<String>,
        words: Vec<String>,
        accepted: impl IntoIterator<Item = UserId>,
    ) -> Self {
        Question {
            id: id.into(),
            words,
            accepted: accepted.into_iter().collect(),
        }
    }

    pub fn asker(&self) -> UserId {
        UserId::ASKER
    }

    /// Checks the question against an instance with `num_connections`
    /// candidates.
    pub fn validate(&self, num_connections: usize) -> Result<()> {
        if self.words.is_empty() {
            return Err(Error::Input(format!("question {:?} has no words", self.id)));
        }
        if let Some(bad) = self
            .accepted
            .iter()
            .find(|u| u.is_asker() || u.0 > num_connections)
        {
            return Err(Error::Input(format!(
                "question {:?} accepts user {bad}, outside 1..={num_connections}",
                self.id
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validation() {
        let q = Question::new("q", vec!["math".into()], [UserId(1)]);
        assert!(q.validate(1).is_ok());
        assert!(q.validate(0).is_err());
        assert!(Question::new("q", vec![], [UserId(1)]).validate(3).is_err());
        assert!(Question::new("q", vec!["x".into()], [UserId(0)]).validate(3).is_err());
    }
}
