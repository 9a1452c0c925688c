//! Finds the connections of an asker most likely to answer a question.
//!
//! The asker's ego network `N` and the user-word matrix `S` of the asker's
//! neighborhood are jointly factorized into non-negative latent foci
//! memberships (`U` for users, `P` for words, `V` for foci correlations).
//! A question is mapped into foci space through the rows of `P` for its
//! words, and connections are ranked by how similar their memberships are
//! to the asker's within that question domain.

pub mod cli;
pub mod data;
pub mod error;
pub mod eval;
pub mod linalg;
pub mod rank;
pub mod solver;

pub use error::{Error, Result};
