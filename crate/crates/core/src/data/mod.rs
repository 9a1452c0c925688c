//! Data model for ego networks, user-word content, and questions, plus the
//! text formats they are stored in and a planted-foci generator.

mod content;
pub mod io;
mod network;
mod preprocess;
mod question;
pub mod synth;

pub use content::{build_user_word_matrix, idf, UserWordMatrix, Vocabulary, DEFAULT_MIN_DF};
pub use network::{load_ego_network, EgoNetwork, UserId};
pub use preprocess::{preprocess_text, Preprocessor, Stemmer, DEFAULT_STOPWORDS};
pub use question::Question;
pub use synth::{generate_synthetic, SyntheticInstance, SyntheticSpec};
