//! Combinatorial group presentations.
//!
//! Words over involutive-aware alphabets, Tietze moves, word-problem oracles,
//! string rewriting, Cayley-complex balls, endomorphic presentations with
//! their HNN extensions, presentation induction over finite quotients, and a
//! symbolic verification pipeline for the Grigorchuk group.

pub mod backends;
pub mod ball;
pub mod endo;
pub mod format;
pub mod grigorchuk;
pub mod induction;
pub mod rewriting;
pub mod words;

pub use format::{parse_document, parse_presentation, Document, ParseError, PresentationFile};
pub use words::{Alphabet, Letter, Presentation, Substitution, Word, WordError};
