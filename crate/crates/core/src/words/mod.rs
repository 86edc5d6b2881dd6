//! Words over signed alphabets, presentations, substitutions and Tietze moves.

mod alphabet;
mod presentation;
mod substitution;
pub mod tietze;
mod word;

use thiserror::Error;

pub use alphabet::{Alphabet, Letter};
pub use presentation::Presentation;
pub use substitution::Substitution;
pub use tietze::{
    apply_move, Derivation, DerivationFactor, FiniteEquivalenceTrace, TietzeError, TietzeMove,
};
pub use word::Word;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("duplicate generator name `{0}`")]
    DuplicateGenerator(String),
    #[error("generator index {0} outside the alphabet")]
    UnknownGenerator(usize),
    #[error("involutive generator `{0}` stored with exponent -1")]
    SignedInvolution(String),
    #[error("word has an inverse letter where a positive word is required")]
    NegativeExponent,
    #[error("substitution needs {expected} images, got {found}")]
    SubstitutionArity { expected: usize, found: usize },
    #[error("image of `{0}` is empty")]
    EmptyImage(String),
    #[error("substitution `{0}` is not an endomorphism")]
    NotEndomorphism(String),
    #[error("alphabets do not match")]
    AlphabetMismatch,
}
