use itertools::Itertools;

use super::{Alphabet, Word, WordError};

/// A group presentation `<alphabet | relators>`.
///
/// Relators are kept exactly as given, possibly unreduced; callers reduce on
/// demand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub name: String,
    alphabet: Alphabet,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        relators: Vec<Word>,
    ) -> Result<Self, WordError> {
        for r in &relators {
            alphabet.check_word(r)?;
        }
        Ok(Presentation {
            name: name.into(),
            alphabet,
            relators,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn relator(&self, i: usize) -> &Word {
        &self.relators[i]
    }

    pub fn generator_count(&self) -> usize {
        self.alphabet.len()
    }

    /// Relators whose free reduction is nonempty, with their indices. Freely
    /// trivial relators (e.g. `a a` for involutive `a`) bound no 2-cell.
    pub fn nondegenerate_relators(&self) -> impl Iterator<Item = (usize, &Word)> + '_ {
        self.relators
            .iter()
            .enumerate()
            .filter(move |(_, r)| !self.alphabet.free_reduce(r).is_empty())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub(crate) fn relators_mut(&mut self) -> &mut Vec<Word> {
        &mut self.relators
    }

    /// Human-readable `< a, b | r1, r2 >` using compact powers.
    pub fn display(&self) -> String {
        let gens = self
            .alphabet
            .names()
            .iter()
            .enumerate()
            .map(|(i, n)| {
                if self.alphabet.is_involutive(i) {
                    format!("{n}!")
                } else {
                    n.clone()
                }
            })
            .join(", ");
        let rels = self
            .relators
            .iter()
            .map(|r| self.alphabet.compact_power(r))
            .join(", ");
        format!("< {gens} | {rels} >")
    }
}
