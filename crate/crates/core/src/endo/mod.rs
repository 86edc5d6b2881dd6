//! Endomorphic presentations `< S | Q | Phi | R >`, their relator families
//! and the HNN extension obtained by adding one stable letter per
//! endomorphism.

mod britton;
mod decode;
mod stable;

use serde::Serialize;
use thiserror::Error;

use crate::words::{Alphabet, Letter, Presentation, Substitution, Word, WordError};

pub use britton::{
    britton_pinch_reduce, stable_letter_count, BrittonOutcome, BrittonStatus, PinchKind, PinchStep,
};
pub use decode::{sigma_decode, Decoded};
pub use stable::{is_positive, order_less, stable_projection, StableWord};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EndoError {
    #[error("stable letter `{0}` clashes with a generator name")]
    StableNameClash(String),
    #[error("endomorphism `{0}` is not defined on the generator alphabet")]
    AlphabetMismatch(String),
    #[error("Britton reduction needs exactly one stable letter, found {0}")]
    StableLetterCount(usize),
    #[error("word is not in the image of the substitution")]
    NotInImage,
    #[error("word has inverse letters where a positive word is required")]
    NotPositive,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// An endomorphic presentation. Each member of `phis` names its own stable
/// letter through [`Substitution::name`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndomorphicPresentation {
    pub name: String,
    alphabet: Alphabet,
    q: Vec<Word>,
    phis: Vec<Substitution>,
    r: Vec<Word>,
}

impl EndomorphicPresentation {
    pub fn new(
        name: impl Into<String>,
        alphabet: Alphabet,
        q: Vec<Word>,
        phis: Vec<Substitution>,
        r: Vec<Word>,
    ) -> Result<Self, EndoError> {
        for w in q.iter().chain(r.iter()) {
            alphabet.check_word(w)?;
        }
        let mut seen = std::collections::HashSet::new();
        for phi in &phis {
            if !phi.source().same_as(&alphabet) || !phi.target().same_as(&alphabet) {
                return Err(EndoError::AlphabetMismatch(phi.name.clone()));
            }
            if alphabet.index_of(&phi.name).is_some() || !seen.insert(phi.name.clone()) {
                return Err(EndoError::StableNameClash(phi.name.clone()));
            }
        }
        Ok(EndomorphicPresentation {
            name: name.into(),
            alphabet,
            q,
            phis,
            r,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn q(&self) -> &[Word] {
        &self.q
    }

    pub fn r(&self) -> &[Word] {
        &self.r
    }

    pub fn phis(&self) -> &[Substitution] {
        &self.phis
    }

    pub fn stable_names(&self) -> Vec<String> {
        self.phis.iter().map(|p| p.name.clone()).collect()
    }

    pub fn is_ascending(&self) -> bool {
        self.q.is_empty()
    }

    /// Alphabet `S` followed by the stable letters (never involutive).
    pub fn combined_alphabet(&self) -> Alphabet {
        Alphabet::new(
            self.alphabet
                .names()
                .iter()
                .enumerate()
                .map(|(g, n)| (n.clone(), self.alphabet.is_involutive(g)))
                .chain(self.phis.iter().map(|p| (p.name.clone(), false))),
        )
        .expect("stable names checked at construction")
    }

    /// Alphabet of the free group `L` on the stable letters.
    pub fn stable_alphabet(&self) -> Alphabet {
        Alphabet::new(self.phis.iter().map(|p| (p.name.clone(), false)))
            .expect("distinct stable names")
    }
}

/// One relator of an expanded family.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExpandedRelator {
    #[serde(skip)]
    pub word: Word,
    pub text: String,
    /// `None` for members of `Q`, else the index into `R`.
    pub relator: Option<usize>,
    /// Stable letters of the composite, outermost first.
    pub composition: Vec<String>,
    /// Freely trivial relators (such as the images of `a^2` over an
    /// involutive alphabet) bound no cell and are kept only for completeness.
    pub redundant: bool,
}

/// `Q` followed by `phi_{i1} ... phi_{ik}(r)` for `k <= depth`, ordered by
/// composition length, then lexicographically by stable-letter index, then by
/// relator index. Exact duplicates are dropped.
pub fn expand_relators(ep: &EndomorphicPresentation, depth: usize) -> Vec<ExpandedRelator> {
    let a = &ep.alphabet;
    let mut out = Vec::new();
    let mut seen = std::collections::HashSet::new();
    let mut push = |word: Word, relator: Option<usize>, seq: &[usize]| {
        if seen.insert(word.clone()) {
            out.push(ExpandedRelator {
                text: a.format(&word),
                redundant: a.free_reduce(&word).is_empty(),
                word,
                relator,
                composition: seq.iter().map(|&i| ep.phis[i].name.clone()).collect(),
            });
        }
    };
    for w in &ep.q {
        push(w.clone(), None, &[]);
    }
    // level k holds (sequence, images of R under the composite)
    let mut level: Vec<(Vec<usize>, Vec<Word>)> = vec![(Vec::new(), ep.r.clone())];
    for k in 0..=depth {
        for (seq, images) in &level {
            for (ri, w) in images.iter().enumerate() {
                push(w.clone(), Some(ri), seq);
            }
        }
        if k == depth || ep.phis.is_empty() {
            break;
        }
        // the lex-next level: sequences (i1, ..., ik, j), outermost i1 first
        let mut next = Vec::with_capacity(level.len() * ep.phis.len());
        for (seq, _) in &level {
            for j in 0..ep.phis.len() {
                let mut s = seq.clone();
                s.push(j);
                let images =
                    ep.r.iter()
                        .map(|w| {
                            s.iter()
                                .rev()
                                .fold(w.clone(), |acc, &i| ep.phis[i].apply_free(&acc))
                        })
                        .collect();
                next.push((s, images));
            }
        }
        level = next;
    }
    out
}

/// Orientation of the conjugacy relators in an HNN presentation.
pub const HNN_ORIENTATION: &str = "t s t^-1 = phi(s)";

/// The HNN presentation: the square of every involutive generator, then the
/// remaining members of `Q` and `R`, then `t s t^-1 phi(s)^-1` for each
/// stable letter `t` and generator `s`.
pub fn hnn_presentation(ep: &EndomorphicPresentation) -> Presentation {
    let a = ep.combined_alphabet();
    let base = ep.alphabet.len();
    let mut rels: Vec<Word> = Vec::new();
    for g in 0..base {
        if ep.alphabet.is_involutive(g) {
            rels.push(Word::from(vec![Letter::pos(g), Letter::pos(g)]));
        }
    }
    for w in ep.q.iter().chain(ep.r.iter()) {
        if !rels.contains(w) {
            rels.push(w.clone());
        }
    }
    for (i, phi) in ep.phis.iter().enumerate() {
        let t = base + i;
        for s in 0..base {
            let mut w = Word::from(vec![Letter::pos(t), Letter::pos(s), Letter::neg(t)]);
            w.extend_from(&a.inverse(phi.image(s)));
            rels.push(w);
        }
    }
    Presentation::new(ep.name.clone(), a, rels).expect("words built over the combined alphabet")
}

/// Text of an HNN presentation with its orientation line, as stored in
/// golden files.
pub fn hnn_text(ep: &EndomorphicPresentation) -> String {
    let p = hnn_presentation(ep);
    format!(
        "# orientation: {HNN_ORIENTATION}\n{}",
        crate::format::print_presentation(&p)
    )
}
