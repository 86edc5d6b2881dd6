//! Presentations of finite-index normal subgroups and of extensions.
//!
//! [`induce_presentation`] reads a presentation of the kernel `K` of a split
//! projection `G -> F` onto a finite group, one generator per pair
//! (element of `F`, generator of `G`). [`hall_compose`] goes the other way,
//! assembling a presentation of `G` from ones of `K` and `F`.

mod hall;

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::backends::{FiniteGroupTable, WordOracle};
use crate::words::{Alphabet, Letter, Presentation, Word, WordError};

pub use hall::{hall_compose, product_presentation};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error("relator {index} has a negative exponent")]
    NonPositiveRelator { index: usize },
    #[error("extension data is not split: {0}")]
    NotSplit(String),
    #[error("word maps to `{element}` in the quotient, not the identity")]
    DoesNotCloseUp { element: String },
    #[error("expected {expected} words, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Word(#[from] WordError),
}

/// A split projection `p: G -> F` onto a finite group with a chosen section.
#[derive(Debug, Clone)]
pub struct SplitExtensionData {
    presentation: Presentation,
    quotient: FiniteGroupTable,
    p_map: Vec<usize>,
    lifts: Vec<Word>,
}

impl SplitExtensionData {
    /// `p_map[i]` is the image of generator `i` in `quotient`; `lifts[f]`
    /// is a word of `G` for element `f`, with `lifts[0]` empty.
    pub fn new(
        presentation: Presentation,
        quotient: FiniteGroupTable,
        p_map: Vec<usize>,
        lifts: Vec<Word>,
    ) -> Result<Self, InductionError> {
        let alpha = presentation.alphabet();
        if p_map.len() != alpha.len() {
            return Err(InductionError::ArityMismatch {
                expected: alpha.len(),
                found: p_map.len(),
            });
        }
        if lifts.len() != quotient.order() {
            return Err(InductionError::ArityMismatch {
                expected: quotient.order(),
                found: lifts.len(),
            });
        }
        if let Some(&f) = p_map.iter().find(|&&f| f >= quotient.order()) {
            return Err(InductionError::NotSplit(format!(
                "p maps into unknown element {f}"
            )));
        }
        for w in &lifts {
            alpha.check_word(w)?;
        }
        let d = SplitExtensionData {
            presentation,
            quotient,
            p_map,
            lifts,
        };
        d.validate()?;
        Ok(d)
    }

    /// Lifts taken from the quotient's own normal forms, read in `G` by
    /// generator name. Every generator name of the quotient must occur in `G`.
    pub fn with_named_lifts(
        presentation: Presentation,
        quotient: FiniteGroupTable,
        p_map: Vec<usize>,
    ) -> Result<Self, InductionError> {
        let qa = quotient.alphabet();
        let ga = presentation.alphabet();
        let mut rename = Vec::with_capacity(qa.len());
        for g in 0..qa.len() {
            let Some(i) = ga.index_of(qa.name(g)) else {
                return Err(InductionError::NotSplit(format!(
                    "quotient generator `{}` is not a generator of {}",
                    qa.name(g),
                    presentation.name
                )));
            };
            rename.push(i);
        }
        let lifts = (0..quotient.order())
            .map(|f| {
                quotient
                    .word_of(f)
                    .iter()
                    .map(|l| {
                        ga.normalize(Letter {
                            gen: rename[l.gen],
                            inv: l.inv,
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(presentation, quotient, p_map, lifts)
    }

    fn validate(&self) -> Result<(), InductionError> {
        let alpha = self.presentation.alphabet();
        let f = &self.quotient;
        for g in 0..alpha.len() {
            if alpha.is_involutive(g) && f.mul(self.p_map[g], self.p_map[g]) != 0 {
                return Err(InductionError::NotSplit(format!(
                    "involutive `{}` maps to an element of order > 2",
                    alpha.name(g)
                )));
            }
        }
        for (i, r) in self.presentation.relators().iter().enumerate() {
            let image = self.project(r);
            if image != 0 {
                return Err(InductionError::NotSplit(format!(
                    "relator {i} maps to `{}`, so p is not a homomorphism",
                    f.name(image)
                )));
            }
        }
        if !self.lifts[0].is_empty() {
            return Err(InductionError::NotSplit(
                "the identity must lift to the empty word".into(),
            ));
        }
        for (e, w) in self.lifts.iter().enumerate() {
            if self.project(w) != e {
                return Err(InductionError::NotSplit(format!(
                    "lift of `{}` projects to `{}`",
                    f.name(e),
                    f.name(self.project(w))
                )));
            }
            for l in w.iter() {
                if !self.is_section_generator(l.gen) {
                    return Err(InductionError::NotSplit(format!(
                        "lift of `{}` uses `{}`, which is not its own lift",
                        f.name(e),
                        alpha.name(l.gen)
                    )));
                }
            }
        }
        Ok(())
    }

    /// Image of a word in the quotient.
    pub fn project(&self, w: &Word) -> usize {
        w.iter().fold(0, |acc, &l| {
            let x = self.p_map[l.gen];
            self.quotient
                .mul(acc, if l.inv { self.quotient.inv(x) } else { x })
        })
    }

    /// The generator is the lift of its own image, so its y-letter is trivial.
    pub fn is_section_generator(&self, gen: usize) -> bool {
        let w = &self.lifts[self.p_map[gen]];
        w.len() == 1 && w[0] == Letter::pos(gen)
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn quotient(&self) -> &FiniteGroupTable {
        &self.quotient
    }

    pub fn p_map(&self) -> &[usize] {
        &self.p_map
    }

    pub fn lifts(&self) -> &[Word] {
        &self.lifts
    }
}

/// The symbol `^f y_j`: generator `j` of `G` conjugated by the lift of `f`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct YLetter {
    pub conjugator: usize,
    pub base: usize,
}

impl YLetter {
    /// `b^[ada]`, with the identity written `e`.
    pub fn name(&self, d: &SplitExtensionData) -> String {
        format!(
            "{}^[{}]",
            d.presentation.alphabet().name(self.base),
            d.quotient.name(self.conjugator)
        )
    }
}

/// A relator of the induced presentation, as a sequence of y-letters.
pub type YRelator = Vec<YLetter>;

fn y_letters(
    w: &Word,
    d: &SplitExtensionData,
    keep_trivial: bool,
) -> Result<YRelator, InductionError> {
    if !w.is_positive() {
        return Err(InductionError::NonPositiveRelator { index: 0 });
    }
    let f = &d.quotient;
    let mut prefix = 0;
    let mut out = Vec::new();
    for l in w.iter() {
        if keep_trivial || !d.is_section_generator(l.gen) {
            out.push(YLetter {
                conjugator: prefix,
                base: l.gen,
            });
        }
        prefix = f.mul(prefix, d.p_map[l.gen]);
    }
    if prefix != 0 {
        return Err(InductionError::DoesNotCloseUp {
            element: f.name(prefix).to_string(),
        });
    }
    Ok(out)
}

/// The basic relation `T(w)`: one y-letter per occurrence of a generator
/// that is not its own lift, superscripted by the image in `F` of the
/// prefix before it.
pub fn basic_relation(w: &Word, d: &SplitExtensionData) -> Result<YRelator, InductionError> {
    y_letters(w, d, false)
}

/// `^x T`: every conjugator multiplied on the left by `x`.
pub fn conjugate_relation(t: &[YLetter], x: usize, f: &FiniteGroupTable) -> YRelator {
    t.iter()
        .map(|y| YLetter {
            conjugator: f.mul(x, y.conjugator),
            base: y.base,
        })
        .collect()
}

/// A presentation over y-letters together with the letter table.
#[derive(Debug, Clone)]
pub struct YPresentation {
    pub letters: Vec<YLetter>,
    pub presentation: Presentation,
    index: HashMap<YLetter, usize>,
}

impl YPresentation {
    fn new(
        name: &str,
        letters: Vec<YLetter>,
        d: &SplitExtensionData,
        relators: &[YRelator],
    ) -> Result<Self, InductionError> {
        let alpha = d.presentation.alphabet();
        let alphabet = Alphabet::new(letters.iter().map(|y| {
            // `^f x` is an involution whenever `x` is one lying in `K`
            let inv = alpha.is_involutive(y.base) && d.p_map[y.base] == 0;
            (y.name(d), inv)
        }))?;
        let index: HashMap<YLetter, usize> =
            letters.iter().enumerate().map(|(i, &y)| (y, i)).collect();
        let words = relators
            .iter()
            .map(|r| r.iter().map(|y| Letter::pos(index[y])).collect())
            .collect();
        let presentation = Presentation::new(name, alphabet, words)?;
        Ok(YPresentation {
            letters,
            presentation,
            index,
        })
    }

    /// Generator index of a y-letter, if it survived simplification.
    pub fn index_of(&self, y: &YLetter) -> Option<usize> {
        self.index.get(y).copied()
    }

    pub fn word(&self, r: &[YLetter]) -> Option<Word> {
        r.iter()
            .map(|y| self.index_of(y).map(Letter::pos))
            .collect()
    }
}

/// One simplification performed on the raw induced presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SimplificationStep {
    /// `y_j = x_j lift(p(x_j))^-1` is the identity; all its conjugates go.
    TrivialGenerator {
        generator: String,
        removed: Vec<String>,
    },
    /// A relator became empty after deleting trivial letters.
    DegenerateRelator {
        source_relator: usize,
        conjugator: String,
    },
}

#[derive(Debug, Clone)]
pub struct InducedPresentation {
    /// Exactly as the lemma produces it: all `|F| |S|` y-letters, relators
    /// ordered by source relator then conjugator.
    pub full: YPresentation,
    pub simplified: YPresentation,
    pub log: Vec<SimplificationStep>,
}

impl InducedPresentation {
    pub fn to_json(&self) -> Value {
        let p = &self.simplified.presentation;
        let a = p.alphabet();
        json!({
            "name": p.name,
            "full_generator_count": self.full.letters.len(),
            "full_relator_count": self.full.presentation.relators().len(),
            "generators": a.names(),
            "relators": p.relators().iter().map(|r| a.format(r)).collect::<Vec<_>>(),
            "log": self.log,
        })
    }
}

/// Presentation of `K = ker p` read off the covering of the presentation
/// complex of `G` with deck group `F`.
pub fn induce_presentation(d: &SplitExtensionData) -> Result<InducedPresentation, InductionError> {
    let p = &d.presentation;
    let f = &d.quotient;
    for (index, r) in p.relators().iter().enumerate() {
        if !r.is_positive() {
            return Err(InductionError::NonPositiveRelator { index });
        }
    }
    let gens = p.alphabet().len();
    let all: Vec<YLetter> = (0..gens)
        .flat_map(|base| (0..f.order()).map(move |conjugator| YLetter { conjugator, base }))
        .collect();

    let basics: Vec<YRelator> = p
        .relators()
        .iter()
        .map(|r| y_letters(r, d, true))
        .collect::<Result<_, _>>()?;
    // the conjugate families are independent of each other
    let family: Vec<(usize, usize, YRelator)> = basics
        .par_iter()
        .enumerate()
        .flat_map_iter(|(i, t)| (0..f.order()).map(move |x| (i, x, conjugate_relation(t, x, f))))
        .collect();

    let name = format!("{}|ker", p.name);
    let raw: Vec<YRelator> = family.iter().map(|(_, _, r)| r.clone()).collect();
    let full = YPresentation::new(&name, all.clone(), d, &raw)?;

    let mut log = Vec::new();
    let trivial: Vec<usize> = (0..gens).filter(|&g| d.is_section_generator(g)).collect();
    for &g in &trivial {
        log.push(SimplificationStep::TrivialGenerator {
            generator: p.alphabet().name(g).to_string(),
            removed: all
                .iter()
                .filter(|y| y.base == g)
                .map(|y| y.name(d))
                .collect(),
        });
    }
    let kept: Vec<YLetter> = all
        .into_iter()
        .filter(|y| !trivial.contains(&y.base))
        .collect();
    let mut relators = Vec::new();
    for (i, x, r) in family {
        let r: YRelator = r
            .into_iter()
            .filter(|y| !trivial.contains(&y.base))
            .collect();
        if r.is_empty() {
            log.push(SimplificationStep::DegenerateRelator {
                source_relator: i,
                conjugator: f.name(x).to_string(),
            });
        } else {
            relators.push(r);
        }
    }
    let simplified = YPresentation::new(&name, kept, d, &relators)?;
    Ok(InducedPresentation {
        full,
        simplified,
        log,
    })
}
