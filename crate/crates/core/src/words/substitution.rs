use super::{Alphabet, Word, WordError};

/// A monoid homomorphism on positive words, given by one image per letter.
///
/// Source and target alphabets usually coincide (an endomorphism such as the
/// Grigorchuk substitution), but a separate target is allowed for maps between
/// presentations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Substitution {
    pub name: String,
    source: Alphabet,
    target: Alphabet,
    images: Vec<Word>,
}

impl Substitution {
    pub fn new(
        name: impl Into<String>,
        source: Alphabet,
        target: Alphabet,
        images: Vec<Word>,
    ) -> Result<Self, WordError> {
        let name = name.into();
        if images.len() != source.len() {
            return Err(WordError::SubstitutionArity {
                expected: source.len(),
                found: images.len(),
            });
        }
        for (g, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(WordError::EmptyImage(source.name(g).to_string()));
            }
            if !img.is_positive() {
                return Err(WordError::NegativeExponent);
            }
            target.check_word(img)?;
        }
        Ok(Substitution {
            name,
            source,
            target,
            images,
        })
    }

    /// Endomorphism of a single alphabet.
    pub fn endo(
        name: impl Into<String>,
        alphabet: Alphabet,
        images: Vec<Word>,
    ) -> Result<Self, WordError> {
        Self::new(name, alphabet.clone(), alphabet, images)
    }

    pub fn source(&self) -> &Alphabet {
        &self.source
    }

    pub fn target(&self) -> &Alphabet {
        &self.target
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    pub fn image(&self, gen: usize) -> &Word {
        &self.images[gen]
    }

    pub fn is_endomorphism(&self) -> bool {
        self.source.same_as(&self.target)
    }

    /// Letterwise image of a positive word, concatenated without reduction.
    pub fn apply(&self, w: &Word) -> Result<Word, WordError> {
        let mut out = Word::empty();
        for &l in w.iter() {
            if l.inv {
                return Err(WordError::NegativeExponent);
            }
            out.extend_from(&self.images[l.gen]);
        }
        Ok(out)
    }

    /// Extension to the free group: `s^-1` maps to the formal inverse of the
    /// image of `s`. Agrees with [`Substitution::apply`] on positive words.
    pub fn apply_free(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for &l in w.iter() {
            if l.inv {
                out.extend_from(&self.target.inverse(&self.images[l.gen]));
            } else {
                out.extend_from(&self.images[l.gen]);
            }
        }
        out
    }

    /// `n`-fold iterate. Requires an endomorphism.
    pub fn iterate(&self, w: &Word, n: usize) -> Result<Word, WordError> {
        if n > 0 && !self.is_endomorphism() {
            return Err(WordError::NotEndomorphism(self.name.clone()));
        }
        if !w.is_positive() {
            return Err(WordError::NegativeExponent);
        }
        let mut cur = w.clone();
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Length of the image of `w` without building it.
    pub fn image_len(&self, w: &Word) -> usize {
        w.iter().map(|l| self.images[l.gen].len()).sum()
    }

    /// Composition `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &Substitution) -> Result<Substitution, WordError> {
        if !other.target.same_as(&self.source) {
            return Err(WordError::AlphabetMismatch);
        }
        let images = other
            .images
            .iter()
            .map(|img| self.apply(img))
            .collect::<Result<Vec<_>, _>>()?;
        Substitution::new(
            format!("{}.{}", self.name, other.name),
            other.source.clone(),
            self.target.clone(),
            images,
        )
    }
}
