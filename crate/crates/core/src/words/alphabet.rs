use itertools::Itertools;

use std::collections::HashMap;

use serde::Serialize;

use super::{Word, WordError};

/// A signed generator letter.
///
/// Ordering is `a < a' < b < b' < ...` following the alphabet order, which is
/// the order used for every shortlex tie-break in the crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inv: bool,
}

impl Letter {
    pub const fn pos(gen: usize) -> Self {
        Letter { gen, inv: false }
    }

    pub const fn neg(gen: usize) -> Self {
        Letter { gen, inv: true }
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i8 {
        if self.inv {
            -1
        } else {
            1
        }
    }
}

/// Ordered generator names with per-letter involution flags.
///
/// An involutive generator `g` satisfies `g^2 = 1`; its inverse is identified
/// with `g` itself, so words only ever store it with exponent `+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Alphabet {
    names: Vec<String>,
    involutive: Vec<bool>,
    #[serde(skip)]
    lookup: HashMap<String, usize>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(
        letters: impl IntoIterator<Item = (S, bool)>,
    ) -> Result<Self, WordError> {
        let mut names = Vec::new();
        let mut involutive = Vec::new();
        let mut lookup = HashMap::new();
        for (name, inv) in letters {
            let name = name.into();
            if lookup.insert(name.clone(), names.len()).is_some() {
                return Err(WordError::DuplicateGenerator(name));
            }
            names.push(name);
            involutive.push(inv);
        }
        Ok(Alphabet {
            names,
            involutive,
            lookup,
        })
    }

    /// Alphabet of non-involutive generators. Panics on duplicate names.
    pub fn plain(names: &[&str]) -> Self {
        Self::new(names.iter().map(|n| (*n, false))).expect("duplicate generator name")
    }

    /// Alphabet of involutive generators. Panics on duplicate names.
    pub fn involutive(names: &[&str]) -> Self {
        Self::new(names.iter().map(|n| (*n, true))).expect("duplicate generator name")
    }

    pub fn empty() -> Self {
        Self::plain(&[])
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, gen: usize) -> &str {
        &self.names[gen]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn is_involutive(&self, gen: usize) -> bool {
        self.involutive[gen]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.lookup.get(name).copied()
    }

    /// Same names and flags, in the same order.
    pub fn same_as(&self, other: &Alphabet) -> bool {
        self.names == other.names && self.involutive == other.involutive
    }

    /// Positive letter for `name`. Panics when absent; intended for fixed alphabets.
    pub fn letter(&self, name: &str) -> Letter {
        Letter::pos(
            self.index_of(name)
                .unwrap_or_else(|| panic!("no generator named {name}")),
        )
    }

    /// Canonical form of a letter: involutive generators lose their sign.
    pub fn normalize(&self, l: Letter) -> Letter {
        if self.involutive[l.gen] {
            Letter::pos(l.gen)
        } else {
            l
        }
    }

    pub fn inverse_letter(&self, l: Letter) -> Letter {
        if self.involutive[l.gen] {
            l
        } else {
            Letter {
                gen: l.gen,
                inv: !l.inv,
            }
        }
    }

    /// Every letter usable in a word, in alphabet order (`a, a', b, b', ...`,
    /// with involutive generators contributing one letter).
    pub fn letters(&self) -> Vec<Letter> {
        let mut out = Vec::with_capacity(2 * self.len());
        for g in 0..self.len() {
            out.push(Letter::pos(g));
            if !self.involutive[g] {
                out.push(Letter::neg(g));
            }
        }
        out
    }

    /// Appends a generator, returning the extended alphabet.
    pub fn with_generator(&self, name: &str, involutive: bool) -> Result<Alphabet, WordError> {
        self.with_generator_at(self.len(), name, involutive)
    }

    /// Removes generator `gen`; indices above it shift down by one.
    pub fn without_generator(&self, gen: usize) -> Alphabet {
        Alphabet::new(
            self.names
                .iter()
                .zip(self.involutive.iter())
                .enumerate()
                .filter(|(i, _)| *i != gen)
                .map(|(_, (n, &inv))| (n.clone(), inv)),
        )
        .expect("subset of a valid alphabet")
    }

    /// Inserts a generator at position `at`.
    pub fn with_generator_at(
        &self,
        at: usize,
        name: &str,
        involutive: bool,
    ) -> Result<Alphabet, WordError> {
        let mut letters: Vec<(String, bool)> = self
            .names
            .iter()
            .cloned()
            .zip(self.involutive.iter().copied())
            .collect();
        letters.insert(at, (name.to_string(), involutive));
        Alphabet::new(letters)
    }

    /// Checks that every letter of `w` belongs to this alphabet and that
    /// involutive letters carry exponent `+1`.
    pub fn check_word(&self, w: &Word) -> Result<(), WordError> {
        for &l in w.iter() {
            if l.gen >= self.len() {
                return Err(WordError::UnknownGenerator(l.gen));
            }
            if l.inv && self.involutive[l.gen] {
                return Err(WordError::SignedInvolution(self.names[l.gen].clone()));
            }
        }
        Ok(())
    }

    /// Free reduction in the free product of the letter groups
    /// (`Z` for ordinary letters, `Z/2` for involutive ones).
    pub fn free_reduce(&self, w: &Word) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(w.len());
        for &l in w.iter() {
            let l = self.normalize(l);
            match out.last() {
                Some(&top) if top == self.inverse_letter(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word::from(out)
    }

    /// Formal inverse: reversed, each letter inverted. Not reduced.
    pub fn inverse(&self, w: &Word) -> Word {
        w.iter().rev().map(|&l| self.inverse_letter(l)).collect()
    }

    /// Free reduction followed by stripping inverse pairs from the two ends.
    /// Returns the stripped prefix length together with the core, so that
    /// `reduce(w) = p * core * p^-1` with `p` the first `k` letters of `reduce(w)`.
    pub fn cyclic_reduce(&self, w: &Word) -> (Word, Word) {
        let r = self.free_reduce(w);
        let mut lo = 0;
        let mut hi = r.len();
        while hi - lo >= 2 && r[lo] == self.inverse_letter(r[hi - 1]) {
            lo += 1;
            hi -= 1;
        }
        (Word::from(r[..lo].to_vec()), Word::from(r[lo..hi].to_vec()))
    }

    /// Two words are equal in the free product of the letter groups.
    pub fn freely_equal(&self, u: &Word, v: &Word) -> bool {
        self.free_reduce(u) == self.free_reduce(v)
    }

    /// Commutator `u v u^-1 v^-1`, unreduced.
    pub fn commutator(&self, u: &Word, v: &Word) -> Word {
        Word::concat([u, v, &self.inverse(u), &self.inverse(v)])
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    fn letter_text(&self, l: Letter) -> String {
        if l.inv {
            format!("{}'", self.names[l.gen])
        } else {
            self.names[l.gen].clone()
        }
    }

    /// Canonical spaced text, `1` for the empty word.
    pub fn format(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.iter().map(|&l| self.letter_text(l)).join(" ")
    }

    /// Letters run together when every name is a single character, spaced
    /// otherwise. Empty word is `1`.
    pub fn compact(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        w.iter().map(|&l| self.letter_text(l)).join(sep)
    }

    /// Like [`Alphabet::compact`] but writes a proper power `u^k` as `(u)^k`
    /// (`a^2` for single letters).
    pub fn compact_power(&self, w: &Word) -> String {
        let (root, k) = w.primitive_root();
        if k < 2 {
            return self.compact(w);
        }
        if root.len() == 1 {
            format!("{}^{}", self.compact(&root), k)
        } else {
            format!("({})^{}", self.compact(&root), k)
        }
    }

    /// Spaced variant of [`Alphabet::compact_power`].
    pub fn format_power(&self, w: &Word) -> String {
        let (root, k) = w.primitive_root();
        if k < 2 {
            return self.format(w);
        }
        if root.len() == 1 {
            format!("{}^{}", self.format(&root), k)
        } else {
            format!("({})^{}", self.format(&root), k)
        }
    }
}
