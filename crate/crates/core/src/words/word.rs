use std::cmp::Ordering;
use std::ops::Deref;

use super::Letter;

/// A finite sequence of signed letters.
///
/// Words are stored verbatim; nothing is reduced unless a caller asks for it
/// (see [`super::Alphabet::free_reduce`]). Ordering is shortlex.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn push(&mut self, l: Letter) {
        self.0.push(l);
    }

    pub fn extend_from(&mut self, other: &Word) {
        self.0.extend_from_slice(&other.0);
    }

    /// Concatenation `self * other`.
    pub fn then(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn concat<'a>(parts: impl IntoIterator<Item = &'a Word>) -> Word {
        let mut v = Vec::new();
        for p in parts {
            v.extend_from_slice(&p.0);
        }
        Word(v)
    }

    pub fn pow(&self, k: usize) -> Word {
        Word(self.0.repeat(k))
    }

    /// True when no letter carries exponent `-1`.
    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|l| !l.inv)
    }

    pub fn subword(&self, start: usize, len: usize) -> Word {
        Word(self.0[start..start + len].to_vec())
    }

    /// Cyclic rotation starting at `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.0.is_empty() {
            return Word::empty();
        }
        let k = k % self.0.len();
        let mut v = Vec::with_capacity(self.0.len());
        v.extend_from_slice(&self.0[k..]);
        v.extend_from_slice(&self.0[..k]);
        Word(v)
    }

    /// Occurrences of `pattern` as a factor, by starting position.
    pub fn find_all(&self, pattern: &[Letter]) -> Vec<usize> {
        if pattern.is_empty() || pattern.len() > self.0.len() {
            return Vec::new();
        }
        (0..=self.0.len() - pattern.len())
            .filter(|&i| &self.0[i..i + pattern.len()] == pattern)
            .collect()
    }

    pub fn contains_factor(&self, pattern: &[Letter]) -> bool {
        !self.find_all(pattern).is_empty()
    }

    /// Replaces `len` letters at `pos` by `by`.
    pub fn splice(&self, pos: usize, len: usize, by: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.0.len() - len + by.len());
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(by);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    /// `(root, k)` with `self = root^k` and `k` maximal. The empty word is
    /// reported as `(empty, 1)`.
    pub fn primitive_root(&self) -> (Word, usize) {
        let n = self.0.len();
        for p in 1..=n / 2 {
            if n % p == 0 && (p..n).all(|i| self.0[i] == self.0[i - p]) {
                return (Word(self.0[..p].to_vec()), n / p);
            }
        }
        (self.clone(), 1)
    }

    /// Number of occurrences of generator `gen`, either sign.
    pub fn count_gen(&self, gen: usize) -> usize {
        self.0.iter().filter(|l| l.gen == gen).count()
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}
