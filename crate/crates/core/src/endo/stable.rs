use super::EndomorphicPresentation;
use crate::words::{Alphabet, Letter, Word};

/// A word over `S` followed by the stable letters, see
/// [`EndomorphicPresentation::combined_alphabet`].
pub type StableWord = Word;

/// Image in the free group `L` on the stable letters: drop letters of `S`
/// and freely reduce.
pub fn stable_projection(ep: &EndomorphicPresentation, w: &StableWord) -> Word {
    let base = ep.alphabet().len();
    let kept: Word = w
        .iter()
        .filter(|l| l.gen >= base)
        .map(|l| Letter {
            gen: l.gen - base,
            inv: l.inv,
        })
        .collect();
    ep.stable_alphabet().free_reduce(&kept)
}

/// Nonempty with every exponent `+1`.
pub fn is_positive(l: &Word) -> bool {
    !l.is_empty() && l.is_positive()
}

/// `y < x` iff `y^-1 x` reduces to a positive word of `L`.
pub fn order_less(stable: &Alphabet, y: &Word, x: &Word) -> bool {
    let w = stable.inverse(y).then(x);
    is_positive(&stable.free_reduce(&w))
}
