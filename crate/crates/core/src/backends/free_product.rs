use super::{FiniteGroupTable, WordOracle};
use crate::words::{Alphabet, Letter, Word};

/// Free product of finite groups, each acting on a subset of one alphabet.
///
/// Normal forms are alternating sequences of nontrivial syllables, each
/// written as its factor's canonical word.
#[derive(Debug, Clone)]
pub struct FreeProductOracle {
    alphabet: Alphabet,
    factors: Vec<FiniteGroupTable>,
    /// per global generator: (factor index, generator index inside the factor)
    placement: Vec<(usize, usize)>,
    /// per factor: factor generator index -> global generator index
    embed: Vec<Vec<usize>>,
}

impl FreeProductOracle {
    /// `factors[i]` must use generator names from `alphabet`; every global
    /// generator belongs to exactly one factor.
    pub fn new(alphabet: Alphabet, factors: Vec<FiniteGroupTable>) -> Option<Self> {
        let mut placement = vec![None; alphabet.len()];
        let mut embed = Vec::with_capacity(factors.len());
        for (fi, f) in factors.iter().enumerate() {
            let mut e = Vec::new();
            for (lg, name) in f.alphabet().names().iter().enumerate() {
                let g = alphabet.index_of(name)?;
                if placement[g].replace((fi, lg)).is_some() {
                    return None;
                }
                e.push(g);
            }
            embed.push(e);
        }
        let placement = placement.into_iter().collect::<Option<Vec<_>>>()?;
        Some(FreeProductOracle {
            alphabet,
            factors,
            placement,
            embed,
        })
    }

    pub fn factors(&self) -> &[FiniteGroupTable] {
        &self.factors
    }

    /// Syllable decomposition `(factor, element)` of the reduced form.
    pub fn syllables(&self, w: &Word) -> Vec<(usize, usize)> {
        let mut stack: Vec<(usize, usize)> = Vec::new();
        for &l in w.iter() {
            let (fi, lg) = self.placement[l.gen];
            let f = &self.factors[fi];
            let el = f.letter_element(Letter {
                gen: lg,
                inv: l.inv,
            });
            match stack.last_mut() {
                Some((top_f, top_e)) if *top_f == fi => {
                    *top_e = f.mul(*top_e, el);
                    if *top_e == 0 {
                        stack.pop();
                    }
                }
                _ => stack.push((fi, el)),
            }
        }
        stack
    }
}

impl WordOracle for FreeProductOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for (fi, el) in self.syllables(w) {
            for &l in self.factors[fi].word_of(el).iter() {
                out.push(Letter {
                    gen: self.embed[fi][l.gen],
                    inv: l.inv,
                });
            }
        }
        out
    }

    fn is_identity(&self, w: &Word) -> bool {
        self.syllables(w).is_empty()
    }

    fn describe(&self) -> String {
        let orders: Vec<String> = self.factors.iter().map(|f| f.order().to_string()).collect();
        format!(
            "free product of finite groups of orders {}",
            orders.join(" * ")
        )
    }
}
