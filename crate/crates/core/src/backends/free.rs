use super::WordOracle;
use crate::words::{Alphabet, Letter, Word};

/// Free group (or free product of `Z/2`s for involutive letters): the normal
/// form is the free reduction.
#[derive(Debug, Clone)]
pub struct FreeOracle {
    alphabet: Alphabet,
}

impl FreeOracle {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeOracle { alphabet }
    }
}

impl WordOracle for FreeOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.alphabet.free_reduce(w)
    }

    fn describe(&self) -> String {
        format!("free product on {} letters", self.alphabet.len())
    }
}

/// Free abelian group `Z^k`; normal form `x1^e1 x2^e2 ...` in generator order.
#[derive(Debug, Clone)]
pub struct FreeAbelianOracle {
    alphabet: Alphabet,
}

impl FreeAbelianOracle {
    pub fn new(alphabet: Alphabet) -> Self {
        FreeAbelianOracle { alphabet }
    }

    pub fn exponents(&self, w: &Word) -> Vec<i64> {
        let mut e = vec![0i64; self.alphabet.len()];
        for l in w.iter() {
            e[l.gen] += i64::from(l.exponent());
        }
        e
    }

    pub fn word_of(&self, e: &[i64]) -> Word {
        let mut out = Word::empty();
        for (g, &k) in e.iter().enumerate() {
            let l = if k < 0 {
                Letter::neg(g)
            } else {
                Letter::pos(g)
            };
            for _ in 0..k.unsigned_abs() {
                out.push(l);
            }
        }
        out
    }
}

impl WordOracle for FreeAbelianOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.word_of(&self.exponents(w))
    }

    fn is_identity(&self, w: &Word) -> bool {
        self.exponents(w).iter().all(|&e| e == 0)
    }

    fn describe(&self) -> String {
        format!("Z^{}", self.alphabet.len())
    }
}

fn default_names(k: usize) -> Vec<String> {
    const NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];
    if k <= NAMES.len() {
        NAMES[..k].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=k).map(|i| format!("x{i}")).collect()
    }
}

/// `F_k` on `a, b, c, ...` (or `x1, x2, ...` past six letters).
pub fn free_oracle(k: usize) -> FreeOracle {
    FreeOracle::new(
        Alphabet::new(default_names(k).into_iter().map(|n| (n, false))).expect("distinct names"),
    )
}

/// `Z^k` on `a, b, c, ...`.
pub fn free_abelian_oracle(k: usize) -> FreeAbelianOracle {
    FreeAbelianOracle::new(
        Alphabet::new(default_names(k).into_iter().map(|n| (n, false))).expect("distinct names"),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_examples() {
        let z2 = free_abelian_oracle(2);
        let a = z2.alphabet().clone();
        assert_eq!(
            a.format(&z2.normal_form(&a.parse_word("b a b'").unwrap())),
            "a"
        );
        assert!(z2.is_identity(&a.parse_word("a b a' b'").unwrap()));
        assert_eq!(
            a.format(&z2.normal_form(&a.parse_word("b' a' b'").unwrap())),
            "a' b' b'"
        );
    }

    #[test]
    fn f2_examples() {
        let f2 = free_oracle(2);
        let a = f2.alphabet().clone();
        assert_eq!(
            a.format(&f2.normal_form(&a.parse_word("a b b'").unwrap())),
            "a"
        );
        assert!(!f2.is_identity(&a.parse_word("a b a' b'").unwrap()));
    }
}
