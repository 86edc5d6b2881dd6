use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use super::{OracleError, WordOracle};
use crate::words::{Alphabet, Letter, Word};

/// `a^-p b^q a^r` with `p, r >= 0` and `n` not dividing `q` whenever `p, r > 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct BsTriple {
    pub p: u64,
    pub q: BigInt,
    pub r: u64,
}

/// Oracle for `B(1, n) = < a, b | a b a^-1 = b^n >`.
#[derive(Debug, Clone)]
pub struct BsOracle {
    alphabet: Alphabet,
    n: BigInt,
}

const A: usize = 0;
const B: usize = 1;

/// Word-problem oracle for `B(m, n)`; only `m = 1` is solvable here.
pub fn bs_oracle(m: u64, n: u64) -> Result<BsOracle, OracleError> {
    if m != 1 {
        return Err(OracleError::Unsupported(format!("B({m},{n}) with m != 1")));
    }
    if n == 0 {
        return Err(OracleError::Unsupported("B(1,0)".into()));
    }
    Ok(BsOracle {
        alphabet: Alphabet::plain(&["a", "b"]),
        n: BigInt::from(n),
    })
}

impl BsOracle {
    pub fn n(&self) -> &BigInt {
        &self.n
    }

    /// Right-multiplies letter by letter, keeping the triple normalized.
    pub fn triple(&self, w: &Word) -> BsTriple {
        let mut t = BsTriple {
            p: 0,
            q: BigInt::zero(),
            r: 0,
        };
        for &l in w.iter() {
            match (l.gen, l.inv) {
                (A, false) => t.r += 1,
                (A, true) => {
                    if t.r > 0 {
                        t.r -= 1;
                    } else {
                        // b^q a^-1 = a^-1 b^(qn)
                        t.p += 1;
                        t.q *= &self.n;
                    }
                }
                (B, inv) => {
                    let step = num_traits::pow(self.n.clone(), t.r as usize);
                    if inv {
                        t.q -= step;
                    } else {
                        t.q += step;
                    }
                }
                _ => unreachable!("B(1,n) has two generators"),
            }
            self.normalize(&mut t);
        }
        t
    }

    fn normalize(&self, t: &mut BsTriple) {
        // a^-1 b^(nk) a = b^k
        while t.p > 0 && t.r > 0 && t.q.is_multiple_of(&self.n) {
            t.q = t.q.div_floor(&self.n);
            t.p -= 1;
            t.r -= 1;
        }
    }

    pub fn word_of(&self, t: &BsTriple) -> Word {
        let mut out = Word::empty();
        for _ in 0..t.p {
            out.push(Letter::neg(A));
        }
        let l = if t.q.is_negative() {
            Letter::neg(B)
        } else {
            Letter::pos(B)
        };
        let mut k = t.q.abs();
        while !k.is_zero() {
            out.push(l);
            k -= BigInt::one();
        }
        for _ in 0..t.r {
            out.push(Letter::pos(A));
        }
        out
    }
}

impl WordOracle for BsOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.word_of(&self.triple(w))
    }

    fn is_identity(&self, w: &Word) -> bool {
        let t = self.triple(w);
        t.p == 0 && t.r == 0 && t.q.is_zero()
    }

    fn equal(&self, u: &Word, v: &Word) -> bool {
        self.triple(u) == self.triple(v)
    }

    fn describe(&self) -> String {
        format!("B(1,{})", self.n)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relator_is_trivial() {
        let o = bs_oracle(1, 2).unwrap();
        let a = o.alphabet().clone();
        assert!(o.is_identity(&a.parse_word("a b a' b' b'").unwrap()));
        assert!(!o.is_identity(&a.parse_word("b").unwrap()));
        assert_eq!(
            a.compact(&o.normal_form(&a.parse_word("a b b a'").unwrap())),
            "bbbb"
        );
    }

    #[test]
    fn conjugate_down() {
        let o = bs_oracle(1, 2).unwrap();
        let a = o.alphabet().clone();
        // a^-1 b^2 a = b
        assert_eq!(
            a.compact(&o.normal_form(&a.parse_word("a' b b a").unwrap())),
            "b"
        );
        assert_eq!(
            a.compact(&o.normal_form(&a.parse_word("a' b a").unwrap())),
            "a'ba"
        );
        assert_eq!(
            a.compact(&o.normal_form(&a.parse_word("a' a").unwrap())),
            "1"
        );
    }

    #[test]
    fn unsupported_m() {
        assert!(matches!(bs_oracle(2, 3), Err(OracleError::Unsupported(_))));
    }
}
