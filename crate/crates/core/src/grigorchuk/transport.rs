use serde::{Deserialize, Serialize};

use super::{alphabet, GrigorchukData, Variant};
use crate::induction::YLetter;
use crate::words::{Letter, Word};

/// Which copy of `B` in `B x B` a relation lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Factor {
    First,
    Second,
}

impl std::fmt::Display for Factor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Factor::First => "first",
            Factor::Second => "second",
        })
    }
}

/// How one y-letter `^x b` was rewritten as a conjugate `u d u^-1` in `A`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Expansion {
    pub letter: String,
    pub conjugator: String,
    pub word: String,
}

impl GrigorchukData {
    /// `u` with `ψ^-1` of `^x b` equal to `u d u^-1`: `φ0(x)` in the second
    /// factor, `φ1(x) a = a φ0(x)` in the first.
    pub fn transport_conjugator(&self, x: usize, factor: Factor) -> Word {
        let acd = alphabet(Variant::Acd);
        match factor {
            Factor::Second => self.phi0_word(x).clone(),
            Factor::First => {
                let mut u = Word::from(vec![Letter::pos(0)]);
                u.extend_from(self.phi0_word(x));
                acd.free_reduce(&u)
            }
        }
    }

    fn expand(&self, x: usize, factor: Factor) -> Word {
        let acd = alphabet(Variant::Acd);
        let u = self.transport_conjugator(x, factor);
        let d = Word::from(vec![Letter::pos(acd.index_of("d").expect("d"))]);
        acd.free_reduce(&Word::concat([&u, &d, &acd.inverse(&u)]))
    }
}

/// Replaces each `^x b` by its expanded conjugate of `d` and reduces.
pub fn transport_induced_relation(t: &[YLetter], factor: Factor, g: &GrigorchukData) -> Word {
    transport_with_trace(t, factor, g).0
}

/// As [`transport_induced_relation`], also returning the expansion used for
/// every distinct y-letter, in order of first appearance.
pub fn transport_with_trace(
    t: &[YLetter],
    factor: Factor,
    g: &GrigorchukData,
) -> (Word, Vec<Expansion>) {
    let acd = alphabet(Variant::Acd);
    let abd = g.split.presentation().alphabet();
    let b = abd.index_of("b").expect("b");
    let mut cache: Vec<Option<Word>> = vec![None; g.d8.order()];
    let mut trace = Vec::new();
    let mut out = Word::empty();
    for y in t {
        assert_eq!(y.base, b, "only conjugates of b are transported");
        let w = cache[y.conjugator].get_or_insert_with(|| {
            let w = g.expand(y.conjugator, factor);
            trace.push(Expansion {
                letter: y.name(&g.split),
                conjugator: acd.compact(&g.transport_conjugator(y.conjugator, factor)),
                word: acd.compact(&w),
            });
            w
        });
        out.extend_from(w);
    }
    (acd.free_reduce(&out), trace)
}
