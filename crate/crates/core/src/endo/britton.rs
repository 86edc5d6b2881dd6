use serde::Serialize;

use super::{sigma_decode, EndoError, EndomorphicPresentation, StableWord};
use crate::words::{Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum PinchKind {
    /// `t u t^-1 -> phi(u)`
    Conjugate,
    /// `t^-1 phi(v) t -> v`
    Decode,
}

/// One pinch removal: letters `start..=end` of `before` are replaced by
/// `replacement`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PinchStep {
    pub kind: PinchKind,
    pub start: usize,
    pub end: usize,
    #[serde(skip)]
    pub before: StableWord,
    #[serde(skip)]
    pub replacement: Word,
    #[serde(skip)]
    pub after: StableWord,
}

impl PinchStep {
    pub fn replays(&self) -> bool {
        self.before
            .splice(self.start, self.end + 1 - self.start, &self.replacement)
            == self.after
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BrittonStatus {
    /// No pinch is left.
    Reduced,
    /// Pinches remain but none has a decodable middle word.
    Stuck,
    /// The step cap stopped the reduction.
    CapReached,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BrittonOutcome {
    pub status: BrittonStatus,
    #[serde(skip)]
    pub word: StableWord,
    pub trace: Vec<PinchStep>,
}

/// Repeatedly removes the leftmost removable pinch.
///
/// `t u t^-1` always collapses to `phi(u)` (free extension of `phi`). For
/// `t^-1 u t` the middle word is decoded letter-exactly, first as written and
/// then after free reduction; membership in the image subgroup beyond that is
/// not decided, which is what [`BrittonStatus::Stuck`] reports.
pub fn britton_pinch_reduce(
    ep: &EndomorphicPresentation,
    w: &StableWord,
    step_cap: usize,
) -> Result<BrittonOutcome, EndoError> {
    if ep.phis().len() != 1 {
        return Err(EndoError::StableLetterCount(ep.phis().len()));
    }
    let phi = &ep.phis()[0];
    let s_alpha = ep.alphabet();
    let t = s_alpha.len();
    let mut cur = w.clone();
    let mut trace = Vec::new();
    loop {
        let stable: Vec<usize> = cur
            .iter()
            .enumerate()
            .filter(|(_, l)| l.gen == t)
            .map(|(i, _)| i)
            .collect();
        let mut candidates = false;
        let mut done = None;
        for pair in stable.windows(2) {
            let (i, j) = (pair[0], pair[1]);
            if cur[i].inv == cur[j].inv {
                continue;
            }
            candidates = true;
            let middle = Word::from(cur[i + 1..j].to_vec());
            let step = if !cur[i].inv {
                Some((PinchKind::Conjugate, phi.apply_free(&middle)))
            } else {
                let reduced = s_alpha.free_reduce(&middle);
                let decoded = sigma_decode(phi, &middle)
                    .or_else(|_| sigma_decode(phi, &reduced))
                    .ok();
                decoded.map(|d| (PinchKind::Decode, d.word))
            };
            if let Some((kind, replacement)) = step {
                done = Some((kind, i, j, replacement));
                break;
            }
        }
        let Some((kind, start, end, replacement)) = done else {
            let status = if candidates {
                BrittonStatus::Stuck
            } else {
                BrittonStatus::Reduced
            };
            return Ok(BrittonOutcome {
                status,
                word: cur,
                trace,
            });
        };
        if trace.len() == step_cap {
            return Ok(BrittonOutcome {
                status: BrittonStatus::CapReached,
                word: cur,
                trace,
            });
        }
        let after = cur.splice(start, end + 1 - start, &replacement);
        trace.push(PinchStep {
            kind,
            start,
            end,
            before: cur,
            replacement,
            after: after.clone(),
        });
        cur = after;
    }
}

/// Count of stable letters in `w`.
pub fn stable_letter_count(ep: &EndomorphicPresentation, w: &StableWord) -> usize {
    let base = ep.alphabet().len();
    w.iter().filter(|l: &&Letter| l.gen >= base).count()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::{Alphabet, Substitution};

    fn ep() -> EndomorphicPresentation {
        let a = Alphabet::involutive(&["a", "c", "d"]);
        let phi = Substitution::endo(
            "t",
            a.clone(),
            ["a c a", "c d", "c"]
                .iter()
                .map(|s| a.parse_word(s).unwrap())
                .collect(),
        )
        .unwrap();
        EndomorphicPresentation::new("g", a, vec![], vec![phi], vec![]).unwrap()
    }

    #[test]
    fn pinch_examples() {
        let ep = ep();
        let c = ep.combined_alphabet();
        let run = |s: &str| britton_pinch_reduce(&ep, &c.parse_word(s).unwrap(), 100).unwrap();
        let out = run("t' a c a t");
        assert_eq!(out.status, BrittonStatus::Reduced);
        assert_eq!(c.compact(&out.word), "a");
        let out = run("t a t'");
        assert_eq!(c.compact(&out.word), "aca");
        assert_eq!(out.trace[0].kind, PinchKind::Conjugate);
        let out = run("a c");
        assert!(out.trace.is_empty());
        assert_eq!(c.compact(&out.word), "ac");
    }

    #[test]
    fn undecodable_pinch_is_stuck() {
        let ep = ep();
        let c = ep.combined_alphabet();
        let out = britton_pinch_reduce(&ep, &c.parse_word("t' a t").unwrap(), 10).unwrap();
        assert_eq!(out.status, BrittonStatus::Stuck);
    }

    #[test]
    fn nested_pinches_replay() {
        let ep = ep();
        let c = ep.combined_alphabet();
        let w = c.parse_word("t' t' a c a c d a c a c d t t").unwrap();
        let out = britton_pinch_reduce(&ep, &w, 10).unwrap();
        assert_eq!(out.status, BrittonStatus::Reduced);
        assert!(out.trace.iter().all(PinchStep::replays));
        for s in &out.trace {
            assert_eq!(
                stable_letter_count(&ep, &s.before),
                stable_letter_count(&ep, &s.after) + 2
            );
        }
        assert_eq!(stable_letter_count(&ep, &out.word), 0);
    }
}
