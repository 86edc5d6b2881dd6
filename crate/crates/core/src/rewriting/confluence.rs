use rayon::prelude::*;
use serde::Serialize;

use super::{words_of_length, RewriteError, RewritingSystem, Strategy};
use crate::words::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OverlapKind {
    /// A proper suffix of the first lhs is a prefix of the second.
    Overlap,
    /// The second lhs occurs inside the first.
    Containment,
}

/// An ambiguity `left <- peak -> right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: Word,
    pub left: Word,
    pub right: Word,
    pub rules: (usize, usize),
    pub kind: OverlapKind,
}

/// All overlap and containment ambiguities between left-hand sides.
pub fn critical_pairs(rs: &RewritingSystem) -> Vec<CriticalPair> {
    let rules = rs.rules();
    let mut out: Vec<CriticalPair> = Vec::new();
    let mut push = |cp: CriticalPair| {
        if !out
            .iter()
            .any(|o| o.peak == cp.peak && o.left == cp.left && o.right == cp.right)
        {
            out.push(cp);
        }
    };
    for (i, ri) in rules.iter().enumerate() {
        for (j, rj) in rules.iter().enumerate() {
            let (li, lj) = (&ri.lhs, &rj.lhs);
            for k in 1..li.len().min(lj.len()) {
                if li[li.len() - k..] != lj[..k] {
                    continue;
                }
                let tail = Word::from(lj[k..].to_vec());
                let head = Word::from(li[..li.len() - k].to_vec());
                push(CriticalPair {
                    peak: li.then(&tail),
                    left: ri.rhs.then(&tail),
                    right: head.then(&rj.rhs),
                    rules: (i, j),
                    kind: OverlapKind::Overlap,
                });
            }
            if lj.len() > li.len() {
                continue;
            }
            for p in li.find_all(lj) {
                if i == j && p == 0 {
                    continue;
                }
                push(CriticalPair {
                    peak: li.clone(),
                    left: ri.rhs.clone(),
                    right: li.splice(p, lj.len(), &rj.rhs),
                    rules: (i, j),
                    kind: OverlapKind::Containment,
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConfluenceVerdict {
    /// Every critical pair joins and every word up to `probe_len` reached a
    /// normal form within the step limit.
    Certified {
        pairs: usize,
        probe_len: usize,
        probe_words: usize,
        geodesic: bool,
    },
    Counterexample {
        peak: Word,
        left: Word,
        right: Word,
    },
    Inconclusive {
        reason: String,
    },
}

impl ConfluenceVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ConfluenceVerdict::Certified { .. } => "Certified",
            ConfluenceVerdict::Counterexample { .. } => "Counterexample",
            ConfluenceVerdict::Inconclusive { .. } => "Inconclusive",
        }
    }
}

/// Local confluence on critical pairs plus bounded termination evidence:
/// every word of length at most `probe_len` must reduce within `step_limit`.
pub fn certify_local_confluence(
    rs: &RewritingSystem,
    step_limit: usize,
    probe_len: usize,
) -> ConfluenceVerdict {
    let letters = rs.alphabet().letters();
    let mut probe_words = 0;
    for n in 0..=probe_len {
        let words = words_of_length(&letters, n);
        probe_words += words.len();
        let stuck = words
            .par_iter()
            .find_first(|w| rs.reduce(w, Strategy::default(), step_limit).is_err());
        if let Some(w) = stuck {
            return ConfluenceVerdict::Inconclusive {
                reason: format!(
                    "`{}` has no normal form within {step_limit} steps",
                    rs.alphabet().format(w)
                ),
            };
        }
    }
    let pairs = critical_pairs(rs);
    for cp in &pairs {
        let l = rs.normal_form(&cp.left, step_limit);
        let r = rs.normal_form(&cp.right, step_limit);
        match (l, r) {
            (Ok(l), Ok(r)) if l == r => {}
            (Ok(l), Ok(r)) => {
                return ConfluenceVerdict::Counterexample {
                    peak: cp.peak.clone(),
                    left: l,
                    right: r,
                }
            }
            (Err(RewriteError::LimitExceeded { word, .. }), _)
            | (_, Err(RewriteError::LimitExceeded { word, .. })) => {
                return ConfluenceVerdict::Inconclusive {
                    reason: format!("critical pair does not terminate (reached `{word}`)"),
                }
            }
            (Err(e), _) | (_, Err(e)) => {
                return ConfluenceVerdict::Inconclusive {
                    reason: e.to_string(),
                }
            }
        }
    }
    ConfluenceVerdict::Certified {
        pairs: pairs.len(),
        probe_len,
        probe_words,
        geodesic: rs.is_geodesic(),
    }
}
