//! String rewriting with replayable traces.

mod confluence;
mod witness;

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::backends::WordOracle;
use crate::words::{Alphabet, Letter, Word, WordError};

pub use confluence::{
    certify_local_confluence, critical_pairs, ConfluenceVerdict, CriticalPair, OverlapKind,
};
pub use witness::{ball_null_homotopy_witness, BallWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("rule {0} has an empty left-hand side")]
    EmptyLhs(usize),
    #[error("no normal form after {steps} steps (reached `{word}`)")]
    LimitExceeded { steps: usize, word: String },
    #[error("rule {rule} increases length ({lhs} -> {rhs})")]
    NotGeodesic { rule: usize, lhs: usize, rhs: usize },
    #[error("rule {0} has no matching relator in the presentation")]
    MissingRelator(usize),
    #[error("{count} words to enumerate exceed the cap {cap}")]
    CombinatorialExplosion { count: u128, cap: u128 },
    #[error(transparent)]
    Word(#[from] WordError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub lhs: Word,
    pub rhs: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewritingSystem {
    alphabet: Alphabet,
    rules: Vec<Rule>,
}

/// Which redex to contract when several are available.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub enum Strategy {
    /// Smallest end position, then latest start, then lowest rule index.
    #[default]
    LeftmostInnermost,
    /// Smallest start position, then longest match, then lowest rule index.
    LeftmostOutermost,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub before: Word,
    pub rule: usize,
    pub pos: usize,
    pub after: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
}

impl ReductionTrace {
    /// `{steps:[{before,rule,pos,after}]}` with words in file syntax.
    pub fn to_json(&self, alphabet: &Alphabet) -> Value {
        let steps: Vec<Value> = self
            .steps
            .iter()
            .map(|s| {
                json!({
                    "before": alphabet.format(&s.before),
                    "rule": s.rule,
                    "pos": s.pos,
                    "after": alphabet.format(&s.after),
                })
            })
            .collect();
        json!({ "steps": steps })
    }

    /// Each step rewrites exactly the stated occurrence and steps chain.
    pub fn replays(&self, rs: &RewritingSystem, start: &Word) -> bool {
        let mut cur = start.clone();
        for s in &self.steps {
            let Some(rule) = rs.rules.get(s.rule) else {
                return false;
            };
            let n = rule.lhs.len();
            if s.before != cur || s.pos + n > cur.len() || cur[s.pos..s.pos + n] != rule.lhs[..] {
                return false;
            }
            cur = cur.splice(s.pos, n, &rule.rhs);
            if cur != s.after {
                return false;
            }
        }
        true
    }

    /// Lengths never grow along the trace.
    pub fn is_length_monotone(&self) -> bool {
        self.steps.iter().all(|s| s.after.len() <= s.before.len())
    }

    pub fn max_length(&self) -> usize {
        self.steps
            .iter()
            .map(|s| s.before.len().max(s.after.len()))
            .max()
            .unwrap_or(0)
    }
}

impl RewritingSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<Rule>) -> Result<Self, RewriteError> {
        for (i, r) in rules.iter().enumerate() {
            if r.lhs.is_empty() {
                return Err(RewriteError::EmptyLhs(i));
            }
            alphabet.check_word(&r.lhs)?;
            alphabet.check_word(&r.rhs)?;
        }
        Ok(RewritingSystem { alphabet, rules })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    /// Every rule satisfies `|lhs| >= |rhs|`.
    pub fn is_geodesic(&self) -> bool {
        self.first_length_increasing().is_none()
    }

    pub(crate) fn first_length_increasing(&self) -> Option<usize> {
        self.rules.iter().position(|r| r.lhs.len() < r.rhs.len())
    }

    /// The redex the strategy contracts next, as `(rule, position)`.
    pub fn find_redex(&self, w: &Word, strategy: Strategy) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None; // (rule, start, end)
        for (ri, rule) in self.rules.iter().enumerate() {
            let n = rule.lhs.len();
            if n > w.len() {
                continue;
            }
            for start in 0..=w.len() - n {
                if w[start..start + n] != rule.lhs[..] {
                    continue;
                }
                let end = start + n;
                let better = match (best, strategy) {
                    (None, _) => true,
                    (Some((_, bs, be)), Strategy::LeftmostInnermost) => {
                        end < be || (end == be && start > bs)
                    }
                    (Some((_, bs, be)), Strategy::LeftmostOutermost) => {
                        start < bs || (start == bs && end > be)
                    }
                };
                if better {
                    best = Some((ri, start, end));
                }
                // later starts only move the end right for this rule
                break;
            }
        }
        best.map(|(r, s, _)| (r, s))
    }

    pub fn is_irreducible(&self, w: &Word) -> bool {
        self.find_redex(w, Strategy::default()).is_none()
    }

    /// Rewrites until irreducible. `LimitExceeded` after `step_limit` steps.
    pub fn reduce(
        &self,
        w: &Word,
        strategy: Strategy,
        step_limit: usize,
    ) -> Result<(Word, ReductionTrace), RewriteError> {
        let mut cur = w.clone();
        let mut trace = ReductionTrace::default();
        while let Some((rule, pos)) = self.find_redex(&cur, strategy) {
            if trace.steps.len() == step_limit {
                return Err(RewriteError::LimitExceeded {
                    steps: step_limit,
                    word: self.abbreviate(&cur),
                });
            }
            let r = &self.rules[rule];
            let after = cur.splice(pos, r.lhs.len(), &r.rhs);
            trace.steps.push(TraceStep {
                before: cur,
                rule,
                pos,
                after: after.clone(),
            });
            cur = after;
        }
        Ok((cur, trace))
    }

    fn abbreviate(&self, w: &Word) -> String {
        const SHOWN: usize = 24;
        if w.len() <= SHOWN {
            return self.alphabet.format(w);
        }
        format!(
            "{} ... ({} letters)",
            self.alphabet.format(&w.subword(0, SHOWN)),
            w.len()
        )
    }

    /// Normal form without the trace.
    pub fn normal_form(&self, w: &Word, step_limit: usize) -> Result<Word, RewriteError> {
        self.reduce(w, Strategy::default(), step_limit)
            .map(|(nf, _)| nf)
    }
}

/// `x x^-1 -> 1`, `x^-1 x -> 1` for ordinary letters, `x x -> 1` for
/// involutive ones.
pub fn free_reduction_system(alphabet: &Alphabet) -> RewritingSystem {
    let mut rules = Vec::new();
    for g in 0..alphabet.len() {
        let (p, n) = (Letter::pos(g), Letter::neg(g));
        if alphabet.is_involutive(g) {
            rules.push(Rule {
                lhs: Word::from(vec![p, p]),
                rhs: Word::empty(),
            });
        } else {
            rules.push(Rule {
                lhs: Word::from(vec![p, n]),
                rhs: Word::empty(),
            });
            rules.push(Rule {
                lhs: Word::from(vec![n, p]),
                rhs: Word::empty(),
            });
        }
    }
    RewritingSystem::new(alphabet.clone(), rules).expect("nonempty left-hand sides")
}

/// Free reduction on `a, b` plus `y x -> x y` for every signed pair with
/// `y` over `b`, `x` over `a`. Normal forms are `a^i b^j`.
pub fn z2_system() -> RewritingSystem {
    let alpha = Alphabet::plain(&["a", "b"]);
    let mut rules = free_reduction_system(&alpha).rules;
    for yb in [Letter::pos(1), Letter::neg(1)] {
        for xa in [Letter::pos(0), Letter::neg(0)] {
            rules.push(Rule {
                lhs: Word::from(vec![yb, xa]),
                rhs: Word::from(vec![xa, yb]),
            });
        }
    }
    RewritingSystem::new(alpha, rules).expect("valid rules")
}

/// `a a -> 1`, `d d -> 1`, `d a d a -> a d a d` on involutive `a, d`.
pub fn d8_system() -> RewritingSystem {
    let alpha = Alphabet::involutive(&["a", "d"]);
    let w = |s: &str| alpha.parse_word(s).expect("fixed word");
    let rules = vec![
        Rule {
            lhs: w("a a"),
            rhs: w("1"),
        },
        Rule {
            lhs: w("d d"),
            rhs: w("1"),
        },
        Rule {
            lhs: w("d a d a"),
            rhs: w("a d a d"),
        },
    ];
    RewritingSystem::new(alpha, rules).expect("valid rules")
}

/// A rewriting system used as a word-problem oracle. Only sound for
/// complete confluent systems; reductions that hit the step limit panic.
#[derive(Debug, Clone)]
pub struct RewritingOracle {
    system: RewritingSystem,
    step_limit: usize,
}

impl RewritingOracle {
    pub fn new(system: RewritingSystem, step_limit: usize) -> Self {
        RewritingOracle { system, step_limit }
    }

    pub fn system(&self) -> &RewritingSystem {
        &self.system
    }
}

impl WordOracle for RewritingOracle {
    fn alphabet(&self) -> &Alphabet {
        &self.system.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        let w = Word::from(
            w.iter()
                .map(|&l| self.system.alphabet.normalize(l))
                .collect::<Vec<_>>(),
        );
        self.system
            .normal_form(&w, self.step_limit)
            .unwrap_or_else(|e| panic!("rewriting oracle: {e}"))
    }

    fn describe(&self) -> String {
        format!("rewriting system with {} rules", self.system.rules.len())
    }
}

/// All words of length exactly `n` over `letters`, in shortlex order.
pub(crate) fn words_of_length(letters: &[Letter], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(out.len() * letters.len());
        for w in &out {
            for &l in letters {
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// `sum_{i<=n} k^i`, saturating.
pub(crate) fn word_count_upto(k: usize, n: usize) -> u128 {
    let mut total: u128 = 0;
    let mut pow: u128 = 1;
    for _ in 0..=n {
        total = total.saturating_add(pow);
        pow = pow.saturating_mul(k as u128);
    }
    total
}
