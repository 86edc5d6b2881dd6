//! Elementary Tietze moves with replayable, invertible traces.
//!
//! Adding or removing a relator requires an explicit derivation: a product of
//! conjugates of existing relators that freely reduces to the relator in
//! question. Derivability is never searched for.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Alphabet, Letter, Presentation, Word, WordError};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TietzeError {
    #[error("invalid move: {0}")]
    InvalidMove(String),
    #[error("derivation does not reduce to the claimed relator")]
    DerivationDoesNotReduce,
    #[error(transparent)]
    Word(#[from] WordError),
}

/// One factor `u r^{±1} u^-1` of a derivation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationFactor {
    pub conjugator: Word,
    pub relator: usize,
    pub inverted: bool,
}

/// Product of conjugates of relators, read left to right.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Derivation(pub Vec<DerivationFactor>);

impl Derivation {
    pub fn single(conjugator: Word, relator: usize, inverted: bool) -> Self {
        Derivation(vec![DerivationFactor {
            conjugator,
            relator,
            inverted,
        }])
    }

    /// The unreduced product word over the relators of `p`.
    pub fn expand(&self, p: &Presentation) -> Result<Word, TietzeError> {
        let a = p.alphabet();
        let mut out = Word::empty();
        for f in &self.0 {
            let r = p.relators().get(f.relator).ok_or_else(|| {
                TietzeError::InvalidMove(format!("derivation cites missing relator {}", f.relator))
            })?;
            a.check_word(&f.conjugator)?;
            out.extend_from(&f.conjugator);
            if f.inverted {
                out.extend_from(&a.inverse(r));
            } else {
                out.extend_from(r);
            }
            out.extend_from(&a.inverse(&f.conjugator));
        }
        Ok(out)
    }

    fn cites(&self, index: usize) -> bool {
        self.0.iter().any(|f| f.relator == index)
    }

    fn reindexed(&self, f: impl Fn(usize) -> usize) -> Derivation {
        Derivation(
            self.0
                .iter()
                .map(|x| DerivationFactor {
                    conjugator: x.conjugator.clone(),
                    relator: f(x.relator),
                    inverted: x.inverted,
                })
                .collect(),
        )
    }
}

/// The four elementary moves. Optional positions default to "append".
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeMove {
    /// T1: new generator `y` with relator `y s^-1`.
    AddGenerator {
        name: String,
        involutive: bool,
        defining: Word,
        generator_at: Option<usize>,
        relator_at: Option<usize>,
    },
    /// T2: remove a generator occurring only in its defining relator.
    RemoveGenerator { name: String },
    /// T3: add a relator certified by a derivation from the current relators.
    AddRelator {
        relator: Word,
        derivation: Derivation,
        at: Option<usize>,
    },
    /// T4: remove a relator certified by a derivation from the others.
    RemoveRelator {
        index: usize,
        derivation: Derivation,
    },
}

impl TietzeMove {
    pub fn kind(&self) -> &'static str {
        match self {
            TietzeMove::AddGenerator { .. } => "T1",
            TietzeMove::RemoveGenerator { .. } => "T2",
            TietzeMove::AddRelator { .. } => "T3",
            TietzeMove::RemoveRelator { .. } => "T4",
        }
    }
}

fn shift_up(at: usize) -> impl Fn(Letter) -> Letter + Copy {
    move |l: Letter| {
        if l.gen >= at {
            Letter {
                gen: l.gen + 1,
                ..l
            }
        } else {
            l
        }
    }
}

fn shift_down(at: usize) -> impl Fn(Letter) -> Letter + Copy {
    move |l: Letter| {
        if l.gen > at {
            Letter {
                gen: l.gen - 1,
                ..l
            }
        } else {
            l
        }
    }
}

fn check_derivation(p: &Presentation, d: &Derivation, claim: &Word) -> Result<(), TietzeError> {
    let product = d.expand(p)?;
    if p.alphabet().freely_equal(&product, claim) {
        Ok(())
    } else {
        Err(TietzeError::DerivationDoesNotReduce)
    }
}

/// Applies `mv` to `p`, returning the new presentation and the move that
/// undoes it exactly.
pub fn apply_move(
    p: &Presentation,
    mv: &TietzeMove,
) -> Result<(Presentation, TietzeMove), TietzeError> {
    let a = p.alphabet();
    match mv {
        TietzeMove::AddGenerator {
            name,
            involutive,
            defining,
            generator_at,
            relator_at,
        } => {
            if a.index_of(name).is_some() {
                return Err(TietzeError::InvalidMove(format!(
                    "generator {name} already exists"
                )));
            }
            a.check_word(defining)?;
            let gpos = generator_at.unwrap_or(a.len());
            let rpos = relator_at.unwrap_or(p.relators().len());
            if gpos > a.len() || rpos > p.relators().len() {
                return Err(TietzeError::InvalidMove(
                    "insertion position out of range".into(),
                ));
            }
            let new_alpha = a.with_generator_at(gpos, name, *involutive)?;
            let up = shift_up(gpos);
            let mut rels: Vec<Word> = p
                .relators()
                .iter()
                .map(|r| r.iter().map(|&l| up(l)).collect())
                .collect();
            let s: Word = defining.iter().map(|&l| up(l)).collect();
            let mut rel = Word::from(vec![Letter::pos(gpos)]);
            rel.extend_from(&new_alpha.inverse(&s));
            rels.insert(rpos, rel);
            let out = Presentation::new(p.name.clone(), new_alpha, rels)?;
            Ok((out, TietzeMove::RemoveGenerator { name: name.clone() }))
        }
        TietzeMove::RemoveGenerator { name } => {
            let y = a
                .index_of(name)
                .ok_or_else(|| TietzeError::InvalidMove(format!("no generator {name}")))?;
            let holders: Vec<usize> = p
                .relators()
                .iter()
                .enumerate()
                .filter(|(_, r)| r.count_gen(y) > 0)
                .map(|(i, _)| i)
                .collect();
            if holders.len() != 1 {
                return Err(TietzeError::InvalidMove(format!(
                    "{name} occurs in {} relators, expected exactly one",
                    holders.len()
                )));
            }
            let ri = holders[0];
            let rel = &p.relators()[ri];
            if rel.first() != Some(&Letter::pos(y)) || rel.count_gen(y) != 1 {
                return Err(TietzeError::InvalidMove(format!(
                    "relator {ri} is not of the form {name} s^-1"
                )));
            }
            let down = shift_down(y);
            let new_alpha = a.without_generator(y);
            let rest: Word = rel[1..].iter().map(|&l| down(l)).collect();
            let defining = new_alpha.inverse(&rest);
            let rels: Vec<Word> = p
                .relators()
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != ri)
                .map(|(_, r)| r.iter().map(|&l| down(l)).collect())
                .collect();
            let out = Presentation::new(p.name.clone(), new_alpha, rels)?;
            Ok((
                out,
                TietzeMove::AddGenerator {
                    name: name.clone(),
                    involutive: a.is_involutive(y),
                    defining,
                    generator_at: Some(y),
                    relator_at: Some(ri),
                },
            ))
        }
        TietzeMove::AddRelator {
            relator,
            derivation,
            at,
        } => {
            a.check_word(relator)?;
            check_derivation(p, derivation, relator)?;
            let pos = at.unwrap_or(p.relators().len());
            if pos > p.relators().len() {
                return Err(TietzeError::InvalidMove(
                    "insertion position out of range".into(),
                ));
            }
            let mut out = p.clone();
            out.relators_mut().insert(pos, relator.clone());
            let inverse = TietzeMove::RemoveRelator {
                index: pos,
                derivation: derivation.reindexed(|j| if j >= pos { j + 1 } else { j }),
            };
            Ok((out, inverse))
        }
        TietzeMove::RemoveRelator { index, derivation } => {
            let i = *index;
            if i >= p.relators().len() {
                return Err(TietzeError::InvalidMove(format!("no relator {i}")));
            }
            if derivation.cites(i) {
                return Err(TietzeError::InvalidMove(
                    "derivation of a removed relator may not cite it".into(),
                ));
            }
            let removed = p.relators()[i].clone();
            check_derivation(p, derivation, &removed)?;
            let mut out = p.clone();
            out.relators_mut().remove(i);
            let inverse = TietzeMove::AddRelator {
                relator: removed,
                derivation: derivation.reindexed(|j| if j > i { j - 1 } else { j }),
                at: Some(i),
            };
            Ok((out, inverse))
        }
    }
}

/// A finite sequence of elementary moves starting from a fixed presentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteEquivalenceTrace {
    pub start: Presentation,
    pub moves: Vec<TietzeMove>,
}

impl FiniteEquivalenceTrace {
    pub fn new(start: Presentation) -> Self {
        FiniteEquivalenceTrace {
            start,
            moves: Vec::new(),
        }
    }

    /// Replays every move, returning the final presentation.
    pub fn replay(&self) -> Result<Presentation, TietzeError> {
        let mut cur = self.start.clone();
        for mv in &self.moves {
            cur = apply_move(&cur, mv)?.0;
        }
        Ok(cur)
    }

    /// The trace running from the end back to the start.
    pub fn inverse(&self) -> Result<FiniteEquivalenceTrace, TietzeError> {
        let mut cur = self.start.clone();
        let mut undo = Vec::with_capacity(self.moves.len());
        for mv in &self.moves {
            let (next, inv) = apply_move(&cur, mv)?;
            undo.push(inv);
            cur = next;
        }
        undo.reverse();
        Ok(FiniteEquivalenceTrace {
            start: cur,
            moves: undo,
        })
    }

    pub fn summary(&self) -> Vec<MoveSummary> {
        self.moves
            .iter()
            .map(|m| MoveSummary {
                kind: m.kind().to_string(),
                detail: match m {
                    TietzeMove::AddGenerator { name, .. } => format!("add generator {name}"),
                    TietzeMove::RemoveGenerator { name } => format!("remove generator {name}"),
                    TietzeMove::AddRelator { derivation, .. } => {
                        format!("add relator ({} factors)", derivation.0.len())
                    }
                    TietzeMove::RemoveRelator { index, derivation } => {
                        format!("remove relator {index} ({} factors)", derivation.0.len())
                    }
                },
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MoveSummary {
    pub kind: String,
    pub detail: String,
}

/// A word `u` with `u s^{±1} u^-1` freely equal to `r`, if one exists.
/// Returns `(u, inverted)`.
pub fn conjugacy_certificate(a: &Alphabet, r: &Word, s: &Word) -> Option<(Word, bool)> {
    let (p, rc) = a.cyclic_reduce(r);
    for inverted in [false, true] {
        let s = if inverted { a.inverse(s) } else { s.clone() };
        let (q, sc) = a.cyclic_reduce(&s);
        if rc.len() != sc.len() {
            continue;
        }
        if rc.is_empty() {
            return Some((Word::empty(), inverted));
        }
        for k in 0..sc.len() {
            // sc = x y, rc = y x = x^-1 sc x
            if sc.rotate(k) == rc {
                let x = sc.subword(0, k);
                let u = Word::concat([&p, &a.inverse(&x), &a.inverse(&q)]);
                return Some((u, inverted));
            }
        }
    }
    None
}

/// Removes, by T4 moves with single-factor derivations, every relator that is
/// freely trivial or a conjugate of (the inverse of) an earlier-kept relator.
pub fn discard_conjugates(
    p: &Presentation,
) -> Result<(Presentation, FiniteEquivalenceTrace), TietzeError> {
    let mut trace = FiniteEquivalenceTrace::new(p.clone());
    let mut cur = p.clone();
    let mut i = cur.relators().len();
    while i > 0 {
        i -= 1;
        let r = cur.relators()[i].clone();
        let a = cur.alphabet().clone();
        let derivation = if a.free_reduce(&r).is_empty() {
            Some(Derivation::default())
        } else {
            (0..cur.relators().len()).filter(|&j| j != i).find_map(|j| {
                conjugacy_certificate(&a, &r, &cur.relators()[j])
                    .map(|(u, inv)| Derivation::single(u, j, inv))
            })
        };
        if let Some(derivation) = derivation {
            let mv = TietzeMove::RemoveRelator {
                index: i,
                derivation,
            };
            cur = apply_move(&cur, &mv)?.0;
            trace.moves.push(mv);
        }
    }
    Ok((cur, trace))
}
