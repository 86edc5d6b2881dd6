use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use super::{build_ball, pi1_generators, Ball, BallError};
use crate::backends::WordOracle;
use crate::words::{Alphabet, Presentation, Word};

/// A free loop: a word read from a base vertex of the region.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LoopState {
    pub base: usize,
    pub word: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    /// Cyclic free reduction followed by rotation to the canonical base.
    FreeReduction,
    /// Rotate the loop to start at `start`, then replace its first `len`
    /// letters `u` by `c^-1`, where `u c` is rotation `rotation` of
    /// relator `relator` (inverted if `inverted`).
    Relator {
        start: usize,
        len: usize,
        relator: usize,
        inverted: bool,
        rotation: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomotopyMove {
    pub kind: MoveKind,
    pub before: LoopState,
    pub after: LoopState,
}

/// A replayable sequence of moves ending at the trivial loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub start: LoopState,
    pub moves: Vec<HomotopyMove>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Witness(Witness),
    /// Every reachable state within the caps was visited without success.
    Exhausted {
        states: usize,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Witness(w) => Some(w),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchCaps {
    /// Maximum number of loop states expanded.
    pub states: usize,
    /// Loops longer than this are not explored.
    pub max_len: usize,
}

impl Default for SearchCaps {
    fn default() -> Self {
        SearchCaps {
            states: 20_000,
            max_len: 24,
        }
    }
}

/// Cyclically reduced, nonempty relator cores.
fn relator_cores(alpha: &Alphabet, relators: &[Word]) -> Vec<Word> {
    relators.iter().map(|r| alpha.cyclic_reduce(r).1).collect()
}

/// Cyclically reduces, moving the base along the stripped prefix, then picks
/// the least `(word, base)` among all rotations.
fn canonical(region: &Ball, s: &LoopState) -> Option<LoopState> {
    let alpha = region.presentation().alphabet();
    let (prefix, core) = alpha.cyclic_reduce(&s.word);
    // the free reduction may also cancel at the front, so walk the reduced prefix
    let reduced = alpha.free_reduce(&s.word);
    debug_assert!(reduced.starts_with(&prefix));
    let base = region.walk(s.base, &prefix)?;
    if core.is_empty() {
        return Some(LoopState {
            base: 0,
            word: Word::empty(),
        });
    }
    let mut best: Option<LoopState> = None;
    let mut v = base;
    for k in 0..core.len() {
        let cand = LoopState {
            base: v,
            word: core.rotate(k),
        };
        if best
            .as_ref()
            .is_none_or(|b| (&cand.word, cand.base) < (&b.word, b.base))
        {
            best = Some(cand);
        }
        v = region.step(v, core[k])?;
    }
    best
}

fn is_closed(region: &Ball, s: &LoopState) -> bool {
    region.walk(s.base, &s.word) == Some(s.base)
}

fn rotated(region: &Ball, s: &LoopState, start: usize) -> Option<LoopState> {
    let base = region.walk(s.base, &Word::from(s.word[..start].to_vec()))?;
    Some(LoopState {
        base,
        word: s.word.rotate(start),
    })
}

fn relator_rotation(
    alpha: &Alphabet,
    cores: &[Word],
    relator: usize,
    inverted: bool,
    rotation: usize,
) -> Word {
    let r = if inverted {
        alpha.inverse(&cores[relator])
    } else {
        cores[relator].clone()
    };
    r.rotate(rotation)
}

fn apply_relator_move(
    region: &Ball,
    cores: &[Word],
    s: &LoopState,
    start: usize,
    len: usize,
    relator: usize,
    inverted: bool,
    rotation: usize,
) -> Option<LoopState> {
    let alpha = region.presentation().alphabet();
    let rho = relator_rotation(alpha, cores, relator, inverted, rotation);
    let b = rotated(region, s, start)?;
    if len == 0 || len > b.word.len() || len > rho.len() || b.word[..len] != rho[..len] {
        return None;
    }
    let c = Word::from(rho[len..].to_vec());
    let word = alpha.inverse(&c).then(&Word::from(b.word[len..].to_vec()));
    let out = LoopState { base: b.base, word };
    // the new loop must stay inside the region
    region.trace(out.base, &out.word)?;
    Some(out)
}

impl Witness {
    /// Re-applies every move from scratch, checking that each loop is closed
    /// inside `region` and that the last one is trivial.
    pub fn replays(&self, region: &Ball, relators: &[Word]) -> bool {
        let alpha = region.presentation().alphabet();
        let cores = relator_cores(alpha, relators);
        let mut cur = self.start.clone();
        if !is_closed(region, &cur) {
            return false;
        }
        for m in &self.moves {
            if m.before != cur {
                return false;
            }
            let next = match m.kind {
                MoveKind::FreeReduction => canonical(region, &cur),
                MoveKind::Relator {
                    start,
                    len,
                    relator,
                    inverted,
                    rotation,
                } => {
                    if relator >= cores.len() {
                        return false;
                    }
                    apply_relator_move(
                        region, &cores, &cur, start, len, relator, inverted, rotation,
                    )
                }
            };
            match next {
                Some(n) if n == m.after && is_closed(region, &n) => cur = n,
                _ => return false,
            }
        }
        cur.word.is_empty()
    }

    pub fn relator_moves(&self) -> usize {
        self.moves
            .iter()
            .filter(|m| matches!(m.kind, MoveKind::Relator { .. }))
            .count()
    }
}

/// Breadth-first search for a null-homotopy of `loop_word` (read from
/// vertex `base`) inside `region`, using `relators` as 2-cells.
pub fn null_homotopy_search(
    region: &Ball,
    relators: &[Word],
    base: usize,
    loop_word: &Word,
    caps: SearchCaps,
) -> Result<SearchOutcome, BallError> {
    let start = LoopState {
        base,
        word: loop_word.clone(),
    };
    if base >= region.vertices().len() || !is_closed(region, &start) {
        return Err(BallError::NotClosed);
    }
    let alpha = region.presentation().alphabet();
    let cores: Vec<Word> = relator_cores(alpha, relators);
    let live: Vec<usize> = (0..cores.len()).filter(|&i| !cores[i].is_empty()).collect();

    let mut prefix_moves = Vec::new();
    let first = canonical(region, &start).ok_or(BallError::NotClosed)?;
    if first != start {
        prefix_moves.push(HomotopyMove {
            kind: MoveKind::FreeReduction,
            before: start.clone(),
            after: first.clone(),
        });
    }
    let finish = |path: Vec<HomotopyMove>| {
        let mut moves = prefix_moves.clone();
        moves.extend(path);
        SearchOutcome::Witness(Witness {
            start: start.clone(),
            moves,
        })
    };
    if first.word.is_empty() {
        return Ok(finish(Vec::new()));
    }

    // parent links: state -> (previous state, moves leading here)
    let mut parent: HashMap<LoopState, Option<(LoopState, Vec<HomotopyMove>)>> = HashMap::new();
    parent.insert(first.clone(), None);
    let mut queue = VecDeque::from([first]);
    let mut expanded = 0;
    while let Some(s) = queue.pop_front() {
        if expanded == caps.states {
            return Ok(SearchOutcome::Exhausted { states: expanded });
        }
        expanded += 1;
        let n = s.word.len();
        for start in 0..n {
            for &ri in &live {
                let rlen = cores[ri].len();
                for inverted in [false, true] {
                    for rotation in 0..rlen {
                        for len in 1..=n.min(rlen) {
                            let Some(raw) = apply_relator_move(
                                region, &cores, &s, start, len, ri, inverted, rotation,
                            ) else {
                                continue;
                            };
                            if raw.word.len() > caps.max_len {
                                continue;
                            }
                            let Some(canon) = canonical(region, &raw) else {
                                continue;
                            };
                            if parent.contains_key(&canon) {
                                continue;
                            }
                            let mut step = vec![HomotopyMove {
                                kind: MoveKind::Relator {
                                    start,
                                    len,
                                    relator: ri,
                                    inverted,
                                    rotation,
                                },
                                before: s.clone(),
                                after: raw.clone(),
                            }];
                            if canon != raw {
                                step.push(HomotopyMove {
                                    kind: MoveKind::FreeReduction,
                                    before: raw,
                                    after: canon.clone(),
                                });
                            }
                            parent.insert(canon.clone(), Some((s.clone(), step)));
                            if canon.word.is_empty() {
                                let mut path = Vec::new();
                                let mut cur = canon;
                                while let Some(Some((prev, moves))) = parent.get(&cur) {
                                    path.splice(0..0, moves.iter().cloned());
                                    cur = prev.clone();
                                }
                                return Ok(finish(path));
                            }
                            queue.push_back(canon);
                        }
                    }
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted { states: expanded })
}

/// Outcome of the connectivity-radius search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum KillRadius {
    Found(usize),
    Exhausted { r_max: usize },
}

/// Smallest `R` in `[r, r_max]` such that every loop generator of `B(r)`
/// bounds inside `B(R)` using the presentation's relator cells.
pub fn pi1_kill_radius(
    oracle: &dyn WordOracle,
    p: &Presentation,
    r: usize,
    r_max: usize,
    caps: SearchCaps,
) -> Result<KillRadius, BallError> {
    let ball = build_ball(oracle, p, r, &Word::empty())?;
    let gens = pi1_generators(&ball)?;
    let relators: Vec<Word> = p.nondegenerate_relators().map(|(_, w)| w.clone()).collect();
    for big_r in r..=r_max {
        let region = build_ball(oracle, p, big_r, &Word::empty())?;
        let base = region
            .basepoint_index()
            .expect("balls contain their basepoint");
        let mut all = true;
        for g in &gens.generators {
            let out = null_homotopy_search(&region, &relators, base, g, caps)?;
            if out.witness().is_none() {
                all = false;
                break;
            }
        }
        if all {
            return Ok(KillRadius::Found(big_r));
        }
    }
    Ok(KillRadius::Exhausted { r_max })
}

/// Cyclically reduced words of length below `c` that are trivial in the
/// group, one per cyclic class up to inversion.
pub fn virtual_relators(oracle: &dyn WordOracle, c: usize) -> Vec<Word> {
    let alpha = oracle.alphabet();
    let letters = alpha.letters();
    let mut out: Vec<Word> = Vec::new();
    let mut layer = vec![Word::empty()];
    for _ in 1..c {
        let mut next = Vec::new();
        for w in &layer {
            for &l in &letters {
                if w.last().is_some_and(|&m| m == alpha.inverse_letter(l)) {
                    continue;
                }
                let mut v = w.clone();
                v.push(l);
                next.push(v);
            }
        }
        for w in &next {
            let cyclic = alpha.cyclic_reduce(w).1 == *w;
            if !cyclic || !oracle.is_identity(w) {
                continue;
            }
            let inv = alpha.inverse(w);
            let known = out.iter().any(|o| {
                o.len() == w.len() && (0..w.len()).any(|k| o.rotate(k) == *w || o.rotate(k) == inv)
            });
            if !known {
                out.push(w.clone());
            }
        }
        layer = next;
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1BoundedReport {
    pub radius: usize,
    pub bound: usize,
    pub generators: usize,
    pub virtual_relators: usize,
    /// Every generator is a product of conjugates of short loops.
    pub certified: bool,
}

/// Whether each loop generator of `B(r)` is, inside the 1-skeleton of
/// `B(r)`, a product of conjugates of loops shorter than `c`. A `false`
/// answer means no such expression was found within the caps.
pub fn check_pi1_bounded_balls(
    oracle: &dyn WordOracle,
    p: &Presentation,
    r: usize,
    c: usize,
    caps: SearchCaps,
) -> Result<Pi1BoundedReport, BallError> {
    let ball = build_ball(oracle, p, r, &Word::empty())?;
    let gens = pi1_generators(&ball)?;
    let short = virtual_relators(oracle, c);
    let base = ball
        .basepoint_index()
        .expect("balls contain their basepoint");
    let mut certified = true;
    for g in &gens.generators {
        if null_homotopy_search(&ball, &short, base, g, caps)?
            .witness()
            .is_none()
        {
            certified = false;
            break;
        }
    }
    Ok(Pi1BoundedReport {
        radius: r,
        bound: c,
        generators: gens.rank(),
        virtual_relators: short.len(),
        certified,
    })
}

/// Outcome of the isodiametric search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Isodiametric {
    Diameter(usize),
    Exhausted { d_max: usize },
}

/// Least `D <= d_max` such that `w` bounds a disc inside `B(D)` around the
/// identity.
pub fn isodiametric_estimate(
    oracle: &dyn WordOracle,
    p: &Presentation,
    w: &Word,
    d_max: usize,
    caps: SearchCaps,
) -> Result<Isodiametric, BallError> {
    if !oracle.is_identity(w) {
        return Err(BallError::NotNullHomotopic);
    }
    if w.is_empty() {
        return Ok(Isodiametric::Diameter(0));
    }
    let relators: Vec<Word> = p.nondegenerate_relators().map(|(_, r)| r.clone()).collect();
    for d in 0..=d_max {
        let region = build_ball(oracle, p, d, &Word::empty())?;
        let base = region
            .basepoint_index()
            .expect("balls contain their basepoint");
        if region.trace(base, w).is_none() {
            continue;
        }
        if null_homotopy_search(&region, &relators, base, w, caps)?
            .witness()
            .is_some()
        {
            return Ok(Isodiametric::Diameter(d));
        }
    }
    Ok(Isodiametric::Exhausted { d_max })
}
