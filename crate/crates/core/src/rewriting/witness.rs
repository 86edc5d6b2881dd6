use rayon::prelude::*;

use super::{
    word_count_upto, words_of_length, ReductionTrace, RewriteError, RewritingSystem, Strategy,
};
use crate::words::{Alphabet, Presentation, Word};

/// Outcome of the ball simple-connectivity witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BallWitness {
    /// Every identity word of length at most `2r + 1` reduced to the empty
    /// word through words no longer than `2r + 1`.
    Certified {
        radius: usize,
        words_checked: usize,
        traces: Vec<(Word, ReductionTrace)>,
    },
    /// First identity word whose reduction leaves the length bound.
    Failure(Word),
}

fn is_rotation(a: &Word, b: &Word) -> bool {
    a.len() == b.len() && (0..a.len().max(1)).any(|k| a.rotate(k) == *b)
}

/// Whether the relation `u = v` is, up to free reduction and cyclic
/// conjugation, one of the relators or its inverse.
fn relation_is_present(alpha: &Alphabet, p: &Presentation, u: &Word, v: &Word) -> bool {
    let rel = alpha.free_reduce(&u.then(&alpha.inverse(v)));
    if rel.is_empty() {
        return true;
    }
    let (_, core) = alpha.cyclic_reduce(&rel);
    p.relators().iter().any(|r| {
        let (_, rc) = alpha.cyclic_reduce(r);
        is_rotation(&core, &rc) || is_rotation(&core, &alpha.inverse(&rc))
    })
}

/// Reduces every word of length at most `2r + 1` that rewrites to the empty
/// word and checks that each intermediate word stays within that length, so
/// the reduction sequence is a null-homotopy inside `B(r)`.
pub fn ball_null_homotopy_witness(
    rs: &RewritingSystem,
    p: &Presentation,
    r: usize,
    word_cap: u128,
    step_limit: usize,
) -> Result<BallWitness, RewriteError> {
    if let Some(i) = rs.first_length_increasing() {
        let rule = &rs.rules()[i];
        return Err(RewriteError::NotGeodesic {
            rule: i,
            lhs: rule.lhs.len(),
            rhs: rule.rhs.len(),
        });
    }
    let alpha = rs.alphabet();
    if !alpha.same_as(p.alphabet()) {
        return Err(RewriteError::Word(
            crate::words::WordError::AlphabetMismatch,
        ));
    }
    for (i, rule) in rs.rules().iter().enumerate() {
        if !relation_is_present(alpha, p, &rule.lhs, &rule.rhs) {
            return Err(RewriteError::MissingRelator(i));
        }
    }
    let bound = 2 * r + 1;
    let letters = alpha.letters();
    let count = word_count_upto(letters.len(), bound);
    if count > word_cap {
        return Err(RewriteError::CombinatorialExplosion {
            count,
            cap: word_cap,
        });
    }
    let mut traces = Vec::new();
    let mut words_checked = 0;
    for n in 0..=bound {
        let words = words_of_length(&letters, n);
        words_checked += words.len();
        let results: Vec<Result<Option<(Word, ReductionTrace)>, RewriteError>> = words
            .into_par_iter()
            .map(|w| {
                let (nf, tr) = rs.reduce(&w, Strategy::default(), step_limit)?;
                Ok(nf.is_empty().then_some((w, tr)))
            })
            .collect();
        for res in results {
            let Some((w, tr)) = res? else { continue };
            if tr.max_length() > bound {
                return Ok(BallWitness::Failure(w));
            }
            traces.push((w, tr));
        }
    }
    Ok(BallWitness::Certified {
        radius: r,
        words_checked,
        traces,
    })
}
