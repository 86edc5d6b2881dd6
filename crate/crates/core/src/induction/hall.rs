use super::InductionError;
use crate::words::{Alphabet, Letter, Presentation, Word};

fn shift(w: &Word, by: usize) -> Word {
    w.iter()
        .map(|l| Letter {
            gen: l.gen + by,
            inv: l.inv,
        })
        .collect()
}

fn joined(
    a: &Alphabet,
    b: &Alphabet,
    rename: impl Fn(&str, usize) -> String,
) -> Result<Alphabet, InductionError> {
    let left = (0..a.len()).map(|g| (rename(a.name(g), 1), a.is_involutive(g)));
    let right = (0..b.len()).map(|g| (rename(b.name(g), 2), b.is_involutive(g)));
    Ok(Alphabet::new(left.chain(right))?)
}

/// Presentation of an extension `1 -> K -> G -> F -> 1`.
///
/// Generators are those of `K` followed by those of `F` (lifted). Relators:
/// the relators of `K`; `S_n A_n^-1` for each relator `S_n` of `F`, where
/// `a_words[n]` is the `K`-word its lift equals; and `m_j k_i m_j^-1 B_ji^-1`
/// with `b_words[j][i]` the `K`-word of that conjugate.
pub fn hall_compose(
    pk: &Presentation,
    pf: &Presentation,
    a_words: &[Word],
    b_words: &[Vec<Word>],
) -> Result<Presentation, InductionError> {
    let (ka, fa) = (pk.alphabet(), pf.alphabet());
    if a_words.len() != pf.relators().len() {
        return Err(InductionError::ArityMismatch {
            expected: pf.relators().len(),
            found: a_words.len(),
        });
    }
    if b_words.len() != fa.len() {
        return Err(InductionError::ArityMismatch {
            expected: fa.len(),
            found: b_words.len(),
        });
    }
    if let Some(row) = b_words.iter().find(|row| row.len() != ka.len()) {
        return Err(InductionError::ArityMismatch {
            expected: ka.len(),
            found: row.len(),
        });
    }
    for w in a_words.iter().chain(b_words.iter().flatten()) {
        ka.check_word(w)?;
    }
    let alpha = joined(ka, fa, |n, _| n.to_string())?;
    let k = ka.len();
    let mut rels: Vec<Word> = pk.relators().to_vec();
    for (s, a) in pf.relators().iter().zip(a_words) {
        rels.push(shift(s, k).then(&alpha.inverse(a)));
    }
    for (j, row) in b_words.iter().enumerate() {
        let m = Word::from(vec![Letter::pos(k + j)]);
        for (i, b) in row.iter().enumerate() {
            let conj = Word::concat([&m, &Word::from(vec![Letter::pos(i)]), &alpha.inverse(&m)]);
            rels.push(conj.then(&alpha.inverse(b)));
        }
    }
    Ok(Presentation::new(
        format!("{}.{}", pk.name, pf.name),
        alpha,
        rels,
    )?)
}

/// Direct product: generators `g1` and `h2`, both relator lists, and every
/// commutator `[g1, h2]`.
pub fn product_presentation(p1: &Presentation, p2: &Presentation) -> Presentation {
    let (a1, a2) = (p1.alphabet(), p2.alphabet());
    let alpha = joined(a1, a2, |n, i| format!("{n}{i}")).expect("subscripts keep names apart");
    let k = a1.len();
    let mut rels: Vec<Word> = p1.relators().to_vec();
    rels.extend(p2.relators().iter().map(|r| shift(r, k)));
    for g in 0..k {
        for h in 0..a2.len() {
            let u = Word::from(vec![Letter::pos(g)]);
            let v = Word::from(vec![Letter::pos(k + h)]);
            rels.push(alpha.commutator(&u, &v));
        }
    }
    Presentation::new(format!("{}x{}", p1.name, p2.name), alpha, rels)
        .expect("words over the joined alphabet")
}
