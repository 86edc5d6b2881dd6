use serde::Serialize;

use super::EndoError;
use crate::words::{Letter, Substitution, Word};

/// Result of parsing a word as a concatenation of substitution images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decoded {
    #[serde(skip)]
    pub word: Word,
    /// Number of distinct parses, saturating at `u64::MAX`.
    pub parses: u64,
}

impl Decoded {
    pub fn is_ambiguous(&self) -> bool {
        self.parses > 1
    }
}

/// Finds `v` with `s(v)` letter-identical to `w`.
///
/// The image code need not be prefix-free, so this is a dynamic program over
/// suffixes. Among all parses the shortlex-least preimage is returned, and
/// the parse count flags ambiguity.
pub fn sigma_decode(s: &Substitution, w: &Word) -> Result<Decoded, EndoError> {
    if !w.is_positive() {
        return Err(EndoError::NotPositive);
    }
    let n = w.len();
    let images = s.images();
    // best[i]: fewest letters parsing w[i..]; count[i]: number of parses
    let mut best: Vec<Option<usize>> = vec![None; n + 1];
    let mut count = vec![0u64; n + 1];
    best[n] = Some(0);
    count[n] = 1;
    for i in (0..n).rev() {
        for img in images {
            let end = i + img.len();
            if end > n || w[i..end] != img[..] {
                continue;
            }
            if let Some(b) = best[end] {
                count[i] = count[i].saturating_add(count[end]);
                if best[i].is_none_or(|cur| b + 1 < cur) {
                    best[i] = Some(b + 1);
                }
            }
        }
    }
    if best[0].is_none() {
        return Err(EndoError::NotInImage);
    }
    let mut out = Word::empty();
    let mut i = 0;
    while i < n {
        let need = best[i].expect("reachable suffix") - 1;
        let (g, img) = images
            .iter()
            .enumerate()
            .find(|(_, img)| {
                let end = i + img.len();
                end <= n && w[i..end] == img[..] && best[end] == Some(need)
            })
            .expect("a letter realizing the optimum");
        out.push(Letter::pos(g));
        i += img.len();
    }
    Ok(Decoded {
        word: out,
        parses: count[0],
    })
}
