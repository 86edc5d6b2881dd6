use std::collections::HashMap;

use serde::Serialize;

use super::{OracleError, WordOracle};
use crate::words::{Alphabet, Letter, Word};

/// A finite group stored as a full multiplication table.
///
/// Elements are numbered in shortlex order of their least representing word,
/// so index 0 is the identity and each element is named by that word (`e`
/// for the identity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteGroupTable {
    alphabet: Alphabet,
    names: Vec<String>,
    #[serde(skip)]
    words: Vec<Word>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    generator_map: Vec<usize>,
    #[serde(skip)]
    by_name: HashMap<String, usize>,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    // apply p, then q
    p.iter().map(|&x| q[x]).collect()
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        out[x] = i;
    }
    out
}

impl FiniteGroupTable {
    /// Closes the permutations given per generator into the group they
    /// generate. The word `u v` acts as `u` followed by `v`.
    pub fn from_permutations(
        alphabet: Alphabet,
        perms: Vec<Vec<usize>>,
    ) -> Result<Self, OracleError> {
        if perms.len() != alphabet.len() {
            return Err(OracleError::Word(
                crate::words::WordError::SubstitutionArity {
                    expected: alphabet.len(),
                    found: perms.len(),
                },
            ));
        }
        let degree = perms.first().map_or(1, |p| p.len());
        for (g, p) in perms.iter().enumerate() {
            let mut seen = vec![false; degree];
            let ok = p.len() == degree
                && p.iter()
                    .all(|&x| x < degree && !std::mem::replace(&mut seen[x], true));
            if !ok {
                return Err(OracleError::BadPermutation(alphabet.name(g).to_string()));
            }
            if alphabet.is_involutive(g) && compose(p, p) != (0..degree).collect::<Vec<_>>() {
                return Err(OracleError::NotInvolution(alphabet.name(g).to_string()));
            }
        }
        let letters = alphabet.letters();
        let letter_perm = |l: Letter| -> Vec<usize> {
            if l.inv {
                invert(&perms[l.gen])
            } else {
                perms[l.gen].clone()
            }
        };
        let letter_perms: Vec<Vec<usize>> = letters.iter().map(|&l| letter_perm(l)).collect();

        let identity: Vec<usize> = (0..degree).collect();
        let mut elems = vec![identity.clone()];
        let mut words = vec![Word::empty()];
        let mut index: HashMap<Vec<usize>, usize> = HashMap::from([(identity, 0)]);
        let mut head = 0;
        while head < elems.len() {
            for (li, &l) in letters.iter().enumerate() {
                let next = compose(&elems[head], &letter_perms[li]);
                if !index.contains_key(&next) {
                    index.insert(next.clone(), elems.len());
                    let mut w = words[head].clone();
                    w.push(l);
                    words.push(w);
                    elems.push(next);
                }
            }
            head += 1;
        }

        let n = elems.len();
        let mul: Vec<Vec<usize>> = elems
            .iter()
            .map(|x| elems.iter().map(|y| index[&compose(x, y)]).collect())
            .collect();
        let inv: Vec<usize> = elems.iter().map(|x| index[&invert(x)]).collect();
        let generator_map = perms.iter().map(|p| index[p]).collect();
        let names: Vec<String> = words
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "e".to_string()
                } else {
                    alphabet.compact(w)
                }
            })
            .collect();
        let by_name = names
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        debug_assert_eq!(names.len(), n);
        Ok(FiniteGroupTable {
            alphabet,
            names,
            words,
            mul,
            inv,
            generator_map,
            by_name,
        })
    }

    /// Cyclic group of order `n` on one generator.
    pub fn cyclic(n: usize, name: &str) -> Result<Self, OracleError> {
        if n == 0 {
            return Err(OracleError::BadOrder(0));
        }
        let alphabet = Alphabet::new([(name, n == 2)])?;
        let perm = (0..n).map(|i| (i + 1) % n).collect();
        Self::from_permutations(alphabet, vec![perm])
    }

    /// The trivial group on no generators.
    pub fn trivial() -> Self {
        Self::from_permutations(Alphabet::empty(), Vec::new()).expect("trivial group")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn element(&self, name: &str) -> Result<usize, OracleError> {
        self.by_name
            .get(name)
            .copied()
            .ok_or_else(|| OracleError::UnknownElement(name.to_string()))
    }

    /// Shortlex-least word for element `i`.
    pub fn word_of(&self, i: usize) -> &Word {
        &self.words[i]
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.mul[i][j]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.inv[i]
    }

    pub fn generator_element(&self, gen: usize) -> usize {
        self.generator_map[gen]
    }

    pub fn letter_element(&self, l: Letter) -> usize {
        let g = self.generator_map[l.gen];
        if l.inv {
            self.inv[g]
        } else {
            g
        }
    }

    /// Walks the table along `w`.
    pub fn evaluate(&self, w: &Word) -> usize {
        w.iter()
            .fold(0, |acc, &l| self.mul[acc][self.letter_element(l)])
    }

    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut cur = i;
        while cur != 0 {
            cur = self.mul[cur][i];
            k += 1;
        }
        k
    }

    /// Exhaustive associativity check, `O(n^3)`.
    pub fn is_associative(&self) -> bool {
        let n = self.order();
        (0..n).all(|x| {
            (0..n)
                .all(|y| (0..n).all(|z| self.mul[self.mul[x][y]][z] == self.mul[x][self.mul[y][z]]))
        })
    }
}

impl WordOracle for FiniteGroupTable {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    fn normal_form(&self, w: &Word) -> Word {
        self.words[self.evaluate(w)].clone()
    }

    fn is_identity(&self, w: &Word) -> bool {
        self.evaluate(w) == 0
    }

    fn describe(&self) -> String {
        format!("finite group of order {}", self.order())
    }
}

/// Dihedral group of the given order on involutive generators `x`, `y`.
pub fn dihedral_group(order: usize) -> Result<FiniteGroupTable, OracleError> {
    dihedral_group_with(order, ["x", "y"])
}

/// Dihedral group of order `2m` generated by two reflections whose product
/// has order `m`, acting on itself by right multiplication.
pub fn dihedral_group_with(
    order: usize,
    names: [&str; 2],
) -> Result<FiniteGroupTable, OracleError> {
    if order < 2 || order % 2 != 0 {
        return Err(OracleError::BadOrder(order));
    }
    let m = order / 2;
    // element r^k s^e stored as 2k + e
    let idx = |k: usize, e: usize| 2 * k + e;
    let mult = |(k1, e1): (usize, usize), (k2, e2): (usize, usize)| {
        let k = if e1 == 0 {
            (k1 + k2) % m
        } else {
            (k1 + m - k2) % m
        };
        (k, (e1 + e2) % 2)
    };
    let x = (0, 1);
    let y = mult(x, (1 % m, 0));
    let right = |g: (usize, usize)| -> Vec<usize> {
        (0..order)
            .map(|i| {
                let (k, e) = mult((i / 2, i % 2), g);
                idx(k, e)
            })
            .collect()
    };
    let alphabet = Alphabet::involutive(&names);
    FiniteGroupTable::from_permutations(alphabet, vec![right(x), right(y)])
}
