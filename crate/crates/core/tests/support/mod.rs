//! Independent oracles for the integration tests. Nothing here calls into
//! the library's word-problem code: groups are counted by coset
//! enumeration, lattice balls by direct iteration and `B(1,n)` elements by
//! affine matrices over the rationals.
#![allow(dead_code)]

use std::collections::VecDeque;

use gpq::{Alphabet, Letter, Presentation, Word};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform letters, inverses allowed on plain generators.
pub fn random_word(rng: &mut ChaCha8Rng, a: &Alphabet, len: usize) -> Word {
    let letters = a.letters();
    (0..len)
        .map(|_| letters[rng.gen_range(0..letters.len())])
        .collect()
}

pub fn random_positive_word(rng: &mut ChaCha8Rng, a: &Alphabet, len: usize) -> Word {
    (0..len)
        .map(|_| Letter::pos(rng.gen_range(0..a.len())))
        .collect()
}

/// All words of length exactly `n` over the signed letters.
pub fn all_words(a: &Alphabet, n: usize) -> Vec<Word> {
    let letters = a.letters();
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| {
                letters.iter().map(move |&l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
    }
    out
}

/// Number of points of `Z^k` with `|x_1| + ... + |x_k| <= r`.
pub fn lattice_points(k: usize, r: i64) -> usize {
    fn go(k: usize, budget: i64) -> usize {
        if k == 0 {
            return 1;
        }
        (-budget..=budget)
            .map(|x| go(k - 1, budget - x.abs()))
            .sum()
    }
    go(k, r)
}

/// Order of the group presented by `p`, by Todd–Coxeter enumeration of the
/// cosets of the trivial subgroup. `None` if more than `limit` cosets are
/// ever live at once.
pub fn group_order(p: &Presentation, limit: usize) -> Option<usize> {
    let a = p.alphabet();
    let mut rels: Vec<Vec<usize>> = p.relators().iter().map(|r| columns(r)).collect();
    for g in 0..a.len() {
        if a.is_involutive(g) {
            rels.push(vec![2 * g, 2 * g]);
        }
    }
    let mut ct = CosetTable::new(2 * a.len());
    let mut c = 0;
    while c < ct.table.len() {
        if ct.is_live(c) {
            for r in &rels {
                ct.scan_and_fill(c, r);
                if !ct.is_live(c) {
                    break;
                }
            }
            for x in 0..ct.cols {
                if ct.is_live(c) && ct.table[c][x].is_none() {
                    ct.define(c, x);
                }
            }
            if ct.live_count() > limit {
                return None;
            }
        }
        c += 1;
    }
    Some(ct.live_count())
}

fn columns(w: &Word) -> Vec<usize> {
    w.iter().map(|l| 2 * l.gen + l.inv as usize).collect()
}

struct CosetTable {
    cols: usize,
    table: Vec<Vec<Option<usize>>>,
    parent: Vec<usize>,
    queue: VecDeque<usize>,
}

impl CosetTable {
    fn new(cols: usize) -> Self {
        CosetTable {
            cols,
            table: vec![vec![None; cols]],
            parent: vec![0],
            queue: VecDeque::new(),
        }
    }

    fn inv(x: usize) -> usize {
        x ^ 1
    }

    fn is_live(&self, c: usize) -> bool {
        self.parent[c] == c
    }

    fn live_count(&self) -> usize {
        (0..self.parent.len()).filter(|&c| self.is_live(c)).count()
    }

    fn rep(&mut self, mut c: usize) -> usize {
        while self.parent[c] != c {
            self.parent[c] = self.parent[self.parent[c]];
            c = self.parent[c];
        }
        c
    }

    fn define(&mut self, c: usize, x: usize) {
        let n = self.table.len();
        self.table.push(vec![None; self.cols]);
        self.parent.push(n);
        self.table[c][x] = Some(n);
        self.table[n][Self::inv(x)] = Some(c);
    }

    fn scan_and_fill(&mut self, c: usize, w: &[usize]) {
        if w.is_empty() {
            return;
        }
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, w.len() - 1);
        loop {
            while i <= j {
                match self.table[f][w[i]] {
                    Some(n) => {
                        f = n;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i > j {
                if f != b {
                    self.coincidence(f, b);
                }
                return;
            }
            while j >= i {
                match self.table[b][Self::inv(w[j])] {
                    Some(n) => {
                        b = n;
                        if j == 0 {
                            // the whole word was scanned backwards
                            self.coincidence(f, b);
                            return;
                        }
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j < i {
                self.coincidence(f, b);
                return;
            }
            if i == j {
                self.table[f][w[i]] = Some(b);
                self.table[b][Self::inv(w[i])] = Some(f);
                return;
            }
            self.define(f, w[i]);
        }
    }

    fn merge(&mut self, k: usize, l: usize) {
        let (k, l) = (self.rep(k), self.rep(l));
        if k != l {
            let (lo, hi) = (k.min(l), k.max(l));
            self.parent[hi] = lo;
            self.queue.push_back(hi);
        }
    }

    fn coincidence(&mut self, a: usize, b: usize) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let Some(f) = self.table[e][x] else { continue };
                self.table[f][Self::inv(x)] = None;
                let (e1, f1) = (self.rep(e), self.rep(f));
                if let Some(t) = self.table[e1][x] {
                    self.merge(f1, t);
                } else if let Some(t) = self.table[f1][Self::inv(x)] {
                    self.merge(e1, t);
                } else {
                    self.table[e1][x] = Some(f1);
                    self.table[f1][Self::inv(x)] = Some(e1);
                }
            }
        }
    }
}

/// `p/q` with `q > 0` in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Frac(i128, i128);

impl Frac {
    fn new(p: i128, q: i128) -> Frac {
        let g = num_integer::gcd(p, q).max(1);
        let s = if q < 0 { -1 } else { 1 };
        Frac(s * p / g, s * q / g)
    }
    fn int(p: i128) -> Frac {
        Frac(p, 1)
    }
    fn add(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.1 + o.0 * self.1, self.1 * o.1)
    }
    fn mul(self, o: Frac) -> Frac {
        Frac::new(self.0 * o.0, self.1 * o.1)
    }
}

/// The affine map `x -> s x + t` as `(s, t)`.
pub type Affine = (Frac, Frac);

/// Faithful image of `B(1,n) = <a, b | a b a^-1 = b^n>` in the affine
/// group of `Q`: `a` scales by `n`, `b` translates by 1. Words act left to
/// right as matrix products `[[s, t], [0, 1]]`.
pub fn bs_affine(n: i128, w: &Word) -> Affine {
    let mut m: Affine = (Frac::int(1), Frac::int(0));
    for l in w.iter() {
        let g: Affine = match (l.gen, l.inv) {
            (0, false) => (Frac::int(n), Frac::int(0)),
            (0, true) => (Frac::new(1, n), Frac::int(0)),
            (1, false) => (Frac::int(1), Frac::int(1)),
            (1, true) => (Frac::int(1), Frac::int(-1)),
            _ => unreachable!("B(1,n) has two generators"),
        };
        // [[s1,t1],[0,1]] * [[s2,t2],[0,1]] = [[s1 s2, s1 t2 + t1],[0,1]]
        m = (m.0.mul(g.0), m.0.mul(g.1).add(m.1));
    }
    m
}

/// Permutation images of each generator, composed left to right.
pub fn permutation_of(gens: &[Vec<usize>], w: &Word, degree: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..degree).collect();
    for l in w.iter() {
        let g = &gens[l.gen];
        let g = if l.inv { invert(g) } else { g.clone() };
        // apply p, then g
        p = p.iter().map(|&i| g[i]).collect();
    }
    p
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        q[j] = i;
    }
    q
}
