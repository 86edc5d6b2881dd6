use std::collections::VecDeque;

use serde::Serialize;

use super::{Ball, BallError};
use crate::words::{Letter, Word};

/// Generators of the fundamental group of a ball's 1-skeleton.
///
/// A breadth-first spanning tree from the basepoint; each non-tree edge
/// `(u, g, w)` gives the loop `path(u) g path(w)^-1`.
#[derive(Debug, Clone)]
pub struct LoopClassSet {
    /// Per vertex, the tree edge `(parent, letter)` reaching it.
    pub parent: Vec<Option<(usize, Letter)>>,
    /// Indices into [`Ball::edges`] of the non-tree edges.
    pub non_tree_edges: Vec<usize>,
    pub generators: Vec<Word>,
}

impl LoopClassSet {
    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// Tree path from the root to `v`.
    pub fn path_to(&self, v: usize) -> Word {
        let mut rev = Vec::new();
        let mut cur = v;
        while let Some((p, l)) = self.parent[cur] {
            rev.push(l);
            cur = p;
        }
        rev.reverse();
        Word::from(rev)
    }
}

pub fn pi1_generators(b: &Ball) -> Result<LoopClassSet, BallError> {
    let n = b.vertices().len();
    let root = b.basepoint_index().unwrap_or(0);
    let alpha = b.presentation().alphabet();
    let mut parent: Vec<Option<(usize, Letter)>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut tree_edge = vec![false; b.edges().len()];
    // (vertex, letter) -> edge index, for marking tree edges
    let mut edge_of = std::collections::HashMap::new();
    for (i, e) in b.edges().iter().enumerate() {
        edge_of.insert((e.from, Letter::pos(e.gen)), i);
        let back = alpha.inverse_letter(Letter::pos(e.gen));
        edge_of.entry((e.to, back)).or_insert(i);
    }
    let mut queue = VecDeque::from([root]);
    if n > 0 {
        seen[root] = true;
    }
    while let Some(v) = queue.pop_front() {
        for l in alpha.letters() {
            let Some(w) = b.step(v, l) else { continue };
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some((v, l));
            tree_edge[edge_of[&(v, l)]] = true;
            queue.push_back(w);
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(BallError::Disconnected);
    }
    let mut set = LoopClassSet {
        parent,
        non_tree_edges: Vec::new(),
        generators: Vec::new(),
    };
    for (i, e) in b.edges().iter().enumerate() {
        if tree_edge[i] {
            continue;
        }
        let mut g = set.path_to(e.from);
        g.push(Letter::pos(e.gen));
        g.extend_from(&alpha.inverse(&set.path_to(e.to)));
        assert!(
            g.len() <= 2 * b.radius() + 1 || b.is_sphere(),
            "loop longer than 2r+1 in B({})",
            b.radius()
        );
        set.non_tree_edges.push(i);
        set.generators.push(g);
    }
    Ok(set)
}

/// Certificate that a compact complex is its own resolution: the identity
/// map on cells, valid when the complex is simply connected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Pi1Resolution {
    pub source: String,
    pub resolves: String,
    pub vertex_map: Vec<usize>,
    pub edge_map: Vec<usize>,
    pub cell_map: Vec<usize>,
}

impl Pi1Resolution {
    /// Identity resolution of a ball known to be simply connected.
    pub fn identity(b: &Ball) -> Self {
        let (v, e, c) = b.counts();
        let label = format!("B({}) of {}", b.radius(), b.presentation().name);
        Pi1Resolution {
            source: label.clone(),
            resolves: label,
            vertex_map: (0..v).collect(),
            edge_map: (0..e).collect(),
            cell_map: (0..c).collect(),
        }
    }

    /// The maps restrict to bijections over the resolved complex.
    pub fn is_bijective_over(&self, b: &Ball) -> bool {
        fn bij(m: &[usize], n: usize) -> bool {
            let mut seen = vec![false; n];
            m.len() == n
                && m.iter()
                    .all(|&x| x < n && !std::mem::replace(&mut seen[x], true))
        }
        let (v, e, c) = b.counts();
        bij(&self.vertex_map, v) && bij(&self.edge_map, e) && bij(&self.cell_map, c)
    }
}
