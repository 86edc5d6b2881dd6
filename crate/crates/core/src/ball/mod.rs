//! Metric balls and spheres in Cayley 2-complexes.
//!
//! Vertices are oracle normal forms. A ball keeps its own adjacency table,
//! so loop tracing and null-homotopy search never go back to the oracle.

mod combing;
mod homotopy;
mod pi1;

use std::collections::HashMap;

use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::backends::WordOracle;
use crate::words::{Letter, Presentation, Word};

pub use combing::{geodesic_0_combing, Combing};
pub use homotopy::{
    check_pi1_bounded_balls, isodiametric_estimate, null_homotopy_search, pi1_kill_radius,
    virtual_relators, HomotopyMove, Isodiametric, KillRadius, LoopState, MoveKind,
    Pi1BoundedReport, SearchCaps, SearchOutcome, Witness,
};
pub use pi1::{pi1_generators, LoopClassSet, Pi1Resolution};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BallError {
    #[error("relator {index} (`{text}`) is not trivial under the oracle")]
    OracleMismatch { index: usize, text: String },
    #[error("oracle alphabet differs from the presentation alphabet")]
    AlphabetMismatch,
    #[error("complex is disconnected")]
    Disconnected,
    #[error("word is not a closed path in the region")]
    NotClosed,
    #[error("word is not trivial in the group")]
    NotNullHomotopic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub gen: usize,
    pub to: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Cell {
    pub base: usize,
    pub relator: usize,
}

/// A finite subcomplex of the Cayley complex: a ball `B(r)` or a sphere
/// `S(r)` around a basepoint.
#[derive(Debug, Clone)]
pub struct Ball {
    presentation: Presentation,
    radius: usize,
    sphere: bool,
    basepoint: Word,
    vertices: Vec<Word>,
    distance: Vec<usize>,
    index: HashMap<Word, usize>,
    edges: Vec<Edge>,
    cells: Vec<Cell>,
    /// `adjacency[v][slot(letter)]`, restricted to the vertex set
    adjacency: Vec<Vec<Option<usize>>>,
    letters: Vec<Letter>,
}

fn check_oracle(oracle: &dyn WordOracle, p: &Presentation) -> Result<(), BallError> {
    if !oracle.alphabet().same_as(p.alphabet()) {
        return Err(BallError::AlphabetMismatch);
    }
    for (index, r) in p.relators().iter().enumerate() {
        if !oracle.is_identity(r) {
            return Err(BallError::OracleMismatch {
                index,
                text: p.alphabet().format(r),
            });
        }
    }
    Ok(())
}

/// `B(r)` around `basepoint`: vertices within distance `r`, every edge
/// between them and every relator cell whose boundary vertices all lie in
/// the ball.
pub fn build_ball(
    oracle: &dyn WordOracle,
    p: &Presentation,
    r: usize,
    basepoint: &Word,
) -> Result<Ball, BallError> {
    Ball::build(oracle, p, r, basepoint, false)
}

/// `S(r)`: vertices at distance exactly `r` with the edges and cells among them.
pub fn build_sphere(
    oracle: &dyn WordOracle,
    p: &Presentation,
    r: usize,
    basepoint: &Word,
) -> Result<Ball, BallError> {
    Ball::build(oracle, p, r, basepoint, true)
}

impl Ball {
    fn build(
        oracle: &dyn WordOracle,
        p: &Presentation,
        r: usize,
        basepoint: &Word,
        sphere: bool,
    ) -> Result<Ball, BallError> {
        check_oracle(oracle, p)?;
        let alpha = p.alphabet();
        let letters = alpha.letters();
        let base = oracle.normal_form(basepoint);

        // breadth-first search over normal forms, frontier by frontier
        let mut dist: HashMap<Word, usize> = HashMap::from([(base.clone(), 0)]);
        let mut neighbours: HashMap<Word, Vec<Word>> = HashMap::new();
        let mut frontier = vec![base.clone()];
        for d in 0..=r {
            let expanded: Vec<(Word, Vec<Word>)> = frontier
                .par_iter()
                .map(|v| {
                    let nbrs = letters
                        .iter()
                        .map(|&l| {
                            let mut w = v.clone();
                            w.push(l);
                            oracle.normal_form(&w)
                        })
                        .collect();
                    (v.clone(), nbrs)
                })
                .collect();
            let mut next = Vec::new();
            for (v, nbrs) in expanded {
                if d < r {
                    for w in &nbrs {
                        if !dist.contains_key(w) {
                            dist.insert(w.clone(), d + 1);
                            next.push(w.clone());
                        }
                    }
                }
                neighbours.insert(v, nbrs);
            }
            frontier = next;
        }

        let mut vertices: Vec<Word> = dist
            .iter()
            .filter(|(_, &d)| !sphere || d == r)
            .map(|(w, _)| w.clone())
            .collect();
        vertices.sort();
        let index: HashMap<Word, usize> = vertices
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, w)| (w, i))
            .collect();
        let distance = vertices.iter().map(|w| dist[w]).collect();
        let adjacency: Vec<Vec<Option<usize>>> = vertices
            .iter()
            .map(|v| {
                neighbours[v]
                    .iter()
                    .map(|w| index.get(w).copied())
                    .collect()
            })
            .collect();

        let mut ball = Ball {
            presentation: p.clone(),
            radius: r,
            sphere,
            basepoint: base,
            vertices,
            distance,
            index,
            edges: Vec::new(),
            cells: Vec::new(),
            adjacency,
            letters,
        };
        ball.edges = ball.collect_edges();
        ball.cells = ball.collect_cells();
        Ok(ball)
    }

    fn collect_edges(&self) -> Vec<Edge> {
        let alpha = self.presentation.alphabet();
        let mut edges = Vec::new();
        for v in 0..self.vertices.len() {
            for g in 0..alpha.len() {
                let Some(w) = self.step(v, Letter::pos(g)) else {
                    continue;
                };
                // an involutive generator gives one undirected edge per pair
                if alpha.is_involutive(g) && w < v {
                    continue;
                }
                edges.push(Edge {
                    from: v,
                    gen: g,
                    to: w,
                });
            }
        }
        edges
    }

    fn collect_cells(&self) -> Vec<Cell> {
        let rels: Vec<usize> = self
            .presentation
            .nondegenerate_relators()
            .map(|(i, _)| i)
            .collect();
        let mut cells = Vec::new();
        for v in 0..self.vertices.len() {
            for &ri in &rels {
                if self.trace(v, self.presentation.relator(ri)).is_some() {
                    cells.push(Cell {
                        base: v,
                        relator: ri,
                    });
                }
            }
        }
        cells
    }

    fn slot(&self, l: Letter) -> usize {
        // letters() lists `g` then `g'` for ordinary generators
        self.letters
            .iter()
            .position(|&m| m == l)
            .expect("letter of the alphabet")
    }

    /// Neighbour of `v` along letter `l`, if inside.
    pub fn step(&self, v: usize, l: Letter) -> Option<usize> {
        let l = self.presentation.alphabet().normalize(l);
        self.adjacency[v][self.slot(l)]
    }

    /// Vertices visited by the path `w` from `v` (including both ends), or
    /// `None` if it leaves the complex.
    pub fn trace(&self, v: usize, w: &Word) -> Option<Vec<usize>> {
        let mut out = Vec::with_capacity(w.len() + 1);
        out.push(v);
        let mut cur = v;
        for &l in w.iter() {
            cur = self.step(cur, l)?;
            out.push(cur);
        }
        Some(out)
    }

    /// End vertex of the path `w` from `v`.
    pub fn walk(&self, v: usize, w: &Word) -> Option<usize> {
        w.iter().try_fold(v, |cur, &l| self.step(cur, l))
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn is_sphere(&self) -> bool {
        self.sphere
    }

    pub fn basepoint(&self) -> &Word {
        &self.basepoint
    }

    /// Index of the basepoint (absent for spheres of positive radius).
    pub fn basepoint_index(&self) -> Option<usize> {
        self.index.get(&self.basepoint).copied()
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn vertex_index(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn distance(&self, v: usize) -> usize {
        self.distance[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    /// `(V, E, C)`.
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.vertices.len(), self.edges.len(), self.cells.len())
    }

    /// `{vertices, edges:[[i, letter, j]], cells:[[base, relator]]}`.
    pub fn to_json(&self) -> Value {
        let alpha = self.presentation.alphabet();
        json!({
            "radius": self.radius,
            "sphere": self.sphere,
            "basepoint": alpha.format(&self.basepoint),
            "vertices": self.vertices.iter().map(|w| alpha.format(w)).collect::<Vec<_>>(),
            "edges": self.edges.iter().map(|e| json!([e.from, alpha.name(e.gen), e.to])).collect::<Vec<_>>(),
            "cells": self.cells.iter().map(|c| json!([c.base, c.relator])).collect::<Vec<_>>(),
        })
    }
}
