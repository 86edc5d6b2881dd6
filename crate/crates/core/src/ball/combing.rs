use serde::Serialize;

use super::{build_ball, pi1_generators, BallError};
use crate::backends::WordOracle;
use crate::words::{Presentation, Word};

/// Geodesic paths from every vertex of `B(r_max)` back to the basepoint,
/// together with the tameness check against the exhaustion by balls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Combing {
    pub radius: usize,
    /// Vertex normal forms, in ball order.
    pub vertices: Vec<String>,
    /// `paths[v]` lists the vertices from `v` down to the basepoint.
    pub paths: Vec<Vec<usize>>,
    /// For every path and every `n <= radius`, the indices of the path
    /// inside `B(n)` form a terminal segment.
    pub tame: bool,
}

/// Builds the combing from a breadth-first spanning tree, whose tree paths
/// are geodesics.
pub fn geodesic_0_combing(
    oracle: &dyn WordOracle,
    p: &Presentation,
    r_max: usize,
) -> Result<Combing, BallError> {
    if r_max == 0 {
        return Ok(Combing {
            radius: 0,
            vertices: Vec::new(),
            paths: Vec::new(),
            tame: true,
        });
    }
    let ball = build_ball(oracle, p, r_max, &Word::empty())?;
    let tree = pi1_generators(&ball)?;
    let n = ball.vertices().len();
    let paths: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut path = vec![v];
            let mut cur = v;
            while let Some((parent, _)) = tree.parent[cur] {
                path.push(parent);
                cur = parent;
            }
            path
        })
        .collect();
    let tame = paths.iter().all(|path| {
        (0..=r_max).all(|radius| {
            let inside: Vec<bool> = path.iter().map(|&v| ball.distance(v) <= radius).collect();
            match inside.iter().position(|&b| b) {
                Some(first) => inside[first..].iter().all(|&b| b),
                None => false,
            }
        })
    });
    let alpha = p.alphabet();
    Ok(Combing {
        radius: r_max,
        vertices: ball.vertices().iter().map(|w| alpha.format(w)).collect(),
        paths,
        tame,
    })
}
