//! Slow reference implementations used to re-check harness failures.
//!
//! Everything here reads single edges through `has_edge` and loops over
//! vertices; nothing touches the row algebra the fast paths use.

use crate::tournament::VertexId;
use crate::Tournament;

pub fn reaches(t1: &Tournament, t2: &Tournament, i: VertexId, j: VertexId) -> bool {
    i == j
        || t1.has_edge(i, j)
        || t2.has_edge(i, j)
        || (0..t1.n()).any(|k| t1.has_edge(i, k) && t2.has_edge(k, j))
}

pub fn rainbow_reaches(red: &Tournament, blue: &Tournament, i: VertexId, j: VertexId) -> bool {
    reaches(red, blue, i, j) || (0..red.n()).any(|k| blue.has_edge(i, k) && red.has_edge(k, j))
}

/// The blocking condition read literally: `i ≠ j`, `j -> i` in both rounds, and the
/// first-round out-set of `i` strictly inside the second-round out-set of `j`.
pub fn blocked(t1: &Tournament, t2: &Tournament, i: VertexId, j: VertexId) -> bool {
    let n = t1.n();
    let contained = (0..n).all(|k| !t1.has_edge(i, k) || t2.has_edge(j, k));
    let strict = (0..n).any(|k| t2.has_edge(j, k) && !t1.has_edge(i, k));
    i != j && t1.has_edge(j, i) && t2.has_edge(j, i) && contained && strict
}

pub fn forward_kings(t1: &Tournament, t2: &Tournament) -> Vec<VertexId> {
    let n = t1.n();
    (0..n).filter(|&v| (0..n).all(|j| reaches(t1, t2, v, j))).collect()
}

pub fn co_kings(t1: &Tournament, t2: &Tournament) -> Vec<VertexId> {
    let n = t1.n();
    (0..n).filter(|&v| (0..n).all(|i| reaches(t1, t2, i, v))).collect()
}

pub fn rainbow_kings(red: &Tournament, blue: &Tournament) -> Vec<VertexId> {
    let n = red.n();
    (0..n).filter(|&v| (0..n).all(|j| rainbow_reaches(red, blue, v, j))).collect()
}

/// Knowledge matrix `know[i][j]` after running the rounds in order.
pub fn simulate(rounds: &[&Tournament], n: usize) -> Vec<Vec<bool>> {
    let mut know: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| i == j).collect()).collect();
    for t in rounds {
        let before = know.clone();
        for (item, row) in know.iter_mut().enumerate() {
            for (to, cell) in row.iter_mut().enumerate() {
                if (0..n).any(|from| before[item][from] && t.has_edge(from, to)) {
                    *cell = true;
                }
            }
        }
    }
    know
}

pub fn max_out_degree_vertices(t: &Tournament) -> Vec<VertexId> {
    let n = t.n();
    let degree = |v: usize| (0..n).filter(|&u| t.has_edge(v, u)).count();
    let max = (0..n).map(degree).max().unwrap_or(0);
    (0..n).filter(|&v| degree(v) == max).collect()
}
