//! Constructive king finders.
//!
//! * [`find_king_inductive`] searches for a vertex removal whose sub-instance
//!   king also reaches the removed vertex. Some removal always works: if
//!   none did, each removed `j` would single out a distinct king `π(j)` with
//!   `|Γ₂(j)| > |Γ₁(π(j))|`, and summing over the permutation `π` gives
//!   `C(n,2) > C(n,2)`.
//! * [`find_co_king`] runs the forward search on the dual instance.
//! * [`find_rainbow_king`] repeatedly deletes the vertex of largest in-degree
//!   in either color; the last survivor is a rainbow king.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bitset::{BitSet, Word};
use crate::error::Result;
use crate::format;
use crate::reach::{find_king_brute, Direction, KingCertificate, ReachWitness};
use crate::tournament::{same_size, Tournament, VertexId, VertexSet};

/// One attempted exclusion at the top level of the inductive search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub excluded: VertexId,
    /// King of the instance with `excluded` removed.
    pub candidate: VertexId,
    pub reached_excluded: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProofTrace {
    pub steps: Vec<TraceStep>,
    /// Deepest level of nested exclusions that was visited.
    pub depth: usize,
}

/// Instances of this size or smaller are solved by direct search.
const BASE_CASE: usize = 3;

struct Inductive<'a, W: Word> {
    t1: &'a Tournament<W>,
    t2: &'a Tournament<W>,
    memo: HashMap<VertexSet<W>, VertexId>,
    depth: usize,
}

impl<W: Word> Inductive<'_, W> {
    /// Vertices of `active` that `i` reaches using intermediates from `active` only.
    fn reach_within(&self, active: &VertexSet<W>, i: VertexId) -> VertexSet<W> {
        let mut row = self.t1.out_row(i).clone();
        row.union_with(self.t2.out_row(i));
        row.insert(i);
        let mut mids = self.t1.out_row(i).clone();
        mids.intersect_with(active);
        for k in &mids {
            row.union_with(self.t2.out_row(k));
        }
        row.intersect_with(active);
        row
    }

    fn is_king_within(&self, active: &VertexSet<W>, v: VertexId) -> bool {
        self.reach_within(active, v) == *active
    }

    fn brute(&self, active: &VertexSet<W>) -> Option<VertexId> {
        active.iter().find(|&v| self.is_king_within(active, v))
    }

    /// Exclusion order: ascending second-round out-degree inside `active`, then index.
    fn exclusion_order(&self, active: &VertexSet<W>) -> Vec<VertexId> {
        let mut order: Vec<(usize, VertexId)> = active
            .iter()
            .map(|j| {
                let mut out = self.t2.out_row(j).clone();
                out.intersect_with(active);
                (out.len(), j)
            })
            .collect();
        order.sort_unstable();
        order.into_iter().map(|(_, j)| j).collect()
    }

    fn solve(&mut self, active: &VertexSet<W>, level: usize, trace: Option<&mut Vec<TraceStep>>) -> VertexId {
        self.depth = self.depth.max(level);
        if active.len() <= BASE_CASE {
            return self.brute(active).unwrap_or_else(|| self.contradiction(active));
        }
        if let Some(&king) = self.memo.get(active) {
            return king;
        }
        let mut trace = trace;
        for excluded in self.exclusion_order(active) {
            let mut rest = active.clone();
            rest.remove(excluded);
            let candidate = self.solve(&rest, level + 1, None);
            let reached_excluded = self.reach_within(active, candidate).contains(excluded);
            if let Some(steps) = trace.as_deref_mut() {
                steps.push(TraceStep { excluded, candidate, reached_excluded });
            }
            if reached_excluded {
                self.memo.insert(active.clone(), candidate);
                return candidate;
            }
        }
        self.contradiction(active)
    }

    fn contradiction(&self, active: &VertexSet<W>) -> ! {
        panic!(
            "every exclusion failed on active set {active:?}; instance:\nround 1\n{}round 2\n{}",
            format::serialize(self.t1),
            format::serialize(self.t2)
        )
    }
}

/// Forward king found by induction on the number of vertices.
///
/// Exponential in the worst case; memoized per active vertex set within
/// one call. Panics, dumping the instance, if every exclusion fails.
pub fn find_king_inductive<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<(VertexId, ProofTrace)> {
    let n = same_size(t1, t2)?;
    let mut search = Inductive { t1, t2, memo: HashMap::new(), depth: 0 };
    let mut steps = Vec::new();
    let king = search.solve(&BitSet::full(n), 0, Some(&mut steps));
    Ok((king, ProofTrace { steps, depth: search.depth }))
}

/// `(reverse(t2), reverse(t1))`: `i ⇒ μ` in the original instance exactly
/// when `μ ⇒ i` in the dual.
pub fn dual_transform<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<(Tournament<W>, Tournament<W>)> {
    same_size(t1, t2)?;
    Ok((t2.reverse(), t1.reverse()))
}

/// Co-king `μ` with witnesses that every vertex reaches it.
pub fn find_co_king<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<(VertexId, KingCertificate)> {
    let (d1, d2) = dual_transform(t1, t2)?;
    let dual = find_king_brute(&d1, &d2)?;
    let witnesses = dual
        .witnesses
        .into_iter()
        .map(|(i, w)| {
            let w = match w {
                ReachWitness::Same => ReachWitness::Same,
                ReachWitness::Edge1 => ReachWitness::Edge2,
                ReachWitness::Edge2 => ReachWitness::Edge1,
                ReachWitness::TwoStep(k) => ReachWitness::TwoStep(k),
            };
            (i, w)
        })
        .collect();
    let cert = KingCertificate { king: dual.king, direction: Direction::Incoming, witnesses };
    debug_assert!(cert.validate(t1, t2).is_ok());
    Ok((cert.king, cert))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Color {
    Red,
    Blue,
}

/// A deleted vertex and the color in which its in-degree was maximal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pivot {
    pub vertex: VertexId,
    pub color: Color,
    pub in_degree: usize,
}

/// Rainbow king plus the pivots deleted on the way, outermost first.
pub fn find_rainbow_king_traced<W: Word>(red: &Tournament<W>, blue: &Tournament<W>) -> Result<(VertexId, Vec<Pivot>)> {
    let n = same_size(red, blue)?;
    let mut active = BitSet::<W>::full(n);
    let mut pivots = Vec::with_capacity(n.saturating_sub(1));
    while active.len() > 1 {
        let mut best: Option<Pivot> = None;
        for (color, t) in [(Color::Red, red), (Color::Blue, blue)] {
            for v in &active {
                let mut inc = t.in_row(v).clone();
                inc.intersect_with(&active);
                let in_degree = inc.len();
                if best.is_none_or(|b| in_degree > b.in_degree) {
                    best = Some(Pivot { vertex: v, color, in_degree });
                }
            }
        }
        let pivot = best.expect("active set is nonempty");
        active.remove(pivot.vertex);
        pivots.push(pivot);
    }
    let king = active.first().expect("one vertex survives");
    Ok((king, pivots))
}

pub fn find_rainbow_king<W: Word>(red: &Tournament<W>, blue: &Tournament<W>) -> Result<VertexId> {
    find_rainbow_king_traced(red, blue).map(|(king, _)| king)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::reach::{blocked, co_kings, forward_kings, rainbow_kings};
    use crate::tournament::{pair_count, Model};

    type T = Tournament<u64>;

    fn uniform(n: usize, seed: u64) -> T {
        T::generate(n, Model::Uniform { seed }).unwrap()
    }

    #[test]
    fn inductive_on_transitive() {
        for n in 1..=8 {
            let t = T::transitive(n);
            assert_eq!(find_king_inductive(&t, &t).unwrap().0, 0);
        }
    }

    #[test]
    fn inductive_base_case_matches_brute() {
        for n in 1..=3 {
            for c1 in 0..1u64 << pair_count(n) {
                for c2 in 0..1u64 << pair_count(n) {
                    let (t1, t2) = (T::from_code(n, c1).unwrap(), T::from_code(n, c2).unwrap());
                    let (king, trace) = find_king_inductive(&t1, &t2).unwrap();
                    assert_eq!(king, find_king_brute(&t1, &t2).unwrap().king);
                    assert!(trace.steps.is_empty());
                    assert_eq!(trace.depth, 0);
                }
            }
        }
    }

    #[test]
    fn inductive_trace_exhibits_blocking() {
        for seed in 0..300 {
            let n = 4 + (seed as usize % 6);
            let (t1, t2) = (uniform(n, seed), uniform(n, seed ^ 0xabcdef));
            let (king, trace) = find_king_inductive(&t1, &t2).unwrap();
            assert!(forward_kings(&t1, &t2).unwrap().contains(king));
            let last = trace.steps.last().unwrap();
            assert!(last.reached_excluded);
            assert_eq!(last.candidate, king);
            assert_eq!(trace.depth, n - BASE_CASE);
            let mut failed_candidates = Vec::new();
            for step in &trace.steps[..trace.steps.len() - 1] {
                assert!(!step.reached_excluded);
                assert!(blocked(&t1, &t2, step.candidate, step.excluded).unwrap());
                assert!(t2.out_degree(step.excluded) > t1.out_degree(step.candidate));
                let keep = BitSet::from_members(n, (0..n).filter(|&v| v != step.excluded));
                let (s1, map) = t1.restrict(&keep).unwrap();
                let (s2, _) = t2.restrict(&keep).unwrap();
                let local = map.iter().position(|&v| v == step.candidate).unwrap();
                assert!(forward_kings(&s1, &s2).unwrap().contains(local));
                assert!(!failed_candidates.contains(&step.candidate));
                failed_candidates.push(step.candidate);
            }
        }
    }

    #[test]
    fn dual_transform_examples() {
        let t = uniform(9, 3);
        let (a, b) = dual_transform(&t, &t).unwrap();
        assert_eq!(a, t.reverse());
        assert_eq!(b, t.reverse());
        for seed in 0..100 {
            let (t1, t2) = (uniform(16, seed), uniform(16, seed + 500));
            let (d1, d2) = dual_transform(&t1, &t2).unwrap();
            assert_eq!(dual_transform(&d1, &d2).unwrap(), (t1, t2));
        }
        assert_eq!(
            dual_transform(&T::transitive(2), &T::transitive(3)).unwrap_err(),
            Error::SizeMismatch(2, 3)
        );
    }

    #[test]
    fn co_king_examples() {
        let t = T::transitive(3);
        let (mu, cert) = find_co_king(&t, &t).unwrap();
        assert_eq!(mu, 2);
        assert_eq!(cert.direction, Direction::Incoming);
        cert.validate(&t, &t).unwrap();
        let one = T::transitive(1);
        assert_eq!(find_co_king(&one, &one).unwrap().0, 0);
        for seed in 0..200 {
            let (t1, t2) = (uniform(20, seed), uniform(20, !seed));
            let (mu, cert) = find_co_king(&t1, &t2).unwrap();
            cert.validate(&t1, &t2).unwrap();
            assert_eq!(Some(mu), co_kings(&t1, &t2).unwrap().first());
        }
    }

    #[test]
    fn rainbow_on_transitive_deletes_from_the_bottom() {
        for n in 1..=9 {
            let t = T::transitive(n);
            let (king, pivots) = find_rainbow_king_traced(&t, &t).unwrap();
            assert_eq!(king, 0);
            let deleted: Vec<_> = pivots.iter().map(|p| p.vertex).collect();
            assert_eq!(deleted, (1..n).rev().collect::<Vec<_>>());
            assert!(pivots.iter().all(|p| p.color == Color::Red));
        }
    }

    #[test]
    fn rainbow_finder_sound_at_random() {
        for seed in 0..300 {
            let n = 1 + seed as usize % 40;
            let (r, b) = (uniform(n, seed), uniform(n, seed * 7 + 1));
            let (king, pivots) = find_rainbow_king_traced(&r, &b).unwrap();
            assert_eq!(pivots.len(), n - 1);
            assert!(rainbow_kings(&r, &b).unwrap().contains(king));
        }
    }

    #[test]
    fn rainbow_tie_break_prefers_red_then_smaller_index() {
        let c = T::generate(3, Model::Rotational).unwrap();
        let (_, pivots) = find_rainbow_king_traced(&c, &c.reverse()).unwrap();
        assert_eq!(pivots[0], Pivot { vertex: 0, color: Color::Red, in_degree: 1 });
    }
}
