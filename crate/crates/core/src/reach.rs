//! Two-round reachability between a pair of tournaments.
//!
//! `i ⇒ j` holds when `i = j`, `i -> j` in the first round, `i -> j` in the
//! second round, or `i -> k` in the first round and `k -> j` in the second.
//! The order matters: a second-round edge followed by a first-round edge
//! does not count. The rainbow variant drops that restriction.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::{BitSet, Word};
use crate::error::Result;
use crate::format;
use crate::tournament::{same_size, Tournament, VertexId, VertexSet};

/// Why `i ⇒ j` holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "via", rename_all = "snake_case")]
pub enum ReachWitness {
    Same,
    Edge1,
    Edge2,
    /// `i -> k` in round one, then `k -> j` in round two.
    TwoStep(VertexId),
}

impl fmt::Display for ReachWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ReachWitness::Same => f.write_str("same"),
            ReachWitness::Edge1 => f.write_str("edge1"),
            ReachWitness::Edge2 => f.write_str("edge2"),
            ReachWitness::TwoStep(k) => write!(f, "two-step via {k}"),
        }
    }
}

/// Why `i` reaches `j` by a rainbow path of length at most two.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", content = "via", rename_all = "snake_case")]
pub enum RainbowWitness {
    Same,
    RedEdge,
    BlueEdge,
    RedBlue(VertexId),
    BlueRed(VertexId),
}

fn check_pair<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, i: VertexId, j: VertexId) -> Result<()> {
    same_size(t1, t2)?;
    t1.check_vertex(i)?;
    t1.check_vertex(j)
}

/// Witness for `i ⇒ j`, preferring `Same`, then `Edge1`, then `Edge2`,
/// then the two-step path through the smallest intermediate.
pub fn reaches<W: Word>(
    t1: &Tournament<W>,
    t2: &Tournament<W>,
    i: VertexId,
    j: VertexId,
) -> Result<Option<ReachWitness>> {
    check_pair(t1, t2, i, j)?;
    Ok(reach_witness(t1, t2, i, j))
}

pub(crate) fn reach_witness<W: Word>(
    t1: &Tournament<W>,
    t2: &Tournament<W>,
    i: VertexId,
    j: VertexId,
) -> Option<ReachWitness> {
    if i == j {
        return Some(ReachWitness::Same);
    }
    if t1.has_edge(i, j) {
        return Some(ReachWitness::Edge1);
    }
    if t2.has_edge(i, j) {
        return Some(ReachWitness::Edge2);
    }
    let mut mid = t1.out_row(i).clone();
    mid.intersect_with(t2.in_row(j));
    mid.first().map(ReachWitness::TwoStep)
}

/// Non-reachability characterized directly: `i ≠ j`, `j -> i` in both
/// rounds, and `Γ₁(i) ⊊ Γ₂(j)`. Agrees with `!reaches` on every input.
pub fn blocked<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, i: VertexId, j: VertexId) -> Result<bool> {
    check_pair(t1, t2, i, j)?;
    Ok(is_blocked(t1, t2, i, j))
}

pub(crate) fn is_blocked<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, i: VertexId, j: VertexId) -> bool {
    i != j
        && t1.has_edge(j, i)
        && t2.has_edge(j, i)
        && t1.out_row(i).is_proper_subset(t2.out_row(j))
}

/// `{i} ∪ Γ₁(i) ∪ Γ₂(i) ∪ ⋃_{k ∈ Γ₁(i)} Γ₂(k)`: everything `i` reaches.
pub fn reach_row<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, i: VertexId) -> VertexSet<W> {
    let mut row = t1.out_row(i).clone();
    row.union_with(t2.out_row(i));
    row.insert(i);
    for k in t1.out_row(i) {
        row.union_with(t2.out_row(k));
    }
    row
}

/// Everything that reaches `j`: `{j} ∪ Γ₁⁻(j) ∪ Γ₂⁻(j) ∪ ⋃_{k ∈ Γ₂⁻(j)} Γ₁⁻(k)`.
pub fn co_reach_row<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, j: VertexId) -> VertexSet<W> {
    let mut row = t1.in_row(j).clone();
    row.union_with(t2.in_row(j));
    row.insert(j);
    for k in t2.in_row(j) {
        row.union_with(t1.in_row(k));
    }
    row
}

pub fn rainbow_reach_row<W: Word>(red: &Tournament<W>, blue: &Tournament<W>, i: VertexId) -> VertexSet<W> {
    let mut row = reach_row(red, blue, i);
    for k in blue.out_row(i) {
        row.union_with(red.out_row(k));
    }
    row
}

fn full_rows<W: Word>(n: usize, row: impl Fn(VertexId) -> VertexSet<W>) -> VertexSet<W> {
    BitSet::from_members(n, (0..n).filter(|&v| row(v).is_full()))
}

/// `{ν : ν ⇒ j for all j}`.
pub fn forward_kings<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<VertexSet<W>> {
    let n = same_size(t1, t2)?;
    Ok(full_rows(n, |v| reach_row(t1, t2, v)))
}

/// `{μ : i ⇒ μ for all i}`.
pub fn co_kings<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<VertexSet<W>> {
    let n = same_size(t1, t2)?;
    Ok(full_rows(n, |v| co_reach_row(t1, t2, v)))
}

pub fn rainbow_reaches<W: Word>(
    red: &Tournament<W>,
    blue: &Tournament<W>,
    i: VertexId,
    j: VertexId,
) -> Result<Option<RainbowWitness>> {
    check_pair(red, blue, i, j)?;
    if i == j {
        return Ok(Some(RainbowWitness::Same));
    }
    if red.has_edge(i, j) {
        return Ok(Some(RainbowWitness::RedEdge));
    }
    if blue.has_edge(i, j) {
        return Ok(Some(RainbowWitness::BlueEdge));
    }
    let mut mid = red.out_row(i).clone();
    mid.intersect_with(blue.in_row(j));
    if let Some(k) = mid.first() {
        return Ok(Some(RainbowWitness::RedBlue(k)));
    }
    let mut mid = blue.out_row(i).clone();
    mid.intersect_with(red.in_row(j));
    Ok(mid.first().map(RainbowWitness::BlueRed))
}

pub fn rainbow_kings<W: Word>(red: &Tournament<W>, blue: &Tournament<W>) -> Result<VertexSet<W>> {
    let n = same_size(red, blue)?;
    Ok(full_rows(n, |v| rainbow_reach_row(red, blue, v)))
}

/// Does `w` really witness `from ⇒ to`? Checks edges one at a time.
pub fn check_witness<W: Word>(
    t1: &Tournament<W>,
    t2: &Tournament<W>,
    from: VertexId,
    to: VertexId,
    w: ReachWitness,
) -> bool {
    let n = t1.n();
    if t2.n() != n || from >= n || to >= n {
        return false;
    }
    match w {
        ReachWitness::Same => from == to,
        ReachWitness::Edge1 => t1.has_edge(from, to),
        ReachWitness::Edge2 => t2.has_edge(from, to),
        ReachWitness::TwoStep(k) => k < n && t1.has_edge(from, k) && t2.has_edge(k, to),
    }
}

pub fn check_rainbow_witness<W: Word>(
    red: &Tournament<W>,
    blue: &Tournament<W>,
    from: VertexId,
    to: VertexId,
    w: RainbowWitness,
) -> bool {
    let n = red.n();
    if blue.n() != n || from >= n || to >= n {
        return false;
    }
    match w {
        RainbowWitness::Same => from == to,
        RainbowWitness::RedEdge => red.has_edge(from, to),
        RainbowWitness::BlueEdge => blue.has_edge(from, to),
        RainbowWitness::RedBlue(k) => k < n && red.has_edge(from, k) && blue.has_edge(k, to),
        RainbowWitness::BlueRed(k) => k < n && blue.has_edge(from, k) && red.has_edge(k, to),
    }
}

/// Which way a certificate's witnesses point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// `king ⇒ j` for every key `j`.
    Outgoing,
    /// `i ⇒ king` for every key `i`.
    Incoming,
}

/// Evidence that `king` is a forward king (or, when `Incoming`, a co-king):
/// one witness per other vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KingCertificate {
    pub king: VertexId,
    pub direction: Direction,
    pub witnesses: BTreeMap<VertexId, ReachWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateError {
    #[error("king {king} out of range for n={n}")]
    KingOutOfRange { king: VertexId, n: usize },
    #[error("no witness for vertex {0}")]
    Missing(VertexId),
    #[error("unexpected witness key {0}")]
    Extra(VertexId),
    #[error("witness {witness} does not show {from} ⇒ {to}")]
    Invalid { from: VertexId, to: VertexId, witness: ReachWitness },
}

impl KingCertificate {
    /// Re-checks the certificate edge by edge against the instance.
    pub fn validate<W: Word>(&self, t1: &Tournament<W>, t2: &Tournament<W>) -> Result<(), CertificateError> {
        let n = t1.n();
        if self.king >= n || t2.n() != n {
            return Err(CertificateError::KingOutOfRange { king: self.king, n });
        }
        if let Some((&extra, _)) = self.witnesses.iter().find(|(&v, _)| v >= n || v == self.king) {
            return Err(CertificateError::Extra(extra));
        }
        for other in (0..n).filter(|&v| v != self.king) {
            let &witness = self.witnesses.get(&other).ok_or(CertificateError::Missing(other))?;
            let (from, to) = match self.direction {
                Direction::Outgoing => (self.king, other),
                Direction::Incoming => (other, self.king),
            };
            if !check_witness(t1, t2, from, to, witness) {
                return Err(CertificateError::Invalid { from, to, witness });
            }
        }
        Ok(())
    }
}

/// Smallest-index forward king with a witness for every other vertex.
///
/// Panics, dumping both rounds, if no king exists.
pub fn find_king_brute<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>) -> Result<KingCertificate> {
    let kings = forward_kings(t1, t2)?;
    let Some(king) = kings.first() else {
        panic!(
            "no forward king exists; instance:\nround 1\n{}round 2\n{}",
            format::serialize(t1),
            format::serialize(t2)
        );
    };
    Ok(certify_king(t1, t2, king)?.expect("king reaches every vertex"))
}

/// Certificate for `king` if it is a forward king, `None` otherwise.
pub fn certify_king<W: Word>(t1: &Tournament<W>, t2: &Tournament<W>, king: VertexId) -> Result<Option<KingCertificate>> {
    check_pair(t1, t2, king, king)?;
    let witnesses = (0..t1.n())
        .filter(|&j| j != king)
        .map(|j| reach_witness(t1, t2, king, j).map(|w| (j, w)))
        .collect::<Option<_>>();
    Ok(witnesses.map(|witnesses| KingCertificate { king, direction: Direction::Outgoing, witnesses }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use crate::tournament::{pair_count, Model};

    type T = Tournament<u64>;

    fn cycle3() -> T {
        T::generate(3, Model::Rotational).unwrap()
    }

    /// n=2 with `1 -> 0` in the given rounds.
    fn two(first_forward: bool, second_forward: bool) -> (T, T) {
        (T::from_code(2, first_forward as u64).unwrap(), T::from_code(2, second_forward as u64).unwrap())
    }

    /// Evaluates the four clauses one vertex at a time.
    fn brute_reaches(t1: &T, t2: &T, i: usize, j: usize) -> bool {
        i == j
            || t1.has_edge(i, j)
            || t2.has_edge(i, j)
            || (0..t1.n()).any(|k| t1.has_edge(i, k) && t2.has_edge(k, j))
    }

    fn brute_rainbow(r: &T, b: &T, i: usize, j: usize) -> bool {
        brute_reaches(r, b, i, j) || (0..r.n()).any(|k| b.has_edge(i, k) && r.has_edge(k, j))
    }

    #[test]
    fn same_vertex() {
        let t = T::generate(6, Model::Uniform { seed: 1 }).unwrap();
        for v in 0..6 {
            assert_eq!(reaches(&t, &t.reverse(), v, v).unwrap(), Some(ReachWitness::Same));
            assert!(!blocked(&t, &t.reverse(), v, v).unwrap());
            assert_eq!(rainbow_reaches(&t, &t, v, v).unwrap(), Some(RainbowWitness::Same));
        }
    }

    #[test]
    fn three_cycle_two_step() {
        let c = cycle3();
        assert_eq!(reaches(&c, &c, 0, 2).unwrap(), Some(ReachWitness::TwoStep(1)));
        assert_eq!(forward_kings(&c, &c).unwrap().iter().collect::<Vec<_>>(), vec![0, 1, 2]);
    }

    #[test]
    fn two_vertex_blocked() {
        let (t1, t2) = two(false, false);
        assert_eq!(reaches(&t1, &t2, 0, 1).unwrap(), None);
        assert_eq!(reaches(&t1, &t2, 1, 0).unwrap(), Some(ReachWitness::Edge1));
        assert!(blocked(&t1, &t2, 0, 1).unwrap());
        assert!(!blocked(&t1, &t2, 1, 0).unwrap());
    }

    #[test]
    fn errors_on_bad_input() {
        let (a, b) = (T::transitive(3), T::transitive(4));
        assert_eq!(reaches(&a, &b, 0, 1).unwrap_err(), Error::SizeMismatch(3, 4));
        assert_eq!(blocked(&a, &b, 0, 1).unwrap_err(), Error::SizeMismatch(3, 4));
        assert_eq!(forward_kings(&a, &b).unwrap_err(), Error::SizeMismatch(3, 4));
        assert_eq!(co_kings(&a, &b).unwrap_err(), Error::SizeMismatch(3, 4));
        assert_eq!(rainbow_kings(&a, &b).unwrap_err(), Error::SizeMismatch(3, 4));
        assert!(find_king_brute(&a, &b).is_err());
        assert_eq!(
            reaches(&a, &a, 0, 3).unwrap_err(),
            Error::VertexOutOfRange { vertex: 3, n: 3 }
        );
    }

    #[test]
    fn transitive_kings() {
        for n in 1..=7 {
            let t = T::transitive(n);
            assert!(forward_kings(&t, &t).unwrap().contains(0));
            assert!(co_kings(&t, &t).unwrap().contains(n - 1));
            assert!(rainbow_kings(&t, &t).unwrap().contains(0));
        }
        let one = T::transitive(1);
        assert_eq!(forward_kings(&one, &one).unwrap().iter().collect::<Vec<_>>(), vec![0]);
        assert_eq!(co_kings(&one, &one).unwrap().iter().collect::<Vec<_>>(), vec![0]);
    }

    #[test]
    fn brute_certificates() {
        let t = T::transitive(4);
        let cert = find_king_brute(&t, &t).unwrap();
        assert_eq!(cert.king, 0);
        assert!(cert.witnesses.values().all(|w| *w == ReachWitness::Edge1));
        assert_eq!(cert.witnesses.len(), 3);
        cert.validate(&t, &t).unwrap();

        let (t1, t2) = two(false, false);
        assert_eq!(certify_king(&t1, &t2, 0).unwrap(), None);
        assert_eq!(certify_king(&t1, &t2, 1).unwrap().unwrap().witnesses[&0], ReachWitness::Edge1);

        let (t1, t2) = two(false, true);
        let cert = find_king_brute(&t1, &t2).unwrap();
        assert_eq!(cert.king, 0);
        assert_eq!(cert.witnesses[&1], ReachWitness::Edge2);
    }

    #[test]
    fn validation_catches_forgeries() {
        let t = T::transitive(4);
        let mut cert = find_king_brute(&t, &t).unwrap();
        cert.witnesses.insert(2, ReachWitness::Edge2);
        cert.validate(&t, &t).unwrap();
        cert.witnesses.insert(3, ReachWitness::TwoStep(0));
        assert!(matches!(cert.validate(&t, &t), Err(CertificateError::Invalid { to: 3, .. })));
        cert.witnesses.remove(&3);
        assert_eq!(cert.validate(&t, &t), Err(CertificateError::Missing(3)));
        cert.witnesses.insert(0, ReachWitness::Same);
        assert_eq!(cert.validate(&t, &t), Err(CertificateError::Extra(0)));
    }

    #[test]
    fn exhaustive_three_matches_brute_force() {
        for c1 in 0..1u64 << pair_count(3) {
            for c2 in 0..1u64 << pair_count(3) {
                let (t1, t2) = (T::from_code(3, c1).unwrap(), T::from_code(3, c2).unwrap());
                for i in 0..3 {
                    for j in 0..3 {
                        let want = brute_reaches(&t1, &t2, i, j);
                        let got = reaches(&t1, &t2, i, j).unwrap();
                        assert_eq!(got.is_some(), want);
                        assert_eq!(blocked(&t1, &t2, i, j).unwrap(), !want);
                        if let Some(w) = got {
                            assert!(check_witness(&t1, &t2, i, j, w));
                        }
                        assert_eq!(
                            rainbow_reaches(&t1, &t2, i, j).unwrap().is_some(),
                            brute_rainbow(&t1, &t2, i, j)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn random_sixteen_matches_brute_force() {
        for seed in 0..200 {
            let t1 = T::generate(16, Model::Uniform { seed }).unwrap();
            let t2 = T::generate(16, Model::Uniform { seed: seed + 10_000 }).unwrap();
            for i in 0..16 {
                let row = reach_row(&t1, &t2, i);
                for j in 0..16 {
                    let want = brute_reaches(&t1, &t2, i, j);
                    assert_eq!(row.contains(j), want);
                    let w = reaches(&t1, &t2, i, j).unwrap();
                    assert_eq!(w.is_some(), want);
                    if let Some(ReachWitness::TwoStep(k)) = w {
                        assert!(!t1.has_edge(i, j) && !t2.has_edge(i, j));
                        assert!((0..k).all(|m| !(t1.has_edge(i, m) && t2.has_edge(m, j))));
                    }
                    if is_blocked(&t1, &t2, i, j) {
                        assert!(t2.out_degree(j) > t1.out_degree(i));
                    }
                }
            }
        }
    }

    #[test]
    fn rainbow_witness_kinds_check() {
        let t1 = T::generate(12, Model::Uniform { seed: 5 }).unwrap();
        let t2 = T::generate(12, Model::Uniform { seed: 6 }).unwrap();
        for i in 0..12 {
            for j in 0..12 {
                if let Some(w) = rainbow_reaches(&t1, &t2, i, j).unwrap() {
                    assert!(check_rainbow_witness(&t1, &t2, i, j, w), "{i} {j} {w:?}");
                }
                if reaches(&t1, &t2, i, j).unwrap().is_some() {
                    assert!(rainbow_reaches(&t1, &t2, i, j).unwrap().is_some());
                }
            }
        }
        assert!(!check_rainbow_witness(&t1, &t2, 0, 1, RainbowWitness::Same));
    }

    #[test]
    fn blue_then_red_only() {
        // Red: 0->2, 1->0, 2->1. Blue: 0->2, 1->0, 1->2.
        let red = T::build(3, &[[false, false, true], [true, false, false], [false, true, false]]).unwrap();
        let blue = T::build(3, &[[false, false, true], [true, false, true], [false, false, false]]).unwrap();
        assert_eq!(reaches(&red, &blue, 0, 1).unwrap(), None);
        assert_eq!(rainbow_reaches(&red, &blue, 0, 1).unwrap(), Some(RainbowWitness::BlueRed(2)));
        assert!(!forward_kings(&red, &blue).unwrap().contains(0));
        assert!(rainbow_kings(&red, &blue).unwrap().contains(0));
    }

    #[test]
    fn witness_serializes_compactly() {
        assert_eq!(serde_json::to_string(&ReachWitness::TwoStep(4)).unwrap(), r#"{"kind":"two_step","via":4}"#);
        assert_eq!(serde_json::to_string(&ReachWitness::Edge1).unwrap(), r#"{"kind":"edge1"}"#);
    }
}
