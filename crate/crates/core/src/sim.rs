//! Synchronous item propagation over a schedule of tournaments.
//!
//! Each processor starts with its own item. In round `s` every processor
//! forwards everything it held at the end of round `s-1` along its
//! out-edges in the round's tournament.

use rayon::prelude::*;

use crate::bitset::{BitSet, Word};
use crate::error::{Error, Result};
use crate::tournament::{Tournament, VertexId, VertexSet};

/// Columns with fewer processors than this are updated sequentially.
const PARALLEL_THRESHOLD: usize = 256;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundSchedule<W: Word> {
    rounds: Vec<Tournament<W>>,
}

impl<W: Word> RoundSchedule<W> {
    pub fn new(rounds: Vec<Tournament<W>>) -> Result<Self> {
        let first = rounds.first().ok_or(Error::EmptyTournament)?;
        if let Some(bad) = rounds.iter().find(|t| t.n() != first.n()) {
            return Err(Error::SizeMismatch(first.n(), bad.n()));
        }
        Ok(RoundSchedule { rounds })
    }

    pub fn n(&self) -> usize {
        self.rounds[0].n()
    }

    pub fn len(&self) -> usize {
        self.rounds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rounds.is_empty()
    }

    pub fn rounds(&self) -> &[Tournament<W>] {
        &self.rounds
    }
}

/// Who holds which item. Stored per processor: `inventory[j]` is the set of
/// items `i` that processor `j` holds, i.e. column `j` of `know`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KnowledgeState<W: Word> {
    inventory: Vec<BitSet<W>>,
}

impl<W: Word> KnowledgeState<W> {
    pub fn n(&self) -> usize {
        self.inventory.len()
    }

    /// Does processor `holder` hold item `item`?
    pub fn knows(&self, item: VertexId, holder: VertexId) -> bool {
        self.inventory[holder].contains(item)
    }

    pub fn inventory(&self, holder: VertexId) -> &VertexSet<W> {
        &self.inventory[holder]
    }

    /// Processors holding `item`.
    pub fn holders(&self, item: VertexId) -> VertexSet<W> {
        BitSet::from_members(self.n(), (0..self.n()).filter(|&j| self.knows(item, j)))
    }

    /// `know` as rows indexed by item: `rows[i][j]` is `knows(i, j)`.
    pub fn to_rows(&self) -> Vec<Vec<bool>> {
        let n = self.n();
        (0..n).map(|i| (0..n).map(|j| self.knows(i, j)).collect()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.inventory.iter().all(BitSet::is_full)
    }
}

/// Every processor holds exactly its own item.
pub fn initial_state<W: Word>(n: usize) -> Result<KnowledgeState<W>> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    let inventory = (0..n).map(|j| BitSet::from_members(n, [j])).collect();
    Ok(KnowledgeState { inventory })
}

/// One synchronous round: each processor adds the pre-round inventories of
/// its in-neighbors in `t`.
pub fn step<W: Word>(state: &KnowledgeState<W>, t: &Tournament<W>) -> Result<KnowledgeState<W>> {
    if state.n() != t.n() {
        return Err(Error::SizeMismatch(state.n(), t.n()));
    }
    let receive = |j: VertexId| {
        let mut inv = state.inventory[j].clone();
        for i in t.in_row(j) {
            inv.union_with(&state.inventory[i]);
        }
        inv
    };
    let inventory = if state.n() >= PARALLEL_THRESHOLD {
        (0..state.n()).into_par_iter().map(receive).collect()
    } else {
        (0..state.n()).map(receive).collect()
    };
    Ok(KnowledgeState { inventory })
}

/// The first `rounds` rounds of `schedule`, starting from [`initial_state`].
pub fn run<W: Word>(schedule: &RoundSchedule<W>, rounds: usize) -> Result<KnowledgeState<W>> {
    if rounds > schedule.len() {
        return Err(Error::RoundsExceeded { requested: rounds, len: schedule.len() });
    }
    schedule.rounds[..rounds]
        .iter()
        .try_fold(initial_state(schedule.n())?, |state, t| step(&state, t))
}

/// Processors whose item has reached everyone.
pub fn kings_after<W: Word>(state: &KnowledgeState<W>) -> VertexSet<W> {
    let mut kings = BitSet::full(state.n());
    for inv in &state.inventory {
        kings.intersect_with(inv);
    }
    kings
}
