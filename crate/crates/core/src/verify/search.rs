//! Search for vertices that are rainbow kings but not forward kings, i.e.
//! that need a second-round edge followed by a first-round edge somewhere.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{chunks, oracle, RunOptions};
use crate::error::{Error, Result};
use crate::reach::{check_rainbow_witness, forward_kings, rainbow_kings, rainbow_reaches, reach_witness, RainbowWitness};
use crate::tournament::{pair_count, VertexId};
use crate::Tournament;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchWitness {
    /// `(T1 code << C(n,2)) | T2 code`.
    pub position: u64,
    pub t1: String,
    pub t2: String,
    pub vertex: VertexId,
    pub forward_kings: Vec<VertexId>,
    pub rainbow_kings: Vec<VertexId>,
    /// Smallest vertex that `vertex` does not reach in round order.
    pub target: VertexId,
    /// How `vertex` reaches `target` once the round order is ignored.
    pub rainbow_path: RainbowWitness,
    /// Re-checked with the slow reference implementations.
    pub validated: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub n: usize,
    pub total_instances: u64,
    pub instances_scanned: u64,
    /// True only when every instance pair was examined.
    pub complete: bool,
    /// Scanned pairs whose rainbow kings strictly contain their forward kings.
    pub separating_instances: u64,
    /// First separating pair in enumeration order, with its smallest
    /// separating vertex.
    pub first_witness: Option<SearchWitness>,
    /// Timing only; not covered by determinism guarantees.
    pub wall_time_s: f64,
}

impl SearchReport {
    pub fn canonical(&self) -> Self {
        SearchReport { wall_time_s: 0.0, ..self.clone() }
    }

    pub fn to_text(&self) -> String {
        let mut lines = vec![
            "target: order-sensitivity".to_string(),
            format!("n: {}", self.n),
            format!("total_instances: {}", self.total_instances),
            format!("instances_scanned: {}", self.instances_scanned),
            format!("complete: {}", self.complete),
            format!("separating_instances: {}", self.separating_instances),
        ];
        let fmt_set = |v: &[usize]| {
            let s: Vec<String> = v.iter().map(|x| x.to_string()).collect();
            format!("{{{}}}", s.join(","))
        };
        match &self.first_witness {
            None => lines.push("witness: none".into()),
            Some(w) => {
                lines.push(format!("witness_position: {}", w.position));
                lines.push(format!("witness_t1: hex:{}", w.t1));
                lines.push(format!("witness_t2: hex:{}", w.t2));
                lines.push(format!("witness_vertex: {}", w.vertex));
                lines.push(format!("witness_forward_kings: {}", fmt_set(&w.forward_kings)));
                lines.push(format!("witness_rainbow_kings: {}", fmt_set(&w.rainbow_kings)));
                lines.push(format!("witness_target: {}", w.target));
                lines.push(format!("witness_rainbow_path: {:?}", w.rainbow_path));
                lines.push(format!("witness_validated: {}", w.validated));
            }
        }
        lines.push(format!("wall_time_s: {:.6} (timing, not deterministic)", self.wall_time_s));
        lines.join("\n") + "\n"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn separating_vertex(t1: &Tournament, t2: &Tournament) -> Option<VertexId> {
    let mut extra = rainbow_kings(t1, t2).expect("same size");
    extra.difference_with(&forward_kings(t1, t2).expect("same size"));
    extra.first()
}

fn build_witness(position: u64, vertex: VertexId, t1: &Tournament, t2: &Tournament) -> SearchWitness {
    let n = t1.n();
    let forward: Vec<_> = forward_kings(t1, t2).expect("same size").iter().collect();
    let rainbow: Vec<_> = rainbow_kings(t1, t2).expect("same size").iter().collect();
    let target = (0..n)
        .find(|&j| reach_witness(t1, t2, vertex, j).is_none())
        .expect("separating vertex misses some target");
    let rainbow_path = rainbow_reaches(t1, t2, vertex, target)
        .expect("valid vertices")
        .expect("rainbow king reaches every target");
    let validated = oracle::rainbow_kings(t1, t2).contains(&vertex)
        && !oracle::forward_kings(t1, t2).contains(&vertex)
        && !oracle::reaches(t1, t2, vertex, target)
        && check_rainbow_witness(t1, t2, vertex, target, rainbow_path)
        && matches!(rainbow_path, RainbowWitness::BlueRed(_));
    SearchWitness {
        position,
        t1: t1.to_index().to_hex(),
        t2: t2.to_index().to_hex(),
        vertex,
        forward_kings: forward,
        rainbow_kings: rainbow,
        target,
        rainbow_path,
        validated,
    }
}

/// Scans instance pairs on `n` vertices in `(T1 code, T2 code)` order,
/// stopping after `limit` pairs if given.
pub fn search_order_sensitivity(n: usize, options: &RunOptions, limit: Option<u64>) -> Result<SearchReport> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    options.exhaustive_gate(n)?;
    let start = Instant::now();
    let bits = pair_count(n);
    let all: Vec<Tournament> = (0..1u64 << bits)
        .map(|code| Tournament::from_code(n, code))
        .collect::<Result<_>>()?;
    let total = 1u64 << (2 * bits);
    let scanned = limit.map_or(total, |l| l.min(total));
    let split = |pos: u64| (&all[(pos >> bits) as usize], &all[(pos & ((1 << bits) - 1)) as usize]);

    let parts: Vec<(u64, Option<(u64, VertexId)>)> = options.install(|| {
        chunks(scanned)
            .into_par_iter()
            .map(|range| {
                let mut count = 0;
                let mut first = None;
                for pos in range {
                    let (t1, t2) = split(pos);
                    if let Some(v) = separating_vertex(t1, t2) {
                        count += 1;
                        first.get_or_insert((pos, v));
                    }
                }
                (count, first)
            })
            .collect()
    });
    let separating = parts.iter().map(|(c, _)| c).sum();
    let first = parts.iter().filter_map(|(_, f)| *f).min_by_key(|(pos, _)| *pos);
    let first_witness = first.map(|(pos, v)| {
        let (t1, t2) = split(pos);
        build_witness(pos, v, t1, t2)
    });
    Ok(SearchReport {
        n,
        total_instances: total,
        instances_scanned: scanned,
        complete: scanned == total,
        separating_instances: separating,
        first_witness,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}
