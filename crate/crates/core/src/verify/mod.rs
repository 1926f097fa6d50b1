//! Exhaustive and seeded-random verification of the king claims.
//!
//! Instance spaces are split into contiguous chunks that are checked in
//! parallel; partial reports are merged by summing counts and sorting
//! failures by their enumeration position, so a report never depends on
//! the number of workers.

mod claims;
pub mod oracle;
mod report;
mod search;

use std::ops::Range;
use std::time::Instant;

use rayon::prelude::*;

pub use claims::{check, check_landau, confirm, ClaimKind, INDUCTIVE_LIMIT};
pub use report::{FailureWitness, Mode, VerificationReport};
pub use search::{search_order_sensitivity, SearchReport, SearchWitness};

use crate::error::{Error, Result};
use crate::tournament::pair_count;
use crate::{Model, Tournament};

/// Exhaustive runs above this `n` need [`RunOptions::allow_long`].
pub const EXHAUSTIVE_LIMIT: usize = 5;
/// Hard ceiling for exhaustive runs: `2 * C(6,2) = 30` code bits per pair.
pub const EXHAUSTIVE_LONG_LIMIT: usize = 6;

const CHUNK: u64 = 1 << 12;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Worker threads; `None` uses rayon's global pool.
    pub workers: Option<usize>,
    /// Permit exhaustive runs at `n = 6` (2^30 pairs).
    pub allow_long: bool,
}

impl RunOptions {
    pub fn with_workers(workers: usize) -> Self {
        RunOptions { workers: Some(workers), ..Self::default() }
    }

    fn install<R: Send>(&self, job: impl FnOnce() -> R + Send) -> R {
        match self.workers {
            Some(w) => rayon::ThreadPoolBuilder::new()
                .num_threads(w.max(1))
                .build()
                .expect("thread pool")
                .install(job),
            None => job(),
        }
    }

    fn exhaustive_gate(&self, n: usize) -> Result<()> {
        let limit = if self.allow_long { EXHAUSTIVE_LONG_LIMIT } else { EXHAUSTIVE_LIMIT };
        if n > limit {
            Err(Error::AboveGate { n, limit })
        } else {
            Ok(())
        }
    }
}

/// SplitMix64 finalizer.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed of stream `stream` of sample `index` under the run seed `seed`.
/// Depends only on its arguments, never on which worker draws the sample.
pub fn sample_seed(seed: u64, index: u64, stream: u64) -> u64 {
    splitmix64(splitmix64(seed ^ splitmix64(index)) ^ stream)
}

/// The instance pair drawn for sample `index` of a random run.
pub fn random_instance(n: usize, seed: u64, index: u64) -> Result<(Tournament, Tournament)> {
    let t1 = Tournament::generate(n, Model::Uniform { seed: sample_seed(seed, index, 1) })?;
    let t2 = Tournament::generate(n, Model::Uniform { seed: sample_seed(seed, index, 2) })?;
    Ok((t1, t2))
}

fn chunks(total: u64) -> Vec<Range<u64>> {
    (0..total.div_ceil(CHUNK)).map(|c| c * CHUNK..((c + 1) * CHUNK).min(total)).collect()
}

/// Runs `check_one` over positions `0..total` in parallel chunks and merges
/// the failures in position order.
fn sweep<F>(total: u64, options: &RunOptions, check_one: F) -> (u64, Vec<FailureWitness>)
where
    F: Fn(u64) -> Option<FailureWitness> + Sync,
{
    let parts: Vec<(u64, Vec<FailureWitness>)> = options.install(|| {
        chunks(total)
            .into_par_iter()
            .map(|range| {
                let checked = range.end - range.start;
                let failures: Vec<_> = range.filter_map(&check_one).collect();
                (checked, failures)
            })
            .collect()
    });
    let mut checked = 0;
    let mut failures = Vec::new();
    for (c, f) in parts {
        checked += c;
        failures.extend(f);
    }
    failures.sort_by_key(|f| f.position);
    (checked, failures)
}

fn witness(claim: ClaimKind, position: u64, sample: Option<u64>, t1: &Tournament, t2: &Tournament, detail: String) -> FailureWitness {
    FailureWitness {
        position,
        t1: t1.to_index().to_hex(),
        t2: (!claim.is_single()).then(|| t2.to_index().to_hex()),
        sample,
        confirmed: confirm(claim, t1, t2),
        detail,
    }
}

/// Checks `claim` on every instance with `n` vertices: all pairs in
/// ascending `(T1 code, T2 code)` order, or all single tournaments for
/// single-tournament claims.
pub fn exhaustive_verify(n: usize, claim: ClaimKind, options: &RunOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    options.exhaustive_gate(n)?;
    let start = Instant::now();
    let bits = pair_count(n);
    let all: Vec<Tournament> = (0..1u64 << bits)
        .map(|code| Tournament::from_code(n, code))
        .collect::<Result<_>>()?;
    let total = if claim.is_single() { 1u64 << bits } else { 1u64 << (2 * bits) };
    let (checked, failures) = sweep(total, options, |pos| {
        let (t1, t2) = if claim.is_single() {
            (&all[pos as usize], &all[pos as usize])
        } else {
            (&all[(pos >> bits) as usize], &all[(pos & ((1 << bits) - 1)) as usize])
        };
        check(claim, t1, t2).map(|detail| witness(claim, pos, None, t1, t2, detail))
    });
    Ok(VerificationReport {
        claim,
        n,
        mode: Mode::Exhaustive,
        seed: None,
        instances_checked: checked,
        failures: failures.len() as u64,
        failure_witnesses: failures,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Checks `claim` on `samples` seeded uniform instances; sample `i` is
/// [`random_instance`]`(n, seed, i)`.
pub fn random_verify(n: usize, samples: u64, seed: u64, claim: ClaimKind, options: &RunOptions) -> Result<VerificationReport> {
    if n == 0 {
        return Err(Error::EmptyTournament);
    }
    if samples == 0 {
        return Err(Error::NoSamples);
    }
    if let Some(limit) = claim.max_n() {
        if n > limit {
            return Err(Error::AboveGate { n, limit });
        }
    }
    let start = Instant::now();
    let (checked, failures) = sweep(samples, options, |i| {
        let (t1, t2) = random_instance(n, seed, i).expect("n >= 1");
        check(claim, &t1, &t2).map(|detail| witness(claim, i, Some(i), &t1, &t2, detail))
    });
    Ok(VerificationReport {
        claim,
        n,
        mode: Mode::Random,
        seed: Some(seed),
        instances_checked: checked,
        failures: failures.len() as u64,
        failure_witnesses: failures,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exhaustive_small_counts() {
        let opts = RunOptions::default();
        let r2 = exhaustive_verify(2, ClaimKind::ForwardKingExists, &opts).unwrap();
        assert_eq!((r2.instances_checked, r2.failures), (4, 0));
        let r3 = exhaustive_verify(3, ClaimKind::ForwardKingExists, &opts).unwrap();
        assert_eq!((r3.instances_checked, r3.failures), (64, 0));
        let eq = exhaustive_verify(3, ClaimKind::ReachBlockedEquivalence, &opts).unwrap();
        assert_eq!((eq.instances_checked, eq.failures), (64, 0));
        let l = exhaustive_verify(4, ClaimKind::LandauSpecialCase, &opts).unwrap();
        assert_eq!((l.instances_checked, l.failures), (64, 0));
        assert_eq!(exhaustive_verify(1, ClaimKind::CoKingExists, &opts).unwrap().instances_checked, 1);
    }

    #[test]
    fn gates() {
        let opts = RunOptions::default();
        assert_eq!(
            exhaustive_verify(6, ClaimKind::ForwardKingExists, &opts).unwrap_err(),
            Error::AboveGate { n: 6, limit: 5 }
        );
        let long = RunOptions { allow_long: true, ..opts };
        assert_eq!(
            exhaustive_verify(7, ClaimKind::ForwardKingExists, &long).unwrap_err(),
            Error::AboveGate { n: 7, limit: 6 }
        );
        assert_eq!(
            random_verify(13, 1, 0, ClaimKind::InductiveFinderSound, &opts).unwrap_err(),
            Error::AboveGate { n: 13, limit: INDUCTIVE_LIMIT }
        );
        assert_eq!(random_verify(5, 0, 0, ClaimKind::ForwardKingExists, &opts).unwrap_err(), Error::NoSamples);
    }

    #[test]
    fn random_runs_ignore_worker_count() {
        let a = random_verify(24, 300, 7, ClaimKind::CoKingExists, &RunOptions::with_workers(1)).unwrap();
        let b = random_verify(24, 300, 7, ClaimKind::CoKingExists, &RunOptions::with_workers(5)).unwrap();
        assert_eq!(a.canonical(), b.canonical());
        assert_eq!(a.instances_checked, 300);
    }

    #[test]
    fn sample_seeds_are_distinct() {
        let seeds: std::collections::HashSet<u64> =
            (0..1000).flat_map(|i| [sample_seed(7, i, 1), sample_seed(7, i, 2)]).collect();
        assert_eq!(seeds.len(), 2000);
        assert_ne!(sample_seed(7, 0, 1), sample_seed(8, 0, 1));
    }

    #[test]
    fn sweep_merges_failures_in_position_order() {
        let t = Tournament::transitive(3);
        let fake = |pos: u64| {
            (pos % 1000 == 3).then(|| witness(ClaimKind::ForwardKingExists, pos, None, &t, &t, format!("p{pos}")))
        };
        let (checked, one) = sweep(20_000, &RunOptions::with_workers(1), fake);
        let (_, many) = sweep(20_000, &RunOptions::with_workers(7), fake);
        assert_eq!(checked, 20_000);
        assert_eq!(one, many);
        assert_eq!(one.len(), 20);
        assert!(one.windows(2).all(|w| w[0].position < w[1].position));
        // A fabricated failure on a healthy instance is not confirmed.
        assert!(!one[0].confirmed);
    }
}
