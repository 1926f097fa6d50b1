//! Acceptance suite. Each test prints one `[PASS]`/`[FAIL]` line per
//! criterion; run with `cargo test -p twoking --test acceptance -- --nocapture
//! --test-threads=1` to see them in order.

use std::time::{Duration, Instant};

use twoking::tournament::pair_count;
use twoking::verify::{
    exhaustive_verify, oracle, random_verify, search_order_sensitivity, ClaimKind, Mode, RunOptions,
    VerificationReport,
};
use twoking::{forward_kings, initial_state, step, InstanceIndex, Model, Tournament};

fn criterion(id: &str, what: &str, ok: bool, detail: &str) {
    println!("[{}] {id}: {what} ({detail})", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "{id} failed: {what} ({detail})");
}

fn pairs_at(n: usize) -> u64 {
    1 << (2 * pair_count(n))
}

fn exhaustive(n: usize, claim: ClaimKind) -> VerificationReport {
    let r = exhaustive_verify(n, claim, &RunOptions::default()).unwrap();
    assert_eq!(r.mode, Mode::Exhaustive);
    r
}

fn random(n: usize, samples: u64, claim: ClaimKind) -> VerificationReport {
    random_verify(n, samples, 7, claim, &RunOptions::default()).unwrap()
}

/// Checks instance counts and zero failures; returns a one-line summary.
fn all_clean(reports: &[(VerificationReport, u64)]) -> (bool, String) {
    let mut ok = true;
    let mut parts = Vec::new();
    for (r, expected) in reports {
        ok &= r.instances_checked == *expected && r.failures == 0;
        parts.push(format!("{}@n={} {:?}: {}/{} fail", r.claim, r.n, r.mode, r.failures, r.instances_checked));
    }
    (ok, parts.join("; "))
}

#[test]
fn ac1_forward_king_exists() {
    let start = Instant::now();
    let n4 = exhaustive(4, ClaimKind::ForwardKingExists);
    let n4_time = start.elapsed();
    let runs = vec![
        (exhaustive(2, ClaimKind::ForwardKingExists), 4),
        (exhaustive(3, ClaimKind::ForwardKingExists), 64),
        (n4, pairs_at(4)),
        (exhaustive(5, ClaimKind::ForwardKingExists), pairs_at(5)),
        (random(5, 1_000_000, ClaimKind::ForwardKingExists), 1_000_000),
    ];
    let (ok, detail) = all_clean(&runs);
    criterion(
        "AC1",
        "every instance pair has a forward king; n=4 sweep under 5 minutes",
        ok && n4_time < Duration::from_secs(300),
        &format!("{detail}; n=4 sweep {:.3}s", n4_time.as_secs_f64()),
    );
}

#[test]
fn ac2_co_king_exists() {
    let mut runs = Vec::new();
    for n in 1..=4 {
        runs.push((exhaustive(n, ClaimKind::CoKingExists), pairs_at(n)));
        runs.push((exhaustive(n, ClaimKind::DualTransformSound), pairs_at(n)));
    }
    let (ok, detail) = all_clean(&runs);
    criterion("AC2", "co-kings exist and equal the dual instance's forward kings", ok, &detail);
}

#[test]
fn ac3_condition_equivalence() {
    let mut runs = Vec::new();
    for n in 1..=4 {
        runs.push((exhaustive(n, ClaimKind::ReachBlockedEquivalence), pairs_at(n)));
    }
    runs.push((random(8, 10_000, ClaimKind::ReachBlockedEquivalence), 10_000));
    runs.push((random(32, 10_000, ClaimKind::ReachBlockedEquivalence), 10_000));
    let (ok, detail) = all_clean(&runs);
    criterion("AC3", "blocked(i,j) <=> !reaches(i,j) on every ordered pair", ok, &detail);
}

#[test]
fn ac4_simulator_agreement() {
    let runs = vec![
        (exhaustive(3, ClaimKind::SimulatorAgreement), 64),
        (random(64, 10_000, ClaimKind::SimulatorAgreement), 10_000),
    ];
    let (ok, detail) = all_clean(&runs);
    criterion("AC4", "kings after two simulated rounds equal forward kings", ok, &detail);
}

#[test]
fn ac5_constructive_finders() {
    let mut runs = vec![(exhaustive(4, ClaimKind::InductiveFinderSound), pairs_at(4))];
    for n in 4..=10 {
        runs.push((random(n, 10_000, ClaimKind::InductiveFinderSound), 10_000));
    }
    for n in 1..=4 {
        runs.push((exhaustive(n, ClaimKind::RainbowFinderSound), pairs_at(n)));
    }
    runs.push((random(64, 10_000, ClaimKind::RainbowFinderSound), 10_000));
    let (ok, detail) = all_clean(&runs);
    criterion("AC5", "inductive finder returns forward kings, rainbow finder rainbow kings", ok, &detail);
}

#[test]
fn ac6_landau_special_case() {
    let mut runs = Vec::new();
    for n in 1..=5 {
        runs.push((exhaustive(n, ClaimKind::LandauSpecialCase), 1 << pair_count(n)));
    }
    let (ok, detail) = all_clean(&runs);
    criterion(
        "AC6",
        "every max-out-degree vertex is a king of (T,T), all tournaments n <= 5",
        ok && runs[4].0.instances_checked == 1024,
        &detail,
    );
}

/// Re-validates a search witness from its hex codes alone.
fn recheck_witness(n: usize, w: &twoking::verify::SearchWitness) -> bool {
    let t1 = Tournament::from_index(&InstanceIndex::from_hex(n, &w.t1).unwrap()).unwrap();
    let t2 = Tournament::from_index(&InstanceIndex::from_hex(n, &w.t2).unwrap()).unwrap();
    let position = (t1.to_code().unwrap() << pair_count(n)) | t2.to_code().unwrap();
    position == w.position
        && oracle::rainbow_kings(&t1, &t2).contains(&w.vertex)
        && !oracle::forward_kings(&t1, &t2).contains(&w.vertex)
        && oracle::forward_kings(&t1, &t2) == w.forward_kings
        && oracle::rainbow_kings(&t1, &t2) == w.rainbow_kings
}

#[test]
fn ac7_order_sensitivity_report() {
    let mut ok = true;
    let mut parts = Vec::new();
    let mut smallest = None;
    for n in 1..=4 {
        let start = Instant::now();
        let r = search_order_sensitivity(n, &RunOptions::default(), None).unwrap();
        let elapsed = start.elapsed();
        ok &= r.complete && r.instances_scanned == pairs_at(n);
        ok &= elapsed < Duration::from_secs(600);
        match &r.first_witness {
            Some(w) => {
                ok &= w.validated && recheck_witness(n, w) && r.separating_instances > 0;
                smallest.get_or_insert(n);
                parts.push(format!(
                    "n={n}: {}/{} separating, first at {} (vertex {}), {:.3}s",
                    r.separating_instances,
                    r.instances_scanned,
                    w.position,
                    w.vertex,
                    elapsed.as_secs_f64()
                ));
            }
            None => {
                ok &= r.separating_instances == 0;
                parts.push(format!("n={n}: none in full scan"));
            }
        }
    }
    parts.push(format!("smallest separating n = {smallest:?}"));
    criterion("AC7", "order-sensitivity search complete and oracle-validated at n <= 4", ok, &parts.join("; "));
}

#[test]
fn ac8_performance() {
    let t1 = Tournament::generate(1024, Model::Uniform { seed: 1 }).unwrap();
    let t2 = Tournament::generate(1024, Model::Uniform { seed: 2 }).unwrap();
    let start = Instant::now();
    let kings = forward_kings(&t1, &t2).unwrap();
    let kings_time = start.elapsed();

    let t = Tournament::generate(4096, Model::Uniform { seed: 3 }).unwrap();
    let state = initial_state(4096).unwrap();
    let start = Instant::now();
    let after = step(&state, &t).unwrap();
    let first_round = start.elapsed();
    let start = Instant::now();
    let _ = step(&after, &t.reverse()).unwrap();
    let second_round = start.elapsed();
    let limit = Duration::from_secs(2);
    criterion(
        "AC8",
        "forward_kings at n=1024 and step at n=4096 each under 2s",
        !kings.is_empty() && kings_time < limit && first_round < limit && second_round < limit,
        &format!(
            "forward_kings {:.3}s, step {:.3}s / {:.3}s",
            kings_time.as_secs_f64(),
            first_round.as_secs_f64(),
            second_round.as_secs_f64()
        ),
    );
}

#[test]
fn ac9_determinism() {
    let mut ok = true;
    let baseline = random_verify(16, 2_000, 99, ClaimKind::SimulatorAgreement, &RunOptions::with_workers(1))
        .unwrap()
        .canonical();
    for workers in [1, 2, 3, 8] {
        let again = random_verify(16, 2_000, 99, ClaimKind::SimulatorAgreement, &RunOptions::with_workers(workers))
            .unwrap()
            .canonical();
        ok &= again == baseline && again.to_text() == baseline.to_text();
    }
    let ex = exhaustive_verify(4, ClaimKind::CoKingExists, &RunOptions::with_workers(1)).unwrap().canonical();
    let ex4 = exhaustive_verify(4, ClaimKind::CoKingExists, &RunOptions::with_workers(4)).unwrap().canonical();
    ok &= ex == ex4;
    let s1 = search_order_sensitivity(4, &RunOptions::with_workers(1), None).unwrap().canonical();
    let s5 = search_order_sensitivity(4, &RunOptions::with_workers(5), None).unwrap().canonical();
    ok &= s1 == s5;
    criterion("AC9", "identical seeds give identical reports for any worker count", ok, "workers 1,2,3,4,5,8");
}
