//! Per-instance claim checkers.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::oracle;
use crate::algorithms::{dual_transform, find_co_king, find_king_inductive, find_rainbow_king};
use crate::reach::{self, co_kings, find_king_brute, forward_kings, rainbow_kings};
use crate::sim::{kings_after, run};
use crate::{RoundSchedule, Tournament};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClaimKind {
    /// Some `ν` with `ν ⇒ j` for every `j`.
    #[serde(rename = "forward-king")]
    ForwardKingExists,
    /// Some `μ` with `i ⇒ μ` for every `i`, matching the dual instance's kings.
    #[serde(rename = "co-king")]
    CoKingExists,
    #[serde(rename = "rainbow-king")]
    RainbowKingExists,
    #[serde(rename = "reach-blocked")]
    ReachBlockedEquivalence,
    #[serde(rename = "simulator")]
    SimulatorAgreement,
    /// Checked on single tournaments `(T, T)`.
    #[serde(rename = "landau")]
    LandauSpecialCase,
    #[serde(rename = "inductive-finder")]
    InductiveFinderSound,
    #[serde(rename = "rainbow-finder")]
    RainbowFinderSound,
    #[serde(rename = "dual-transform")]
    DualTransformSound,
}

impl ClaimKind {
    pub const ALL: [ClaimKind; 9] = [
        ClaimKind::ForwardKingExists,
        ClaimKind::CoKingExists,
        ClaimKind::RainbowKingExists,
        ClaimKind::ReachBlockedEquivalence,
        ClaimKind::SimulatorAgreement,
        ClaimKind::LandauSpecialCase,
        ClaimKind::InductiveFinderSound,
        ClaimKind::RainbowFinderSound,
        ClaimKind::DualTransformSound,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClaimKind::ForwardKingExists => "forward-king",
            ClaimKind::CoKingExists => "co-king",
            ClaimKind::RainbowKingExists => "rainbow-king",
            ClaimKind::ReachBlockedEquivalence => "reach-blocked",
            ClaimKind::SimulatorAgreement => "simulator",
            ClaimKind::LandauSpecialCase => "landau",
            ClaimKind::InductiveFinderSound => "inductive-finder",
            ClaimKind::RainbowFinderSound => "rainbow-finder",
            ClaimKind::DualTransformSound => "dual-transform",
        }
    }

    /// Whether an instance is a single tournament rather than a pair.
    pub fn is_single(self) -> bool {
        self == ClaimKind::LandauSpecialCase
    }

    /// Largest `n` this claim accepts at all.
    pub fn max_n(self) -> Option<usize> {
        match self {
            ClaimKind::InductiveFinderSound => Some(INDUCTIVE_LIMIT),
            _ => None,
        }
    }
}

const SAME_SIZE: &str = "both rounds of an instance share n";

/// The inductive finder is exponential in the worst case.
pub const INDUCTIVE_LIMIT: usize = 12;

impl fmt::Display for ClaimKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClaimKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        ClaimKind::ALL.into_iter().find(|c| c.name() == s).ok_or_else(|| {
            let names: Vec<_> = ClaimKind::ALL.iter().map(|c| c.name()).collect();
            format!("unknown claim {s:?}; expected one of {}", names.join(", "))
        })
    }
}

fn list(v: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = v.into_iter().map(|x| x.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

/// Every maximum-out-degree vertex of `t` is a forward king of `(t, t)`.
pub fn check_landau(t: &Tournament) -> bool {
    let kings = forward_kings(t, t).expect("same size");
    t.max_out_degree_vertices().is_subset(&kings)
}

/// Checks one instance. `None` means the claim holds; otherwise a short
/// description of what went wrong. For single-tournament claims `t2` is
/// ignored.
pub fn check(claim: ClaimKind, t1: &Tournament, t2: &Tournament) -> Option<String> {
    let n = t1.n();
    match claim {
        ClaimKind::ForwardKingExists => {
            let kings = forward_kings(t1, t2).expect(SAME_SIZE);
            if kings.is_empty() {
                return Some("no forward king".into());
            }
            let cert = find_king_brute(t1, t2).expect(SAME_SIZE);
            cert.validate(t1, t2).err().map(|e| format!("certificate rejected: {e}"))
        }
        ClaimKind::CoKingExists => {
            let co = co_kings(t1, t2).expect(SAME_SIZE);
            if co.is_empty() {
                return Some("no co-king".into());
            }
            let (d1, d2) = dual_transform(t1, t2).expect(SAME_SIZE);
            let dual = forward_kings(&d1, &d2).expect(SAME_SIZE);
            if co != dual {
                return Some(format!("co-kings {} differ from dual forward kings {}", list(&co), list(&dual)));
            }
            let (_, cert) = find_co_king(t1, t2).expect(SAME_SIZE);
            cert.validate(t1, t2).err().map(|e| format!("co-king certificate rejected: {e}"))
        }
        ClaimKind::RainbowKingExists => {
            let rainbow = rainbow_kings(t1, t2).expect(SAME_SIZE);
            let forward = forward_kings(t1, t2).expect(SAME_SIZE);
            if rainbow.is_empty() {
                Some("no rainbow king".into())
            } else if !forward.is_subset(&rainbow) {
                Some(format!("forward kings {} not inside rainbow kings {}", list(&forward), list(&rainbow)))
            } else {
                None
            }
        }
        ClaimKind::ReachBlockedEquivalence => {
            for i in 0..n {
                for j in 0..n {
                    let reaches = reach::reach_witness(t1, t2, i, j).is_some();
                    let blocked = reach::is_blocked(t1, t2, i, j);
                    if reaches == blocked {
                        return Some(format!("({i},{j}): reaches={reaches} blocked={blocked}"));
                    }
                    if blocked && t2.out_degree(j) <= t1.out_degree(i) {
                        return Some(format!("({i},{j}): blocked without |Γ2(j)| > |Γ1(i)|"));
                    }
                }
            }
            None
        }
        ClaimKind::SimulatorAgreement => {
            let schedule = RoundSchedule::new(vec![t1.clone(), t2.clone()]).expect(SAME_SIZE);
            let state = run(&schedule, 2).expect(SAME_SIZE);
            let simulated = kings_after(&state);
            let kings = forward_kings(t1, t2).expect(SAME_SIZE);
            if simulated != kings {
                return Some(format!("simulated kings {} vs forward kings {}", list(&simulated), list(&kings)));
            }
            if simulated.is_empty() {
                return Some("no king after two rounds".into());
            }
            (0..n).find_map(|i| {
                let row = reach::reach_row(t1, t2, i);
                (0..n)
                    .find(|&j| state.knows(i, j) != row.contains(j))
                    .map(|j| format!("item {i} at processor {j}: simulator and reachability disagree"))
            })
        }
        ClaimKind::LandauSpecialCase => {
            (!check_landau(t1)).then(|| "a maximum out-degree vertex is not a king of (T,T)".into())
        }
        ClaimKind::InductiveFinderSound => {
            let (king, _) = find_king_inductive(t1, t2).expect(SAME_SIZE);
            let kings = forward_kings(t1, t2).expect(SAME_SIZE);
            (!kings.contains(king)).then(|| format!("inductive finder returned {king}, kings are {}", list(&kings)))
        }
        ClaimKind::RainbowFinderSound => {
            let king = find_rainbow_king(t1, t2).expect(SAME_SIZE);
            let kings = rainbow_kings(t1, t2).expect(SAME_SIZE);
            (!kings.contains(king)).then(|| format!("rainbow finder returned {king}, rainbow kings are {}", list(&kings)))
        }
        ClaimKind::DualTransformSound => {
            let (d1, d2) = dual_transform(t1, t2).expect(SAME_SIZE);
            if dual_transform(&d1, &d2).expect(SAME_SIZE) != (t1.clone(), t2.clone()) {
                return Some("dual transform is not an involution".into());
            }
            let co = co_kings(t1, t2).expect(SAME_SIZE);
            let dual = forward_kings(&d1, &d2).expect(SAME_SIZE);
            (co != dual).then(|| format!("co-kings {} vs dual forward kings {}", list(&co), list(&dual)))
        }
    }
}

/// Re-evaluates a reported failure with the slow reference implementations.
/// Returns true when the reference agrees that the claim fails.
pub fn confirm(claim: ClaimKind, t1: &Tournament, t2: &Tournament) -> bool {
    let n = t1.n();
    match claim {
        ClaimKind::ForwardKingExists => oracle::forward_kings(t1, t2).is_empty(),
        ClaimKind::CoKingExists | ClaimKind::DualTransformSound => {
            let co = oracle::co_kings(t1, t2);
            co.is_empty() || co != oracle::forward_kings(&t2.reverse(), &t1.reverse())
        }
        ClaimKind::RainbowKingExists => {
            let rainbow = oracle::rainbow_kings(t1, t2);
            rainbow.is_empty() || oracle::forward_kings(t1, t2).iter().any(|v| !rainbow.contains(v))
        }
        ClaimKind::ReachBlockedEquivalence => (0..n).any(|i| {
            (0..n).any(|j| oracle::reaches(t1, t2, i, j) == oracle::blocked(t1, t2, i, j))
        }),
        ClaimKind::SimulatorAgreement => {
            let know = oracle::simulate(&[t1, t2], n);
            let kings: Vec<usize> = (0..n).filter(|&i| know[i].iter().all(|&b| b)).collect();
            kings.is_empty() || kings != oracle::forward_kings(t1, t2)
        }
        ClaimKind::LandauSpecialCase => {
            let kings = oracle::forward_kings(t1, t1);
            oracle::max_out_degree_vertices(t1).iter().any(|v| !kings.contains(v))
        }
        ClaimKind::InductiveFinderSound => match find_king_inductive(t1, t2) {
            Ok((king, _)) => !oracle::forward_kings(t1, t2).contains(&king),
            Err(_) => false,
        },
        ClaimKind::RainbowFinderSound => match find_rainbow_king(t1, t2) {
            Ok(king) => !oracle::rainbow_kings(t1, t2).contains(&king),
            Err(_) => false,
        },
    }
}
