use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use super::ClaimKind;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Exhaustive,
    Random,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Exhaustive => "exhaustive",
            Mode::Random => "random",
        })
    }
}

/// One instance on which a claim failed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FailureWitness {
    /// Enumeration position: `(T1 code << C(n,2)) | T2 code` for pairs, the
    /// code itself for single tournaments, the sample index in random mode.
    pub position: u64,
    /// First-round tournament as zero-padded pair-bit hex.
    pub t1: String,
    /// Second-round tournament; absent for single-tournament claims.
    pub t2: Option<String>,
    pub sample: Option<u64>,
    /// Whether the slow reference implementation also sees the failure.
    pub confirmed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub claim: ClaimKind,
    pub n: usize,
    pub mode: Mode,
    pub seed: Option<u64>,
    pub instances_checked: u64,
    pub failures: u64,
    pub failure_witnesses: Vec<FailureWitness>,
    /// Timing only; not covered by determinism guarantees.
    pub wall_time_s: f64,
}

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    /// The report with its timing field zeroed.
    pub fn canonical(&self) -> Self {
        VerificationReport { wall_time_s: 0.0, ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| parse_err(e.line(), e.to_string()))
    }

    /// Line-oriented `key: value` form. Witness lines carry their fields as
    /// `name=value` tokens with `detail` last, extending to end of line.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let opt = |v: Option<u64>| v.map_or_else(|| "none".to_string(), |x| x.to_string());
        writeln!(s, "claim: {}", self.claim).unwrap();
        writeln!(s, "n: {}", self.n).unwrap();
        writeln!(s, "mode: {}", self.mode).unwrap();
        writeln!(s, "seed: {}", opt(self.seed)).unwrap();
        writeln!(s, "instances_checked: {}", self.instances_checked).unwrap();
        writeln!(s, "failures: {}", self.failures).unwrap();
        for f in &self.failure_witnesses {
            writeln!(
                s,
                "failure: position={} sample={} t1=hex:{} t2={} confirmed={} detail={}",
                f.position,
                opt(f.sample),
                f.t1,
                f.t2.as_ref().map_or_else(|| "none".to_string(), |h| format!("hex:{h}")),
                f.confirmed,
                f.detail
            )
            .unwrap();
        }
        writeln!(s, "wall_time_s: {:.6} (timing, not deterministic)", self.wall_time_s).unwrap();
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut claim = None;
        let mut n = None;
        let mut mode = None;
        let mut seed = None;
        let mut checked = None;
        let mut failures = None;
        let mut wall = None;
        let mut witnesses = Vec::new();
        for (no, line) in text.lines().enumerate().map(|(i, l)| (i + 1, l.trim_end())) {
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once(": ").ok_or_else(|| parse_err(no, "expected `key: value`"))?;
            let num = |v: &str| v.parse::<u64>().map_err(|_| parse_err(no, format!("bad number {v:?}")));
            let opt_num = |v: &str| if v == "none" { Ok(None) } else { num(v).map(Some) };
            match key {
                "claim" => claim = Some(value.parse::<ClaimKind>().map_err(|e| parse_err(no, e))?),
                "n" => n = Some(num(value)? as usize),
                "mode" => {
                    mode = Some(match value {
                        "exhaustive" => Mode::Exhaustive,
                        "random" => Mode::Random,
                        other => return Err(parse_err(no, format!("unknown mode {other:?}"))),
                    })
                }
                "seed" => seed = Some(opt_num(value)?),
                "instances_checked" => checked = Some(num(value)?),
                "failures" => failures = Some(num(value)?),
                "wall_time_s" => {
                    let first = value.split_whitespace().next().unwrap_or("");
                    wall = Some(first.parse::<f64>().map_err(|_| parse_err(no, "bad wall time"))?);
                }
                "failure" => {
                    let (fields, detail) =
                        value.split_once(" detail=").ok_or_else(|| parse_err(no, "failure without detail"))?;
                    let get = |name: &str| -> Result<String> {
                        fields
                            .split_whitespace()
                            .find_map(|tok| tok.strip_prefix(name).and_then(|t| t.strip_prefix('=')))
                            .map(str::to_string)
                            .ok_or_else(|| parse_err(no, format!("failure without {name}")))
                    };
                    let hex = |v: String| v.strip_prefix("hex:").map(str::to_string);
                    let t1 = hex(get("t1")?).ok_or_else(|| parse_err(no, "t1 must be hex:"))?;
                    let t2 = match get("t2")?.as_str() {
                        "none" => None,
                        other => Some(hex(other.to_string()).ok_or_else(|| parse_err(no, "t2 must be hex:"))?),
                    };
                    witnesses.push(FailureWitness {
                        position: num(&get("position")?)?,
                        sample: opt_num(&get("sample")?)?,
                        t1,
                        t2,
                        confirmed: get("confirmed")? == "true",
                        detail: detail.to_string(),
                    });
                }
                other => return Err(parse_err(no, format!("unknown key {other:?}"))),
            }
        }
        let missing = |what: &str| parse_err(0, format!("missing {what}"));
        Ok(VerificationReport {
            claim: claim.ok_or_else(|| missing("claim"))?,
            n: n.ok_or_else(|| missing("n"))?,
            mode: mode.ok_or_else(|| missing("mode"))?,
            seed: seed.ok_or_else(|| missing("seed"))?,
            instances_checked: checked.ok_or_else(|| missing("instances_checked"))?,
            failures: failures.ok_or_else(|| missing("failures"))?,
            failure_witnesses: witnesses,
            wall_time_s: wall.unwrap_or(0.0),
        })
    }
}
