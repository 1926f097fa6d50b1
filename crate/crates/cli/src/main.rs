//! `twoking` command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage or I/O errors, 2 when a
//! verification finds failures or a search finds a witness.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use twoking::format::{parse, parse_schedule, serialize, serialize_hex};
use twoking::verify::{
    exhaustive_verify, random_verify, search_order_sensitivity, ClaimKind, RunOptions, INDUCTIVE_LIMIT,
};
use twoking::{
    certify_king, find_co_king, find_king_brute, find_king_inductive, find_rainbow_king_traced, kings_after,
    rainbow_reaches, run, KingCertificate, Model, RoundSchedule, Tournament,
};

#[derive(Parser)]
#[command(name = "twoking", version, about = "Two-round kings in pairs of tournaments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a tournament file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        model: GenModel,
        /// Required for the uniform model.
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write the compact `hex:` form instead of the matrix.
        #[arg(long)]
        hex: bool,
    },
    /// Find a vertex that reaches every other vertex in two rounds.
    FindKing {
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        #[arg(long, value_enum, default_value = "brute")]
        algo: Algo,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Find a vertex that every other vertex reaches in two rounds.
    FindCoKing {
        #[arg(long)]
        t1: PathBuf,
        #[arg(long)]
        t2: PathBuf,
        #[arg(long)]
        certificate: bool,
        #[arg(long)]
        json: bool,
    },
    /// Run the dissemination simulator over a schedule file.
    Simulate {
        #[arg(long)]
        schedule: PathBuf,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        json: bool,
    },
    /// Check a claim exhaustively or on seeded random instances.
    Verify {
        #[arg(long, value_parser = parse_claim)]
        claim: ClaimKind,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        mode: VerifyMode,
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Allow exhaustive runs at n = 6 (2^30 instance pairs).
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        json: bool,
    },
    /// Search for instances separating rainbow kings from forward kings.
    Search {
        #[arg(long, value_enum)]
        target: SearchTarget,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        workers: Option<usize>,
        /// Stop after this many instance pairs.
        #[arg(long)]
        limit: Option<u64>,
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum GenModel {
    Uniform,
    Transitive,
    Rotational,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Brute,
    Inductive,
    Rainbow,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyMode {
    Exhaustive,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum SearchTarget {
    OrderSensitivity,
}

fn parse_claim(s: &str) -> Result<ClaimKind, String> {
    s.parse()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn load_tournament(path: &Path) -> Result<Tournament> {
    parse(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn load_pair(t1: &Path, t2: &Path) -> Result<(Tournament, Tournament)> {
    let (a, b) = (load_tournament(t1)?, load_tournament(t2)?);
    if a.n() != b.n() {
        bail!("size mismatch: --t1 has n={} but --t2 has n={}", a.n(), b.n());
    }
    Ok((a, b))
}

fn set_text(members: impl IntoIterator<Item = usize>) -> String {
    let items: Vec<String> = members.into_iter().map(|m| m.to_string()).collect();
    format!("{{{}}}", items.join(","))
}

fn print_certificate(cert: &KingCertificate) {
    for (v, w) in &cert.witnesses {
        match cert.direction {
            twoking::Direction::Outgoing => println!("  {} => {v}: {w}", cert.king),
            twoking::Direction::Incoming => println!("  {v} => {}: {w}", cert.king),
        }
    }
}

fn gen(n: usize, model: GenModel, seed: Option<u64>, out: Option<PathBuf>, hex: bool) -> Result<ExitCode> {
    let model = match (model, seed) {
        (GenModel::Uniform, Some(seed)) => Model::Uniform { seed },
        (GenModel::Uniform, None) => bail!("--model uniform requires --seed"),
        (GenModel::Transitive, _) => Model::Transitive,
        (GenModel::Rotational, _) => Model::Rotational,
    };
    let t = Tournament::generate(n, model)?;
    let text = if hex { serialize_hex(&t) } else { serialize(&t) };
    match out {
        Some(path) => fs::write(&path, text).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{text}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn find_king(t1: &Path, t2: &Path, algo: Algo, certificate: bool, as_json: bool) -> Result<ExitCode> {
    let (t1, t2) = load_pair(t1, t2)?;
    match algo {
        Algo::Brute | Algo::Inductive => {
            let (king, trace) = if algo == Algo::Brute {
                (find_king_brute(&t1, &t2)?.king, None)
            } else {
                if t1.n() > INDUCTIVE_LIMIT {
                    bail!("--algo inductive is limited to n <= {INDUCTIVE_LIMIT} (got n={})", t1.n());
                }
                let (king, trace) = find_king_inductive(&t1, &t2)?;
                (king, Some(trace))
            };
            let cert = certify_king(&t1, &t2, king)?.context("finder returned a vertex that is not a king")?;
            cert.validate(&t1, &t2)?;
            let name = if algo == Algo::Brute { "brute" } else { "inductive" };
            if as_json {
                let mut out = json!({ "king": king, "algorithm": name });
                if certificate {
                    out["certificate"] = serde_json::to_value(&cert)?;
                }
                if let Some(trace) = &trace {
                    out["trace"] = serde_json::to_value(trace)?;
                }
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("king: {king}");
                println!("algorithm: {name}");
                if let Some(trace) = &trace {
                    for s in &trace.steps {
                        println!(
                            "  excluded {}: candidate {} {}",
                            s.excluded,
                            s.candidate,
                            if s.reached_excluded { "reaches it" } else { "blocked" }
                        );
                    }
                    println!("depth: {}", trace.depth);
                }
                if certificate {
                    println!("certificate: validated");
                    print_certificate(&cert);
                }
            }
        }
        Algo::Rainbow => {
            eprintln!("warning: --algo rainbow certifies a rainbow king, which allows a round-2 edge before a round-1 edge; it need not be a two-round king");
            let (king, pivots) = find_rainbow_king_traced(&t1, &t2)?;
            let witnesses = (0..t1.n())
                .filter(|&j| j != king)
                .map(|j| Ok((j, rainbow_reaches(&t1, &t2, king, j)?.context("rainbow finder returned a non-king")?)))
                .collect::<Result<std::collections::BTreeMap<_, _>>>()?;
            if as_json {
                let mut out = json!({ "king": king, "algorithm": "rainbow", "pivots": pivots });
                if certificate {
                    out["rainbow_witnesses"] = serde_json::to_value(&witnesses)?;
                }
                println!("{}", serde_json::to_string_pretty(&out)?);
            } else {
                println!("king: {king}");
                println!("algorithm: rainbow");
                if certificate {
                    for (j, w) in &witnesses {
                        println!("  {king} -> {j}: {w:?}");
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn find_co_king_cmd(t1: &Path, t2: &Path, certificate: bool, as_json: bool) -> Result<ExitCode> {
    let (t1, t2) = load_pair(t1, t2)?;
    let (mu, cert) = find_co_king(&t1, &t2)?;
    cert.validate(&t1, &t2)?;
    if as_json {
        let mut out = json!({ "co_king": mu });
        if certificate {
            out["certificate"] = serde_json::to_value(&cert)?;
        }
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("co-king: {mu}");
        if certificate {
            println!("certificate: validated");
            print_certificate(&cert);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn simulate(path: &Path, rounds: usize, as_json: bool) -> Result<ExitCode> {
    let schedule = RoundSchedule::new(
        parse_schedule(&read(path)?).with_context(|| format!("parsing {}", path.display()))?,
    )?;
    let state = run(&schedule, rounds)?;
    let kings: Vec<usize> = kings_after(&state).iter().collect();
    let rows: Vec<String> = state
        .to_rows()
        .iter()
        .map(|row| row.iter().map(|&b| if b { '1' } else { '0' }).collect())
        .collect();
    if as_json {
        let out = json!({ "n": state.n(), "rounds": rounds, "knowledge": rows, "kings": kings });
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("n: {}", state.n());
        println!("rounds: {rounds}");
        println!("knowledge (row = item, column = processor):");
        for row in &rows {
            println!("{row}");
        }
        println!("kings: {}", set_text(kings));
    }
    Ok(ExitCode::SUCCESS)
}

#[allow(clippy::too_many_arguments)]
fn verify(
    claim: ClaimKind,
    n: usize,
    mode: VerifyMode,
    samples: Option<u64>,
    seed: Option<u64>,
    workers: Option<usize>,
    allow_long: bool,
    as_json: bool,
) -> Result<ExitCode> {
    let options = RunOptions { workers, allow_long };
    let report = match mode {
        VerifyMode::Exhaustive => exhaustive_verify(n, claim, &options)?,
        VerifyMode::Random => {
            let samples = samples.context("--mode random requires --samples")?;
            let seed = seed.context("--mode random requires --seed")?;
            random_verify(n, samples, seed, claim, &options)?
        }
    };
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn search(n: usize, workers: Option<usize>, limit: Option<u64>, allow_long: bool, as_json: bool) -> Result<ExitCode> {
    let report = search_order_sensitivity(n, &RunOptions { workers, allow_long }, limit)?;
    if as_json {
        println!("{}", report.to_json());
    } else {
        print!("{}", report.to_text());
    }
    Ok(if report.first_witness.is_some() { ExitCode::from(2) } else { ExitCode::SUCCESS })
}

fn dispatch(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Gen { n, model, seed, out, hex } => gen(n, model, seed, out, hex),
        Command::FindKing { t1, t2, algo, certificate, json } => find_king(&t1, &t2, algo, certificate, json),
        Command::FindCoKing { t1, t2, certificate, json } => find_co_king_cmd(&t1, &t2, certificate, json),
        Command::Simulate { schedule, rounds, json } => simulate(&schedule, rounds, json),
        Command::Verify { claim, n, mode, samples, seed, workers, allow_long, json } => {
            verify(claim, n, mode, samples, seed, workers, allow_long, json)
        }
        Command::Search { target: SearchTarget::OrderSensitivity, n, workers, limit, allow_long, json } => {
            search(n, workers, limit, allow_long, json)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
