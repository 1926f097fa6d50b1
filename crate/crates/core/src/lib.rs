//! Kings of two-round communication over pairs of tournaments.
//!
//! For any two tournaments `T1`, `T2` on the same vertices there is a vertex
//! whose item reaches everyone after one round along `T1` followed by one
//! round along `T2`. This crate provides the reachability relation behind
//! that statement, constructive finders, a round-by-round dissemination
//! simulator, and a harness that checks the claims exhaustively for small
//! `n` and on seeded random instances for large `n`.
//!
//! All graph types are generic over the bitset word; the aliases below fix
//! it to `u64`, which is what the CLI and the test suites use.

pub mod algorithms;
pub mod bitset;
pub mod error;
pub mod format;
pub mod reach;
pub mod sim;
pub mod tournament;
pub mod verify;

pub use algorithms::{
    dual_transform, find_co_king, find_king_inductive, find_rainbow_king, find_rainbow_king_traced, Color, Pivot,
    ProofTrace, TraceStep,
};
pub use bitset::Word;
pub use error::{Error, Result};
pub use reach::{
    blocked, certify_king, co_kings, find_king_brute, forward_kings, rainbow_kings, rainbow_reaches, reaches, CertificateError,
    Direction, KingCertificate, RainbowWitness, ReachWitness,
};
pub use sim::{initial_state, kings_after, run, step};
pub use tournament::{InstanceIndex, Model, VertexId};

pub type BitSet = bitset::BitSet<u64>;
pub type VertexSet = tournament::VertexSet<u64>;
pub type Tournament = tournament::Tournament<u64>;
pub type RoundSchedule = sim::RoundSchedule<u64>;
pub type KnowledgeState = sim::KnowledgeState<u64>;
