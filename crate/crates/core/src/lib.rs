//! Abacus combinatorics for the Foulkes module `H^(2^n)` in odd characteristic:
//! p-blocks of even partitions, the invariants `w(γ)` and `E(γ)`, weight-2
//! decomposition numbers and the Loewy structure of the Scott module.

pub mod abacus;
pub mod blocks;
pub mod bounds;
pub mod error;
pub mod foulkes;
pub mod oracle;
pub mod partition;
pub mod selftest;
pub mod weight2;

pub use abacus::{Abacus, Gap, GapParity, Quotient, RimHook};
pub use blocks::{
    block_of, core_profile, enumerate_block, two_runner_w, witness, BlockId, CoreProfile,
};
pub use bounds::Bounds;
pub use error::{Error, Result};
pub use foulkes::{
    analyze, character, max_vertex_count, scott, vertex_spectrum, Report, ScottStructure,
    SummandKind, SummandReport,
};
pub use partition::Partition;
pub use weight2::{
    big_delta, chain, colour, decomp_column, delta, label, nu_circ, Chain, Colour, DecompColumn,
    Label, Weight2Block,
};
