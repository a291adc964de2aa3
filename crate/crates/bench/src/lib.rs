//! Desk-scale experiment harness for DTT graph filters: operator
//! verification, filter design, runtime/accuracy benchmarks and the
//! transform pruning simulation.

pub mod commands;
pub mod config;
pub mod setup;

pub use commands::{cmd_bench, cmd_design, cmd_prune_sim, cmd_verify, BlockSource};
pub use config::{BenchConfig, FilterSpec, Graph, Method};
pub use setup::{Experiment, Filter};
