//! Effectiveness of pinning control on undirected networks, measured by the
//! smallest eigenvalue `lambda1` of the grounded Laplacian `L(S|S)`.
//!
//! A network pinned at `S` synchronizes to the target whenever
//! `lambda1(L(S|S)) > alpha / c`, so choosing `S` well means making `lambda1`
//! large. This crate builds grounded Laplacians, bounds `lambda1` from the
//! topology, implements several selection strategies, and simulates the
//! controlled dynamics.

pub mod bounds;
pub mod error;
pub mod generators;
pub mod graph;
pub mod rng;
pub mod spectra;
pub mod strategies;
pub mod sweep;
pub mod sync_sim;

pub use bounds::{bound_report, BoundReport};
pub use error::{Error, Result};
pub use graph::{ground, laplacian, parse_edge_list, write_edge_list, Graph, GroundedLaplacian, PinSet};
pub use spectra::{eig_sym, lambda1, Spectrum};
pub use strategies::{SelectionResult, Strategy, StrategyConfig};
