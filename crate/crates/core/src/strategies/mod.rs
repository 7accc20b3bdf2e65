//! Node-selection schemes for choosing which nodes to pin.

mod betweenness;
mod degree_mix;
mod dominating;
mod search;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{self, Graph, PinSet};
use crate::spectra;

pub use betweenness::{betweenness, select_betweenness};
pub use degree_mix::{degree_mix_set, high_count, select_degree_mix};
pub use dominating::dominating_partition;
pub use search::{
    binomial, brute_force_max_lambda1, brute_force_with_budget, greedy_max_lambda1,
    DEFAULT_BUDGET,
};

/// Runs averaged by the degree-mix strategy unless overridden.
pub const DEFAULT_DEGREE_MIX_RUNS: usize = 5;

/// Runs used when random ties leave many equally ranked node combinations.
pub const DEFAULT_TIE_RUNS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Strategy {
    DegreeMix,
    Betweenness,
    Dominating,
    BruteForce,
    Greedy,
}

impl Strategy {
    pub fn as_str(self) -> &'static str {
        match self {
            Strategy::DegreeMix => "degree_mix",
            Strategy::Betweenness => "betweenness",
            Strategy::Dominating => "dominating",
            Strategy::BruteForce => "brute_force",
            Strategy::Greedy => "greedy",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StrategyConfig {
    pub l: usize,
    /// Fraction of the pins taken from the highest degrees.
    pub q: f64,
    pub seed: u64,
    pub runs: usize,
}

impl StrategyConfig {
    pub fn new(l: usize, q: f64, seed: u64) -> Self {
        StrategyConfig {
            l,
            q,
            seed,
            runs: DEFAULT_DEGREE_MIX_RUNS,
        }
    }

    pub fn with_runs(mut self, runs: usize) -> Self {
        self.runs = runs;
        self
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        check_pin_count(n, self.l)?;
        if !(0.0..=1.0).contains(&self.q) {
            return Err(Error::param(format!("q = {} outside [0, 1]", self.q)));
        }
        if self.runs == 0 {
            return Err(Error::param("runs must be at least 1"));
        }
        Ok(())
    }
}

/// A chosen pin set with its `lambda1`. For randomized strategies
/// `pin_set` is the set drawn in run 0 and `lambda1` is the mean over runs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SelectionResult {
    pub strategy: Strategy,
    pub l: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<f64>,
    pub seed: Option<u64>,
    pub pin_set: PinSet,
    pub lambda1: f64,
    pub lambda1_runs: Vec<f64>,
}

impl SelectionResult {
    fn single(strategy: Strategy, seed: Option<u64>, pin_set: PinSet, lambda1: f64) -> Self {
        SelectionResult {
            strategy,
            l: pin_set.len(),
            q: None,
            seed,
            pin_set,
            lambda1,
            lambda1_runs: vec![lambda1],
        }
    }
}

pub(crate) fn check_pin_count(n: usize, l: usize) -> Result<()> {
    if l == 0 || l >= n {
        return Err(Error::PinCountOutOfRange {
            l,
            max: n.saturating_sub(1),
        });
    }
    Ok(())
}

/// `lambda1(L(S|S))` for an already validated pin set.
pub fn grounded_lambda1(g: &Graph, s: &PinSet) -> Result<f64> {
    let grounded = graph::ground(g, s)?;
    spectra::lambda1(grounded.matrix())
}

pub(crate) fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}
