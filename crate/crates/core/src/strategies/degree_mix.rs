use rand::seq::SliceRandom;
use rand::Rng;
use rayon::prelude::*;

use super::{grounded_lambda1, mean, SelectionResult, Strategy, StrategyConfig};
use crate::error::Result;
use crate::graph::{Graph, PinSet};
use crate::rng;

/// Pins taken from the high-degree end: `q * l` rounded half to even.
pub fn high_count(q: f64, l: usize) -> usize {
    ((q * l as f64).round_ties_even() as usize).min(l)
}

/// One draw of the degree-mix pin set: the `high_count(q, l)` largest
/// degrees, then the smallest degrees among the rest. Equal degrees are
/// ordered at random.
pub fn degree_mix_set<R: Rng + ?Sized>(g: &Graph, l: usize, q: f64, rng: &mut R) -> PinSet {
    let high = high_count(q, l);
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.shuffle(rng);
    // stable sort keeps the shuffled order inside each degree class
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut chosen: Vec<usize> = order[..high].to_vec();
    chosen.extend(order[high..].iter().rev().take(l - high));
    chosen.sort_unstable();
    PinSet::from_sorted_unchecked(chosen)
}

/// Degree-mix selection averaged over `cfg.runs` independently tie-broken
/// draws. Run `r` uses the RNG stream `(cfg.seed, r)`.
pub fn select_degree_mix(g: &Graph, cfg: &StrategyConfig) -> Result<SelectionResult> {
    cfg.validate(g.node_count())?;
    let draws: Vec<(PinSet, f64)> = (0..cfg.runs)
        .into_par_iter()
        .map(|run| {
            let mut rng = rng::stream(cfg.seed, run as u64);
            let s = degree_mix_set(g, cfg.l, cfg.q, &mut rng);
            let lambda1 = grounded_lambda1(g, &s)?;
            Ok((s, lambda1))
        })
        .collect::<Result<_>>()?;
    let lambda1_runs: Vec<f64> = draws.iter().map(|d| d.1).collect();
    let pin_set = draws.into_iter().next().map(|d| d.0).expect("runs >= 1");
    Ok(SelectionResult {
        strategy: Strategy::DegreeMix,
        l: cfg.l,
        q: Some(cfg.q),
        seed: Some(cfg.seed),
        pin_set,
        lambda1: mean(&lambda1_runs),
        lambda1_runs,
    })
}
