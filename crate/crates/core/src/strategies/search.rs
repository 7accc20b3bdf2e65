use rayon::prelude::*;

use super::{check_pin_count, SelectionResult, Strategy};
use crate::error::{Error, Result};
use crate::graph::{grounded_matrix, Graph, PinSet};
use crate::spectra;

/// Largest number of subsets brute force will evaluate by default.
pub const DEFAULT_BUDGET: u128 = 2_000_000;

/// Two `lambda1` values closer than this count as a tie.
const TIE_TOL: f64 = 1e-9;

const CHUNK: u128 = 4096;

/// `C(n, k)`, exact, saturating at `u128::MAX`.
pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by i + 1
        acc = match acc.checked_mul(n - i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Combination with lexicographic rank `rank` among `l`-subsets of `0..n`.
fn unrank(n: usize, l: usize, mut rank: u128) -> Vec<usize> {
    let mut out = Vec::with_capacity(l);
    let mut next = 0;
    for slot in 0..l {
        let mut v = next;
        loop {
            let below = binomial(n - v - 1, l - slot - 1);
            if rank < below {
                break;
            }
            rank -= below;
            v += 1;
        }
        out.push(v);
        next = v + 1;
    }
    out
}

/// Advances to the next combination in lexicographic order.
fn advance(c: &mut [usize], n: usize) -> bool {
    let l = c.len();
    let mut i = l;
    while i > 0 {
        i -= 1;
        if c[i] < n - l + i {
            c[i] += 1;
            for j in i + 1..l {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

fn lambda1_of(g: &Graph, pins: &[usize]) -> Result<f64> {
    let s = PinSet::from_sorted_unchecked(pins.to_vec());
    let retained = s.complement(g.node_count());
    spectra::lambda1(&grounded_matrix(g, &retained))
}

/// Exact `max lambda1(L(S|S))` over all `|S| = l`, with the default budget.
pub fn brute_force_max_lambda1(g: &Graph, l: usize) -> Result<SelectionResult> {
    brute_force_with_budget(g, l, DEFAULT_BUDGET)
}

/// Exact maximizer by enumerating every `l`-subset. Among sets within a tiny
/// tolerance of the maximum, the lexicographically smallest is returned.
pub fn brute_force_with_budget(g: &Graph, l: usize, budget: u128) -> Result<SelectionResult> {
    let n = g.node_count();
    check_pin_count(n, l)?;
    let total = binomial(n, l);
    if total > budget {
        return Err(Error::BudgetExceeded {
            n,
            l,
            combinations: total,
            budget,
        });
    }
    let chunks = total.div_ceil(CHUNK);
    let values: Vec<f64> = (0..chunks as u64)
        .into_par_iter()
        .map(|chunk| {
            let start = chunk as u128 * CHUNK;
            let len = CHUNK.min(total - start) as usize;
            let mut c = unrank(n, l, start);
            let mut out = Vec::with_capacity(len);
            for i in 0..len {
                out.push(lambda1_of(g, &c)?);
                if i + 1 < len {
                    advance(&mut c, n);
                }
            }
            Ok(out)
        })
        .collect::<Result<Vec<Vec<f64>>>>()?
        .concat();
    let best = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let rank = values
        .iter()
        .position(|&v| v >= best - TIE_TOL)
        .expect("at least one subset");
    let s = PinSet::from_sorted_unchecked(unrank(n, l, rank as u128));
    Ok(SelectionResult::single(Strategy::BruteForce, None, s, values[rank]))
}

/// Adds, `l` times, the node whose pinning gives the largest `lambda1`.
/// Ties go to the smaller node id.
pub fn greedy_max_lambda1(g: &Graph, l: usize) -> Result<SelectionResult> {
    let n = g.node_count();
    check_pin_count(n, l)?;
    let mut pins: Vec<usize> = Vec::with_capacity(l);
    let mut current = f64::NEG_INFINITY;
    for _ in 0..l {
        let scores: Vec<(usize, f64)> = (0..n)
            .into_par_iter()
            .filter(|v| !pins.contains(v))
            .map(|v| {
                let mut trial = pins.clone();
                trial.push(v);
                trial.sort_unstable();
                lambda1_of(g, &trial).map(|x| (v, x))
            })
            .collect::<Result<_>>()?;
        let best = scores.iter().map(|p| p.1).fold(f64::NEG_INFINITY, f64::max);
        let &(v, value) = scores
            .iter()
            .find(|p| p.1 >= best - TIE_TOL)
            .expect("a free node remains");
        pins.push(v);
        pins.sort_unstable();
        current = value;
    }
    let s = PinSet::from_sorted_unchecked(pins);
    Ok(SelectionResult::single(Strategy::Greedy, None, s, current))
}
