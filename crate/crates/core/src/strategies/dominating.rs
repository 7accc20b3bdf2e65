use rand::seq::IndexedRandom;
use rand::Rng;

use super::{grounded_lambda1, SelectionResult, Strategy};
use crate::error::{Error, Result};
use crate::graph::{Graph, PinSet};
use crate::rng;

/// Partition-based selection that leaves every uncontrolled node with at
/// least one pinned neighbour, so `lambda1 >= 1`.
///
/// On the working graph (initially `g`), one sweep:
/// 1. pins every isolated node;
/// 2. in each remaining component, pins a random node adjacent to all the
///    others if one exists, otherwise visits the minimum-degree nodes in
///    ascending id order and pins one random neighbour of each (a neighbour
///    already picked this sweep is not picked twice);
/// 3. deletes the new pins and their neighbours.
///
/// Sweeps repeat until the working graph is empty. Fails when the result
/// would pin every node, as happens for a graph with no edges.
pub fn dominating_partition(g: &Graph, seed: u64) -> Result<SelectionResult> {
    let n = g.node_count();
    let mut rng = rng::stream(seed, 0);
    let mut alive = vec![true; n];
    let mut pinned = vec![false; n];
    let mut remaining = n;

    while remaining > 0 {
        let working_degree =
            |v: usize, alive: &[bool]| g.neighbors(v).iter().filter(|&&w| alive[w]).count();
        let mut picked: Vec<usize> = Vec::new();
        for component in live_components(g, &alive) {
            if component.len() == 1 {
                picked.push(component[0]);
                continue;
            }
            let degrees: Vec<usize> = component.iter().map(|&v| working_degree(v, &alive)).collect();
            let universal: Vec<usize> = component
                .iter()
                .zip(&degrees)
                .filter(|&(_, &d)| d == component.len() - 1)
                .map(|(&v, _)| v)
                .collect();
            if let Some(&hub) = universal.choose(&mut rng) {
                picked.push(hub);
                continue;
            }
            let min_degree = *degrees.iter().min().expect("component is nonempty");
            for (&v, &d) in component.iter().zip(&degrees) {
                if d != min_degree {
                    continue;
                }
                let choices: Vec<usize> =
                    g.neighbors(v).iter().copied().filter(|&w| alive[w]).collect();
                let w = pick(&choices, &mut rng);
                if !picked.contains(&w) {
                    picked.push(w);
                }
            }
        }
        for &v in &picked {
            pinned[v] = true;
        }
        for &v in &picked {
            for &w in g.neighbors(v) {
                if alive[w] {
                    alive[w] = false;
                    remaining -= 1;
                }
            }
            if alive[v] {
                alive[v] = false;
                remaining -= 1;
            }
        }
    }

    let nodes: Vec<usize> = (0..n).filter(|&v| pinned[v]).collect();
    if nodes.len() >= n {
        return Err(Error::PinSetCoversAll(n));
    }
    let s = PinSet::from_sorted_unchecked(nodes);
    let lambda1 = grounded_lambda1(g, &s)?;
    Ok(SelectionResult::single(Strategy::Dominating, Some(seed), s, lambda1))
}

fn pick<R: Rng + ?Sized>(choices: &[usize], rng: &mut R) -> usize {
    *choices.choose(rng).expect("node in a nontrivial component has a neighbour")
}

/// Components of the subgraph induced on live nodes, each sorted, ordered by
/// smallest member.
fn live_components(g: &Graph, alive: &[bool]) -> Vec<Vec<usize>> {
    let n = g.node_count();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if !alive[start] || seen[start] {
            continue;
        }
        seen[start] = true;
        let mut component = vec![start];
        let mut head = 0;
        while head < component.len() {
            let v = component[head];
            head += 1;
            for &w in g.neighbors(v) {
                if alive[w] && !seen[w] {
                    seen[w] = true;
                    component.push(w);
                }
            }
        }
        component.sort_unstable();
        out.push(component);
    }
    out
}
