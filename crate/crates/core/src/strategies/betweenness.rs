use std::collections::VecDeque;

use super::{check_pin_count, grounded_lambda1, SelectionResult, Strategy};
use crate::error::Result;
use crate::graph::{Graph, PinSet};

/// Shortest-path betweenness of every node (Brandes), unweighted and
/// undirected: each unordered pair `{s, t}` contributes once, endpoints
/// excluded. Disconnected pairs contribute nothing.
pub fn betweenness(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let mut bc = vec![0.0; n];
    let mut stack = Vec::with_capacity(n);
    let mut preds: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut sigma = vec![0.0f64; n];
    let mut dist = vec![usize::MAX; n];
    let mut delta = vec![0.0f64; n];
    let mut queue = VecDeque::with_capacity(n);

    for source in 0..n {
        stack.clear();
        for v in 0..n {
            preds[v].clear();
            sigma[v] = 0.0;
            dist[v] = usize::MAX;
            delta[v] = 0.0;
        }
        sigma[source] = 1.0;
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            stack.push(v);
            for &w in g.neighbors(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
                if dist[w] == dist[v] + 1 {
                    sigma[w] += sigma[v];
                    preds[w].push(v);
                }
            }
        }
        while let Some(w) = stack.pop() {
            for &v in &preds[w] {
                delta[v] += sigma[v] / sigma[w] * (1.0 + delta[w]);
            }
            if w != source {
                bc[w] += delta[w];
            }
        }
    }
    // every unordered pair was visited from both ends
    bc.iter_mut().for_each(|b| *b /= 2.0);
    bc
}

/// The `l` nodes of largest betweenness, ties broken by smaller node id.
pub fn select_betweenness(g: &Graph, l: usize) -> Result<SelectionResult> {
    check_pin_count(g.node_count(), l)?;
    let bc = betweenness(g);
    let mut order: Vec<usize> = (0..g.node_count()).collect();
    order.sort_by(|&a, &b| bc[b].total_cmp(&bc[a]).then(a.cmp(&b)));
    let mut chosen = order[..l].to_vec();
    chosen.sort_unstable();
    let s = PinSet::from_sorted_unchecked(chosen);
    let lambda1 = grounded_lambda1(g, &s)?;
    Ok(SelectionResult::single(Strategy::Betweenness, None, s, lambda1))
}
