#![allow(dead_code)]

use std::collections::VecDeque;

use nalgebra::DMatrix;
use pinning_core::{Graph, PinSet};
use proptest::prelude::*;

/// Connected graph: a random tree (node `i` hangs off some `j < i`) plus
/// extra random edges.
pub fn connected_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| {
            let parents: Vec<BoxedStrategy<usize>> =
                (1..n).map(|i| (0..i).boxed()).collect();
            let extra = prop::collection::vec((0..n, 0..n), 0..=2 * n);
            (Just(n), parents, extra)
        })
        .prop_map(|(n, parents, extra)| {
            let mut edges: Vec<(usize, usize)> =
                parents.into_iter().enumerate().map(|(i, p)| (p, i + 1)).collect();
            edges.extend(extra.into_iter().filter(|(u, v)| u != v));
            Graph::new(n, edges).unwrap()
        })
}

/// Any simple graph, possibly disconnected.
pub fn any_graph(min_n: usize, max_n: usize) -> impl Strategy<Value = Graph> {
    (min_n..=max_n)
        .prop_flat_map(|n| (Just(n), prop::collection::vec((0..n, 0..n), 0..=3 * n)))
        .prop_map(|(n, e)| Graph::new(n, e.into_iter().filter(|(u, v)| u != v)).unwrap())
}

/// A graph with a valid pin set of size `1..n`.
pub fn graph_and_pins(
    graphs: impl Strategy<Value = Graph>,
) -> impl Strategy<Value = (Graph, PinSet)> {
    graphs.prop_flat_map(|g| {
        let n = g.node_count();
        let pins = prop::sample::subsequence((0..n).collect::<Vec<_>>(), 1..n);
        (Just(g), pins).prop_map(move |(g, p)| {
            let s = PinSet::new(p, n).unwrap();
            (g, s)
        })
    })
}

/// Cyclic Jacobi rotations; slow but independent of the library solver.
pub fn jacobi_eigenvalues(m: &DMatrix<f64>) -> Vec<f64> {
    let n = m.nrows();
    let mut a = m.clone();
    for _sweep in 0..100 {
        let off: f64 = (0..n)
            .flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j)))
            .map(|(i, j)| a[(i, j)] * a[(i, j)])
            .sum();
        if off < 1e-24 {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                if a[(p, q)].abs() < 1e-300 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * a[(p, q)]);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
            }
        }
    }
    let mut values: Vec<f64> = (0..n).map(|i| a[(i, i)]).collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Betweenness by listing every shortest path explicitly.
pub fn betweenness_by_paths(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    let dist: Vec<Vec<usize>> = (0..n).map(|s| bfs(g, s)).collect();
    let mut bc = vec![0.0; n];
    for s in 0..n {
        for t in s + 1..n {
            if dist[s][t] == usize::MAX {
                continue;
            }
            let mut paths = Vec::new();
            let mut current = vec![s];
            enumerate(g, &dist, t, &mut current, &mut paths);
            let total = paths.len() as f64;
            for path in &paths {
                for &v in &path[1..path.len() - 1] {
                    bc[v] += 1.0 / total;
                }
            }
        }
    }
    bc
}

fn enumerate(
    g: &Graph,
    dist: &[Vec<usize>],
    t: usize,
    current: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let v = *current.last().unwrap();
    if v == t {
        out.push(current.clone());
        return;
    }
    for &w in g.neighbors(v) {
        // w must be one step closer to t
        if dist[w][t] != usize::MAX && dist[w][t] + 1 == dist[v][t] {
            current.push(w);
            enumerate(g, dist, t, current, out);
            current.pop();
        }
    }
}

pub fn bfs(g: &Graph, s: usize) -> Vec<usize> {
    let mut d = vec![usize::MAX; g.node_count()];
    d[s] = 0;
    let mut q = VecDeque::from([s]);
    while let Some(v) = q.pop_front() {
        for &w in g.neighbors(v) {
            if d[w] == usize::MAX {
                d[w] = d[v] + 1;
                q.push_back(w);
            }
        }
    }
    d
}

/// Every `l`-subset of `0..n`, lexicographic.
pub fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, l: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == l {
            out.push(cur.clone());
            return;
        }
        for v in start..n {
            cur.push(v);
            rec(v + 1, n, l, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, l, &mut Vec::new(), &mut out);
    out
}
