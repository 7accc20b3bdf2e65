//! Seeded constructors for every graph family used in the experiments.
//!
//! All random families draw from [`crate::rng::stream`], so a fixed seed
//! yields the same edge set on every run.

use rand::Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rng;

/// A graph family with its parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Star { n: usize },
    DoubleStar { k: usize },
    Complete { n: usize },
    Path { n: usize },
    Ba { n: usize, m0: usize, m: usize, seed: u64 },
    Nw { n: usize, k: usize, p: f64, seed: u64 },
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl GenSpec {
    pub fn generate(&self) -> Result<Graph> {
        match *self {
            GenSpec::Star { n } => gen_star(n),
            GenSpec::DoubleStar { k } => gen_double_star(k),
            GenSpec::Complete { n } => gen_complete(n),
            GenSpec::Path { n } => gen_path(n),
            GenSpec::Ba { n, m0, m, seed } => gen_ba(n, m0, m, seed),
            GenSpec::Nw { n, k, p, seed } => gen_nw(n, k, p, seed),
            GenSpec::ErdosRenyi { n, p, seed } => gen_erdos_renyi(n, p, seed),
        }
    }
}

/// Star with centre 0.
pub fn gen_star(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::param(format!("star needs n >= 3, got {n}")));
    }
    Graph::new(n, (1..n).map(|v| (0, v)))
}

/// Two stars with `k` leaves each whose hubs are joined through a bridge.
///
/// Node 0 is the bridge, nodes 1 and `k + 2` are the hubs, and the leaves
/// are `2..=k+1` and `k+3..=2k+2`.
pub fn gen_double_star(k: usize) -> Result<Graph> {
    if k == 0 {
        return Err(Error::param("double star needs k >= 1"));
    }
    let n = 2 * k + 3;
    let second = k + 2;
    let mut edges = vec![(0, 1), (0, second)];
    edges.extend((2..=k + 1).map(|leaf| (1, leaf)));
    edges.extend((second + 1..n).map(|leaf| (second, leaf)));
    Graph::new(n, edges)
}

pub fn gen_complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::param(format!("complete graph needs n >= 2, got {n}")));
    }
    Graph::new(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::param("path needs n >= 1"));
    }
    Graph::new(n, (1..n).map(|v| (v - 1, v)))
}

/// Barabási–Albert growth from a `K_{m0}` seed clique.
///
/// Every new node attaches to `m` distinct existing nodes drawn from a
/// degree-proportional urn; a draw that repeats a target of the same step
/// is rejected and redrawn.
pub fn gen_ba(n: usize, m0: usize, m: usize, seed: u64) -> Result<Graph> {
    if m == 0 || m > m0 || m0 >= n {
        return Err(Error::param(format!(
            "BA needs 1 <= m <= m0 < n, got n={n} m0={m0} m={m}"
        )));
    }
    let mut rng = rng::stream(seed, 0);
    let mut edges = Vec::with_capacity(m0 * (m0 - 1) / 2 + m * (n - m0));
    // each endpoint appears once per incident edge
    let mut urn: Vec<usize> = Vec::with_capacity(2 * edges.capacity());
    for u in 0..m0 {
        for v in u + 1..m0 {
            edges.push((u, v));
            urn.push(u);
            urn.push(v);
        }
    }
    let mut targets = Vec::with_capacity(m);
    for v in m0..n {
        targets.clear();
        while targets.len() < m {
            let t = if urn.is_empty() {
                rng.random_range(0..v)
            } else {
                urn[rng.random_range(0..urn.len())]
            };
            if !targets.contains(&t) {
                targets.push(t);
            }
        }
        for &t in &targets {
            edges.push((t, v));
            urn.push(t);
            urn.push(v);
        }
    }
    Graph::new(n, edges)
}

/// Newman–Watts small world: a ring where every node links to its `k / 2`
/// nearest neighbours on each side, plus each absent pair added
/// independently with probability `p`. No edge is ever removed.
pub fn gen_nw(n: usize, k: usize, p: f64, seed: u64) -> Result<Graph> {
    if k % 2 != 0 || k >= n {
        return Err(Error::param(format!(
            "NW needs even k < n, got n={n} k={k}"
        )));
    }
    check_probability(p)?;
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 1..=k / 2 {
            edges.push((i, (i + j) % n));
        }
    }
    let lattice = Graph::new(n, edges.iter().copied())?;
    let mut rng = rng::stream(seed, 0);
    for u in 0..n {
        for v in u + 1..n {
            if !lattice.has_edge(u, v) && rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

/// `G(n, p)` with independent edges.
pub fn gen_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<Graph> {
    check_probability(p)?;
    let mut rng = rng::stream(seed, 0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.random::<f64>() < p {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, edges)
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::param(format!("probability {p} outside [0, 1]")));
    }
    Ok(())
}
