//! Undirected simple graphs, their Laplacians, and grounding.
//!
//! Grounding a pin set `S` deletes the rows and columns of `S` from the
//! Laplacian. The result decomposes as `L(S|S) = L(H) + diag(w)`, where `H`
//! is the subgraph induced on the uncontrolled nodes and `w[j]` counts the
//! pinned neighbours of the j-th uncontrolled node.

use std::collections::VecDeque;
use std::fmt::Write as _;

use nalgebra::DMatrix;
use serde::Serialize;

use crate::error::{Error, Result};

/// Undirected simple graph on nodes `0..n`.
///
/// Edges are stored once as `(u, v)` with `u < v`, sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Builds a graph, collapsing duplicate edges and rejecting self-loops or
    /// out-of-range endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut normalized = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(Error::SelfLoop { u, v });
            }
            normalized.push((u.min(v), u.max(v)));
        }
        normalized.sort_unstable();
        normalized.dedup();

        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: normalized,
            adj,
        })
    }

    /// Graph with `n` nodes and no edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            n,
            edges: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    pub fn node_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Sorted neighbour list of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adj.iter().map(Vec::len).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.adj.iter().map(Vec::len).max()
    }

    /// Connected components, each sorted ascending, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            queue.push_back(start);
            let mut comp = Vec::new();
            while let Some(v) = queue.pop_front() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n > 0 && self.components().len() == 1
    }
}

/// Sorted set of distinct controlled (pinned) nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct PinSet(Vec<usize>);

impl PinSet {
    /// Validates ids against a graph of `n` nodes. Order of `nodes` is free;
    /// repeats are rejected.
    pub fn new(nodes: impl IntoIterator<Item = usize>, n: usize) -> Result<Self> {
        let mut nodes: Vec<usize> = nodes.into_iter().collect();
        if nodes.is_empty() {
            return Err(Error::EmptyPinSet);
        }
        if let Some(&node) = nodes.iter().find(|&&v| v >= n) {
            return Err(Error::NodeOutOfRange { node, n });
        }
        nodes.sort_unstable();
        if let Some(w) = nodes.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicatePin(w[0]));
        }
        Ok(PinSet(nodes))
    }

    pub(crate) fn from_sorted_unchecked(nodes: Vec<usize>) -> Self {
        debug_assert!(nodes.windows(2).all(|w| w[0] < w[1]));
        PinSet(nodes)
    }

    pub fn nodes(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Uncontrolled nodes `V \ S` in ascending order.
    pub fn complement(&self, n: usize) -> Vec<usize> {
        let mut mask = vec![true; n];
        for &v in &self.0 {
            mask[v] = false;
        }
        (0..n).filter(|&v| mask[v]).collect()
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }
}

/// Pins `s` in a graph of `n` nodes so that grounding is well-defined.
pub(crate) fn check_groundable(s: &PinSet, n: usize) -> Result<()> {
    if s.is_empty() {
        return Err(Error::EmptyPinSet);
    }
    if s.len() >= n {
        return Err(Error::PinSetCoversAll(n));
    }
    if let Some(&node) = s.nodes().last().filter(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange { node, n });
    }
    Ok(())
}

/// Dense Laplacian `L = D - A`.
pub fn laplacian(g: &Graph) -> DMatrix<f64> {
    let n = g.node_count();
    let mut m = DMatrix::zeros(n, n);
    for &(u, v) in g.edges() {
        m[(u, v)] = -1.0;
        m[(v, u)] = -1.0;
    }
    for v in 0..n {
        m[(v, v)] = g.degree(v) as f64;
    }
    m
}

/// Principal submatrix `L(S|S)` together with its index map and boundary weights.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundedLaplacian {
    matrix: DMatrix<f64>,
    retained: Vec<usize>,
    boundary: Vec<usize>,
}

impl GroundedLaplacian {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.matrix
    }

    /// Original ids of the rows, ascending.
    pub fn retained(&self) -> &[usize] {
        &self.retained
    }

    /// Boundary weight of each retained node, in row order.
    pub fn boundary_weights(&self) -> &[usize] {
        &self.boundary
    }

    pub fn order(&self) -> usize {
        self.retained.len()
    }

    /// `L(H)`, obtained by removing the boundary weights from the diagonal.
    pub fn induced_laplacian(&self) -> DMatrix<f64> {
        let mut m = self.matrix.clone();
        for (j, &w) in self.boundary.iter().enumerate() {
            m[(j, j)] -= w as f64;
        }
        m
    }

    pub fn into_matrix(self) -> DMatrix<f64> {
        self.matrix
    }
}

/// Deletes the rows and columns of `s` from the Laplacian of `g`.
pub fn ground(g: &Graph, s: &PinSet) -> Result<GroundedLaplacian> {
    let n = g.node_count();
    check_groundable(s, n)?;
    let retained = s.complement(n);
    let boundary = weights_for(g, s, &retained);
    let matrix = grounded_matrix(g, &retained);
    Ok(GroundedLaplacian {
        matrix,
        retained,
        boundary,
    })
}

/// Grounded matrix on an explicit (ascending) list of retained nodes.
pub(crate) fn grounded_matrix(g: &Graph, retained: &[usize]) -> DMatrix<f64> {
    let k = retained.len();
    let mut position = vec![usize::MAX; g.node_count()];
    for (j, &v) in retained.iter().enumerate() {
        position[v] = j;
    }
    let mut m = DMatrix::zeros(k, k);
    for (j, &v) in retained.iter().enumerate() {
        m[(j, j)] = g.degree(v) as f64;
        for &w in g.neighbors(v) {
            let pw = position[w];
            if pw != usize::MAX {
                m[(j, pw)] = -1.0;
            }
        }
    }
    m
}

fn weights_for(g: &Graph, s: &PinSet, retained: &[usize]) -> Vec<usize> {
    retained
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| s.contains(w)).count())
        .collect()
}

/// `w[j] = |N(p_j) ∩ S|` for each uncontrolled node `p_j`, ascending by id.
pub fn boundary_weights(g: &Graph, s: &PinSet) -> Vec<usize> {
    let retained = s.complement(g.node_count());
    weights_for(g, s, &retained)
}

/// Subgraph induced on `keep`, relabelled `0..keep.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `nodes[i]` is the original id of new node `i`.
    pub nodes: Vec<usize>,
}

/// Keeps exactly the edges with both endpoints in `keep`. Repeated ids in
/// `keep` are collapsed; new labels follow ascending original id.
pub fn induced_subgraph(g: &Graph, keep: &[usize]) -> Result<InducedSubgraph> {
    let n = g.node_count();
    if keep.is_empty() {
        return Err(Error::param("induced subgraph needs at least one node"));
    }
    if let Some(&node) = keep.iter().find(|&&v| v >= n) {
        return Err(Error::NodeOutOfRange { node, n });
    }
    let mut nodes = keep.to_vec();
    nodes.sort_unstable();
    nodes.dedup();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in nodes.iter().enumerate() {
        position[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| position[u] != usize::MAX && position[v] != usize::MAX)
        .map(|&(u, v)| (position[u], position[v]));
    let graph = Graph::new(nodes.len(), edges)?;
    Ok(InducedSubgraph { graph, nodes })
}

/// Parses the edge-list format: first data line `N`, then one `u v` pair per
/// line. `#` starts a comment; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = content.split_whitespace().collect();
        let parse = |tok: &str| -> Result<usize> {
            tok.parse::<usize>().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("expected a non-negative integer, found {tok:?}"),
            })
        };
        match n {
            None => {
                if tokens.len() != 1 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: "first line must hold the node count".into(),
                    });
                }
                n = Some(parse(tokens[0])?);
            }
            Some(count) => {
                if tokens.len() != 2 {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("expected `u v`, found {} fields", tokens.len()),
                    });
                }
                let (u, v) = (parse(tokens[0])?, parse(tokens[1])?);
                if u >= count || v >= count {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("edge ({u}, {v}) has an endpoint outside 0..{count}"),
                    });
                }
                if u == v {
                    return Err(Error::Parse {
                        line: line_no,
                        message: format!("self-loop on node {u}"),
                    });
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.ok_or(Error::Parse {
        line: 0,
        message: "missing node count".into(),
    })?;
    Graph::new(n, edges)
}

/// Writes `g` in the edge-list format, edges sorted.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = String::with_capacity(8 * (g.edge_count() + 1));
    let _ = writeln!(out, "{}", g.node_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}
