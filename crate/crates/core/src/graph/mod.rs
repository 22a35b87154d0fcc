//! Undirected feedback graphs over arm vertices `0..n`.

mod generators;
mod io;

use std::sync::Arc;

pub use generators::{
    gen_erdos_renyi, gen_erdos_renyi_p, gen_planted_partition, gen_power_law, max_edges,
};
pub use io::{load_edge_list, load_edge_list_remapped, parse_edge_list, LoadedGraph};

use crate::error::{Error, Result};

/// Undirected simple graph. Immutable once built.
///
/// Stores both open and closed neighbourhoods as sorted vertex lists; the
/// closed neighbourhood is the observation set of an arm.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    closed: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    pub fn complete(n: usize) -> Self {
        let adjacency = (0..n)
            .map(|v| (0..n).filter(|&u| u != v).collect())
            .collect();
        Self::from_adjacency(adjacency)
    }

    /// Path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges = (1..n).map(|v| (v - 1, v));
        Self::from_edges(n, edges).expect("path edges are valid")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let edges = (0..n).map(|v| (v, (v + 1) % n));
        Self::from_edges(n, edges)
    }

    /// Star with centre 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        Self::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).expect("star edges are valid")
    }

    /// Builds a graph from an edge iterator. Duplicate and reversed edges are
    /// merged; self-loops and out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::InvalidArgument(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_adjacency(adjacency))
    }

    // `adjacency` must be symmetric, loop-free and sorted without duplicates.
    fn from_adjacency(adjacency: Vec<Vec<usize>>) -> Self {
        let edge_count = adjacency.iter().map(Vec::len).sum::<usize>() / 2;
        let closed = adjacency
            .iter()
            .enumerate()
            .map(|(v, nbrs)| {
                let mut c = Vec::with_capacity(nbrs.len() + 1);
                let split = nbrs.partition_point(|&u| u < v);
                c.extend_from_slice(&nbrs[..split]);
                c.push(v);
                c.extend_from_slice(&nbrs[split..]);
                c
            })
            .collect();
        Graph {
            adjacency,
            closed,
            edge_count,
        }
    }

    /// Number of vertices (arms).
    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Δ, the maximum degree (0 for the empty vertex set).
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Open neighbourhood `N(v)`, sorted.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    /// Closed neighbourhood `{a} ∪ N(a)`, sorted.
    pub fn closed_neighborhood(&self, a: usize) -> Result<&[usize]> {
        self.closed
            .get(a)
            .map(Vec::as_slice)
            .ok_or(Error::VertexOutOfRange { vertex: a, n: self.n() })
    }

    /// Unchecked variant for hot loops; panics on out-of-range `a`.
    #[inline]
    pub(crate) fn closed_slice(&self, a: usize) -> &[usize] {
        &self.closed[a]
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let adjacency = (0..n)
            .map(|v| {
                let mut out = Vec::with_capacity(n - 1 - self.degree(v));
                let mut nbrs = self.adjacency[v].iter().peekable();
                for u in 0..n {
                    if nbrs.peek() == Some(&&u) {
                        nbrs.next();
                    } else if u != v {
                        out.push(u);
                    }
                }
                out
            })
            .collect();
        Graph::from_adjacency(adjacency)
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.edge_count == n * n.saturating_sub(1) / 2
    }
}

/// Feedback graph per round `t = 1, 2, ...`.
///
/// A static graph is a one-element schedule; longer schedules are cycled.
#[derive(Debug, Clone)]
pub struct GraphSequence {
    schedule: Vec<Arc<Graph>>,
}

impl GraphSequence {
    pub fn constant(graph: Graph) -> Self {
        GraphSequence {
            schedule: vec![Arc::new(graph)],
        }
    }

    /// Round `t` uses `schedule[(t - 1) % len]`. All graphs must share a vertex count.
    pub fn cyclic(schedule: Vec<Graph>) -> Result<Self> {
        let Some(first) = schedule.first() else {
            return Err(Error::InvalidArgument("graph schedule is empty".into()));
        };
        let n = first.n();
        if let Some(g) = schedule.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidArgument(format!(
                "graph schedule mixes vertex counts {n} and {}",
                g.n()
            )));
        }
        Ok(GraphSequence {
            schedule: schedule.into_iter().map(Arc::new).collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.schedule[0].n()
    }

    /// Graph in force at round `t` (1-based).
    #[inline]
    pub fn at(&self, t: usize) -> &Graph {
        debug_assert!(t >= 1, "rounds are 1-based");
        &self.schedule[(t.max(1) - 1) % self.schedule.len()]
    }

    /// The distinct graphs in the schedule.
    pub fn graphs(&self) -> impl Iterator<Item = &Graph> {
        self.schedule.iter().map(Arc::as_ref)
    }

    pub fn is_static(&self) -> bool {
        self.schedule.len() == 1
    }

    /// Graph holding only the edges present at every round.
    pub fn common_edges(&self) -> Graph {
        let first = &self.schedule[0];
        if self.is_static() {
            return first.as_ref().clone();
        }
        let edges = first
            .edges()
            .filter(|&(u, v)| self.schedule[1..].iter().all(|g| g.has_edge(u, v)));
        Graph::from_edges(first.n(), edges).expect("subset of a valid edge set")
    }
}

/// Checks the structural invariants: symmetric, loop-free, no duplicate edges.
pub fn is_simple_undirected(g: &Graph) -> bool {
    (0..g.n()).all(|u| {
        let nbrs = g.neighbors(u);
        nbrs.windows(2).all(|w| w[0] < w[1])
            && nbrs.iter().all(|&v| v != u && v < g.n() && g.has_edge(v, u))
    })
}
