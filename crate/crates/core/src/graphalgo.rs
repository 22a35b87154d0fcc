//! Clique covers and dominating sets.
//!
//! The greedy routines scale to any graph; the exact routines are
//! exponential and refuse graphs above a size limit. They serve as oracles
//! for small instances and as the exact clique cover number in bound reports.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest graph accepted by [`exact_clique_cover_number`].
pub const EXACT_COVER_LIMIT: usize = 15;
/// Largest graph accepted by [`exact_domination_number`].
pub const EXACT_DOMINATION_LIMIT: usize = 20;

/// Partition of the vertices into cliques.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueCover {
    pub parts: Vec<Vec<usize>>,
}

impl CliqueCover {
    pub fn size(&self) -> usize {
        self.parts.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominatingSet {
    pub vertices: Vec<usize>,
}

impl DominatingSet {
    pub fn size(&self) -> usize {
        self.vertices.len()
    }
}

/// Greedy colouring of the complement graph.
///
/// Vertices are visited by descending degree (ties by id). Each joins the
/// first part whose members are all its neighbours, or opens a new part.
pub fn greedy_clique_cover(g: &Graph) -> CliqueCover {
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let mut parts: Vec<Vec<usize>> = Vec::new();
    for v in order {
        match parts
            .iter_mut()
            .find(|part| part.iter().all(|&u| g.has_edge(u, v)))
        {
            Some(part) => part.push(v),
            None => parts.push(vec![v]),
        }
    }
    for part in &mut parts {
        part.sort_unstable();
    }
    CliqueCover { parts }
}

/// Minimum number of cliques partitioning the vertices, χ(Ḡ).
///
/// Subset dynamic programme over bitmasks: `best[S]` is the cover number of
/// the induced subgraph on `S`, taking the part that contains the lowest
/// vertex of `S` over every clique subset.
pub fn exact_clique_cover_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > EXACT_COVER_LIMIT {
        return Err(Error::SizeLimit { n, limit: EXACT_COVER_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let nbr_mask: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();

    let full = (1u32 << n) - 1;
    // A set is a clique iff removing its lowest vertex leaves a clique
    // contained in that vertex's neighbourhood.
    let mut is_clique = vec![false; 1 << n];
    is_clique[0] = true;
    for s in 1..=full {
        let low = s.trailing_zeros() as usize;
        let rest = s & (s - 1);
        is_clique[s as usize] = is_clique[rest as usize] && rest & !nbr_mask[low] == 0;
    }

    let mut best = vec![u8::MAX; 1 << n];
    best[0] = 0;
    for s in 1..=full {
        let low = s & s.wrapping_neg();
        let rest = s ^ low;
        // Enumerate subsets `sub` of `rest`; the part is `sub | low`.
        let mut sub = rest;
        let mut value = u8::MAX;
        loop {
            let part = sub | low;
            if is_clique[part as usize] {
                value = value.min(best[(s ^ part) as usize].saturating_add(1));
            }
            if sub == 0 {
                break;
            }
            sub = (sub - 1) & rest;
        }
        best[s as usize] = value;
    }
    Ok(best[full as usize] as usize)
}

/// Greedy dominating set: repeatedly take the vertex whose closed
/// neighbourhood covers the most uncovered vertices (ties by lowest id).
pub fn greedy_dominating_set(g: &Graph) -> DominatingSet {
    let n = g.n();
    let mut covered = vec![false; n];
    let mut remaining = n;
    let mut gain: Vec<usize> = (0..n).map(|v| g.degree(v) + 1).collect();
    let mut vertices = Vec::new();

    while remaining > 0 {
        let pick = (0..n)
            .max_by_key(|&v| (gain[v], std::cmp::Reverse(v)))
            .expect("uncovered vertices imply a nonempty graph");
        vertices.push(pick);
        for &u in g.closed_slice(pick) {
            if !covered[u] {
                covered[u] = true;
                remaining -= 1;
                for &w in g.closed_slice(u) {
                    gain[w] -= 1;
                }
            }
        }
    }
    vertices.sort_unstable();
    DominatingSet { vertices }
}

/// Domination number γ(G) by enumerating candidate sets in increasing size.
pub fn exact_domination_number(g: &Graph) -> Result<usize> {
    let n = g.n();
    if n > EXACT_DOMINATION_LIMIT {
        return Err(Error::SizeLimit { n, limit: EXACT_DOMINATION_LIMIT });
    }
    if n == 0 {
        return Ok(0);
    }
    let closed: Vec<u32> = (0..n)
        .map(|v| g.closed_slice(v).iter().fold(0u32, |m, &u| m | (1 << u)))
        .collect();
    let full = (1u32 << n) - 1;

    fn search(closed: &[u32], full: u32, left: usize, covered: u32) -> bool {
        if covered == full {
            return true;
        }
        if left == 0 {
            return false;
        }
        // The lowest uncovered vertex must be dominated by one of its
        // closed neighbours; branching only on those prunes the search.
        let target = (!covered & full).trailing_zeros() as usize;
        let mut cands = closed[target];
        while cands != 0 {
            let v = cands.trailing_zeros() as usize;
            cands &= cands - 1;
            if search(closed, full, left - 1, covered | closed[v]) {
                return true;
            }
        }
        false
    }

    Ok((1..=n)
        .find(|&size| search(&closed, full, size, 0))
        .unwrap_or(n))
}

/// Checks that `cover` partitions the vertices of `g` into cliques.
pub fn is_valid_clique_cover(g: &Graph, cover: &CliqueCover) -> bool {
    let mut seen = vec![false; g.n()];
    for part in &cover.parts {
        if part.is_empty() {
            return false;
        }
        for (i, &u) in part.iter().enumerate() {
            if u >= g.n() || std::mem::replace(&mut seen[u], true) {
                return false;
            }
            if part[..i].iter().any(|&w| !g.has_edge(w, u)) {
                return false;
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Checks that every vertex is in `set` or adjacent to a member.
pub fn is_dominating_set(g: &Graph, set: &DominatingSet) -> bool {
    let mut covered = vec![false; g.n()];
    for &v in &set.vertices {
        if v >= g.n() {
            return false;
        }
        for &u in g.closed_slice(v) {
            covered[u] = true;
        }
    }
    covered.into_iter().all(|c| c)
}

/// Harmonic number `H(k) = 1 + 1/2 + ... + 1/k`; the greedy set-cover
/// approximation factor for sets of size at most `k`.
pub fn harmonic(k: usize) -> f64 {
    (1..=k).map(|i| 1.0 / i as f64).sum()
}
