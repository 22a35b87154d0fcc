//! Seeded random graph generators.

use std::collections::HashSet;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::index;
use rand::Rng;
use rand_distr::Binomial;

use super::Graph;
use crate::error::{Error, Result};

/// `n(n-1)/2`.
pub fn max_edges(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Uniform random graph with exactly `m` edges (the G(n, m) model).
pub fn gen_erdos_renyi<R: Rng + ?Sized>(n: usize, m: usize, rng: &mut R) -> Result<Graph> {
    let total = max_edges(n);
    if m > total {
        return Err(Error::InvalidArgument(format!(
            "{m} edges requested but a graph on {n} vertices has at most {total}"
        )));
    }
    let mut picks = index::sample(rng, total, m).into_vec();
    picks.sort_unstable();

    // Pair ranks are lexicographic over (u, v), u < v.
    let mut edges = Vec::with_capacity(m);
    let mut row = 0;
    let mut row_start = 0;
    for p in picks {
        while p >= row_start + (n - 1 - row) {
            row_start += n - 1 - row;
            row += 1;
        }
        edges.push((row, row + 1 + (p - row_start)));
    }
    Graph::from_edges(n, edges)
}

/// G(n, p): the edge count is drawn from Binomial(n(n-1)/2, p), then the
/// edges are placed as in [`gen_erdos_renyi`].
pub fn gen_erdos_renyi_p<R: Rng + ?Sized>(n: usize, p: f64, rng: &mut R) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidArgument(format!("edge probability {p} not in [0, 1]")));
    }
    let total = max_edges(n);
    let m = Binomial::new(total as u64, p)
        .map_err(|e| Error::InvalidArgument(e.to_string()))?
        .sample(rng) as usize;
    gen_erdos_renyi(n, m, rng)
}

/// Static scale-free graph with expected power-law degree distribution.
///
/// Vertex `i` has weight `(i + 1)^(-1 / (exponent - 1))`. Endpoint pairs are
/// drawn proportionally to weight until `m` distinct non-loop edges exist.
pub fn gen_power_law<R: Rng + ?Sized>(
    n: usize,
    m: usize,
    exponent: f64,
    rng: &mut R,
) -> Result<Graph> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("power-law graph needs n >= 2, got {n}")));
    }
    if !(exponent > 1.0) || !exponent.is_finite() {
        return Err(Error::InvalidArgument(format!("exponent must exceed 1, got {exponent}")));
    }
    let total = max_edges(n);
    if m > total {
        return Err(Error::InvalidArgument(format!(
            "{m} edges requested but a graph on {n} vertices has at most {total}"
        )));
    }
    let alpha = 1.0 / (exponent - 1.0);
    let weights: Vec<f64> = (0..n).map(|i| ((i + 1) as f64).powf(-alpha)).collect();
    let endpoint =
        WeightedIndex::new(&weights).map_err(|e| Error::InvalidArgument(e.to_string()))?;

    let mut seen = HashSet::with_capacity(m);
    let mut edges = Vec::with_capacity(m);
    // Dense requests near n(n-1)/2 can starve on light pairs; give up eventually.
    let budget = 1_000usize.saturating_mul(m).saturating_add(1_000_000);
    let mut draws = 0usize;
    while edges.len() < m {
        if draws == budget {
            return Err(Error::InvalidArgument(format!(
                "could not place {m} distinct edges after {budget} draws"
            )));
        }
        draws += 1;
        let u = endpoint.sample(rng);
        let v = endpoint.sample(rng);
        if u == v {
            continue;
        }
        let key = (u.min(v), u.max(v));
        if seen.insert(key) {
            edges.push(key);
        }
    }
    Graph::from_edges(n, edges)
}

/// Planted partition G(n, k, p, q).
///
/// Vertices are split into `k` contiguous blocks whose sizes differ by at
/// most one. Returns the graph and each vertex's block label.
pub fn gen_planted_partition<R: Rng + ?Sized>(
    n: usize,
    k: usize,
    p: f64,
    q: f64,
    rng: &mut R,
) -> Result<(Graph, Vec<usize>)> {
    if k == 0 || k > n {
        return Err(Error::InvalidArgument(format!("need 1 <= k <= n, got k={k}, n={n}")));
    }
    if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
        return Err(Error::InvalidArgument(format!("probabilities p={p}, q={q} not in [0, 1]")));
    }
    if p <= q {
        return Err(Error::InvalidArgument(format!("need p > q, got p={p}, q={q}")));
    }
    let base = n / k;
    let extra = n % k;
    let labels: Vec<usize> = (0..k)
        .flat_map(|block| std::iter::repeat_n(block, base + usize::from(block < extra)))
        .collect();

    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let prob = if labels[u] == labels[v] { p } else { q };
            if rng.random_bool(prob) {
                edges.push((u, v));
            }
        }
    }
    Ok((Graph::from_edges(n, edges)?, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_simple_undirected;
    use crate::seed::rng_from;

    #[test]
    fn erdos_renyi_extremes() {
        let mut rng = rng_from(1);
        assert_eq!(gen_erdos_renyi(4, 6, &mut rng).unwrap(), Graph::complete(4));
        assert_eq!(gen_erdos_renyi(4, 0, &mut rng).unwrap(), Graph::empty(4));
        assert!(gen_erdos_renyi(4, 7, &mut rng).is_err());
    }

    #[test]
    fn erdos_renyi_exact_count_and_determinism() {
        let a = gen_erdos_renyi(100, 500, &mut rng_from(9)).unwrap();
        let b = gen_erdos_renyi(100, 500, &mut rng_from(9)).unwrap();
        assert_eq!(a.edge_count(), 500);
        assert!(is_simple_undirected(&a));
        assert_eq!(a, b);
        let c = gen_erdos_renyi(100, 500, &mut rng_from(10)).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn erdos_renyi_p_extremes() {
        let mut rng = rng_from(3);
        assert_eq!(gen_erdos_renyi_p(6, 1.0, &mut rng).unwrap(), Graph::complete(6));
        assert_eq!(gen_erdos_renyi_p(6, 0.0, &mut rng).unwrap(), Graph::empty(6));
        assert!(gen_erdos_renyi_p(6, 1.5, &mut rng).is_err());
    }

    #[test]
    fn erdos_renyi_pair_decoding_covers_last_rows() {
        // Every pair must be reachable, including the final row (n-2, n-1).
        let g = gen_erdos_renyi(5, 10, &mut rng_from(0)).unwrap();
        assert!(g.has_edge(3, 4));
        assert_eq!(g, Graph::complete(5));
    }

    #[test]
    fn power_law_small_cases() {
        let mut rng = rng_from(2);
        let g = gen_power_law(2, 1, 2.5, &mut rng).unwrap();
        assert_eq!(g, Graph::complete(2));
        assert!(gen_power_law(1, 0, 2.5, &mut rng).is_err());
        assert!(gen_power_law(5, 11, 2.5, &mut rng).is_err());
        assert!(gen_power_law(5, 3, 1.0, &mut rng).is_err());
        assert_eq!(gen_power_law(6, 15, 2.5, &mut rng).unwrap(), Graph::complete(6));
    }

    #[test]
    fn power_law_determinism() {
        let a = gen_power_law(1000, 5000, 2.5, &mut rng_from(5)).unwrap();
        let b = gen_power_law(1000, 5000, 2.5, &mut rng_from(5)).unwrap();
        assert_eq!(a.edge_count(), 5000);
        assert!(is_simple_undirected(&a));
        assert_eq!(a, b);
    }

    #[test]
    fn planted_partition_deterministic_cases() {
        let mut rng = rng_from(4);
        let (g, labels) = gen_planted_partition(8, 2, 1.0, 0.0, &mut rng).unwrap();
        assert_eq!(labels, vec![0, 0, 0, 0, 1, 1, 1, 1]);
        assert_eq!(g.edge_count(), 12);
        assert!(g.has_edge(0, 3) && !g.has_edge(3, 4));

        let (g, _) = gen_planted_partition(8, 8, 1.0, 0.0, &mut rng).unwrap();
        assert_eq!(g, Graph::empty(8));
    }

    #[test]
    fn planted_partition_balanced_blocks() {
        let (g, labels) = gen_planted_partition(10, 3, 1.0, 0.0, &mut rng_from(0)).unwrap();
        let sizes: Vec<usize> = (0..3).map(|b| labels.iter().filter(|&&l| l == b).count()).collect();
        assert_eq!(sizes, vec![4, 3, 3]);
        assert_eq!(g.edge_count(), 6 + 3 + 3);
    }

    #[test]
    fn planted_partition_rejects_bad_parameters() {
        let mut rng = rng_from(0);
        assert!(gen_planted_partition(8, 2, 0.3, 0.3, &mut rng).is_err());
        assert!(gen_planted_partition(8, 2, 0.2, 0.3, &mut rng).is_err());
        assert!(gen_planted_partition(8, 0, 1.0, 0.0, &mut rng).is_err());
        assert!(gen_planted_partition(8, 9, 1.0, 0.0, &mut rng).is_err());
    }
}
