//! Generators and graph algorithms against brute-force oracles.

use std::io::Write;

use feedback_bandits::graph::{
    gen_erdos_renyi, gen_erdos_renyi_p, gen_planted_partition, gen_power_law, is_simple_undirected,
    load_edge_list, Graph,
};
use feedback_bandits::graphalgo::{
    exact_clique_cover_number, exact_domination_number, greedy_clique_cover,
    greedy_dominating_set, harmonic, is_dominating_set, is_valid_clique_cover,
};
use feedback_bandits::seed::rng_from;
use proptest::prelude::*;
use rand::Rng;

/// Minimum clique partition by enumerating every set partition
/// (restricted growth strings).
fn brute_force_cover(g: &Graph) -> usize {
    fn go(g: &Graph, v: usize, blocks: &mut Vec<Vec<usize>>, best: &mut usize) {
        if blocks.len() >= *best {
            return;
        }
        if v == g.n() {
            *best = blocks.len();
            return;
        }
        for i in 0..blocks.len() {
            if blocks[i].iter().all(|&u| g.has_edge(u, v)) {
                blocks[i].push(v);
                go(g, v + 1, blocks, best);
                blocks[i].pop();
            }
        }
        blocks.push(vec![v]);
        go(g, v + 1, blocks, best);
        blocks.pop();
    }
    let mut best = g.n() + 1;
    go(g, 0, &mut Vec::new(), &mut best);
    best.min(g.n())
}

/// Smallest dominating set by checking all 2^n subsets.
fn brute_force_domination(g: &Graph) -> usize {
    let n = g.n();
    let closed: Vec<u32> = (0..n)
        .map(|v| {
            g.neighbors(v).iter().fold(1u32 << v, |m, &u| m | (1 << u))
        })
        .collect();
    let full = (1u32 << n) - 1;
    (0u32..=full)
        .filter(|s| {
            (0..n)
                .filter(|&v| s & (1 << v) != 0)
                .fold(0, |m, v| m | closed[v])
                == full
        })
        .map(|s| s.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn random_small_graph(seed: u64, max_n: usize) -> Graph {
    let mut rng = rng_from(seed);
    let n = rng.random_range(1..=max_n);
    let p = rng.random_range(0.0..=1.0);
    gen_erdos_renyi_p(n, p, &mut rng).unwrap()
}

#[test]
fn exact_cover_matches_partition_enumeration() {
    for seed in 0..150 {
        let g = random_small_graph(seed, 9);
        assert_eq!(exact_clique_cover_number(&g).unwrap(), brute_force_cover(&g), "seed {seed}");
    }
}

#[test]
fn exact_domination_matches_subset_enumeration() {
    for seed in 0..150 {
        let g = random_small_graph(1000 + seed, 12);
        assert_eq!(exact_domination_number(&g).unwrap(), brute_force_domination(&g), "seed {seed}");
    }
}

#[test]
fn cover_number_extremes_characterize_complete_and_edgeless() {
    for seed in 0..200 {
        let g = random_small_graph(2000 + seed, 10);
        let exact = exact_clique_cover_number(&g).unwrap();
        assert_eq!(exact == 1, g.is_complete(), "seed {seed}");
        assert_eq!(exact == g.n(), g.edge_count() == 0, "seed {seed}");
    }
}

#[test]
fn greedy_never_beats_exact() {
    for seed in 0..250 {
        let g = random_small_graph(3000 + seed, 12);
        let cover = greedy_clique_cover(&g);
        assert!(is_valid_clique_cover(&g, &cover));
        let chi = exact_clique_cover_number(&g).unwrap();
        assert!(cover.size() >= chi);
        assert!(cover.size() <= g.complement().max_degree() + 1);

        let dom = greedy_dominating_set(&g);
        assert!(is_dominating_set(&g, &dom));
        let gamma = exact_domination_number(&g).unwrap();
        assert!(dom.size() >= gamma);
        assert!(dom.size() as f64 <= gamma as f64 * harmonic(g.max_degree() + 1) + 1e-9);
    }
}

#[test]
fn planted_partition_small_exact_cover_is_k() {
    for n in 1..=12 {
        for k in 1..=n {
            let (g, _) = gen_planted_partition(n, k, 1.0, 0.0, &mut rng_from(n as u64)).unwrap();
            assert_eq!(exact_clique_cover_number(&g).unwrap(), k);
            assert_eq!(greedy_clique_cover(&g).size(), k);
        }
    }
    // With sparse cross edges the planted blocks still give the optimum.
    let mut agree = 0;
    for seed in 0..100 {
        let (g, _) = gen_planted_partition(12, 3, 1.0, 0.05, &mut rng_from(seed)).unwrap();
        let exact = exact_clique_cover_number(&g).unwrap();
        assert_eq!(exact, brute_force_cover(&g));
        agree += usize::from(exact == 3);
    }
    assert!(agree >= 95, "{agree}");
}

/// One vertex per block, pairwise non-adjacent, found by backtracking.
fn independent_transversal(g: &Graph, labels: &[usize], k: usize) -> Option<Vec<usize>> {
    let blocks: Vec<Vec<usize>> =
        (0..k).map(|b| (0..g.n()).filter(|&v| labels[v] == b).collect()).collect();
    fn go(g: &Graph, blocks: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
        let Some(block) = blocks.get(chosen.len()) else { return true };
        for &v in block {
            if chosen.iter().all(|&u| !g.has_edge(u, v)) {
                chosen.push(v);
                if go(g, blocks, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    let mut chosen = Vec::new();
    go(g, &blocks, &mut chosen).then_some(chosen)
}

#[test]
fn planted_partition_large_cover_is_k() {
    // The k planted blocks are cliques (cover <= k); an independent
    // transversal needs k distinct cliques (cover >= k).
    let (g, labels) = gen_planted_partition(1024, 16, 1.0, 0.01, &mut rng_from(5)).unwrap();
    let witness = independent_transversal(&g, &labels, 16).expect("independent transversal");
    assert_eq!(witness.len(), 16);
    let planted = feedback_bandits::graphalgo::CliqueCover {
        parts: (0..16).map(|b| (0..1024).filter(|&v| labels[v] == b).collect()).collect(),
    };
    assert!(is_valid_clique_cover(&g, &planted));
    assert!(greedy_clique_cover(&g).size() >= 16);
}

#[test]
fn power_law_tail_is_heavier_than_erdos_renyi() {
    fn degrees(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }
    for seed in 0..50 {
        let pl = degrees(&gen_power_law(1000, 5000, 2.5, &mut rng_from(seed)).unwrap());
        let er = degrees(&gen_erdos_renyi(1000, 5000, &mut rng_from(seed)).unwrap());
        assert!(pl[999] > er[999], "seed {seed}: max {} vs {}", pl[999], er[999]);
        assert!(pl[500] < er[500], "seed {seed}: median {} vs {}", pl[500], er[500]);
    }
}

#[test]
fn loads_large_edge_list() {
    let n = 4039;
    let g = gen_erdos_renyi(n, 40_000, &mut rng_from(1)).unwrap();
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "# synthetic snapshot").unwrap();
    for (u, v) in g.edges() {
        writeln!(f, "{v} {u}").unwrap();
    }
    // Make sure the highest id occurs.
    writeln!(f, "{} {}", n - 1, 0).unwrap();
    let loaded = load_edge_list(f.path()).unwrap();
    assert_eq!(loaded.graph.n(), n);
    assert!(loaded.graph.edge_count() >= g.edge_count());
    assert!(is_simple_undirected(&loaded.graph));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn generators_are_simple_and_deterministic(seed in any::<u64>(), n in 2usize..60, frac in 0.0f64..1.0) {
        let m = (frac * (n * (n - 1) / 2) as f64) as usize;
        let er = gen_erdos_renyi(n, m, &mut rng_from(seed)).unwrap();
        prop_assert!(is_simple_undirected(&er));
        prop_assert_eq!(er.edge_count(), m);
        prop_assert_eq!(&er, &gen_erdos_renyi(n, m, &mut rng_from(seed)).unwrap());

        let m_pl = m.min(n * 2);
        let pl = gen_power_law(n, m_pl, 2.5, &mut rng_from(seed)).unwrap();
        prop_assert!(is_simple_undirected(&pl));
        prop_assert_eq!(pl.edge_count(), m_pl);
        prop_assert_eq!(&pl, &gen_power_law(n, m_pl, 2.5, &mut rng_from(seed)).unwrap());

        let k = 1 + (seed % n as u64) as usize;
        let (pp, labels) = gen_planted_partition(n, k, 1.0, frac * 0.5, &mut rng_from(seed)).unwrap();
        prop_assert!(is_simple_undirected(&pp));
        let again = gen_planted_partition(n, k, 1.0, frac * 0.5, &mut rng_from(seed)).unwrap();
        prop_assert_eq!(&pp, &again.0);
        let mut sizes = vec![0usize; k];
        for &l in &labels {
            sizes[l] += 1;
        }
        prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
    }

    #[test]
    fn planted_clique_edge_count(n in 1usize..80, k_seed in any::<usize>()) {
        let k = 1 + k_seed % n;
        let (g, labels) = gen_planted_partition(n, k, 1.0, 0.0, &mut rng_from(0)).unwrap();
        let expected: usize = (0..k)
            .map(|b| labels.iter().filter(|&&l| l == b).count())
            .map(|s| s * s.saturating_sub(1) / 2)
            .sum();
        prop_assert_eq!(g.edge_count(), expected);
    }

    #[test]
    fn closed_neighborhood_contains_vertex(seed in any::<u64>()) {
        let g = random_small_graph(seed, 30);
        for a in 0..g.n() {
            let nbhd = g.closed_neighborhood(a).unwrap();
            prop_assert!(nbhd.contains(&a));
            prop_assert_eq!(nbhd.len(), g.degree(a) + 1);
        }
    }
}
