//! Shared corpus builders for the integration suites.
#![allow(dead_code)] // each integration test binary uses a different subset

use sparsifier_core::generate;
use sparsifier_core::graph::WeightedGraph;
use sparsifier_core::rng::SplitMix64;

/// Ring of `count` cliques of size `k`, adjacent cliques joined by
/// `bridges` edges on distinct vertex pairs.
pub fn ring_of_cliques(count: usize, k: usize, bridges: usize) -> WeightedGraph {
    assert!(bridges <= k);
    let mut edges = Vec::new();
    for c in 0..count {
        let base = c * k;
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v, 1.0));
            }
        }
        let next = ((c + 1) % count) * k;
        for b in 0..bridges {
            edges.push((base + b, next + b, 1.0));
        }
    }
    WeightedGraph::build(count * k, edges).expect("valid ring of cliques")
}

/// Random connected graph with at most `max_n` vertices; retries seeds until
/// the sample is connected.
pub fn random_connected(max_n: usize, seed: u64) -> WeightedGraph {
    let mut rng = SplitMix64::new(seed);
    loop {
        let n = 2 + rng.next_range(max_n - 1);
        let p = 0.25 + 0.65 * rng.next_f64();
        let g = generate::gnp(n, p, rng.next_u64()).unwrap();
        if g.edge_count() == 0 {
            continue;
        }
        let comps = sparsifier_core::connected_components(&g, g.edges());
        if comps.len() == 1 {
            return g;
        }
    }
}

/// Mixed fuzz family for the partitioning contracts: sparse and dense
/// binomial graphs, dumbbells, rings of cliques, grids.
pub fn fuzz_graph(idx: usize) -> WeightedGraph {
    let mut rng = SplitMix64::new(0x5EED_0000 + idx as u64);
    match idx % 5 {
        0 => {
            let n = 8 + rng.next_range(249);
            let c = 1.5 + 6.0 * rng.next_f64();
            generate::gnp(n, (c / n as f64).min(1.0), rng.next_u64()).unwrap()
        }
        1 => {
            let n = 6 + rng.next_range(59);
            let p = 0.2 + 0.5 * rng.next_f64();
            generate::gnp(n, p, rng.next_u64()).unwrap()
        }
        2 => {
            let k = 3 + rng.next_range(58);
            generate::joined_cliques(k).unwrap()
        }
        3 => {
            let count = 3 + rng.next_range(10);
            let k = 3 + rng.next_range(10);
            let bridges = 1 + rng.next_range(k.min(3));
            ring_of_cliques(count, k, bridges)
        }
        _ => {
            let r = 2 + rng.next_range(14);
            let c = 2 + rng.next_range(14);
            generate::grid(r, c).unwrap()
        }
    }
}

/// Random weighted graph with weights spread across magnitudes, all in
/// (0, 1].
pub fn random_weighted(max_n: usize, seed: u64) -> WeightedGraph {
    let mut rng = SplitMix64::new(seed);
    let n = 2 + rng.next_range(max_n - 1);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.next_f64() < 0.4 {
                let mag = rng.next_range(30) as i32;
                let w = (0.05 + 0.95 * rng.next_f64()) * 2f64.powi(-mag);
                edges.push((u, v, w));
            }
        }
    }
    if edges.is_empty() {
        edges.push((0, 1, 0.5));
    }
    WeightedGraph::build(n, edges).expect("valid weighted graph")
}
