//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line.
//!
//! Tolerances are pinned in the assertions themselves: exact integer or
//! rational arithmetic where the statement is exact, explicit epsilons
//! where an eigensolve is involved, and success-rate thresholds for the
//! statistical contracts.
#![allow(clippy::neg_cmp_op_on_partial_ord)] // ensure!(a <= b) style checks

mod common;

use rayon::prelude::*;
use sparsifier_core::cuts::{conductance, exact_sparsest_cut, max_volume_sparse_cut, Ratio};
use sparsifier_core::generate;
use sparsifier_core::graph::{LoopedSubgraph, VertexSet, WeightedGraph};
use sparsifier_core::io::{read_graph_from, write_graph_to, GraphFormat};
use sparsifier_core::partition::{approx_cut, partition, partition2};
use sparsifier_core::rng::SplitMix64;
use sparsifier_core::sampling::{sample_subgraph, SampleParams};
use sparsifier_core::sparsify::{contract, pullback, ClusterMap, PullbackStrategy};
use sparsifier_core::sparsify::{
    sparsify, sparsify2, truncate_weights, unwted_sparsify, SparsifyConfig,
};
use sparsifier_core::spectral::{
    normalized_lambda2, path_domination_check, quadratic_form, relative_norm, sigma_approximation,
};

fn criterion(no: u32, name: &str, f: impl FnOnce() -> Result<(), String>) {
    match f() {
        Ok(()) => println!("ACCEPTANCE {no} ({name}): PASS"),
        Err(msg) => {
            println!("ACCEPTANCE {no} ({name}): FAIL - {msg}");
            panic!("acceptance criterion {no} failed: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(format!($($arg)+));
        }
    };
}

#[test]
fn acceptance_01_golden_ring_bipartite() {
    criterion(1, "golden ring-bipartite example", || {
        let with_bridge = generate::ring_bipartite(8, 4, true).unwrap();
        let without = generate::ring_bipartite(8, 4, false).unwrap();
        let x: Vec<f64> = (0..32)
            .map(|id| ((id / 4).min(8 - id / 4)) as f64)
            .collect();
        let q_with = quadratic_form(&with_bridge, &x).unwrap();
        let q_without = quadratic_form(&without, &x).unwrap();
        ensure!(
            q_with == 144.0,
            "quadratic form with bridge: {q_with} != 144"
        );
        ensure!(
            q_without == 128.0,
            "quadratic form without bridge: {q_without} != 128"
        );
        let sigma = sigma_approximation(&with_bridge, &without).unwrap().sigma;
        ensure!(
            sigma >= 1.125 - 1e-9,
            "sigma {sigma} below the 1 + n/(4k^2) = 1.125 lower bound"
        );
        Ok(())
    });
}

#[test]
fn acceptance_02_cheeger_suite() {
    criterion(2, "Cheeger inequality on 200 graphs", || {
        let failures: Vec<String> = (0..200u64)
            .into_par_iter()
            .filter_map(|seed| {
                let g = common::random_connected(12, 0xC4EE7 + seed);
                let ctx = g.degrees();
                let best = exact_sparsest_cut(&g, &VertexSet::full(g.n()), &ctx).unwrap();
                let phi = best.conductance;
                let est = normalized_lambda2(&g, &ctx).unwrap();
                if est.disconnected {
                    return Some(format!("seed {seed}: unexpectedly disconnected"));
                }
                if 2.0 * phi < est.lambda2 - 1e-9 {
                    return Some(format!(
                        "seed {seed}: 2 phi {} < lambda2 {}",
                        2.0 * phi,
                        est.lambda2
                    ));
                }
                if est.lambda2 < phi * phi / 2.0 - 1e-9 {
                    return Some(format!(
                        "seed {seed}: lambda2 {} < phi^2/2 {}",
                        est.lambda2,
                        phi * phi / 2.0
                    ));
                }
                None
            })
            .collect();
        ensure!(failures.is_empty(), "{}", failures.join("; "));
        Ok(())
    });
}

#[test]
fn acceptance_03_sparse_cut_certificate() {
    criterion(
        3,
        "max-volume sparse-cut certificate, exact rational",
        || {
            let failures: Vec<String> = (0..200u64)
                .into_par_iter()
                .filter_map(|seed| {
                    let mut rng = SplitMix64::new(0xCE47 + seed);
                    let n = 2 + rng.next_range(11);
                    let p = 0.15 + 0.75 * rng.next_f64();
                    let g = generate::gnp(n, p, rng.next_u64()).unwrap();
                    let ctx = g.degrees();
                    let b = VertexSet::full(n);
                    let vol_b = ctx.volume(&b);
                    for k in 1..=10u64 {
                        let phi = Ratio::new(k, 10);
                        let cut = match max_volume_sparse_cut(&g, &b, &ctx, phi).unwrap() {
                            Some(c) => c,
                            None => continue,
                        };
                        let vol_s = cut.vol_s;
                        // alpha <= 1/3, exactly
                        if 3 * vol_s > vol_b {
                            continue;
                        }
                        let rest = b.difference(&cut.s);
                        let worst = exact_sparsest_cut(&g, &rest, &ctx).unwrap();
                        // Phi'(B - S) >= phi (1 - 3 alpha) / (1 - alpha), i.e.
                        // c / d >= k (b - 3a) / (10 (b - a)) with a = vol_s, b = vol_b.
                        let num = k as u128 * (vol_b - 3 * vol_s) as u128;
                        let den = 10u128 * (vol_b - vol_s) as u128;
                        let (c, d) = if worst.s.is_empty() || worst.min_vol() == 0 {
                            (1u128, 1u128)
                        } else {
                            (worst.boundary_count as u128, worst.min_vol() as u128)
                        };
                        // Exact first; the 1e-12 slack only matters if exactness
                        // fails, which it must not for an exact lemma.
                        if c * den < num * d {
                            let lhs = c as f64 / d as f64;
                            let rhs = num as f64 / den as f64;
                            if lhs < rhs - 1e-12 {
                                return Some(format!(
                                    "seed {seed} phi {k}/10: conductance {lhs} below bound {rhs}"
                                ));
                            }
                        }
                    }
                    None
                })
                .collect();
            ensure!(failures.is_empty(), "{}", failures.join("; "));
            Ok(())
        },
    );
}

#[test]
fn acceptance_04_norm_gap_sigma_bound() {
    criterion(4, "lambda/(lambda - eps) bound on sampled graphs", || {
        let k50 = generate::complete(50).unwrap();
        let gnp = generate::gnp(100, 0.3, 424242).unwrap();
        let mut evaluated = 0usize;
        for seed in 0..50u64 {
            let g = if seed % 2 == 0 { &k50 } else { &gnp };
            let upsilon = [4.0, 8.0, 16.0][(seed % 3) as usize];
            let ctx = g.degrees();
            let params = SampleParams::practical(upsilon).unwrap();
            let sampled =
                sample_subgraph(&VertexSet::full(g.n()), g.edges(), &ctx, &params, seed).unwrap();
            let lambda = normalized_lambda2(g, &ctx).unwrap().lambda2;
            let eps_hat = relative_norm(g, &sampled.graph, &ctx).unwrap();
            if eps_hat >= lambda {
                continue;
            }
            evaluated += 1;
            let sigma = sigma_approximation(g, &sampled.graph).unwrap().sigma;
            let bound = lambda / (lambda - eps_hat) + 1e-6;
            ensure!(
                sigma <= bound,
                "seed {seed} upsilon {upsilon}: sigma {sigma} above bound {bound}"
            );
        }
        ensure!(
            evaluated >= 10,
            "only {evaluated} instances had eps < lambda"
        );
        Ok(())
    });
}

#[test]
fn acceptance_05_partitioning_contracts() {
    criterion(
        5,
        "volume/conductance contracts on 1000-graph corpus",
        || {
            let failures: Vec<String> = (0..1000usize)
            .into_par_iter()
            .filter_map(|idx| {
                let g = common::fuzz_graph(idx);
                if g.edge_count() == 0 {
                    return None;
                }
                let seed = idx as u64;
                let gb = LoopedSubgraph::whole(&g);
                let ctx = g.degrees();
                let vol_total = ctx.total_volume();
                let tau = [0.02, 0.1, 0.3, 0.7][idx % 4];
                let theta = [0.05, 0.2, 0.5, 0.9][(idx / 4) % 4];
                let eps = [0.5, 0.25, 0.1][(idx / 16) % 3];
                let phi = [0.05, 0.2, 0.5, 0.9][(idx / 3) % 4];

                let p1 = partition(&gb, tau, 0.1, seed).unwrap();
                if 8 * ctx.volume(&p1.d) > 7 * vol_total {
                    return Some(format!("graph {idx}: partition volume cap violated"));
                }
                if !p1.d.is_empty() {
                    let cut = conductance(&g, &p1.d, gb.vertices(), &ctx).unwrap();
                    if !cut.leq_f64(tau) {
                        return Some(format!(
                            "graph {idx}: partition conductance contract violated: {} > {tau}",
                            cut.conductance
                        ));
                    }
                }

                let p2 = partition2(&gb, theta, 0.1, eps, seed).unwrap();
                if 10 * ctx.volume(&p2.d) > 9 * vol_total {
                    return Some(format!("graph {idx}: round-collector volume cap violated"));
                }
                if !p2.d.is_empty() {
                    let cut = conductance(&g, &p2.d, gb.vertices(), &ctx).unwrap();
                    if !cut.leq_f64(theta) {
                        return Some(format!(
                            "graph {idx}: round-collector conductance contract violated: {} > {theta}",
                            cut.conductance
                        ));
                    }
                }

                let ac = approx_cut(&g, phi, 0.1, seed).unwrap();
                if 25 * ctx.volume(&ac.d) > 23 * vol_total {
                    return Some(format!("graph {idx}: approx-cut volume cap violated"));
                }
                if !ac.d.is_empty() {
                    let cut = conductance(&g, &ac.d, gb.vertices(), &ctx).unwrap();
                    if !cut.leq_f64(phi) {
                        return Some(format!(
                            "graph {idx}: approx-cut conductance contract violated: {} > {phi}",
                            cut.conductance
                        ));
                    }
                }
                None
            })
            .collect();
            ensure!(failures.is_empty(), "{}", failures.join("; "));
            Ok(())
        },
    );
}

#[test]
fn acceptance_06_planted_cut_recovery() {
    criterion(6, "planted cuts recovered in >= 80% of seeds", || {
        // Dumbbell: two K100 cliques, bridge conductance 1/9901; the leaf
        // partitioner's target is 2 phi / 207, so phi = 0.05 reaches it.
        let dumbbell = generate::joined_cliques(100).unwrap();
        let dctx = dumbbell.degrees();
        let hits: usize = (0..50u64)
            .into_par_iter()
            .filter(|&seed| {
                let out = approx_cut(&dumbbell, 0.05, 0.1, seed).unwrap();
                if out.d.is_empty() {
                    return false;
                }
                let cut =
                    conductance(&dumbbell, &out.d, &VertexSet::full(dumbbell.n()), &dctx).unwrap();
                cut.leq_f64(0.05)
            })
            .count();
        ensure!(hits >= 40, "dumbbell: only {hits} of 50 seeds recovered");

        // Ring of 8 K25 cliques (n = 200), arc conductance 2/1204 and below.
        let ring = common::ring_of_cliques(8, 25, 1);
        let rctx = ring.degrees();
        let ring_hits: usize = (0..50u64)
            .into_par_iter()
            .filter(|&seed| {
                let out = approx_cut(&ring, 0.2, 0.1, seed).unwrap();
                if out.d.is_empty() {
                    return false;
                }
                let cut = conductance(&ring, &out.d, &VertexSet::full(ring.n()), &rctx).unwrap();
                cut.leq_f64(0.2)
            })
            .count();
        ensure!(
            ring_hits >= 40,
            "ring: only {ring_hits} of 50 seeds recovered"
        );
        Ok(())
    });
}

#[test]
fn acceptance_07_unwted_sparsify() {
    criterion(7, "unweighted sparsifier subset + quality", || {
        // Support-subset property on a mixed practical corpus.
        for idx in 0..30usize {
            let g = common::fuzz_graph(idx);
            let target = (g.edge_count() / 3).max(4);
            let cfg = SparsifyConfig::practical(0.5, 0.1, target, idx as u64);
            let out = unwted_sparsify(&g, &cfg).unwrap();
            for e in out.graph.edges() {
                ensure!(
                    g.edge_index(e.u, e.v).is_some(),
                    "graph {idx}: output edge ({}, {}) not in input",
                    e.u,
                    e.v
                );
            }
        }

        // Practical mode on Gnp(400, 0.2) with a 20n edge budget: measured
        // sigma at most 2 in at least 18 of 20 seeds.
        let g = generate::gnp(400, 0.2, 77).unwrap();
        let target = 20 * 400;
        let sigmas: Vec<f64> = (0..20u64)
            .into_par_iter()
            .map(|seed| {
                let cfg = SparsifyConfig::practical(0.5, 0.1, target, seed);
                let out = unwted_sparsify(&g, &cfg).unwrap();
                sigma_approximation(&g, &out.graph).unwrap().sigma
            })
            .collect();
        let good = sigmas.iter().filter(|&&s| s <= 2.0).count();
        ensure!(
            good >= 18,
            "only {good} of 20 seeds had sigma <= 2.0 (sigmas: {sigmas:?})"
        );
        Ok(())
    });
}

#[test]
fn acceptance_08_truncation_sandwich() {
    criterion(8, "truncation sandwich and level reconstruction", || {
        let failures: Vec<String> = (0..500u64)
            .into_par_iter()
            .filter_map(|seed| {
                let g = common::random_weighted(40, 0x7A0C + seed);
                for eps in [0.49, 0.2, 0.05] {
                    let ld = match truncate_weights(&g, eps) {
                        Ok(ld) => ld,
                        Err(e) => return Some(format!("seed {seed}: {e}")),
                    };
                    if !ld.sandwich_holds(&g) {
                        return Some(format!("seed {seed} eps {eps}: sandwich violated"));
                    }
                    if !ld.reconstructs_exactly(&g) {
                        return Some(format!("seed {seed} eps {eps}: reconstruction failed"));
                    }
                    let cap = (2.0 * ld.q_cap as f64).log2().ceil() as u32;
                    for idx in 0..g.edge_count() {
                        if ld.level_multiplicity(idx) > cap {
                            return Some(format!(
                                "seed {seed} eps {eps}: edge {idx} in too many levels"
                            ));
                        }
                        let q = ld.per_edge[idx].q;
                        if q < ld.q_cap || q >= 2 * ld.q_cap {
                            return Some(format!("seed {seed} eps {eps}: q = {q} outside [Q, 2Q)"));
                        }
                    }
                }
                None
            })
            .collect();
        ensure!(failures.is_empty(), "{}", failures.join("; "));
        Ok(())
    });
}

#[test]
fn acceptance_09_contraction_pullback() {
    criterion(
        9,
        "contraction/pullback round trip and pullback bound",
        || {
            // Round trip identity on 500 random (graph, partition) pairs.
            let failures: Vec<String> = (0..500u64)
                .into_par_iter()
                .filter_map(|seed| {
                    let mut rng = SplitMix64::new(0x9B + seed);
                    let g = common::random_connected(14, rng.next_u64());
                    let n = g.n();
                    let k = 1 + rng.next_range(n);
                    let mut groups: Vec<Vec<usize>> = vec![Vec::new(); k];
                    for v in 0..n {
                        groups[rng.next_range(k)].push(v);
                    }
                    let clusters: Vec<VertexSet> = groups
                        .into_iter()
                        .filter(|c| !c.is_empty())
                        .map(|ids| VertexSet::from_sorted(ids).unwrap())
                        .collect();
                    let map = ClusterMap::new(n, clusters).unwrap();
                    let h = contract(g.edges(), &map).unwrap();
                    let strategy = if seed % 2 == 0 {
                        PullbackStrategy::First
                    } else {
                        PullbackStrategy::Random(seed)
                    };
                    let back = pullback(&h, &map, g.edges(), n, strategy).unwrap();
                    let again = contract(back.edges(), &map).unwrap();
                    if again.edges() != h.edges() {
                        return Some(format!("seed {seed}: round trip differs"));
                    }
                    None
                })
                .collect();
            ensure!(failures.is_empty(), "{}", failures.join("; "));

            // Pullback bound: heavy intra-part edges, weight-1 crossing edges,
            // the crossing edges replaced by a pullback of an approximation of
            // their contraction. sigma stays below (1 + eps)(1 + 1/c)^2.
            let eps = 0.3;
            let c = 6.0 / eps;
            let bound = (1.0 + eps) * (1.0 + 1.0 / c) * (1.0 + 1.0 / c) + 1e-6;
            for trial in 0..20u64 {
                let mut rng = SplitMix64::new(0x9C0 + trial);
                let n = 20 + rng.next_range(41);
                let parts = 2 + rng.next_range(3);
                let heavy = (c * c * (n as f64).powi(3)).ceil();
                let mut owner = vec![0usize; n];
                for (v, o) in owner.iter_mut().enumerate() {
                    *o = if v < parts { v } else { rng.next_range(parts) };
                }
                let mut groups: Vec<Vec<usize>> = vec![Vec::new(); parts];
                for v in 0..n {
                    groups[owner[v]].push(v);
                }
                let mut edges: Vec<(usize, usize, f64)> = Vec::new();
                // Spanning path of heavy edges inside each part.
                for group in &groups {
                    for w in group.windows(2) {
                        edges.push((w[0], w[1], heavy));
                    }
                }
                let heavy_count = edges.len();
                // Weight-1 crossing edges.
                for u in 0..n {
                    for v in u + 1..n {
                        if owner[u] != owner[v] && rng.next_f64() < 0.25 {
                            edges.push((u, v, 1.0));
                        }
                    }
                }
                if edges.len() == heavy_count {
                    continue;
                }
                let g = WeightedGraph::build(n, edges).unwrap();
                let crossing: Vec<sparsifier_core::Edge> =
                    g.edges().iter().copied().filter(|e| e.w == 1.0).collect();
                let g1 = WeightedGraph::build(
                    n,
                    g.edges()
                        .iter()
                        .filter(|e| e.w != 1.0)
                        .map(|e| (e.u, e.v, e.w)),
                )
                .unwrap();
                let clusters: Vec<VertexSet> = groups
                    .iter()
                    .map(|ids| VertexSet::from_sorted(ids.clone()).unwrap())
                    .collect();
                let map = ClusterMap::new(n, clusters).unwrap();
                let h = contract(&crossing, &map).unwrap();
                // A (1 + eps)-approximation of the contraction by edge scaling.
                let scale_lo = 1.0 / (1.0 + eps).sqrt();
                let scale_hi = (1.0 + eps).sqrt();
                let ht = WeightedGraph::build(
                    h.n(),
                    h.edges().iter().map(|e| {
                        let f = scale_lo + (scale_hi - scale_lo) * rng.next_f64();
                        (e.u, e.v, e.w * f)
                    }),
                )
                .unwrap();
                let sigma_h = sigma_approximation(&ht, &h).unwrap().sigma;
                ensure!(
                    sigma_h <= 1.0 + eps + 1e-9,
                    "trial {trial}: contraction approximation too loose ({sigma_h})"
                );
                let g0t =
                    pullback(&ht, &map, &crossing, n, PullbackStrategy::Random(trial)).unwrap();
                let approx = g0t.graph_sum(&g1).unwrap();
                let sigma = sigma_approximation(&approx, &g).unwrap().sigma;
                ensure!(
                    sigma <= bound,
                    "trial {trial}: sigma {sigma} above pullback bound {bound}"
                );
            }
            Ok(())
        },
    );
}

#[test]
fn acceptance_10_cluster_counter() {
    criterion(10, "sum of cluster counts <= 2 n l", || {
        let mut runs = 0usize;
        let mut seed = 0u64;
        while runs < 50 {
            seed += 1;
            let g = common::random_weighted(60, 0xA11CE + seed);
            if g.n() < 8 {
                continue;
            }
            let cfg = SparsifyConfig::paper(0.3, 0.1, seed);
            let (out, stats) = sparsify(&g, &cfg).unwrap();
            ensure!(
                stats.sum_k <= 2 * g.n() * stats.l_shift as usize,
                "seed {seed}: sum k = {} above 2 n l = {}",
                stats.sum_k,
                2 * g.n() * stats.l_shift as usize
            );
            // Output support inside the input support, always.
            for e in out.edges() {
                ensure!(
                    g.edge_index(e.u, e.v).is_some(),
                    "seed {seed}: output edge ({}, {}) not in the input",
                    e.u,
                    e.v
                );
            }
            runs += 1;
        }
        Ok(())
    });
}

/// Six K20 cores at weight 1, a ring of paired bridges at 2^-40, and a few
/// 2^-80 chords; every vertex hosts at most two bridge candidates.
fn three_scale_instance() -> WeightedGraph {
    let cores = 6usize;
    let k = 20usize;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for c in 0..cores {
        let base = c * k;
        for u in 0..k {
            for v in u + 1..k {
                edges.push((base + u, base + v, 1.0));
            }
        }
    }
    let mid = 2f64.powi(-40);
    for c in 0..cores {
        let base = c * k;
        let next = ((c + 1) % cores) * k;
        edges.push((base, next, mid));
        edges.push((base + 1, next + 1, mid));
    }
    let tiny = 2f64.powi(-80);
    edges.push((2, 2 * k + 2, tiny));
    edges.push((k + 3, 4 * k + 3, tiny));
    edges.push((3 * k + 4, 5 * k + 4, tiny));
    WeightedGraph::build(cores * k, edges).unwrap()
}

/// Three K4 cores joined in a ring by quadruple bridges at 2^-40; exactly 30
/// edges on 12 vertices.
fn thirty_edge_instance() -> WeightedGraph {
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    for c in 0..3usize {
        let base = c * 4;
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((base + u, base + v, 1.0));
            }
        }
    }
    let mid = 2f64.powi(-40);
    for c in 0..3usize {
        let base = c * 4;
        let next = ((c + 1) % 3) * 4;
        for j in 0..4 {
            edges.push((base + j, next + j, mid));
        }
    }
    let g = WeightedGraph::build(12, edges).unwrap();
    assert_eq!(g.edge_count(), 30);
    g
}

#[test]
fn acceptance_11_blow_up() {
    criterion(11, "vertex and edge blow-up of the random pullback", || {
        // Per-vertex blow-up at most 2 in at least 95 of 100 seeded runs.
        let g = three_scale_instance();
        let ok: usize = (0..100u64)
            .into_par_iter()
            .filter(|&seed| {
                let cfg = SparsifyConfig::paper(0.3, 0.1, seed);
                let (_, report, _) = sparsify2(&g, &cfg).unwrap();
                report.max_vertex() <= 2.0
            })
            .count();
        ensure!(
            ok >= 95,
            "only {ok} of 100 runs had max vertex blow-up <= 2"
        );

        // Per-edge mean blow-up <= 1 within three standard errors over 1000
        // seeds on a 30-edge instance.
        let small = thirty_edge_instance();
        let runs = 1000u64;
        let sums: Vec<f64> = (0..runs)
            .into_par_iter()
            .map(|seed| {
                let cfg = SparsifyConfig::paper(0.3, 0.1, seed);
                let (_, report, _) = sparsify2(&small, &cfg).unwrap();
                report.edge.clone()
            })
            .reduce(
                || vec![0.0; small.edge_count()],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(&b) {
                        *x += y;
                    }
                    a
                },
            );
        for (idx, total) in sums.iter().enumerate() {
            let mean = total / runs as f64;
            // Worst case here is a 4-candidate pullback: variance 3.
            let se = (3.0f64 / runs as f64).sqrt();
            ensure!(
                mean <= 1.0 + 3.0 * se,
                "edge {idx}: mean blow-up {mean} above 1 + 3 se"
            );
        }
        Ok(())
    });
}

#[test]
fn acceptance_12_path_domination() {
    criterion(12, "path domination on 100 random paths", || {
        let mut rng = SplitMix64::new(0x9A77);
        for trial in 0..100 {
            let k = 1 + rng.next_range(6);
            let weights: Vec<f64> = (0..k).map(|_| 0.1 + 9.9 * rng.next_f64()).collect();
            let path = WeightedGraph::build(
                k + 1,
                weights.iter().enumerate().map(|(i, &w)| (i, i + 1, w)),
            )
            .unwrap();
            let ok = path_domination_check(0, k, &weights, &path, None).unwrap();
            ensure!(ok, "trial {trial}: resistance-sum factor failed");
        }
        // Tight equal-weight case: factor k/w holds, 0.999 of it fails.
        let w = 2.0;
        let k = 3;
        let weights = vec![w; k];
        let path = WeightedGraph::build(
            k + 1,
            weights.iter().enumerate().map(|(i, &wx)| (i, i + 1, wx)),
        )
        .unwrap();
        let factor = k as f64 / w;
        ensure!(
            path_domination_check(0, k, &weights, &path, Some(factor)).unwrap(),
            "tight factor unexpectedly failed"
        );
        ensure!(
            !path_domination_check(0, k, &weights, &path, Some(0.999 * factor)).unwrap(),
            "0.999 of the tight factor unexpectedly held"
        );
        Ok(())
    });
}

#[test]
fn acceptance_13_io_round_trip() {
    criterion(13, "file round trips, bit-exact", || {
        let failures: Vec<String> = (0..1000u64)
            .into_par_iter()
            .filter_map(|seed| {
                let g = if seed % 3 == 0 {
                    common::random_weighted(30, 0x10 + seed)
                } else {
                    let mut rng = SplitMix64::new(0x11 + seed);
                    let n = 2 + rng.next_range(30);
                    generate::gnp(n, 0.4, rng.next_u64()).unwrap()
                };
                for format in [GraphFormat::EdgeList, GraphFormat::MatrixMarket] {
                    let mut buf = Vec::new();
                    write_graph_to(&mut buf, &g, format).unwrap();
                    let back = match read_graph_from(std::io::Cursor::new(&buf[..]), format) {
                        Ok(b) => b,
                        Err(e) => return Some(format!("seed {seed}: {e}")),
                    };
                    if g.edges() != back.edges() {
                        return Some(format!("seed {seed}: {format:?} round trip differs"));
                    }
                    let mut buf2 = Vec::new();
                    write_graph_to(&mut buf2, &back, format).unwrap();
                    if buf != buf2 {
                        return Some(format!("seed {seed}: {format:?} bytes differ"));
                    }
                }
                None
            })
            .collect();
        ensure!(failures.is_empty(), "{}", failures.join("; "));
        Ok(())
    });
}
