//! Weighted sparsification: binary weight decomposition, truncation into
//! weight-1 level graphs, contraction of much-heavier prefix components,
//! sparsification of the contractions, and pullback to original edges.
//!
//! Two variants: `sparsify` (deterministic first-candidate pullback) and
//! `sparsify2` (degree-bucketed clusters with greedy subdivision and random
//! pullback, which bounds per-vertex weight blow-up).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, UnionFind, VertexSet, WeightedGraph};
use crate::rng::{derive_seed, SplitMix64};
use crate::sparsify::levels::{bit_decompose, ldexp, truncate_weights, LevelDecomposition};
use crate::sparsify::unweighted::{unwted_sparsify, UnwtedOutcome};
use crate::sparsify::SparsifyConfig;

/// Assignment of a vertex subset to cluster ids 0..k.
#[derive(Clone, Debug)]
pub struct ClusterMap {
    /// Per-vertex cluster id; `None` for vertices outside the mapped set.
    pub assignment: Vec<Option<usize>>,
    pub clusters: Vec<VertexSet>,
}

impl ClusterMap {
    pub fn new(n: usize, clusters: Vec<VertexSet>) -> Result<ClusterMap> {
        let mut assignment = vec![None; n];
        for (id, cluster) in clusters.iter().enumerate() {
            for v in cluster.iter() {
                if v >= n || assignment[v].is_some() {
                    return Err(Error::InvalidInput(
                        "clusters must be disjoint and in range".into(),
                    ));
                }
                assignment[v] = Some(id);
            }
        }
        Ok(ClusterMap {
            assignment,
            clusters,
        })
    }

    pub fn cluster_count(&self) -> usize {
        self.clusters.len()
    }
}

/// Quotient graph under the cluster map: vertices are cluster ids, weights
/// of edges between different clusters are summed, intra-cluster edges are
/// dropped (no self-loops in the contraction).
pub fn contract(edges: &[Edge], map: &ClusterMap) -> Result<WeightedGraph> {
    let mut quotient = Vec::with_capacity(edges.len());
    for e in edges {
        let a = map.assignment[e.u].ok_or(Error::UnmappedVertex { v: e.u })?;
        let b = map.assignment[e.v].ok_or(Error::UnmappedVertex { v: e.v })?;
        if a != b {
            quotient.push((a, b, e.w));
        }
    }
    WeightedGraph::build(map.cluster_count(), quotient)
}

#[derive(Clone, Copy, Debug)]
pub enum PullbackStrategy {
    /// Lexicographically least candidate edge.
    First,
    /// Uniform candidate keyed by (seed, cluster pair).
    Random(u64),
}

/// One original representative edge per contracted edge, carrying the
/// contracted weight. The contraction of the result equals the input
/// exactly.
pub fn pullback(
    h: &WeightedGraph,
    map: &ClusterMap,
    candidates: &[Edge],
    n: usize,
    strategy: PullbackStrategy,
) -> Result<WeightedGraph> {
    let mut by_pair: BTreeMap<(usize, usize), Vec<(usize, usize)>> = BTreeMap::new();
    for e in candidates {
        if let (Some(a), Some(b)) = (map.assignment[e.u], map.assignment[e.v]) {
            if a != b {
                let key = (a.min(b), a.max(b));
                by_pair.entry(key).or_default().push((e.u, e.v));
            }
        }
    }
    let mut chosen = Vec::with_capacity(h.edge_count());
    for he in h.edges() {
        let key = (he.u.min(he.v), he.u.max(he.v));
        let list = by_pair
            .get(&key)
            .ok_or(Error::NoPullbackCandidate { a: he.u, b: he.v })?;
        let (u, v) = match strategy {
            PullbackStrategy::First => list[0],
            PullbackStrategy::Random(seed) => {
                let mut rng =
                    SplitMix64::new(derive_seed(derive_seed(seed, key.0 as u64), key.1 as u64));
                list[rng.next_range(list.len())]
            }
        };
        chosen.push((u, v, he.w));
    }
    WeightedGraph::build(n, chosen)
}

/// Per-edge and per-vertex weight blow-up of a sparsifier whose support is
/// contained in the original graph.
#[derive(Clone, Debug)]
pub struct BlowUpReport {
    /// Indexed like the original graph's edge list; 0 for dropped edges.
    pub edge: Vec<f64>,
    /// Degree-normalized sum of incident edge blow-ups.
    pub vertex: Vec<f64>,
}

impl BlowUpReport {
    pub fn max_vertex(&self) -> f64 {
        self.vertex.iter().fold(0.0, |m, &x| m.max(x))
    }

    pub fn mean_edge(&self) -> f64 {
        if self.edge.is_empty() {
            0.0
        } else {
            self.edge.iter().sum::<f64>() / self.edge.len() as f64
        }
    }
}

pub fn blow_up(g: &WeightedGraph, gt: &WeightedGraph) -> Result<BlowUpReport> {
    if g.n() != gt.n() {
        return Err(Error::VertexCountMismatch {
            left: g.n(),
            right: gt.n(),
        });
    }
    let mut edge = vec![0.0f64; g.edge_count()];
    for e in gt.edges() {
        match g.edge_index(e.u, e.v) {
            Some(idx) => edge[idx] = e.w / g.edges()[idx].w,
            None => return Err(Error::SupportViolation { u: e.u, v: e.v }),
        }
    }
    let mut vertex = vec![0.0f64; g.n()];
    for (idx, e) in g.edges().iter().enumerate() {
        vertex[e.u] += edge[idx];
        vertex[e.v] += edge[idx];
    }
    for v in 0..g.n() {
        let d = g.unweighted_degree(v);
        if d > 0 {
            vertex[v] /= d as f64;
        }
    }
    Ok(BlowUpReport { edge, vertex })
}

pub struct BoundedOutcome {
    pub graph: WeightedGraph,
    pub bits: u32,
    pub max_depth: usize,
}

/// Integral-weight sparsification: G = sum of 2^i G_i over the bits of the
/// weights, each weight-1 graph sparsified independently with failure budget
/// p / bits.
pub fn bounded_sparsify(g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<BoundedOutcome> {
    let (bits, graphs) = bit_decompose(g)?;
    let mut acc = WeightedGraph::empty(g.n());
    let mut max_depth = 0;
    for (i, gi) in graphs.iter().enumerate() {
        if gi.edge_count() == 0 {
            continue;
        }
        let sub_cfg = cfg
            .with_fail_prob(cfg.fail_prob / bits as f64)
            .with_seed(derive_seed(cfg.seed, i as u64));
        let UnwtedOutcome { graph, stats } = unwted_sparsify(gi, &sub_cfg)?;
        max_depth = max_depth.max(stats.depth);
        acc = acc.graph_sum(&graph.scaled(2f64.powi(i as i32)))?;
    }
    Ok(BoundedOutcome {
        graph: acc,
        bits,
        max_depth,
    })
}

/// Statistics for one weighted sparsification run.
#[derive(Clone, Debug, Default)]
pub struct WeightedStats {
    pub levels: usize,
    /// (level index, cluster count k_i).
    pub cluster_counts: Vec<(u32, usize)>,
    pub sum_k: usize,
    pub l_shift: u32,
    /// Per subdivided part: (level, delta, boundary count). sparsify2 only.
    pub subdivided_boundaries: Vec<(u32, u32, u64)>,
}

fn validate_weighted_inputs(g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<()> {
    let n = g.n() as f64;
    if !(cfg.epsilon > 1.0 / n && cfg.epsilon < 1.0 / 3.0) {
        return Err(Error::EpsilonOutOfRange {
            eps: cfg.epsilon,
            lo: 1.0 / n,
            hi: 1.0 / 3.0,
        });
    }
    if !(cfg.fail_prob > 0.0 && cfg.fail_prob < 0.5) {
        return Err(Error::BadParameter {
            name: "fail_prob",
            value: cfg.fail_prob,
            range: "(0, 1/2)",
        });
    }
    Ok(())
}

/// Component labels of V under the union of levels <= each queried level.
/// Returns, for each populated level i, the labels under E^{<= i - l}
/// (identity labels when i < l). Union-find advances once over ascending
/// query levels.
fn prefix_component_labels(
    n: usize,
    decomposition: &LevelDecomposition,
    l_shift: u32,
) -> BTreeMap<u32, Vec<usize>> {
    let mut out = BTreeMap::new();
    let mut uf = UnionFind::new(n);
    let mut level_iter = decomposition.levels.iter().peekable();
    for &(i, _) in &decomposition.levels {
        if i < l_shift {
            out.insert(i, (0..n).collect());
            continue;
        }
        let cutoff = i - l_shift;
        while let Some(&&(j, ref gj)) = level_iter.peek() {
            if j > cutoff {
                break;
            }
            for e in gj.edges() {
                uf.union(e.u, e.v);
            }
            level_iter.next();
        }
        out.insert(i, uf.labels());
    }
    out
}

/// Clusters at one level: vertices of V^i grouped by component label (and
/// bucket key), keeping only groups with an E^i edge on their boundary.
fn level_clusters(
    level_graph: &WeightedGraph,
    labels: &[usize],
    bucket: Option<&[u32]>,
) -> Vec<VertexSet> {
    let mut groups: BTreeMap<(usize, u32), Vec<usize>> = BTreeMap::new();
    let mut seen = vec![false; labels.len()];
    for e in level_graph.edges() {
        for v in [e.u, e.v] {
            if !seen[v] {
                seen[v] = true;
                let key = (labels[v], bucket.map_or(0, |b| b[v]));
                groups.entry(key).or_default().push(v);
            }
        }
    }
    let mut key_of = vec![(usize::MAX, u32::MAX); labels.len()];
    for (key, members) in &groups {
        for &v in members {
            key_of[v] = *key;
        }
    }
    let mut has_boundary: BTreeMap<(usize, u32), bool> = BTreeMap::new();
    for e in level_graph.edges() {
        if key_of[e.u] != key_of[e.v] {
            has_boundary.insert(key_of[e.u], true);
            has_boundary.insert(key_of[e.v], true);
        }
    }
    groups
        .into_iter()
        .filter(|(key, _)| has_boundary.get(key).copied().unwrap_or(false))
        .map(|(_, mut members)| {
            members.sort_unstable();
            VertexSet::from_sorted(members).expect("sorted")
        })
        .collect()
}

/// Splits a cluster whose E^i boundary exceeds 2^{delta+2} into parts with
/// boundary in [2^delta, 2^{delta+2}], pulling vertices in ascending id
/// order. A cluster already within the bound is returned unchanged. Every
/// cluster vertex must have at most 2^{delta+1} incident E^i edges.
pub fn greedy_subdivide(
    cluster: &VertexSet,
    level_edges: &[Edge],
    delta: u32,
) -> Result<Vec<VertexSet>> {
    let cap_low = 1u64 << delta;
    let cap_high = 1u64 << (delta + 2);
    let per_vertex_cap = 1u64 << (delta + 1);

    let mut incident: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
    for (idx, e) in level_edges.iter().enumerate() {
        incident.entry(e.u).or_default().push((idx, e.v));
        incident.entry(e.v).or_default().push((idx, e.u));
    }
    for v in cluster.iter() {
        let deg = incident.get(&v).map_or(0, |l| l.len()) as u64;
        if deg > per_vertex_cap {
            return Err(Error::InvalidInput(format!(
                "vertex {v} has {deg} level edges, above the 2^(delta+1) cap"
            )));
        }
    }

    // Membership: 0 = outside, 1 = remaining, 2 = current part.
    let max_v = level_edges
        .iter()
        .flat_map(|e| [e.u, e.v])
        .chain(cluster.iter())
        .max()
        .map_or(0, |v| v + 1);
    let mut state = vec![0u8; max_v];
    for v in cluster.iter() {
        state[v] = 1;
    }
    let boundary_of = |state: &[u8], tag: u8| -> u64 {
        level_edges
            .iter()
            .filter(|e| (state[e.u] == tag) != (state[e.v] == tag))
            .count() as u64
    };

    let mut remaining: Vec<usize> = cluster.iter().collect();
    let mut parts: Vec<VertexSet> = Vec::new();
    let mut guard = 0;
    while boundary_of(&state, 1) > cap_high {
        guard += 1;
        assert!(guard <= cluster.len() + 1, "subdivision failed to progress");
        let mut part: Vec<usize> = Vec::new();
        let mut part_boundary = 0u64;
        let mut taken = 0;
        for &v in remaining.iter() {
            // move v: remaining -> current part
            for &(_, other) in incident.get(&v).map(|l| l.as_slice()).unwrap_or(&[]) {
                match state[other] {
                    1 => part_boundary += 1,
                    2 => part_boundary -= 1,
                    _ => part_boundary += 1,
                }
            }
            state[v] = 2;
            part.push(v);
            taken += 1;
            if part_boundary >= cap_low {
                break;
            }
        }
        remaining.drain(..taken);
        assert!(
            (cap_low..=cap_high).contains(&part_boundary),
            "subdivided part boundary {part_boundary} outside [2^d, 2^(d+2)]"
        );
        for &v in &part {
            state[v] = 0; // done
        }
        parts.push(VertexSet::from_sorted(part).expect("ascending order"));
    }
    if !remaining.is_empty() {
        let last = VertexSet::from_sorted(remaining).expect("ascending");
        if !parts.is_empty() {
            let b = boundary_of(&state, 1);
            assert!(
                (cap_low..=cap_high).contains(&b),
                "final part boundary {b} outside [2^d, 2^(d+2)]"
            );
        }
        parts.push(last);
    }
    Ok(parts)
}

fn accumulate_scaled(acc: WeightedGraph, g: &WeightedGraph, level: u32) -> Result<WeightedGraph> {
    if g.edge_count() == 0 {
        return Ok(acc);
    }
    let scaled_edges: Vec<(usize, usize, f64)> = g
        .edges()
        .iter()
        .map(|e| (e.u, e.v, ldexp(e.w, -(level as i32))))
        .collect();
    acc.graph_sum(&WeightedGraph::build(g.n(), scaled_edges)?)
}

fn sparsify_common(
    g: &WeightedGraph,
    cfg: &SparsifyConfig,
    bucketed: bool,
) -> Result<(WeightedGraph, WeightedStats)> {
    validate_weighted_inputs(g, cfg)?;
    let n = g.n();
    let eps = cfg.epsilon;
    let b = 6.0 / eps;
    let c = 6.0 / eps;
    let eps_hat = eps / 6.0;
    let l_shift = (2.0 * b * c * c * (n as f64).powi(3)).log2().ceil() as u32;

    let decomposition = truncate_weights(g, eps)?;
    let labels_by_level = prefix_component_labels(n, &decomposition, l_shift);

    let bucket: Option<Vec<u32>> = if bucketed {
        Some(
            (0..n)
                .map(|v| {
                    let d = g.unweighted_degree(v);
                    if d == 0 {
                        0
                    } else {
                        (d as f64).log2().floor() as u32
                    }
                })
                .collect(),
        )
    } else {
        None
    };

    let mut stats = WeightedStats {
        levels: decomposition.levels.len(),
        l_shift,
        ..Default::default()
    };
    let log_n = (n as f64).log2().max(1.0);
    let mut acc = WeightedGraph::empty(n);

    for (i, level_graph) in &decomposition.levels {
        let labels = &labels_by_level[i];
        let mut clusters = level_clusters(level_graph, labels, bucket.as_deref());
        stats.cluster_counts.push((*i, clusters.len()));
        stats.sum_k += clusters.len();
        if clusters.len() < 2 {
            // At most one interesting cluster: every level edge is internal
            // to a component of much heavier edges and is dropped.
            continue;
        }
        if let Some(bucket) = bucket.as_deref() {
            let mut subdivided = Vec::new();
            for cluster in clusters {
                let delta = bucket[cluster.ids()[0]];
                let parts = greedy_subdivide(&cluster, level_graph.edges(), delta)?;
                if parts.len() > 1 {
                    for p in &parts {
                        let bd = level_graph
                            .edges()
                            .iter()
                            .filter(|e| p.contains(e.u) != p.contains(e.v))
                            .count() as u64;
                        stats.subdivided_boundaries.push((*i, delta, bd));
                    }
                }
                subdivided.extend(parts);
            }
            subdivided.sort_by(|a, b| a.ids().cmp(b.ids()));
            clusters = subdivided;
        }
        let map = ClusterMap::new(n, clusters)?;
        // (W^i, E^i): edges inside dropped boundary-less clusters are not
        // part of the contracted graph.
        let mapped_edges: Vec<Edge> = level_graph
            .edges()
            .iter()
            .filter(|e| map.assignment[e.u].is_some() && map.assignment[e.v].is_some())
            .copied()
            .collect();
        let contracted = contract(&mapped_edges, &map)?;
        if contracted.edge_count() == 0 {
            continue;
        }
        let budget = if bucketed {
            cfg.fail_prob / (cfg.c8 * n as f64 * l_shift as f64 * log_n)
        } else {
            cfg.fail_prob / (2.0 * n as f64 * l_shift as f64)
        };
        let sub_cfg = cfg
            .with_epsilon(eps_hat)
            .with_fail_prob(budget)
            .with_seed(derive_seed(cfg.seed, 1_000 + *i as u64));
        let bounded = bounded_sparsify(&contracted, &sub_cfg)?;
        let strategy = if bucketed {
            PullbackStrategy::Random(derive_seed(cfg.seed, 2_000 + *i as u64))
        } else {
            PullbackStrategy::First
        };
        let candidates = if bucketed { g.edges() } else { &mapped_edges };
        let pulled = pullback(&bounded.graph, &map, candidates, n, strategy)?;
        acc = accumulate_scaled(acc, &pulled, *i)?;
    }
    if bucketed {
        // One 2nl budget per degree bucket.
        let buckets = (n as f64).log2().ceil() as usize + 1;
        assert!(stats.sum_k <= 2 * n * l_shift as usize * buckets);
    } else {
        assert!(
            stats.sum_k <= 2 * n * l_shift as usize,
            "cluster count exceeded 2 n l"
        );
    }
    Ok((acc, stats))
}

/// Weighted sparsification (weights in (0, 1]): truncate, split into
/// weight-1 levels, contract components connected by much heavier prefixes,
/// sparsify each contraction, pull back into original level edges, and
/// recombine. The output support is a subset of the input support.
pub fn sparsify(g: &WeightedGraph, cfg: &SparsifyConfig) -> Result<(WeightedGraph, WeightedStats)> {
    sparsify_common(g, cfg, false)
}

/// Like [`sparsify`] but with degree-bucketed clusters, greedy subdivision
/// of clusters with oversized boundaries, and random pullback; bounds how
/// much total weight any vertex's edges can gain.
pub fn sparsify2(
    g: &WeightedGraph,
    cfg: &SparsifyConfig,
) -> Result<(WeightedGraph, BlowUpReport, WeightedStats)> {
    let (graph, stats) = sparsify_common(g, cfg, true)?;
    let report = blow_up(g, &graph)?;
    Ok((graph, report, stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate;
    use crate::sparsify::SparsifyConfig;

    #[test]
    fn contract_examples() {
        // {a,b} and {c,d} with edges (a,c,1), (b,c,2), (a,b,3): one edge of
        // weight 3 between the clusters, (a,b) dropped.
        let edges = vec![
            Edge::new(0, 2, 1.0),
            Edge::new(1, 2, 2.0),
            Edge::new(0, 1, 3.0),
        ];
        let map = ClusterMap::new(
            4,
            vec![
                VertexSet::from_sorted(vec![0, 1]).unwrap(),
                VertexSet::from_sorted(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let h = contract(&edges, &map).unwrap();
        assert_eq!(h.edge_count(), 1);
        assert_eq!(h.edges()[0], Edge::new(0, 1, 3.0));

        // Identity partition relabels the graph.
        let singletons = ClusterMap::new(
            3,
            (0..3)
                .map(|v| VertexSet::from_sorted(vec![v]).unwrap())
                .collect(),
        )
        .unwrap();
        let g = vec![Edge::new(0, 1, 1.0), Edge::new(1, 2, 2.0)];
        let h2 = contract(&g, &singletons).unwrap();
        assert_eq!(h2.edge_count(), 2);

        // Everything in one cluster contracts to an empty graph.
        let one = ClusterMap::new(3, vec![VertexSet::from_sorted(vec![0, 1, 2]).unwrap()]).unwrap();
        assert_eq!(contract(&g, &one).unwrap().edge_count(), 0);
    }

    #[test]
    fn pullback_roundtrip_and_first_strategy() {
        let candidates = vec![
            Edge::new(0, 2, 1.0),
            Edge::new(0, 3, 1.0),
            Edge::new(1, 2, 1.0),
        ];
        let map = ClusterMap::new(
            4,
            vec![
                VertexSet::from_sorted(vec![0, 1]).unwrap(),
                VertexSet::from_sorted(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let h = contract(&candidates, &map).unwrap();
        let back = pullback(&h, &map, &candidates, 4, PullbackStrategy::First).unwrap();
        assert_eq!(back.edge_count(), 1);
        // Lexicographically least candidate.
        assert_eq!((back.edges()[0].u, back.edges()[0].v), (0, 2));
        assert_eq!(back.edges()[0].w, 3.0);
        // Round trip is exact.
        let again = contract(back.edges(), &map).unwrap();
        assert_eq!(again.edges(), h.edges());
    }

    #[test]
    fn random_pullback_is_roughly_uniform() {
        let candidates = vec![
            Edge::new(0, 2, 1.0),
            Edge::new(0, 3, 1.0),
            Edge::new(1, 2, 1.0),
        ];
        let map = ClusterMap::new(
            4,
            vec![
                VertexSet::from_sorted(vec![0, 1]).unwrap(),
                VertexSet::from_sorted(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let h = contract(&candidates, &map).unwrap();
        let mut counts = BTreeMap::new();
        let runs = 3000;
        for seed in 0..runs {
            let back = pullback(&h, &map, &candidates, 4, PullbackStrategy::Random(seed)).unwrap();
            let e = back.edges()[0];
            *counts.entry((e.u, e.v)).or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 3);
        // Each candidate frequency within 3 sigma of 1/3.
        let expect = runs as f64 / 3.0;
        let sd = (runs as f64 * (1.0 / 3.0) * (2.0 / 3.0)).sqrt();
        for (_, c) in counts {
            assert!((c as f64 - expect).abs() <= 3.0 * sd);
        }
    }

    #[test]
    fn pullback_missing_candidate_errors() {
        let map = ClusterMap::new(
            4,
            vec![
                VertexSet::from_sorted(vec![0, 1]).unwrap(),
                VertexSet::from_sorted(vec![2, 3]).unwrap(),
            ],
        )
        .unwrap();
        let h = WeightedGraph::build(2, vec![(0, 1, 1.0)]).unwrap();
        let err = pullback(&h, &map, &[], 4, PullbackStrategy::First);
        assert!(matches!(err, Err(Error::NoPullbackCandidate { .. })));
    }

    #[test]
    fn blow_up_examples() {
        let g = WeightedGraph::build(3, vec![(0, 1, 1.0), (1, 2, 1.0)]).unwrap();
        let same = blow_up(&g, &g).unwrap();
        assert!(same.edge.iter().all(|&x| x == 1.0));
        assert!(same.vertex.iter().all(|&x| x == 1.0));

        let empty = blow_up(&g, &WeightedGraph::empty(3)).unwrap();
        assert!(empty.edge.iter().all(|&x| x == 0.0));

        // One kept edge at weight 4; vertex 1 has degree 2, blow-up 2.
        let gt = WeightedGraph::build(3, vec![(0, 1, 4.0)]).unwrap();
        let rep = blow_up(&g, &gt).unwrap();
        assert_eq!(rep.edge, vec![4.0, 0.0]);
        assert_eq!(rep.vertex[1], 2.0);

        let stranger = WeightedGraph::build(3, vec![(0, 2, 1.0)]).unwrap();
        assert!(matches!(
            blow_up(&g, &stranger),
            Err(Error::SupportViolation { .. })
        ));
    }

    #[test]
    fn bounded_sparsify_bit_structure() {
        // All weights 1: single bit, identical to the unweighted path.
        let g = generate::complete(12).unwrap();
        let cfg = SparsifyConfig::paper(0.3, 0.1, 5);
        let out = bounded_sparsify(&g, &cfg).unwrap();
        assert_eq!(out.bits, 1);
        assert_eq!(out.graph.edges(), g.edges());

        // Mixed small integers reconstruct exactly in paper mode (both
        // unweighted calls return their inputs below the threshold).
        let mixed = WeightedGraph::build(
            6,
            vec![
                (0, 1, 5.0),
                (1, 2, 3.0),
                (2, 3, 1.0),
                (3, 4, 7.0),
                (4, 5, 2.0),
            ],
        )
        .unwrap();
        let out2 = bounded_sparsify(&mixed, &cfg).unwrap();
        assert_eq!(out2.bits, 3);
        assert_eq!(out2.graph.edges(), mixed.edges());

        let bad = WeightedGraph::build(2, vec![(0, 1, 1.5)]).unwrap();
        assert!(bounded_sparsify(&bad, &cfg).is_err());
    }

    #[test]
    fn greedy_subdivide_examples() {
        // A star-like cluster with boundary 5 * 2^delta must split into
        // parts within [2^d, 2^(d+2)].
        let delta = 1u32;
        // Cluster {0..9}, each vertex with two edges leaving to 100+v.
        let mut edges = Vec::new();
        for v in 0..10usize {
            edges.push(Edge::new(v, 100 + v, 1.0));
            edges.push(Edge::new(v, 110 + v, 1.0));
        }
        let cluster = VertexSet::from_sorted((0..10).collect()).unwrap();
        let parts = greedy_subdivide(&cluster, &edges, delta).unwrap();
        assert!(parts.len() >= 2);
        for p in &parts {
            let bd = edges
                .iter()
                .filter(|e| p.contains(e.u) != p.contains(e.v))
                .count() as u64;
            assert!((2..=8).contains(&bd), "boundary {bd}");
        }
        // Deterministic: repeated call gives the same parts.
        let parts2 = greedy_subdivide(&cluster, &edges, delta).unwrap();
        assert_eq!(
            parts.iter().map(|p| p.ids().to_vec()).collect::<Vec<_>>(),
            parts2.iter().map(|p| p.ids().to_vec()).collect::<Vec<_>>()
        );

        // Within bounds: unchanged.
        let small = VertexSet::from_sorted(vec![0]).unwrap();
        let got = greedy_subdivide(&small, &edges[..2], 1).unwrap();
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].ids(), &[0]);

        // Degree precondition.
        let heavy: Vec<Edge> = (0..10).map(|j| Edge::new(0, 10 + j, 1.0)).collect();
        let one = VertexSet::from_sorted(vec![0]).unwrap();
        assert!(greedy_subdivide(&one, &heavy, 1).is_err());
    }

    #[test]
    fn sparsify_equal_weights_single_level() {
        // All weights equal: one populated level, no prior components, every
        // vertex is its own cluster, so the level passes through the
        // bounded path essentially unchanged (paper mode).
        let g = generate::gnp(24, 0.4, 2).unwrap();
        let scaled = g.scaled(0.5);
        let cfg = SparsifyConfig::paper(0.25, 0.1, 3);
        let (out, stats) = sparsify(&scaled, &cfg).unwrap();
        assert_eq!(stats.cluster_counts.len(), stats.levels);
        // Support subset.
        for e in out.edges() {
            assert!(scaled.edge_index(e.u, e.v).is_some());
        }
        // Weights reproduce the truncation of the input exactly here.
        let ld = truncate_weights(&scaled, cfg.epsilon).unwrap();
        let ghat = ld.truncated_graph(&scaled);
        assert_eq!(out.edges(), ghat.edges());
        assert!(stats.sum_k <= 2 * g.n() * stats.l_shift as usize);
    }

    #[test]
    fn sparsify_contracts_far_separated_scales() {
        // Near-complete K12 at weight 1 with two of its edges demoted to
        // 2^-60: the demoted edges' level sees the single heavy component,
        // contracts into one cluster, and drops them.
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        let tiny = ldexp(1.0, -60);
        for u in 0..12usize {
            for v in u + 1..12 {
                let w = if (u, v) == (2, 9) || (u, v) == (3, 7) {
                    tiny
                } else {
                    1.0
                };
                edges.push((u, v, w));
            }
        }
        let g = WeightedGraph::build(12, edges).unwrap();
        let cfg = SparsifyConfig::paper(0.3, 0.1, 4);
        let (out, stats) = sparsify(&g, &cfg).unwrap();
        let overlay_levels: Vec<&(u32, usize)> = stats
            .cluster_counts
            .iter()
            .filter(|(i, _)| *i > 30)
            .collect();
        assert!(!overlay_levels.is_empty());
        for (_, k) in overlay_levels {
            assert!(*k <= 1, "overlay level should contract into one component");
        }
        for e in out.edges() {
            assert!((e.u, e.v) != (2, 9) && (e.u, e.v) != (3, 7));
        }
    }

    #[test]
    fn sparsify2_subdivides_fat_clusters_within_bounds() {
        // Two K20 cores, 80 parallel bridges at 2^-40 between them: every
        // core vertex hosts four bridge endpoints, so the bridge-level
        // clusters have boundary 80 > 2^(delta+2) = 64 and must subdivide
        // into parts with boundary in [2^delta, 2^(delta+2)].
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for c in 0..2usize {
            let base = c * 20;
            for u in 0..20 {
                for v in u + 1..20 {
                    edges.push((base + u, base + v, 1.0));
                }
            }
        }
        let mid = ldexp(1.0, -40);
        for u in 0..20usize {
            for j in 0..4usize {
                edges.push((u, 20 + (u + 5 * j) % 20, mid));
            }
        }
        let g = WeightedGraph::build(40, edges).unwrap();
        let cfg = SparsifyConfig::paper(0.3, 0.1, 17);
        let (_, _, stats) = sparsify2(&g, &cfg).unwrap();
        assert!(
            !stats.subdivided_boundaries.is_empty(),
            "expected the bridge level to subdivide"
        );
        for (_, delta, boundary) in &stats.subdivided_boundaries {
            let lo = 1u64 << delta;
            let hi = 1u64 << (delta + 2);
            assert!(
                (lo..=hi).contains(boundary),
                "part boundary {boundary} outside [2^{delta}, 2^({delta}+2)]"
            );
        }
    }

    #[test]
    fn sparsify2_reports_blowup() {
        let mut edges: Vec<(usize, usize, f64)> = Vec::new();
        for u in 0..10usize {
            for v in u + 1..10 {
                edges.push((u, v, 1.0));
            }
        }
        let tiny = ldexp(1.0, -60);
        for u in 0..5usize {
            edges.push((u, u + 10, tiny));
            edges.push((u + 10, (u + 1) % 5 + 10, tiny));
        }
        let g = WeightedGraph::build(15, edges).unwrap();
        let cfg = SparsifyConfig::paper(0.3, 0.1, 8);
        let (out, report, _) = sparsify2(&g, &cfg).unwrap();
        assert_eq!(report.edge.len(), g.edge_count());
        for e in out.edges() {
            assert!(g.edge_index(e.u, e.v).is_some());
        }
    }

    #[test]
    fn epsilon_range_is_enforced() {
        let g = generate::complete(10).unwrap().scaled(0.5);
        let too_big = SparsifyConfig::paper(0.4, 0.1, 1);
        assert!(matches!(
            sparsify(&g, &too_big),
            Err(Error::EpsilonOutOfRange { .. })
        ));
        let too_small = SparsifyConfig::paper(0.05, 0.1, 1);
        assert!(sparsify(&g, &too_small).is_err());
    }
}
