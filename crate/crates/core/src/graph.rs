//! Immutable weighted undirected graphs with identity-preserving subgraphs.
//!
//! Vertices are dense ids `0..n`. Subgraphs keep the full id space so that
//! quadratic-form inequalities proved on pieces can be summed over the whole
//! graph. Parallel edges are merged at construction by adding weights; self
//! loops are rejected (degree-preserving self-loop semantics are carried by
//! [`DegreeContext`] instead, see [`LoopedSubgraph`]).

use crate::error::{Error, Result};

pub type VertexId = usize;

/// A canonical edge: `u < v`, positive finite weight.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Edge {
    pub u: VertexId,
    pub v: VertexId,
    pub w: f64,
}

impl Edge {
    pub fn new(u: VertexId, v: VertexId, w: f64) -> Edge {
        debug_assert!(u < v);
        Edge { u, v, w }
    }
}

#[derive(Clone, Debug)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<Edge>,
    adj_offsets: Vec<usize>,
    adj: Vec<(VertexId, f64)>,
    weighted_degree: Vec<f64>,
    unweighted_degree: Vec<usize>,
}

impl WeightedGraph {
    /// Builds the canonical representation: edges sorted by `(u, v)` with
    /// `u < v`, parallel edges merged by weight addition.
    pub fn build<I>(n: usize, raw_edges: I) -> Result<WeightedGraph>
    where
        I: IntoIterator<Item = (usize, usize, f64)>,
    {
        let mut canon: Vec<(usize, usize, f64)> = Vec::new();
        for (u, v, w) in raw_edges {
            if u == v {
                return Err(Error::SelfLoop { u, v });
            }
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { u, v, n });
            }
            if !(w > 0.0) || !w.is_finite() {
                return Err(Error::BadWeight { u, v, w });
            }
            let (a, b) = if u < v { (u, v) } else { (v, u) };
            canon.push((a, b, w));
        }
        canon.sort_by_key(|x| (x.0, x.1));

        let mut edges: Vec<Edge> = Vec::with_capacity(canon.len());
        for (u, v, w) in canon {
            match edges.last_mut() {
                Some(e) if e.u == u && e.v == v => e.w += w,
                _ => edges.push(Edge::new(u, v, w)),
            }
        }
        Ok(Self::from_canonical(n, edges))
    }

    /// `edges` must already be canonical (sorted, u < v, merged, valid).
    fn from_canonical(n: usize, edges: Vec<Edge>) -> WeightedGraph {
        let mut unweighted_degree = vec![0usize; n];
        let mut weighted_degree = vec![0.0f64; n];
        for e in &edges {
            unweighted_degree[e.u] += 1;
            unweighted_degree[e.v] += 1;
            weighted_degree[e.u] += e.w;
            weighted_degree[e.v] += e.w;
        }
        let mut adj_offsets = vec![0usize; n + 1];
        for v in 0..n {
            adj_offsets[v + 1] = adj_offsets[v] + unweighted_degree[v];
        }
        let mut cursor = adj_offsets.clone();
        let mut adj = vec![(0usize, 0.0f64); 2 * edges.len()];
        for e in &edges {
            adj[cursor[e.u]] = (e.v, e.w);
            cursor[e.u] += 1;
            adj[cursor[e.v]] = (e.u, e.w);
            cursor[e.v] += 1;
        }
        WeightedGraph {
            n,
            edges,
            adj_offsets,
            adj,
            weighted_degree,
            unweighted_degree,
        }
    }

    pub fn empty(n: usize) -> WeightedGraph {
        Self::from_canonical(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.adj[self.adj_offsets[v]..self.adj_offsets[v + 1]]
    }

    pub fn weighted_degree(&self, v: VertexId) -> f64 {
        self.weighted_degree[v]
    }

    pub fn unweighted_degree(&self, v: VertexId) -> usize {
        self.unweighted_degree[v]
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.iter().map(|e| e.w).sum()
    }

    pub fn max_weight(&self) -> f64 {
        self.edges.iter().fold(0.0, |m, e| m.max(e.w))
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.iter().all(|e| e.w == 1.0)
    }

    pub fn has_integral_weights(&self) -> bool {
        self.edges.iter().all(|e| e.w >= 1.0 && e.w.fract() == 0.0)
    }

    /// Unweighted degrees of this graph as a degree context.
    pub fn degrees(&self) -> DegreeContext {
        DegreeContext::new(self.unweighted_degree.clone())
    }

    pub fn edge_weight(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.edge_index(u, v).map(|i| self.edges[i].w)
    }

    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        self.edges
            .binary_search_by(|e| (e.u, e.v).cmp(&(a, b)))
            .ok()
    }

    /// G(S): edges of G with both endpoints in S, same vertex id space.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<WeightedGraph> {
        if !s.valid_for(self.n) {
            return Err(Error::BadVertexSet { n: self.n });
        }
        let mask = s.membership(self.n);
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|e| mask[e.u] && mask[e.v])
            .copied()
            .collect();
        Ok(Self::from_canonical(self.n, edges))
    }

    /// G + H: edge weights added, shared edges merged.
    pub fn graph_sum(&self, other: &WeightedGraph) -> Result<WeightedGraph> {
        if self.n != other.n {
            return Err(Error::VertexCountMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let mut edges = Vec::with_capacity(self.edges.len() + other.edges.len());
        let (mut i, mut j) = (0, 0);
        while i < self.edges.len() && j < other.edges.len() {
            let a = self.edges[i];
            let b = other.edges[j];
            match (a.u, a.v).cmp(&(b.u, b.v)) {
                std::cmp::Ordering::Less => {
                    edges.push(a);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    edges.push(b);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    edges.push(Edge::new(a.u, a.v, a.w + b.w));
                    i += 1;
                    j += 1;
                }
            }
        }
        edges.extend_from_slice(&self.edges[i..]);
        edges.extend_from_slice(&other.edges[j..]);
        Ok(Self::from_canonical(self.n, edges))
    }

    /// All edge weights multiplied by `c > 0`.
    pub fn scaled(&self, c: f64) -> WeightedGraph {
        debug_assert!(c > 0.0 && c.is_finite());
        let edges = self
            .edges
            .iter()
            .map(|e| Edge::new(e.u, e.v, e.w * c))
            .collect();
        Self::from_canonical(self.n, edges)
    }

    /// Vertices with at least one incident edge, ascending.
    pub fn support(&self) -> VertexSet {
        let ids = (0..self.n)
            .filter(|&v| self.unweighted_degree[v] > 0)
            .collect();
        VertexSet::from_sorted(ids).expect("ascending by construction")
    }
}

/// A sorted set of global vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexSet {
    ids: Vec<VertexId>,
}

impl VertexSet {
    pub fn empty() -> VertexSet {
        VertexSet { ids: Vec::new() }
    }

    pub fn full(n: usize) -> VertexSet {
        VertexSet {
            ids: (0..n).collect(),
        }
    }

    /// `ids` must be strictly increasing.
    pub fn from_sorted(ids: Vec<VertexId>) -> Result<VertexSet> {
        if ids.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidInput(
                "vertex set must be strictly increasing".into(),
            ));
        }
        Ok(VertexSet { ids })
    }

    pub fn from_unsorted(mut ids: Vec<VertexId>) -> VertexSet {
        ids.sort_unstable();
        ids.dedup();
        VertexSet { ids }
    }

    pub fn ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.ids.iter().copied()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.ids.binary_search(&v).is_ok()
    }

    pub fn valid_for(&self, n: usize) -> bool {
        self.ids.last().is_none_or(|&v| v < n)
    }

    pub fn membership(&self, n: usize) -> Vec<bool> {
        let mut mask = vec![false; n];
        for &v in &self.ids {
            mask[v] = true;
        }
        mask
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.ids.iter().all(|&v| other.contains(v))
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut ids = Vec::with_capacity(self.ids.len() + other.ids.len());
        let (mut i, mut j) = (0, 0);
        while i < self.ids.len() && j < other.ids.len() {
            match self.ids[i].cmp(&other.ids[j]) {
                std::cmp::Ordering::Less => {
                    ids.push(self.ids[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    ids.push(other.ids[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    ids.push(self.ids[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        ids.extend_from_slice(&self.ids[i..]);
        ids.extend_from_slice(&other.ids[j..]);
        VertexSet { ids }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let ids = self
            .ids
            .iter()
            .copied()
            .filter(|&v| !other.contains(v))
            .collect();
        VertexSet { ids }
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let ids = self
            .ids
            .iter()
            .copied()
            .filter(|&v| other.contains(v))
            .collect();
        VertexSet { ids }
    }
}

/// External per-vertex degrees, used so that conductance and volumes inside a
/// subgraph are measured against the degrees of the original graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeContext {
    degrees: Vec<usize>,
}

impl DegreeContext {
    pub fn new(degrees: Vec<usize>) -> DegreeContext {
        DegreeContext { degrees }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.degrees[v]
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// vol(S) = sum of degrees over S.
    pub fn volume(&self, s: &VertexSet) -> u64 {
        s.iter().map(|v| self.degrees[v] as u64).sum()
    }

    pub fn total_volume(&self) -> u64 {
        self.degrees.iter().map(|&d| d as u64).sum()
    }
}

/// A partition of V together with the edges crossing between parts.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub parts: Vec<VertexSet>,
    pub boundary: Vec<Edge>,
}

impl Decomposition {
    /// Checks that the parts are disjoint, cover `0..n`, and that `boundary`
    /// is exactly the set of edges of `g` with endpoints in different parts.
    pub fn validate(&self, g: &WeightedGraph) -> Result<()> {
        let mut owner = vec![usize::MAX; g.n()];
        for (i, part) in self.parts.iter().enumerate() {
            for v in part.iter() {
                if v >= g.n() || owner[v] != usize::MAX {
                    return Err(Error::InvalidInput("parts must be disjoint".into()));
                }
                owner[v] = i;
            }
        }
        if owner.contains(&usize::MAX) {
            return Err(Error::InvalidInput("parts must cover V".into()));
        }
        let expected: Vec<Edge> = g
            .edges()
            .iter()
            .filter(|e| owner[e.u] != owner[e.v])
            .copied()
            .collect();
        if expected.len() != self.boundary.len()
            || expected
                .iter()
                .zip(&self.boundary)
                .any(|(a, b)| (a.u, a.v) != (b.u, b.v))
        {
            return Err(Error::InvalidInput(
                "boundary does not match the partition".into(),
            ));
        }
        Ok(())
    }
}

/// ∂_B(S): edges of `g` with one endpoint in S and the other in B − S.
pub fn boundary_edges(g: &WeightedGraph, s: &VertexSet, b: &VertexSet) -> Result<Vec<Edge>> {
    if !b.valid_for(g.n()) || !s.valid_for(g.n()) {
        return Err(Error::BadVertexSet { n: g.n() });
    }
    if !s.is_subset_of(b) {
        return Err(Error::NotASubset);
    }
    let in_s = s.membership(g.n());
    let in_b = b.membership(g.n());
    Ok(g.edges()
        .iter()
        .filter(|e| {
            let (su, sv) = (in_s[e.u], in_s[e.v]);
            su != sv && in_b[e.u] && in_b[e.v]
        })
        .copied()
        .collect())
}

/// Union-find with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
    components: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
            size: vec![1; n],
            components: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut a, mut b) = (self.find(x), self.find(y));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        self.components -= 1;
        true
    }

    pub fn same(&mut self, x: usize, y: usize) -> bool {
        self.find(x) == self.find(y)
    }

    pub fn component_count(&self) -> usize {
        self.components
    }

    /// Component label of every element, labels renumbered by first occurrence.
    pub fn labels(&mut self) -> Vec<usize> {
        let n = self.parent.len();
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0usize; n];
        for v in 0..n {
            let r = self.find(v);
            if label[r] == usize::MAX {
                label[r] = next;
                next += 1;
            }
            out[v] = label[r];
        }
        out
    }
}

/// Maximal connected sets of `0..g.n()` under the given edges. Every vertex
/// appears in exactly one set; isolated vertices form singletons. Components
/// are ordered by their smallest member.
pub fn connected_components(g: &WeightedGraph, active_edges: &[Edge]) -> Vec<VertexSet> {
    let mut uf = UnionFind::new(g.n());
    for e in active_edges {
        uf.union(e.u, e.v);
    }
    let labels = uf.labels();
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); uf.component_count()];
    for (v, &l) in labels.iter().enumerate() {
        parts[l].push(v);
    }
    parts
        .into_iter()
        .map(|ids| VertexSet::from_sorted(ids).expect("ascending by construction"))
        .collect()
}

/// G{B}: the induced subgraph G(B) plus the degree context of the host graph.
///
/// Self-loops that preserve original degrees are never materialized; they
/// contribute nothing to the Laplacian quadratic form, so carrying the host
/// degree vector is an exact representation.
#[derive(Clone, Debug)]
pub struct LoopedSubgraph {
    graph: WeightedGraph,
    vertices: VertexSet,
    ctx: DegreeContext,
}

impl LoopedSubgraph {
    pub fn new(host: &WeightedGraph, b: VertexSet, ctx: DegreeContext) -> Result<LoopedSubgraph> {
        if ctx.len() != host.n() {
            return Err(Error::LengthMismatch {
                expected: host.n(),
                got: ctx.len(),
            });
        }
        let graph = host.induced_subgraph(&b)?;
        Ok(LoopedSubgraph {
            graph,
            vertices: b,
            ctx,
        })
    }

    /// Whole graph as G{V}.
    pub fn whole(g: &WeightedGraph) -> LoopedSubgraph {
        LoopedSubgraph {
            graph: g.clone(),
            vertices: VertexSet::full(g.n()),
            ctx: g.degrees(),
        }
    }

    /// G{W} for W ⊆ B; the degree context stays that of the original host.
    pub fn restrict(&self, w: &VertexSet) -> Result<LoopedSubgraph> {
        if !w.is_subset_of(&self.vertices) {
            return Err(Error::NotASubset);
        }
        Ok(LoopedSubgraph {
            graph: self.graph.induced_subgraph(w)?,
            vertices: w.clone(),
            ctx: self.ctx.clone(),
        })
    }

    pub fn graph(&self) -> &WeightedGraph {
        &self.graph
    }

    pub fn vertices(&self) -> &VertexSet {
        &self.vertices
    }

    pub fn ctx(&self) -> &DegreeContext {
        &self.ctx
    }

    pub fn volume(&self) -> u64 {
        self.ctx.volume(&self.vertices)
    }
}
