//! Graph generators, one registered family per name so the CLI can select
//! them at runtime.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::rng::{derive_seed, edge_unit, SplitMix64};

/// Family-specific parameters; unused fields are ignored by each family.
#[derive(Clone, Copy, Debug)]
pub struct GenParams {
    /// Vertex count, per-side size, or ring length depending on the family.
    pub n: usize,
    /// Second size parameter (bipartite block size, grid columns).
    pub k: usize,
    /// Edge probability for gnp.
    pub p: f64,
    /// Degree for random-regular.
    pub d: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 0,
            k: 0,
            p: 0.0,
            d: 0,
        }
    }
}

pub trait GraphFamily: Sync {
    fn name(&self) -> &'static str;
    fn usage(&self) -> &'static str;
    fn generate(&self, params: &GenParams, seed: u64) -> Result<WeightedGraph>;
}

struct Complete;
struct JoinedCliques;
struct RingBipartite;
struct Gnp;
struct Grid;
struct RandomRegular;

static FAMILIES: [&dyn GraphFamily; 6] = [
    &Complete,
    &JoinedCliques,
    &RingBipartite,
    &Gnp,
    &Grid,
    &RandomRegular,
];

pub fn families() -> &'static [&'static dyn GraphFamily] {
    &FAMILIES
}

pub fn family(name: &str) -> Option<&'static dyn GraphFamily> {
    FAMILIES.iter().copied().find(|f| f.name() == name)
}

impl GraphFamily for Complete {
    fn name(&self) -> &'static str {
        "complete"
    }
    fn usage(&self) -> &'static str {
        "--n <vertices>"
    }
    fn generate(&self, params: &GenParams, _seed: u64) -> Result<WeightedGraph> {
        if params.n == 0 {
            return Err(Error::InvalidInput("complete requires --n >= 1".into()));
        }
        complete(params.n)
    }
}

impl GraphFamily for JoinedCliques {
    fn name(&self) -> &'static str {
        "joined-cliques"
    }
    fn usage(&self) -> &'static str {
        "--n <vertices per clique>"
    }
    fn generate(&self, params: &GenParams, _seed: u64) -> Result<WeightedGraph> {
        if params.n < 2 {
            return Err(Error::InvalidInput(
                "joined-cliques requires --n >= 2".into(),
            ));
        }
        joined_cliques(params.n)
    }
}

impl GraphFamily for RingBipartite {
    fn name(&self) -> &'static str {
        "ring-bipartite"
    }
    fn usage(&self) -> &'static str {
        "--n <ring length, even> --k <vertices per set>"
    }
    fn generate(&self, params: &GenParams, _seed: u64) -> Result<WeightedGraph> {
        ring_bipartite(params.n, params.k, true)
    }
}

impl GraphFamily for Gnp {
    fn name(&self) -> &'static str {
        "gnp"
    }
    fn usage(&self) -> &'static str {
        "--n <vertices> --p <edge probability> --seed <seed>"
    }
    fn generate(&self, params: &GenParams, seed: u64) -> Result<WeightedGraph> {
        gnp(params.n, params.p, seed)
    }
}

impl GraphFamily for Grid {
    fn name(&self) -> &'static str {
        "grid"
    }
    fn usage(&self) -> &'static str {
        "--n <rows> --k <columns>"
    }
    fn generate(&self, params: &GenParams, _seed: u64) -> Result<WeightedGraph> {
        grid(params.n, params.k)
    }
}

impl GraphFamily for RandomRegular {
    fn name(&self) -> &'static str {
        "random-regular"
    }
    fn usage(&self) -> &'static str {
        "--n <vertices> --d <degree> --seed <seed>"
    }
    fn generate(&self, params: &GenParams, seed: u64) -> Result<WeightedGraph> {
        random_regular(params.n, params.d, seed)
    }
}

pub fn complete(n: usize) -> Result<WeightedGraph> {
    let mut edges = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1.0));
        }
    }
    WeightedGraph::build(n, edges)
}

/// Two complete graphs on `n` vertices joined by the single edge (0, n).
pub fn joined_cliques(n: usize) -> Result<WeightedGraph> {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1.0));
            edges.push((u + n, v + n, 1.0));
        }
    }
    edges.push((0, n, 1.0));
    WeightedGraph::build(2 * n, edges)
}

/// `n` sets of `k` vertices in a ring, adjacent sets joined completely, plus
/// (when `bridge`) one extra edge between set 0 and set n/2. Vertex (u, i)
/// has id u*k + i.
pub fn ring_bipartite(n: usize, k: usize, bridge: bool) -> Result<WeightedGraph> {
    if n < 4 || !n.is_multiple_of(2) || k == 0 {
        return Err(Error::InvalidInput(
            "ring-bipartite requires even --n >= 4 and --k >= 1".into(),
        ));
    }
    let mut edges = Vec::with_capacity(n * k * k + 1);
    for u in 0..n {
        let next = (u + 1) % n;
        for i in 0..k {
            for j in 0..k {
                edges.push((u * k + i, next * k + j, 1.0));
            }
        }
    }
    if bridge {
        edges.push((0, (n / 2) * k, 1.0));
    }
    WeightedGraph::build(n * k, edges)
}

/// Erdos-Renyi G(n, p); coins keyed by (seed, u, v).
pub fn gnp(n: usize, p: f64, seed: u64) -> Result<WeightedGraph> {
    if n == 0 {
        return Err(Error::InvalidInput("gnp requires --n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::BadParameter {
            name: "p",
            value: p,
            range: "[0, 1]",
        });
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if edge_unit(seed, u, v) < p {
                edges.push((u, v, 1.0));
            }
        }
    }
    WeightedGraph::build(n, edges)
}

/// rows x cols lattice with 4-neighbor edges.
pub fn grid(rows: usize, cols: usize) -> Result<WeightedGraph> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidInput("grid requires --n and --k >= 1".into()));
    }
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1), 1.0));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c), 1.0));
            }
        }
    }
    WeightedGraph::build(rows * cols, edges)
}

/// Random d-regular simple graph by the pairing model, retrying with derived
/// seeds until the pairing is simple.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<WeightedGraph> {
    if n == 0 || d == 0 || d >= n || !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidInput(
            "random-regular requires 1 <= d < n with n*d even".into(),
        ));
    }
    'attempt: for attempt in 0..10_000u64 {
        let mut rng = SplitMix64::new(derive_seed(seed, attempt));
        let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
        // Fisher-Yates
        for i in (1..points.len()).rev() {
            let j = rng.next_range(i + 1);
            points.swap(i, j);
        }
        let mut seen = std::collections::HashSet::new();
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v {
                continue 'attempt;
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                continue 'attempt;
            }
            edges.push((key.0, key.1, 1.0));
        }
        return WeightedGraph::build(n, edges);
    }
    Err(Error::InvalidInput(
        "random-regular pairing failed to produce a simple graph".into(),
    ))
}
