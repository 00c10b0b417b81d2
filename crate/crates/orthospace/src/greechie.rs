//! Greechie diagrams: a vertex set together with its blocks, the maximal
//! cliques of an orthogonality graph. Conversion to and from plain
//! graphs, loop-order computation, sub-diagram search, and DOT export.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("graph edge ({0},{1}) is invalid for {2} vertices")]
    BadEdge(usize, usize, usize),
    #[error("invalid diagram: {0}")]
    Invalid(String),
    #[error("unknown vertex label `{0}`")]
    UnknownLabel(String),
    #[error("search exceeded its deadline")]
    Timeout,
}

/// A finite simple loopless undirected graph with ordered vertices.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct GraphSpec {
    n: usize,
    edges: BTreeSet<(usize, usize)>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for GraphSpec {
    type Error = DiagramError;
    fn try_from(j: GraphJson) -> Result<Self, Self::Error> {
        GraphSpec::new(j.n, j.edges.iter().map(|e| (e[0], e[1])))
    }
}

impl From<GraphSpec> for GraphJson {
    fn from(g: GraphSpec) -> GraphJson {
        GraphJson {
            n: g.n,
            edges: g.edges.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

impl GraphSpec {
    pub fn new(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, DiagramError> {
        let mut set = BTreeSet::new();
        for (i, j) in edges {
            if i == j || i >= n || j >= n {
                return Err(DiagramError::BadEdge(i, j, n));
            }
            set.insert((i.min(j), i.max(j)));
        }
        Ok(GraphSpec { n, edges: set })
    }

    pub fn empty(n: usize) -> Self {
        GraphSpec {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = BTreeSet::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.insert((i, j));
            }
        }
        GraphSpec { n, edges }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.edges.contains(&(i.min(j), i.max(j)))
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| self.adjacent(u, v)).count()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.adjacent(u, v)).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.n * (self.n.saturating_sub(1)) / 2
    }

    /// Induced subgraph on the complement of `removed`, keeping vertex order.
    /// Returns the subgraph and the map from new indices to old ones.
    pub fn remove_vertex(&self, removed: usize) -> (GraphSpec, Vec<usize>) {
        let keep: Vec<usize> = (0..self.n).filter(|&v| v != removed).collect();
        let pos: BTreeMap<usize, usize> = keep.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges = self
            .edges
            .iter()
            .filter(|(i, j)| *i != removed && *j != removed)
            .map(|&(i, j)| (pos[&i], pos[&j]));
        (GraphSpec::new(keep.len(), edges).unwrap(), keep)
    }

    fn adjacency_bitsets(&self) -> Vec<Vec<u64>> {
        let words = self.n.div_ceil(64);
        let mut adj = vec![vec![0u64; words]; self.n];
        for &(i, j) in &self.edges {
            adj[i][j / 64] |= 1 << (j % 64);
            adj[j][i / 64] |= 1 << (i % 64);
        }
        adj
    }
}

/// Every labeled graph on `n` vertices, in edge-mask order.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = GraphSpec> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let count = 1u64 << pairs.len();
    (0..count).map(move |mask| {
        let edges = pairs
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, &e)| e);
        GraphSpec::new(n, edges).unwrap()
    })
}

/// A Greechie diagram: ordered vertex labels plus blocks, where the blocks
/// must be exactly the maximal cliques (of size ≥ 2) of the co-block graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "DiagramJson", into = "DiagramJson")]
pub struct GreechieDiagram {
    vertices: Vec<String>,
    blocks: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
struct DiagramJson {
    vertices: Vec<String>,
    blocks: Vec<Vec<String>>,
}

impl TryFrom<DiagramJson> for GreechieDiagram {
    type Error = DiagramError;
    fn try_from(j: DiagramJson) -> Result<Self, Self::Error> {
        let index: BTreeMap<&str, usize> = j
            .vertices
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i))
            .collect();
        if index.len() != j.vertices.len() {
            return Err(DiagramError::Invalid("duplicate vertex label".into()));
        }
        let mut blocks = Vec::new();
        for b in &j.blocks {
            let mut idx = Vec::new();
            for label in b {
                idx.push(
                    *index
                        .get(label.as_str())
                        .ok_or_else(|| DiagramError::UnknownLabel(label.clone()))?,
                );
            }
            blocks.push(idx);
        }
        GreechieDiagram::new(j.vertices, blocks)
    }
}

impl From<GreechieDiagram> for DiagramJson {
    fn from(d: GreechieDiagram) -> DiagramJson {
        DiagramJson {
            blocks: d
                .blocks
                .iter()
                .map(|b| b.iter().map(|&v| d.vertices[v].clone()).collect())
                .collect(),
            vertices: d.vertices,
        }
    }
}

impl GreechieDiagram {
    /// Build and validate a diagram from labels and index blocks.
    pub fn new(vertices: Vec<String>, blocks: Vec<Vec<usize>>) -> Result<Self, DiagramError> {
        let mut norm = Vec::with_capacity(blocks.len());
        for b in blocks {
            let set: BTreeSet<usize> = b.iter().copied().collect();
            if set.len() != b.len() {
                return Err(DiagramError::Invalid("block repeats a vertex".into()));
            }
            if set.len() < 2 {
                return Err(DiagramError::Invalid("block smaller than 2".into()));
            }
            if set.iter().any(|&v| v >= vertices.len()) {
                return Err(DiagramError::Invalid("block vertex out of range".into()));
            }
            norm.push(set.into_iter().collect::<Vec<_>>());
        }
        norm.sort();
        norm.dedup();
        let d = GreechieDiagram {
            vertices,
            blocks: norm,
        };
        d.validate()?;
        Ok(d)
    }

    /// Blocks must be exactly the maximal cliques of the co-block graph.
    fn validate(&self) -> Result<(), DiagramError> {
        for (i, a) in self.blocks.iter().enumerate() {
            for (j, b) in self.blocks.iter().enumerate() {
                if i != j && a.iter().all(|v| b.contains(v)) {
                    return Err(DiagramError::Invalid(format!(
                        "block {i} is contained in block {j}"
                    )));
                }
            }
        }
        let graph = self.co_block_graph();
        let cliques = maximal_cliques(&graph);
        let expect: BTreeSet<Vec<usize>> = cliques.into_iter().filter(|c| c.len() >= 2).collect();
        let have: BTreeSet<Vec<usize>> = self.blocks.iter().cloned().collect();
        if expect != have {
            return Err(DiagramError::Invalid(
                "blocks are not the maximal cliques of the co-block graph".into(),
            ));
        }
        Ok(())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.vertices.iter().position(|l| l == label)
    }

    /// The graph whose edges join vertices sharing a block.
    pub fn co_block_graph(&self) -> GraphSpec {
        let edges = self.blocks.iter().flat_map(|b| {
            b.iter()
                .enumerate()
                .flat_map(move |(i, &u)| b[i + 1..].iter().map(move |&v| (u, v)))
        });
        GraphSpec::new(self.vertices.len(), edges).unwrap()
    }

    /// Smallest n ≥ 3 such that distinct blocks B₁,…,Bₙ close a cycle in
    /// which consecutive blocks share an atom and the n connecting atoms
    /// are pairwise distinct; `None` when no such loop exists.
    pub fn min_loop_order(&self) -> Option<usize> {
        let nb = self.blocks.len();
        if nb < 3 {
            return None;
        }
        // shared[i][j] = atoms common to blocks i and j
        let mut shared = vec![vec![Vec::new(); nb]; nb];
        for i in 0..nb {
            for j in i + 1..nb {
                let common: Vec<usize> = self.blocks[i]
                    .iter()
                    .copied()
                    .filter(|v| self.blocks[j].contains(v))
                    .collect();
                shared[i][j] = common.clone();
                shared[j][i] = common;
            }
        }
        for target in 3..=nb {
            for start in 0..nb {
                let mut used_blocks = vec![false; nb];
                used_blocks[start] = true;
                let mut used_atoms = Vec::new();
                if loop_dfs(
                    &shared,
                    start,
                    start,
                    1,
                    target,
                    &mut used_blocks,
                    &mut used_atoms,
                ) {
                    return Some(target);
                }
            }
        }
        None
    }

    /// Deterministic DOT rendering: one point node per vertex, one box node
    /// per block, and an edge from each block to its member vertices.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph greechie {\n");
        for (i, label) in self.vertices.iter().enumerate() {
            writeln!(out, "  v{i} [shape=circle, label=\"{label}\"];").unwrap();
        }
        for (j, block) in self.blocks.iter().enumerate() {
            writeln!(out, "  b{j} [shape=box, label=\"B{j}\"];").unwrap();
            for &v in block {
                writeln!(out, "  b{j} -- v{v};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

#[allow(clippy::too_many_arguments)]
fn loop_dfs(
    shared: &[Vec<Vec<usize>>],
    start: usize,
    current: usize,
    depth: usize,
    target: usize,
    used_blocks: &mut Vec<bool>,
    used_atoms: &mut Vec<usize>,
) -> bool {
    if depth == target {
        // close the cycle back to the start with one more fresh atom
        return shared[current][start]
            .iter()
            .any(|a| !used_atoms.contains(a));
    }
    for next in 0..shared.len() {
        if used_blocks[next] || shared[current][next].is_empty() {
            continue;
        }
        for &atom in &shared[current][next] {
            if used_atoms.contains(&atom) {
                continue;
            }
            used_blocks[next] = true;
            used_atoms.push(atom);
            if loop_dfs(shared, start, next, depth + 1, target, used_blocks, used_atoms) {
                return true;
            }
            used_atoms.pop();
            used_blocks[next] = false;
        }
    }
    false
}

/// Blocks of a graph: its maximal cliques of size ≥ 2, via pivoting
/// Bron–Kerbosch. Vertices in no such clique stay isolated.
pub fn diagram_from_graph(g: &GraphSpec) -> GreechieDiagram {
    let labels = (0..g.n()).map(|i| i.to_string()).collect();
    let blocks = maximal_cliques(g)
        .into_iter()
        .filter(|c| c.len() >= 2)
        .collect();
    GreechieDiagram {
        vertices: labels,
        blocks,
    }
}

/// The co-block graph of a diagram; inverse of [`diagram_from_graph`].
pub fn graph_from_diagram(d: &GreechieDiagram) -> GraphSpec {
    d.co_block_graph()
}

/// All maximal cliques (including singletons for isolated vertices),
/// each sorted, the list sorted.
pub fn maximal_cliques(g: &GraphSpec) -> Vec<Vec<usize>> {
    let n = g.n();
    let words = n.div_ceil(64);
    let adj = g.adjacency_bitsets();
    let mut p = vec![0u64; words];
    for v in 0..n {
        p[v / 64] |= 1 << (v % 64);
    }
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, &mut Vec::new(), p, vec![0u64; words], &mut cliques, n);
    cliques.iter_mut().for_each(|c| c.sort_unstable());
    cliques.sort();
    cliques
}

fn bits(set: &[u64], n: usize) -> impl Iterator<Item = usize> + '_ {
    (0..n).filter(move |&v| set[v / 64] >> (v % 64) & 1 == 1)
}

fn bron_kerbosch(
    adj: &[Vec<u64>],
    r: &mut Vec<usize>,
    p: Vec<u64>,
    x: Vec<u64>,
    out: &mut Vec<Vec<usize>>,
    n: usize,
) {
    if p.iter().all(|&w| w == 0) && x.iter().all(|&w| w == 0) {
        out.push(r.clone());
        return;
    }
    // pivot: vertex of P ∪ X with the most neighbors inside P
    let pivot = bits(&p, n)
        .chain(bits(&x, n))
        .max_by_key(|&u| {
            adj[u]
                .iter()
                .zip(&p)
                .map(|(a, b)| (a & b).count_ones())
                .sum::<u32>()
        })
        .unwrap();
    let candidates: Vec<usize> = bits(&p, n)
        .filter(|&v| adj[pivot][v / 64] >> (v % 64) & 1 == 0)
        .collect();
    let mut p = p;
    let mut x = x;
    for v in candidates {
        let np: Vec<u64> = p.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        let nx: Vec<u64> = x.iter().zip(&adj[v]).map(|(a, b)| a & b).collect();
        r.push(v);
        bron_kerbosch(adj, r, np, nx, out, n);
        r.pop();
        p[v / 64] &= !(1 << (v % 64));
        x[v / 64] |= 1 << (v % 64);
    }
}

/// An injective map of pattern vertices into host vertices preserving
/// co-block adjacency; with `full` it also reflects adjacency.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DiagramEmbedding {
    pub mapping: Vec<usize>,
    pub full: bool,
}

/// Backtracking sub-diagram search over the derived co-block graphs.
///
/// Pattern vertices are tried in order of descending co-block degree and
/// host candidates in ascending vertex order, so the returned witness is
/// deterministic. `None` means the search was exhaustive; running out of
/// time is a distinct [`DiagramError::Timeout`].
pub fn find_embedding(
    pattern: &GreechieDiagram,
    host: &GreechieDiagram,
    full: bool,
    deadline: Duration,
) -> Result<Option<DiagramEmbedding>, DiagramError> {
    let pg = pattern.co_block_graph();
    let hg = host.co_block_graph();
    find_graph_embedding(&pg, &hg, full, deadline)
}

/// The same search on plain graphs.
pub fn find_graph_embedding(
    pg: &GraphSpec,
    hg: &GraphSpec,
    full: bool,
    deadline: Duration,
) -> Result<Option<DiagramEmbedding>, DiagramError> {
    let np = pg.n();
    let nh = hg.n();
    if np == 0 {
        return Ok(Some(DiagramEmbedding {
            mapping: Vec::new(),
            full,
        }));
    }
    if np > nh {
        return Ok(None);
    }
    let mut order: Vec<usize> = (0..np).collect();
    order.sort_by_key(|&v| (usize::MAX - pg.degree(v), v));
    let hadj = hg.adjacency_bitsets();
    let hdeg: Vec<usize> = (0..nh).map(|v| hg.degree(v)).collect();
    let words = nh.div_ceil(64);

    struct Search<'a> {
        pg: &'a GraphSpec,
        order: &'a [usize],
        hadj: &'a [Vec<u64>],
        hdeg: &'a [usize],
        words: usize,
        nh: usize,
        full: bool,
        image: Vec<Option<usize>>,
        used: Vec<bool>,
        started: Instant,
        deadline: Duration,
        ticks: u32,
    }

    impl Search<'_> {
        fn run(&mut self, depth: usize) -> Result<bool, DiagramError> {
            self.ticks = self.ticks.wrapping_add(1);
            if self.ticks % 1024 == 0 && self.started.elapsed() > self.deadline {
                return Err(DiagramError::Timeout);
            }
            if depth == self.order.len() {
                return Ok(true);
            }
            let v = self.order[depth];
            // candidate set: intersection of host neighborhoods of the
            // images of v's already-placed neighbors
            let mut cand = vec![u64::MAX; self.words];
            let mut constrained = false;
            for u in 0..self.pg.n() {
                if self.pg.adjacent(u, v) {
                    if let Some(img) = self.image[u] {
                        for (c, a) in cand.iter_mut().zip(&self.hadj[img]) {
                            *c &= a;
                        }
                        constrained = true;
                    }
                }
            }
            if !constrained {
                cand = vec![u64::MAX; self.words];
            }
            let deg_v = self.pg.degree(v);
            for h in 0..self.nh {
                if cand[h / 64] >> (h % 64) & 1 == 0 || self.used[h] || self.hdeg[h] < deg_v {
                    continue;
                }
                if self.full {
                    // reflected adjacency: placed non-neighbors must not be
                    // adjacent to h in the host
                    let ok = (0..self.pg.n()).all(|u| {
                        u == v
                            || self.pg.adjacent(u, v)
                            || self.image[u]
                                .map(|img| self.hadj[h][img / 64] >> (img % 64) & 1 == 0)
                                .unwrap_or(true)
                    });
                    if !ok {
                        continue;
                    }
                }
                self.image[v] = Some(h);
                self.used[h] = true;
                if self.run(depth + 1)? {
                    return Ok(true);
                }
                self.image[v] = None;
                self.used[h] = false;
            }
            Ok(false)
        }
    }

    let mut search = Search {
        pg,
        order: &order,
        hadj: &hadj,
        hdeg: &hdeg,
        words,
        nh,
        full,
        image: vec![None; np],
        used: vec![false; nh],
        started: Instant::now(),
        deadline,
        ticks: 0,
    };
    if search.run(0)? {
        let mapping = search.image.iter().map(|i| i.unwrap()).collect();
        Ok(Some(DiagramEmbedding { mapping, full }))
    } else {
        Ok(None)
    }
}

/// Check an embedding claim directly against the two co-block graphs.
pub fn verify_embedding(
    pattern: &GreechieDiagram,
    host: &GreechieDiagram,
    emb: &DiagramEmbedding,
) -> bool {
    let pg = pattern.co_block_graph();
    let hg = host.co_block_graph();
    if emb.mapping.len() != pg.n() {
        return false;
    }
    let mut seen = BTreeSet::new();
    if !emb.mapping.iter().all(|&h| h < hg.n() && seen.insert(h)) {
        return false;
    }
    for i in 0..pg.n() {
        for j in i + 1..pg.n() {
            let host_adj = hg.adjacent(emb.mapping[i], emb.mapping[j]);
            if pg.adjacent(i, j) && !host_adj {
                return false;
            }
            if emb.full && !pg.adjacent(i, j) && host_adj {
                return false;
            }
        }
    }
    true
}
