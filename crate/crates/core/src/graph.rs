//! Simple connected graphs: validated construction, generator families,
//! edge-list text format, and seeded random graphs.
//!
//! Every other module reads `n`, `m`, degrees, and adjacency from [`Graph`];
//! construction is the only place those invariants are enforced. Vertices are
//! 0-based throughout the crate.

use alloc::collections::VecDeque;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Rejection budget for [`Graph::random_connected`].
pub const RANDOM_CONNECTED_RETRY_BUDGET: usize = 10_000;

/// Errors from graph construction and generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphError {
    /// An edge endpoint is not in `[0, n)`.
    IndexOutOfRange { vertex: usize, n: usize },
    /// An edge joins a vertex to itself.
    SelfLoop { vertex: usize },
    /// The same unordered pair appears twice.
    DuplicateEdge { u: usize, v: usize },
    /// The edge set does not connect all vertices.
    Disconnected,
    /// Generator parameters outside the family's domain.
    BadParams { reason: &'static str },
    /// Rejection sampling exhausted its retry budget.
    GiveUp { attempts: usize },
}

impl fmt::Display for GraphError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GraphError::IndexOutOfRange { vertex, n } => {
                write!(f, "vertex index {vertex} out of range for n = {n}")
            }
            GraphError::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            GraphError::DuplicateEdge { u, v } => write!(f, "duplicate edge {u} {v}"),
            GraphError::Disconnected => write!(f, "graph is not connected"),
            GraphError::BadParams { reason } => write!(f, "bad generator parameters: {reason}"),
            GraphError::GiveUp { attempts } => {
                write!(f, "no connected sample after {attempts} attempts")
            }
        }
    }
}

impl core::error::Error for GraphError {}

/// Errors from [`Graph::parse_edge_list`]. Line numbers are 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    /// Malformed text (bad integer, wrong token count, missing header).
    Syntax { line: usize, reason: &'static str },
    /// A structurally invalid edge, located at its line.
    Invalid { line: usize, source: GraphError },
    /// Whole-graph validation failure (connectivity).
    Graph(GraphError),
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Syntax { line, reason } => write!(f, "line {line}: {reason}"),
            ParseError::Invalid { line, source } => write!(f, "line {line}: {source}"),
            ParseError::Graph(source) => write!(f, "{source}"),
        }
    }
}

impl core::error::Error for ParseError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            ParseError::Syntax { .. } => None,
            ParseError::Invalid { source, .. } | ParseError::Graph(source) => Some(source),
        }
    }
}

/// An immutable simple connected graph.
///
/// Invariants held by every constructed value: no self-loops, no duplicate
/// edges, a single connected component, and `Σ dᵢ = 2m`. Edges are stored
/// normalized (`u < v`) and sorted lexicographically; neighbor lists are
/// sorted. All state is immutable after construction, so sharing a `Graph`
/// across threads is safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    degrees: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
}

impl Graph {
    /// Validates and builds a graph from an edge list.
    ///
    /// Pairs are normalized to `u < v`; order and orientation in the input do
    /// not matter, but the same unordered pair twice is rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::BadParams {
                reason: "vertex count must be at least 1",
            });
        }
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a >= n {
                return Err(GraphError::IndexOutOfRange { vertex: a, n });
            }
            if b >= n {
                return Err(GraphError::IndexOutOfRange { vertex: b, n });
            }
            if a == b {
                return Err(GraphError::SelfLoop { vertex: a });
            }
            normalized.push((a.min(b), a.max(b)));
        }
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            if pair[0] == pair[1] {
                return Err(GraphError::DuplicateEdge {
                    u: pair[0].0,
                    v: pair[0].1,
                });
            }
        }

        let mut adjacency = vec![Vec::new(); n];
        for &(u, v) in &normalized {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        if !is_connected(n, &adjacency) {
            return Err(GraphError::Disconnected);
        }
        let degrees = adjacency.iter().map(Vec::len).collect();
        Ok(Graph {
            n,
            edges: normalized,
            degrees,
            adjacency,
        })
    }

    /// Star `S_n`: vertex 0 is the center, vertices `1..n` are leaves.
    pub fn star(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BadParams {
                reason: "star needs n >= 2",
            });
        }
        let edges: Vec<_> = (1..n).map(|leaf| (0, leaf)).collect();
        Self::build(n, &edges)
    }

    /// Path `P_n`: vertices in line order, endpoints are 0 and `n - 1`.
    pub fn path(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BadParams {
                reason: "path needs n >= 2",
            });
        }
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Self::build(n, &edges)
    }

    /// Cycle `C_n`: path order plus the closing edge `(0, n - 1)`.
    pub fn cycle(n: usize) -> Result<Self, GraphError> {
        if n < 3 {
            return Err(GraphError::BadParams {
                reason: "cycle needs n >= 3",
            });
        }
        let mut edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((0, n - 1));
        Self::build(n, &edges)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Result<Self, GraphError> {
        if n < 2 {
            return Err(GraphError::BadParams {
                reason: "complete graph needs n >= 2",
            });
        }
        let mut edges = Vec::with_capacity(n * (n - 1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Self::build(n, &edges)
    }

    /// Complete bipartite `K_{a,b}`: part one is `0..a`, part two is `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Result<Self, GraphError> {
        if a < 1 || b < 1 {
            return Err(GraphError::BadParams {
                reason: "complete bipartite needs both parts nonempty",
            });
        }
        let mut edges = Vec::with_capacity(a * b);
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Self::build(a + b, &edges)
    }

    /// Erdős–Rényi `G(n, p)` conditioned on connectivity by rejection.
    ///
    /// Deterministic for a fixed seed: the sampler draws each of the
    /// `n(n-1)/2` pairs in lexicographic order from one ChaCha8 stream and
    /// keeps rejecting disconnected samples from the same stream. Fails with
    /// [`GraphError::GiveUp`] after [`RANDOM_CONNECTED_RETRY_BUDGET`]
    /// rejections.
    pub fn random_connected(n: usize, p: f64, seed: u64) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::BadParams {
                reason: "vertex count must be at least 1",
            });
        }
        if !(p > 0.0 && p <= 1.0) {
            return Err(GraphError::BadParams {
                reason: "edge probability must satisfy 0 < p <= 1",
            });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut edges = Vec::new();
        for attempt in 0..RANDOM_CONNECTED_RETRY_BUDGET {
            edges.clear();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            match Self::build(n, &edges) {
                Ok(graph) => return Ok(graph),
                Err(GraphError::Disconnected) => {
                    let _ = attempt;
                }
                Err(other) => return Err(other),
            }
        }
        Err(GraphError::GiveUp {
            attempts: RANDOM_CONNECTED_RETRY_BUDGET,
        })
    }

    /// Parses the edge-list text format.
    ///
    /// UTF-8 text; lines starting with `#` and blank lines are ignored; the
    /// first data line is the vertex count; every following data line holds
    /// two whitespace-separated 0-based vertex indices.
    pub fn parse_edge_list(text: &str) -> Result<Self, ParseError> {
        let mut n: Option<usize> = None;
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut seen: Vec<(usize, usize)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut tokens = trimmed.split_whitespace();
            match n {
                None => {
                    let count = parse_usize(tokens.next(), line)?;
                    if tokens.next().is_some() {
                        return Err(ParseError::Syntax {
                            line,
                            reason: "vertex-count line must hold a single integer",
                        });
                    }
                    if count == 0 {
                        return Err(ParseError::Invalid {
                            line,
                            source: GraphError::BadParams {
                                reason: "vertex count must be at least 1",
                            },
                        });
                    }
                    n = Some(count);
                }
                Some(count) => {
                    let u = parse_usize(tokens.next(), line)?;
                    let v = parse_usize(tokens.next(), line)?;
                    if tokens.next().is_some() {
                        return Err(ParseError::Syntax {
                            line,
                            reason: "edge line must hold exactly two integers",
                        });
                    }
                    for &vertex in &[u, v] {
                        if vertex >= count {
                            return Err(ParseError::Invalid {
                                line,
                                source: GraphError::IndexOutOfRange { vertex, n: count },
                            });
                        }
                    }
                    if u == v {
                        return Err(ParseError::Invalid {
                            line,
                            source: GraphError::SelfLoop { vertex: u },
                        });
                    }
                    let pair = (u.min(v), u.max(v));
                    if seen.contains(&pair) {
                        return Err(ParseError::Invalid {
                            line,
                            source: GraphError::DuplicateEdge {
                                u: pair.0,
                                v: pair.1,
                            },
                        });
                    }
                    seen.push(pair);
                    edges.push(pair);
                }
            }
        }
        let n = n.ok_or(ParseError::Syntax {
            line: text.lines().count().max(1),
            reason: "missing vertex-count line",
        })?;
        Graph::build(n, &edges).map_err(ParseError::Graph)
    }

    /// Writes the same format [`Graph::parse_edge_list`] reads, edges sorted
    /// lexicographically.
    pub fn to_edge_list(&self) -> String {
        use core::fmt::Write;
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.n);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges normalized `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    /// Degree of `v`. Panics if `v >= n`.
    pub fn degree(&self, v: usize) -> usize {
        self.degrees[v]
    }

    /// Sorted neighbor list of `v`. Panics if `v >= n`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees.iter().copied().min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Mean degree `2m / n`, computed from the exact integers.
    pub fn mean_degree(&self) -> f64 {
        (2 * self.m()) as f64 / self.n as f64
    }

    /// Number of triangles through `v`: unordered neighbor pairs of `v` that
    /// are themselves adjacent.
    pub fn triangle_count(&self, v: usize) -> Result<usize, GraphError> {
        if v >= self.n {
            return Err(GraphError::IndexOutOfRange {
                vertex: v,
                n: self.n,
            });
        }
        let nbrs = &self.adjacency[v];
        let mut count = 0;
        for (i, &a) in nbrs.iter().enumerate() {
            for &b in &nbrs[i + 1..] {
                if self.has_edge(a, b) {
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    /// FNV-1a digest of `n` and the sorted edge list; stable across runs.
    pub fn fingerprint(&self) -> u64 {
        let mut hash = FNV_OFFSET;
        hash = fnv1a64_step(hash, &(self.n as u64).to_le_bytes());
        for &(u, v) in &self.edges {
            hash = fnv1a64_step(hash, &(u as u64).to_le_bytes());
            hash = fnv1a64_step(hash, &(v as u64).to_le_bytes());
        }
        hash
    }
}

/// Generator families exposed by the CLI micro-grammar.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Star,
    Path,
    Cycle,
    Complete,
    CompleteBipartite,
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::Star => "star",
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::CompleteBipartite => "complete_bipartite",
        }
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "star" => Ok(Family::Star),
            "path" => Ok(Family::Path),
            "cycle" => Ok(Family::Cycle),
            "complete" => Ok(Family::Complete),
            "complete_bipartite" => Ok(Family::CompleteBipartite),
            _ => Err(GraphError::BadParams {
                reason: "unknown family (star, path, cycle, complete, complete_bipartite)",
            }),
        }
    }
}

/// Dispatches to the family constructors; `complete_bipartite` takes two
/// parameters, every other family takes one.
pub fn generator(family: Family, params: &[usize]) -> Result<Graph, GraphError> {
    match (family, params) {
        (Family::Star, &[n]) => Graph::star(n),
        (Family::Path, &[n]) => Graph::path(n),
        (Family::Cycle, &[n]) => Graph::cycle(n),
        (Family::Complete, &[n]) => Graph::complete(n),
        (Family::CompleteBipartite, &[a, b]) => Graph::complete_bipartite(a, b),
        _ => Err(GraphError::BadParams {
            reason: "wrong parameter count for family",
        }),
    }
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

fn fnv1a64_step(mut hash: u64, bytes: &[u8]) -> u64 {
    for &b in bytes {
        hash ^= u64::from(b);
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// FNV-1a over a byte slice; used for content digests in reports.
pub fn fnv1a64(bytes: &[u8]) -> u64 {
    fnv1a64_step(FNV_OFFSET, bytes)
}

fn parse_usize(token: Option<&str>, line: usize) -> Result<usize, ParseError> {
    let token = token.ok_or(ParseError::Syntax {
        line,
        reason: "expected an integer",
    })?;
    token.parse().map_err(|_| ParseError::Syntax {
        line,
        reason: "expected a nonnegative integer",
    })
}

fn is_connected(n: usize, adjacency: &[Vec<usize>]) -> bool {
    let mut visited = vec![false; n];
    let mut queue = VecDeque::new();
    visited[0] = true;
    queue.push_back(0);
    let mut reached = 1;
    while let Some(u) = queue.pop_front() {
        for &v in &adjacency[u] {
            if !visited[v] {
                visited[v] = true;
                reached += 1;
                queue.push_back(v);
            }
        }
    }
    reached == n
}
