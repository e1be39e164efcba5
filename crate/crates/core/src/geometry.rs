//! Exact graph geometry: Cheeger constant, dual Cheeger constant, and
//! Ollivier-Ricci curvature with a Wasserstein-1 solver.
//!
//! Everything here is integer/rational arithmetic end to end — cut counts,
//! volumes, and transport costs are integers, quotients are reduced
//! rationals — so witnesses re-evaluate to their stored values exactly and
//! the spectral comparison bounds never inherit floating error from this
//! side.
//!
//! The exhaustive searches walk subsets in Gray-code order, updating cut
//! sizes and volumes in O(1) per step through adjacency bitmasks, and fail
//! loudly past their size caps instead of approximating.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_rational::Ratio;
use num_traits::ToPrimitive;

use crate::graph::Graph;

/// Exact rational used for all geometric quantities.
pub type Rational = Ratio<i64>;

/// Size cap for the exhaustive Cheeger search (2^{n-1} subsets).
pub const CHEEGER_MAX_N: usize = 24;

/// Size cap for the exhaustive dual-Cheeger search (3^n assignments).
pub const DUAL_CHEEGER_MAX_N: usize = 15;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeometryError {
    /// Graph exceeds the exhaustive-search cap.
    TooLarge { n: usize, cap: usize },
    /// Wasserstein distance of a vertex to itself was requested.
    IdenticalVertices,
}

impl fmt::Display for GeometryError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            GeometryError::TooLarge { n, cap } => {
                write!(f, "graph order {n} exceeds the exhaustive-search cap {cap}")
            }
            GeometryError::IdenticalVertices => {
                write!(f, "transport distance needs two distinct vertices")
            }
        }
    }
}

impl core::error::Error for GeometryError {}

/// Minimizing cut quotient `|E(U, V∖U)| / min{vol U, vol V∖U}` with a
/// witness subset attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheegerResult {
    pub value: Rational,
    pub witness: Vec<usize>,
}

impl CheegerResult {
    pub fn value_f64(&self) -> f64 {
        rational_to_f64(self.value)
    }
}

/// Maximizing bipartiteness quotient `2|E(V₁,V₂)| / (vol V₁ + vol V₂)` with
/// the witness pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualCheegerResult {
    pub value: Rational,
    pub witness: (Vec<usize>, Vec<usize>),
}

impl DualCheegerResult {
    pub fn value_f64(&self) -> f64 {
        rational_to_f64(self.value)
    }
}

/// Curvature of one edge: `κ = 1 - W₁(m_v, m_w)` for adjacent `v, w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EdgeCurvature {
    pub v: usize,
    pub w: usize,
    pub w1: Rational,
    pub kappa: Rational,
}

/// Per-edge Ollivier-Ricci curvatures; `k_min` is `None` only for the
/// edgeless singleton graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurvatureReport {
    pub edges: Vec<EdgeCurvature>,
    pub k_min: Option<Rational>,
}

pub fn rational_to_f64(r: Rational) -> f64 {
    r.to_f64().expect("i64 rational is representable")
}

/// All-pairs BFS distances; symmetric with zero diagonal.
pub fn shortest_path_dist(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut dist = vec![vec![usize::MAX; n]; n];
    for start in 0..n {
        let row = &mut dist[start];
        row[start] = 0;
        let mut queue = VecDeque::new();
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            for &v in g.neighbors(u) {
                if row[v] == usize::MAX {
                    row[v] = row[u] + 1;
                    queue.push_back(v);
                }
            }
        }
    }
    dist
}

/// Quotient `|E(U, V∖U)| / min{vol U, vol V∖U}` for an explicit subset;
/// `None` when the subset is empty or the whole vertex set.
pub fn cheeger_quotient(g: &Graph, subset: &[usize]) -> Option<Rational> {
    let n = g.n();
    if subset.is_empty() || subset.len() >= n {
        return None;
    }
    let mut inside = vec![false; n];
    for &v in subset {
        inside[v] = true;
    }
    let cut = g
        .edges()
        .iter()
        .filter(|&&(u, v)| inside[u] != inside[v])
        .count() as i64;
    let vol: i64 = subset.iter().map(|&v| g.degree(v) as i64).sum();
    let total = 2 * g.m() as i64;
    Some(Rational::new(cut, vol.min(total - vol)))
}

/// Quotient `2|E(V₁, V₂)| / (vol V₁ + vol V₂)` for explicit disjoint sets;
/// `None` when either set is empty or they intersect.
pub fn dual_cheeger_quotient(g: &Graph, part1: &[usize], part2: &[usize]) -> Option<Rational> {
    if part1.is_empty() || part2.is_empty() {
        return None;
    }
    let mut side = vec![0u8; g.n()];
    for &v in part1 {
        side[v] = 1;
    }
    for &v in part2 {
        if side[v] != 0 {
            return None;
        }
        side[v] = 2;
    }
    let crossing = g
        .edges()
        .iter()
        .filter(|&&(u, v)| side[u] != 0 && side[v] != 0 && side[u] != side[v])
        .count() as i64;
    let vol: i64 = part1
        .iter()
        .chain(part2)
        .map(|&v| g.degree(v) as i64)
        .sum();
    Some(Rational::new(2 * crossing, vol))
}

fn adjacency_masks(g: &Graph) -> Vec<u32> {
    (0..g.n())
        .map(|v| {
            g.neighbors(v)
                .iter()
                .fold(0u32, |mask, &w| mask | (1 << w))
        })
        .collect()
}

fn mask_vertices(mask: u32) -> Vec<usize> {
    (0..32).filter(|&v| mask & (1 << v) != 0).collect()
}

/// Exact Cheeger constant by exhaustive search over the `2^{n-1}` subsets
/// containing vertex 0 (complement symmetry covers the rest).
///
/// Subsets are walked in Gray-code order so cut size and volume update in
/// O(1) per step. Panics on the singleton graph; errors past
/// [`CHEEGER_MAX_N`].
pub fn cheeger(g: &Graph) -> Result<CheegerResult, GeometryError> {
    let n = g.n();
    assert!(n >= 2, "cheeger constant needs at least two vertices");
    if n > CHEEGER_MAX_N {
        return Err(GeometryError::TooLarge {
            n,
            cap: CHEEGER_MAX_N,
        });
    }
    let adj = adjacency_masks(g);
    let total_vol = 2 * g.m() as i64;
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };

    let mut mask: u32 = 1; // {0}
    let mut vol = g.degree(0) as i64;
    let mut cut = g.degree(0) as i64;
    let mut best = Rational::new(cut, vol.min(total_vol - vol));
    let mut best_mask = mask;

    let steps: u32 = 1 << (n - 1);
    for i in 1..steps {
        let v = i.trailing_zeros() as usize + 1;
        let bit = 1u32 << v;
        let degree = g.degree(v) as i64;
        if mask & bit == 0 {
            let inside = (adj[v] & mask).count_ones() as i64;
            mask |= bit;
            vol += degree;
            cut += degree - 2 * inside;
        } else {
            mask &= !bit;
            let inside = (adj[v] & mask).count_ones() as i64;
            vol -= degree;
            cut -= degree - 2 * inside;
        }
        if mask == full {
            continue;
        }
        let value = Rational::new(cut, vol.min(total_vol - vol));
        if value < best {
            best = value;
            best_mask = mask;
        }
    }
    Ok(CheegerResult {
        value: best,
        witness: mask_vertices(best_mask),
    })
}

/// Exact dual Cheeger constant by exhaustive search over ordered pairs of
/// disjoint nonempty vertex sets (the remainder may be empty).
///
/// Nested Gray-code walks keep every step O(1); `3^n` states total. Errors
/// past [`DUAL_CHEEGER_MAX_N`].
pub fn dual_cheeger(g: &Graph) -> Result<DualCheegerResult, GeometryError> {
    let n = g.n();
    assert!(n >= 2, "dual Cheeger constant needs at least two vertices");
    if n > DUAL_CHEEGER_MAX_N {
        return Err(GeometryError::TooLarge {
            n,
            cap: DUAL_CHEEGER_MAX_N,
        });
    }
    let adj = adjacency_masks(g);
    let full: u32 = (1 << n) - 1;

    let mut best = Rational::new(-1, 1);
    let mut best_pair = (0u32, 0u32);

    // outer walk: V₁ over all nonempty subsets
    let mut mask1: u32 = 0;
    let mut vol1: i64 = 0;
    let mut cut1: i64 = 0;
    let mut complement: Vec<usize> = Vec::with_capacity(n);
    for i in 1u32..(1 << n) {
        let v = i.trailing_zeros() as usize;
        let bit = 1u32 << v;
        let degree = g.degree(v) as i64;
        if mask1 & bit == 0 {
            let inside = (adj[v] & mask1).count_ones() as i64;
            mask1 |= bit;
            vol1 += degree;
            cut1 += degree - 2 * inside;
        } else {
            mask1 &= !bit;
            let inside = (adj[v] & mask1).count_ones() as i64;
            vol1 -= degree;
            cut1 -= degree - 2 * inside;
        }
        let free = full & !mask1;
        if free == 0 {
            continue;
        }
        complement.clear();
        complement.extend((0..n).filter(|&u| free & (1 << u) != 0));

        // inner walk: V₂ over nonempty subsets of the complement, tracking
        // cut(V₂) and cut(V₁ ∪ V₂); then 2|E(V₁,V₂)| = cut₁ + cut₂ - cut₁₂
        let mut mask2: u32 = 0;
        let mut mask12: u32 = mask1;
        let mut vol2: i64 = 0;
        let mut cut2: i64 = 0;
        let mut cut12: i64 = cut1;
        let inner_steps: u32 = 1 << complement.len();
        for j in 1..inner_steps {
            let u = complement[j.trailing_zeros() as usize];
            let bit = 1u32 << u;
            let degree = g.degree(u) as i64;
            if mask2 & bit == 0 {
                let inside2 = (adj[u] & mask2).count_ones() as i64;
                mask2 |= bit;
                vol2 += degree;
                cut2 += degree - 2 * inside2;
                let inside12 = (adj[u] & mask12).count_ones() as i64;
                mask12 |= bit;
                cut12 += degree - 2 * inside12;
            } else {
                mask2 &= !bit;
                let inside2 = (adj[u] & mask2).count_ones() as i64;
                vol2 -= degree;
                cut2 -= degree - 2 * inside2;
                mask12 &= !bit;
                let inside12 = (adj[u] & mask12).count_ones() as i64;
                cut12 -= degree - 2 * inside12;
            }
            let value = Rational::new(cut1 + cut2 - cut12, vol1 + vol2);
            if value > best {
                best = value;
                best_pair = (mask1, mask2);
            }
        }
    }
    Ok(DualCheegerResult {
        value: best,
        witness: (mask_vertices(best_pair.0), mask_vertices(best_pair.1)),
    })
}

/// Exact Wasserstein-1 distance between the uniform neighbor measures of
/// `v` and `w` (`m_v(x) = 1/d_v` on neighbors), with BFS distance as cost.
///
/// Masses are scaled by `d_v d_w` to integers and routed by
/// successive-shortest-path min-cost flow, so the result is the exact
/// rational `optimum / (d_v d_w)`.
pub fn wasserstein1(g: &Graph, v: usize, w: usize) -> Result<Rational, GeometryError> {
    if v == w {
        return Err(GeometryError::IdenticalVertices);
    }
    assert!(v < g.n() && w < g.n(), "vertex index out of range");
    let dist = shortest_path_dist(g);
    Ok(wasserstein1_with_dist(g, &dist, v, w))
}

pub(crate) fn wasserstein1_with_dist(
    g: &Graph,
    dist: &[Vec<usize>],
    v: usize,
    w: usize,
) -> Rational {
    let sources = g.neighbors(v);
    let targets = g.neighbors(w);
    let dv = sources.len() as i64;
    let dw = targets.len() as i64;
    let scale = dv * dw;

    let node_count = sources.len() + targets.len() + 2;
    let source = 0;
    let sink = node_count - 1;
    let mut net = FlowNetwork::new(node_count);
    for (i, _) in sources.iter().enumerate() {
        net.add_edge(source, 1 + i, dw, 0);
    }
    for (j, _) in targets.iter().enumerate() {
        net.add_edge(1 + sources.len() + j, sink, dv, 0);
    }
    for (i, &x) in sources.iter().enumerate() {
        for (j, &y) in targets.iter().enumerate() {
            net.add_edge(1 + i, 1 + sources.len() + j, scale, dist[x][y] as i64);
        }
    }
    let (flow, cost) = net.min_cost_flow(source, sink);
    debug_assert_eq!(flow, scale, "transport must be feasible");
    Rational::new(cost, scale)
}

/// Ollivier-Ricci curvature `κ(v,w) = 1 - W₁(m_v, m_w)` for every edge.
pub fn ollivier_ricci(g: &Graph) -> CurvatureReport {
    let dist = shortest_path_dist(g);
    let mut edges = Vec::with_capacity(g.m());
    let mut k_min: Option<Rational> = None;
    for &(v, w) in g.edges() {
        let w1 = wasserstein1_with_dist(g, &dist, v, w);
        let kappa = Rational::new(1, 1) - w1;
        k_min = Some(match k_min {
            Some(current) if current <= kappa => current,
            _ => kappa,
        });
        edges.push(EdgeCurvature { v, w, w1, kappa });
    }
    CurvatureReport { edges, k_min }
}

const FLOW_INF: i64 = i64::MAX / 4;

/// Residual network for successive-shortest-path min-cost flow; edge `e` and
/// its reverse `e ^ 1` are stored adjacently.
struct FlowNetwork {
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNetwork {
    fn new(nodes: usize) -> Self {
        FlowNetwork {
            to: Vec::new(),
            cap: Vec::new(),
            cost: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, u: usize, v: usize, cap: i64, cost: i64) {
        let e = self.to.len();
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[u].push(e);
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        self.adj[v].push(e + 1);
    }

    /// Bellman-Ford (queue form) shortest augmenting paths until the sink is
    /// unreachable; handles the negative reverse-edge costs of the residual
    /// graph without potentials. Returns (max flow, min cost).
    fn min_cost_flow(&mut self, s: usize, t: usize) -> (i64, i64) {
        let n = self.adj.len();
        let mut total_flow = 0;
        let mut total_cost = 0;
        loop {
            let mut dist = vec![FLOW_INF; n];
            let mut parent = vec![usize::MAX; n];
            let mut in_queue = vec![false; n];
            let mut queue = VecDeque::new();
            dist[s] = 0;
            queue.push_back(s);
            in_queue[s] = true;
            while let Some(u) = queue.pop_front() {
                in_queue[u] = false;
                for &e in &self.adj[u] {
                    if self.cap[e] > 0 && dist[u] + self.cost[e] < dist[self.to[e]] {
                        let v = self.to[e];
                        dist[v] = dist[u] + self.cost[e];
                        parent[v] = e;
                        if !in_queue[v] {
                            queue.push_back(v);
                            in_queue[v] = true;
                        }
                    }
                }
            }
            if parent[t] == usize::MAX {
                break;
            }
            let mut push = FLOW_INF;
            let mut u = t;
            while u != s {
                let e = parent[u];
                push = push.min(self.cap[e]);
                u = self.to[e ^ 1];
            }
            let mut u = t;
            while u != s {
                let e = parent[u];
                self.cap[e] -= push;
                self.cap[e ^ 1] += push;
                u = self.to[e ^ 1];
            }
            total_flow += push;
            total_cost += push * dist[t];
        }
        (total_flow, total_cost)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn rat(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn cheeger_small_cases() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert_eq!(cheeger(&k2).unwrap().value, rat(1, 1));

        let c4 = Graph::cycle(4).unwrap();
        assert_eq!(cheeger(&c4).unwrap().value, rat(1, 2));

        let s4 = Graph::star(4).unwrap();
        assert_eq!(cheeger(&s4).unwrap().value, rat(1, 1));
    }

    #[test]
    fn cheeger_matches_naive_enumeration() {
        for seed in 0..6 {
            let g = Graph::random_connected(8, 0.4, 500 + seed).unwrap();
            let fast = cheeger(&g).unwrap();
            // naive oracle: scan every subset containing vertex 0 directly
            let mut naive: Option<Rational> = None;
            for mask in 1u32..(1 << (g.n() - 1)) {
                let subset: Vec<usize> = core::iter::once(0)
                    .chain((1..g.n()).filter(|&v| mask & (1 << (v - 1)) != 0))
                    .collect();
                if let Some(q) = cheeger_quotient(&g, &subset) {
                    naive = Some(match naive {
                        Some(best) if best <= q => best,
                        _ => q,
                    });
                }
            }
            let naive = naive
                .into_iter()
                .chain(cheeger_quotient(&g, &[0]))
                .min()
                .unwrap();
            assert_eq!(fast.value, naive, "seed {seed}");
            assert_eq!(cheeger_quotient(&g, &fast.witness), Some(fast.value));
        }
    }

    #[test]
    fn dual_cheeger_small_cases() {
        for g in [
            Graph::star(4).unwrap(),
            Graph::path(4).unwrap(),
            Graph::cycle(4).unwrap(),
            Graph::build(2, &[(0, 1)]).unwrap(),
        ] {
            let result = dual_cheeger(&g).unwrap();
            assert_eq!(result.value, rat(1, 1), "bipartite graphs reach 1");
        }
        let k3 = Graph::complete(3).unwrap();
        let result = dual_cheeger(&k3).unwrap();
        assert_eq!(result.value, rat(2, 3));
    }

    #[test]
    fn dual_cheeger_witness_re_evaluates() {
        for seed in 0..6 {
            let g = Graph::random_connected(7, 0.5, 700 + seed).unwrap();
            let result = dual_cheeger(&g).unwrap();
            let (part1, part2) = &result.witness;
            assert_eq!(
                dual_cheeger_quotient(&g, part1, part2),
                Some(result.value),
                "seed {seed}"
            );
            assert!(result.value >= rat(0, 1) && result.value <= rat(1, 1));
        }
    }

    #[test]
    fn size_caps_fail_loudly() {
        let big = Graph::cycle(25).unwrap();
        assert!(matches!(
            cheeger(&big),
            Err(GeometryError::TooLarge { cap: 24, .. })
        ));
        let medium = Graph::cycle(16).unwrap();
        assert!(matches!(
            dual_cheeger(&medium),
            Err(GeometryError::TooLarge { cap: 15, .. })
        ));
    }

    #[test]
    fn distances() {
        let p4 = Graph::path(4).unwrap();
        assert_eq!(shortest_path_dist(&p4)[0][3], 3);

        let k5 = Graph::complete(5).unwrap();
        let dist = shortest_path_dist(&k5);
        for (i, row) in dist.iter().enumerate() {
            for (j, &d) in row.iter().enumerate() {
                assert_eq!(d, usize::from(i != j));
            }
        }

        let s4 = Graph::star(4).unwrap();
        assert_eq!(shortest_path_dist(&s4)[1][2], 2);
    }

    #[test]
    fn wasserstein_examples() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert_eq!(wasserstein1(&k2, 0, 1).unwrap(), rat(1, 1));

        // half of the mass overlaps at the third vertex of the triangle
        let k3 = Graph::complete(3).unwrap();
        assert_eq!(wasserstein1(&k3, 0, 1).unwrap(), rat(1, 2));

        // each neighbor half moves one step around the pentagon
        let c5 = Graph::cycle(5).unwrap();
        assert_eq!(wasserstein1(&c5, 0, 1).unwrap(), rat(1, 1));

        assert_eq!(
            wasserstein1(&k3, 1, 1),
            Err(GeometryError::IdenticalVertices)
        );
    }

    #[test]
    fn wasserstein_is_symmetric() {
        for seed in 0..5 {
            let g = Graph::random_connected(7, 0.45, 900 + seed).unwrap();
            for &(v, w) in g.edges() {
                assert_eq!(
                    wasserstein1(&g, v, w).unwrap(),
                    wasserstein1(&g, w, v).unwrap()
                );
            }
        }
    }

    #[test]
    fn curvature_examples() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let report = ollivier_ricci(&k2);
        assert_eq!(report.edges[0].kappa, rat(0, 1));
        assert_eq!(report.k_min, Some(rat(0, 1)));

        let k3 = Graph::complete(3).unwrap();
        for edge in ollivier_ricci(&k3).edges {
            assert_eq!(edge.kappa, rat(1, 2));
        }

        let c6 = Graph::cycle(6).unwrap();
        for edge in ollivier_ricci(&c6).edges {
            assert_eq!(edge.kappa, rat(0, 1));
        }

        let k1 = Graph::build(1, &[]).unwrap();
        assert_eq!(ollivier_ricci(&k1).k_min, None);
    }
}
