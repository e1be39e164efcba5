//! Inequality certificates, equality-case predicates, bound-improvement
//! chains, Randić indices, edge energies, and the conjecture scanner.
//!
//! Every known bound is emitted as an [`InequalityCertificate`] storing both
//! sides, not just a verdict — the slack distribution is the interesting
//! output. Certificates are oriented so the claim is always `lhs ≤ rhs`;
//! `slack = rhs - lhs ≥ 0` means the bound holds. Equality characterizations
//! are evaluated structurally (star center, complete bipartite, `n ≤ 2`,
//! three-valued spectrum), never inferred from numeric slack.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::geometry::{self, GeometryError};
use crate::graph::{Graph, GraphError};
use crate::math;
use crate::matrix::MatrixKind;
use crate::spectral::{self, SpectralError};

/// Default slack tolerance: a certificate fails below `-1e-9`.
pub const CERTIFICATE_TOLERANCE: f64 = 1e-9;

/// Numeric tolerance when checking whether a slack is an equality case.
pub const EQUALITY_TOLERANCE: f64 = 1e-8;

/// Tolerance for the conjecture scanner's verdicts.
pub const SCAN_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AnalysisError {
    /// The requested pair is not an edge.
    NotAnEdge { v: usize, w: usize },
    Spectral(SpectralError),
    Geometry(GeometryError),
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NotAnEdge { v, w } => write!(f, "({v}, {w}) is not an edge"),
            AnalysisError::Spectral(err) => write!(f, "{err}"),
            AnalysisError::Geometry(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for AnalysisError {}

impl From<SpectralError> for AnalysisError {
    fn from(err: SpectralError) -> Self {
        AnalysisError::Spectral(err)
    }
}

impl From<GeometryError> for AnalysisError {
    fn from(err: GeometryError) -> Self {
        AnalysisError::Geometry(err)
    }
}

/// Which bound a certificate instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TheoremId {
    /// Product form `E(v) E(w) ≥ [M - (tr M/n)I]_{vw}²` on edges.
    CsAgmProduct,
    /// Sum form `E(v) + E(w) ≥ 2|[M - (tr M/n)I]_{vw}|` on edges.
    CsAgmSum,
    /// `L-energy(v) ≤ √(d_v + (2m/n - d_v)²)`; equality iff `n ≤ 2`.
    McClellandUpper,
    /// `L-energy(v) ≥ ((2m/n - d_v)² + d_v)/n'`; equality iff the Laplacian
    /// spectrum only takes the values `{0, 2m/n, n}`.
    LaplacianLower,
    /// `ℒ-energy(v) ≤ √(s_v)`; equality iff `v` is a star center.
    NleUpper,
    /// `ℒ-energy(v) ≥ s_v`; equality iff the graph is complete bipartite.
    NleLower,
    /// `1/d_max ≤ ℒ-energy(v)`.
    NleDegreeLower,
    /// `ℒ-energy(v) ≤ 1/√d_min`.
    NleDegreeUpper,
    /// `L-energy(G) ≥ 2 R_{-1/2}(G)`.
    RandicLaplacian,
    /// `ℒ-energy(G) ≥ 2 R_{-1}(G)`.
    RandicNormalized,
    /// `ℒ-energy(v) ≤ d_v/2m + α(1 - d_v/2m)` from the Cheeger constants.
    CheegerEnergy,
    /// `ℒ-energy(G) ≤ 1 + α(n - 1)`.
    CheegerEnergyTotal,
    /// `ℒ-energy(v) ≤ 1 - k(1 - d_v/2m)` from the curvature floor.
    CurvatureEnergy,
    /// `ℒ-energy(G) ≤ n - k(n - 1)`.
    CurvatureEnergyTotal,
    /// `L-energy(G) ≤ Σ_v √(d_v + (d_v - 2m/n)²)`.
    ChainLaplacianVertexSum,
    /// `Σ_v √(d_v + (d_v - 2m/n)²) ≤ √(n Σ_v (d_v + (d_v - 2m/n)²))`.
    ChainLaplacianAggregate,
    /// `ℒ-energy(G) ≤ Σ_v √s_v`.
    ChainNormalizedVertexSum,
    /// `Σ_v √s_v ≤ √(2n R_{-1}(G))`.
    ChainNormalizedAggregate,
    /// `1 - √(1 - h²) ≤ λ_2(ℒ)` (smallest nonzero eigenvalue).
    CheegerSpectralGap,
    /// `λ_n(ℒ) ≤ 1 + √(1 - (1 - h̄)²)`.
    DualCheegerSpectralTop,
    /// `k_min ≤ λ` for the nonzero, non-top spectrum of `ℒ`.
    OllivierSpectralLower,
    /// `λ ≤ 2 - k_min` for the nonzero, non-top spectrum of `ℒ`.
    OllivierSpectralUpper,
}

impl TheoremId {
    pub fn label(&self) -> &'static str {
        match self {
            TheoremId::CsAgmProduct => "cs_agm_product",
            TheoremId::CsAgmSum => "cs_agm_sum",
            TheoremId::McClellandUpper => "mcclelland_upper",
            TheoremId::LaplacianLower => "laplacian_lower",
            TheoremId::NleUpper => "nle_upper",
            TheoremId::NleLower => "nle_lower",
            TheoremId::NleDegreeLower => "nle_degree_lower",
            TheoremId::NleDegreeUpper => "nle_degree_upper",
            TheoremId::RandicLaplacian => "randic_laplacian",
            TheoremId::RandicNormalized => "randic_normalized",
            TheoremId::CheegerEnergy => "cheeger_energy",
            TheoremId::CheegerEnergyTotal => "cheeger_energy_total",
            TheoremId::CurvatureEnergy => "curvature_energy",
            TheoremId::CurvatureEnergyTotal => "curvature_energy_total",
            TheoremId::ChainLaplacianVertexSum => "chain_laplacian_vertex_sum",
            TheoremId::ChainLaplacianAggregate => "chain_laplacian_aggregate",
            TheoremId::ChainNormalizedVertexSum => "chain_normalized_vertex_sum",
            TheoremId::ChainNormalizedAggregate => "chain_normalized_aggregate",
            TheoremId::CheegerSpectralGap => "cheeger_spectral_gap",
            TheoremId::DualCheegerSpectralTop => "dual_cheeger_spectral_top",
            TheoremId::OllivierSpectralLower => "ollivier_spectral_lower",
            TheoremId::OllivierSpectralUpper => "ollivier_spectral_upper",
        }
    }
}

/// What part of the graph a certificate talks about.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Graph,
    Vertex(usize),
    Edge(usize, usize),
}

/// One instantiated bound, oriented so the claim is `lhs ≤ rhs`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCertificate {
    pub theorem: TheoremId,
    pub scope: Scope,
    pub kind: Option<MatrixKind>,
    pub lhs: f64,
    pub rhs: f64,
    /// Structural equality-case test, where the theorem states one.
    pub equality_predicate: Option<bool>,
}

impl InequalityCertificate {
    pub fn slack(&self) -> f64 {
        self.rhs - self.lhs
    }

    pub fn holds(&self, tol: f64) -> bool {
        self.slack() >= -tol
    }

    pub fn is_tight(&self, tol: f64) -> bool {
        math::abs(self.slack()) <= tol
    }
}

/// The two Randić variants used by the energy bounds:
/// `R_{-1/2} = Σ_{(i,j)∈E} (d_i d_j)^{-1/2}` and
/// `R_{-1} = Σ_{(i,j)∈E} (d_i d_j)^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RandicValues {
    pub r_half: f64,
    pub r_one: f64,
}

pub fn randic(g: &Graph) -> RandicValues {
    let mut r_half = 0.0;
    let mut r_one = 0.0;
    for &(u, v) in g.edges() {
        let product = (g.degree(u) * g.degree(v)) as f64;
        r_half += 1.0 / math::sqrt(product);
        r_one += 1.0 / product;
    }
    RandicValues { r_half, r_one }
}

/// True iff every edge is incident to `v`, i.e. the graph is a star with
/// center `v`.
pub fn is_star_center(g: &Graph, v: usize) -> bool {
    g.degree(v) == g.m()
}

/// 2-colors by BFS and checks `m = |part₁| · |part₂|`.
pub fn is_complete_bipartite(g: &Graph) -> bool {
    let n = g.n();
    let mut color = vec![u8::MAX; n];
    let mut queue = alloc::collections::VecDeque::new();
    color[0] = 0;
    queue.push_back(0);
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if color[w] == u8::MAX {
                color[w] = 1 - color[u];
                queue.push_back(w);
            } else if color[w] == color[u] {
                return false;
            }
        }
    }
    let part1 = color.iter().filter(|&&c| c == 0).count();
    g.m() == part1 * (n - part1)
}

/// Both Cauchy-Schwarz/AM-GM certificates per edge for the chosen matrix:
/// `E(v)E(w) ≥ B_{vw}²` and `E(v) + E(w) ≥ 2|B_{vw}|` with `B = M - (tr M/n)I`.
///
/// For the Laplacian the right-hand sides specialize to 1 and 2; for the
/// normalized Laplacian to `(d_v d_w)^{-1}` and `2(d_v d_w)^{-1/2}`.
pub fn check_cs_agm(
    g: &Graph,
    kind: MatrixKind,
) -> Result<Vec<InequalityCertificate>, SpectralError> {
    let report = spectral::energy_report(g, kind)?;
    let matrix = g.matrix(kind);
    let mut certs = Vec::with_capacity(2 * g.m());
    for &(v, w) in g.edges() {
        let coupling = matrix.get(v, w);
        let ev = report.energies[v];
        let ew = report.energies[w];
        certs.push(InequalityCertificate {
            theorem: TheoremId::CsAgmProduct,
            scope: Scope::Edge(v, w),
            kind: Some(kind),
            lhs: coupling * coupling,
            rhs: ev * ew,
            equality_predicate: None,
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::CsAgmSum,
            scope: Scope::Edge(v, w),
            kind: Some(kind),
            lhs: 2.0 * math::abs(coupling),
            rhs: ev + ew,
            equality_predicate: None,
        });
    }
    Ok(certs)
}

/// Per-vertex upper bound `L-energy(v) ≤ √(d_v + (2m/n - d_v)²)`; the
/// equality case is exactly `n ≤ 2`.
pub fn check_mcclelland(g: &Graph) -> Result<Vec<InequalityCertificate>, SpectralError> {
    let report = spectral::energy_report(g, MatrixKind::Laplacian)?;
    let mean = g.mean_degree();
    let equality = g.n() <= 2;
    Ok((0..g.n())
        .map(|v| {
            let d = g.degree(v) as f64;
            let gap = mean - d;
            InequalityCertificate {
                theorem: TheoremId::McClellandUpper,
                scope: Scope::Vertex(v),
                kind: Some(MatrixKind::Laplacian),
                lhs: report.energies[v],
                rhs: math::sqrt(d + gap * gap),
                equality_predicate: Some(equality),
            }
        })
        .collect())
}

/// Per-vertex lower bound `L-energy(v) ≥ ((2m/n - d_v)² + d_v)/n'` with
/// `n' = max{2m/n, n - 2m/n}`; equality iff the Laplacian spectrum only
/// takes values in `{0, 2m/n, n}`.
pub fn check_laplacian_lower(g: &Graph) -> Result<Vec<InequalityCertificate>, SpectralError> {
    let report = spectral::energy_report(g, MatrixKind::Laplacian)?;
    let mean = g.mean_degree();
    let n = g.n() as f64;
    let n_prime = mean.max(n - mean);
    let spectrum = spectral::eig_sym(&g.matrix(MatrixKind::Laplacian))?;
    let allowed = [0.0, mean, n];
    let equality = spectrum.eigenvalues().iter().all(|&lambda| {
        allowed
            .iter()
            .any(|&target| math::abs(lambda - target) <= EQUALITY_TOLERANCE)
    });
    Ok((0..g.n())
        .map(|v| {
            let d = g.degree(v) as f64;
            let gap = mean - d;
            InequalityCertificate {
                theorem: TheoremId::LaplacianLower,
                scope: Scope::Vertex(v),
                kind: Some(MatrixKind::Laplacian),
                lhs: (gap * gap + d) / n_prime,
                rhs: report.energies[v],
                equality_predicate: Some(equality),
            }
        })
        .collect())
}

/// The three normalized-Laplacian degree bounds per vertex: upper
/// `≤ √s_v` (equality at star centers), lower `≥ s_v` (equality on complete
/// bipartite graphs), and the corollary pair
/// `1/d_max ≤ ℒ-energy(v) ≤ 1/√d_min`. Empty for the edgeless singleton.
pub fn check_nle_bounds(g: &Graph) -> Result<Vec<InequalityCertificate>, SpectralError> {
    if g.m() == 0 {
        return Ok(Vec::new());
    }
    let report = spectral::energy_report(g, MatrixKind::NormalizedLaplacian)?;
    let complete_bipartite = is_complete_bipartite(g);
    let inv_dmax = 1.0 / g.max_degree() as f64;
    let inv_sqrt_dmin = 1.0 / math::sqrt(g.min_degree() as f64);
    let mut certs = Vec::with_capacity(4 * g.n());
    for v in 0..g.n() {
        let energy = report.energies[v];
        let s = spectral::inverse_neighbor_sum(g, v);
        certs.push(InequalityCertificate {
            theorem: TheoremId::NleUpper,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: energy,
            rhs: math::sqrt(s),
            equality_predicate: Some(is_star_center(g, v)),
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::NleLower,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: s,
            rhs: energy,
            equality_predicate: Some(complete_bipartite),
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::NleDegreeLower,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: inv_dmax,
            rhs: energy,
            equality_predicate: None,
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::NleDegreeUpper,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: energy,
            rhs: inv_sqrt_dmin,
            equality_predicate: None,
        });
    }
    Ok(certs)
}

/// Graph-level `L-energy(G) ≥ 2R_{-1/2}(G)` and `ℒ-energy(G) ≥ 2R_{-1}(G)`.
pub fn check_randic_theorems(g: &Graph) -> Result<Vec<InequalityCertificate>, SpectralError> {
    let values = randic(g);
    let laplacian_total = spectral::energy_report(g, MatrixKind::Laplacian)?.total;
    let normalized_total = spectral::energy_report(g, MatrixKind::NormalizedLaplacian)?.total;
    Ok(vec![
        InequalityCertificate {
            theorem: TheoremId::RandicLaplacian,
            scope: Scope::Graph,
            kind: Some(MatrixKind::Laplacian),
            lhs: 2.0 * values.r_half,
            rhs: laplacian_total,
            equality_predicate: None,
        },
        InequalityCertificate {
            theorem: TheoremId::RandicNormalized,
            scope: Scope::Graph,
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: 2.0 * values.r_one,
            rhs: normalized_total,
            equality_predicate: None,
        },
    ])
}

/// `α = max{√(1-h²), √(1-(1-h̄)²)}` from the exact Cheeger constants.
fn alpha_from_cheeger(g: &Graph) -> Result<f64, AnalysisError> {
    let h = geometry::rational_to_f64(geometry::cheeger(g)?.value);
    let hbar = geometry::rational_to_f64(geometry::dual_cheeger(g)?.value);
    let from_h = math::sqrt((1.0 - h * h).max(0.0));
    let gap = 1.0 - hbar;
    let from_hbar = math::sqrt((1.0 - gap * gap).max(0.0));
    Ok(from_h.max(from_hbar))
}

/// Geometric upper bounds on normalized energies: per vertex
/// `ℒ-energy(v) ≤ d_v/2m + α(1 - d_v/2m)` and `≤ 1 - k(1 - d_v/2m)`, plus
/// the two graph-level corollaries `ℒ-energy(G) ≤ 1 + α(n-1)` and
/// `≤ n - k(n-1)`. Empty for the singleton graph; errors on graphs past the
/// exhaustive-search caps.
pub fn check_geometric_bounds(g: &Graph) -> Result<Vec<InequalityCertificate>, AnalysisError> {
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    let report = spectral::energy_report(g, MatrixKind::NormalizedLaplacian)?;
    let alpha = alpha_from_cheeger(g)?;
    let curvature = geometry::ollivier_ricci(g);
    let k = geometry::rational_to_f64(curvature.k_min.expect("connected graph with n >= 2"));
    let volume = 2.0 * g.m() as f64;
    let n = g.n() as f64;

    let mut certs = Vec::with_capacity(2 * g.n() + 2);
    for v in 0..g.n() {
        let share = g.degree(v) as f64 / volume;
        certs.push(InequalityCertificate {
            theorem: TheoremId::CheegerEnergy,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: report.energies[v],
            rhs: share + alpha * (1.0 - share),
            equality_predicate: None,
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::CurvatureEnergy,
            scope: Scope::Vertex(v),
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: report.energies[v],
            rhs: 1.0 - k * (1.0 - share),
            equality_predicate: None,
        });
    }
    certs.push(InequalityCertificate {
        theorem: TheoremId::CheegerEnergyTotal,
        scope: Scope::Graph,
        kind: Some(MatrixKind::NormalizedLaplacian),
        lhs: report.total,
        rhs: 1.0 + alpha * (n - 1.0),
        equality_predicate: None,
    });
    certs.push(InequalityCertificate {
        theorem: TheoremId::CurvatureEnergyTotal,
        scope: Scope::Graph,
        kind: Some(MatrixKind::NormalizedLaplacian),
        lhs: report.total,
        rhs: n - k * (n - 1.0),
        equality_predicate: None,
    });
    Ok(certs)
}

/// Eigenvalue sandwiches behind the geometric bounds: the smallest nonzero
/// eigenvalue of `ℒ` against the Cheeger gap, the largest against the dual
/// Cheeger cap, and the nonzero non-top spectrum against
/// `[k_min, 2 - k_min]`. Empty for `n < 2`.
pub fn spectral_sandwich_certificates(
    g: &Graph,
) -> Result<Vec<InequalityCertificate>, AnalysisError> {
    if g.n() < 2 {
        return Ok(Vec::new());
    }
    let decomp = spectral::eig_sym(&g.matrix(MatrixKind::NormalizedLaplacian))?;
    let eigenvalues = decomp.eigenvalues();
    let n = g.n();

    let h = geometry::rational_to_f64(geometry::cheeger(g)?.value);
    let hbar = geometry::rational_to_f64(geometry::dual_cheeger(g)?.value);
    let curvature = geometry::ollivier_ricci(g);
    let k = geometry::rational_to_f64(curvature.k_min.expect("n >= 2"));

    let mut certs = vec![
        InequalityCertificate {
            theorem: TheoremId::CheegerSpectralGap,
            scope: Scope::Graph,
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: 1.0 - math::sqrt((1.0 - h * h).max(0.0)),
            rhs: eigenvalues[1],
            equality_predicate: None,
        },
        InequalityCertificate {
            theorem: TheoremId::DualCheegerSpectralTop,
            scope: Scope::Graph,
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: eigenvalues[n - 1],
            rhs: {
                let gap = 1.0 - hbar;
                1.0 + math::sqrt((1.0 - gap * gap).max(0.0))
            },
            equality_predicate: None,
        },
    ];
    // nonzero, non-top eigenvalues: indices 1..n-1 ascending
    if n > 2 {
        let interior = &eigenvalues[1..n - 1];
        let low = interior.iter().copied().fold(f64::INFINITY, f64::min);
        let high = interior.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        certs.push(InequalityCertificate {
            theorem: TheoremId::OllivierSpectralLower,
            scope: Scope::Graph,
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: k,
            rhs: low,
            equality_predicate: None,
        });
        certs.push(InequalityCertificate {
            theorem: TheoremId::OllivierSpectralUpper,
            scope: Scope::Graph,
            kind: Some(MatrixKind::NormalizedLaplacian),
            lhs: high,
            rhs: 2.0 - k,
            equality_predicate: None,
        });
    }
    Ok(certs)
}

/// One three-term bound chain `total ≤ vertex_bound_sum ≤ aggregated_bound`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ImprovementChain {
    pub total: f64,
    pub vertex_bound_sum: f64,
    pub aggregated_bound: f64,
}

/// The per-vertex bounds summed over the graph sit between the total energy
/// and the classical aggregated bounds, for both energy kinds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundImprovementReport {
    pub laplacian: ImprovementChain,
    pub normalized: ImprovementChain,
}

impl BoundImprovementReport {
    pub fn certificates(&self) -> Vec<InequalityCertificate> {
        let chain = |first: TheoremId, second: TheoremId, c: &ImprovementChain, kind| {
            [
                InequalityCertificate {
                    theorem: first,
                    scope: Scope::Graph,
                    kind: Some(kind),
                    lhs: c.total,
                    rhs: c.vertex_bound_sum,
                    equality_predicate: None,
                },
                InequalityCertificate {
                    theorem: second,
                    scope: Scope::Graph,
                    kind: Some(kind),
                    lhs: c.vertex_bound_sum,
                    rhs: c.aggregated_bound,
                    equality_predicate: None,
                },
            ]
        };
        let mut certs = Vec::with_capacity(4);
        certs.extend(chain(
            TheoremId::ChainLaplacianVertexSum,
            TheoremId::ChainLaplacianAggregate,
            &self.laplacian,
            MatrixKind::Laplacian,
        ));
        certs.extend(chain(
            TheoremId::ChainNormalizedVertexSum,
            TheoremId::ChainNormalizedAggregate,
            &self.normalized,
            MatrixKind::NormalizedLaplacian,
        ));
        certs
    }
}

/// Builds both improvement chains:
/// `L-energy(G) ≤ Σ √(d_v + (d_v - 2m/n)²) ≤ √(n Σ (d_v + (d_v - 2m/n)²))`
/// and `ℒ-energy(G) ≤ Σ √s_v ≤ √(2n R_{-1}(G))`.
pub fn bound_improvement_report(g: &Graph) -> Result<BoundImprovementReport, SpectralError> {
    let n = g.n() as f64;
    let mean = g.mean_degree();

    let laplacian_total = spectral::energy_report(g, MatrixKind::Laplacian)?.total;
    let mut lap_sum = 0.0;
    let mut lap_square_sum = 0.0;
    for v in 0..g.n() {
        let d = g.degree(v) as f64;
        let gap = d - mean;
        let term = d + gap * gap;
        lap_sum += math::sqrt(term);
        lap_square_sum += term;
    }

    let normalized_total = spectral::energy_report(g, MatrixKind::NormalizedLaplacian)?.total;
    let mut norm_sum = 0.0;
    for v in 0..g.n() {
        norm_sum += math::sqrt(spectral::inverse_neighbor_sum(g, v));
    }
    let r_one = randic(g).r_one;

    Ok(BoundImprovementReport {
        laplacian: ImprovementChain {
            total: laplacian_total,
            vertex_bound_sum: lap_sum,
            aggregated_bound: math::sqrt(n * lap_square_sum),
        },
        normalized: ImprovementChain {
            total: normalized_total,
            vertex_bound_sum: norm_sum,
            aggregated_bound: math::sqrt(2.0 * n * r_one),
        },
    })
}

/// Energy of an edge: `E(v)/d_v + E(w)/d_w`. Summed over all edges this
/// telescopes back to the total energy.
pub fn edge_energy(g: &Graph, kind: MatrixKind, v: usize, w: usize) -> Result<f64, AnalysisError> {
    if !g.has_edge(v, w) {
        return Err(AnalysisError::NotAnEdge { v, w });
    }
    let report = spectral::energy_report(g, kind)?;
    Ok(report.energies[v] / g.degree(v) as f64 + report.energies[w] / g.degree(w) as f64)
}

/// Per-vertex data point of the conjecture scan: the conjectured sandwich is
/// `lower ≤ adjacency ≤ upper` with `lower = d_min·ℒ-energy(v)` and
/// `upper = d_max·ℒ-energy(v)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VertexConjectureSample {
    pub adjacency: f64,
    pub normalized: f64,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ScanVerdict {
    Holds,
    /// `margin` is the most negative sandwich slack found.
    Violated { vertex: usize, margin: f64 },
}

/// One scanned graph; `edges` carries the full reproduction edge list only
/// when the verdict is a violation.
#[derive(Debug, Clone, PartialEq)]
pub struct ConjectureScanRecord {
    pub n: usize,
    pub m: usize,
    pub edge_hash: u64,
    pub seed: Option<u64>,
    pub samples: Vec<VertexConjectureSample>,
    pub verdict: ScanVerdict,
    pub edges: Option<Vec<(usize, usize)>>,
}

/// Evaluates the degree-scaled sandwich between adjacency and normalized
/// energies at every vertex of one graph.
///
/// A violation is reported, never asserted: it is a finding, not a failure.
pub fn scan_graph(g: &Graph, seed: Option<u64>) -> Result<ConjectureScanRecord, SpectralError> {
    let adjacency = spectral::energy_report(g, MatrixKind::Adjacency)?;
    let normalized = spectral::energy_report(g, MatrixKind::NormalizedLaplacian)?;
    let d_min = g.min_degree() as f64;
    let d_max = g.max_degree() as f64;

    let samples: Vec<VertexConjectureSample> = (0..g.n())
        .map(|v| VertexConjectureSample {
            adjacency: adjacency.energies[v],
            normalized: normalized.energies[v],
            lower: d_min * normalized.energies[v],
            upper: d_max * normalized.energies[v],
        })
        .collect();

    let mut verdict = ScanVerdict::Holds;
    let mut worst = f64::INFINITY;
    for (v, sample) in samples.iter().enumerate() {
        let slack = (sample.adjacency - sample.lower).min(sample.upper - sample.adjacency);
        if slack < worst {
            worst = slack;
            if slack < -SCAN_TOLERANCE {
                verdict = ScanVerdict::Violated {
                    vertex: v,
                    margin: slack,
                };
            }
        }
    }
    let edges = match verdict {
        ScanVerdict::Violated { .. } => Some(g.edges().to_vec()),
        ScanVerdict::Holds => None,
    };
    Ok(ConjectureScanRecord {
        n: g.n(),
        m: g.m(),
        edge_hash: g.fingerprint(),
        seed,
        samples,
        verdict,
        edges,
    })
}

/// Scans a whole corpus in order.
pub fn conjecture_scan<'a, I>(corpus: I) -> Result<Vec<ConjectureScanRecord>, SpectralError>
where
    I: IntoIterator<Item = (&'a Graph, Option<u64>)>,
{
    corpus
        .into_iter()
        .map(|(g, seed)| scan_graph(g, seed))
        .collect()
}

/// Seed for the default verification corpus.
pub const DEFAULT_CORPUS_SEED: u64 = 7;

/// A labeled corpus graph; `seed` and `p` are set for random entries.
#[derive(Debug, Clone)]
pub struct CorpusEntry {
    pub label: String,
    pub graph: Graph,
    pub seed: Option<u64>,
    pub p: Option<f64>,
}

/// Every generator family at orders `2..=max_n`: stars, paths, cycles,
/// complete graphs, and all complete bipartite splits `a + b = n`, `a ≤ b`.
pub fn family_corpus(max_n: usize) -> Vec<CorpusEntry> {
    let mut corpus = Vec::new();
    let mut push = |label: String, graph: Graph| {
        corpus.push(CorpusEntry {
            label,
            graph,
            seed: None,
            p: None,
        })
    };
    for n in 2..=max_n {
        push(format!("star:{n}"), Graph::star(n).expect("n >= 2"));
        push(format!("path:{n}"), Graph::path(n).expect("n >= 2"));
        if n >= 3 {
            push(format!("cycle:{n}"), Graph::cycle(n).expect("n >= 3"));
        }
        push(format!("complete:{n}"), Graph::complete(n).expect("n >= 2"));
        for a in 1..=n / 2 {
            let b = n - a;
            push(
                format!("complete_bipartite:{a},{b}"),
                Graph::complete_bipartite(a, b).expect("parts >= 1"),
            );
        }
    }
    corpus
}

/// `count` seeded random connected graphs with orders cycling through
/// `n_lo..=n_hi` and probabilities cycling through `ps`; graph `i` uses seed
/// `seed + i`.
pub fn random_corpus(
    count: usize,
    n_lo: usize,
    n_hi: usize,
    ps: &[f64],
    seed: u64,
) -> Result<Vec<CorpusEntry>, GraphError> {
    assert!(n_lo <= n_hi && !ps.is_empty(), "corpus parameters");
    let span = n_hi - n_lo + 1;
    (0..count)
        .map(|i| {
            let n = n_lo + i % span;
            let p = ps[i % ps.len()];
            let graph_seed = seed.wrapping_add(i as u64);
            let graph = Graph::random_connected(n, p, graph_seed)?;
            Ok(CorpusEntry {
                label: format!("random:{i}:n={n},p={p},seed={graph_seed}"),
                graph,
                seed: Some(graph_seed),
                p: Some(p),
            })
        })
        .collect()
}

/// The default verification corpus: all families up to order 12 plus 500
/// random connected graphs with `n ∈ [4, 10]` and `p ∈ {0.3, 0.5, 0.8}`.
pub fn default_corpus(seed: u64) -> Result<Vec<CorpusEntry>, GraphError> {
    let mut corpus = family_corpus(12);
    corpus.extend(random_corpus(500, 4, 10, &[0.3, 0.5, 0.8], seed)?);
    Ok(corpus)
}
