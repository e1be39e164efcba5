//! Symmetric eigendecomposition and the spectral route to vertex energies.
//!
//! The energy of vertex `v` for a graph matrix `M` is the diagonal entry
//! `|M - (tr(M)/n) I|_{vv}`, equal to `Σ_j U_{vj}² |λ_j - tr(M)/n|` for the
//! spectral decomposition `M = U Λ Uᵀ`. The eigensolver is a cyclic Jacobi
//! iteration: simple, robust for the dense orders this crate targets
//! (n ≤ ~200), and orthonormal by construction.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::{Graph, GraphError};
use crate::math;
use crate::matrix::{MatrixKind, SymMatrix};

/// Sweep budget for the Jacobi iteration.
pub const MAX_SWEEPS: usize = 100;

/// Convergence threshold: off-diagonal Frobenius norm relative to `‖M‖_F`.
pub const OFF_DIAGONAL_TOLERANCE: f64 = 1e-14;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SpectralError {
    /// The Jacobi iteration did not reach the off-diagonal threshold.
    NoConvergence { sweeps: usize },
}

impl fmt::Display for SpectralError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpectralError::NoConvergence { sweeps } => {
                write!(f, "eigensolver did not converge within {sweeps} sweeps")
            }
        }
    }
}

impl core::error::Error for SpectralError {}

/// Eigenvalues ascending with the matching orthonormal eigenvector matrix;
/// column `j` of `U` pairs with `eigenvalues[j]`.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    order: usize,
    eigenvalues: Vec<f64>,
    vectors: Vec<f64>, // row-major U
}

impl SpectralDecomposition {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    /// Entry `U_{ij}`.
    pub fn u(&self, i: usize, j: usize) -> f64 {
        self.vectors[i * self.order + j]
    }

    /// Spectral weight `U_{ij}²` of eigenvalue `j` at vertex `i`.
    pub fn weight(&self, i: usize, j: usize) -> f64 {
        let x = self.u(i, j);
        x * x
    }

    /// `‖U Uᵀ - I‖_max`.
    pub fn orthonormality_residual(&self) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let mut dot = 0.0;
                for k in 0..n {
                    dot += self.u(i, k) * self.u(j, k);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max(math::abs(dot - target));
            }
        }
        worst
    }

    /// `‖U Λ Uᵀ - M‖_max`.
    pub fn reconstruction_residual(&self, m: &SymMatrix) -> f64 {
        let n = self.order;
        let mut worst = 0.0f64;
        for i in 0..n {
            for j in i..n {
                let mut sum = 0.0;
                for k in 0..n {
                    sum += self.u(i, k) * self.eigenvalues[k] * self.u(j, k);
                }
                worst = worst.max(math::abs(sum - m.get(i, j)));
            }
        }
        worst
    }
}

/// Cyclic Jacobi eigendecomposition of a symmetric matrix.
///
/// Deterministic for identical input. Converges when the off-diagonal
/// Frobenius norm drops below `1e-14 ‖M‖_F`, and fails with
/// [`SpectralError::NoConvergence`] after [`MAX_SWEEPS`] sweeps.
pub fn eig_sym(m: &SymMatrix) -> Result<SpectralDecomposition, SpectralError> {
    let n = m.order();
    let mut a: Vec<f64> = (0..n * n).map(|idx| m.get(idx / n, idx % n)).collect();
    let mut u = vec![0.0; n * n];
    for i in 0..n {
        u[i * n + i] = 1.0;
    }
    let mut d: Vec<f64> = (0..n).map(|i| m.get(i, i)).collect();
    let mut accum = d.clone();
    let mut pending = vec![0.0; n];
    let target = OFF_DIAGONAL_TOLERANCE * m.frobenius_norm();

    for sweep in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                off += 2.0 * a[p * n + q] * a[p * n + q];
            }
        }
        if math::sqrt(off) <= target {
            return Ok(sorted_decomposition(n, d, u));
        }

        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let small = 100.0 * math::abs(apq);
                // late sweeps: elements below representable significance are zeroed
                if sweep >= 4
                    && math::abs(d[p]) + small == math::abs(d[p])
                    && math::abs(d[q]) + small == math::abs(d[q])
                {
                    a[p * n + q] = 0.0;
                    a[q * n + p] = 0.0;
                    continue;
                }
                let gap = d[q] - d[p];
                let t = if math::abs(gap) + small == math::abs(gap) {
                    apq / gap
                } else {
                    let theta = 0.5 * gap / apq;
                    let mut t = 1.0 / (math::abs(theta) + math::sqrt(1.0 + theta * theta));
                    if theta < 0.0 {
                        t = -t;
                    }
                    t
                };
                let c = 1.0 / math::sqrt(1.0 + t * t);
                let s = t * c;
                let tau = s / (1.0 + c);
                let h = t * apq;
                pending[p] -= h;
                pending[q] += h;
                d[p] -= h;
                d[q] += h;
                a[p * n + q] = 0.0;

                // only the upper triangle of the working matrix is read
                let rotate = |a: &mut [f64], i1: usize, i2: usize| {
                    let g = a[i1];
                    let h = a[i2];
                    a[i1] = g - s * (h + g * tau);
                    a[i2] = h + s * (g - h * tau);
                };
                for j in 0..p {
                    rotate(&mut a, j * n + p, j * n + q);
                }
                for j in p + 1..q {
                    rotate(&mut a, p * n + j, j * n + q);
                }
                for j in q + 1..n {
                    rotate(&mut a, p * n + j, q * n + j);
                }
                for j in 0..n {
                    rotate(&mut u, j * n + p, j * n + q);
                }
            }
        }
        for i in 0..n {
            accum[i] += pending[i];
            d[i] = accum[i];
            pending[i] = 0.0;
        }
    }
    Err(SpectralError::NoConvergence { sweeps: MAX_SWEEPS })
}

fn sorted_decomposition(n: usize, d: Vec<f64>, u: Vec<f64>) -> SpectralDecomposition {
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).expect("finite eigenvalues"));
    let eigenvalues: Vec<f64> = order.iter().map(|&j| d[j]).collect();
    let mut vectors = vec![0.0; n * n];
    for i in 0..n {
        for (jnew, &jold) in order.iter().enumerate() {
            vectors[i * n + jnew] = u[i * n + jold];
        }
    }
    SpectralDecomposition {
        order: n,
        eigenvalues,
        vectors,
    }
}

/// Matrix absolute value `|M| = U |Λ| Uᵀ`, positive semidefinite.
pub fn matrix_abs(m: &SymMatrix) -> Result<SymMatrix, SpectralError> {
    let decomp = eig_sym(m)?;
    let n = m.order();
    Ok(SymMatrix::from_fn(n, |i, j| {
        (0..n)
            .map(|k| decomp.u(i, k) * math::abs(decomp.eigenvalues()[k]) * decomp.u(j, k))
            .sum()
    }))
}

/// How a [`VertexEnergyReport`] was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyMethod {
    Spectral,
    Coulson,
    ClosedForm,
}

impl EnergyMethod {
    pub fn label(&self) -> &'static str {
        match self {
            EnergyMethod::Spectral => "spectral",
            EnergyMethod::Coulson => "coulson",
            EnergyMethod::ClosedForm => "closed_form",
        }
    }
}

/// Per-vertex energies for one matrix kind: `total` is their sum.
#[derive(Debug, Clone)]
pub struct VertexEnergyReport {
    pub kind: MatrixKind,
    pub method: EnergyMethod,
    pub energies: Vec<f64>,
    pub total: f64,
}

impl VertexEnergyReport {
    pub fn from_energies(kind: MatrixKind, method: EnergyMethod, energies: Vec<f64>) -> Self {
        let total = energies.iter().sum();
        VertexEnergyReport {
            kind,
            method,
            energies,
            total,
        }
    }
}

/// Spectral distribution of the graph matrix seen from one vertex: atoms
/// `(λ_j, U_{vj}²)`. Weights are nonnegative and sum to 1.
#[derive(Debug, Clone)]
pub struct VertexSpectralDistribution {
    pub atoms: Vec<(f64, f64)>,
}

impl VertexSpectralDistribution {
    pub fn total_weight(&self) -> f64 {
        self.atoms.iter().map(|&(_, w)| w).sum()
    }

    /// Raw moment `Σ w λ^k`.
    pub fn moment(&self, k: u32) -> f64 {
        self.atoms
            .iter()
            .map(|&(lambda, w)| {
                let mut power = 1.0;
                for _ in 0..k {
                    power *= lambda;
                }
                w * power
            })
            .sum()
    }

    /// Total weight of atoms within `tol` of `value`.
    pub fn weight_near(&self, value: f64, tol: f64) -> f64 {
        self.atoms
            .iter()
            .filter(|&&(lambda, _)| math::abs(lambda - value) <= tol)
            .map(|&(_, w)| w)
            .sum()
    }
}

/// Energy of vertex `v` for the chosen matrix kind. Panics if `v >= n`.
pub fn vertex_energy(g: &Graph, kind: MatrixKind, v: usize) -> Result<f64, SpectralError> {
    assert!(v < g.n(), "vertex index out of range");
    let decomp = eig_sym(&g.matrix(kind))?;
    Ok(energy_from_decomposition(&decomp, kind.trace_baseline(g), v))
}

/// Per-vertex energies and their total from a single decomposition.
pub fn energy_report(g: &Graph, kind: MatrixKind) -> Result<VertexEnergyReport, SpectralError> {
    let decomp = eig_sym(&g.matrix(kind))?;
    let baseline = kind.trace_baseline(g);
    let energies = (0..g.n())
        .map(|v| energy_from_decomposition(&decomp, baseline, v))
        .collect();
    Ok(VertexEnergyReport::from_energies(
        kind,
        EnergyMethod::Spectral,
        energies,
    ))
}

/// Spectral distribution at vertex `v`. Panics if `v >= n`.
pub fn vertex_distribution(
    g: &Graph,
    kind: MatrixKind,
    v: usize,
) -> Result<VertexSpectralDistribution, SpectralError> {
    assert!(v < g.n(), "vertex index out of range");
    let decomp = eig_sym(&g.matrix(kind))?;
    let atoms = (0..g.n())
        .map(|j| (decomp.eigenvalues()[j], decomp.weight(v, j)))
        .collect();
    Ok(VertexSpectralDistribution { atoms })
}

fn energy_from_decomposition(decomp: &SpectralDecomposition, baseline: f64, v: usize) -> f64 {
    (0..decomp.order())
        .map(|j| decomp.weight(v, j) * math::abs(decomp.eigenvalues()[j] - baseline))
        .sum()
}

/// Diagonal entry `[M^k]_{vv}` computed combinatorially for `k ∈ {1, 2, 3}`.
///
/// For the Laplacian the diagonal of `(D - A)^3` expands to
/// `d³ + 2d² + Σ_{w∼v} d_w - 2Δ_v` (closed 3-walks contribute `2Δ_v`); the
/// normalized Laplacian expansion is in terms of the neighbor sums
/// `s_v = d_v^{-1} Σ_{w∼v} d_w^{-1}` and the triangle sum over `(d_j d_k)^{-1}`.
pub fn moment(g: &Graph, kind: MatrixKind, v: usize, k: u32) -> Result<f64, GraphError> {
    assert!((1..=3).contains(&k), "moment order must be 1, 2, or 3");
    if v >= g.n() {
        return Err(GraphError::IndexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    let d = g.degree(v) as f64;
    let triangles = g.triangle_count(v)? as f64;
    Ok(match kind {
        MatrixKind::Adjacency => match k {
            1 => 0.0,
            2 => d,
            _ => 2.0 * triangles,
        },
        MatrixKind::Laplacian => match k {
            1 => d,
            2 => d * d + d,
            _ => {
                let neighbor_degree_sum: f64 =
                    g.neighbors(v).iter().map(|&w| g.degree(w) as f64).sum();
                d * d * d + 2.0 * d * d + neighbor_degree_sum - 2.0 * triangles
            }
        },
        MatrixKind::NormalizedLaplacian => {
            let s = inverse_neighbor_sum(g, v);
            match k {
                1 => 1.0,
                2 => 1.0 + s,
                _ => {
                    let mut triangle_sum = 0.0;
                    let nbrs = g.neighbors(v);
                    for (i, &a) in nbrs.iter().enumerate() {
                        for &b in &nbrs[i + 1..] {
                            if g.has_edge(a, b) {
                                triangle_sum += 1.0 / (g.degree(a) * g.degree(b)) as f64;
                            }
                        }
                    }
                    let walk3 = if d > 0.0 { 2.0 * triangle_sum / d } else { 0.0 };
                    1.0 + 3.0 * s - walk3
                }
            }
        }
    })
}

/// `d_v^{-1} Σ_{w∼v} d_w^{-1}`, the second central moment of `ℒ` at `v`;
/// zero for an isolated vertex.
pub fn inverse_neighbor_sum(g: &Graph, v: usize) -> f64 {
    let d = g.degree(v);
    if d == 0 {
        return 0.0;
    }
    let sum: f64 = g
        .neighbors(v)
        .iter()
        .map(|&w| 1.0 / g.degree(w) as f64)
        .sum();
    sum / d as f64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "got {actual}, expected {expected}"
        );
    }

    #[test]
    fn eigenvalues_of_small_laplacians() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let decomp = eig_sym(&k2.matrix(MatrixKind::Laplacian)).unwrap();
        assert_close(decomp.eigenvalues()[0], 0.0, 1e-12);
        assert_close(decomp.eigenvalues()[1], 2.0, 1e-12);

        let s4 = Graph::star(4).unwrap();
        let lap = eig_sym(&s4.matrix(MatrixKind::Laplacian)).unwrap();
        let expected = [0.0, 1.0, 1.0, 4.0];
        for (got, want) in lap.eigenvalues().iter().zip(expected) {
            assert_close(*got, want, 1e-10);
        }
        let norm = eig_sym(&s4.matrix(MatrixKind::NormalizedLaplacian)).unwrap();
        let expected = [0.0, 1.0, 1.0, 2.0];
        for (got, want) in norm.eigenvalues().iter().zip(expected) {
            assert_close(*got, want, 1e-10);
        }
    }

    #[test]
    fn decomposition_invariants_on_random_graphs() {
        for seed in 0..8 {
            let g = Graph::random_connected(7, 0.5, seed).unwrap();
            for kind in MatrixKind::ALL {
                let m = g.matrix(kind);
                let decomp = eig_sym(&m).unwrap();
                assert!(decomp.orthonormality_residual() <= 1e-10);
                assert!(
                    decomp.reconstruction_residual(&m) <= 1e-10 * m.max_abs().max(1.0)
                );
                for pair in decomp.eigenvalues().windows(2) {
                    assert!(pair[0] <= pair[1]);
                }
            }
        }
    }

    #[test]
    fn matrix_abs_examples() {
        // |L(K_2) - I| has eigenvalues ±1, so its absolute value is I
        let m = SymMatrix::from_fn(2, |i, j| if i == j { 0.0 } else { -1.0 });
        let abs = matrix_abs(&m).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert_close(abs.get(i, j), if i == j { 1.0 } else { 0.0 }, 1e-12);
            }
        }

        let id = SymMatrix::identity(3);
        let abs_id = matrix_abs(&id).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert_close(abs_id.get(i, j), id.get(i, j), 1e-12);
            }
        }

        // eigenvalues of A(P_3) are {-√2, 0, √2}
        let p3 = Graph::path(3).unwrap();
        let abs_adj = matrix_abs(&p3.matrix(MatrixKind::Adjacency)).unwrap();
        let inv_sqrt2 = 1.0 / 2f64.sqrt();
        assert_close(abs_adj.get(0, 0), inv_sqrt2, 1e-10);
        assert_close(abs_adj.get(1, 1), 2f64.sqrt(), 1e-10);
        assert_close(abs_adj.get(2, 2), inv_sqrt2, 1e-10);
    }

    #[test]
    fn star_vertex_energies_match_the_closed_values() {
        let s4 = Graph::star(4).unwrap();
        assert_close(
            vertex_energy(&s4, MatrixKind::Laplacian, 0).unwrap(),
            2.25,
            1e-10,
        );
        assert_close(
            vertex_energy(&s4, MatrixKind::Laplacian, 1).unwrap(),
            11.0 / 12.0,
            1e-10,
        );
        assert_close(
            vertex_energy(&s4, MatrixKind::NormalizedLaplacian, 0).unwrap(),
            1.0,
            1e-10,
        );
        assert_close(
            vertex_energy(&s4, MatrixKind::NormalizedLaplacian, 2).unwrap(),
            1.0 / 3.0,
            1e-10,
        );
    }

    #[test]
    fn complete_graph_laplacian_energy_is_two_over_n_scaled() {
        for n in [3usize, 4, 6] {
            let g = Graph::complete(n).unwrap();
            let expected = 2.0 * (n as f64 - 1.0) / n as f64;
            for v in 0..n {
                assert_close(
                    vertex_energy(&g, MatrixKind::Laplacian, v).unwrap(),
                    expected,
                    1e-10,
                );
            }
        }
    }

    #[test]
    fn distribution_examples() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let dist = vertex_distribution(&k2, MatrixKind::Laplacian, 0).unwrap();
        assert_close(dist.weight_near(0.0, 1e-9), 0.5, 1e-12);
        assert_close(dist.weight_near(2.0, 1e-9), 0.5, 1e-12);
        assert_close(dist.total_weight(), 1.0, 1e-12);

        // zero-eigenvalue weight of ℒ at the center of S_4 is d/2m = 1/2
        let s4 = Graph::star(4).unwrap();
        let dist = vertex_distribution(&s4, MatrixKind::NormalizedLaplacian, 0).unwrap();
        assert_close(dist.weight_near(0.0, 1e-8), 0.5, 1e-10);
        assert_close(dist.moment(1), 1.0, 1e-10);
    }

    #[test]
    fn energy_report_totals() {
        let s4 = Graph::star(4).unwrap();
        let lap = energy_report(&s4, MatrixKind::Laplacian).unwrap();
        assert_close(lap.total, 5.0, 1e-10);
        let norm = energy_report(&s4, MatrixKind::NormalizedLaplacian).unwrap();
        assert_close(norm.total, 2.0, 1e-10);

        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let rep = energy_report(&k2, MatrixKind::Laplacian).unwrap();
        assert_close(rep.total, 2.0, 1e-12);
        assert_close(rep.energies[0], 1.0, 1e-12);
        assert_close(rep.energies[1], 1.0, 1e-12);
    }

    #[test]
    fn normalized_energies_stay_in_unit_interval() {
        for seed in 0..6 {
            let g = Graph::random_connected(8, 0.45, seed).unwrap();
            let report = energy_report(&g, MatrixKind::NormalizedLaplacian).unwrap();
            for &e in &report.energies {
                assert!((-1e-12..=1.0 + 1e-12).contains(&e), "energy {e} outside [0,1]");
            }
        }
    }

    #[test]
    fn combinatorial_moments_match_matrix_powers() {
        let s4 = Graph::star(4).unwrap();
        assert_close(moment(&s4, MatrixKind::Laplacian, 0, 1).unwrap(), 3.0, 0.0);
        assert_close(moment(&s4, MatrixKind::Laplacian, 0, 2).unwrap(), 12.0, 0.0);

        // matrix-cube oracle: [L(K_3)³]_vv = 18
        let k3 = Graph::complete(3).unwrap();
        let lap = k3.matrix(MatrixKind::Laplacian);
        let cube = lap.mul_commuting(&lap).mul_commuting(&lap);
        for v in 0..3 {
            assert_close(cube.get(v, v), 18.0, 1e-9);
            assert_close(
                moment(&k3, MatrixKind::Laplacian, v, 3).unwrap(),
                cube.get(v, v),
                1e-9,
            );
        }

        // spectral cross-check on random graphs for all kinds and powers
        for seed in 0..5 {
            let g = Graph::random_connected(7, 0.5, 100 + seed).unwrap();
            for kind in MatrixKind::ALL {
                for v in 0..g.n() {
                    let dist = vertex_distribution(&g, kind, v).unwrap();
                    for k in 1..=3 {
                        assert_close(
                            moment(&g, kind, v, k).unwrap(),
                            dist.moment(k),
                            1e-9,
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn moment_rejects_bad_vertex() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            moment(&k2, MatrixKind::Laplacian, 5, 1),
            Err(GraphError::IndexOutOfRange { .. })
        ));
    }
}
