//! Dense symmetric matrices and the three graph matrices: adjacency `A`,
//! Laplacian `L = D - A`, and normalized Laplacian `ℒ = I - D^{-1/2}AD^{-1/2}`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::graph::Graph;
use crate::math;

/// Which graph matrix an energy refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MatrixKind {
    Adjacency,
    Laplacian,
    NormalizedLaplacian,
}

impl MatrixKind {
    /// `tr(M)/n`, from exact integers: 0 for `A`, `2m/n` for `L`, 1 for `ℒ`.
    pub fn trace_baseline(&self, g: &Graph) -> f64 {
        match self {
            MatrixKind::Adjacency => 0.0,
            MatrixKind::Laplacian => g.mean_degree(),
            MatrixKind::NormalizedLaplacian => 1.0,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            MatrixKind::Adjacency => "adjacency",
            MatrixKind::Laplacian => "laplacian",
            MatrixKind::NormalizedLaplacian => "normalized_laplacian",
        }
    }

    pub const ALL: [MatrixKind; 3] = [
        MatrixKind::Adjacency,
        MatrixKind::Laplacian,
        MatrixKind::NormalizedLaplacian,
    ];
}

impl fmt::Display for MatrixKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Dense row-major symmetric matrix. Mirrored entries are bitwise equal:
/// every mutation writes both triangles.
#[derive(Debug, Clone, PartialEq)]
pub struct SymMatrix {
    order: usize,
    entries: Vec<f64>,
}

impl SymMatrix {
    pub fn zeros(order: usize) -> Self {
        SymMatrix {
            order,
            entries: vec![0.0; order * order],
        }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            m.entries[i * order + i] = 1.0;
        }
        m
    }

    /// Builds from a generator called once per unordered pair `(i, j)`,
    /// `i <= j`; the value is written to both mirrored slots.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(order);
        for i in 0..order {
            for j in i..order {
                let value = f(i, j);
                m.set(i, j, value);
            }
        }
        m
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.order + j]
    }

    /// Writes `value` at `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        self.entries[i * self.order + j] = value;
        self.entries[j * self.order + i] = value;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.entries[i * self.order..(i + 1) * self.order]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.entries.iter().fold(0.0, |acc, &x| acc.max(math::abs(x)))
    }

    pub fn frobenius_norm(&self) -> f64 {
        math::sqrt(self.entries.iter().map(|&x| x * x).sum())
    }

    /// Adds `value` to every diagonal entry.
    pub fn shift_diagonal(&self, value: f64) -> SymMatrix {
        let mut out = self.clone();
        for i in 0..self.order {
            let shifted = out.get(i, i) + value;
            out.set(i, i, shifted);
        }
        out
    }

    /// Product with another symmetric matrix that commutes with `self`
    /// (e.g. a polynomial in the same matrix), so the result is symmetric;
    /// the upper triangle is computed and mirrored.
    pub fn mul_commuting(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.order, other.order, "order mismatch");
        let n = self.order;
        let mut out = SymMatrix::zeros(n);
        for i in 0..n {
            for j in i..n {
                let mut sum = 0.0;
                for k in 0..n {
                    sum += self.get(i, k) * other.get(k, j);
                }
                out.set(i, j, sum);
            }
        }
        out
    }

    /// Principal submatrix with row and column `i` removed.
    /// Panics if `order < 2` or `i >= order`.
    pub fn principal_minor(&self, i: usize) -> SymMatrix {
        assert!(self.order >= 2, "principal minor needs order >= 2");
        assert!(i < self.order, "row index out of range");
        let n = self.order - 1;
        let mut out = SymMatrix::zeros(n);
        let mut ri = 0;
        for r in 0..self.order {
            if r == i {
                continue;
            }
            let mut ci = 0;
            for c in 0..self.order {
                if c == i {
                    continue;
                }
                out.entries[ri * n + ci] = self.get(r, c);
                ci += 1;
            }
            ri += 1;
        }
        out
    }
}

impl Graph {
    /// The matrix of the requested kind, with exact entries: `A_{ij} ∈ {0,1}`,
    /// `L` has the degrees on the diagonal, and `ℒ` has unit diagonal with
    /// `-(d_i d_j)^{-1/2}` on edges.
    pub fn matrix(&self, kind: MatrixKind) -> SymMatrix {
        let n = self.n();
        let mut m = SymMatrix::zeros(n);
        match kind {
            MatrixKind::Adjacency => {
                for &(u, v) in self.edges() {
                    m.set(u, v, 1.0);
                }
            }
            MatrixKind::Laplacian => {
                for i in 0..n {
                    m.set(i, i, self.degree(i) as f64);
                }
                for &(u, v) in self.edges() {
                    m.set(u, v, -1.0);
                }
            }
            MatrixKind::NormalizedLaplacian => {
                for i in 0..n {
                    m.set(i, i, 1.0);
                }
                for &(u, v) in self.edges() {
                    let coupling = -1.0 / math::sqrt((self.degree(u) * self.degree(v)) as f64);
                    m.set(u, v, coupling);
                }
            }
        }
        m
    }
}
