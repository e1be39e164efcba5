//! Energies of graph vertices for the adjacency, Laplacian, and normalized
//! Laplacian matrices, with the surrounding verification machinery.
//!
//! The energy of a vertex is its diagonal entry in `|M - (tr(M)/n) I|`, the
//! vertex's share of the matching graph energy. The crate computes it by
//! three independent routes and cross-checks them:
//!
//! * [`spectral`] — a cyclic Jacobi eigendecomposition and the weight sum
//!   `Σ_j U_{vj}² |λ_j - tr(M)/n|`;
//! * [`coulson`] — a real-line integral over a ratio of characteristic
//!   polynomials, never touching individual eigenvalues;
//! * [`closed_forms`] — exact formulas for star and path graphs.
//!
//! [`analysis`] turns the known inequalities between energies, degrees, and
//! Randić indices into slack certificates, and [`geometry`] supplies exact
//! (rational) Cheeger constants, dual Cheeger constants, and Ollivier-Ricci
//! curvature for the geometric bounds.
//!
//! The crate is `no_std`-compatible (`alloc` required): disable default
//! features and enable `libm` for builds without the standard library.

#![cfg_attr(not(feature = "std"), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(all(not(feature = "std"), not(feature = "libm")))]
compile_error!("either the `std` or the `libm` feature must be enabled");

pub mod analysis;
pub mod closed_forms;
pub mod coulson;
pub mod geometry;
pub mod graph;
mod math;
pub mod matrix;
pub mod spectral;

pub use graph::{Family, Graph, GraphError, ParseError};
pub use matrix::{MatrixKind, SymMatrix};
pub use spectral::{EnergyMethod, SpectralDecomposition, SpectralError, VertexEnergyReport};
