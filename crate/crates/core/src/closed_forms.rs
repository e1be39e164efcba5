//! Exact energy formulas for star and path graphs.
//!
//! These are the independent ground truth the spectral and integral engines
//! are validated against. Vertex labels here are 1-based to match the usual
//! statement of the formulas (`k = 1` is the star center, path vertices are
//! `1..=n` along the line); the 0-based crate convention applies everywhere
//! else, and [`closed_form_report`] does the translation.

use alloc::vec::Vec;
use core::f64::consts::PI;
use core::fmt;

use crate::graph::{Family, Graph};
use crate::math;
use crate::matrix::MatrixKind;
use crate::spectral::{self, EnergyMethod, SpectralError, VertexEnergyReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClosedFormError {
    /// `n` below the family minimum or `k` outside `1..=n`.
    BadIndex { n: usize, k: usize },
}

impl fmt::Display for ClosedFormError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            ClosedFormError::BadIndex { n, k } => {
                write!(f, "vertex label {k} invalid for family size {n}")
            }
        }
    }
}

impl core::error::Error for ClosedFormError {}

fn check_index(n: usize, k: usize) -> Result<(), ClosedFormError> {
    if n < 2 || k == 0 || k > n {
        Err(ClosedFormError::BadIndex { n, k })
    } else {
        Ok(())
    }
}

/// Laplacian energy of vertex `k` (1-based) of the star `S_n`:
/// `(n-1)(n² - 2n + 4)/n²` at the center, `(n³ - n² - 2n + 4)/(n²(n-1))`
/// at a leaf.
pub fn star_laplacian_energy(n: usize, k: usize) -> Result<f64, ClosedFormError> {
    check_index(n, k)?;
    let nf = n as f64;
    Ok(if k == 1 {
        (nf - 1.0) * (nf * nf - 2.0 * nf + 4.0) / (nf * nf)
    } else {
        (nf * nf * nf - nf * nf - 2.0 * nf + 4.0) / (nf * nf * (nf - 1.0))
    })
}

/// Normalized Laplacian energy of vertex `k` (1-based) of `S_n`:
/// 1 at the center, `1/(n-1)` at a leaf. The center attains both ends of the
/// degree bounds `1/d_max ≤ ℒ-energy ≤ 1/√d_min`.
pub fn star_normalized_energy(n: usize, k: usize) -> Result<f64, ClosedFormError> {
    check_index(n, k)?;
    Ok(if k == 1 { 1.0 } else { 1.0 / (n as f64 - 1.0) })
}

/// Laplacian and normalized Laplacian energy totals of `S_n`:
/// `((n-2)²/n + n, 2)`.
pub fn star_totals(n: usize) -> Result<(f64, f64), ClosedFormError> {
    check_index(n, 1)?;
    let nf = n as f64;
    Ok(((nf - 2.0) * (nf - 2.0) / nf + nf, 2.0))
}

/// Laplacian energy of vertex `k` (1-based) of the path `P_n` as the finite
/// trigonometric sum
/// `2(n-1)/n² + (4/n) Σ_{i=1}^{n-1} cos²(πik/n - πi/2n) |1/n - cos(πi/n)|`,
/// built from the known eigenpairs of the path Laplacian.
pub fn path_laplacian_energy(n: usize, k: usize) -> Result<f64, ClosedFormError> {
    check_index(n, k)?;
    let nf = n as f64;
    let kf = k as f64;
    let mut sum = 0.0;
    for i in 1..n {
        let fi = i as f64;
        let phase = PI * fi * kf / nf - PI * fi / (2.0 * nf);
        let weight = math::cos(phase);
        sum += weight * weight / nf * math::abs(1.0 / nf - math::cos(PI * fi / nf));
    }
    Ok(2.0 * (nf - 1.0) / (nf * nf) + 4.0 * sum)
}

/// One closed-form vs spectral disagreement found by
/// [`validate_path_formula`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FormulaDiscrepancy {
    pub n: usize,
    /// 1-based vertex label.
    pub k: usize,
    pub closed_form: f64,
    pub spectral: f64,
}

impl FormulaDiscrepancy {
    pub fn deviation(&self) -> f64 {
        math::abs(self.closed_form - self.spectral)
    }
}

/// Compares the path formula against the spectral engine for every vertex of
/// every `P_n`, `2 ≤ n ≤ max_n`.
///
/// An empty result means agreement within `tol`; a nonempty one is a
/// formula-erratum finding to be surfaced, never silently patched.
pub fn validate_path_formula(
    max_n: usize,
    tol: f64,
) -> Result<Vec<FormulaDiscrepancy>, SpectralError> {
    let mut findings = Vec::new();
    for n in 2..=max_n {
        let g = Graph::path(n).expect("n >= 2");
        let report = spectral::energy_report(&g, MatrixKind::Laplacian)?;
        for k in 1..=n {
            let closed = path_laplacian_energy(n, k).expect("valid label");
            let reference = report.energies[k - 1];
            if math::abs(closed - reference) > tol {
                findings.push(FormulaDiscrepancy {
                    n,
                    k,
                    closed_form: closed,
                    spectral: reference,
                });
            }
        }
    }
    Ok(findings)
}

/// Per-vertex closed-form energies for the families that have them: star
/// (both kinds) and path (Laplacian). Returns `None` for other combinations.
pub fn closed_form_report(
    family: Family,
    n: usize,
    kind: MatrixKind,
) -> Option<Result<VertexEnergyReport, ClosedFormError>> {
    let energy_of: fn(usize, usize) -> Result<f64, ClosedFormError> = match (family, kind) {
        (Family::Star, MatrixKind::Laplacian) => star_laplacian_energy,
        (Family::Star, MatrixKind::NormalizedLaplacian) => star_normalized_energy,
        (Family::Path, MatrixKind::Laplacian) => path_laplacian_energy,
        _ => return None,
    };
    let build = || -> Result<VertexEnergyReport, ClosedFormError> {
        let energies = (1..=n).map(|k| energy_of(n, k)).collect::<Result<_, _>>()?;
        Ok(VertexEnergyReport::from_energies(
            kind,
            EnergyMethod::ClosedForm,
            energies,
        ))
    };
    Some(build())
}
