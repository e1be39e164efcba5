//! Vertex energies from characteristic polynomials alone.
//!
//! For `B = M - (tr(M)/n) I` the diagonal resolvent entry factors as a ratio
//! of two characteristic polynomials,
//! `Ψ_v(z) = det[zI - B̃_vv] / det[zI - B]`, where `B̃_vv` drops row and
//! column `v`. Integrating `1 - ix Ψ_v(ix)` over the real line recovers
//! `π` times the vertex energy without ever producing an eigenvalue, which
//! makes this module an oracle for the spectral route rather than a client
//! of it.
//!
//! The quadrature substitutes `x = tan θ` and pairs `±x` evaluations, so the
//! imaginary parts cancel and the improper integral becomes a smooth one
//! over `[0, π/2]` handled by adaptive Simpson.
//!
//! Up to [`EXACT_CHARPOLY_MAX_N`] vertices the characteristic polynomials
//! are computed exactly: all three graph matrices reduce to integer pencils
//! (`xI - A`, `xI - L`, `xD - A`) whose determinants are integers, evaluated
//! by fraction-free elimination and interpolated in rational arithmetic.
//! Exact coefficients let a zero shifted eigenvalue of any multiplicity be
//! stripped as a common polynomial factor, which the floating recurrence
//! cannot do reliably once rounding noise reaches the trailing coefficients.

use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_PI_2, PI};
use core::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::graph::Graph;
use crate::math;
use crate::matrix::{MatrixKind, SymMatrix};
use crate::spectral::{self, SpectralError};

/// Absolute tolerance for the adaptive Simpson quadrature on `[0, π/2]`.
pub const QUADRATURE_TOLERANCE: f64 = 1e-8;

/// Recursion depth cap for the quadrature.
pub const QUADRATURE_MAX_DEPTH: u32 = 40;

/// Real `z` closer than this to a shifted eigenvalue is rejected as a pole.
pub const NEAR_POLE_DISTANCE: f64 = 1e-8;

/// Largest order for which the characteristic polynomials are produced by
/// the exact integer-pencil route.
pub const EXACT_CHARPOLY_MAX_N: usize = 64;

const IMAGINARY_RESIDUAL_LIMIT: f64 = 1e-6;

/// Beyond this `|x|` the integrand is replaced by its (finite) tail limit,
/// the second moment of `B` at the vertex; protects the polynomial
/// evaluation from overflow at the `θ = π/2` endpoint.
const TAIL_CUTOFF: f64 = 1e8;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CoulsonError {
    IndexOutOfRange { vertex: usize, n: usize },
    /// Requested resolvent point sits on (or hugs) a pole.
    NearPole,
    /// The quadrature produced a non-finite value or a large imaginary part.
    QuadratureNoConvergence,
    /// The eigensolver backing the pole guard failed.
    Spectral(SpectralError),
}

impl fmt::Display for CoulsonError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CoulsonError::IndexOutOfRange { vertex, n } => {
                write!(f, "vertex index {vertex} out of range for n = {n}")
            }
            CoulsonError::NearPole => write!(
                f,
                "evaluation point within {NEAR_POLE_DISTANCE} of a shifted eigenvalue"
            ),
            CoulsonError::QuadratureNoConvergence => {
                write!(f, "energy quadrature did not converge")
            }
            CoulsonError::Spectral(err) => write!(f, "{err}"),
        }
    }
}

impl core::error::Error for CoulsonError {}

impl From<SpectralError> for CoulsonError {
    fn from(err: SpectralError) -> Self {
        CoulsonError::Spectral(err)
    }
}

/// Monic characteristic polynomial `det(xI - M)`, coefficients stored
/// ascending (`coefficients()[k]` multiplies `x^k`).
#[derive(Debug, Clone, PartialEq)]
pub struct CharPoly {
    coeffs: Vec<f64>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficients(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> f64 {
        self.coeffs[k]
    }

    pub fn eval_real(&self, x: f64) -> f64 {
        let mut acc = *self.coeffs.last().expect("monic polynomial");
        for &c in self.coeffs.iter().rev().skip(1) {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        horner(&self.coeffs, z)
    }
}

fn horner(coeffs: &[f64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(*coeffs.last().expect("nonempty"), 0.0);
    for &c in coeffs.iter().rev().skip(1) {
        acc = acc * z + c;
    }
    acc
}

/// Evaluates the coefficient-reversed polynomial: for `P` of formal degree
/// `d`, returns `Q(u) = u^d P(1/u)`.
fn horner_reversed(coeffs: &[f64], u: Complex64) -> Complex64 {
    let mut acc = Complex64::new(coeffs[0], 0.0);
    for &c in &coeffs[1..] {
        acc = acc * u + c;
    }
    acc
}

/// Characteristic polynomial by the Faddeev–LeVerrier recurrence
/// `M_k = M (M_{k-1} + c_{n-k+1} I)`, `c_{n-k} = -tr(M_k)/k`.
///
/// Keeps the polynomial as an explicit, inspectable artifact; for integer
/// matrices of the orders used here the coefficients are exact integers.
pub fn char_poly(m: &SymMatrix) -> CharPoly {
    let n = m.order();
    let mut coeffs = vec![0.0; n + 1];
    coeffs[n] = 1.0;
    if n == 0 {
        return CharPoly { coeffs };
    }
    let mut power = m.clone();
    coeffs[n - 1] = -power.trace();
    for k in 2..=n {
        power = m.mul_commuting(&power.shift_diagonal(coeffs[n - k + 1]));
        coeffs[n - k] = -power.trace() / k as f64;
    }
    CharPoly { coeffs }
}

/// `M - (tr(M)/n) I` for the graph matrix of the requested kind.
pub fn shifted_matrix(g: &Graph, kind: MatrixKind) -> SymMatrix {
    g.matrix(kind).shift_diagonal(-kind.trace_baseline(g))
}

/// Fraction-free (Bareiss) determinant over `i128`; `None` on overflow.
fn det_i128(mut m: Vec<Vec<i128>>) -> Option<i128> {
    let n = m.len();
    if n == 0 {
        return Some(1);
    }
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if m[k][k] == 0 {
            match (k + 1..n).find(|&i| m[i][k] != 0) {
                Some(row) => {
                    m.swap(k, row);
                    sign = -sign;
                }
                None => return Some(0),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let left = m[k][k].checked_mul(m[i][j])?;
                let right = m[i][k].checked_mul(m[k][j])?;
                m[i][j] = left.checked_sub(right)? / prev;
            }
            m[i][k] = 0;
        }
        prev = m[k][k];
    }
    Some(sign * m[n - 1][n - 1])
}

/// Same elimination over `BigInt`, for pencils past the `i128` range.
fn det_bigint(m: &[Vec<i128>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut work: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if work[k][k].is_zero() {
            match (k + 1..n).find(|&i| !work[i][k].is_zero()) {
                Some(row) => {
                    work.swap(k, row);
                    negate = !negate;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let value = (&work[k][k] * &work[i][j] - &work[i][k] * &work[k][j]) / &prev;
                work[i][j] = value;
            }
            work[i][k] = BigInt::zero();
        }
        prev = work[k][k].clone();
    }
    let det = work[n - 1][n - 1].clone();
    if negate {
        -det
    } else {
        det
    }
}

/// Integer pencil at integer `x`: `xI - A`, `xI - L`, or `xD - A`, with one
/// vertex optionally removed (the `xD - A` minor keeps the original degrees).
fn pencil_at(g: &Graph, kind: MatrixKind, drop: Option<usize>, x: i128) -> Vec<Vec<i128>> {
    let keep: Vec<usize> = (0..g.n()).filter(|&v| Some(v) != drop).collect();
    let order = keep.len();
    let mut m = vec![vec![0i128; order]; order];
    // the Laplacian's off-diagonal is -A, so its pencil carries +1 couplings
    let coupling = match kind {
        MatrixKind::Laplacian => 1,
        MatrixKind::Adjacency | MatrixKind::NormalizedLaplacian => -1,
    };
    for (i, &vi) in keep.iter().enumerate() {
        m[i][i] = match kind {
            MatrixKind::Adjacency => x,
            MatrixKind::Laplacian => x - g.degree(vi) as i128,
            MatrixKind::NormalizedLaplacian => x * g.degree(vi) as i128,
        };
        for (j, &vj) in keep.iter().enumerate() {
            if i != j && g.has_edge(vi, vj) {
                m[i][j] = coupling;
            }
        }
    }
    m
}

/// Newton interpolation through the integer samples `(0, f(0)), …,
/// `(deg, f(deg))`, expanded to ascending monomial coefficients.
fn interpolate(values: &[BigInt]) -> Vec<BigRational> {
    let deg = values.len() - 1;
    let mut table: Vec<BigRational> = values
        .iter()
        .map(|v| BigRational::from_integer(v.clone()))
        .collect();
    let mut newton: Vec<BigRational> = vec![table[0].clone()];
    for level in 1..=deg {
        let step = BigRational::from_integer(BigInt::from(level as i64));
        for i in 0..=(deg - level) {
            table[i] = (&table[i + 1] - &table[i]) / &step;
        }
        newton.push(table[0].clone());
    }
    let mut result = vec![BigRational::zero(); deg + 1];
    let mut basis: Vec<BigRational> = vec![BigRational::one()];
    for (k, coeff) in newton.iter().enumerate() {
        for (idx, b) in basis.iter().enumerate() {
            result[idx] = &result[idx] + &(coeff * b);
        }
        if k < deg {
            // basis ← basis · (x - k)
            let node = BigRational::from_integer(BigInt::from(k as i64));
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (idx, b) in basis.iter().enumerate() {
                next[idx + 1] = &next[idx + 1] + b;
                next[idx] = &next[idx] - &(b * &node);
            }
            basis = next;
        }
    }
    result
}

/// Coefficients of `p(y + c)` from those of `p(x)`, both ascending.
fn taylor_shift(poly: &[BigRational], c: &BigRational) -> Vec<BigRational> {
    let deg = poly.len() - 1;
    let mut c_pow = vec![BigRational::one()];
    for _ in 0..deg {
        c_pow.push(c_pow.last().expect("nonempty") * c);
    }
    let mut binom = vec![vec![BigInt::zero(); deg + 1]; deg + 1];
    for k in 0..=deg {
        binom[k][0] = BigInt::one();
        for j in 1..=k {
            binom[k][j] = &binom[k - 1][j - 1] + &binom[k - 1][j];
        }
    }
    (0..=deg)
        .map(|j| {
            let mut acc = BigRational::zero();
            for k in j..=deg {
                let weight = BigRational::from_integer(binom[k][j].clone());
                acc += &(&poly[k] * &weight) * &c_pow[k - j];
            }
            acc
        })
        .collect()
}

/// Exact ascending coefficients of `det(yI - B)`, `B = M - (tr M/n) I`,
/// optionally for the principal minor with `drop` removed. `None` when the
/// order exceeds [`EXACT_CHARPOLY_MAX_N`] or a zero degree blocks the
/// normalized pencil (the singleton graph).
fn exact_shifted_charpoly(
    g: &Graph,
    kind: MatrixKind,
    drop: Option<usize>,
) -> Option<Vec<BigRational>> {
    if g.n() > EXACT_CHARPOLY_MAX_N {
        return None;
    }
    if kind == MatrixKind::NormalizedLaplacian && g.min_degree() == 0 {
        return None;
    }
    let order = g.n() - usize::from(drop.is_some());
    if order == 0 {
        return Some(vec![BigRational::one()]);
    }
    let samples: Vec<BigInt> = (0..=order as i128)
        .map(|x| {
            let matrix = pencil_at(g, kind, drop, x);
            det_i128(matrix.clone())
                .map(BigInt::from)
                .unwrap_or_else(|| det_bigint(&matrix))
        })
        .collect();
    let mut poly = interpolate(&samples);
    match kind {
        MatrixKind::Adjacency => {}
        MatrixKind::Laplacian => {
            let mean = BigRational::new(BigInt::from(2 * g.m() as i64), BigInt::from(g.n() as i64));
            poly = taylor_shift(&poly, &mean);
        }
        MatrixKind::NormalizedLaplacian => {
            // det(xD - A) = det(D)·det(xI - N); spectrum of B is -spectrum(N)
            let det_d: BigInt = (0..g.n())
                .filter(|&v| Some(v) != drop)
                .map(|v| BigInt::from(g.degree(v) as i64))
                .product();
            let det_d = BigRational::from_integer(det_d);
            for (k, coeff) in poly.iter_mut().enumerate() {
                let mut value = &*coeff / &det_d;
                if (order - k) % 2 == 1 {
                    value = -value;
                }
                *coeff = value;
            }
        }
    }
    debug_assert!((poly.last().expect("monic") - BigRational::one()).is_zero());
    Some(poly)
}

fn big_to_f64(x: &BigRational) -> f64 {
    x.to_f64().expect("rational fits an f64")
}

/// Minor and full shifted-characteristic coefficient arrays as `f64`,
/// exact when the order permits, from the floating recurrence otherwise.
fn shifted_coefficient_pair(
    g: &Graph,
    kind: MatrixKind,
    v: usize,
    shifted: &SymMatrix,
) -> (Vec<f64>, Vec<f64>) {
    let exact_minor = if g.n() == 1 {
        Some(vec![BigRational::one()])
    } else {
        exact_shifted_charpoly(g, kind, Some(v))
    };
    if let (Some(full), Some(minor)) = (exact_shifted_charpoly(g, kind, None), exact_minor) {
        (
            minor.iter().map(big_to_f64).collect(),
            full.iter().map(big_to_f64).collect(),
        )
    } else {
        (
            minor_poly(shifted, v).coeffs,
            char_poly(shifted).coeffs,
        )
    }
}

enum ExactReduction {
    /// Every shifted eigenvalue vanishes: the energy is exactly zero.
    AllZero,
    /// Reduced `D/F` arrays with the common `y^r` factor stripped.
    System { diff: Vec<f64>, full: Vec<f64> },
}

/// Builds the reduced integrand arrays from the exact polynomials: the
/// multiplicity `r` of the zero shifted eigenvalue is read off the exact
/// trailing zeros of `det(yI - B)` and cancelled against the numerator
/// (interlacing guarantees the minor carries `r - 1` of them).
fn exact_reduced(g: &Graph, kind: MatrixKind, v: usize) -> Option<ExactReduction> {
    let full = exact_shifted_charpoly(g, kind, None)?;
    let minor = if g.n() == 1 {
        vec![BigRational::one()]
    } else {
        exact_shifted_charpoly(g, kind, Some(v))?
    };
    let r = full.iter().take_while(|c| c.is_zero()).count();
    if full.len() - r == 1 {
        return Some(ExactReduction::AllZero);
    }
    debug_assert!(minor.iter().take_while(|c| c.is_zero()).count() + 1 >= r);
    let f_red = &full[r..];
    let p_red: Vec<BigRational> = if r == 0 {
        core::iter::once(BigRational::zero())
            .chain(minor.iter().cloned())
            .collect()
    } else {
        minor[r - 1..].to_vec()
    };
    debug_assert_eq!(f_red.len(), p_red.len());
    let diff: Vec<f64> = (0..f_red.len() - 1)
        .map(|k| big_to_f64(&(&f_red[k] - &p_red[k])))
        .collect();
    let full_f64: Vec<f64> = f_red.iter().map(big_to_f64).collect();
    Some(ExactReduction::System {
        diff,
        full: full_f64,
    })
}

/// Diagonal resolvent entry `Ψ_v(z) = Σ_j U_{vj}²/(z - (λ_j - tr(M)/n))`,
/// computed through the determinant ratio of characteristic polynomials.
///
/// The shifted spectrum is consulted only to reject near-pole inputs.
pub fn resolvent_diag(
    g: &Graph,
    kind: MatrixKind,
    v: usize,
    z: Complex64,
) -> Result<Complex64, CoulsonError> {
    let n = g.n();
    if v >= n {
        return Err(CoulsonError::IndexOutOfRange { vertex: v, n });
    }
    let shifted = shifted_matrix(g, kind);
    let decomp = spectral::eig_sym(&shifted)?;
    let near_pole = decomp.eigenvalues().iter().any(|&t| {
        let dre = z.re - t;
        dre * dre + z.im * z.im < NEAR_POLE_DISTANCE * NEAR_POLE_DISTANCE
    });
    if near_pole {
        return Err(CoulsonError::NearPole);
    }
    let (minor, full) = shifted_coefficient_pair(g, kind, v, &shifted);
    Ok(horner(&minor, z) / horner(&full, z))
}

fn minor_poly(shifted: &SymMatrix, v: usize) -> CharPoly {
    if shifted.order() == 1 {
        // empty principal minor: det over the 0×0 matrix is 1
        CharPoly { coeffs: vec![1.0] }
    } else {
        char_poly(&shifted.principal_minor(v))
    }
}

/// Vertex energy as `(1/π) ∫_ℝ (1 - ix Ψ_v(ix)) dx`, evaluated through the
/// characteristic polynomials only.
///
/// Agrees with [`spectral::vertex_energy`] within `1e-6`; the accumulated
/// imaginary part of the quadrature must stay below that same bound
/// (the integrand's imaginary part is odd in `x` and cancels in pairs).
pub fn coulson_energy(g: &Graph, kind: MatrixKind, v: usize) -> Result<f64, CoulsonError> {
    let n = g.n();
    if v >= n {
        return Err(CoulsonError::IndexOutOfRange { vertex: v, n });
    }
    let shifted = shifted_matrix(g, kind);

    // 1 - ix Ψ(ix) = D(ix)/det[ixI - B] with D(y) = det[yI - B] - y·det[yI - B̃];
    // the monic leading terms cancel, so deg D = deg F - 1.
    let (diff, full) = match exact_reduced(g, kind, v) {
        Some(ExactReduction::AllZero) => return Ok(0.0),
        Some(ExactReduction::System { diff, full }) => (diff, full),
        None => {
            let full = char_poly(&shifted);
            let minor = minor_poly(&shifted, v);
            let mut diff = vec![full.coeff(0)];
            diff.extend((1..n).map(|k| full.coeff(k) - minor.coeff(k - 1)));
            (diff, full.coeffs)
        }
    };
    // limit of the paired θ-integrand at x = 0 is 2(1 - w₀); the reduced
    // arrays give it directly, and the floating route degrades to 2
    let limit_at_zero = {
        let candidate = diff[0] / full[0];
        if candidate.is_finite() && math::abs(candidate) <= 2.0 {
            candidate
        } else {
            1.0
        }
    };
    // tail limit of the θ-integrand: the second moment [B²]_vv
    let second_moment: f64 = shifted.row(v).iter().map(|&x| x * x).sum();

    let integrand = |theta: f64| -> Complex64 {
        let x = math::tan(theta);
        if x == 0.0 {
            return Complex64::new(2.0 * limit_at_zero, 0.0);
        }
        if math::abs(x) >= TAIL_CUTOFF {
            return Complex64::new(2.0 * second_moment, 0.0);
        }
        let plus = det_ratio(&diff, &full, x);
        let minus = det_ratio(&diff, &full, -x);
        (plus + minus) * (1.0 + x * x)
    };

    let integral = adaptive_simpson(
        &integrand,
        0.0,
        FRAC_PI_2,
        QUADRATURE_TOLERANCE,
        QUADRATURE_MAX_DEPTH,
    );
    let energy = integral.re / PI;
    let residual = math::abs(integral.im) / PI;
    if !energy.is_finite() || residual > IMAGINARY_RESIDUAL_LIMIT {
        return Err(CoulsonError::QuadratureNoConvergence);
    }
    Ok(energy)
}

/// `D(ix) / F(ix)` where `deg D = deg F - 1`; switches to the
/// coefficient-reversed form for `|x| > 1` so large arguments cannot
/// overflow the Horner accumulation.
fn det_ratio(diff: &[f64], full: &[f64], x: f64) -> Complex64 {
    if math::abs(x) <= 1.0 {
        let w = Complex64::new(0.0, x);
        horner(diff, w) / horner(full, w)
    } else {
        let u = Complex64::new(0.0, -1.0 / x); // 1/(ix)
        horner_reversed(diff, u) * u / horner_reversed(full, u)
    }
}

fn simpson_rule(a: f64, b: f64, fa: Complex64, fm: Complex64, fb: Complex64) -> Complex64 {
    (fa + fm * 4.0 + fb) * ((b - a) / 6.0)
}

fn adaptive_simpson<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let mid = 0.5 * (a + b);
    let fa = f(a);
    let fm = f(mid);
    let fb = f(b);
    let whole = simpson_rule(a, b, fa, fm, fb);
    refine(f, a, b, fa, fm, fb, whole, tol, depth)
}

#[allow(clippy::too_many_arguments)]
fn refine<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    fa: Complex64,
    fm: Complex64,
    fb: Complex64,
    whole: Complex64,
    tol: f64,
    depth: u32,
) -> Complex64 {
    let mid = 0.5 * (a + b);
    let lm = 0.5 * (a + mid);
    let rm = 0.5 * (mid + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = simpson_rule(a, mid, fa, flm, fm);
    let right = simpson_rule(mid, b, fm, frm, fb);
    let total = left + right;
    let delta = total - whole;
    if depth == 0 || math::abs(delta.re).max(math::abs(delta.im)) <= 15.0 * tol {
        total + delta / 15.0
    } else {
        refine(f, a, mid, fa, flm, fm, left, 0.5 * tol, depth - 1)
            + refine(f, mid, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::spectral::vertex_energy;

    fn assert_close(actual: f64, expected: f64, tol: f64) {
        assert!(
            (actual - expected).abs() <= tol,
            "got {actual}, expected {expected}"
        );
    }

    #[test]
    fn char_poly_examples() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let p = char_poly(&k2.matrix(MatrixKind::Laplacian));
        assert_eq!(p.coefficients(), &[0.0, -2.0, 1.0]);

        let p3 = Graph::path(3).unwrap();
        let p = char_poly(&p3.matrix(MatrixKind::Adjacency));
        // x³ - 2x, from the eigenvalues {-√2, 0, √2}
        for (got, want) in p.coefficients().iter().zip([0.0, -2.0, 0.0, 1.0]) {
            assert_close(*got, want, 1e-12);
        }

        let s4 = Graph::star(4).unwrap();
        let p = char_poly(&s4.matrix(MatrixKind::Laplacian));
        // x(x-1)²(x-4) expanded
        for (got, want) in p.coefficients().iter().zip([0.0, -4.0, 9.0, -6.0, 1.0]) {
            assert_close(*got, want, 1e-9);
        }
    }

    #[test]
    fn char_poly_invariants() {
        let g = Graph::random_connected(7, 0.5, 21).unwrap();
        for kind in MatrixKind::ALL {
            let m = g.matrix(kind);
            let p = char_poly(&m);
            // x^{n-1} coefficient is -tr(M); constant term is ±det, zero for L
            assert_close(p.coeff(g.n() - 1), -m.trace(), 1e-9 * m.max_abs().max(1.0));
            if kind == MatrixKind::Laplacian {
                assert_close(p.coeff(0), 0.0, 1e-6);
            }
            // eigenvalues are roots
            let scale: f64 = p.coefficients().iter().map(|c| c.abs()).sum();
            let decomp = spectral::eig_sym(&m).unwrap();
            for &lambda in decomp.eigenvalues() {
                assert!(p.eval_real(lambda).abs() <= 1e-6 * scale);
            }
        }
    }

    #[test]
    fn resolvent_matches_the_eigen_sum() {
        // K_2 Laplacian at z = 3: shifted eigenvalues {-1, 1}, weights 1/2
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        let got = resolvent_diag(&k2, MatrixKind::Laplacian, 0, Complex64::new(3.0, 0.0)).unwrap();
        assert_close(got.re, 0.5 / 4.0 + 0.5 / 2.0, 1e-12);
        assert_close(got.im, 0.0, 1e-12);

        // determinant form vs eigen-sum form at assorted complex points
        for seed in 0..4 {
            let g = Graph::random_connected(6, 0.5, 300 + seed).unwrap();
            for kind in MatrixKind::ALL {
                let shifted = shifted_matrix(&g, kind);
                let decomp = spectral::eig_sym(&shifted).unwrap();
                let points = [
                    Complex64::new(0.37, 1.1),
                    Complex64::new(-2.4, 0.31),
                    Complex64::new(5.0, -3.0),
                    Complex64::new(0.0, 5.0),
                ];
                for v in 0..g.n() {
                    for z in points {
                        let det_form = resolvent_diag(&g, kind, v, z).unwrap();
                        let mut eigen_sum = Complex64::new(0.0, 0.0);
                        for j in 0..g.n() {
                            eigen_sum += Complex64::new(decomp.weight(v, j), 0.0)
                                / (z - decomp.eigenvalues()[j]);
                        }
                        let scale = eigen_sum.norm_sqr().sqrt().max(1e-12);
                        let err = (det_form - eigen_sum).norm_sqr().sqrt();
                        assert!(err <= 1e-8 * scale, "kind {kind:?} v {v} z {z}");
                    }
                }
            }
        }
    }

    #[test]
    fn resolvent_leading_asymptotics() {
        let s4 = Graph::star(4).unwrap();
        let z = Complex64::new(1e7, 3.0);
        for kind in MatrixKind::ALL {
            let psi = resolvent_diag(&s4, kind, 1, z).unwrap();
            let scaled = z * psi;
            assert_close(scaled.re, 1.0, 1e-5);
            assert_close(scaled.im, 0.0, 1e-5);
        }
    }

    #[test]
    fn resolvent_rejects_near_poles() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        // 1 is a shifted eigenvalue of L(K_2)
        let at_pole = resolvent_diag(&k2, MatrixKind::Laplacian, 0, Complex64::new(1.0, 0.0));
        assert_eq!(at_pole, Err(CoulsonError::NearPole));
        let hugging = resolvent_diag(
            &k2,
            MatrixKind::Laplacian,
            0,
            Complex64::new(1.0 + 1e-10, 0.0),
        );
        assert_eq!(hugging, Err(CoulsonError::NearPole));
    }

    #[test]
    fn coulson_energy_examples() {
        let s4 = Graph::star(4).unwrap();
        assert_close(
            coulson_energy(&s4, MatrixKind::Laplacian, 0).unwrap(),
            2.25,
            1e-6,
        );
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert_close(coulson_energy(&k2, MatrixKind::Laplacian, 0).unwrap(), 1.0, 1e-6);
        assert_close(coulson_energy(&k2, MatrixKind::Laplacian, 1).unwrap(), 1.0, 1e-6);

        let p4 = Graph::path(4).unwrap();
        assert_close(
            coulson_energy(&p4, MatrixKind::Laplacian, 0).unwrap(),
            vertex_energy(&p4, MatrixKind::Laplacian, 0).unwrap(),
            1e-6,
        );
    }

    #[test]
    fn coulson_handles_zero_shifted_eigenvalues() {
        // A(S_4) is singular: the integrand's removable point at x = 0
        let s4 = Graph::star(4).unwrap();
        assert_close(
            coulson_energy(&s4, MatrixKind::Adjacency, 0).unwrap(),
            3f64.sqrt(),
            1e-6,
        );
        // shifted L(C_4) has a double zero eigenvalue
        let c4 = Graph::cycle(4).unwrap();
        for v in 0..4 {
            assert_close(
                coulson_energy(&c4, MatrixKind::Laplacian, v).unwrap(),
                1.0,
                1e-6,
            );
        }
        // ℒ(K_{2,3}) has eigenvalue 1 with multiplicity n - 2
        let k23 = Graph::complete_bipartite(2, 3).unwrap();
        for v in 0..5 {
            assert_close(
                coulson_energy(&k23, MatrixKind::NormalizedLaplacian, v).unwrap(),
                vertex_energy(&k23, MatrixKind::NormalizedLaplacian, v).unwrap(),
                1e-6,
            );
        }
    }

    #[test]
    fn coulson_on_singleton_graph() {
        let k1 = Graph::build(1, &[]).unwrap();
        for kind in MatrixKind::ALL {
            assert_close(coulson_energy(&k1, kind, 0).unwrap(), 0.0, 1e-6);
        }
    }

    #[test]
    fn bad_vertex_is_reported() {
        let k2 = Graph::build(2, &[(0, 1)]).unwrap();
        assert!(matches!(
            coulson_energy(&k2, MatrixKind::Laplacian, 2),
            Err(CoulsonError::IndexOutOfRange { .. })
        ));
    }
}

