//! Closed forms against the other two engines across the full star/path
//! range. The spectral comparison covers every vertex; the slower integral
//! engine is sampled at the distinct vertex orbits (star center/leaf, path
//! end/middle), which by symmetry pin down every remaining vertex.

use graph_energy_core::closed_forms::{
    path_laplacian_energy, star_laplacian_energy, star_normalized_energy, star_totals,
};
use graph_energy_core::coulson::coulson_energy;
use graph_energy_core::spectral::energy_report;
use graph_energy_core::{Graph, MatrixKind};

const SPECTRAL_TOL: f64 = 1e-9;
const COULSON_TOL: f64 = 1e-6;

#[test]
fn star_closed_forms_match_the_spectral_engine_to_order_30() {
    for n in 2..=30 {
        let star = Graph::star(n).unwrap();
        let lap = energy_report(&star, MatrixKind::Laplacian).unwrap();
        let norm = energy_report(&star, MatrixKind::NormalizedLaplacian).unwrap();
        for v in 0..n {
            let k = v + 1;
            assert!(
                (lap.energies[v] - star_laplacian_energy(n, k).unwrap()).abs() <= SPECTRAL_TOL,
                "S_{n} vertex {v} laplacian"
            );
            assert!(
                (norm.energies[v] - star_normalized_energy(n, k).unwrap()).abs() <= SPECTRAL_TOL,
                "S_{n} vertex {v} normalized"
            );
        }
        let (lap_total, norm_total) = star_totals(n).unwrap();
        assert!((lap.total - lap_total).abs() <= SPECTRAL_TOL);
        assert!((norm.total - norm_total).abs() <= SPECTRAL_TOL);
    }
}

#[test]
fn closed_forms_match_the_coulson_engine_to_order_30() {
    for n in 2..=30 {
        let star = Graph::star(n).unwrap();
        let leaf = if n > 1 { 1 } else { 0 };
        for v in [0, leaf] {
            let k = v + 1;
            assert!(
                (coulson_energy(&star, MatrixKind::Laplacian, v).unwrap()
                    - star_laplacian_energy(n, k).unwrap())
                .abs()
                    <= COULSON_TOL,
                "S_{n} vertex {v} laplacian"
            );
            assert!(
                (coulson_energy(&star, MatrixKind::NormalizedLaplacian, v).unwrap()
                    - star_normalized_energy(n, k).unwrap())
                .abs()
                    <= COULSON_TOL,
                "S_{n} vertex {v} normalized"
            );
        }

        let path = Graph::path(n).unwrap();
        for v in [0, n / 2] {
            let k = v + 1;
            assert!(
                (coulson_energy(&path, MatrixKind::Laplacian, v).unwrap()
                    - path_laplacian_energy(n, k).unwrap())
                .abs()
                    <= COULSON_TOL,
                "P_{n} vertex {v}"
            );
        }
    }
}
