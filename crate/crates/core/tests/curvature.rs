use locus_core::algebra::curvature::orbit_length;
use locus_core::algebra::{build_basis, structure_constants, CurvatureReport};
use locus_core::MatrixGroup;

fn groups(su: usize, so: usize, usp: usize) -> Vec<MatrixGroup> {
    let mut g: Vec<MatrixGroup> = (2..=su).map(MatrixGroup::SpecialUnitary).collect();
    g.extend((3..=so).map(MatrixGroup::SpecialOrthogonal));
    g.extend((1..=usp).map(MatrixGroup::UnitarySymplectic));
    g
}

#[test]
fn bases_are_orthonormal() {
    for g in groups(12, 16, 8) {
        let b = build_basis(g).unwrap();
        assert_eq!(b.dim(), g.dim());
        assert!(b.residuals().max() < 1e-12, "{}", g.name());
    }
}

#[test]
fn ricci_is_quarter_killing() {
    for g in groups(8, 12, 6) {
        let rep = CurvatureReport::compute(g).unwrap();
        assert!(rep.ricci_killing_residual < 1e-9, "{}", g.name());
        assert!(rep.killing_route_residual < 1e-9, "{}", g.name());
        assert!(rep.jacobi_residual < 1e-9, "{}", g.name());
        assert!(rep.total_antisymmetry_residual < 1e-10, "{}", g.name());
        let expect = match g {
            MatrixGroup::SpecialUnitary(m) => 2.0 * m as f64,
            MatrixGroup::SpecialOrthogonal(m) => m as f64 - 2.0,
            MatrixGroup::UnitarySymplectic(n) => 2.0 * n as f64 + 2.0,
        };
        assert!((rep.chi - expect).abs() < 1e-9, "{}: {}", g.name(), rep.chi);
        assert!((rep.ricci_lower_bound - expect / 2.0).abs() < 1e-9);
    }
}

#[test]
fn su_table_agrees_only_at_two() {
    for m in 2..=6 {
        let rep = CurvatureReport::compute(MatrixGroup::SpecialUnitary(m)).unwrap();
        assert_eq!(rep.chi_matches_tabulated, m == 2);
    }
}

#[test]
fn structure_constants_are_sparse_and_antisymmetric() {
    let b = build_basis(MatrixGroup::SpecialOrthogonal(7)).unwrap();
    let st = structure_constants(&b).unwrap();
    assert!(st.nonzero_count() < b.dim().pow(3) / 4);
    for (&(i, j, k), &c) in st.entries() {
        assert!((st.get(j, i, k) + c).abs() < 1e-12);
    }
}

#[test]
fn two_plane_rotation_has_length_two_pi() {
    let b = build_basis(MatrixGroup::SpecialOrthogonal(5)).unwrap();
    for x in &b.elements {
        assert!((orbit_length(x, 4000) - std::f64::consts::TAU).abs() < 1e-6);
    }
}
