use locus_core::haar::experiment::{
    collect_band_samples, su2_character_cdf, translation_invariance, Side,
};
use locus_core::haar::sampler::{sample_map, symplectic_residual};
use locus_core::haar::stats::{ks_test, majority, sorted};
use locus_core::haar::{concentration_experiment, sample, SamplerConfig};
use locus_core::linalg::unitarity_residual;
use locus_core::MatrixGroup;

fn invariance_majority(group: MatrixGroup, side: Side, count: usize) -> bool {
    let passes: Vec<bool> = (0..3)
        .map(|k| {
            translation_invariance(group, count, 40 + 7 * k, side, 1)
                .unwrap()
                .pvalue
                > 0.01
        })
        .collect();
    majority(&passes)
}

#[test]
fn left_invariance_su8() {
    assert!(invariance_majority(
        MatrixGroup::SpecialUnitary(8),
        Side::Left,
        100_000
    ));
}

#[test]
fn translation_invariance_all_samplers() {
    for group in [
        MatrixGroup::SpecialUnitary(3),
        MatrixGroup::SpecialUnitary(16),
        MatrixGroup::SpecialOrthogonal(4),
        MatrixGroup::SpecialOrthogonal(16),
        MatrixGroup::UnitarySymplectic(2),
        MatrixGroup::UnitarySymplectic(8),
    ] {
        for side in [Side::Left, Side::Right] {
            assert!(
                invariance_majority(group, side, 5000),
                "{} {side:?}",
                group.name()
            );
        }
    }
}

#[test]
fn su2_character_distribution() {
    let cfg = SamplerConfig::new(MatrixGroup::SpecialUnitary(2), 50_000, 8);
    let v = sorted(sample_map(&cfg, |g| g.trace().re / 2.0).unwrap());
    assert!(ks_test(&v, su2_character_cdf).unwrap().pvalue > 0.01);
}

#[test]
fn zeta0_law_at_n10() {
    let passes: Vec<bool> = (0..3)
        .map(|k| {
            let cfg = SamplerConfig::new(MatrixGroup::SpecialUnitary(11), 10_000, 70 + k);
            collect_band_samples(&cfg).unwrap().ks().unwrap().pvalue > 0.01
        })
        .collect();
    assert!(majority(&passes));
}

#[test]
fn group_constraints_hold() {
    for group in [
        MatrixGroup::SpecialUnitary(7),
        MatrixGroup::SpecialOrthogonal(9),
        MatrixGroup::UnitarySymplectic(4),
    ] {
        for g in sample(&SamplerConfig::new(group, 200, 3)).unwrap() {
            assert!(unitarity_residual(&g) < 1e-12);
            if let MatrixGroup::UnitarySymplectic(_) = group {
                assert!(symplectic_residual(&g) < 1e-12);
            } else {
                assert!((g.determinant().re - 1.0).abs() < 1e-11);
            }
        }
    }
}

#[test]
fn reports_are_worker_independent() {
    let base = SamplerConfig::new(MatrixGroup::SpecialOrthogonal(6), 3000, 12);
    let a = concentration_experiment(&base, 0.4).unwrap();
    let b = concentration_experiment(&base.with_workers(4), 0.4).unwrap();
    assert_eq!(a, b);
}

#[test]
fn su11_band_example() {
    let cfg = SamplerConfig::new(MatrixGroup::SpecialUnitary(11), 100_000, 42);
    let rep = concentration_experiment(&cfg, 0.3).unwrap();
    assert!((rep.predicted_mass - 0.599).abs() < 1e-3);
    assert!(rep.z_score.unwrap().abs() < 3.0);
}

#[test]
fn product_factorization_small_groups() {
    for group in [
        MatrixGroup::SpecialOrthogonal(5),
        MatrixGroup::SpecialOrthogonal(6),
        MatrixGroup::UnitarySymplectic(2),
        MatrixGroup::UnitarySymplectic(3),
    ] {
        let samples = collect_band_samples(&SamplerConfig::new(group, 100_000, 21)).unwrap();
        for r in [0.2, 0.5, 0.8] {
            let rep = samples.report(r).unwrap();
            assert!(rep.within_sigmas, "{rep:?}");
        }
        assert!(samples.ks().unwrap().pvalue > 0.01, "{}", group.name());
    }
}
