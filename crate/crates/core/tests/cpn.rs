use locus_core::cpn::fubini::{fs_metric_affine, fs_metric_from_potential};
use locus_core::cpn::{
    band_mass, calibrate, calibration_check, maurer_cartan_check, pullback_check, structure_check,
    vielbein_check, CALIBRATED,
};
use num_complex::Complex64;

#[test]
fn vielbein_density_matches_closed_form() {
    for n in 1..=3 {
        let check = vielbein_check(n, 50, 11).unwrap();
        assert!(check.max_residual < 1e-8, "n={n}: {check:?}");
    }
}

#[test]
fn angular_metric_is_pullback() {
    for n in 1..=4 {
        assert!(
            pullback_check(n, 100, 5).unwrap().max_residual < 1e-8,
            "n={n}"
        );
    }
}

#[test]
fn maurer_cartan_form_and_structure_equation() {
    for n in 1..=3 {
        assert!(maurer_cartan_check(n, 5, 2).unwrap().max_residual < 1e-5);
        assert!(structure_check(n, 5, 2).unwrap().max_residual < 1e-4);
    }
}

#[test]
fn potential_hessian_is_fubini_study() {
    let z = [Complex64::new(0.3, -0.2), Complex64::new(-0.5, 0.4)];
    let diff = fs_metric_from_potential(&z, 1e-4) - fs_metric_affine(&z);
    let residual = diff.iter().map(|x| x.norm()).fold(0.0, f64::max);
    assert!(residual < 1e-6);
}

#[test]
fn band_integral_grid() {
    for n in 1..=20 {
        for k in 0..16 {
            let eps = k as f64 * std::f64::consts::FRAC_PI_2 / 15.0;
            let b = band_mass(n, eps).unwrap();
            assert!((b.quadrature - b.closed_form).abs() < 1e-10);
        }
    }
    assert!(
        band_mass(4, std::f64::consts::FRAC_PI_2)
            .unwrap()
            .closed_form
            < 1e-30
    );
}

#[test]
fn calibration_closes() {
    let cal = calibrate().unwrap();
    assert!((cal.theta_first_period - CALIBRATED.theta_first_period).abs() < 1e-10);
    for n in 1..=3 {
        assert!(
            calibration_check(n, &CALIBRATED).unwrap().relative_error < 1e-6,
            "n={n}"
        );
    }
}
