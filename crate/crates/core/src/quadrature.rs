//! Adaptive Gauss-Kronrod (7, 15) quadrature.

use crate::error::{LocusError, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_5,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_48,
    0.000000000000000000000000000000000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224,
    0.063_092_092_629_978_56,
    0.104_790_010_322_250_19,
    0.140_653_259_715_525_92,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_42,
    0.204_432_940_075_298_89,
    0.209_482_141_084_727_82,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_64,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_PANELS: usize = 4000;

/// One G7-K15 panel: (Kronrod estimate, |Kronrod − Gauss|).
fn panel<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = half * XGK[j];
        let pair = f(center - dx) + f(center + dx);
        kronrod += WGK[j] * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

/// `∫_a^b f` to within `max(abs_tol, rel_tol·|I|)`, bisecting the panel
/// with the largest error estimate until the summed estimate is small enough.
pub fn integrate<F: FnMut(f64) -> f64>(
    mut f: F,
    a: f64,
    b: f64,
    abs_tol: f64,
    rel_tol: f64,
) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let (value, err) = panel(&mut f, a, b);
    let mut panels = vec![(a, b, value, err)];
    loop {
        let total: f64 = panels.iter().map(|p| p.2).sum();
        let error: f64 = panels.iter().map(|p| p.3).sum();
        if !total.is_finite() {
            return Err(LocusError::InvalidArgument(
                "integrand is not finite".into(),
            ));
        }
        if error <= abs_tol.max(rel_tol * total.abs()) {
            return Ok(total);
        }
        if panels.len() >= MAX_PANELS {
            return Err(LocusError::QuadratureMismatch { residual: error });
        }
        let worst = panels
            .iter()
            .enumerate()
            .max_by(|x, y| x.1 .3.total_cmp(&y.1 .3))
            .map(|(i, _)| i)
            .expect("non-empty");
        let (lo, hi, _, _) = panels.swap_remove(worst);
        let mid = 0.5 * (lo + hi);
        let (v1, e1) = panel(&mut f, lo, mid);
        let (v2, e2) = panel(&mut f, mid, hi);
        panels.push((lo, mid, v1, e1));
        panels.push((mid, hi, v2, e2));
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomials_are_exact() {
        let v = integrate(|x| x.powi(5) - 3.0 * x * x + 1.0, -1.0, 2.0, 1e-14, 0.0).unwrap();
        assert!((v - (64.0 / 6.0 - 1.0 / 6.0 - 9.0 + 3.0)).abs() < 1e-12);
    }

    #[test]
    fn smooth_transcendental() {
        let v = integrate(f64::sin, 0.0, std::f64::consts::PI, 1e-13, 0.0).unwrap();
        assert!((v - 2.0).abs() < 1e-13);
    }

    #[test]
    fn endpoint_singularity_of_sqrt() {
        let v = integrate(f64::sqrt, 0.0, 1.0, 1e-12, 0.0).unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-11);
    }

    #[test]
    fn nested_two_dimensional() {
        let v = integrate(
            |x| integrate(|y| x * y * y, 0.0, 1.0, 1e-14, 0.0).unwrap(),
            0.0,
            2.0,
            1e-13,
            0.0,
        )
        .unwrap();
        assert!((v - 2.0 / 3.0).abs() < 1e-13);
    }
}
