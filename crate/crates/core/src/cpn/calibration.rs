//! Coordinate ranges for the quotient chart.
//!
//! The chart leaves the periods of `θ_a` open. They are fixed by requiring the
//! integral of the closed-form density over
//! `θ_1 ∈ [0, P_1)`, `θ_a ∈ [0, P)` (`a ≥ 2`), `φ_a ∈ [0, π/2]`
//! to equal `V(SU(n+1))/V(U(n))`: `P_1` from `n = 1`, `P` from `n = 2`.
//! `n = 3` is then an out-of-sample check.

use serde::Serialize;

use super::chart::{measure_density, QuotientCoords};
use crate::error::Result;
use crate::quadrature::integrate;
use crate::series::{Series, SeriesTag};
use crate::volumes::macdonald_exact;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Calibration {
    pub theta_first_period: f64,
    pub theta_period: f64,
    pub phi_min: f64,
    pub phi_max: f64,
    /// Ratio of the Macdonald metric on `su(n)` to `−½Tr`.
    pub metric_scale: f64,
}

/// Output of [`calibrate`], shipped as a fixture.
pub const CALIBRATED: Calibration = Calibration {
    theta_first_period: std::f64::consts::PI,
    theta_period: std::f64::consts::TAU,
    phi_min: 0.0,
    phi_max: std::f64::consts::FRAC_PI_2,
    metric_scale: 2.0,
};

fn su_volume(n: usize) -> f64 {
    if n == 1 {
        1.0
    } else {
        macdonald_exact(Series::new(SeriesTag::A, n as u32).expect("n >= 2")).to_f64()
    }
}

/// Scale of the Macdonald metric against `−½Tr`, read off from `SU(2)`,
/// which is the unit 3-sphere in the latter.
pub fn metric_scale() -> f64 {
    let unit_s3 = 2.0 * std::f64::consts::PI.powi(2);
    (su_volume(2) / unit_s3).powf(2.0 / 3.0)
}

/// `V(U(n))` for `U(n) ↪ SU(n+1)`, `g ↦ diag(g, det g⁻¹)`, in the Macdonald
/// metric: `V(SU(n)) · 2π √((n+1)/n)`.
pub fn unitary_volume(n: usize) -> f64 {
    let nf = n as f64;
    su_volume(n) * std::f64::consts::TAU * ((nf + 1.0) / nf).sqrt()
}

/// `V(SU(n+1))/V(U(n))` rescaled to the `−½Tr` metric.
pub fn quotient_volume(n: usize) -> f64 {
    su_volume(n + 1) / unitary_volume(n) / metric_scale().powi(n as i32)
}

/// `∫ measure_density dφ_1 … dφ_n` over `[0, π/2]^n`.
pub fn phi_integral(n: usize, cal: &Calibration) -> Result<f64> {
    let mut phis = vec![0.0; n];
    let value = nested(n, 0, &mut phis, cal);
    if value.is_finite() {
        Ok(value)
    } else {
        Err(crate::error::LocusError::QuadratureMismatch { residual: f64::NAN })
    }
}

fn nested(n: usize, depth: usize, phis: &mut Vec<f64>, cal: &Calibration) -> f64 {
    if depth == n {
        let coords = QuotientCoords {
            thetas: vec![0.0; n],
            phis: phis.clone(),
        };
        return measure_density(&coords);
    }
    integrate(
        |x| {
            phis[depth] = x;
            nested(n, depth + 1, phis, cal)
        },
        cal.phi_min,
        cal.phi_max,
        1e-14,
        1e-12,
    )
    .unwrap_or(f64::NAN)
}

pub fn theta_volume(n: usize, cal: &Calibration) -> f64 {
    cal.theta_first_period * cal.theta_period.powi(n as i32 - 1)
}

pub fn measure_integral(n: usize, cal: &Calibration) -> Result<f64> {
    Ok(theta_volume(n, cal) * phi_integral(n, cal)?)
}

/// Fits the two periods against the volume quotient at `n = 1, 2`.
pub fn calibrate() -> Result<Calibration> {
    let mut cal = CALIBRATED;
    cal.metric_scale = metric_scale();
    cal.theta_first_period = quotient_volume(1) / phi_integral(1, &cal)?;
    cal.theta_period = quotient_volume(2) / (cal.theta_first_period * phi_integral(2, &cal)?);
    Ok(cal)
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct CalibrationCheck {
    pub n: usize,
    pub integral: f64,
    pub quotient: f64,
    pub relative_error: f64,
}

pub fn calibration_check(n: usize, cal: &Calibration) -> Result<CalibrationCheck> {
    let integral = measure_integral(n, cal)?;
    let quotient = quotient_volume(n);
    Ok(CalibrationCheck {
        n,
        integral,
        quotient,
        relative_error: ((integral - quotient) / quotient).abs(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn quotient_is_pi_power_over_factorial() {
        assert!((quotient_volume(1) - PI).abs() < 1e-12);
        assert!((quotient_volume(2) - PI * PI / 2.0).abs() < 1e-12);
        assert!((quotient_volume(3) - PI.powi(3) / 6.0).abs() < 1e-12);
    }

    #[test]
    fn metric_scale_is_two() {
        assert!((metric_scale() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn calibration_reproduces_fixture() {
        let cal = calibrate().unwrap();
        assert!((cal.theta_first_period - CALIBRATED.theta_first_period).abs() < 1e-10);
        assert!((cal.theta_period - CALIBRATED.theta_period).abs() < 1e-10);
    }

    #[test]
    fn out_of_sample_n3() {
        let check = calibration_check(3, &CALIBRATED).unwrap();
        assert!(check.relative_error < 1e-8, "{check:?}");
    }
}
