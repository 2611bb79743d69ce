//! Seeded random-point checks of the chart and the Fubini-Study metric.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, TAU};

use super::chart::{
    maurer_cartan_fd_residual, measure_density, structure_equation_residual, QuotientChart,
    QuotientCoords,
};
use super::fubini::{pullback_residual, AngularCoords, AngularVelocity};
use crate::error::Result;

/// Finite-difference steps for the Maurer-Cartan checks.
pub const MC_FD_STEP: f64 = 1e-6;
pub const STRUCTURE_FD_STEP: f64 = 1e-5;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PointCheck {
    pub n: usize,
    pub points: usize,
    pub seed: u64,
    pub max_residual: f64,
}

/// Interior point: `θ` uniform in `[0, 2π)`, `φ` uniform in `[0.05, π/2 − 0.05]`.
pub fn random_quotient_coords<R: Rng>(n: usize, rng: &mut R) -> QuotientCoords {
    QuotientCoords {
        thetas: (0..n).map(|_| rng.random_range(0.0..TAU)).collect(),
        phis: (0..n)
            .map(|_| rng.random_range(0.05..FRAC_PI_2 - 0.05))
            .collect(),
    }
}

/// Interior point with unit `R` and a tangent velocity.
pub fn random_angular<R: Rng>(n: usize, rng: &mut R) -> (AngularCoords, AngularVelocity) {
    let mut r: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let norm = r.iter().map(|x| x * x).sum::<f64>().sqrt();
    r.iter_mut().for_each(|x| *x /= norm);
    let mut dr: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let along: f64 = r.iter().zip(&dr).map(|(a, b)| a * b).sum();
    dr.iter_mut().zip(&r).for_each(|(d, a)| *d -= along * a);
    let coords = AngularCoords {
        xi: rng.random_range(0.05..FRAC_PI_2 - 0.05),
        r,
        psi: (0..n).map(|_| rng.random_range(0.0..TAU)).collect(),
    };
    let vel = AngularVelocity {
        dxi: rng.sample(StandardNormal),
        dr,
        dpsi: (0..n).map(|_| rng.sample(StandardNormal)).collect(),
    };
    (coords, vel)
}

fn max_over<F>(n: usize, points: usize, seed: u64, mut f: F) -> Result<PointCheck>
where
    F: FnMut(&mut ChaCha8Rng) -> Result<f64>,
{
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for _ in 0..points {
        worst = worst.max(f(&mut rng)?);
    }
    Ok(PointCheck {
        n,
        points,
        seed,
        max_residual: worst,
    })
}

/// `|det e| − measure_density` at random interior points.
pub fn vielbein_check(n: usize, points: usize, seed: u64) -> Result<PointCheck> {
    let chart = QuotientChart::new(n)?;
    max_over(n, points, seed, |rng| {
        let coords = random_quotient_coords(n, rng);
        Ok((chart.vielbein_density(&coords)? - measure_density(&coords)).abs())
    })
}

/// Angular line element against the affine one under pullback.
pub fn pullback_check(n: usize, points: usize, seed: u64) -> Result<PointCheck> {
    max_over(n, points, seed, |rng| {
        let (a, v) = random_angular(n, rng);
        pullback_residual(&a, &v)
    })
}

/// `dj + j∧j` with central differences.
pub fn structure_check(n: usize, points: usize, seed: u64) -> Result<PointCheck> {
    let chart = QuotientChart::new(n)?;
    max_over(n, points, seed, |rng| {
        let coords = random_quotient_coords(n, rng);
        structure_equation_residual(&chart, &coords, STRUCTURE_FD_STEP)
    })
}

/// Analytic Maurer-Cartan form against central differences of `h`.
pub fn maurer_cartan_check(n: usize, points: usize, seed: u64) -> Result<PointCheck> {
    let chart = QuotientChart::new(n)?;
    max_over(n, points, seed, |rng| {
        let coords = random_quotient_coords(n, rng);
        maurer_cartan_fd_residual(&chart, &coords, MC_FD_STEP)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tolerances;

    #[test]
    fn random_points_pass() {
        assert!(vielbein_check(2, 20, 1).unwrap().max_residual < tolerances::VIELBEIN_DENSITY);
        assert!(pullback_check(3, 50, 2).unwrap().max_residual < tolerances::FS_PULLBACK);
        assert!(
            structure_check(2, 3, 3).unwrap().max_residual < tolerances::MAURER_CARTAN_STRUCTURE
        );
        assert!(maurer_cartan_check(2, 3, 4).unwrap().max_residual < tolerances::MAURER_CARTAN_FD);
    }
}
