//! Band masses on spheres and Kolmogorov-Smirnov tests.

use serde::Serialize;
use statrs::function::beta::beta_reg;

use crate::error::{LocusError, Result};
use crate::quadrature::integrate;

fn check_band(m: u32, r: f64) -> Result<()> {
    if m == 0 {
        return Err(LocusError::InvalidArgument(
            "sphere dimension must be >= 1".into(),
        ));
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&r) {
        return Err(LocusError::OutOfRange {
            name: "r",
            value: r,
            range: "[0, pi/2]",
        });
    }
    Ok(())
}

/// Normalized mass of the points of `S^m` within geodesic distance `r` of an
/// equator, `I_{sin²r}(½, m/2)`.
pub fn sphere_band_mass(m: u32, r: f64) -> Result<f64> {
    check_band(m, r)?;
    if r == 0.0 {
        return Ok(0.0);
    }
    let s = r.sin();
    Ok(beta_reg(0.5, m as f64 / 2.0, (s * s).min(1.0)))
}

/// `∫_0^r cos^{m−1}t dt / ∫_0^{π/2} cos^{m−1}t dt`.
pub fn sphere_band_mass_quadrature(m: u32, r: f64) -> Result<f64> {
    check_band(m, r)?;
    let f = |t: f64| t.cos().powi(m as i32 - 1);
    let num = integrate(f, 0.0, r, 1e-15, 1e-13)?;
    let den = integrate(f, 0.0, std::f64::consts::FRAC_PI_2, 1e-15, 1e-13)?;
    Ok(num / den)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub pvalue: f64,
    pub n: usize,
}

/// `P(K > λ)` for the Kolmogorov distribution, series truncated at 100 terms.
pub fn kolmogorov_survival(lambda: f64) -> f64 {
    if lambda <= 0.0 {
        return 1.0;
    }
    let p = if lambda >= 1.18 {
        2.0 * (1..=100)
            .map(|k| {
                let k = k as f64;
                let sign = if k as u64 % 2 == 1 { 1.0 } else { -1.0 };
                sign * (-2.0 * k * k * lambda * lambda).exp()
            })
            .sum::<f64>()
    } else {
        let pi2 = std::f64::consts::PI.powi(2);
        let cdf = (2.0 * std::f64::consts::PI).sqrt() / lambda
            * (1..=100)
                .map(|k| {
                    let odd = (2 * k - 1) as f64;
                    (-odd * odd * pi2 / (8.0 * lambda * lambda)).exp()
                })
                .sum::<f64>();
        1.0 - cdf
    };
    p.clamp(0.0, 1.0)
}

fn check_sorted(samples: &[f64]) -> Result<()> {
    if samples.len() < 8 {
        return Err(LocusError::TooFewSamples {
            min: 8,
            got: samples.len(),
        });
    }
    if samples.iter().any(|x| x.is_nan()) || samples.windows(2).any(|w| w[1] < w[0]) {
        return Err(LocusError::UnsortedSamples);
    }
    Ok(())
}

fn pvalue(n_eff: f64, d: f64) -> f64 {
    let sq = n_eff.sqrt();
    kolmogorov_survival((sq + 0.12 + 0.11 / sq) * d)
}

/// One-sample KS test of sorted `samples` against `cdf`.
pub fn ks_test<F: Fn(f64) -> f64>(samples: &[f64], cdf: F) -> Result<KsResult> {
    check_sorted(samples)?;
    let n = samples.len();
    let nf = n as f64;
    let mut d = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        d = d.max(f - i as f64 / nf).max((i + 1) as f64 / nf - f);
    }
    Ok(KsResult {
        statistic: d,
        pvalue: pvalue(nf, d),
        n,
    })
}

/// Two-sample KS test of two sorted samples.
pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    check_sorted(a)?;
    check_sorted(b)?;
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / na - j as f64 / nb).abs());
    }
    Ok(KsResult {
        statistic: d,
        pvalue: pvalue(na * nb / (na + nb), d),
        n: a.len() + b.len(),
    })
}

/// Sorts a copy, NaN-free input assumed.
pub fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Majority vote over independent repetitions.
pub fn majority(passes: &[bool]) -> bool {
    2 * passes.iter().filter(|&&p| p).count() > passes.len()
}
