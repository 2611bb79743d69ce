//! Band-mass experiments on the base spheres of the classical groups.

use serde::Serialize;

use super::sampler::{sample_map, sample_one, SamplerConfig};
use super::stats::{ks_test, ks_two_sample, sorted, sphere_band_mass, KsResult};
use crate::error::{LocusError, Result};
use crate::linalg::CMatrix;
use crate::series::MatrixGroup;

/// `(|ζ₀|, ξ)` for the first column of `g`, `cos ξ = |ζ₀|`.
pub fn cp_coordinate(g: &CMatrix) -> (f64, f64) {
    let z0 = g[(0, 0)].norm().min(1.0);
    (z0, z0.acos())
}

/// Geodesic distances of a sample's base-sphere points to their equators,
/// one per sphere factor.
///
/// * `SU(n+1)`: `π/2 − ξ` on `CPⁿ`.
/// * `SO(m)`: first column on `S^{m−1}`, second column on `S^{m−2}` after the
///   reflection taking the first column to `±e₀`.
/// * `USp(2n)`: first column realified on `S^{4n−1}`.
pub fn equator_distances(group: MatrixGroup, g: &CMatrix) -> Vec<f64> {
    match group {
        MatrixGroup::SpecialUnitary(_) => {
            let (_, xi) = cp_coordinate(g);
            vec![std::f64::consts::FRAC_PI_2 - xi]
        }
        MatrixGroup::SpecialOrthogonal(_) => {
            let x: Vec<f64> = (0..3).map(|i| g[(i, 0)].re).collect();
            let y: Vec<f64> = (0..2).map(|i| g[(i, 1)].re).collect();
            let hy1 = if x[0] < 0.0 {
                y[1] + x[1] * y[0] / (1.0 - x[0])
            } else {
                y[1] - x[1] * y[0] / (1.0 + x[0])
            };
            vec![asin_abs(x[0]), asin_abs(hy1)]
        }
        MatrixGroup::UnitarySymplectic(_) => vec![asin_abs(g[(0, 0)].re)],
    }
}

fn asin_abs(x: f64) -> f64 {
    x.abs().min(1.0).asin()
}

/// Dimensions of the base spheres, or `None` for `SU`.
pub fn sphere_dims(group: MatrixGroup) -> Option<Vec<u32>> {
    match group {
        MatrixGroup::SpecialUnitary(_) => None,
        MatrixGroup::SpecialOrthogonal(m) => Some(vec![m as u32 - 1, m as u32 - 2]),
        MatrixGroup::UnitarySymplectic(n) => Some(vec![4 * n as u32 - 1]),
    }
}

/// `n` for `SU(n+1)`, `Spin(2n+1)`, `Spin(2n)`, `USp(2n)`.
pub fn series_n(group: MatrixGroup) -> usize {
    match group {
        MatrixGroup::SpecialUnitary(m) => m - 1,
        MatrixGroup::SpecialOrthogonal(m) => m / 2,
        MatrixGroup::UnitarySymplectic(n) => n,
    }
}

pub fn series_label(group: MatrixGroup) -> String {
    match group {
        MatrixGroup::SpecialUnitary(m) => format!("SU({m})"),
        MatrixGroup::SpecialOrthogonal(m) => format!("Spin({m})"),
        MatrixGroup::UnitarySymplectic(n) => format!("USp({})", 2 * n),
    }
}

/// Closed-form mass of the band of radius `r`.
pub fn predicted_mass(group: MatrixGroup, r: f64) -> Result<f64> {
    match sphere_dims(group) {
        None => {
            let n = series_n(group) as i32;
            Ok(1.0 - r.cos().powi(2 * n))
        }
        Some(dims) => dims
            .iter()
            .try_fold(1.0, |acc, &m| Ok(acc * sphere_band_mass(m, r)?)),
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub series: String,
    pub group: String,
    pub n: usize,
    pub r: f64,
    pub count: usize,
    pub seed: u64,
    pub empirical_mass: f64,
    pub predicted_mass: f64,
    pub stderr: f64,
    pub z_score: Option<f64>,
    pub within_sigmas: bool,
    pub ks_statistic: f64,
    pub ks_pvalue: f64,
    pub sphere_dims: Option<Vec<u32>>,
    pub note: Option<String>,
}

/// Per-sample statistics kept from one sampling pass.
#[derive(Clone, Debug)]
pub struct BandSamples {
    pub cfg: SamplerConfig,
    pub distances: Vec<Vec<f64>>,
    /// `|ζ₀|²` for `SU`, the first equator distance otherwise.
    pub ks_values: Vec<f64>,
}

pub fn collect_band_samples(cfg: &SamplerConfig) -> Result<BandSamples> {
    let group = cfg.group;
    let rows = sample_map(cfg, |g| {
        let d = equator_distances(group, g);
        let k = match group {
            MatrixGroup::SpecialUnitary(_) => g[(0, 0)].norm_sqr(),
            _ => d[0],
        };
        (d, k)
    })?;
    let (distances, ks_values) = rows.into_iter().unzip();
    Ok(BandSamples {
        cfg: *cfg,
        distances,
        ks_values: sorted(ks_values),
    })
}

impl BandSamples {
    pub fn ks(&self) -> Result<KsResult> {
        match self.cfg.group {
            MatrixGroup::SpecialUnitary(m) => {
                let n = (m - 1) as i32;
                ks_test(&self.ks_values, |s| 1.0 - (1.0 - s.clamp(0.0, 1.0)).powi(n))
            }
            MatrixGroup::SpecialOrthogonal(m) => ks_test(&self.ks_values, |d| {
                sphere_band_mass(m as u32 - 1, d.clamp(0.0, std::f64::consts::FRAC_PI_2))
                    .unwrap_or(f64::NAN)
            }),
            MatrixGroup::UnitarySymplectic(n) => ks_test(&self.ks_values, |d| {
                sphere_band_mass(4 * n as u32 - 1, d.clamp(0.0, std::f64::consts::FRAC_PI_2))
                    .unwrap_or(f64::NAN)
            }),
        }
    }

    pub fn report(&self, r: f64) -> Result<ConcentrationReport> {
        check_radius(r)?;
        let group = self.cfg.group;
        let count = self.distances.len();
        let hits = self
            .distances
            .iter()
            .filter(|d| d.iter().all(|&x| x < r))
            .count();
        let empirical = hits as f64 / count as f64;
        let predicted = predicted_mass(group, r)?.clamp(0.0, 1.0);
        let stderr = (predicted * (1.0 - predicted) / count as f64).sqrt();
        let diff = empirical - predicted;
        let z_score = (stderr > 0.0).then(|| diff / stderr);
        let within_sigmas = match z_score {
            Some(z) => z.abs() < crate::tolerances::MC_SIGMAS,
            None => diff == 0.0,
        };
        let ks = self.ks()?;
        let note = match group {
            MatrixGroup::SpecialOrthogonal(_) => {
                Some("sampled on SO(m); band statistics live on the base spheres".to_string())
            }
            MatrixGroup::UnitarySymplectic(_) => {
                Some("symplectic concentration statement applied to USp(2n)".to_string())
            }
            MatrixGroup::SpecialUnitary(_) => None,
        };
        Ok(ConcentrationReport {
            series: series_label(group),
            group: group.name(),
            n: series_n(group),
            r,
            count,
            seed: self.cfg.seed,
            empirical_mass: empirical,
            predicted_mass: predicted,
            stderr,
            z_score,
            within_sigmas,
            ks_statistic: ks.statistic,
            ks_pvalue: ks.pvalue,
            sphere_dims: sphere_dims(group),
            note,
        })
    }
}

fn check_radius(r: f64) -> Result<()> {
    if !(r > 0.0 && r < std::f64::consts::FRAC_PI_2) {
        return Err(LocusError::OutOfRange {
            name: "r",
            value: r,
            range: "(0, pi/2)",
        });
    }
    Ok(())
}

pub fn concentration_experiment(cfg: &SamplerConfig, r: f64) -> Result<ConcentrationReport> {
    check_radius(r)?;
    collect_band_samples(cfg)?.report(r)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HistogramBin {
    pub lo: f64,
    pub hi: f64,
    pub count: usize,
}

/// Equal-width histogram on `[lo, hi]`; the last bin is closed.
pub fn histogram(values: &[f64], bins: usize, lo: f64, hi: f64) -> Result<Vec<HistogramBin>> {
    if bins == 0 || hi.is_nan() || lo.is_nan() || hi <= lo {
        return Err(LocusError::InvalidArgument(
            "histogram needs bins >= 1 and hi > lo".into(),
        ));
    }
    let width = (hi - lo) / bins as f64;
    let mut counts = vec![0usize; bins];
    for &v in values {
        if v < lo || v > hi || v.is_nan() {
            continue;
        }
        let k = (((v - lo) / width) as usize).min(bins - 1);
        counts[k] += 1;
    }
    Ok(counts
        .into_iter()
        .enumerate()
        .map(|(k, count)| HistogramBin {
            lo: lo + k as f64 * width,
            hi: lo + (k + 1) as f64 * width,
            count,
        })
        .collect())
}

/// `ξ` of every `SU(m)` sample.
pub fn xi_values(cfg: &SamplerConfig) -> Result<Vec<f64>> {
    match cfg.group {
        MatrixGroup::SpecialUnitary(_) => sample_map(cfg, |g| cp_coordinate(g).1),
        other => Err(LocusError::InvalidArgument(format!(
            "xi is defined for SU samples, got {}",
            other.name()
        ))),
    }
}

/// `F(x) = P(Re tr g / 2 < x)` on `SU(2)`.
pub fn su2_character_cdf(x: f64) -> f64 {
    let x = x.clamp(-1.0, 1.0);
    0.5 + (x * (1.0 - x * x).sqrt() + x.asin()) / std::f64::consts::PI
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Two-sample KS test of `Re tr g` against `Re tr(g₀g)` (or `Re tr(g g₀)`),
/// with the two batches drawn from seeds `seed` and `seed + 1` and `g₀` from
/// a third stream.
pub fn translation_invariance(
    group: MatrixGroup,
    count: usize,
    seed: u64,
    side: Side,
    workers: usize,
) -> Result<KsResult> {
    let g0 = sample_one(group, seed.wrapping_add(2), u64::MAX);
    let plain = SamplerConfig::new(group, count, seed).with_workers(workers);
    let moved = SamplerConfig::new(group, count, seed.wrapping_add(1)).with_workers(workers);
    let a = sample_map(&plain, |g| g.trace().re)?;
    let b = sample_map(&moved, |g| {
        let h = match side {
            Side::Left => &g0 * g,
            Side::Right => g * &g0,
        };
        h.trace().re
    })?;
    ks_two_sample(&sorted(a), &sorted(b))
}
