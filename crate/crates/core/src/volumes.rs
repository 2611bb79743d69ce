//! Riemannian volumes of the compact classical groups from Macdonald's formula
//!
//! `V(G/Γ) = |Γ|⁻¹ · V(T) · ∏ V(S^{2d_i−1}) · ∏ (α̌|α̌)`
//!
//! evaluated exactly through the root data, plus the four closed forms for the
//! simply connected groups and their log-space counterparts.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use statrs::function::gamma::ln_gamma;

use crate::error::{LocusError, Result};
use crate::exact::ExactScalar;
use crate::roots::{build_root_system, coroot_norm_product, torus_volume};
use crate::series::{Series, SeriesTag};

/// Largest `n` for which `group_volume` runs the exact pipeline.
pub const EXACT_RANK_LIMIT: u32 = 30;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VolumeResult {
    pub series: Series,
    pub group: String,
    pub center_order: u32,
    pub dim: u32,
    pub exact: Option<ExactScalar>,
    pub log_value: f64,
}

/// Volume of the unit sphere `S^{2d−1}`: `2π^d/(d−1)!`.
pub fn sphere_volume(d: u32) -> ExactScalar {
    assert!(d >= 1, "sphere_volume needs d >= 1");
    let q = BigRational::new(
        BigInt::from(2),
        ExactScalar::factorial(d - 1).q().to_integer(),
    );
    ExactScalar::rational(q).mul(&ExactScalar::pi_power(d))
}

fn check_center(series: Series, center_order: u32) -> Result<()> {
    let center = series.center_order();
    if center_order == 0 || !center.is_multiple_of(center_order) {
        return Err(LocusError::InvalidCenterOrder {
            group: series.group_name(),
            order: center_order,
            center,
        });
    }
    Ok(())
}

/// Macdonald pipeline without the center quotient.
pub fn macdonald_exact(series: Series) -> ExactScalar {
    let rs = build_root_system(series);
    let spheres: ExactScalar = rs.degrees.iter().map(|&d| sphere_volume(d)).product();
    torus_volume(&rs)
        .mul(&spheres)
        .mul(&coroot_norm_product(&rs))
}

pub fn group_volume(series: Series, center_order: u32) -> Result<VolumeResult> {
    check_center(series, center_order)?;
    let log_gamma = (center_order as f64).ln();
    let (exact, log_value) = if series.n <= EXACT_RANK_LIMIT {
        let v = macdonald_exact(series).checked_div(&ExactScalar::integer(center_order as i64))?;
        let log = v.ln()?;
        (Some(v), log)
    } else {
        (None, log_volume(series) - log_gamma)
    };
    Ok(VolumeResult {
        series,
        group: quotient_name(series, center_order),
        center_order,
        dim: series.dim(),
        exact,
        log_value,
    })
}

fn quotient_name(series: Series, center_order: u32) -> String {
    if center_order == 1 {
        series.group_name()
    } else {
        format!("{}/Z{}", series.group_name(), center_order)
    }
}

fn factorial_product<I: IntoIterator<Item = u32>>(terms: I) -> ExactScalar {
    terms.into_iter().map(ExactScalar::factorial).product()
}

/// The four displayed closed forms for the simply connected groups.
pub fn closed_form_volume(series: Series) -> ExactScalar {
    let n = series.n;
    let two = |k: u32| ExactScalar::integer(2).pow(k);
    let (numerator, denominator) = match series.tag {
        SeriesTag::A => {
            let k = n * (n + 1) / 2 - 1;
            let num = ExactScalar::sqrt(n as u64)
                .mul(&two(k))
                .mul(&ExactScalar::pi_power(k));
            (num, factorial_product(1..n))
        }
        SeriesTag::B => {
            let num = two(n * (n + 2) + 1).mul(&ExactScalar::pi_power(n * (n + 1)));
            (num, factorial_product((1..=n).map(|i| 2 * i - 1)))
        }
        SeriesTag::C => {
            let num = two(n * n).mul(&ExactScalar::pi_power(n * (n + 1)));
            (num, factorial_product((1..=n).map(|i| 2 * i - 1)))
        }
        SeriesTag::D => {
            let num = two(n * n + 1).mul(&ExactScalar::pi_power(n * n));
            let den =
                ExactScalar::factorial(n - 1).mul(&factorial_product((1..n).map(|i| 2 * i - 1)));
            (num, den)
        }
    };
    numerator
        .checked_div(&denominator)
        .expect("closed-form denominators are rational")
}

fn ln_factorial(k: u32) -> f64 {
    ln_gamma(k as f64 + 1.0)
}

/// Log of the closed form at any `n ≥ 1`, without series validation.
fn raw_log_volume(tag: SeriesTag, n: u32) -> f64 {
    let ln2 = std::f64::consts::LN_2;
    let lnpi = std::f64::consts::PI.ln();
    let nf = n as f64;
    match tag {
        SeriesTag::A => {
            let k = nf * (nf + 1.0) / 2.0 - 1.0;
            0.5 * nf.ln() + k * (2.0 * std::f64::consts::PI).ln()
                - (1..n).map(ln_factorial).sum::<f64>()
        }
        SeriesTag::B => {
            (nf * (nf + 2.0) + 1.0) * ln2 + nf * (nf + 1.0) * lnpi
                - (1..=n).map(|i| ln_factorial(2 * i - 1)).sum::<f64>()
        }
        SeriesTag::C => {
            nf * nf * ln2 + nf * (nf + 1.0) * lnpi
                - (1..=n).map(|i| ln_factorial(2 * i - 1)).sum::<f64>()
        }
        SeriesTag::D => {
            (nf * nf + 1.0) * ln2 + nf * nf * lnpi
                - ln_factorial(n - 1)
                - (1..n).map(|i| ln_factorial(2 * i - 1)).sum::<f64>()
        }
    }
}

/// `ln V` of the simply connected group via log-gamma.
pub fn log_volume(series: Series) -> f64 {
    raw_log_volume(series.tag, series.n)
}

/// Dimension-normalized volume ratio between consecutive ranks.
///
/// A: `(V(SU(n+1))/V(SU(n)))^{1/(2n+1)}`.
/// B, C, D: `(V_n/V_{n−1})^{1/Δ}` with `Δ = dim_n − dim_{n−1}`, i.e. `4n−1`
/// for B and C and `4n−3` for D.
pub fn ratio_exponent(series: Series) -> f64 {
    let n = series.n;
    let (upper, lower, delta) = match series.tag {
        SeriesTag::A => (n + 1, n, 2 * n + 1),
        SeriesTag::B | SeriesTag::C => (n, n - 1, 4 * n - 1),
        SeriesTag::D => (n, n - 1, 4 * n - 3),
    };
    let diff = raw_log_volume(series.tag, upper) - raw_log_volume(series.tag, lower);
    (diff / delta as f64).exp()
}

/// `√(2πe/scale)` with scale `n` for A and `2n` otherwise.
pub fn ratio_asymptote(series: Series) -> f64 {
    let scale = match series.tag {
        SeriesTag::A => series.n as f64,
        _ => 2.0 * series.n as f64,
    };
    (2.0 * std::f64::consts::PI * std::f64::consts::E / scale).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(tag: SeriesTag, n: u32) -> Series {
        Series::new(tag, n).unwrap()
    }

    #[test]
    fn sphere_volumes() {
        assert_eq!(
            sphere_volume(1),
            ExactScalar::integer(2).mul(&ExactScalar::pi_power(1))
        );
        assert_eq!(
            sphere_volume(2),
            ExactScalar::integer(2).mul(&ExactScalar::pi_power(2))
        );
        assert_eq!(
            sphere_volume(4),
            ExactScalar::ratio(1, 3).mul(&ExactScalar::pi_power(4))
        );
    }

    #[test]
    fn su3_and_quotient() {
        let v = group_volume(s(SeriesTag::A, 3), 1).unwrap();
        let expected = ExactScalar::integer(16)
            .mul(&ExactScalar::sqrt(3))
            .mul(&ExactScalar::pi_power(5));
        assert_eq!(v.exact.as_ref().unwrap(), &expected);
        let q = group_volume(s(SeriesTag::A, 3), 3).unwrap();
        assert_eq!(
            q.exact.unwrap(),
            expected.checked_div(&ExactScalar::integer(3)).unwrap()
        );
        assert!(group_volume(s(SeriesTag::A, 3), 2).is_err());
        assert!(group_volume(s(SeriesTag::D, 5), 3).is_err());
    }

    #[test]
    fn spin5() {
        let v = group_volume(s(SeriesTag::B, 2), 1).unwrap();
        let expected = ExactScalar::ratio(512, 6).mul(&ExactScalar::pi_power(6));
        assert_eq!(v.exact.unwrap(), expected);
        assert!((v.log_value - log_volume(s(SeriesTag::B, 2))).abs() < 1e-10);
    }

    #[test]
    fn closed_form_spot_values() {
        let su2 = ExactScalar::integer(4)
            .mul(&ExactScalar::sqrt(2))
            .mul(&ExactScalar::pi_power(2));
        assert_eq!(closed_form_volume(s(SeriesTag::A, 2)), su2);
        assert_eq!(
            closed_form_volume(s(SeriesTag::C, 2)),
            ExactScalar::ratio(8, 3).mul(&ExactScalar::pi_power(6))
        );
        let spin8 = ExactScalar::ratio(1 << 17, 6 * 6 * 120).mul(&ExactScalar::pi_power(16));
        assert_eq!(closed_form_volume(s(SeriesTag::D, 4)), spin8);
    }

    #[test]
    fn su5_log_paths() {
        let v = closed_form_volume(s(SeriesTag::A, 5));
        assert!((v.ln().unwrap() - log_volume(s(SeriesTag::A, 5))).abs() < 1e-12);
    }

    #[test]
    fn large_rank_uses_log_path() {
        let v = group_volume(s(SeriesTag::A, 50), 1).unwrap();
        assert!(v.exact.is_none());
        assert!(v.log_value.is_finite());
    }

    #[test]
    fn su_ratio_at_two() {
        let direct = ((1.5f64).sqrt() * (2.0 * std::f64::consts::PI).powi(3) / 2.0).powf(0.2);
        assert!((ratio_exponent(s(SeriesTag::A, 2)) - direct).abs() < 1e-12);
    }
}
