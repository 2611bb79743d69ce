//! Ricci lower bounds along the classical families and Levy-family criteria.

use serde::Serialize;

use crate::error::{LocusError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Family {
    SpecialUnitary,
    SpecialOrthogonal,
    UnitarySymplectic,
}

impl std::str::FromStr for Family {
    type Err = LocusError;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "su" | "a" => Ok(Family::SpecialUnitary),
            "so" => Ok(Family::SpecialOrthogonal),
            "usp" | "sp" | "c" => Ok(Family::UnitarySymplectic),
            other => Err(LocusError::Parse(format!("unknown family `{other}`"))),
        }
    }
}

/// Ricci lower bound `R_i` of the `i`-th member:
/// `(i+2)/4` for `SU(i)`, `(i−2)/4` for `SO(i)`, `(i+1)/2` for `USp(2i)`.
/// With a coroot length `ℓ`, the `SU` entry becomes `(i+2)/ℓ²`.
pub fn ricci_bound_sequence(
    family: Family,
    range: std::ops::RangeInclusive<u32>,
    coroot_length: Option<f64>,
) -> Vec<f64> {
    range
        .map(|i| {
            let i = i as f64;
            match (family, coroot_length) {
                (Family::SpecialUnitary, Some(l)) => (i + 2.0) / (l * l),
                (Family::SpecialUnitary, None) => (i + 2.0) / 4.0,
                (Family::SpecialOrthogonal, _) => (i - 2.0) / 4.0,
                (Family::UnitarySymplectic, _) => (i + 1.0) / 2.0,
            }
        })
        .collect()
}

pub const DEFAULT_DIVERGENCE_MARGIN: f64 = 0.5;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LevyCheck {
    pub holds: bool,
    pub bounded_below: bool,
    pub scale_diverges: bool,
    /// `c_i · R_i`.
    pub rescaled: Vec<f64>,
}

/// `R_i ≥ floor` eventually (checked on the second half of the window) and
/// `c_i → ∞` (the last `c_i` exceeds the maximum over the first half by
/// `margin`).
pub fn rescaled_levy_check(
    r_seq: &[f64],
    c_seq: &[f64],
    floor: f64,
    margin: f64,
) -> Result<LevyCheck> {
    if r_seq.len() != c_seq.len() {
        return Err(LocusError::InvalidArgument(
            "sequences differ in length".into(),
        ));
    }
    if r_seq.len() < 2 {
        return Err(LocusError::TooFewSamples {
            min: 2,
            got: r_seq.len(),
        });
    }
    if floor.is_nan() || floor <= 0.0 {
        return Err(LocusError::OutOfRange {
            name: "floor",
            value: floor,
            range: "(0, inf)",
        });
    }
    let half = r_seq.len() / 2;
    let bounded_below = r_seq[half..].iter().all(|&r| r >= floor);
    let early_max = c_seq[..half.max(1)]
        .iter()
        .copied()
        .fold(f64::NEG_INFINITY, f64::max);
    let scale_diverges = c_seq[c_seq.len() - 1] - early_max >= margin;
    Ok(LevyCheck {
        holds: bounded_below && scale_diverges,
        bounded_below,
        scale_diverges,
        rescaled: r_seq.iter().zip(c_seq).map(|(r, c)| r * c).collect(),
    })
}

/// `N · exp(−n ε² / N)`.
pub fn multi_locus_bound(n: u64, big_n: u64, eps: f64) -> f64 {
    let nf = big_n as f64;
    nf * (-(n as f64) * eps * eps / nf).exp()
}

/// `N_n · log(n) / n` is decreasing on the window and shrinks to below half
/// its initial value.
pub fn codim_growth_ok(n_of_n: &[f64], n_values: &[f64]) -> bool {
    if n_of_n.len() != n_values.len() || n_values.len() < 2 {
        return false;
    }
    let terms: Vec<f64> = n_of_n
        .iter()
        .zip(n_values)
        .map(|(big, n)| big * n.ln() / n)
        .collect();
    let decreasing = terms.windows(2).all(|w| w[1] < w[0]);
    decreasing && terms[terms.len() - 1] < 0.5 * terms[0]
}

/// Complement mass `cos^{2n} ε` of the `ε`-band around the hyperplane at
/// infinity, and whether `ε_n √n` grows across the window while the
/// complement mass falls.
pub fn threshold_check(eps: &[f64], n_values: &[u32]) -> (Vec<f64>, bool) {
    let tails: Vec<f64> = eps
        .iter()
        .zip(n_values)
        .map(|(e, &n)| e.cos().powi(2 * n as i32))
        .collect();
    let scaled: Vec<f64> = eps
        .iter()
        .zip(n_values)
        .map(|(e, &n)| e * (n as f64).sqrt())
        .collect();
    let ok = scaled.windows(2).all(|w| w[1] > w[0]) && tails.windows(2).all(|w| w[1] < w[0]);
    (tails, ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_values() {
        assert_eq!(
            ricci_bound_sequence(Family::SpecialUnitary, 10..=10, None),
            vec![3.0]
        );
        assert_eq!(
            ricci_bound_sequence(Family::SpecialOrthogonal, 10..=10, None),
            vec![2.0]
        );
        assert_eq!(
            ricci_bound_sequence(Family::UnitarySymplectic, 3..=3, None),
            vec![2.0]
        );
        let r = ricci_bound_sequence(Family::SpecialUnitary, 10..=10, Some(10f64.sqrt()));
        assert!((r[0] - 1.2).abs() < 1e-12);
    }

    #[test]
    fn levy_examples() {
        let idx: Vec<f64> = (2..60).map(|i| i as f64).collect();
        let r: Vec<f64> = idx.iter().map(|i| (i + 2.0) / 4.0).collect();
        let c: Vec<f64> = idx.iter().map(|i| i.ln()).collect();
        assert!(
            rescaled_levy_check(&r, &c, 0.5, DEFAULT_DIVERGENCE_MARGIN)
                .unwrap()
                .holds
        );

        let r: Vec<f64> = idx.iter().map(|i| 1.0 / i).collect();
        assert!(
            !rescaled_levy_check(&r, &idx, 0.5, DEFAULT_DIVERGENCE_MARGIN)
                .unwrap()
                .holds
        );

        let ones = vec![1.0; idx.len()];
        assert!(
            !rescaled_levy_check(&ones, &ones, 0.5, DEFAULT_DIVERGENCE_MARGIN)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn multi_locus() {
        assert!((multi_locus_bound(100, 1, 0.5) - (-25f64).exp()).abs() < 1e-20);
        assert_eq!(multi_locus_bound(100, 3, 1e200), 0.0);
    }

    #[test]
    fn codim_growth() {
        let n: Vec<f64> = (1..=5).map(|k| 10f64.powi(k + 1)).collect();
        let big: Vec<f64> = n.iter().map(|x| x.sqrt()).collect();
        assert!(codim_growth_ok(&big, &n));
        let linear: Vec<f64> = n.clone();
        assert!(!codim_growth_ok(&linear, &n));
    }

    #[test]
    fn thresholds() {
        let ns = [10u32, 100, 1000, 10000];
        let eps: Vec<f64> = ns.iter().map(|&n| (n as f64).powf(-0.25)).collect();
        assert!(threshold_check(&eps, &ns).1);
        let eps: Vec<f64> = ns.iter().map(|&n| 1.0 / n as f64).collect();
        assert!(!threshold_check(&eps, &ns).1);
    }
}
