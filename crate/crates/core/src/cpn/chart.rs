//! The quotient `SU(n+1)/U(n) = CPⁿ` in product-of-exponentials coordinates
//!
//! `h = e^{iθ_1λ_3} e^{iφ_1λ_2} ∏_{a=2}^n e^{i(θ_a/ε_a)λ_{a²−1}} e^{iφ_aλ_{a²+1}}`,
//! `ε_a = √(2/(a(a−1)))`.

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use super::gellmann::{gellmann_basis, lambda};
use crate::error::{LocusError, Result};
use crate::linalg::{c, commutator, max_abs, trace_product, CMatrix, HermitianExp, I};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuotientCoords {
    pub thetas: Vec<f64>,
    pub phis: Vec<f64>,
}

impl QuotientCoords {
    pub fn new(thetas: Vec<f64>, phis: Vec<f64>) -> Result<Self> {
        if thetas.len() != phis.len() || thetas.is_empty() {
            return Err(LocusError::InvalidArgument(format!(
                "need n >= 1 angles of each kind, got {} and {}",
                thetas.len(),
                phis.len()
            )));
        }
        Ok(QuotientCoords { thetas, phis })
    }

    pub fn zeros(n: usize) -> Self {
        QuotientCoords {
            thetas: vec![0.0; n],
            phis: vec![0.0; n],
        }
    }

    pub fn n(&self) -> usize {
        self.thetas.len()
    }

    /// `(θ_1, …, θ_n, φ_1, …, φ_n)`.
    pub fn flat(&self) -> Vec<f64> {
        self.thetas.iter().chain(&self.phis).copied().collect()
    }

    pub fn from_flat(u: &[f64]) -> Self {
        let n = u.len() / 2;
        QuotientCoords {
            thetas: u[..n].to_vec(),
            phis: u[n..].to_vec(),
        }
    }
}

/// `2 cos φ_n sin^{2n−1} φ_n · ∏_{a<n} sin φ_a cos^{2a−1} φ_a`.
pub fn measure_density(coords: &QuotientCoords) -> f64 {
    let n = coords.n();
    let phi_n = coords.phis[n - 1];
    let mut d = 2.0 * phi_n.cos() * phi_n.sin().powi(2 * n as i32 - 1);
    for a in 1..n {
        let p = coords.phis[a - 1];
        d *= p.sin() * p.cos().powi(2 * a as i32 - 1);
    }
    d
}

/// Precomputed generators of one chart dimension `n`.
#[derive(Clone, Debug)]
pub struct QuotientChart {
    n: usize,
    gellmann: Vec<CMatrix>,
    // factor k is exp(i t_k H_k), ordered θ_1, φ_1, θ_2, φ_2, …
    hermitian: Vec<CMatrix>,
    exps: Vec<HermitianExp>,
}

impl QuotientChart {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(LocusError::InvalidArgument("CP^n needs n >= 1".into()));
        }
        let gellmann = gellmann_basis(n + 1);
        let mut hermitian = Vec::with_capacity(2 * n);
        hermitian.push(lambda(&gellmann, 3).clone());
        hermitian.push(lambda(&gellmann, 2).clone());
        for a in 2..=n {
            let eps = (2.0 / (a * (a - 1)) as f64).sqrt();
            hermitian.push(lambda(&gellmann, a * a - 1) * c(1.0 / eps, 0.0));
            hermitian.push(lambda(&gellmann, a * a + 1).clone());
        }
        let exps = hermitian.iter().map(HermitianExp::new).collect();
        Ok(QuotientChart {
            n,
            gellmann,
            hermitian,
            exps,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn gellmann(&self) -> &[CMatrix] {
        &self.gellmann
    }

    fn check(&self, coords: &QuotientCoords) -> Result<()> {
        if coords.n() != self.n || coords.phis.len() != self.n {
            return Err(LocusError::InvalidArgument(format!(
                "chart has n = {}, coordinates have n = {}",
                self.n,
                coords.n()
            )));
        }
        Ok(())
    }

    // Coordinate value driving factor k.
    fn parameter(coords: &QuotientCoords, k: usize) -> f64 {
        if k.is_multiple_of(2) {
            coords.thetas[k / 2]
        } else {
            coords.phis[k / 2]
        }
    }

    // Flat coordinate index of factor k.
    fn coordinate_index(&self, k: usize) -> usize {
        if k.is_multiple_of(2) {
            k / 2
        } else {
            self.n + k / 2
        }
    }

    fn factors(&self, coords: &QuotientCoords) -> Vec<CMatrix> {
        self.exps
            .iter()
            .enumerate()
            .map(|(k, e)| e.exp_i(Self::parameter(coords, k)))
            .collect()
    }

    pub fn quotient_point(&self, coords: &QuotientCoords) -> Result<CMatrix> {
        self.check(coords)?;
        let m = self.n + 1;
        Ok(self
            .factors(coords)
            .iter()
            .fold(CMatrix::identity(m, m), |acc, f| acc * f))
    }

    /// `h⁻¹ ∂h/∂u` for every coordinate `u = θ_1..θ_n, φ_1..φ_n`.
    ///
    /// With `h = F_1 ⋯ F_{2n}`, `F_k = exp(t_k X_k)`, the product rule gives
    /// `h⁻¹ ∂_k h = S_k⁻¹ X_k S_k` where `S_k = F_k ⋯ F_{2n}`.
    pub fn maurer_cartan(&self, coords: &QuotientCoords) -> Result<Vec<CMatrix>> {
        self.check(coords)?;
        let m = self.n + 1;
        let factors = self.factors(coords);
        let count = factors.len();
        let mut suffix = vec![CMatrix::identity(m, m); count + 1];
        for k in (0..count).rev() {
            suffix[k] = &factors[k] * &suffix[k + 1];
        }
        let mut out = vec![CMatrix::zeros(m, m); count];
        for k in 0..count {
            let x = self.hermitian[k].map(|z| I * z);
            out[self.coordinate_index(k)] = suffix[k].adjoint() * x * &suffix[k];
        }
        Ok(out)
    }

    /// `e^l_u = Im ½Tr(j_u λ_{n²+l−1})`, `l = 1..2n`; row `l−1`, column `u`.
    pub fn vielbein(&self, coords: &QuotientCoords) -> Result<DMatrix<f64>> {
        let j = self.maurer_cartan(coords)?;
        let n = self.n;
        Ok(DMatrix::from_fn(2 * n, 2 * n, |l, u| {
            let lam = lambda(&self.gellmann, n * n + l);
            (trace_product(&j[u], lam) * 0.5).im
        }))
    }

    /// `|det e|`, the density of `δ_lm e^l ⊗ e^m` against `dθ dφ`.
    pub fn vielbein_density(&self, coords: &QuotientCoords) -> Result<f64> {
        Ok(self.vielbein(coords)?.determinant().abs())
    }
}

/// `max_u ‖j_u − h⁻¹(h(u+δ) − h(u−δ))/(2δ)‖_max`.
pub fn maurer_cartan_fd_residual(
    chart: &QuotientChart,
    coords: &QuotientCoords,
    step: f64,
) -> Result<f64> {
    let j = chart.maurer_cartan(coords)?;
    let h_inv = chart.quotient_point(coords)?.adjoint();
    let u = coords.flat();
    let mut worst = 0.0f64;
    for (idx, ju) in j.iter().enumerate() {
        let mut plus = u.clone();
        let mut minus = u.clone();
        plus[idx] += step;
        minus[idx] -= step;
        let dh = (chart.quotient_point(&QuotientCoords::from_flat(&plus))?
            - chart.quotient_point(&QuotientCoords::from_flat(&minus))?)
            * c(0.5 / step, 0.0);
        worst = worst.max(max_abs(&(&h_inv * dh - ju)));
    }
    Ok(worst)
}

/// `max_{u<v} ‖∂_u j_v − ∂_v j_u + [j_u, j_v]‖_max` with central differences.
pub fn structure_equation_residual(
    chart: &QuotientChart,
    coords: &QuotientCoords,
    step: f64,
) -> Result<f64> {
    let u = coords.flat();
    let dim = u.len();
    let j = chart.maurer_cartan(coords)?;
    // derivative[w] = ∂_w j (all components)
    let mut derivative = Vec::with_capacity(dim);
    for w in 0..dim {
        let mut plus = u.clone();
        let mut minus = u.clone();
        plus[w] += step;
        minus[w] -= step;
        let jp = chart.maurer_cartan(&QuotientCoords::from_flat(&plus))?;
        let jm = chart.maurer_cartan(&QuotientCoords::from_flat(&minus))?;
        let d: Vec<CMatrix> = jp
            .iter()
            .zip(&jm)
            .map(|(a, b)| (a - b) * c(0.5 / step, 0.0))
            .collect();
        derivative.push(d);
    }
    let mut worst = 0.0f64;
    for a in 0..dim {
        for b in a + 1..dim {
            let r = &derivative[a][b] - &derivative[b][a] + commutator(&j[a], &j[b]);
            worst = worst.max(max_abs(&r));
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{anti_hermitian_residual, trace, unitarity_residual};

    #[test]
    fn identity_at_origin() {
        let chart = QuotientChart::new(3).unwrap();
        let h = chart.quotient_point(&QuotientCoords::zeros(3)).unwrap();
        assert!(max_abs(&(h - CMatrix::identity(4, 4))) < 1e-15);
    }

    #[test]
    fn n1_rotation() {
        let chart = QuotientChart::new(1).unwrap();
        let q = std::f64::consts::FRAC_PI_4;
        let h = chart
            .quotient_point(&QuotientCoords::new(vec![0.0], vec![q]).unwrap())
            .unwrap();
        // e^{iφσ_2} = cos φ + i sin φ σ_2 = [[cos, sin], [−sin, cos]]
        assert!((h[(0, 0)] - c(q.cos(), 0.0)).norm() < 1e-15);
        assert!((h[(0, 1)] - c(q.sin(), 0.0)).norm() < 1e-15);
        assert!((h[(1, 0)] - c(-q.sin(), 0.0)).norm() < 1e-15);
    }

    #[test]
    fn special_unitary_at_random_points() {
        let chart = QuotientChart::new(3).unwrap();
        for k in 0..20 {
            let t = k as f64 * 0.37;
            let coords =
                QuotientCoords::new(vec![t, 1.3 * t, 0.2 - t], vec![0.1 + t, 0.9 * t, 0.4])
                    .unwrap();
            let h = chart.quotient_point(&coords).unwrap();
            assert!(unitarity_residual(&h) < 1e-12);
            assert!((h.determinant() - c(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn maurer_cartan_at_origin_n1() {
        let chart = QuotientChart::new(1).unwrap();
        let j = chart.maurer_cartan(&QuotientCoords::zeros(1)).unwrap();
        let sigma3 = chart.gellmann()[2].map(|z| I * z);
        let sigma2 = chart.gellmann()[1].map(|z| I * z);
        assert!(max_abs(&(&j[0] - sigma3)) < 1e-15);
        assert!(max_abs(&(&j[1] - sigma2)) < 1e-15);
        for x in &j {
            assert!(anti_hermitian_residual(x) < 1e-14);
            assert!(trace(x).norm() < 1e-14);
        }
    }

    #[test]
    fn finite_difference_checks() {
        let chart = QuotientChart::new(2).unwrap();
        let coords = QuotientCoords::new(vec![0.3, 2.1], vec![0.4, 1.0]).unwrap();
        assert!(maurer_cartan_fd_residual(&chart, &coords, 1e-6).unwrap() < 1e-5);
        assert!(structure_equation_residual(&chart, &coords, 1e-5).unwrap() < 1e-4);
    }

    #[test]
    fn density_closed_form_examples() {
        let q = std::f64::consts::FRAC_PI_4;
        let coords = QuotientCoords::new(vec![0.3], vec![q]).unwrap();
        assert!((measure_density(&coords) - 1.0).abs() < 1e-15);
        let edge =
            QuotientCoords::new(vec![0.3, 0.1], vec![0.5, std::f64::consts::FRAC_PI_2]).unwrap();
        assert!(measure_density(&edge).abs() < 1e-15);
    }

    #[test]
    fn vielbein_density_n1() {
        let chart = QuotientChart::new(1).unwrap();
        for &phi in &[0.2, 0.7, 1.3] {
            let coords = QuotientCoords::new(vec![0.4], vec![phi]).unwrap();
            let d = chart.vielbein_density(&coords).unwrap();
            assert!((d - 2.0 * phi.cos() * phi.sin()).abs() < 1e-12);
        }
    }

    #[test]
    fn vielbein_degenerates_at_locus() {
        let chart = QuotientChart::new(2).unwrap();
        let coords =
            QuotientCoords::new(vec![0.4, 1.1], vec![0.6, std::f64::consts::FRAC_PI_2]).unwrap();
        assert!(chart.vielbein_density(&coords).unwrap() < 1e-12);
    }
}
