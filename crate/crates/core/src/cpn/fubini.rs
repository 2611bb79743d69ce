//! Fubini-Study metric on `CPⁿ` in the affine chart `ζ_0 ≠ 0` and in the
//! angular coordinates `z_i = tan ξ · R_i e^{iψ_i}`.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{LocusError, Result};
use crate::quadrature::integrate;
use crate::tolerances;

/// `g_{ij̄} = δ_ij/(1+|z|²) − z̄_i z_j/(1+|z|²)²`.
pub fn fs_metric_affine(z: &[Complex64]) -> DMatrix<Complex64> {
    let n = z.len();
    let s = 1.0 + z.iter().map(|w| w.norm_sqr()).sum::<f64>();
    DMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 / s } else { 0.0 };
        Complex64::new(delta, 0.0) - z[i].conj() * z[j] / (s * s)
    })
}

/// `ds² = Σ g_{ij̄} dz_i dz̄_j`.
pub fn fs_line_element(z: &[Complex64], dz: &[Complex64]) -> f64 {
    let g = fs_metric_affine(z);
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..z.len() {
        for j in 0..z.len() {
            acc += g[(i, j)] * dz[i] * dz[j].conj();
        }
    }
    acc.re
}

/// `K = ½ log(1 + |z|²)`.
pub fn kahler_potential(z: &[Complex64]) -> f64 {
    0.5 * (1.0 + z.iter().map(|w| w.norm_sqr()).sum::<f64>()).ln()
}

/// `2 ∂²K/∂z_i∂z̄_j` by central differences in the real coordinates.
pub fn fs_metric_from_potential(z: &[Complex64], step: f64) -> DMatrix<Complex64> {
    let n = z.len();
    // real coordinate r = 2i + {0: x, 1: y}
    let eval = |shifts: &[(usize, f64)]| {
        let mut w = z.to_vec();
        for &(r, h) in shifts {
            if r % 2 == 0 {
                w[r / 2].re += h;
            } else {
                w[r / 2].im += h;
            }
        }
        kahler_potential(&w)
    };
    let second = |a: usize, b: usize| {
        let h = step;
        (eval(&[(a, h), (b, h)]) - eval(&[(a, h), (b, -h)]) - eval(&[(a, -h), (b, h)])
            + eval(&[(a, -h), (b, -h)]))
            / (4.0 * h * h)
    };
    DMatrix::from_fn(n, n, |i, j| {
        let (xi, yi, xj, yj) = (2 * i, 2 * i + 1, 2 * j, 2 * j + 1);
        // ∂_{z_i}∂_{z̄_j} = ¼(∂x_i − i∂y_i)(∂x_j + i∂y_j)
        let re = second(xi, xj) + second(yi, yj);
        let im = second(xi, yj) - second(yi, xj);
        Complex64::new(re, im) * 0.5
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularCoords {
    pub xi: f64,
    pub r: Vec<f64>,
    pub psi: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AngularVelocity {
    pub dxi: f64,
    pub dr: Vec<f64>,
    pub dpsi: Vec<f64>,
}

impl AngularCoords {
    pub fn from_affine(z: &[Complex64]) -> Result<Self> {
        let t = z.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
        if t == 0.0 {
            return Err(LocusError::ChartBoundary("z = 0 has no direction".into()));
        }
        Ok(AngularCoords {
            xi: t.atan(),
            r: z.iter().map(|w| w.norm() / t).collect(),
            psi: z
                .iter()
                .map(|w| w.arg().rem_euclid(std::f64::consts::TAU))
                .collect(),
        })
    }

    pub fn to_affine(&self) -> Vec<Complex64> {
        let t = self.xi.tan();
        self.r
            .iter()
            .zip(&self.psi)
            .map(|(&r, &p)| Complex64::from_polar(t * r, p))
            .collect()
    }

    fn validate(&self) -> Result<()> {
        if !(0.0..std::f64::consts::FRAC_PI_2).contains(&self.xi) {
            return Err(LocusError::ChartBoundary(format!(
                "xi = {} outside [0, pi/2)",
                self.xi
            )));
        }
        let norm: f64 = self.r.iter().map(|r| r * r).sum();
        if (norm - 1.0).abs() > 1e-12 || self.r.len() != self.psi.len() {
            return Err(LocusError::InvalidArgument(
                "R must be a unit vector matching psi".into(),
            ));
        }
        Ok(())
    }

    /// `dz_i = e^{iψ_i}(sec²ξ R_i dξ + tan ξ dR_i + i tan ξ R_i dψ_i)`.
    pub fn pushforward(&self, v: &AngularVelocity) -> Vec<Complex64> {
        let t = self.xi.tan();
        let sec2 = 1.0 + t * t;
        (0..self.r.len())
            .map(|i| {
                let inner = Complex64::new(
                    sec2 * self.r[i] * v.dxi + t * v.dr[i],
                    t * self.r[i] * v.dpsi[i],
                );
                Complex64::from_polar(1.0, self.psi[i]) * inner
            })
            .collect()
    }
}

/// `ds² = dξ² + sin²ξ [Σ dR² + Σ R² dψ²] − sin⁴ξ [Σ R² dψ]²`.
pub fn fs_metric_angular(a: &AngularCoords, v: &AngularVelocity) -> Result<f64> {
    a.validate()?;
    let tangency: f64 = a.r.iter().zip(&v.dr).map(|(r, d)| r * d).sum();
    if tangency.abs() > 1e-10 {
        return Err(LocusError::InvalidArgument(
            "dR must be tangent to the unit sphere".into(),
        ));
    }
    let s2 = a.xi.sin().powi(2);
    let dr2: f64 = v.dr.iter().map(|d| d * d).sum();
    let rdpsi2: f64 = a.r.iter().zip(&v.dpsi).map(|(r, p)| r * r * p * p).sum();
    let rdpsi: f64 = a.r.iter().zip(&v.dpsi).map(|(r, p)| r * r * p).sum();
    Ok(v.dxi * v.dxi + s2 * (dr2 + rdpsi2) - s2 * s2 * rdpsi * rdpsi)
}

/// `|fs_metric_angular − fs_line_element ∘ pushforward|`.
pub fn pullback_residual(a: &AngularCoords, v: &AngularVelocity) -> Result<f64> {
    let angular = fs_metric_angular(a, v)?;
    let affine = fs_line_element(&a.to_affine(), &a.pushforward(v));
    Ok((angular - affine).abs())
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct BandMass {
    pub n: u32,
    pub eps: f64,
    /// `cos^{2n}ε / (2n)`.
    pub closed_form: f64,
    /// `∫_0^{π/2−ε} cos φ sin^{2n−1} φ dφ`.
    pub quadrature: f64,
    /// `1 − cos^{2n}ε`.
    pub normalized_complement: f64,
}

pub fn band_mass(n: u32, eps: f64) -> Result<BandMass> {
    if n == 0 {
        return Err(LocusError::InvalidArgument("n must be >= 1".into()));
    }
    if !(0.0..=std::f64::consts::FRAC_PI_2).contains(&eps) {
        return Err(LocusError::OutOfRange {
            name: "eps",
            value: eps,
            range: "[0, pi/2]",
        });
    }
    let tail = eps.cos().powi(2 * n as i32);
    let closed_form = tail / (2.0 * n as f64);
    let upper = (std::f64::consts::FRAC_PI_2 - eps).max(0.0);
    let quadrature = integrate(
        |p| p.cos() * p.sin().powi(2 * n as i32 - 1),
        0.0,
        upper,
        1e-15,
        1e-13,
    )?;
    let residual = (quadrature - closed_form).abs();
    if residual > tolerances::BAND_QUADRATURE {
        return Err(LocusError::QuadratureMismatch { residual });
    }
    Ok(BandMass {
        n,
        eps,
        closed_form,
        quadrature,
        normalized_complement: 1.0 - tail,
    })
}

/// Limit `ξ → π/2` of a point: `(0 : R_1e^{iψ_1} : … : R_ne^{iψ_n})`.
/// Takes homogeneous coordinates `(ζ_0, …, ζ_n)`; points with `ζ_0 = 0` are
/// only normalized.
pub fn locus_projection(zeta: &[Complex64]) -> Result<Vec<Complex64>> {
    let tail_norm = zeta[1..].iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    if tail_norm == 0.0 {
        return Err(LocusError::ChartBoundary(
            "base point has no direction at infinity".into(),
        ));
    }
    let mut out = Vec::with_capacity(zeta.len());
    out.push(Complex64::new(0.0, 0.0));
    out.extend(zeta[1..].iter().map(|w| w / tail_norm));
    Ok(out)
}

/// Homogeneous representative `(1, z)` of an affine point.
pub fn homogeneous(z: &[Complex64]) -> Vec<Complex64> {
    std::iter::once(Complex64::new(1.0, 0.0))
        .chain(z.iter().copied())
        .collect()
}

/// Fubini-Study distance `arccos(|⟨p, q⟩| / (|p||q|))`.
pub fn fs_distance(p: &[Complex64], q: &[Complex64]) -> f64 {
    let inner: Complex64 = p.iter().zip(q).map(|(a, b)| a.conj() * b).sum();
    let np = p.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    let nq = q.iter().map(|w| w.norm_sqr()).sum::<f64>().sqrt();
    (inner.norm() / (np * nq)).clamp(0.0, 1.0).acos()
}
