//! Killing form, the constant χ, and the Riemann and Ricci tensors of the
//! bi-invariant metric `−½ Tr(XY)`.

use nalgebra::{DMatrix, SymmetricEigen};
use serde::Serialize;

use super::basis::{build_basis, LieAlgebraBasis};
use super::structure::{structure_constants, StructureTensor};
use crate::error::{LocusError, Result};
use crate::linalg::{c, expm_anti_hermitian, CMatrix};
use crate::series::MatrixGroup;
use crate::tolerances;

/// `K_ij = Σ_{s,t} c_{is}^t c_{jt}^s`, summed over the sparse rows.
pub fn killing_route_a(st: &StructureTensor) -> DMatrix<f64> {
    let d = st.dim();
    let mut k = DMatrix::zeros(d, d);
    for i in 0..d {
        for j in 0..d {
            k[(i, j)] = st.row(i).iter().map(|&(s, t, v)| v * st.get(j, t, s)).sum();
        }
    }
    k
}

/// `K_ij = Tr(ad_i ad_j)` with dense adjoint matrices.
pub fn killing_route_b(st: &StructureTensor) -> DMatrix<f64> {
    let d = st.dim();
    // Tr(ad_i ad_j) = <vec(ad_i), vec(ad_jᵀ)>
    let mut flat = DMatrix::zeros(d, d * d);
    let mut flat_t = DMatrix::zeros(d, d * d);
    for i in 0..d {
        let ad = st.adjoint(i);
        let adt = ad.transpose();
        flat.row_mut(i).copy_from_slice(ad.as_slice());
        flat_t.row_mut(i).copy_from_slice(adt.as_slice());
    }
    &flat * flat_t.transpose()
}

pub fn killing_form(st: &StructureTensor) -> Result<DMatrix<f64>> {
    let a = killing_route_a(st);
    let b = killing_route_b(st);
    let residual = (&a - &b).amax();
    if residual > tolerances::KILLING_ROUTES {
        return Err(LocusError::KillingRouteMismatch { residual });
    }
    Ok(a)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Chi {
    /// `−½ Tr(ad_{T_1}²)`.
    pub chi: f64,
    /// `χ'` with `K = −χ' I`.
    pub chi_prime: f64,
    /// `max |K + χ' I|`.
    pub spread: f64,
}

pub fn chi_coefficient(st: &StructureTensor) -> Result<Chi> {
    let k = killing_form(st)?;
    chi_from_killing(&k)
}

fn chi_from_killing(k: &DMatrix<f64>) -> Result<Chi> {
    let d = k.nrows();
    let chi = -0.5 * k[(0, 0)];
    let chi_prime = -k.diagonal().mean();
    let spread = (k + DMatrix::identity(d, d) * chi_prime).amax();
    if spread > tolerances::KILLING_SYMMETRY * chi_prime.abs().max(1.0) {
        return Err(LocusError::KillingNotScalar { spread });
    }
    Ok(Chi {
        chi,
        chi_prime,
        spread,
    })
}

/// Riemann tensor evaluated on demand:
/// `R^k_{jlm} = ¼ Σ_s c_{lm}^s c_{js}^k`.
pub struct RiemannTensor<'a> {
    st: &'a StructureTensor,
}

pub fn riemann_tensor(st: &StructureTensor) -> RiemannTensor<'_> {
    RiemannTensor { st }
}

impl RiemannTensor<'_> {
    pub fn dim(&self) -> usize {
        self.st.dim()
    }

    pub fn component(&self, k: usize, j: usize, l: usize, m: usize) -> f64 {
        0.25 * self
            .st
            .row(l)
            .iter()
            .filter(|&&(mm, _, _)| mm == m)
            .map(|&(_, s, v)| v * self.st.get(j, s, k))
            .sum::<f64>()
    }

    /// `Ric_{jm} = Σ_k R^k_{jkm}`.
    pub fn ricci(&self) -> DMatrix<f64> {
        let d = self.dim();
        let st = self.st;
        let mut ric = DMatrix::zeros(d, d);
        for k in 0..d {
            for &(m, s, v) in st.row(k) {
                // v = c_{km}^s
                for j in 0..d {
                    ric[(j, m)] += 0.25 * v * st.get(j, s, k);
                }
            }
        }
        ric
    }
}

/// Ricci by contraction, checked against `−¼ K`.
pub fn ricci_tensor(st: &StructureTensor) -> Result<DMatrix<f64>> {
    let ric = riemann_tensor(st).ricci();
    let k = killing_form(st)?;
    let residual = (&ric + k * 0.25).amax();
    if residual > tolerances::RICCI_KILLING {
        return Err(LocusError::RicciMismatch { residual });
    }
    Ok(ric)
}

/// Tabulated χ per family: `n+2` for `su(n)`, `m−2` for `so(m)`, `2n+2` for
/// `usp(2n)`.
pub fn tabulated_chi(group: MatrixGroup) -> f64 {
    match group {
        MatrixGroup::SpecialUnitary(m) => m as f64 + 2.0,
        MatrixGroup::SpecialOrthogonal(m) => m as f64 - 2.0,
        MatrixGroup::UnitarySymplectic(n) => 2.0 * n as f64 + 2.0,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CurvatureReport {
    pub group: String,
    pub dim: usize,
    pub chi: f64,
    pub chi_prime: f64,
    pub tabulated_chi: f64,
    pub chi_matches_tabulated: bool,
    /// Smallest eigenvalue of the Ricci matrix.
    pub ricci_lower_bound: f64,
    pub killing_route_residual: f64,
    pub ricci_killing_residual: f64,
    pub killing_symmetry_residual: f64,
    pub total_antisymmetry_residual: f64,
    pub jacobi_residual: f64,
    pub basis_residual: f64,
    #[serde(serialize_with = "ser_matrix")]
    pub killing_matrix: DMatrix<f64>,
    #[serde(serialize_with = "ser_matrix")]
    pub ricci_matrix: DMatrix<f64>,
}

fn ser_matrix<S: serde::Serializer>(
    m: &DMatrix<f64>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<f64>> = m.row_iter().map(|r| r.iter().copied().collect()).collect();
    rows.serialize(s)
}

pub const JACOBI_SAMPLES: usize = 10_000;

impl CurvatureReport {
    pub fn compute(group: MatrixGroup) -> Result<Self> {
        let basis = build_basis(group)?;
        Self::from_basis(&basis)
    }

    pub fn from_basis(basis: &LieAlgebraBasis) -> Result<Self> {
        let st = structure_constants(basis)?;
        let a = killing_route_a(&st);
        let b = killing_route_b(&st);
        let route = (&a - &b).amax();
        if route > tolerances::KILLING_ROUTES {
            return Err(LocusError::KillingRouteMismatch { residual: route });
        }
        let chi = chi_from_killing(&a)?;
        let ricci = riemann_tensor(&st).ricci();
        let ricci_residual = (&ricci + &a * 0.25).amax();
        if ricci_residual > tolerances::RICCI_KILLING {
            return Err(LocusError::RicciMismatch {
                residual: ricci_residual,
            });
        }
        let sym = SymmetricEigen::new((&ricci + ricci.transpose()) * 0.5);
        let tab = tabulated_chi(basis.group);
        Ok(CurvatureReport {
            group: basis.group.name(),
            dim: st.dim(),
            chi: chi.chi,
            chi_prime: chi.chi_prime,
            tabulated_chi: tab,
            chi_matches_tabulated: (chi.chi - tab).abs() < 1e-9,
            ricci_lower_bound: sym.eigenvalues.min(),
            killing_route_residual: route,
            ricci_killing_residual: ricci_residual,
            killing_symmetry_residual: (&a - a.transpose()).amax(),
            total_antisymmetry_residual: st.total_antisymmetry_residual(),
            jacobi_residual: st.jacobi_residual(JACOBI_SAMPLES, 0x5eed),
            basis_residual: basis.residuals().max(),
            killing_matrix: a,
            ricci_matrix: ricci,
        })
    }
}

/// Length of the orbit `θ ↦ exp(θX)`, `θ ∈ [0, 2π]`, measured by chords in
/// the norm `√(½ Tr(Δ†Δ))`.
pub fn orbit_length(generator: &CMatrix, steps: usize) -> f64 {
    let h = std::f64::consts::TAU / steps as f64;
    let step = expm_anti_hermitian(&(generator * c(h, 0.0)));
    let mut g = CMatrix::identity(generator.nrows(), generator.nrows());
    let mut total = 0.0;
    for _ in 0..steps {
        let next = &g * &step;
        let delta = &next - &g;
        total += (0.5 * delta.iter().map(|z| z.norm_sqr()).sum::<f64>()).sqrt();
        g = next;
    }
    total
}
