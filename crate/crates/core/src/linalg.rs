//! Small dense complex linear algebra on top of nalgebra.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;

pub const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Elementary matrix `E_{ij}` (zero-based).
pub fn elementary(size: usize, i: usize, j: usize) -> CMatrix {
    let mut m = CMatrix::zeros(size, size);
    m[(i, j)] = c(1.0, 0.0);
    m
}

pub fn commutator(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a * b - b * a
}

pub fn trace(a: &CMatrix) -> Complex64 {
    a.diagonal().iter().sum()
}

/// `Tr(AB)` without forming the product.
pub fn trace_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = c(0.0, 0.0);
    for i in 0..n {
        for k in 0..n {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// The bi-invariant inner product `−½ Re Tr(AB)`.
pub fn killing_inner(a: &CMatrix, b: &CMatrix) -> f64 {
    -0.5 * trace_product(a, b).re
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

pub fn max_abs_real(a: &DMatrix<f64>) -> f64 {
    a.iter().map(|z| z.abs()).fold(0.0, f64::max)
}

/// `‖A†A − I‖_max`.
pub fn unitarity_residual(a: &CMatrix) -> f64 {
    let n = a.nrows();
    max_abs(&(a.adjoint() * a - CMatrix::identity(n, n)))
}

/// `‖A† + A‖_max`.
pub fn anti_hermitian_residual(a: &CMatrix) -> f64 {
    max_abs(&(a.adjoint() + a))
}

/// Spectral data of a hermitian `H` for repeated evaluation of `exp(i t H)`.
#[derive(Clone, Debug)]
pub struct HermitianExp {
    vectors: CMatrix,
    values: Vec<f64>,
}

impl HermitianExp {
    pub fn new(h: &CMatrix) -> Self {
        let eig = SymmetricEigen::new(h.clone());
        HermitianExp {
            vectors: eig.eigenvectors,
            values: eig.eigenvalues.iter().copied().collect(),
        }
    }

    /// `exp(i t H) = V diag(e^{i t λ}) V†`.
    pub fn exp_i(&self, t: f64) -> CMatrix {
        let mut scaled = self.vectors.clone();
        for (j, &lambda) in self.values.iter().enumerate() {
            let phase = Complex64::from_polar(1.0, t * lambda);
            scaled.column_mut(j).iter_mut().for_each(|z| *z *= phase);
        }
        scaled * self.vectors.adjoint()
    }
}

/// `exp(X)` for anti-hermitian `X`, via the eigendecomposition of `−iX`.
pub fn expm_anti_hermitian(x: &CMatrix) -> CMatrix {
    let h = x.map(|z| -I * z);
    // symmetrize away rounding so the solver sees an exactly hermitian input
    let h = (&h + h.adjoint()) * c(0.5, 0.0);
    HermitianExp::new(&h).exp_i(1.0)
}
