//! Generalized Gell-Mann matrices.
//!
//! Built row by row: when row `a+1` is added (`a = 1..m−1`), the pairs
//! `(j, a+1)` for `j = 1..a` contribute
//! `λ_{a²+2j−2} = E_{j,a+1} + E_{a+1,j}` and
//! `λ_{a²+2j−1} = −i(E_{j,a+1} − E_{a+1,j})`, followed by the diagonal
//! `λ_{(a+1)²−1} = √(2/(a(a+1))) diag(1, …, 1, −a, 0, …)`.
//! The first `n²−1` matrices then span `su(n)` in the upper-left block and the
//! diagonal ones span the Cartan subalgebra.

use crate::linalg::{c, CMatrix};

/// `λ_1 … λ_{m²−1}`; entry `I−1` of the returned vector is `λ_I`.
pub fn gellmann_basis(m: usize) -> Vec<CMatrix> {
    assert!(m >= 2, "gellmann_basis needs m >= 2");
    let mut out = Vec::with_capacity(m * m - 1);
    for a in 1..m {
        for j in 0..a {
            let mut sym = CMatrix::zeros(m, m);
            sym[(j, a)] = c(1.0, 0.0);
            sym[(a, j)] = c(1.0, 0.0);
            out.push(sym);
            let mut anti = CMatrix::zeros(m, m);
            anti[(j, a)] = c(0.0, -1.0);
            anti[(a, j)] = c(0.0, 1.0);
            out.push(anti);
        }
        let af = a as f64;
        let norm = (2.0 / (af * (af + 1.0))).sqrt();
        let mut diag = CMatrix::zeros(m, m);
        for d in 0..a {
            diag[(d, d)] = c(norm, 0.0);
        }
        diag[(a, a)] = c(-af * norm, 0.0);
        out.push(diag);
    }
    out
}

/// `λ_I` with the one-based label.
pub fn lambda(basis: &[CMatrix], index: usize) -> &CMatrix {
    &basis[index - 1]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{max_abs, trace, trace_product};

    #[test]
    fn pauli_base_case() {
        let b = gellmann_basis(2);
        assert_eq!(b.len(), 3);
        assert_eq!(b[0][(0, 1)], c(1.0, 0.0));
        assert_eq!(b[1][(0, 1)], c(0.0, -1.0));
        assert_eq!(b[1][(1, 0)], c(0.0, 1.0));
        assert_eq!(b[2][(0, 0)], c(1.0, 0.0));
        assert_eq!(b[2][(1, 1)], c(-1.0, 0.0));
    }

    #[test]
    fn trace_orthonormal_and_hermitian() {
        for m in 2..6 {
            let b = gellmann_basis(m);
            for (i, x) in b.iter().enumerate() {
                assert!(max_abs(&(x.adjoint() - x)) < 1e-15);
                assert!(trace(x).norm() < 1e-14);
                for (j, y) in b.iter().enumerate() {
                    let target = if i == j { 2.0 } else { 0.0 };
                    assert!((trace_product(x, y) - c(target, 0.0)).norm() < 1e-14);
                }
            }
        }
    }

    #[test]
    fn su3_ordering() {
        let b = gellmann_basis(3);
        for idx in [3, 8] {
            let l = lambda(&b, idx);
            assert!((0..3).all(|i| (0..3).all(|j| i == j || l[(i, j)].norm() == 0.0)));
        }
        // λ_1..λ_3 live in the upper-left 2×2 block
        for idx in 1..=3 {
            let l = lambda(&b, idx);
            assert!((0..3).all(|k| l[(2, k)].norm() == 0.0 && l[(k, 2)].norm() == 0.0));
        }
        let l8 = lambda(&b, 8);
        assert!((l8[(2, 2)].re + 2.0 / 3f64.sqrt()).abs() < 1e-15);
    }
}
