//! Structure constants `[T_i, T_j] = Σ_k c_{ij}^k T_k` of an orthonormal basis.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::basis::LieAlgebraBasis;
use crate::error::Result;
use crate::tolerances;

#[derive(Clone, Debug)]
pub struct StructureTensor {
    dim: usize,
    entries: BTreeMap<(usize, usize, usize), f64>,
    dense: Vec<f64>,
    // i -> [(j, k, c_ij^k)]
    rows: Vec<Vec<(usize, usize, f64)>>,
}

type Sparse = Vec<(usize, usize, Complex64)>;

fn sparse(m: &crate::linalg::CMatrix) -> Sparse {
    let mut out = Vec::new();
    for i in 0..m.nrows() {
        for j in 0..m.ncols() {
            if m[(i, j)].norm() > 0.0 {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

impl StructureTensor {
    /// Builds a tensor from explicit entries; `(i, j, k) ↦ c_{ij}^k` and the
    /// antisymmetric partner `(j, i, k)` is filled in.
    pub fn from_entries(dim: usize, entries: &[((usize, usize, usize), f64)]) -> Self {
        let mut map = BTreeMap::new();
        for &((i, j, k), v) in entries {
            if i == j || v.abs() <= tolerances::STRUCTURE_ZERO {
                continue;
            }
            map.insert((i, j, k), v);
            map.insert((j, i, k), -v);
        }
        Self::from_map(dim, map)
    }

    fn from_map(dim: usize, entries: BTreeMap<(usize, usize, usize), f64>) -> Self {
        let mut dense = vec![0.0; dim * dim * dim];
        let mut rows = vec![Vec::new(); dim];
        for (&(i, j, k), &v) in &entries {
            dense[(i * dim + j) * dim + k] = v;
            rows[i].push((j, k, v));
        }
        StructureTensor {
            dim,
            entries,
            dense,
            rows,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn entries(&self) -> &BTreeMap<(usize, usize, usize), f64> {
        &self.entries
    }

    pub fn nonzero_count(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> f64 {
        self.dense[(i * self.dim + j) * self.dim + k]
    }

    /// Non-zero `(j, k, c_{ij}^k)` for fixed `i`.
    pub fn row(&self, i: usize) -> &[(usize, usize, f64)] {
        &self.rows[i]
    }

    /// Adjoint matrix `(ad_i)_{kj} = c_{ij}^k`.
    pub fn adjoint(&self, i: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(self.dim, self.dim);
        for &(j, k, v) in self.row(i) {
            m[(k, j)] = v;
        }
        m
    }

    /// `max |c_{ij}^k + c_{ik}^j|`: total antisymmetry after lowering with δ.
    pub fn total_antisymmetry_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (&(i, j, k), &v) in &self.entries {
            worst = worst.max((v + self.get(i, k, j)).abs());
        }
        worst
    }

    pub fn jacobi_at(&self, i: usize, j: usize, k: usize, l: usize) -> f64 {
        (0..self.dim)
            .map(|m| {
                self.get(i, j, m) * self.get(m, k, l)
                    + self.get(j, k, m) * self.get(m, i, l)
                    + self.get(k, i, m) * self.get(m, j, l)
            })
            .sum()
    }

    /// Largest Jacobi residual over `samples` random index quadruples.
    pub fn jacobi_residual(&self, samples: usize, seed: u64) -> f64 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let d = self.dim;
        (0..samples)
            .map(|_| {
                let idx: [usize; 4] = std::array::from_fn(|_| rng.random_range(0..d));
                self.jacobi_at(idx[0], idx[1], idx[2], idx[3]).abs()
            })
            .fold(0.0, f64::max)
    }
}

/// `c_{ij}^k = −½ Tr([T_i, T_j] T_k)`, entries below the zero threshold dropped.
pub fn structure_constants(basis: &LieAlgebraBasis) -> Result<StructureTensor> {
    basis.check_orthonormal()?;
    let dim = basis.dim();
    let size = basis.matrix_size();
    let elements: Vec<Sparse> = basis.elements.iter().map(sparse).collect();
    let mut map = BTreeMap::new();
    let mut bracket = vec![Complex64::new(0.0, 0.0); size * size];
    for i in 0..dim {
        for j in i + 1..dim {
            bracket
                .iter_mut()
                .for_each(|z| *z = Complex64::new(0.0, 0.0));
            for &(a, b, v) in &elements[i] {
                for &(b2, d, w) in &elements[j] {
                    if b == b2 {
                        bracket[a * size + d] += v * w;
                    }
                }
            }
            for &(a, b, v) in &elements[j] {
                for &(b2, d, w) in &elements[i] {
                    if b == b2 {
                        bracket[a * size + d] -= v * w;
                    }
                }
            }
            for (k, tk) in elements.iter().enumerate() {
                let tr: Complex64 = tk.iter().map(|&(a, b, v)| bracket[b * size + a] * v).sum();
                let value = -0.5 * tr.re;
                if value.abs() > tolerances::STRUCTURE_ZERO {
                    map.insert((i, j, k), value);
                    map.insert((j, i, k), -value);
                }
            }
        }
    }
    Ok(StructureTensor::from_map(dim, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::basis::build_basis;
    use crate::series::MatrixGroup;

    fn tensor(g: MatrixGroup) -> (LieAlgebraBasis, StructureTensor) {
        let b = build_basis(g).unwrap();
        let st = structure_constants(&b).unwrap();
        (b, st)
    }

    #[test]
    fn su2_constants() {
        let (b, st) = tensor(MatrixGroup::su(2).unwrap());
        let h = b.index_of("H_1").unwrap();
        let s = b.index_of("S_1,2").unwrap();
        let a = b.index_of("A_1,2").unwrap();
        assert!((st.get(h, a, s) - 2.0).abs() < 1e-14);
        assert!((st.get(h, s, a) + 2.0).abs() < 1e-14);
        assert!((st.get(s, a, h) + 2.0).abs() < 1e-14);
    }

    #[test]
    fn so_constants() {
        let (b, st) = tensor(MatrixGroup::so(5).unwrap());
        for j in 3..=5 {
            let a12 = b.index_of("A_1,2").unwrap();
            let a1j = b.index_of(&format!("A_1,{j}")).unwrap();
            let a2j = b.index_of(&format!("A_2,{j}")).unwrap();
            assert!((st.get(a12, a1j, a2j) + 1.0).abs() < 1e-14);
            assert!((st.get(a12, a2j, a1j) - 1.0).abs() < 1e-14);
        }
    }

    #[test]
    fn usp_constant() {
        let (b, st) = tensor(MatrixGroup::usp(3).unwrap());
        let h = b.index_of("H_1").unwrap();
        let t = b.index_of("T_1").unwrap();
        let u = b.index_of("U_1").unwrap();
        assert!((st.get(h, t, u) + 2.0).abs() < 1e-14);
    }

    #[test]
    fn antisymmetry_and_jacobi() {
        for g in [
            MatrixGroup::su(4).unwrap(),
            MatrixGroup::so(6).unwrap(),
            MatrixGroup::usp(2).unwrap(),
        ] {
            let (_, st) = tensor(g);
            assert!(st.total_antisymmetry_residual() < 1e-10, "{g}");
            assert!(st.jacobi_residual(2000, 3) < 1e-9, "{g}");
        }
    }

    #[test]
    fn rejects_non_orthonormal() {
        let mut b = build_basis(MatrixGroup::su(2).unwrap()).unwrap();
        b.elements[0] *= Complex64::new(2.0, 0.0);
        assert!(structure_constants(&b).is_err());
    }

    #[test]
    fn adjoint_layout() {
        let (b, st) = tensor(MatrixGroup::su(2).unwrap());
        let h = b.index_of("H_1").unwrap();
        let s = b.index_of("S_1,2").unwrap();
        let a = b.index_of("A_1,2").unwrap();
        let ad = st.adjoint(h);
        assert_eq!(ad[(s, a)], st.get(h, a, s));
    }
}
