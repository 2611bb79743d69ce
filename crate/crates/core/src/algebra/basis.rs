//! Orthonormal bases of `su(n)`, `so(m)` and `usp(2n)` in the defining
//! representation, normalized by `−½ Tr(T_i T_j) = δ_ij`.

use num_complex::Complex64;

use crate::error::{LocusError, Result};
use crate::linalg::{anti_hermitian_residual, c, killing_inner, trace, CMatrix};
use crate::series::MatrixGroup;
use crate::tolerances;

#[derive(Clone, Debug)]
pub struct LieAlgebraBasis {
    pub group: MatrixGroup,
    pub elements: Vec<CMatrix>,
    pub labels: Vec<String>,
}

struct Builder {
    size: usize,
    elements: Vec<CMatrix>,
    labels: Vec<String>,
}

impl Builder {
    fn new(size: usize) -> Self {
        Builder {
            size,
            elements: Vec::new(),
            labels: Vec::new(),
        }
    }

    /// Pushes `scale · Σ sign·E_{ij}` (zero-based indices).
    fn push(&mut self, label: String, scale: Complex64, terms: &[(usize, usize, f64)]) {
        let mut m = CMatrix::zeros(self.size, self.size);
        for &(i, j, sign) in terms {
            m[(i, j)] += scale * sign;
        }
        self.elements.push(m);
        self.labels.push(label);
    }
}

pub fn build_basis(group: MatrixGroup) -> Result<LieAlgebraBasis> {
    let group = match group {
        MatrixGroup::SpecialUnitary(m) => MatrixGroup::su(m)?,
        MatrixGroup::SpecialOrthogonal(m) => MatrixGroup::so(m)?,
        MatrixGroup::UnitarySymplectic(n) => MatrixGroup::usp(n)?,
    };
    let b = match group {
        MatrixGroup::SpecialUnitary(m) => unitary(m),
        MatrixGroup::SpecialOrthogonal(m) => orthogonal(m),
        MatrixGroup::UnitarySymplectic(n) => symplectic(n),
    };
    Ok(LieAlgebraBasis {
        group,
        elements: b.elements,
        labels: b.labels,
    })
}

fn unitary(m: usize) -> Builder {
    let mut b = Builder::new(m);
    let i = c(0.0, 1.0);
    for k in 1..m {
        let kf = k as f64;
        let scale = i * (2.0f64.sqrt() / (kf * kf + kf).sqrt());
        let mut terms: Vec<(usize, usize, f64)> = (0..k).map(|d| (d, d, 1.0)).collect();
        terms.push((k, k, -kf));
        b.push(format!("H_{k}"), scale, &terms);
    }
    for k in 0..m {
        for j in k + 1..m {
            b.push(
                format!("S_{},{}", k + 1, j + 1),
                i,
                &[(k, j, 1.0), (j, k, 1.0)],
            );
            b.push(
                format!("A_{},{}", k + 1, j + 1),
                c(1.0, 0.0),
                &[(k, j, 1.0), (j, k, -1.0)],
            );
        }
    }
    b
}

fn orthogonal(m: usize) -> Builder {
    let mut b = Builder::new(m);
    for k in 0..m {
        for j in k + 1..m {
            b.push(
                format!("A_{},{}", k + 1, j + 1),
                c(1.0, 0.0),
                &[(k, j, 1.0), (j, k, -1.0)],
            );
        }
    }
    b
}

fn symplectic(n: usize) -> Builder {
    let mut b = Builder::new(2 * n);
    let i = c(0.0, 1.0);
    let one = c(1.0, 0.0);
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|p| (p + 1..n).map(move |q| (p, q)))
        .collect();
    let tag = |name: &str, p: usize, q: usize| format!("{name}_{},{}", p + 1, q + 1);

    for a in 0..n {
        b.push(
            format!("H_{}", a + 1),
            i,
            &[(a, a, 1.0), (a + n, a + n, -1.0)],
        );
    }
    for &(p, q) in &pairs {
        let terms = [
            (p, q, 1.0),
            (q, p, 1.0),
            (p + n, q + n, -1.0),
            (q + n, p + n, -1.0),
        ];
        b.push(tag("Sd", p, q), i * r, &terms);
    }
    for &(p, q) in &pairs {
        let terms = [
            (p, q, 1.0),
            (q, p, -1.0),
            (p + n, q + n, 1.0),
            (q + n, p + n, -1.0),
        ];
        b.push(tag("Ad", p, q), one * r, &terms);
    }
    for a in 0..n {
        b.push(
            format!("T_{}", a + 1),
            i,
            &[(a, a + n, 1.0), (a + n, a, 1.0)],
        );
    }
    for &(p, q) in &pairs {
        let terms = [
            (p, q + n, 1.0),
            (q, p + n, 1.0),
            (p + n, q, 1.0),
            (q + n, p, 1.0),
        ];
        b.push(tag("Sa", p, q), i * r, &terms);
    }
    for a in 0..n {
        b.push(
            format!("U_{}", a + 1),
            one,
            &[(a, a + n, 1.0), (a + n, a, -1.0)],
        );
    }
    for &(p, q) in &pairs {
        let terms = [
            (p, q + n, 1.0),
            (q, p + n, 1.0),
            (p + n, q, -1.0),
            (q + n, p, -1.0),
        ];
        b.push(tag("Aa", p, q), one * r, &terms);
    }
    b
}

/// Residuals of the defining-representation constraints.
#[derive(Clone, Copy, Debug, Default)]
pub struct BasisResiduals {
    pub anti_hermitian: f64,
    /// Tracelessness (su), reality (so) or the symplectic block form (usp).
    pub form: f64,
    pub orthonormality: f64,
}

impl BasisResiduals {
    pub fn max(&self) -> f64 {
        self.anti_hermitian.max(self.form).max(self.orthonormality)
    }
}

impl LieAlgebraBasis {
    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    pub fn matrix_size(&self) -> usize {
        self.group.matrix_size()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn residuals(&self) -> BasisResiduals {
        let mut r = BasisResiduals::default();
        for x in &self.elements {
            r.anti_hermitian = r.anti_hermitian.max(anti_hermitian_residual(x));
            r.form = r.form.max(form_residual(self.group, x));
        }
        r.orthonormality = self.orthonormality_residual();
        r
    }

    /// `max |−½Tr(T_i T_j) − δ_ij|`.
    pub fn orthonormality_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (a, x) in self.elements.iter().enumerate() {
            for (b, y) in self.elements.iter().enumerate().skip(a) {
                let target = if a == b { 1.0 } else { 0.0 };
                worst = worst.max((killing_inner(x, y) - target).abs());
            }
        }
        worst
    }

    pub fn check_orthonormal(&self) -> Result<()> {
        let residual = self.orthonormality_residual();
        if residual > tolerances::BASIS {
            return Err(LocusError::NonOrthonormalBasis { residual });
        }
        Ok(())
    }

    /// Coordinates of `x` in this basis, `x_k = −½ Re Tr(x T_k)`.
    pub fn coordinates(&self, x: &CMatrix) -> Vec<f64> {
        self.elements.iter().map(|t| killing_inner(x, t)).collect()
    }
}

fn form_residual(group: MatrixGroup, x: &CMatrix) -> f64 {
    match group {
        MatrixGroup::SpecialUnitary(_) => trace(x).norm(),
        MatrixGroup::SpecialOrthogonal(_) => x.iter().map(|z| z.im.abs()).fold(0.0, f64::max),
        MatrixGroup::UnitarySymplectic(n) => {
            let a = x.view((0, 0), (n, n));
            let bb = x.view((0, n), (n, n));
            let cc = x.view((n, 0), (n, n));
            let d = x.view((n, n), (n, n));
            let block = (d + a.transpose())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let sym_b = (bb - bb.transpose())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            let sym_c = (cc - cc.transpose())
                .iter()
                .map(|z| z.norm())
                .fold(0.0, f64::max);
            block.max(sym_b).max(sym_c)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{commutator, max_abs};

    #[test]
    fn su2_elements() {
        let b = build_basis(MatrixGroup::su(2).unwrap()).unwrap();
        assert_eq!(b.labels, vec!["H_1", "S_1,2", "A_1,2"]);
        let h = &b.elements[0];
        assert!((h[(0, 0)] - c(0.0, 1.0)).norm() < 1e-15);
        assert!((h[(1, 1)] - c(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn sizes() {
        assert_eq!(build_basis(MatrixGroup::so(4).unwrap()).unwrap().dim(), 6);
        let usp4 = build_basis(MatrixGroup::usp(2).unwrap()).unwrap();
        assert_eq!(usp4.dim(), 10);
        assert!(build_basis(MatrixGroup::SpecialOrthogonal(2)).is_err());
    }

    #[test]
    fn residuals_small() {
        for g in [
            MatrixGroup::su(5).unwrap(),
            MatrixGroup::so(6).unwrap(),
            MatrixGroup::usp(3).unwrap(),
        ] {
            let b = build_basis(g).unwrap();
            assert!(b.residuals().max() < 1e-12, "{g}");
            assert_eq!(b.dim(), g.dim());
        }
    }

    #[test]
    fn symplectic_h1_t1() {
        let b = build_basis(MatrixGroup::usp(3).unwrap()).unwrap();
        let h = &b.elements[b.index_of("H_1").unwrap()];
        let t = &b.elements[b.index_of("T_1").unwrap()];
        let u = &b.elements[b.index_of("U_1").unwrap()];
        assert!(max_abs(&(commutator(h, t) + u * c(2.0, 0.0))) < 1e-14);
    }
}
