//! Root data for `A_{n-1}`, `B_n`, `C_n`, `D_n` in the standard orthonormal
//! coordinates of `R^n`.

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::exact::ExactScalar;
use crate::series::{Series, SeriesTag};

pub type RootVector = Vec<Rational64>;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RootSystem {
    pub series: Series,
    pub rank: usize,
    pub ambient_dim: usize,
    #[serde(serialize_with = "ser_vectors")]
    pub simple_roots: Vec<RootVector>,
    #[serde(serialize_with = "ser_vectors")]
    pub positive_roots: Vec<RootVector>,
    /// `2α/(α|α)` for each entry of `positive_roots`, in the same order.
    #[serde(serialize_with = "ser_vectors")]
    pub coroots: Vec<RootVector>,
    pub degrees: Vec<u32>,
}

fn ser_vectors<S: Serializer>(v: &[RootVector], s: S) -> Result<S::Ok, S::Error> {
    let text: Vec<Vec<String>> = v
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect())
        .collect();
    text.serialize(s)
}

pub fn dot(a: &[Rational64], b: &[Rational64]) -> Rational64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn coroot(alpha: &[Rational64]) -> RootVector {
    let scale = Rational64::from_integer(2) / dot(alpha, alpha);
    alpha.iter().map(|x| x * scale).collect()
}

fn basis_combo(dim: usize, terms: &[(usize, i64)]) -> RootVector {
    let mut v = vec![Rational64::zero(); dim];
    for &(i, c) in terms {
        v[i] += Rational64::from_integer(c);
    }
    v
}

pub fn build_root_system(series: Series) -> RootSystem {
    let n = series.n as usize;
    let e = |terms: &[(usize, i64)]| basis_combo(n, terms);

    let mut simple = Vec::new();
    let mut positive = Vec::new();
    // e_i - e_{i+1} is simple in every series
    for i in 0..n - 1 {
        simple.push(e(&[(i, 1), (i + 1, -1)]));
    }
    match series.tag {
        SeriesTag::A => {}
        SeriesTag::B => simple.push(e(&[(n - 1, 1)])),
        SeriesTag::C => simple.push(e(&[(n - 1, 2)])),
        SeriesTag::D => simple.push(e(&[(n - 2, 1), (n - 1, 1)])),
    }

    for i in 0..n {
        for j in i + 1..n {
            positive.push(e(&[(i, 1), (j, -1)]));
            if series.tag != SeriesTag::A {
                positive.push(e(&[(i, 1), (j, 1)]));
            }
        }
    }
    match series.tag {
        SeriesTag::B => (0..n).for_each(|i| positive.push(e(&[(i, 1)]))),
        SeriesTag::C => (0..n).for_each(|i| positive.push(e(&[(i, 2)]))),
        _ => {}
    }

    let degrees = match series.tag {
        SeriesTag::A => (1..n as u32).map(|i| i + 1).collect(),
        SeriesTag::B | SeriesTag::C => (1..=n as u32).map(|i| 2 * i).collect(),
        SeriesTag::D => {
            let mut d: Vec<u32> = (1..n as u32).map(|i| 2 * i).collect();
            d.push(n as u32);
            d
        }
    };

    let coroots = positive.iter().map(|a| coroot(a)).collect();
    RootSystem {
        series,
        rank: series.rank() as usize,
        ambient_dim: n,
        simple_roots: simple,
        positive_roots: positive,
        coroots,
        degrees,
    }
}

impl RootSystem {
    pub fn simple_coroots(&self) -> Vec<RootVector> {
        self.simple_roots.iter().map(|a| coroot(a)).collect()
    }

    /// Gram matrix `(α̌_i|α̌_j)` of the simple coroots.
    pub fn coroot_gram(&self) -> Vec<Vec<BigRational>> {
        let c = self.simple_coroots();
        c.iter()
            .map(|a| c.iter().map(|b| to_big(dot(a, b))).collect())
            .collect()
    }

    /// Cartan matrix `a_ij = (α_i|α̌_j)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let c = self.simple_coroots();
        self.simple_roots
            .iter()
            .map(|a| c.iter().map(|b| dot(a, b).to_integer()).collect())
            .collect()
    }
}

fn to_big(x: Rational64) -> BigRational {
    BigRational::new(BigInt::from(*x.numer()), BigInt::from(*x.denom()))
}

/// Exact determinant by Gaussian elimination over the rationals.
pub fn determinant(mut m: Vec<Vec<BigRational>>) -> BigRational {
    let size = m.len();
    let mut det = BigRational::one();
    for col in 0..size {
        let Some(pivot) = (col..size).find(|&r| !m[r][col].is_zero()) else {
            return BigRational::zero();
        };
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        let p = m[col][col].clone();
        det *= &p;
        for r in col + 1..size {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &p;
            let pivot_row = m[col].clone();
            for (x, y) in m[r][col..].iter_mut().zip(&pivot_row[col..]) {
                *x -= &factor * y;
            }
        }
    }
    det
}

/// `|α̌_1 ∧ … ∧ α̌_r| = √det(Gram)` over the simple coroots.
pub fn torus_volume(rs: &RootSystem) -> ExactScalar {
    let det = determinant(rs.coroot_gram());
    ExactScalar::sqrt_rational(&det).expect("coroot Gram determinant is a small positive rational")
}

/// `∏ (α̌|α̌)` over the positive coroots.
pub fn coroot_norm_product(rs: &RootSystem) -> ExactScalar {
    let mut acc = BigRational::one();
    for c in &rs.coroots {
        acc *= to_big(dot(c, c));
    }
    ExactScalar::rational(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(tag: SeriesTag, n: u32) -> RootSystem {
        build_root_system(Series::new(tag, n).unwrap())
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(rs(SeriesTag::A, 4).positive_roots.len(), 6);
        assert_eq!(rs(SeriesTag::B, 3).positive_roots.len(), 9);
        assert_eq!(rs(SeriesTag::D, 4).positive_roots.len(), 12);
    }

    #[test]
    fn torus_volumes() {
        assert_eq!(torus_volume(&rs(SeriesTag::A, 5)), ExactScalar::sqrt(5));
        for n in 2..9 {
            assert_eq!(torus_volume(&rs(SeriesTag::B, n)), ExactScalar::integer(2));
            assert_eq!(torus_volume(&rs(SeriesTag::C, n)), ExactScalar::one());
        }
        for n in 4..9 {
            assert_eq!(torus_volume(&rs(SeriesTag::D, n)), ExactScalar::integer(2));
        }
    }

    #[test]
    fn coroot_products() {
        for n in 2..9u32 {
            let two = |k: u32| ExactScalar::integer(2).pow(k);
            assert_eq!(
                coroot_norm_product(&rs(SeriesTag::A, n)),
                two(n * (n - 1) / 2)
            );
            assert_eq!(coroot_norm_product(&rs(SeriesTag::B, n)), two(n * n + n));
            assert_eq!(coroot_norm_product(&rs(SeriesTag::C, n)), two(n * n - n));
        }
    }

    #[test]
    fn a_series_roots_have_length_two_and_are_self_dual() {
        let r = rs(SeriesTag::A, 6);
        for (a, c) in r.positive_roots.iter().zip(&r.coroots) {
            assert_eq!(dot(a, a), Rational64::from_integer(2));
            assert_eq!(a, c);
        }
    }

    #[test]
    fn cartan_matrix_d4() {
        let c = rs(SeriesTag::D, 4).cartan_matrix();
        assert_eq!(c[1], vec![-1, 2, -1, -1]);
        assert_eq!(c[3], vec![0, -1, 0, 2]);
    }

    #[test]
    fn determinant_small() {
        let q = |x: i64| BigRational::from_integer(BigInt::from(x));
        let m = vec![vec![q(0), q(2)], vec![q(3), q(1)]];
        assert_eq!(determinant(m), q(-6));
    }
}
