//! Haar-distributed samples of `SU(m)`, `SO(m)` and `USp(2n)`.
//!
//! Sample `i` draws from its own ChaCha stream `(seed, i)`, so results do not
//! depend on how the work is split across threads.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{LocusError, Result};
use crate::linalg::CMatrix;
use crate::series::MatrixGroup;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SamplerConfig {
    pub group: MatrixGroup,
    pub count: usize,
    pub seed: u64,
    pub workers: usize,
}

impl SamplerConfig {
    pub fn new(group: MatrixGroup, count: usize, seed: u64) -> Self {
        SamplerConfig {
            group,
            count,
            seed,
            workers: 1,
        }
    }

    pub fn with_workers(mut self, workers: usize) -> Self {
        self.workers = workers;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(LocusError::InvalidArgument("count must be >= 1".into()));
        }
        if self.workers == 0 {
            return Err(LocusError::InvalidArgument("workers must be >= 1".into()));
        }
        match self.group {
            MatrixGroup::SpecialUnitary(m) => MatrixGroup::su(m).map(|_| ()),
            MatrixGroup::SpecialOrthogonal(m) => MatrixGroup::so(m).map(|_| ()),
            MatrixGroup::UnitarySymplectic(n) => MatrixGroup::usp(n).map(|_| ()),
        }
    }
}

pub fn sample_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

fn complex_gaussian<R: Rng>(rng: &mut R) -> Complex64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Gaussian matrix, QR, then `Q · diag(r_ii/|r_ii|)`, then the global phase
/// `det^{−1/m}`.
pub fn haar_su<R: Rng>(m: usize, rng: &mut R) -> CMatrix {
    let z = CMatrix::from_fn(m, m, |_, _| complex_gaussian(rng));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..m {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            Complex64::new(1.0, 0.0)
        };
        q.column_mut(j).iter_mut().for_each(|x| *x *= phase);
    }
    let det = q.determinant();
    let correction = Complex64::from_polar(1.0, -det.arg() / m as f64);
    q * correction
}

/// Real Gaussian matrix, QR with sign correction, then the first column is
/// negated when the determinant is −1.
pub fn haar_so<R: Rng>(m: usize, rng: &mut R) -> DMatrix<f64> {
    let z = DMatrix::from_fn(m, m, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = z.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).iter_mut().for_each(|x| *x = -*x);
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).iter_mut().for_each(|x| *x = -*x);
    }
    q
}

/// Quaternionic Gram-Schmidt: columns `p_1..p_n` from Gaussian vectors, each
/// orthogonalized against all previous `p_i` and `q_i = −J p̄_i`, giving
/// `U = [p_1 … p_n | q_1 … q_n]` with `UᵀJU = J`, `J = [[0, I], [−I, 0]]`.
pub fn haar_usp<R: Rng>(n: usize, rng: &mut R) -> CMatrix {
    let size = 2 * n;
    let mut ps: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    let mut qs: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for _ in 0..n {
        let mut v: Vec<Complex64> = (0..size).map(|_| complex_gaussian(rng)).collect();
        for _ in 0..2 {
            for u in ps.iter().chain(&qs) {
                let overlap: Complex64 = u.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                v.iter_mut().zip(u).for_each(|(x, a)| *x -= overlap * a);
            }
        }
        let norm = v.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
        v.iter_mut().for_each(|x| *x /= norm);
        qs.push(j_conj(&v));
        ps.push(v);
    }
    CMatrix::from_fn(
        size,
        size,
        |i, j| if j < n { ps[j][i] } else { qs[j - n][i] },
    )
}

// −J v̄
fn j_conj(v: &[Complex64]) -> Vec<Complex64> {
    let n = v.len() / 2;
    (0..2 * n)
        .map(|i| {
            if i < n {
                -v[i + n].conj()
            } else {
                v[i - n].conj()
            }
        })
        .collect()
}

pub fn symplectic_form(n: usize) -> CMatrix {
    CMatrix::from_fn(2 * n, 2 * n, |i, j| {
        if j == i + n {
            Complex64::new(1.0, 0.0)
        } else if i == j + n {
            Complex64::new(-1.0, 0.0)
        } else {
            Complex64::new(0.0, 0.0)
        }
    })
}

/// `‖UᵀJU − J‖_max`.
pub fn symplectic_residual(u: &CMatrix) -> f64 {
    let j = symplectic_form(u.nrows() / 2);
    crate::linalg::max_abs(&(u.transpose() * &j * u - j))
}

/// One Haar sample of `group` from stream `(seed, index)`.
pub fn sample_one(group: MatrixGroup, seed: u64, index: u64) -> CMatrix {
    let mut rng = sample_rng(seed, index);
    match group {
        MatrixGroup::SpecialUnitary(m) => haar_su(m, &mut rng),
        MatrixGroup::SpecialOrthogonal(m) => haar_so(m, &mut rng).map(|x| Complex64::new(x, 0.0)),
        MatrixGroup::UnitarySymplectic(n) => haar_usp(n, &mut rng),
    }
}

/// Applies `f` to every sample, in sample order.
pub fn sample_map<T, F>(cfg: &SamplerConfig, f: F) -> Result<Vec<T>>
where
    T: Send,
    F: Fn(&CMatrix) -> T + Sync + Send,
{
    cfg.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| LocusError::InvalidArgument(format!("thread pool: {e}")))?;
    let group = cfg.group;
    let seed = cfg.seed;
    Ok(pool.install(|| {
        (0..cfg.count as u64)
            .into_par_iter()
            .map(|i| f(&sample_one(group, seed, i)))
            .collect()
    }))
}

pub fn sample(cfg: &SamplerConfig) -> Result<Vec<CMatrix>> {
    sample_map(cfg, |g| g.clone())
}

pub fn sample_su(m: usize, count: usize, seed: u64, workers: usize) -> Result<Vec<CMatrix>> {
    sample(&SamplerConfig::new(MatrixGroup::su(m)?, count, seed).with_workers(workers))
}

pub fn sample_so(m: usize, count: usize, seed: u64, workers: usize) -> Result<Vec<CMatrix>> {
    sample(&SamplerConfig::new(MatrixGroup::so(m)?, count, seed).with_workers(workers))
}

pub fn sample_usp(n: usize, count: usize, seed: u64, workers: usize) -> Result<Vec<CMatrix>> {
    sample(&SamplerConfig::new(MatrixGroup::usp(n)?, count, seed).with_workers(workers))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::unitarity_residual;

    #[test]
    fn su_samples_are_special_unitary() {
        for g in sample_su(5, 50, 1, 1).unwrap() {
            assert!(unitarity_residual(&g) < 1e-12);
            assert!((g.determinant() - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn so_samples_are_rotations() {
        for g in sample_so(6, 50, 2, 1).unwrap() {
            assert!(unitarity_residual(&g) < 1e-12);
            assert!(g.iter().all(|z| z.im == 0.0));
            assert!((g.determinant().re - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn usp_samples_are_symplectic() {
        for g in sample_usp(3, 50, 3, 1).unwrap() {
            assert!(unitarity_residual(&g) < 1e-12);
            assert!(symplectic_residual(&g) < 1e-12);
        }
    }

    #[test]
    fn worker_count_does_not_change_samples() {
        let a = sample_su(4, 40, 9, 1).unwrap();
        let b = sample_su(4, 40, 9, 3).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn invalid_config() {
        let cfg = SamplerConfig::new(MatrixGroup::SpecialUnitary(3), 0, 1);
        assert!(sample(&cfg).is_err());
        let cfg = SamplerConfig::new(MatrixGroup::SpecialOrthogonal(2), 5, 1);
        assert!(sample(&cfg).is_err());
    }
}
