//! Monte Carlo sampling of Haar-distributed elements of the six classical
//! easy groups. This is the only module using floating point; it serves as
//! a numerical cross-check of the exact Weingarten engine, with tolerances
//! expressed in standard errors.

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::category::Family;
use crate::error::{Error, Result};

/// One Haar sample from an easy group.
#[derive(Clone, Debug)]
pub struct GroupSample {
    pub group: Family,
    pub n: usize,
    pub seed: u64,
    pub matrix: DMatrix<f64>,
}

/// A Monte Carlo estimate with its standard error.
#[derive(Clone, Copy, Debug)]
pub struct Estimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: u64,
}

impl Estimate {
    /// Distance from an exact value in standard errors; infinite when the
    /// standard error is zero and the values differ.
    pub fn sigmas_from(&self, exact: f64) -> f64 {
        let diff = (self.mean - exact).abs();
        if diff == 0.0 {
            0.0
        } else {
            diff / self.stderr
        }
    }
}

/// Haar orthogonal matrix: QR of a Gaussian matrix with the factorization
/// sign-corrected so the triangular factor has positive diagonal.
fn haar_orthogonal(n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(n, n, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for c in 0..n {
        if r[(c, c)] < 0.0 {
            for row in 0..n {
                q[(row, c)] = -q[(row, c)];
            }
        }
    }
    q
}

fn permutation_matrix(perm: &[usize], signs: Option<&[f64]>) -> DMatrix<f64> {
    let n = perm.len();
    let mut m = DMatrix::zeros(n, n);
    for (col, &row) in perm.iter().enumerate() {
        m[(row, col)] = signs.map_or(1.0, |s| s[col]);
    }
    m
}

fn uniform_permutation(n: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    perm
}

/// The fixed orthogonal matrix `F` whose first column is `ξ/√n` (with `ξ`
/// the all-ones vector), built as a Householder reflection.
fn bistochastic_frame(n: usize) -> DMatrix<f64> {
    let mut v = DMatrix::zeros(n, 1);
    let target = 1.0 / (n as f64).sqrt();
    v[(0, 0)] = 1.0 - target;
    for row in 1..n {
        v[(row, 0)] = -target;
    }
    let norm2 = v.dot(&v);
    DMatrix::identity(n, n) - (&v * v.transpose()) * (2.0 / norm2)
}

fn sample_matrix(group: Family, n: usize, rng: &mut ChaCha8Rng) -> DMatrix<f64> {
    match group {
        Family::O => haar_orthogonal(n, rng),
        Family::S => permutation_matrix(&uniform_permutation(n, rng), None),
        Family::H => {
            let perm = uniform_permutation(n, rng);
            let signs: Vec<f64> = (0..n)
                .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                .collect();
            permutation_matrix(&perm, Some(&signs))
        }
        Family::B => {
            // F (1 ⊕ h) F^T fixes ξ, so all row and column sums are 1
            let f = bistochastic_frame(n);
            let h = haar_orthogonal(n - 1, rng);
            let mut block = DMatrix::zeros(n, n);
            block[(0, 0)] = 1.0;
            for r in 0..n - 1 {
                for c in 0..n - 1 {
                    block[(r + 1, c + 1)] = h[(r, c)];
                }
            }
            &f * block * f.transpose()
        }
        Family::SPrime | Family::BPrime => {
            let base = if group == Family::SPrime {
                Family::S
            } else {
                Family::B
            };
            let inner = sample_matrix(base, n, rng);
            let sign = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            inner * sign
        }
    }
}

/// One Haar sample; deterministic in `(group, n, seed)`.
pub fn sample(group: Family, n: usize, seed: u64) -> Result<GroupSample> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "group sampling needs n >= 2, got {n}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(GroupSample {
        group,
        n,
        seed,
        matrix: sample_matrix(group, n, &mut rng),
    })
}

fn run_estimate<F>(
    group: Family,
    n: usize,
    samples: u64,
    seed: u64,
    mut statistic: F,
) -> Result<Estimate>
where
    F: FnMut(&DMatrix<f64>) -> f64,
{
    if n < 2 {
        return Err(Error::InvalidArgument(format!(
            "group sampling needs n >= 2, got {n}"
        )));
    }
    if samples == 0 {
        return Err(Error::InvalidArgument(
            "sample count must be positive".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sum = 0.0;
    let mut sum_sq = 0.0;
    for _ in 0..samples {
        let m = sample_matrix(group, n, &mut rng);
        let x = statistic(&m);
        sum += x;
        sum_sq += x * x;
    }
    let mean = sum / samples as f64;
    let variance = (sum_sq / samples as f64 - mean * mean).max(0.0);
    Ok(Estimate {
        mean,
        stderr: (variance / samples as f64).sqrt(),
        samples,
    })
}

/// Monte Carlo estimate of `∫ Π u_{i_m j_m}`; indices are 1-based.
pub fn estimate_integral(
    group: Family,
    n: usize,
    i: &[usize],
    j: &[usize],
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    if i.len() != j.len() {
        return Err(Error::BadMultiIndex {
            msg: format!(
                "row and column index lengths differ: {} vs {}",
                i.len(),
                j.len()
            ),
        });
    }
    for &x in i.iter().chain(j.iter()) {
        if x < 1 || x > n {
            return Err(Error::BadMultiIndex {
                msg: format!("entry {x} outside 1..={n}"),
            });
        }
    }
    let pairs: Vec<(usize, usize)> = i.iter().zip(j).map(|(&a, &b)| (a - 1, b - 1)).collect();
    run_estimate(group, n, samples, seed, move |m| {
        pairs.iter().map(|&(a, b)| m[(a, b)]).product()
    })
}

/// Monte Carlo estimate of the `k`-th moment of the truncated character
/// `Σ_{i ≤ s} u_ii`.
pub fn estimate_char_moment(
    group: Family,
    n: usize,
    s: usize,
    k: u32,
    samples: u64,
    seed: u64,
) -> Result<Estimate> {
    if s < 1 || s > n {
        return Err(Error::InvalidArgument(format!(
            "truncation s = {s} outside 1..={n}"
        )));
    }
    run_estimate(group, n, samples, seed, move |m| {
        let trace: f64 = (0..s).map(|i| m[(i, i)]).sum();
        trace.powi(k as i32)
    })
}
