//! Concrete realization of the partition maps `T_p` as integer matrices,
//! with exact checks of the functoriality identities and rank computations
//! for linear-independence claims.

use num::BigRational;

use crate::error::{Error, Result};
use crate::linalg::RationalMatrix;
use crate::partition::Partition;

/// Memory guard: refuse matrices with more than this many entries.
pub const ENTRY_BUDGET: u128 = 10_000_000;

/// A dense integer matrix. For `T_p` at size `n` the rows are indexed by
/// lower multi-indices and the columns by upper multi-indices, both in
/// mixed-radix order with the most significant digit first.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> IntMatrix {
        let mut m = IntMatrix::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: i64) {
        self.data[r * self.cols + c] = v;
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = IntMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a == 0 {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if b != 0 {
                        out.data[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn kronecker(&self, other: &IntMatrix) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows * other.rows, self.cols * other.cols);
        for r1 in 0..self.rows {
            for c1 in 0..self.cols {
                let a = self.get(r1, c1);
                if a == 0 {
                    continue;
                }
                for r2 in 0..other.rows {
                    for c2 in 0..other.cols {
                        let b = other.get(r2, c2);
                        if b != 0 {
                            out.set(r1 * other.rows + r2, c1 * other.cols + c2, a * b);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn scale(&self, factor: i64) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| v * factor).collect(),
        }
    }
}

fn decode_index(mut code: usize, len: usize, n: usize) -> Vec<usize> {
    // digits 1..=n, most significant first
    let mut out = vec![0; len];
    for d in (0..len).rev() {
        out[d] = code % n + 1;
        code /= n;
    }
    out
}

fn checked_power(n: usize, e: usize) -> Result<usize> {
    let mut acc: u128 = 1;
    for _ in 0..e {
        acc = acc.saturating_mul(n as u128);
        if acc > ENTRY_BUDGET {
            return Err(Error::BudgetExceeded {
                size: acc,
                budget: ENTRY_BUDGET,
            });
        }
    }
    Ok(acc as usize)
}

/// The matrix of `T_p` on `n`-dimensional tensor factors:
/// `entry[(j),(i)] = δ_p(i,j)`.
pub fn t_matrix(p: &Partition, n: usize) -> Result<IntMatrix> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let (k, l) = p.shape();
    checked_power(n, k + l)?;
    let rows = checked_power(n, l)?;
    let cols = checked_power(n, k)?;
    let mut m = IntMatrix::zeros(rows, cols);
    for r in 0..rows {
        let j = decode_index(r, l, n);
        for c in 0..cols {
            let i = decode_index(c, k, n);
            if p.delta(&i, &j, n)? {
                m.set(r, c, 1);
            }
        }
    }
    Ok(m)
}

/// Result of checking the three functoriality identities exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorialityReport {
    /// `T_{p⊗q} = T_p ⊗ T_q`.
    pub tensor_ok: bool,
    /// `T_p T_q = n^{b(p,q)} T_{pq}` when the shapes compose; `None`
    /// when the arities do not match.
    pub compose_ok: Option<bool>,
    /// `T_{p*} = T_p` transposed (checked for `p` and `q`).
    pub involution_ok: bool,
}

impl FunctorialityReport {
    pub fn all_ok(&self) -> bool {
        self.tensor_ok && self.compose_ok.unwrap_or(true) && self.involution_ok
    }
}

/// Exact integer-matrix verification of functoriality for one pair.
pub fn check_functoriality(p: &Partition, q: &Partition, n: usize) -> Result<FunctorialityReport> {
    let tp = t_matrix(p, n)?;
    let tq = t_matrix(q, n)?;
    let tensor_ok = t_matrix(&p.tensor(q), n)? == tp.kronecker(&tq);
    let compose_ok = match p.compose(q) {
        Ok((pq, closed)) => {
            let lhs = tp.mul(&tq)?;
            let factor = (n as i64).pow(closed as u32);
            Some(lhs == t_matrix(&pq, n)?.scale(factor))
        }
        Err(_) => None,
    };
    let involution_ok = t_matrix(&p.involution(), n)? == tp.transpose()
        && t_matrix(&q.involution(), n)? == tq.transpose();
    Ok(FunctorialityReport {
        tensor_ok,
        compose_ok,
        involution_ok,
    })
}

/// Rank of the span of `{T_p}` over the rationals, by exact elimination
/// on the vectorized matrices. All partitions must share one shape.
pub fn rank_of_span(parts: &[Partition], n: usize) -> Result<usize> {
    let Some(first) = parts.first() else {
        return Ok(0);
    };
    let (k, l) = first.shape();
    for p in parts {
        if p.shape() != (k, l) {
            let (k2, l2) = p.shape();
            return Err(Error::ShapeMismatch {
                k1: k,
                l1: l,
                k2,
                l2,
            });
        }
    }
    let matrices: Vec<IntMatrix> = parts
        .iter()
        .map(|p| t_matrix(p, n))
        .collect::<Result<_>>()?;
    let dim = matrices[0].rows * matrices[0].cols;
    let stacked = RationalMatrix::from_fn(parts.len(), dim, |r, c| {
        BigRational::from_integer(matrices[r].data[c].into())
    });
    Ok(stacked.rank())
}
