//! Dense exact rational matrices: multiplication, determinant, rank and
//! inversion by Gauss-Jordan elimination. Sizes stay at desk scale, so a
//! simple dense representation is enough.

use num::{BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> RationalMatrix {
        RationalMatrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(n, n);
        for i in 0..n {
            *m.get_mut(i, i) = BigRational::one();
        }
        m
    }

    pub fn from_fn<F>(rows: usize, cols: usize, mut f: F) -> RationalMatrix
    where
        F: FnMut(usize, usize) -> BigRational,
    {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        RationalMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigRational {
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut BigRational {
        &mut self.data[r * self.cols + c]
    }

    pub fn transpose(&self) -> RationalMatrix {
        RationalMatrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }

    pub fn mul(&self, other: &RationalMatrix) -> Result<RationalMatrix> {
        if self.cols != other.rows {
            return Err(Error::InvalidArgument(format!(
                "matrix product shape mismatch: {}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RationalMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        *out.get_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).clone())
            .sum()
    }

    /// Row-reduces a copy, returning (rank, determinant of the leading
    /// square part when the matrix is square).
    fn eliminate(&self) -> (usize, BigRational) {
        let mut m = self.clone();
        let mut det = BigRational::one();
        let mut rank = 0;
        let mut col = 0;
        while rank < m.rows && col < m.cols {
            let pivot = (rank..m.rows).find(|&r| !m.get(r, col).is_zero());
            let Some(p) = pivot else {
                col += 1;
                det = BigRational::zero();
                continue;
            };
            if p != rank {
                for c in 0..m.cols {
                    let tmp = m.get(p, c).clone();
                    *m.get_mut(p, c) = m.get(rank, c).clone();
                    *m.get_mut(rank, c) = tmp;
                }
                det = -det;
            }
            let pv = m.get(rank, col).clone();
            det *= &pv;
            for r in (rank + 1)..m.rows {
                let factor = m.get(r, col) / &pv;
                if factor.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let sub = &factor * m.get(rank, c);
                    *m.get_mut(r, c) -= sub;
                }
            }
            rank += 1;
            col += 1;
        }
        if rank < m.rows.min(m.cols) {
            det = BigRational::zero();
        }
        (rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().0
    }

    pub fn determinant(&self) -> Result<BigRational> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(
                "determinant of a non-square matrix".into(),
            ));
        }
        Ok(self.eliminate().1)
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Option<RationalMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RationalMatrix::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            if pivot != col {
                for c in 0..n {
                    let tmp = a.get(pivot, c).clone();
                    *a.get_mut(pivot, c) = a.get(col, c).clone();
                    *a.get_mut(col, c) = tmp;
                    let tmp = inv.get(pivot, c).clone();
                    *inv.get_mut(pivot, c) = inv.get(col, c).clone();
                    *inv.get_mut(col, c) = tmp;
                }
            }
            let pv = a.get(col, col).clone();
            for c in 0..n {
                *a.get_mut(col, c) /= &pv;
                *inv.get_mut(col, c) /= &pv;
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a.get(r, col).clone();
                if factor.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let s = &factor * a.get(col, c);
                    *a.get_mut(r, c) -= s;
                    let s = &factor * inv.get(col, c);
                    *inv.get_mut(r, c) -= s;
                }
            }
        }
        Some(inv)
    }

    /// All leading principal minors strictly positive (Sylvester test).
    pub fn is_positive_definite(&self) -> Result<bool> {
        if self.rows != self.cols {
            return Err(Error::InvalidArgument(
                "positive-definiteness of a non-square matrix".into(),
            ));
        }
        for m in 1..=self.rows {
            let sub = RationalMatrix::from_fn(m, m, |r, c| self.get(r, c).clone());
            if !sub.determinant()?.is_positive() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Parses `"num/den"` or `"num"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = |m: &str| Error::InvalidArgument(format!("bad rational {s:?}: {m}"));
    match s.split_once('/') {
        Some((num, den)) => {
            let n: num::BigInt = num.trim().parse().map_err(|_| bad("numerator"))?;
            let d: num::BigInt = den.trim().parse().map_err(|_| bad("denominator"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(BigRational::new(n, d))
        }
        None => {
            let n: num::BigInt = s.trim().parse().map_err(|_| bad("integer"))?;
            Ok(BigRational::from_integer(n))
        }
    }
}

/// Formats an exact rational as `"num/den"`, or `"num"` for integers.
pub fn format_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
