//! Independent oracles used to pin down expected values: classical
//! counting sequences computed from their own recurrences, and exact
//! brute-force Haar averages over the finite easy groups.

use itertools::Itertools;
use num::{BigInt, BigRational, One, Zero};

use crate::category::Family;
use crate::error::{Error, Result};

/// Bell number `B_n` via the Bell triangle.
pub fn bell(n: usize) -> BigInt {
    let mut row = vec![BigInt::one()];
    for _ in 0..n {
        let mut next = vec![row.last().unwrap().clone()];
        for v in &row {
            let prev = next.last().unwrap().clone();
            next.push(prev + v);
        }
        row = next;
    }
    row[0].clone()
}

/// Catalan number `C_n` via the product formula.
pub fn catalan(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..n {
        acc = acc * BigInt::from(2 * (2 * i + 1)) / BigInt::from(i + 2);
    }
    acc
}

/// Narayana number `N(k, j) = (1/k) C(k,j) C(k,j-1)`.
pub fn narayana(k: usize, j: usize) -> BigInt {
    if j == 0 || j > k {
        return BigInt::zero();
    }
    binomial(k, j) * binomial(k, j - 1) / BigInt::from(k)
}

/// Stirling number of the second kind `S(n, k)` by the triangle recurrence.
pub fn stirling2(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    // S(m, j) = j S(m-1, j) + S(m-1, j-1)
    let mut row = vec![BigInt::one()]; // row m holds S(m, 0..=m)
    for m in 1..=n {
        let mut next = vec![BigInt::zero(); m + 1];
        for j in 1..=m {
            let stay = if j < row.len() {
                row[j].clone() * BigInt::from(j)
            } else {
                BigInt::zero()
            };
            next[j] = stay + &row[j - 1];
        }
        row = next;
    }
    row[k].clone()
}

/// `(2n - 1)!!`, the number of pairings of `2n` points.
pub fn double_factorial_odd(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 1..=n {
        acc *= BigInt::from(2 * i - 1);
    }
    acc
}

pub fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

const BRUTE_FORCE_LIMIT: usize = 8;

fn check_indices(n: usize, i: &[usize], j: &[usize]) -> Result<()> {
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
    Ok(())
}

/// All elements of the finite easy group as (permutation, column signs,
/// weight-denominator pairs are implicit: every element has equal mass).
/// The permutation sends column `c` to row `perm[c]`; entry
/// `u[perm[c], c] = signs[c]`.
fn finite_group_elements(group: Family, n: usize) -> Result<Vec<(Vec<usize>, Vec<i64>)>> {
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::BoundExceeded {
            requested: n,
            bound: BRUTE_FORCE_LIMIT,
        });
    }
    let perms: Vec<Vec<usize>> = (0..n).permutations(n).collect();
    let mut out = Vec::new();
    match group {
        Family::S => {
            for p in perms {
                out.push((p, vec![1; n]));
            }
        }
        Family::SPrime => {
            for p in perms {
                out.push((p.clone(), vec![1; n]));
                out.push((p, vec![-1; n]));
            }
        }
        Family::H => {
            for p in perms {
                for mask in 0..(1u32 << n) {
                    let signs: Vec<i64> = (0..n)
                        .map(|c| if mask & (1 << c) == 0 { 1 } else { -1 })
                        .collect();
                    out.push((p.clone(), signs));
                }
            }
        }
        _ => {
            return Err(Error::InvalidArgument(format!(
                "group {group:?} is not finite"
            )))
        }
    }
    Ok(out)
}

/// Exact Haar average of `Π u_{i_m j_m}` over a finite easy group
/// (`S_n`, `H_n` or `S'_n`), by direct summation over all elements.
pub fn finite_group_average(
    group: Family,
    n: usize,
    i: &[usize],
    j: &[usize],
) -> Result<BigRational> {
    check_indices(n, i, j)?;
    let elements = finite_group_elements(group, n)?;
    let mut total = BigInt::zero();
    for (perm, signs) in &elements {
        let mut value: i64 = 1;
        for (&row, &col) in i.iter().zip(j) {
            if perm[col - 1] == row - 1 {
                value *= signs[col - 1];
            } else {
                value = 0;
                break;
            }
        }
        total += BigInt::from(value);
    }
    Ok(BigRational::new(total, BigInt::from(elements.len())))
}

/// Exact `k`-th moment of the truncated character over a finite easy
/// group, by direct summation.
pub fn finite_group_char_moment(
    group: Family,
    n: usize,
    s: usize,
    k: usize,
) -> Result<BigRational> {
    if s < 1 || s > n {
        return Err(Error::InvalidArgument(format!(
            "truncation s = {s} outside 1..={n}"
        )));
    }
    let elements = finite_group_elements(group, n)?;
    let mut total = BigInt::zero();
    for (perm, signs) in &elements {
        let trace: i64 = (0..s).filter(|&c| perm[c] == c).map(|c| signs[c]).sum();
        total += BigInt::from(trace).pow(k as u32);
    }
    Ok(BigRational::new(total, BigInt::from(elements.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn counting_sequences() {
        assert_eq!(
            (0..=6).map(bell).collect::<Vec<_>>(),
            [1, 1, 2, 5, 15, 52, 203].map(int)
        );
        assert_eq!(
            (0..=6).map(catalan).collect::<Vec<_>>(),
            [1, 1, 2, 5, 14, 42, 132].map(int)
        );
        assert_eq!(
            (1..=4).map(|j| narayana(4, j)).collect::<Vec<_>>(),
            [1, 6, 6, 1].map(int)
        );
        assert_eq!(stirling2(4, 2), int(7));
        assert_eq!(stirling2(6, 3), int(90));
        assert_eq!(stirling2(5, 5), int(1));
        assert_eq!(stirling2(5, 0), int(0));
        assert_eq!(
            (0..=4).map(double_factorial_odd).collect::<Vec<_>>(),
            [1, 1, 3, 15, 105].map(int)
        );
        assert_eq!(factorial(5), int(120));
        assert_eq!(binomial(6, 2), int(15));
        assert_eq!(binomial(2, 6), int(0));
    }

    #[test]
    fn bell_numbers_sum_stirling() {
        for n in 0..=8 {
            let sum: BigInt = (0..=n).map(|k| stirling2(n, k)).sum();
            assert_eq!(sum, bell(n), "n = {n}");
        }
    }

    #[test]
    fn sn_averages() {
        let q = |num: i64, den: i64| BigRational::new(int(num), int(den));
        assert_eq!(
            finite_group_average(Family::S, 3, &[1], &[1]).unwrap(),
            q(1, 3)
        );
        assert_eq!(
            finite_group_average(Family::S, 3, &[1, 2], &[1, 2]).unwrap(),
            q(1, 6)
        );
        assert_eq!(
            finite_group_average(Family::S, 5, &[1, 2], &[1, 2]).unwrap(),
            q(1, 20)
        );
    }

    #[test]
    fn hn_and_sprime_averages() {
        let q = |num: i64, den: i64| BigRational::new(int(num), int(den));
        // odd monomials vanish under the sign symmetry
        assert_eq!(
            finite_group_average(Family::H, 3, &[1], &[1]).unwrap(),
            q(0, 1)
        );
        assert_eq!(
            finite_group_average(Family::H, 3, &[1, 1], &[1, 1]).unwrap(),
            q(1, 3)
        );
        assert_eq!(
            finite_group_average(Family::SPrime, 3, &[1], &[1]).unwrap(),
            q(0, 1)
        );
        assert_eq!(
            finite_group_average(Family::SPrime, 3, &[1, 1], &[1, 1]).unwrap(),
            q(1, 3)
        );
        assert!(finite_group_average(Family::O, 3, &[1], &[1]).is_err());
    }

    #[test]
    fn char_moments_over_finite_groups() {
        let q = |num: i64, den: i64| BigRational::new(int(num), int(den));
        // E(fix^2) = 2 over S_n
        assert_eq!(
            finite_group_char_moment(Family::S, 4, 4, 2).unwrap(),
            q(2, 1)
        );
        // E(fix) with truncation s is s/n
        assert_eq!(
            finite_group_char_moment(Family::S, 4, 2, 1).unwrap(),
            q(1, 2)
        );
        assert_eq!(
            finite_group_char_moment(Family::H, 3, 3, 1).unwrap(),
            q(0, 1)
        );
    }
}
