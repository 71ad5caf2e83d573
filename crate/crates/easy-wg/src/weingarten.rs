//! Exact Gram and Weingarten matrices over the category bases `D_k`,
//! Haar integration of coordinate monomials, and truncated-character
//! moments, both exact at finite `n` and asymptotic as polynomials in `t`.
//!
//! All arithmetic on this path is exact rational; singular Gram matrices
//! (small `n`) are reported explicitly instead of being pseudo-inverted.

use std::fs;
use std::path::{Path, PathBuf};

use num::{BigInt, BigRational, One, Zero};
use serde::{Deserialize, Serialize};

use crate::category::CategoryId;
use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational, RationalMatrix};
use crate::partition::Partition;
use crate::tpoly::TPoly;

/// Environment variable overriding the Weingarten cache directory.
pub const CACHE_DIR_ENV: &str = "EASY_WG_CACHE_DIR";

const CACHE_VERSION: u32 = 1;

/// Gram and (when invertible) Weingarten matrix for one `(category, k, n)`.
#[derive(Clone, Debug)]
pub struct WeingartenData {
    pub category: CategoryId,
    pub k: usize,
    pub n: usize,
    /// The basis `D_k`: category members of `P(0,k)` in canonical order.
    pub basis: Vec<Partition>,
    pub gram: RationalMatrix,
    /// `None` when the Gram matrix is singular at this `n`.
    pub wg: Option<RationalMatrix>,
}

impl WeingartenData {
    /// The Weingarten matrix, or the explicit singularity error.
    pub fn weingarten(&self) -> Result<&RationalMatrix> {
        self.wg.as_ref().ok_or_else(|| Error::SingularGram {
            category: self.category.to_string(),
            k: self.k,
            n: self.n,
        })
    }
}

fn power(n: usize, e: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n).pow(e as u32))
}

/// Gram matrix `G(p,q) = n^{b(p∨q)}` over `D_k`, with the join taken in
/// the lattice of all partitions even for noncrossing categories.
pub fn gram(c: CategoryId, k: usize, n: usize) -> Result<WeingartenData> {
    if n < 1 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let basis = c.enumerate(0, k)?;
    let mut g = RationalMatrix::zeros(basis.len(), basis.len());
    for (a, p) in basis.iter().enumerate() {
        for (b, q) in basis.iter().enumerate().skip(a) {
            let join = p.join(q)?;
            let entry = power(n, join.block_count());
            *g.get_mut(a, b) = entry.clone();
            *g.get_mut(b, a) = entry;
        }
    }
    Ok(WeingartenData {
        category: c,
        k,
        n,
        basis,
        gram: g,
        wg: None,
    })
}

/// Computes (or loads from cache) the full Weingarten data for
/// `(category, k, n)`. A singular Gram matrix yields `wg = None`.
pub fn weingarten(c: CategoryId, k: usize, n: usize) -> Result<WeingartenData> {
    weingarten_with_cache(c, k, n, default_cache_dir().as_deref())
}

pub fn weingarten_with_cache(
    c: CategoryId,
    k: usize,
    n: usize,
    cache_dir: Option<&Path>,
) -> Result<WeingartenData> {
    let mut data = gram(c, k, n)?;
    if let Some(dir) = cache_dir {
        if let Some(cached) = cache_read(dir, c, k, n, &data) {
            data.wg = cached;
            return Ok(data);
        }
    }
    data.wg = data.gram.inverse();
    if let Some(dir) = cache_dir {
        cache_write(dir, &data);
    }
    Ok(data)
}

/// The cache directory from the environment, if set.
pub fn default_cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_DIR_ENV).map(PathBuf::from)
}

fn category_slug(c: CategoryId) -> String {
    c.to_string()
        .replace('\'', "p")
        .replace('+', "f")
        .replace('*', "star")
}

fn cache_path(dir: &Path, c: CategoryId, k: usize, n: usize) -> PathBuf {
    dir.join(format!(
        "wg-v{CACHE_VERSION}-{}-k{k}-n{n}.json",
        category_slug(c)
    ))
}

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    category: String,
    k: usize,
    n: usize,
    basis: Vec<String>,
    /// Row-major Weingarten entries as `"num/den"`, absent when singular.
    wg: Option<Vec<Vec<String>>>,
}

fn cache_read(
    dir: &Path,
    c: CategoryId,
    k: usize,
    n: usize,
    data: &WeingartenData,
) -> Option<Option<RationalMatrix>> {
    let text = fs::read_to_string(cache_path(dir, c, k, n)).ok()?;
    let file: CacheFile = serde_json::from_str(&text).ok()?;
    if file.version != CACHE_VERSION || file.category != c.to_string() || file.k != k || file.n != n
    {
        return None;
    }
    let basis: Vec<String> = data.basis.iter().map(|p| p.to_string()).collect();
    if file.basis != basis {
        return None;
    }
    match file.wg {
        None => Some(None),
        Some(rows) => {
            let dim = data.basis.len();
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return None;
            }
            let mut m = RationalMatrix::zeros(dim, dim);
            for (r, row) in rows.iter().enumerate() {
                for (col, s) in row.iter().enumerate() {
                    *m.get_mut(r, col) = parse_rational(s).ok()?;
                }
            }
            Some(Some(m))
        }
    }
}

fn cache_write(dir: &Path, data: &WeingartenData) {
    // caching is best-effort; failures are silently ignored
    if fs::create_dir_all(dir).is_err() {
        return;
    }
    let wg = data.wg.as_ref().map(|m| {
        (0..m.rows())
            .map(|r| {
                (0..m.cols())
                    .map(|c| format_rational(m.get(r, c)))
                    .collect()
            })
            .collect()
    });
    let file = CacheFile {
        version: CACHE_VERSION,
        category: data.category.to_string(),
        k: data.k,
        n: data.n,
        basis: data.basis.iter().map(|p| p.to_string()).collect(),
        wg,
    };
    let Ok(text) = serde_json::to_string(&file) else {
        return;
    };
    let path = cache_path(dir, data.category, data.k, data.n);
    let tmp = path.with_extension(format!("tmp.{}", std::process::id()));
    if fs::write(&tmp, text).is_ok() {
        let _ = fs::rename(&tmp, &path);
    }
}

/// Exact Haar integral `∫ u_{i_1 j_1} … u_{i_k j_k}` over the group or
/// quantum group attached to the category.
pub fn integrate(c: CategoryId, n: usize, i: &[usize], j: &[usize]) -> Result<BigRational> {
    if i.len() != j.len() {
        return Err(Error::BadMultiIndex {
            msg: format!(
                "row and column index lengths differ: {} vs {}",
                i.len(),
                j.len()
            ),
        });
    }
    let k = i.len();
    let data = weingarten(c, k, n)?;
    let w = data.weingarten()?;
    let mut total = BigRational::zero();
    let delta = |p: &Partition, idx: &[usize]| p.delta(&[], idx, n);
    let di: Vec<bool> = data
        .basis
        .iter()
        .map(|p| delta(p, i))
        .collect::<Result<_>>()?;
    let dj: Vec<bool> = data
        .basis
        .iter()
        .map(|p| delta(p, j))
        .collect::<Result<_>>()?;
    for (a, &pa) in di.iter().enumerate() {
        if !pa {
            continue;
        }
        for (b, &qb) in dj.iter().enumerate() {
            if qb {
                total += w.get(a, b);
            }
        }
    }
    Ok(total)
}

fn trace_product(a: &RationalMatrix, b: &RationalMatrix) -> BigRational {
    let mut acc = BigRational::zero();
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            let x = a.get(r, c);
            let y = b.get(c, r);
            if !x.is_zero() && !y.is_zero() {
                acc += x * y;
            }
        }
    }
    acc
}

/// Exact `k`-th moment of the truncated character `χ_t` with `s = [tn]`
/// diagonal entries: `Tr(G_ks W_kn)`.
pub fn char_moment_exact(c: CategoryId, n: usize, s: usize, k: usize) -> Result<BigRational> {
    char_moment_exact_from(&weingarten(c, k, n)?, s)
}

/// Same as [`char_moment_exact`], reusing an already inverted
/// `WeingartenData` so several truncations share one inversion.
pub fn char_moment_exact_from(data: &WeingartenData, s: usize) -> Result<BigRational> {
    if s < 1 || s > data.n {
        return Err(Error::InvalidArgument(format!(
            "truncation s = {s} outside 1..={}",
            data.n
        )));
    }
    let w = data.weingarten()?;
    let gs = gram(data.category, data.k, s)?;
    Ok(trace_product(&gs.gram, w))
}

/// Asymptotic moment `lim_n ∫ χ_t^k = Σ_{p ∈ D_k} t^{b(p)}`.
pub fn char_moment_asymptotic(c: CategoryId, k: usize) -> Result<TPoly> {
    let mut poly = TPoly::zero();
    for p in c.enumerate(0, k)? {
        poly.add_assign_term(p.block_count(), &BigRational::one());
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::Family;
    use num::Signed;

    fn q(s: &str) -> BigRational {
        parse_rational(s).unwrap()
    }

    const O: CategoryId = CategoryId::Classical(Family::O);
    const S: CategoryId = CategoryId::Classical(Family::S);

    #[test]
    fn gram_examples() {
        let d = gram(O, 2, 5).unwrap();
        assert_eq!(d.basis.len(), 1);
        assert_eq!(d.gram.get(0, 0), &q("5"));

        // pairings of 4 points: diagonal n^2, off-diagonal n
        let d = gram(O, 4, 3).unwrap();
        assert_eq!(d.basis.len(), 3);
        for a in 0..3 {
            for b in 0..3 {
                let expected = if a == b { q("9") } else { q("3") };
                assert_eq!(d.gram.get(a, b), &expected);
            }
        }

        let d = gram(S, 2, 3).unwrap();
        assert_eq!(
            d.basis.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            vec!["/aa", "/ab"]
        );
        assert_eq!(d.gram.get(0, 0), &q("3"));
        assert_eq!(d.gram.get(0, 1), &q("3"));
        assert_eq!(d.gram.get(1, 1), &q("9"));
    }

    #[test]
    fn weingarten_examples() {
        let d = weingarten_with_cache(O, 2, 7, None).unwrap();
        let w = d.weingarten().unwrap();
        assert_eq!(w.get(0, 0), &q("1/7"));

        // S_n at k = 2: W = [[n^2, -n], [-n, n]] / (n^2 (n-1))
        let d = weingarten_with_cache(S, 2, 3, None).unwrap();
        let w = d.weingarten().unwrap();
        assert_eq!(w.get(0, 0), &q("1/2"));
        assert_eq!(w.get(0, 1), &q("-1/6"));
        assert_eq!(w.get(1, 1), &q("1/6"));

        // singular below the independence regime
        let d = weingarten_with_cache(S, 3, 2, None).unwrap();
        assert!(d.wg.is_none());
        assert!(matches!(d.weingarten(), Err(Error::SingularGram { .. })));
    }

    #[test]
    fn integrate_examples() {
        assert_eq!(integrate(S, 3, &[1, 2], &[1, 2]).unwrap(), q("1/6"));
        assert_eq!(integrate(O, 5, &[1], &[1]).unwrap(), q("0"));
        assert_eq!(integrate(O, 5, &[1, 1], &[1, 1]).unwrap(), q("1/5"));
        assert_eq!(integrate(O, 3, &[1; 4], &[1; 4]).unwrap(), q("1/5"));
        assert_eq!(integrate(O, 4, &[1; 4], &[1; 4]).unwrap(), q("1/8"));
        assert!(matches!(
            integrate(S, 2, &[1; 3], &[1; 3]),
            Err(Error::SingularGram { .. })
        ));
    }

    #[test]
    fn char_moment_exact_examples() {
        assert_eq!(char_moment_exact(O, 6, 6, 2).unwrap(), q("1"));
        assert_eq!(char_moment_exact(S, 5, 5, 2).unwrap(), q("2"));
        // half-truncation approaches t = 1/2 within O(1/n)
        let v = char_moment_exact(O, 10, 5, 2).unwrap();
        let diff = (v - q("1/2")).abs();
        assert!(diff <= q("1/10"));
    }

    #[test]
    fn char_moment_asymptotic_examples() {
        let t = TPoly::t();
        let t2 = t.mul(&t);
        let t3 = t2.mul(&t);
        let t4 = t3.mul(&t);
        assert_eq!(char_moment_asymptotic(O, 4).unwrap(), t2.scale(&q("3")));
        assert_eq!(
            char_moment_asymptotic(S, 3).unwrap(),
            t.add(&t2.scale(&q("3"))).add(&t3)
        );
        assert_eq!(
            char_moment_asymptotic(CategoryId::Free(Family::S), 4).unwrap(),
            t.add(&t2.scale(&q("6"))).add(&t3.scale(&q("6"))).add(&t4)
        );
        assert_eq!(
            char_moment_asymptotic(CategoryId::Free(Family::H), 4).unwrap(),
            t.add(&t2.scale(&q("2")))
        );
    }

    #[test]
    fn cache_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let fresh = weingarten_with_cache(S, 3, 5, Some(dir.path())).unwrap();
        let cached = weingarten_with_cache(S, 3, 5, Some(dir.path())).unwrap();
        assert_eq!(fresh.wg, cached.wg);
        assert!(fresh.wg.is_some());
        // a singular result is cached too
        let s1 = weingarten_with_cache(S, 3, 2, Some(dir.path())).unwrap();
        let s2 = weingarten_with_cache(S, 3, 2, Some(dir.path())).unwrap();
        assert!(s1.wg.is_none() && s2.wg.is_none());
        assert_eq!(fs::read_dir(dir.path()).unwrap().count(), 2);
    }

    #[test]
    fn gram_is_positive_definite_in_regime() {
        for c in [O, S, CategoryId::Free(Family::H)] {
            let d = gram(c, 4, 6).unwrap();
            assert!(d.gram.is_positive_definite().unwrap(), "{c} not pd");
        }
    }

    #[test]
    fn orthogonality_relation_k2() {
        // sum over j of ∫ u_{i1 j} u_{i2 j} = [i1 = i2]
        for c in [O, S, CategoryId::Free(Family::B)] {
            let n = 6;
            for i1 in 1..=2 {
                for i2 in 1..=2 {
                    let mut total = BigRational::zero();
                    for j in 1..=n {
                        total += integrate(c, n, &[i1, i2], &[j, j]).unwrap();
                    }
                    let expected = if i1 == i2 { q("1") } else { q("0") };
                    assert_eq!(total, expected, "{c} i=({i1},{i2})");
                }
            }
        }
    }
}
