//! Moment and cumulant transforms over the full and noncrossing partition
//! lattices, the Bercovici-Pata map, independent law oracles, and
//! convolution-semigroup verdicts for the asymptotic character laws.

use num::{BigInt, BigRational, One, Zero};

use crate::category::{CategoryId, Family};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::tpoly::TPoly;
use crate::weingarten::char_moment_asymptotic;

/// Which partition lattice a transform sums over.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Kind {
    Classical,
    Free,
}

/// Moments `m_1..m_K` as polynomials in `t`; `m_0 = 1` implicitly.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MomentSequence {
    pub kind: Kind,
    pub entries: Vec<TPoly>,
}

/// Cumulants `c_1..c_K` as polynomials in `t`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CumulantSequence {
    pub kind: Kind,
    pub entries: Vec<TPoly>,
}

fn lattice(kind: Kind, k: usize) -> Result<Vec<Partition>> {
    Ok(Partition::enumerate(0, k)?
        .filter(|p| kind == Kind::Classical || p.is_noncrossing())
        .collect())
}

fn partition_product(p: &Partition, cumulants: &[TPoly]) -> TPoly {
    let mut prod = TPoly::one();
    for size in p.block_sizes() {
        prod = prod.mul(&cumulants[size - 1]);
    }
    prod
}

/// `m_k = Σ_{p ∈ D(k)} Π_{b ∈ p} c_{|b|}` with `D = P` classical, `NC` free.
pub fn moments_from_cumulants(c: &CumulantSequence) -> Result<MomentSequence> {
    let mut entries = Vec::with_capacity(c.entries.len());
    for k in 1..=c.entries.len() {
        let mut m = TPoly::zero();
        for p in lattice(c.kind, k)? {
            m = m.add(&partition_product(&p, &c.entries));
        }
        entries.push(m);
    }
    Ok(MomentSequence {
        kind: c.kind,
        entries,
    })
}

/// Exact inverse of [`moments_from_cumulants`] by peeling the one-block
/// term: `c_k = m_k - Σ_{p ≠ one-block} Π c_{|b|}`.
pub fn cumulants_from_moments(m: &MomentSequence) -> Result<CumulantSequence> {
    let one_block = |k: usize| Partition::one_block(k);
    let mut entries: Vec<TPoly> = Vec::with_capacity(m.entries.len());
    for k in 1..=m.entries.len() {
        // placeholder so indices line up; the one-block term is skipped
        entries.push(TPoly::zero());
        let mut rest = TPoly::zero();
        for p in lattice(m.kind, k)? {
            if p == one_block(k) {
                continue;
            }
            rest = rest.add(&partition_product(&p, &entries));
        }
        entries[k - 1] = m.entries[k - 1].sub(&rest);
    }
    Ok(CumulantSequence {
        kind: m.kind,
        entries,
    })
}

/// The Bercovici-Pata bijection at the level of moments: classical
/// cumulants reinterpreted as free cumulants.
pub fn bercovici_pata(m: &MomentSequence) -> Result<MomentSequence> {
    if m.kind != Kind::Classical {
        return Err(Error::InvalidArgument(
            "bercovici_pata expects a classical moment sequence".into(),
        ));
    }
    let mut c = cumulants_from_moments(m)?;
    c.kind = Kind::Free;
    moments_from_cumulants(&c)
}

/// The supported law oracles. Primed variants are the symmetrizations
/// (odd moments zero, even moments unchanged).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LawId {
    /// `g_t`: centered Gaussian with variance `t`.
    Gaussian,
    /// `p_t`: Poisson with parameter `t`.
    Poisson,
    /// `b_t`: Bessel; represented by its partition-sum moments.
    Bessel,
    /// `s_t`: the law of `t + G_t` (binomial shift of the Gaussian).
    ShiftedGaussian,
    /// `γ_t`: semicircle with variance `t`.
    Semicircle,
    /// `π_t`: free Poisson (Marchenko-Pastur) with parameter `t`.
    FreePoisson,
    /// `β_t`: free Bessel; represented by its partition-sum moments.
    FreeBessel,
    /// `σ_t`: the free analogue of the shifted Gaussian.
    ShiftedSemicircle,
    /// `ρ_t`: Rayleigh-type law with even moment `2k` equal to `k! t^k`.
    Rayleigh,
}

impl LawId {
    pub fn parse(name: &str) -> Result<(LawId, bool)> {
        let lower = name.to_ascii_lowercase();
        let (base, primed) = match lower.strip_suffix('\'') {
            Some(b) => (b, true),
            None => (lower.as_str(), false),
        };
        let law = match base {
            "g" => LawId::Gaussian,
            "p" => LawId::Poisson,
            "b" => LawId::Bessel,
            "s" => LawId::ShiftedGaussian,
            "gamma" => LawId::Semicircle,
            "pi" => LawId::FreePoisson,
            "beta" => LawId::FreeBessel,
            "sigma" => LawId::ShiftedSemicircle,
            "rho" => LawId::Rayleigh,
            _ => return Err(Error::UnknownLaw(name.to_string())),
        };
        Ok((law, primed))
    }

    pub fn kind(self) -> Kind {
        match self {
            LawId::Gaussian
            | LawId::Poisson
            | LawId::Bessel
            | LawId::ShiftedGaussian
            | LawId::Rayleigh => Kind::Classical,
            _ => Kind::Free,
        }
    }
}

fn binomial(n: usize, k: usize) -> BigRational {
    if k > n {
        return BigRational::zero();
    }
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for i in 0..k {
        num *= BigInt::from(n - i);
        den *= BigInt::from(i + 1);
    }
    BigRational::new(num, den)
}

fn double_factorial_odd(j: usize) -> BigRational {
    // (2j - 1)!! = 1 * 3 * ... * (2j - 1)
    let mut acc = BigInt::one();
    for i in 1..=j {
        acc *= BigInt::from(2 * i - 1);
    }
    BigRational::from_integer(acc)
}

fn catalan(j: usize) -> BigRational {
    binomial(2 * j, j) / BigRational::from_integer(BigInt::from(j + 1))
}

fn factorial(j: usize) -> BigRational {
    let mut acc = BigInt::one();
    for i in 2..=j {
        acc *= BigInt::from(i);
    }
    BigRational::from_integer(acc)
}

fn gaussian_moments(kmax: usize) -> Vec<TPoly> {
    (1..=kmax)
        .map(|k| {
            if k % 2 == 0 {
                TPoly::monomial(k / 2, double_factorial_odd(k / 2))
            } else {
                TPoly::zero()
            }
        })
        .collect()
}

fn poisson_moments(kmax: usize) -> Vec<TPoly> {
    // m_{k+1} = t * sum_j C(k,j) m_j, with m_0 = 1
    let mut with_zero = vec![TPoly::one()];
    for k in 0..kmax {
        let mut sum = TPoly::zero();
        for (j, m) in with_zero.iter().enumerate() {
            sum = sum.add(&m.scale(&binomial(k, j)));
        }
        with_zero.push(sum.mul(&TPoly::t()));
    }
    with_zero.remove(0);
    with_zero
}

fn semicircle_moments(kmax: usize) -> Vec<TPoly> {
    (1..=kmax)
        .map(|k| {
            if k % 2 == 0 {
                TPoly::monomial(k / 2, catalan(k / 2))
            } else {
                TPoly::zero()
            }
        })
        .collect()
}

fn free_poisson_moments(kmax: usize) -> Vec<TPoly> {
    // Narayana polynomial: m_k = sum_j (1/k) C(k,j) C(k,j-1) t^j
    (1..=kmax)
        .map(|k| {
            let mut m = TPoly::zero();
            for j in 1..=k {
                let narayana = binomial(k, j) * binomial(k, j - 1)
                    / BigRational::from_integer(BigInt::from(k));
                m.add_assign_term(j, &narayana);
            }
            m
        })
        .collect()
}

fn shift_by_t(moments: &[TPoly]) -> Vec<TPoly> {
    // E((t + X)^k) = sum_r C(k,r) t^r m_{k-r}
    let kmax = moments.len();
    (1..=kmax)
        .map(|k| {
            let mut out = TPoly::zero();
            for r in 0..=k {
                let base = if r == k {
                    TPoly::one()
                } else {
                    moments[k - r - 1].clone()
                };
                out = out.add(&base.mul(&TPoly::monomial(r, binomial(k, r))));
            }
            out
        })
        .collect()
}

/// Asymptotic character moments `m_1..m_kmax` of a category, each a sum
/// of `t^{b(p)}` over the category members of `P(0,k)`.
pub fn partition_sum_moments(c: CategoryId, kmax: usize) -> Result<Vec<TPoly>> {
    (1..=kmax).map(|k| char_moment_asymptotic(c, k)).collect()
}

fn symmetrize(moments: &mut [TPoly]) {
    for (idx, m) in moments.iter_mut().enumerate() {
        if idx % 2 == 0 {
            // odd moment (index idx holds m_{idx+1})
            *m = TPoly::zero();
        }
    }
}

/// Moments `m_1..m_K` of the requested law, as polynomials in `t`.
/// `primed` symmetrizes: odd moments zero, even moments unchanged.
pub fn law_moments(law: LawId, primed: bool, kmax: usize) -> Result<MomentSequence> {
    let mut entries = match law {
        LawId::Gaussian => gaussian_moments(kmax),
        LawId::Poisson => poisson_moments(kmax),
        LawId::Bessel => partition_sum_moments(CategoryId::Classical(Family::H), kmax)?,
        LawId::ShiftedGaussian => shift_by_t(&gaussian_moments(kmax)),
        LawId::Semicircle => semicircle_moments(kmax),
        LawId::FreePoisson => free_poisson_moments(kmax),
        LawId::FreeBessel => partition_sum_moments(CategoryId::Free(Family::H), kmax)?,
        LawId::ShiftedSemicircle => shift_by_t(&semicircle_moments(kmax)),
        LawId::Rayleigh => (1..=kmax)
            .map(|k| {
                if k % 2 == 0 {
                    TPoly::monomial(k / 2, factorial(k / 2))
                } else {
                    TPoly::zero()
                }
            })
            .collect(),
    };
    if primed {
        symmetrize(&mut entries);
    }
    Ok(MomentSequence {
        kind: law.kind(),
        entries,
    })
}

/// Convolution-semigroup verdict for the asymptotic character law of a
/// category, decided through cumulant linearity in `t`.
#[derive(Clone, Debug)]
pub struct SemigroupVerdict {
    pub category: CategoryId,
    pub cumulants: Vec<TPoly>,
    pub semigroup: bool,
    /// First cumulant nonlinear in `t`, as `(order, polynomial)`.
    pub certificate: Option<(usize, TPoly)>,
}

/// Computes the cumulants (classical for classical categories and the
/// half-liberated one, free for the noncrossing ones) of the asymptotic
/// character moments, and reports whether they are all of the form `a·t`.
pub fn semigroup_verdict(c: CategoryId, kmax: usize) -> Result<SemigroupVerdict> {
    let kind = if c.is_free() {
        Kind::Free
    } else {
        Kind::Classical
    };
    let moments = MomentSequence {
        kind,
        entries: partition_sum_moments(c, kmax)?,
    };
    let cumulants = cumulants_from_moments(&moments)?.entries;
    let certificate = cumulants
        .iter()
        .enumerate()
        .find(|(_, p)| !p.is_linear_in_t())
        .map(|(i, p)| (i + 1, p.clone()));
    Ok(SemigroupVerdict {
        category: c,
        semigroup: certificate.is_none(),
        cumulants,
        certificate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn t_pow(p: usize, c: i64) -> TPoly {
        TPoly::monomial(p, int(c))
    }

    fn constant_cumulants(kind: Kind, values: &[(usize, i64)], kmax: usize) -> CumulantSequence {
        let mut entries = vec![TPoly::zero(); kmax];
        for &(order, scale) in values {
            entries[order - 1] = TPoly::t().scale(&int(scale));
        }
        CumulantSequence { kind, entries }
    }

    #[test]
    fn moments_from_all_t_cumulants_is_bell_polynomial() {
        let c = CumulantSequence {
            kind: Kind::Classical,
            entries: vec![TPoly::t(); 3],
        };
        let m = moments_from_cumulants(&c).unwrap();
        // k = 3: t + 3t^2 + t^3
        assert_eq!(
            m.entries[2],
            t_pow(1, 1).add(&t_pow(2, 3)).add(&t_pow(3, 1))
        );
    }

    #[test]
    fn pair_cumulants_give_pairings_counts() {
        let free = constant_cumulants(Kind::Free, &[(2, 1)], 4);
        let m = moments_from_cumulants(&free).unwrap();
        assert_eq!(m.entries[3], t_pow(2, 2)); // Catalan C_2 = 2
        let classical = constant_cumulants(Kind::Classical, &[(2, 1)], 4);
        let m = moments_from_cumulants(&classical).unwrap();
        assert_eq!(m.entries[3], t_pow(2, 3)); // 3 pairings of 4
    }

    #[test]
    fn cumulants_from_moments_examples() {
        // classical H sequence (0, t, 0, t + 3t^2) has cumulants (0, t, 0, t)
        let m = MomentSequence {
            kind: Kind::Classical,
            entries: vec![
                TPoly::zero(),
                TPoly::t(),
                TPoly::zero(),
                TPoly::t().add(&t_pow(2, 3)),
            ],
        };
        let c = cumulants_from_moments(&m).unwrap();
        assert_eq!(
            c.entries,
            vec![TPoly::zero(), TPoly::t(), TPoly::zero(), TPoly::t()]
        );
        // free H+ sequence (0, t, 0, t + 2t^2) likewise
        let m = MomentSequence {
            kind: Kind::Free,
            entries: vec![
                TPoly::zero(),
                TPoly::t(),
                TPoly::zero(),
                TPoly::t().add(&t_pow(2, 2)),
            ],
        };
        let c = cumulants_from_moments(&m).unwrap();
        assert_eq!(
            c.entries,
            vec![TPoly::zero(), TPoly::t(), TPoly::zero(), TPoly::t()]
        );
        // point mass at zero
        let m = MomentSequence {
            kind: Kind::Free,
            entries: vec![TPoly::zero(); 5],
        };
        let c = cumulants_from_moments(&m).unwrap();
        assert!(c.entries.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn round_trip_both_kinds() {
        for kind in [Kind::Classical, Kind::Free] {
            let c = CumulantSequence {
                kind,
                entries: vec![
                    TPoly::t(),
                    t_pow(2, 5),
                    TPoly::constant(BigRational::new(3.into(), 7.into())),
                    TPoly::zero(),
                    t_pow(1, -2),
                ],
            };
            let m = moments_from_cumulants(&c).unwrap();
            assert_eq!(cumulants_from_moments(&m).unwrap().entries, c.entries);
        }
    }

    #[test]
    fn bercovici_pata_examples() {
        let gauss = law_moments(LawId::Gaussian, false, 4).unwrap();
        let bp = bercovici_pata(&gauss).unwrap();
        assert_eq!(bp.entries[3], t_pow(2, 2)); // 3t^2 -> 2t^2
        let poisson = law_moments(LawId::Poisson, false, 4).unwrap();
        assert_eq!(
            poisson.entries[3],
            t_pow(1, 1)
                .add(&t_pow(2, 7))
                .add(&t_pow(3, 6))
                .add(&t_pow(4, 1))
        );
        let bp = bercovici_pata(&poisson).unwrap();
        assert_eq!(
            bp.entries[3],
            t_pow(1, 1)
                .add(&t_pow(2, 6))
                .add(&t_pow(3, 6))
                .add(&t_pow(4, 1))
        );
        let zero = MomentSequence {
            kind: Kind::Classical,
            entries: vec![TPoly::zero(); 6],
        };
        let bp = bercovici_pata(&zero).unwrap();
        assert!(bp.entries.iter().all(|p| p.is_zero()));
    }

    #[test]
    fn law_oracle_values() {
        let g = law_moments(LawId::Gaussian, false, 6).unwrap();
        let at_one: Vec<BigRational> = g.entries.iter().map(|p| p.eval(&int(1))).collect();
        assert_eq!(
            at_one,
            vec![int(0), int(1), int(0), int(3), int(0), int(15)]
        );

        let s = law_moments(LawId::ShiftedGaussian, false, 2).unwrap();
        assert_eq!(s.entries[1], t_pow(1, 1).add(&t_pow(2, 1)));

        let rho = law_moments(LawId::Rayleigh, true, 6).unwrap();
        assert_eq!(rho.entries[5].eval(&int(1)), int(6)); // 3! = 6

        let semi = law_moments(LawId::Semicircle, false, 6).unwrap();
        assert_eq!(semi.entries[5], t_pow(3, 5)); // C_3 = 5
    }

    #[test]
    fn semigroup_verdicts() {
        let v = semigroup_verdict(CategoryId::Classical(Family::O), 6).unwrap();
        assert!(v.semigroup);
        assert_eq!(v.cumulants[1], TPoly::t());
        assert!(v.cumulants[0].is_zero() && v.cumulants[2].is_zero());

        let v = semigroup_verdict(CategoryId::Classical(Family::B), 6).unwrap();
        assert!(v.semigroup);
        assert_eq!(v.cumulants[0], TPoly::t());
        assert_eq!(v.cumulants[1], TPoly::t());

        let v = semigroup_verdict(CategoryId::Classical(Family::SPrime), 6).unwrap();
        assert!(!v.semigroup);
        let (order, cert) = v.certificate.unwrap();
        assert_eq!(order, 2);
        assert_eq!(cert, TPoly::t().add(&t_pow(2, 1))); // c_2 = t + t^2
    }
}
