//! Polynomials in the truncation parameter `t` with exact rational
//! coefficients, used for asymptotic character moments and cumulants.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigRational, One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, parse_rational};

/// A polynomial in `t` with finite support, stored sparsely by power.
/// Zero coefficients are never stored, so `Eq` is polynomial equality.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TPoly {
    coeffs: BTreeMap<usize, BigRational>,
}

impl TPoly {
    pub fn zero() -> TPoly {
        TPoly::default()
    }

    pub fn one() -> TPoly {
        TPoly::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> TPoly {
        TPoly::monomial(0, c)
    }

    /// The variable `t` itself.
    pub fn t() -> TPoly {
        TPoly::monomial(1, BigRational::one())
    }

    pub fn monomial(power: usize, coeff: BigRational) -> TPoly {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(power, coeff);
        }
        TPoly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, power: usize) -> BigRational {
        self.coeffs
            .get(&power)
            .cloned()
            .unwrap_or_else(BigRational::zero)
    }

    /// Nonzero terms as (power, coefficient), ascending in power.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.coeffs.iter().map(|(&p, c)| (p, c))
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_assign_term(&mut self, power: usize, coeff: &BigRational) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(power).or_insert_with(BigRational::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&power);
        }
    }

    pub fn add(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_assign_term(p, c);
        }
        out
    }

    pub fn sub(&self, other: &TPoly) -> TPoly {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_assign_term(p, &-c.clone());
        }
        out
    }

    pub fn neg(&self) -> TPoly {
        TPoly::zero().sub(self)
    }

    pub fn mul(&self, other: &TPoly) -> TPoly {
        let mut out = TPoly::zero();
        for (p1, c1) in self.terms() {
            for (p2, c2) in other.terms() {
                out.add_assign_term(p1 + p2, &(c1 * c2));
            }
        }
        out
    }

    pub fn scale(&self, factor: &BigRational) -> TPoly {
        let mut out = TPoly::zero();
        for (p, c) in self.terms() {
            out.add_assign_term(p, &(c * factor));
        }
        out
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        let mut power_cache = BigRational::one();
        let mut current = 0usize;
        for (p, c) in self.terms() {
            while current < p {
                power_cache *= t;
                current += 1;
            }
            acc += c * &power_cache;
        }
        acc
    }

    /// True iff the polynomial is `a·t` for some constant `a` (possibly 0).
    pub fn is_linear_in_t(&self) -> bool {
        self.coeffs.keys().all(|&p| p == 1)
    }

    /// Serializes to a `{power: "num/den"}` map with string keys.
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .terms()
            .map(|(p, c)| (p.to_string(), serde_json::Value::String(format_rational(c))))
            .collect();
        serde_json::Value::Object(map)
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TPoly> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::InvalidArgument("polynomial JSON must be an object".into()))?;
        let mut out = TPoly::zero();
        for (k, val) in obj {
            let power: usize = k
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("bad power key {k:?}")))?;
            let coeff = match val {
                serde_json::Value::String(s) => parse_rational(s)?,
                serde_json::Value::Number(n) => parse_rational(&n.to_string())?,
                _ => {
                    return Err(Error::InvalidArgument(format!(
                        "bad coefficient for power {k}"
                    )))
                }
            };
            out.add_assign_term(power, &coeff);
        }
        Ok(out)
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            match p {
                0 => write!(f, "{}", format_rational(c))?,
                _ => {
                    if !c.is_one() {
                        write!(f, "{}*", format_rational(c))?;
                    }
                    if p == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{p}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
