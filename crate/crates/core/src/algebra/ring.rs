use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Coefficient rings, each with its involution.
///
/// Elements of `CyclicGroupRing(m)` = `ℤ[ℤ/m]` are coefficient vectors of
/// length `m` indexed by group elements; the involution sends `g ↦ g⁻¹`.
/// The other rings carry the identity involution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Ring {
    Integers,
    PrimeField(u64),
    CyclicGroupRing(usize),
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Ring::PrimeField(p))
        } else {
            Err(Error::UnsupportedRing(format!("Z/{p} is not a field")))
        }
    }

    pub fn group_ring(m: usize) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedRing(
                "group ring of the empty group".into(),
            ));
        }
        Ok(Ring::CyclicGroupRing(m))
    }

    /// Number of integer coefficients per element.
    pub fn width(self) -> usize {
        match self {
            Ring::CyclicGroupRing(m) => m,
            _ => 1,
        }
    }

    /// Rings whose homology is computed directly (ℤ and prime fields).
    pub fn is_scalar(self) -> bool {
        !matches!(self, Ring::CyclicGroupRing(_))
    }

    pub fn ensure_scalar(self) -> Result<()> {
        if self.is_scalar() {
            Ok(())
        } else {
            Err(Error::UnsupportedRing(format!(
                "{self} (restrict scalars first)"
            )))
        }
    }

    /// Reduce a scalar into canonical form (`0..p` for prime fields).
    pub fn normalize(self, v: BigInt) -> BigInt {
        match self {
            Ring::PrimeField(p) => v.mod_floor(&BigInt::from(p)),
            _ => v,
        }
    }

    pub fn normalize_in_place(self, coeffs: &mut [BigInt]) {
        if let Ring::PrimeField(p) = self {
            let p = BigInt::from(p);
            for c in coeffs {
                *c = c.mod_floor(&p);
            }
        }
    }

    /// `a · b`, accumulated into `out` (all slices of length `width`).
    pub fn mul_add(self, out: &mut [BigInt], a: &[BigInt], b: &[BigInt]) {
        match self {
            Ring::CyclicGroupRing(m) => {
                for (i, ai) in a.iter().enumerate() {
                    if ai.is_zero() {
                        continue;
                    }
                    for (j, bj) in b.iter().enumerate() {
                        if !bj.is_zero() {
                            out[(i + j) % m] += ai * bj;
                        }
                    }
                }
            }
            _ => {
                out[0] += &a[0] * &b[0];
                self.normalize_in_place(out);
            }
        }
    }

    /// `r ↦ r̄`.
    pub fn involute(self, a: &[BigInt]) -> Vec<BigInt> {
        match self {
            Ring::CyclicGroupRing(m) => (0..m).map(|g| a[(m - g) % m].clone()).collect(),
            _ => a.to_vec(),
        }
    }

    pub fn one(self) -> Vec<BigInt> {
        let mut v = vec![BigInt::zero(); self.width()];
        v[0] = BigInt::one();
        v
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::PrimeField(p) => write!(f, "Z/{p}"),
            Ring::CyclicGroupRing(m) => write!(f, "Z[Z/{m}]"),
        }
    }
}

impl Serialize for Ring {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Accepts `Z`, `Zp`/`Z/p` for a prime `p`, and `Z[Z/m]`.
impl FromStr for Ring {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        if let Some(inner) = s.strip_prefix("Z[Z/").and_then(|r| r.strip_suffix(']')) {
            let m = inner
                .parse()
                .map_err(|_| Error::UnsupportedRing(s.to_string()))?;
            return Ring::group_ring(m);
        }
        let digits = s.strip_prefix("Z/").or_else(|| s.strip_prefix('Z'));
        match digits.and_then(|d| d.parse::<u64>().ok()) {
            Some(p) => Ring::prime_field(p),
            None => Err(Error::UnsupportedRing(s.to_string())),
        }
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn parse_rings() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Z2".parse::<Ring>().unwrap(), Ring::PrimeField(2));
        assert_eq!("Z/7".parse::<Ring>().unwrap(), Ring::PrimeField(7));
        assert_eq!("Z[Z/3]".parse::<Ring>().unwrap(), Ring::CyclicGroupRing(3));
        assert!("Z4".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
        assert!(Ring::prime_field(1).is_err());
    }

    #[test]
    fn group_ring_multiplication_and_involution() {
        let r = Ring::CyclicGroupRing(3);
        // (1 + 2t)(t²) = t² + 2
        let mut out = ints(&[0, 0, 0]);
        r.mul_add(&mut out, &ints(&[1, 2, 0]), &ints(&[0, 0, 1]));
        assert_eq!(out, ints(&[2, 0, 1]));
        // involution t ↦ t⁻¹ = t², and it has order two
        assert_eq!(r.involute(&ints(&[5, 1, 0])), ints(&[5, 0, 1]));
        assert_eq!(r.involute(&r.involute(&ints(&[4, 7, 9]))), ints(&[4, 7, 9]));
    }

    #[test]
    fn prime_field_reduces() {
        let r = Ring::PrimeField(5);
        assert_eq!(r.normalize(BigInt::from(-3)), BigInt::from(2));
        let mut out = ints(&[4]);
        r.mul_add(&mut out, &ints(&[3]), &ints(&[4]));
        assert_eq!(out, ints(&[1]));
    }
}
