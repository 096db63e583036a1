//! Exact arithmetic in `Z[w]` with `w = (a + sqrt(a^2 + 4)) / 2`.
//!
//! Elements are stored in the `w`-basis as integer coordinates `u + v*w`.
//! `w^2 = a*w + 1` closes the ring, so no radicals are ever formed.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::json;
use crate::sequences::RecurrenceParams;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RingElement {
    #[serde(rename = "a", serialize_with = "json::int")]
    a_param: BigInt,
    #[serde(serialize_with = "json::int")]
    pub u: BigInt,
    #[serde(serialize_with = "json::int")]
    pub v: BigInt,
}

impl RingElement {
    pub fn new(a: impl Into<BigInt>, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        if a < BigInt::one() {
            return Err(invalid(format!("a must be >= 1, got {a}")));
        }
        Ok(RingElement {
            a_param: a,
            u: u.into(),
            v: v.into(),
        })
    }

    pub fn one(a: impl Into<BigInt>) -> Result<Self> {
        Self::new(a, 1, 0)
    }

    /// `1 + a*w`, the generator of the norm-1 solutions.
    pub fn fundamental_unit(a: impl Into<BigInt>) -> Result<Self> {
        let a = a.into();
        Self::new(a.clone(), 1, a)
    }

    pub fn a_param(&self) -> &BigInt {
        &self.a_param
    }

    /// `u^2 + a*u*v - v^2`.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u + &self.a_param * &self.u * &self.v - &self.v * &self.v
    }

    /// Galois conjugate `u + v*w'` with `w' = a - w`, in the `w`-basis.
    pub fn conjugate(&self) -> Self {
        RingElement {
            a_param: self.a_param.clone(),
            u: &self.u + &self.a_param * &self.v,
            v: -&self.v,
        }
    }

    pub fn mul(&self, rhs: &RingElement) -> Result<RingElement> {
        if self.a_param != rhs.a_param {
            return Err(Error::RingMismatch {
                lhs: self.a_param.to_string(),
                rhs: rhs.a_param.to_string(),
            });
        }
        Ok(self.mul_unchecked(rhs))
    }

    fn mul_unchecked(&self, rhs: &RingElement) -> RingElement {
        let vv = &self.v * &rhs.v;
        RingElement {
            u: &self.u * &rhs.u + &vv,
            v: &self.u * &rhs.v + &rhs.u * &self.v + &self.a_param * vv,
            a_param: self.a_param.clone(),
        }
    }

    /// Binary exponentiation.
    pub fn pow(&self, mut exp: u64) -> RingElement {
        let mut base = self.clone();
        let mut acc = RingElement {
            a_param: self.a_param.clone(),
            u: BigInt::one(),
            v: BigInt::zero(),
        };
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn coordinates(&self) -> (&BigInt, &BigInt) {
        (&self.u, &self.v)
    }
}

pub fn ring_mul(lhs: &RingElement, rhs: &RingElement) -> Result<RingElement> {
    lhs.mul(rhs)
}

/// `(1 + a*w)^n`, equal to `e(2n-1) + e(2n)*w`.
pub fn fundamental_power(a: &BigInt, n: u64) -> Result<RingElement> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    Ok(RingElement::fundamental_unit(a.clone())?.pow(n))
}

/// `(q + (q*a + p)*w) * (1 + a*w)^(n-1)`, equal to `g(2n-1) + g(2n)*w`.
pub fn shifted_power(a: &BigInt, p: &BigInt, q: &BigInt, n: u64) -> Result<RingElement> {
    if n == 0 {
        return Err(invalid("n must be >= 1"));
    }
    let start = RingElement::new(a.clone(), q.clone(), q * a + p)?;
    let unit = RingElement::fundamental_unit(a.clone())?;
    Ok(start.mul_unchecked(&unit.pow(n - 1)))
}

/// All `(e(2n-1), e(2n))`, `n >= 1`, with both coordinates `<= bound`.
pub fn enumerate_unit_solutions(a: &BigInt, bound: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    let unit = RingElement::fundamental_unit(a.clone())?;
    let mut out = Vec::new();
    let mut current = unit.clone();
    // v = e(2n) dominates u = e(2n-1) and grows strictly
    while &current.v <= bound {
        if &current.u <= bound {
            out.push((current.u.clone(), current.v.clone()));
        }
        current = current.mul_unchecked(&unit);
    }
    Ok(out)
}

/// All `(e(2n), e(2n+1))`, `n >= 1`, with both coordinates `<= bound`:
/// the positive solutions of `x^2 + a*x*y - y^2 = -1`.
pub fn enumerate_negative_unit_solutions(a: &BigInt, bound: &BigInt) -> Result<Vec<(BigInt, BigInt)>> {
    // w itself has norm -1 and coordinates (e(0), e(1)); multiply by (1 + a*w)
    let unit = RingElement::fundamental_unit(a.clone())?;
    let mut current = RingElement::new(a.clone(), 0, 1)?.mul_unchecked(&unit);
    let mut out = Vec::new();
    while &current.v <= bound {
        if &current.u <= bound {
            out.push((current.u.clone(), current.v.clone()));
        }
        current = current.mul_unchecked(&unit);
    }
    Ok(out)
}

/// Element `g(k) + g(k+1)*w` for a sequence with `b = 1`.
pub fn element_at(params: &RecurrenceParams, k: u64) -> Result<RingElement> {
    if !params.is_unit_b() {
        return Err(invalid("ring elements model b = 1 sequences only"));
    }
    let (u, v) = params.term_pair(k);
    RingElement::new(params.a().clone(), u, v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(a: i64, u: i64, v: i64) -> RingElement {
        RingElement::new(a, u, v).unwrap()
    }

    #[test]
    fn mul_examples() {
        assert_eq!(ring_mul(&el(1, 1, 1), &el(1, 1, 1)).unwrap(), el(1, 2, 3));
        for a in 1..5 {
            assert_eq!(ring_mul(&el(a, 1, 0), &el(a, -7, 11)).unwrap(), el(a, -7, 11));
        }
        assert_eq!(ring_mul(&el(2, 1, 2), &el(2, 1, 2)).unwrap(), el(2, 5, 12));
    }

    #[test]
    fn mul_rejects_mismatched_rings() {
        assert!(matches!(
            ring_mul(&el(1, 1, 1), &el(2, 1, 1)),
            Err(Error::RingMismatch { .. })
        ));
    }

    #[test]
    fn power_examples() {
        let one = BigInt::from(1);
        assert_eq!(fundamental_power(&one, 1).unwrap(), el(1, 1, 1));
        assert_eq!(fundamental_power(&one, 3).unwrap(), el(1, 5, 8));
        assert_eq!(fundamental_power(&BigInt::from(2), 2).unwrap(), el(2, 5, 12));
        assert!(fundamental_power(&one, 0).is_err());
    }

    #[test]
    fn shifted_power_examples() {
        let b = BigInt::from;
        assert_eq!(shifted_power(&b(1), &b(1), &b(0), 1).unwrap(), el(1, 0, 1));
        assert_eq!(shifted_power(&b(1), &b(2), &b(1), 2).unwrap(), el(1, 4, 7));
        // a = 2 from (1, 0): 1, 0, 1, 2, 5
        assert_eq!(shifted_power(&b(2), &b(1), &b(0), 2).unwrap(), el(2, 2, 5));
    }

    #[test]
    fn unit_solution_examples() {
        let b = BigInt::from;
        let pairs = |v: &[(i64, i64)]| -> Vec<(BigInt, BigInt)> {
            v.iter().map(|&(x, y)| (b(x), b(y))).collect()
        };
        assert_eq!(
            enumerate_unit_solutions(&b(1), &b(10)).unwrap(),
            pairs(&[(1, 1), (2, 3), (5, 8)])
        );
        assert_eq!(enumerate_unit_solutions(&b(2), &b(12)).unwrap(), pairs(&[(1, 2), (5, 12)]));
        assert!(enumerate_unit_solutions(&b(5), &b(1)).unwrap().is_empty());
        assert_eq!(
            enumerate_negative_unit_solutions(&b(1), &b(10)).unwrap(),
            pairs(&[(1, 2), (3, 5)])
        );
    }

    #[test]
    fn conjugate_product_is_norm() {
        let x = el(3, 4, -9);
        let prod = x.mul(&x.conjugate()).unwrap();
        assert_eq!(prod.u, x.norm());
        assert!(prod.v.is_zero());
    }

    #[test]
    fn element_at_tracks_sequence() {
        let lucas = RecurrenceParams::new(1, 1, 2, 1).unwrap();
        let e = element_at(&lucas, 0).unwrap();
        assert_eq!(e.norm(), BigInt::from(5));
        let unit = RingElement::fundamental_unit(1).unwrap();
        assert_eq!(e.mul(&unit).unwrap(), element_at(&lucas, 2).unwrap());
    }
}
