//! Integer square roots and the scaled Pell equations `X^2 - (a^2+4)*Y^2 = ±4`.

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{invalid, Result};
use crate::json;
use crate::sequences::RecurrenceParams;

/// `floor(sqrt(n))` and whether it is exact.
pub fn isqrt(n: &BigInt) -> Result<(BigInt, bool)> {
    match n.sign() {
        Sign::Minus => Err(invalid(format!("isqrt of negative value {n}"))),
        _ => {
            let (root, exact) = isqrt_unsigned(n.magnitude());
            Ok((BigInt::from(root), exact))
        }
    }
}

/// Root of `n` if it is a perfect square; negative inputs are never square.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    match isqrt_unsigned(n.magnitude()) {
        (root, true) => Some(BigInt::from(root)),
        _ => None,
    }
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    !n.is_negative() && isqrt_unsigned(n.magnitude()).1
}

fn isqrt_unsigned(n: &BigUint) -> (BigUint, bool) {
    if let Some(small) = n.to_u128() {
        let root = small.isqrt();
        return (BigUint::from(root), root * root == small);
    }
    let root = n.sqrt();
    let exact = &root * &root == *n;
    (root, exact)
}

/// `D = a^2 + 4`.
pub fn discriminant(a: &BigInt) -> BigInt {
    a * a + 4
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PellSign {
    #[serde(rename = "+4")]
    Plus,
    #[serde(rename = "-4")]
    Minus,
}

impl PellSign {
    pub fn value(self) -> i32 {
        match self {
            PellSign::Plus => 4,
            PellSign::Minus => -4,
        }
    }
}

/// `p_val^2 - (a^2+4) * y_val^2 = sign`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PellSolution {
    #[serde(serialize_with = "json::int")]
    pub p_val: BigInt,
    #[serde(serialize_with = "json::int")]
    pub y_val: BigInt,
    pub sign: PellSign,
}

impl PellSolution {
    pub fn residual(&self, a: &BigInt) -> BigInt {
        &self.p_val * &self.p_val - discriminant(a) * &self.y_val * &self.y_val
    }

    pub fn holds(&self, a: &BigInt) -> bool {
        self.residual(a) == BigInt::from(self.sign.value())
    }
}

/// First `count` solutions in increasing `y_val`.
///
/// `y_val` walks the even-indexed (`+4`) or odd-indexed (`-4`) terms of the
/// base sequence; `p_val` walks the same indices of the companion sequence
/// `2, a, a^2+2, ...`. Each solution is checked before it is returned.
pub fn pell4_solutions(a: &BigInt, sign: PellSign, count: usize) -> Result<Vec<PellSolution>> {
    if count == 0 {
        return Err(invalid("count must be >= 1"));
    }
    let base = RecurrenceParams::base(a.clone())?;
    let companion = base.with_start(2, a.clone());
    let offset = match sign {
        PellSign::Plus => 0,
        PellSign::Minus => 1,
    };
    let out: Vec<PellSolution> = base
        .terms()
        .zip(companion.terms())
        .skip(offset)
        .step_by(2)
        .take(count)
        .map(|(y_val, p_val)| PellSolution { p_val, y_val, sign })
        .collect();
    // D is never a square, so a failed check would be a construction bug
    if let Some(bad) = out.iter().find(|s| !s.holds(a)) {
        return Err(invalid(format!(
            "internal: ({}, {}) does not solve the Pell equation",
            bad.p_val, bad.y_val
        )));
    }
    Ok(out)
}

/// The discriminant square `p` for `x`: `sqrt(x^2*(a^2+4) ± 4)` if exact.
pub fn discriminant_root(a: &BigInt, x: &BigInt, sign: PellSign) -> Option<BigInt> {
    exact_sqrt(&(x * x * discriminant(a) + sign.value()))
}
