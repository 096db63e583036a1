//! Generalized second-order recurrences `g(n) = a*g(n-1) + b*g(n-2)`.
//!
//! The base sequence `e` starts from `(0, 1)`. Arbitrary starting values
//! `(p, q)` give `g(0) = p`, `g(1) = q`. For `b = 1` every sequence can be
//! walked backwards to its fundamental starting values, the first pair with
//! `q - a*p < 0`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::json;

/// Hard stop for [`fundamental_pair`].
pub const MAX_BACKTRACK_STEPS: u64 = 1_000_000;

/// The tuple `(a, b, p, q)` defining one sequence instance.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct RecurrenceParams {
    #[serde(serialize_with = "json::int")]
    a: BigInt,
    #[serde(serialize_with = "json::int")]
    b: BigInt,
    #[serde(serialize_with = "json::int")]
    p: BigInt,
    #[serde(serialize_with = "json::int")]
    q: BigInt,
}

impl RecurrenceParams {
    /// Fails unless `a >= 1` and `b >= 1`.
    pub fn new(
        a: impl Into<BigInt>,
        b: impl Into<BigInt>,
        p: impl Into<BigInt>,
        q: impl Into<BigInt>,
    ) -> Result<Self> {
        let (a, b) = (a.into(), b.into());
        if a < BigInt::one() {
            return Err(invalid(format!("a must be >= 1, got {a}")));
        }
        if b < BigInt::one() {
            return Err(invalid(format!("b must be >= 1, got {b}")));
        }
        Ok(RecurrenceParams {
            a,
            b,
            p: p.into(),
            q: q.into(),
        })
    }

    /// `e(n) = a*e(n-1) + e(n-2)` with `e(0) = 0`, `e(1) = 1`.
    pub fn base(a: impl Into<BigInt>) -> Result<Self> {
        Self::new(a, 1, 0, 1)
    }

    /// Same `a`, `b` with the starting values replaced.
    pub fn with_start(&self, p: impl Into<BigInt>, q: impl Into<BigInt>) -> Self {
        RecurrenceParams {
            a: self.a.clone(),
            b: self.b.clone(),
            p: p.into(),
            q: q.into(),
        }
    }

    /// The `(0, 1)`-started sequence with the same coefficients.
    pub fn base_sequence(&self) -> Self {
        self.with_start(0, 1)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn is_unit_b(&self) -> bool {
        self.b.is_one()
    }

    /// Infinite iterator over `g(0), g(1), ...`.
    pub fn terms(&self) -> Terms<'_> {
        Terms {
            params: self,
            current: self.p.clone(),
            next: self.q.clone(),
        }
    }

    /// `g(index)` by forward iteration.
    pub fn term(&self, index: u64) -> BigInt {
        let mut terms = self.terms();
        for _ in 0..index {
            terms.advance();
        }
        terms.current
    }

    /// `(g(index), g(index + 1))`.
    pub fn term_pair(&self, index: u64) -> (BigInt, BigInt) {
        let mut terms = self.terms();
        for _ in 0..index {
            terms.advance();
        }
        (terms.current, terms.next)
    }

    fn require_unit_b(&self, op: &str) -> Result<()> {
        if self.is_unit_b() {
            Ok(())
        } else {
            Err(invalid(format!("{op} requires b = 1, got b = {}", self.b)))
        }
    }
}

/// Iterator over the terms of a recurrence.
#[derive(Debug, Clone)]
pub struct Terms<'a> {
    params: &'a RecurrenceParams,
    current: BigInt,
    next: BigInt,
}

impl Terms<'_> {
    fn advance(&mut self) {
        let following = &self.params.a * &self.next + &self.params.b * &self.current;
        self.current = std::mem::replace(&mut self.next, following);
    }
}

impl Iterator for Terms<'_> {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let out = self.current.clone();
        self.advance();
        Some(out)
    }
}

/// A contiguous run of sequence values starting at `start_index`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SequenceWindow {
    pub params: RecurrenceParams,
    pub start_index: u64,
    #[serde(serialize_with = "json::int_vec")]
    pub values: Vec<BigInt>,
}

impl SequenceWindow {
    /// True if every interior triple satisfies the recurrence.
    pub fn is_consistent(&self) -> bool {
        self.values.windows(3).all(|w| {
            w[2] == self.params.a() * &w[1] + self.params.b() * &w[0]
        })
    }
}

/// Fundamental starting values reached by backtracking, plus the constant `R`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FundamentalPair {
    #[serde(serialize_with = "json::int")]
    pub p_hat: BigInt,
    #[serde(serialize_with = "json::int")]
    pub q_hat: BigInt,
    pub steps_back: u64,
    /// Signed. Only `|R|` is invariant under backtracking.
    #[serde(rename = "R", serialize_with = "json::int")]
    pub r: BigInt,
}

impl FundamentalPair {
    /// The default pair for the `(0, 1)` sequence is `(1, 0)` with `R = -1`.
    pub fn params(&self, a: impl Into<BigInt>) -> Result<RecurrenceParams> {
        RecurrenceParams::new(a, 1, self.p_hat.clone(), self.q_hat.clone())
    }
}

/// `R = q^2 - a*p*q - p^2`.
pub fn r_constant(a: &BigInt, p: &BigInt, q: &BigInt) -> BigInt {
    q * q - a * p * q - p * p
}

/// Values `g(0) .. g(count - 1)`.
pub fn generate(params: &RecurrenceParams, count: usize) -> Result<SequenceWindow> {
    if count == 0 {
        return Err(invalid("count must be >= 1"));
    }
    Ok(SequenceWindow {
        params: params.clone(),
        start_index: 0,
        values: params.terms().take(count).collect(),
    })
}

/// `g(i)^2 + a*g(i+1)*g(i) - g(i+1)^2`, which equals `(-1)^(i+1) * R`.
pub fn theorem1_residual(params: &RecurrenceParams, i: u64) -> Result<BigInt> {
    params.require_unit_b("theorem1_residual")?;
    let (x, y) = params.term_pair(i);
    Ok(&x * &x + params.a() * &y * &x - &y * &y)
}

/// Walks `(p, q) -> (q - a*p, p)` until `q - a*p < 0`.
pub fn fundamental_pair(params: &RecurrenceParams) -> Result<FundamentalPair> {
    fundamental_pair_bounded(params, MAX_BACKTRACK_STEPS)
}

pub fn fundamental_pair_bounded(params: &RecurrenceParams, max_steps: u64) -> Result<FundamentalPair> {
    params.require_unit_b("fundamental_pair")?;
    if params.p().is_zero() && params.q().is_zero() {
        return Err(invalid("(p, q) = (0, 0) is the zero sequence"));
    }
    let a = params.a();
    let (mut p, mut q) = (params.p().clone(), params.q().clone());
    let mut steps = 0u64;
    loop {
        let gap = &q - a * &p;
        if gap.is_negative() {
            break;
        }
        if steps == max_steps {
            return Err(Error::BacktrackDiverged { steps });
        }
        q = std::mem::replace(&mut p, gap);
        steps += 1;
    }
    let r = r_constant(a, &p, &q);
    Ok(FundamentalPair {
        p_hat: p,
        q_hat: q,
        steps_back: steps,
        r,
    })
}

/// `b*e(i)^2 + a*e(i+1)*e(i) - e(i+1)^2 + (-b)^i` on the `(0, 1)` sequence.
///
/// Zero for every `i` by the extended Cassini identity. The starting values
/// of `params` are ignored.
pub fn cassini_residual(params: &RecurrenceParams, i: u64) -> BigInt {
    let base = params.base_sequence();
    let (x, y) = base.term_pair(i);
    let (a, b) = (base.a(), base.b());
    let mut sign_power = num_traits::pow(b.clone(), i as usize);
    if i % 2 == 1 {
        sign_power = -sign_power;
    }
    b * &x * &x + a * &y * &x - &y * &y + sign_power
}

/// `(g(2n-1), g(2n))` assembled from the base sequence `e`:
///
/// ```text
/// g(2n-1) = q*e(2n-3) + (q*a + p)*e(2n-2)
/// g(2n)   = (q*(a^2 + 1) + a*p)*e(2n-2) + (q*a + p)*e(2n-3)
/// ```
///
/// Here `(p, q) = (g(0), g(1))`.
pub fn g_from_e(params: &RecurrenceParams, n: u64) -> Result<(BigInt, BigInt)> {
    params.require_unit_b("g_from_e")?;
    if n < 2 {
        return Err(invalid(format!("g_from_e needs n >= 2, got {n}")));
    }
    let (a, p, q) = (params.a(), params.p(), params.q());
    let (e_odd, e_even) = params.base_sequence().term_pair(2 * n - 3);
    let shifted = q * a + p;
    let odd = q * &e_odd + &shifted * &e_even;
    let even = (q * (a * a + 1) + a * p) * &e_even + &shifted * &e_odd;
    Ok((odd, even))
}
