//! Membership in `e(n) = a*e(n-1) + e(n-2)`, `e(0) = 0`, `e(1) = 1`, decided by
//! whether `x^2*(a^2+4) + 4` (even index) or `x^2*(a^2+4) - 4` (odd index)
//! is a perfect square.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::Serialize;

use crate::budget::WorkBudget;
use crate::error::{invalid, Result};
use crate::json;
use crate::pell::{discriminant, is_perfect_square};
use crate::sequences::RecurrenceParams;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Parity {
    EvenIndex,
    OddIndex,
    Both,
    None,
}

impl Parity {
    fn from_flags(even: bool, odd: bool) -> Self {
        match (even, odd) {
            (true, true) => Parity::Both,
            (true, false) => Parity::EvenIndex,
            (false, true) => Parity::OddIndex,
            (false, false) => Parity::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MembershipVerdict {
    pub is_member: bool,
    pub parity: Parity,
    /// Smallest index with `e(index) = x`, recovered by generation.
    pub index: Option<u64>,
}

pub fn member_test(a: &BigInt, x: &BigInt) -> Result<MembershipVerdict> {
    if x.is_negative() {
        return Err(invalid(format!("x must be >= 0, got {x}")));
    }
    let base = RecurrenceParams::base(a.clone())?;
    let scaled = x * x * discriminant(a);
    let even = is_perfect_square(&(&scaled + 4));
    let odd = is_perfect_square(&(&scaled - 4));
    let parity = Parity::from_flags(even, odd);
    let is_member = parity != Parity::None;
    let index = if is_member { recover_index(&base, x) } else { None };
    Ok(MembershipVerdict {
        is_member,
        parity,
        index,
    })
}

fn recover_index(base: &RecurrenceParams, x: &BigInt) -> Option<u64> {
    // terms are non-decreasing from index 1 on
    base.terms()
        .enumerate()
        .take_while(|(k, v)| *k < 2 || v <= x)
        .find(|(_, v)| v == x)
        .map(|(k, _)| k as u64)
}

/// Ground truth for one value, from direct generation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Disagreement {
    #[serde(serialize_with = "json::int")]
    pub x: BigInt,
    pub tested: MembershipVerdict,
    pub generated: MembershipVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SelfCheckReport {
    #[serde(serialize_with = "json::int")]
    pub a: BigInt,
    pub limit: u64,
    pub checked: u64,
    pub members_found: u64,
    pub agree: bool,
    pub first_disagreement: Option<Disagreement>,
}

/// Generated verdicts for every member `<= limit`, keyed by value.
pub fn ground_truth(a: &BigInt, limit: &BigInt) -> Result<BTreeMap<BigInt, MembershipVerdict>> {
    let base = RecurrenceParams::base(a.clone())?;
    let mut truth: BTreeMap<BigInt, (bool, bool, u64)> = BTreeMap::new();
    for (k, v) in base.terms().enumerate() {
        if k >= 2 && &v > limit {
            break;
        }
        if &v > limit {
            continue;
        }
        let entry = truth.entry(v).or_insert((false, false, k as u64));
        if k % 2 == 0 {
            entry.0 = true;
        } else {
            entry.1 = true;
        }
    }
    Ok(truth
        .into_iter()
        .map(|(v, (even, odd, index))| {
            (
                v,
                MembershipVerdict {
                    is_member: true,
                    parity: Parity::from_flags(even, odd),
                    index: Some(index),
                },
            )
        })
        .collect())
}

/// Compares [`member_test`] with generation for every `x` in `[0, limit]`.
pub fn member_test_exhaustive_check(a: &BigInt, limit: u64, budget: &WorkBudget) -> Result<SelfCheckReport> {
    budget.check_cells("membership self-check", limit.saturating_add(1))?;
    let truth = ground_truth(a, &BigInt::from(limit))?;
    let non_member = MembershipVerdict {
        is_member: false,
        parity: Parity::None,
        index: None,
    };
    let mut first_disagreement = None;
    let mut checked = 0;
    for xv in 0..=limit {
        let x = BigInt::from(xv);
        let tested = member_test(a, &x)?;
        let generated = truth.get(&x).unwrap_or(&non_member);
        checked += 1;
        if &tested != generated {
            first_disagreement = Some(Disagreement {
                x,
                tested,
                generated: generated.clone(),
            });
            break;
        }
    }
    Ok(SelfCheckReport {
        a: a.clone(),
        limit,
        checked,
        members_found: truth.len() as u64,
        agree: first_disagreement.is_none(),
        first_disagreement,
    })
}
