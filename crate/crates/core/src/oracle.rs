//! Brute-force grid searches used as ground truth for the constructive modules.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::budget::WorkBudget;
use crate::error::{invalid, Result};
use crate::forms::q_form;
use crate::json;
use crate::ring::{enumerate_negative_unit_solutions, enumerate_unit_solutions};
use crate::sequences::RecurrenceParams;

/// Right-hand side of `x^2 + a*x*y - y^2 = rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum UnitRhs {
    #[serde(rename = "+1")]
    Plus,
    #[serde(rename = "-1")]
    Minus,
}

impl UnitRhs {
    pub fn value(self) -> i64 {
        match self {
            UnitRhs::Plus => 1,
            UnitRhs::Minus => -1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    ConfirmsTheorem,
    CounterexampleFound,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SearchParameters {
    Units {
        #[serde(serialize_with = "json::int")]
        a: BigInt,
        rhs: UnitRhs,
        bound: u64,
    },
    Cassini {
        #[serde(serialize_with = "json::int")]
        a: BigInt,
        #[serde(serialize_with = "json::int")]
        b: BigInt,
        bound: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchReport {
    pub parameters: SearchParameters,
    #[serde(serialize_with = "json::int_matrix")]
    pub matches: Vec<Vec<BigInt>>,
    pub verdict: Verdict,
    #[serde(serialize_with = "opt_tuple")]
    pub witness: Option<Vec<BigInt>>,
    /// Search-specific counts and flags.
    pub summary: SearchSummary,
}

fn opt_tuple<S: serde::Serializer>(v: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(t) => json::int_vec(t, s),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SearchSummary {
    Units {
        /// Pairs from the ring enumeration that the grid did not find.
        #[serde(serialize_with = "json::int_matrix")]
        missing_from_grid: Vec<Vec<BigInt>>,
        /// Grid solutions that are not consecutive sequence pairs.
        #[serde(serialize_with = "json::int_matrix")]
        unexplained: Vec<Vec<BigInt>>,
    },
    Cassini {
        /// Grid cells `(x, y)` that are not a consecutive pair with matching `z`.
        non_sequence_cells: u64,
        /// Power-of-b matches that are not sequence triples.
        #[serde(serialize_with = "json::int_matrix")]
        power_counterexamples: Vec<Vec<BigInt>>,
        /// Sequence triples inside the grid that the scan must find.
        sequence_triples_expected: u64,
        sequence_triples_found: u64,
    },
}

/// Fast path for `x^2 + a*x*y - y^2` when everything fits in `i128`.
struct FormEval {
    a: BigInt,
    small_a: Option<i128>,
}

impl FormEval {
    fn new(a: &BigInt, bound: u64) -> Self {
        let fits = bound < (1 << 40) && a.abs() < BigInt::from(1i64 << 40);
        FormEval {
            a: a.clone(),
            small_a: if fits { a.to_i128() } else { None },
        }
    }

    fn equals(&self, x: u64, y: u64, target: i64) -> bool {
        match self.small_a {
            Some(a) => {
                let (x, y) = (x as i128, y as i128);
                x * x + a * x * y - y * y == target as i128
            }
            None => q_form(&self.a, &x.into(), &y.into()) == BigInt::from(target),
        }
    }
}

/// All `1 <= x, y <= bound` with `x^2 + a*x*y - y^2 = rhs`, compared with the
/// consecutive-pair enumeration from the ring.
pub fn search_unit_solutions(a: &BigInt, rhs: UnitRhs, bound: u64, budget: &WorkBudget) -> Result<SearchReport> {
    if bound == 0 {
        return Err(invalid("bound must be >= 1"));
    }
    budget.check_grid("unit-solution grid", bound)?;
    let eval = FormEval::new(a, bound);
    let target = rhs.value();
    let mut found: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for x in 1..=bound {
        for y in 1..=bound {
            if eval.equals(x, y, target) {
                let (bx, by) = (BigInt::from(x), BigInt::from(y));
                assert_eq!(q_form(a, &bx, &by), BigInt::from(target), "grid match failed re-check");
                found.insert((bx, by));
            }
        }
    }
    let bound_big = BigInt::from(bound);
    let expected: BTreeSet<(BigInt, BigInt)> = match rhs {
        UnitRhs::Plus => enumerate_unit_solutions(a, &bound_big)?,
        UnitRhs::Minus => enumerate_negative_unit_solutions(a, &bound_big)?,
    }
    .into_iter()
    .collect();
    let pair = |(x, y): &(BigInt, BigInt)| vec![x.clone(), y.clone()];
    let unexplained: Vec<Vec<BigInt>> = found.difference(&expected).map(pair).collect();
    let missing_from_grid: Vec<Vec<BigInt>> = expected.difference(&found).map(pair).collect();
    let witness = unexplained.first().or(missing_from_grid.first()).cloned();
    Ok(SearchReport {
        parameters: SearchParameters::Units {
            a: a.clone(),
            rhs,
            bound,
        },
        matches: found.iter().map(pair).collect(),
        verdict: if witness.is_none() {
            Verdict::ConfirmsTheorem
        } else {
            Verdict::CounterexampleFound
        },
        witness,
        summary: SearchSummary::Units {
            missing_from_grid,
            unexplained,
        },
    })
}

/// `|z|` is `b^k` for some `k >= 0`.
fn is_power_of(z: &BigInt, b: &BigInt) -> bool {
    let mut m = z.abs();
    if m.is_zero() {
        return false;
    }
    if b.is_one() {
        return m.is_one();
    }
    while !m.is_one() {
        let (q, r) = m.div_rem(b);
        if !r.is_zero() {
            return false;
        }
        m = q;
    }
    true
}

/// Scans `1 <= x, y <= bound`, deriving `z = -(b*x^2 + a*x*y - y^2)`.
///
/// `matches` keeps the triples whose `z` is `±b^k`. A cell is a sequence
/// triple when `(x, y) = (e(i), e(i+1))` and `z = (-b)^i`; any other cell
/// solves the same equation and so witnesses non-injectivity. Cells are
/// visited with `y` in the outer loop.
pub fn search_cassini_triples(a: &BigInt, b: &BigInt, bound: u64, budget: &WorkBudget) -> Result<SearchReport> {
    if bound == 0 {
        return Err(invalid("bound must be >= 1"));
    }
    budget.check_grid("cassini grid", bound)?;
    let base = RecurrenceParams::new(a.clone(), b.clone(), 0, 1)?;
    let bound_big = BigInt::from(bound);

    // (e(i), e(i+1), (-b)^i) with both coordinates inside the grid
    let mut sequence_triples: BTreeSet<(BigInt, BigInt, BigInt)> = BTreeSet::new();
    let mut terms = base.terms();
    let mut prev = terms.next().expect("infinite iterator");
    let mut power = BigInt::one();
    loop {
        let cur = terms.next().expect("infinite iterator");
        if prev > bound_big {
            break;
        }
        if prev.is_positive() && cur <= bound_big {
            sequence_triples.insert((prev.clone(), cur.clone(), power.clone()));
        }
        power = -(power * b);
        prev = cur;
    }

    let mut matches = Vec::new();
    let mut power_counterexamples = Vec::new();
    let mut witness = None;
    let mut non_sequence_cells = 0u64;
    let mut found_sequence = 0u64;
    for yv in 1..=bound {
        let y = BigInt::from(yv);
        for xv in 1..=bound {
            let x = BigInt::from(xv);
            let z = -(b * &x * &x + a * &x * &y - &y * &y);
            debug_assert!((b * &x * &x + a * &x * &y - &y * &y + &z).is_zero());
            let key = (x.clone(), y.clone(), z.clone());
            let is_sequence = sequence_triples.contains(&key);
            if is_sequence {
                found_sequence += 1;
            } else {
                non_sequence_cells += 1;
                if witness.is_none() {
                    witness = Some(vec![x.clone(), y.clone(), z.clone()]);
                }
            }
            if is_power_of(&z, b) {
                let residual = b * &x * &x + a * &x * &y - &y * &y + &z;
                assert!(residual.is_zero(), "cassini match failed re-check");
                if !is_sequence {
                    power_counterexamples.push(vec![x.clone(), y.clone(), z.clone()]);
                }
                matches.push(vec![x, y.clone(), z]);
            }
        }
    }
    Ok(SearchReport {
        parameters: SearchParameters::Cassini {
            a: a.clone(),
            b: b.clone(),
            bound,
        },
        matches,
        verdict: if witness.is_some() {
            Verdict::CounterexampleFound
        } else {
            Verdict::ConfirmsTheorem
        },
        witness,
        summary: SearchSummary::Cassini {
            non_sequence_cells,
            power_counterexamples,
            sequence_triples_expected: sequence_triples.len() as u64,
            sequence_triples_found: found_sequence,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn pairs(v: &[(i64, i64)]) -> Vec<Vec<BigInt>> {
        v.iter().map(|&(x, y)| vec![b(x), b(y)]).collect()
    }

    #[test]
    fn unit_examples() {
        let budget = WorkBudget::default();
        let r = search_unit_solutions(&b(1), UnitRhs::Plus, 100, &budget).unwrap();
        assert_eq!(r.matches, pairs(&[(1, 1), (2, 3), (5, 8), (13, 21), (34, 55)]));
        assert_eq!(r.verdict, Verdict::ConfirmsTheorem);
        let r = search_unit_solutions(&b(1), UnitRhs::Minus, 10, &budget).unwrap();
        assert_eq!(r.matches, pairs(&[(1, 2), (3, 5)]));
        assert_eq!(r.verdict, Verdict::ConfirmsTheorem);
        let r = search_unit_solutions(&b(3), UnitRhs::Plus, 3, &budget).unwrap();
        assert_eq!(r.matches, pairs(&[(1, 3)]));
        assert_eq!(r.verdict, Verdict::ConfirmsTheorem);
    }

    #[test]
    fn unit_search_big_a_uses_exact_path() {
        let a = BigInt::from(10).pow(20);
        let r = search_unit_solutions(&a, UnitRhs::Plus, 5, &WorkBudget::default()).unwrap();
        assert!(r.matches.is_empty());
        assert_eq!(r.verdict, Verdict::ConfirmsTheorem);
    }

    #[test]
    fn cassini_examples() {
        let budget = WorkBudget::default();
        let r = search_cassini_triples(&b(1), &b(1), 10, &budget).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
        assert_eq!(r.witness, Some(vec![b(2), b(1), b(-5)]));

        let r = search_cassini_triples(&b(1), &b(1), 1, &budget).unwrap();
        assert_eq!(r.matches, vec![vec![b(1), b(1), b(-1)]]);
        assert_eq!(r.verdict, Verdict::ConfirmsTheorem);
        assert!(r.witness.is_none());

        let r = search_cassini_triples(&b(2), &b(3), 20, &budget).unwrap();
        assert_eq!(r.verdict, Verdict::CounterexampleFound);
    }

    #[test]
    fn cassini_finds_every_sequence_triple() {
        let budget = WorkBudget::default();
        for a in 1..=4 {
            for bb in 1..=4 {
                let r = search_cassini_triples(&b(a), &b(bb), 60, &budget).unwrap();
                let SearchSummary::Cassini { sequence_triples_expected, sequence_triples_found, .. } = r.summary else {
                    panic!("wrong summary");
                };
                assert!(sequence_triples_expected > 0);
                assert_eq!(sequence_triples_expected, sequence_triples_found);
            }
        }
    }

    #[test]
    fn power_detection() {
        assert!(is_power_of(&b(-27), &b(3)));
        assert!(is_power_of(&b(1), &b(3)));
        assert!(!is_power_of(&b(18), &b(3)));
        assert!(!is_power_of(&b(0), &b(1)));
        assert!(is_power_of(&b(-1), &b(1)));
    }
}
