//! The quadratic form `Q(x, y) = x^2 + a*x*y - y^2`, the range polynomial
//! `y * (2 - (Q/R)^2)` and the index-addition identities.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::budget::WorkBudget;
use crate::error::{invalid, Error, Result};
use crate::json;
use crate::pell::{discriminant, exact_sqrt};
use crate::sequences::{FundamentalPair, RecurrenceParams};

/// `x^2 + a*x*y - y^2`.
pub fn q_form(a: &BigInt, x: &BigInt, y: &BigInt) -> BigInt {
    x * x + a * x * y - y * y
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FormValue {
    #[serde(serialize_with = "json::int")]
    pub q_value: BigInt,
    #[serde(serialize_with = "json::rational")]
    pub jones_value: BigRational,
}

impl FormValue {
    /// Positive with denominator 1.
    pub fn is_positive_integer(&self) -> bool {
        self.jones_value.is_integer() && self.jones_value.is_positive()
    }
}

/// `y * (2 - (Q(x,y)/R)^2)` as an exact rational.
pub fn jones_eval(a: &BigInt, r: &BigInt, x: &BigInt, y: &BigInt) -> Result<BigRational> {
    Ok(form_value(a, r, x, y)?.jones_value)
}

pub fn form_value(a: &BigInt, r: &BigInt, x: &BigInt, y: &BigInt) -> Result<FormValue> {
    if r.is_zero() {
        return Err(invalid("R must be nonzero"));
    }
    let q_value = q_form(a, x, y);
    let r_sq = r * r;
    // y * (2R^2 - Q^2) / R^2
    let numer = y * (BigInt::from(2) * &r_sq - &q_value * &q_value);
    Ok(FormValue {
        q_value,
        jones_value: BigRational::new(numer, r_sq),
    })
}

/// One grid cell where the polynomial takes a value outside the member set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeWitness {
    #[serde(serialize_with = "json::int")]
    pub value: BigInt,
    #[serde(serialize_with = "json::int")]
    pub x: BigInt,
    #[serde(serialize_with = "json::int")]
    pub y: BigInt,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeReport {
    #[serde(serialize_with = "json::int")]
    pub a: BigInt,
    #[serde(rename = "R", serialize_with = "json::int")]
    pub r: BigInt,
    pub grid_max: u64,
    pub fundamental: FundamentalPair,
    /// Positive integer values of the polynomial on the grid.
    #[serde(serialize_with = "json::int_vec")]
    pub polynomial_values: Vec<BigInt>,
    /// Members `g(k+1)` with a positive witness pair `(g(k), g(k+1))` on the grid.
    #[serde(serialize_with = "json::int_vec")]
    pub members: Vec<BigInt>,
    pub equal: bool,
    /// Polynomial values that are not members, with the first witness cell.
    pub extra_values: Vec<RangeWitness>,
    #[serde(serialize_with = "json::int_vec")]
    pub missing_members: Vec<BigInt>,
}

/// Compares the positive integer values of the range polynomial on
/// `[1, grid_max]^2` with the members witnessable on the same grid.
///
/// `fundamental` selects the sequence; `None` means the `(0, 1)` sequence,
/// whose fundamental pair is `(1, 0)`. `R` only enters squared, so its sign
/// is free but `|R|` must agree with the pair.
pub fn verify_range_equivalence(
    a: &BigInt,
    r: &BigInt,
    fundamental: Option<&FundamentalPair>,
    grid_max: u64,
    budget: &WorkBudget,
) -> Result<RangeReport> {
    if grid_max == 0 {
        return Err(invalid("grid_max must be >= 1"));
    }
    if r.is_zero() {
        return Err(invalid("R must be nonzero"));
    }
    budget.check_grid("range verification grid", grid_max)?;
    let fundamental = match fundamental {
        Some(fp) => fp.clone(),
        None => FundamentalPair {
            p_hat: BigInt::one(),
            q_hat: BigInt::zero(),
            steps_back: 1,
            r: -BigInt::one(),
        },
    };
    if fundamental.r.abs() != r.abs() {
        return Err(invalid(format!(
            "|R| = {} does not match the fundamental pair's R = {}",
            r.abs(),
            fundamental.r
        )));
    }
    let params = fundamental.params(a.clone())?;
    let bound = BigInt::from(grid_max);

    let mut values: BTreeMap<BigInt, (BigInt, BigInt)> = BTreeMap::new();
    let twice_r_sq = BigInt::from(2) * r * r;
    for xi in 1..=grid_max {
        let x = BigInt::from(xi);
        for yi in 1..=grid_max {
            let y = BigInt::from(yi);
            let q = q_form(a, &x, &y);
            // y > 0, so a positive value needs Q^2 < 2R^2
            if &q * &q >= twice_r_sq {
                continue;
            }
            let v = jones_eval(a, r, &x, &y)?;
            if v.is_integer() && v.is_positive() {
                values.entry(v.to_integer()).or_insert((x.clone(), y));
            }
        }
    }

    let members = witnessed_members(&params, &bound, budget)?;
    let extra_values: Vec<RangeWitness> = values
        .iter()
        .filter(|(v, _)| !members.contains(*v))
        .map(|(v, (x, y))| RangeWitness {
            value: v.clone(),
            x: x.clone(),
            y: y.clone(),
        })
        .collect();
    let missing_members: Vec<BigInt> = members
        .iter()
        .filter(|m| !values.contains_key(*m))
        .cloned()
        .collect();
    Ok(RangeReport {
        a: a.clone(),
        r: r.clone(),
        grid_max,
        fundamental,
        equal: extra_values.is_empty() && missing_members.is_empty(),
        polynomial_values: values.into_keys().collect(),
        members: members.into_iter().collect(),
        extra_values,
        missing_members,
    })
}

/// `g(k+1)` for every consecutive pair with `1 <= g(k), g(k+1) <= bound`.
fn witnessed_members(
    params: &RecurrenceParams,
    bound: &BigInt,
    budget: &WorkBudget,
) -> Result<BTreeSet<BigInt>> {
    let mut out = BTreeSet::new();
    let mut terms = params.terms();
    let mut prev = terms.next().expect("infinite iterator");
    for steps in 0.. {
        if steps > budget.max_sequence_terms {
            return Err(Error::BudgetExceeded {
                what: "member enumeration",
                requested: u128::from(steps),
                limit: u128::from(budget.max_sequence_terms),
            });
        }
        let cur = terms.next().expect("infinite iterator");
        let in_grid = |v: &BigInt| v.is_positive() && v <= bound;
        if in_grid(&prev) && in_grid(&cur) {
            out.insert(cur.clone());
        }
        // same strict sign and both beyond the grid: magnitudes only grow from here
        let same_sign = prev.sign() == cur.sign() && !prev.is_zero();
        if same_sign && &prev.abs() > bound && &cur.abs() > bound {
            break;
        }
        prev = cur;
    }
    Ok(out)
}

/// Which of the three index-addition identities to evaluate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    /// `e(2(i+j))` from `e(2i)`, `e(2j)`.
    EvenEven,
    /// `e(2(i+j)+2)` from `e(2i+1)`, `e(2j+1)`.
    OddOdd,
    /// `e(2(i+j)+1)` from `e(2i+1)`, `e(2j)`.
    EvenOdd,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 3] = [Self::EvenEven, Self::OddOdd, Self::EvenOdd];

    /// Index of the term the identity reproduces.
    pub fn target_index(self, i: u64, j: u64) -> u64 {
        match self {
            Self::EvenEven => 2 * (i + j),
            Self::OddOdd => 2 * (i + j) + 2,
            Self::EvenOdd => 2 * (i + j) + 1,
        }
    }
}

impl std::str::FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "even-even" => Ok(Self::EvenEven),
            "odd-odd" => Ok(Self::OddOdd),
            "even-odd" => Ok(Self::EvenOdd),
            other => Err(invalid(format!("unknown identity kind {other:?}"))),
        }
    }
}

/// Right-hand side of the selected identity, with exact square roots:
///
/// ```text
/// even-even: e(2j)/2 * sqrt(e(2i)^2 D + 4)   + e(2i)/2   * sqrt(e(2j)^2 D + 4)
/// odd-odd:   e(2j+1)/2 * sqrt(e(2i+1)^2 D - 4) + e(2i+1)/2 * sqrt(e(2j+1)^2 D - 4)
/// even-odd:  e(2j)/2 * sqrt(e(2i+1)^2 D - 4) + e(2i+1)/2 * sqrt(e(2j)^2 D + 4)
/// ```
///
/// with `D = a^2 + 4`.
pub fn addition_identity(a: &BigInt, kind: IdentityKind, i: u64, j: u64) -> Result<BigInt> {
    let base = RecurrenceParams::base(a.clone())?;
    let d = discriminant(a);
    let root = |x: &BigInt, shift: i32| -> Result<BigInt> {
        let radicand = x * x * &d + shift;
        exact_sqrt(&radicand).ok_or(Error::NotPerfectSquare {
            radicand: radicand.to_string(),
        })
    };
    let (left, left_shift, right, right_shift) = match kind {
        IdentityKind::EvenEven => (base.term(2 * i), 4, base.term(2 * j), 4),
        IdentityKind::OddOdd => (base.term(2 * i + 1), -4, base.term(2 * j + 1), -4),
        IdentityKind::EvenOdd => (base.term(2 * i + 1), -4, base.term(2 * j), 4),
    };
    let numerator = &right * root(&left, left_shift)? + &left * root(&right, right_shift)?;
    let (half, rem) = numerator.div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::OddNumerator {
            numerator: numerator.to_string(),
        });
    }
    Ok(half)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    #[test]
    fn q_form_examples() {
        assert_eq!(q_form(&b(1), &b(1), &b(1)), b(1));
        assert_eq!(q_form(&b(1), &b(2), &b(3)), b(1));
        assert_eq!(q_form(&b(2), &b(2), &b(5)), b(-1));
    }

    #[test]
    fn jones_examples() {
        assert_eq!(jones_eval(&b(1), &b(1), &b(2), &b(3)).unwrap(), BigRational::from(b(3)));
        // Q(1, 4) = -11, so 4 * (2 - 121)
        assert_eq!(jones_eval(&b(1), &b(1), &b(1), &b(4)).unwrap(), BigRational::from(b(-476)));
        assert_eq!(jones_eval(&b(1), &b(-5), &b(1), &b(3)).unwrap(), BigRational::from(b(3)));
        assert!(jones_eval(&b(1), &b(0), &b(1), &b(1)).is_err());
        // R = -1 and R = 1 agree
        assert_eq!(
            jones_eval(&b(3), &b(-1), &b(7), &b(2)).unwrap(),
            jones_eval(&b(3), &b(1), &b(7), &b(2)).unwrap()
        );
    }

    #[test]
    fn jones_non_integral_value_is_reduced() {
        // Q(1, 1) = 1 for a = 1, R = 2: 1 * (2 - 1/4) = 7/4
        let v = jones_eval(&b(1), &b(2), &b(1), &b(1)).unwrap();
        assert_eq!(json::rational_string(&v), "7/4");
    }

    #[test]
    fn range_examples() {
        let budget = WorkBudget::default();
        let fib = verify_range_equivalence(&b(1), &b(1), None, 100, &budget).unwrap();
        assert!(fib.equal);
        let expect: Vec<BigInt> = [1, 2, 3, 5, 8, 13, 21, 34, 55, 89].map(b).to_vec();
        assert_eq!(fib.polynomial_values, expect);

        let pell = verify_range_equivalence(&b(2), &b(1), None, 100, &budget).unwrap();
        assert!(pell.equal);
        // e(1) = 1 needs the pair (0, 1), which is off the positive grid when a > 1
        assert_eq!(pell.polynomial_values, [2, 5, 12, 29, 70].map(b).to_vec());

        let tiny = verify_range_equivalence(&b(1), &b(1), None, 1, &budget).unwrap();
        assert!(tiny.equal);
        assert_eq!(tiny.polynomial_values, vec![b(1)]);
    }

    #[test]
    fn range_rejects_bad_input() {
        let budget = WorkBudget::default();
        assert!(verify_range_equivalence(&b(1), &b(0), None, 10, &budget).is_err());
        assert!(verify_range_equivalence(&b(1), &b(1), None, 0, &budget).is_err());
        assert!(verify_range_equivalence(&b(1), &b(5), None, 10, &budget).is_err());
        let small = WorkBudget {
            max_grid_cells: 99,
            ..WorkBudget::default()
        };
        assert!(matches!(
            verify_range_equivalence(&b(1), &b(1), None, 10, &small),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn generalized_range_can_pick_up_a_second_sequence() {
        // a = 2 from (1, 1): 1, 1, 3, 7, 17, 41 with R = -2. Q(5, 12) = 1 gives
        // 12 * (2 - 1/4) = 21, a positive integer outside the sequence.
        let params = RecurrenceParams::new(2, 1, 1, 1).unwrap();
        let fp = crate::sequences::fundamental_pair(&params).unwrap();
        assert_eq!((fp.steps_back, fp.r.clone()), (0, b(-2)));
        let report = verify_range_equivalence(&b(2), &fp.r, Some(&fp), 50, &WorkBudget::default()).unwrap();
        assert!(!report.equal);
        assert_eq!(report.extra_values[0].value, b(21));
        assert_eq!((report.extra_values[0].x.clone(), report.extra_values[0].y.clone()), (b(5), b(12)));
    }

    #[test]
    fn identity_examples() {
        assert_eq!(addition_identity(&b(1), IdentityKind::EvenEven, 1, 1).unwrap(), b(3));
        assert_eq!(addition_identity(&b(1), IdentityKind::EvenEven, 0, 2).unwrap(), b(3));
        assert_eq!(addition_identity(&b(1), IdentityKind::OddOdd, 1, 1).unwrap(), b(8));
        assert_eq!(addition_identity(&b(2), IdentityKind::EvenOdd, 0, 1).unwrap(), b(5));
    }

    #[test]
    fn identity_kind_parsing() {
        for kind in IdentityKind::ALL {
            let name = serde_plain_name(kind);
            assert_eq!(name.parse::<IdentityKind>().unwrap(), kind);
        }
        assert!("odd-even".parse::<IdentityKind>().is_err());
    }

    fn serde_plain_name(kind: IdentityKind) -> &'static str {
        match kind {
            IdentityKind::EvenEven => "even-even",
            IdentityKind::OddOdd => "odd-odd",
            IdentityKind::EvenOdd => "even-odd",
        }
    }
}
