use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;
use sorec::forms::{form_value, q_form};
use sorec::pell::{discriminant, isqrt};
use sorec::ring::{fundamental_power, shifted_power, RingElement};
use sorec::sequences::{cassini_residual, fundamental_pair, g_from_e, generate, r_constant, theorem1_residual};
use sorec::{RecurrenceParams, WorkBudget};

fn sign(i: u64) -> BigInt {
    if i % 2 == 0 {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

/// floor(sqrt(n)) by bisection.
fn bisect_sqrt(n: &BigInt) -> BigInt {
    let (mut lo, mut hi) = (BigInt::zero(), n + 1);
    while &hi - &lo > BigInt::one() {
        let mid: BigInt = (&lo + &hi) / 2;
        if &mid * &mid <= *n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

#[test]
fn form_residual_base_sequences() {
    for a in 1..=10 {
        let params = RecurrenceParams::base(a).unwrap();
        for i in 0..=200 {
            assert_eq!(theorem1_residual(&params, i).unwrap(), -sign(i));
        }
    }
}

#[test]
fn cassini_vanishes() {
    for a in 1..=5 {
        for b in 1..=5 {
            let params = RecurrenceParams::new(a, b, 0, 1).unwrap();
            for i in 0..=60 {
                assert!(cassini_residual(&params, i).is_zero(), "a={a} b={b} i={i}");
            }
        }
    }
}

#[test]
fn form_on_consecutive_terms() {
    for a in 1..=10 {
        let params = RecurrenceParams::base(a).unwrap();
        let a = BigInt::from(a);
        for k in 1..=60 {
            let (x, y) = params.term_pair(k);
            assert_eq!(q_form(&a, &x, &y), sign(k + 1));
            let fv = form_value(&a, &BigInt::one(), &x, &y).unwrap();
            assert_eq!(fv.jones_value, BigRational::from(y));
        }
    }
}

#[test]
fn forcing_step_on_unit_grids() {
    // positive integral value => (Q/R)^2 = 1
    for a in 1..=3 {
        let a = BigInt::from(a);
        for r in [1i64, -1] {
            let r = BigInt::from(r);
            for x in 1..=80 {
                for y in 1..=80 {
                    let fv = form_value(&a, &r, &x.into(), &y.into()).unwrap();
                    if fv.is_positive_integer() {
                        assert_eq!(&fv.q_value * &fv.q_value, &r * &r);
                    }
                }
            }
        }
    }
}

#[test]
fn pell_companion_matches_isqrt() {
    use sorec::pell::{pell4_solutions, PellSign};
    for a in 1..=10i64 {
        let a = BigInt::from(a);
        let base = RecurrenceParams::base(a.clone()).unwrap();
        let terms = generate(&base, 100).unwrap().values;
        let plus = pell4_solutions(&a, PellSign::Plus, 50).unwrap();
        let minus = pell4_solutions(&a, PellSign::Minus, 50).unwrap();
        for (i, (s, t)) in plus.iter().zip(minus.iter()).enumerate() {
            assert_eq!(s.y_val, terms[2 * i]);
            assert_eq!(t.y_val, terms[2 * i + 1]);
            assert!(s.holds(&a) && t.holds(&a));
            let (root, exact) = isqrt(&(&s.y_val * &s.y_val * discriminant(&a) + 4)).unwrap();
            assert!(exact);
            assert_eq!(root, s.p_val);
        }
    }
}

#[test]
fn oracle_units_agree_with_ring() {
    use sorec::oracle::{search_unit_solutions, UnitRhs, Verdict};
    let budget = WorkBudget::default();
    for a in 1..=5 {
        for rhs in [UnitRhs::Plus, UnitRhs::Minus] {
            let r = search_unit_solutions(&a.into(), rhs, 400, &budget).unwrap();
            assert_eq!(r.verdict, Verdict::ConfirmsTheorem, "a={a} {rhs:?}");
        }
    }
}

proptest! {
    #[test]
    fn isqrt_is_floor(n in any::<u128>(), shift in 0u32..200) {
        let big = BigInt::from(n) << shift;
        let (root, exact) = isqrt(&big).unwrap();
        prop_assert_eq!(&root, &bisect_sqrt(&big));
        prop_assert_eq!(exact, &root * &root == big);
    }

    #[test]
    fn form_residual_general_start(a in 1i64..10, p in -50i64..50, q in -50i64..50, i in 0u64..80) {
        let params = RecurrenceParams::new(a, 1, p, q).unwrap();
        let r = r_constant(params.a(), params.p(), params.q());
        prop_assert_eq!(theorem1_residual(&params, i).unwrap(), -sign(i) * r);
    }

    #[test]
    fn backtrack_round_trip(a in 1i64..20, p in -1000i64..1000, q in -1000i64..1000) {
        prop_assume!(p != 0 || q != 0);
        let params = RecurrenceParams::new(a, 1, p, q).unwrap();
        let fp = fundamental_pair(&params).unwrap();
        prop_assert!(&fp.q_hat - BigInt::from(a) * &fp.p_hat < BigInt::zero());
        prop_assert_eq!(&fp.r, &r_constant(params.a(), &fp.p_hat, &fp.q_hat));
        let start = fp.params(a).unwrap();
        prop_assert_eq!(start.term_pair(fp.steps_back), (BigInt::from(p), BigInt::from(q)));
        // |R| survives backtracking
        let r_in = r_constant(params.a(), params.p(), params.q());
        prop_assert_eq!(&fp.r * &fp.r, &r_in * &r_in);
    }

    #[test]
    fn g_from_e_matches_generation(a in 1i64..10, p in -30i64..30, q in -30i64..30, n in 2u64..40) {
        let params = RecurrenceParams::new(a, 1, p, q).unwrap();
        prop_assert_eq!(g_from_e(&params, n).unwrap(), params.term_pair(2 * n - 1));
    }

    #[test]
    fn shifted_power_matches_generation(a in 1i64..10, p in -30i64..30, q in -30i64..30, n in 1u64..40) {
        let params = RecurrenceParams::new(a, 1, p, q).unwrap();
        let el = shifted_power(params.a(), params.p(), params.q(), n).unwrap();
        let (u, v) = params.term_pair(2 * n - 1);
        prop_assert_eq!((el.u, el.v), (u, v));
    }

    #[test]
    fn norm_is_multiplicative(a in 1i64..10, u1 in -1000i64..1000, v1 in -1000i64..1000, u2 in -1000i64..1000, v2 in -1000i64..1000) {
        let x = RingElement::new(a, u1, v1).unwrap();
        let y = RingElement::new(a, u2, v2).unwrap();
        prop_assert_eq!(x.mul(&y).unwrap().norm(), x.norm() * y.norm());
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
    }

    #[test]
    fn index_additivity(a in 1i64..10, m in 1u64..60, n in 1u64..60) {
        let a = BigInt::from(a);
        let lhs = fundamental_power(&a, m + n).unwrap();
        let rhs = fundamental_power(&a, m).unwrap().mul(&fundamental_power(&a, n).unwrap()).unwrap();
        prop_assert!(lhs.norm().is_one());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn generation_is_deterministic(a in 1i64..20, b in 1i64..20, p in -100i64..100, q in -100i64..100, count in 1usize..80) {
        let params = RecurrenceParams::new(a, b, p, q).unwrap();
        let w1 = generate(&params, count).unwrap();
        let w2 = generate(&params, count).unwrap();
        prop_assert!(w1.is_consistent());
        prop_assert_eq!(w1, w2);
    }
}
