//! Second-order linear recurrences `e(n) = a*e(n-1) + b*e(n-2)` with exact
//! big-integer arithmetic.
//!
//! * [`sequences`]: generation, fundamental starting values, Cassini residuals.
//! * [`forms`]: the form `x^2 + a*x*y - y^2`, range polynomials, addition identities.
//! * [`ring`]: the quadratic ring `Z[w]`, `w^2 = a*w + 1`.
//! * [`pell`]: integer square roots and `X^2 - (a^2+4)Y^2 = ±4`.
//! * [`membership`]: perfect-square membership tests.
//! * [`nonexistence`]: degree-2 coefficient analysis and exact kernel scans.
//! * [`oracle`]: brute-force grid searches.

pub mod budget;
pub mod error;
pub mod forms;
pub mod json;
pub mod membership;
pub mod nonexistence;
pub mod oracle;
pub mod pell;
pub mod ring;
pub mod sequences;

pub use budget::WorkBudget;
pub use error::{Error, Result};
pub use forms::{addition_identity, jones_eval, q_form, verify_range_equivalence, FormValue, IdentityKind, RangeReport};
pub use membership::{member_test, member_test_exhaustive_check, MembershipVerdict, Parity, SelfCheckReport};
pub use nonexistence::{build_matrix, nullspace, scan_degrees, solve_degree2, Degree2Report, NullspaceReport, ScanReport};
pub use oracle::{search_cassini_triples, search_unit_solutions, SearchReport, UnitRhs, Verdict};
pub use pell::{isqrt, pell4_solutions, PellSign, PellSolution};
pub use ring::{enumerate_unit_solutions, fundamental_power, ring_mul, shifted_power, RingElement};
pub use sequences::{
    cassini_residual, fundamental_pair, g_from_e, generate, theorem1_residual, FundamentalPair, RecurrenceParams,
    SequenceWindow,
};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;
