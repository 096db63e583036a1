//! Coefficient systems for homogeneous two-variable identities.
//!
//! Degree 2, general `(a, b)`: an identity
//! `f*e(i+1)^2 + g*e(i+1)*e(i) + h*e(i)^2 = (-1)^i` forces `f = 1`,
//! `g = -2ab/(b+1)`, `h = -b^2`, and is then consistent only if
//! `a^2*f + a*g + h = -1`.
//!
//! Degree n, Fibonacci case: `X(i) = sum_s c_s f(i+1)^(n-s) f(i)^s` with
//! `X(i+1) = -X(i)` is the linear system `M c = 0` where
//! `M[r][s] = C(n-s, r) + [r == s]`. The kernel is computed exactly with
//! fraction-free Gauss-Jordan elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::budget::WorkBudget;
use crate::error::{invalid, Result};
use crate::json;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Degree2Report {
    #[serde(serialize_with = "json::int")]
    pub a: BigInt,
    #[serde(serialize_with = "json::int")]
    pub b: BigInt,
    #[serde(serialize_with = "json::rational")]
    pub f: BigRational,
    #[serde(serialize_with = "json::rational")]
    pub g: BigRational,
    #[serde(serialize_with = "json::rational")]
    pub h: BigRational,
    /// `a^2*f + a*g + h`; the identity at `i = 1` needs this to be `-1`.
    #[serde(serialize_with = "json::rational")]
    pub base_value: BigRational,
    pub consistent: bool,
}

/// Solves the induction step for `(f, g, h)` and checks the base case.
///
/// Matching `e(k+1)^2`, `e(k+1)e(k)` and `e(k)^2` in `X(k+1) = -X(k)` gives
///
/// ```text
/// a^2 f + a g + h = -f,   2ab f + b g = -g,   b^2 f = -h
/// ```
///
/// and the base case `a^2 f + a g + h = -1` together with the first
/// equation pins `f = 1`.
pub fn solve_degree2(a: &BigInt, b: &BigInt) -> Result<Degree2Report> {
    if a < &BigInt::one() || b < &BigInt::one() {
        return Err(invalid(format!("a and b must be >= 1, got a = {a}, b = {b}")));
    }
    let ar = BigRational::from(a.clone());
    let br = BigRational::from(b.clone());
    let f = BigRational::one();
    let g = -(BigRational::from(BigInt::from(2)) * &ar * &br * &f) / (&br + BigRational::one());
    let h = -(&br * &br * &f);
    let base_value = &ar * &ar * &f + &ar * &g + &h;
    let consistent = base_value == -BigRational::one();
    Ok(Degree2Report {
        a: a.clone(),
        b: b.clone(),
        f,
        g,
        h,
        base_value,
        consistent,
    })
}

/// `C(m, k)`, zero when `k > m`.
pub fn binomial(m: u64, k: u64) -> BigInt {
    if k > m {
        return BigInt::zero();
    }
    let k = k.min(m - k);
    let mut acc = BigInt::one();
    for t in 0..k {
        acc = acc * BigInt::from(m - t) / BigInt::from(t + 1);
    }
    acc
}

/// The `(n+1) x (n+1)` system `M[r][s] = C(n-s, r) + [r == s]`.
pub fn build_matrix(n: u64) -> Result<Vec<Vec<BigInt>>> {
    if n == 0 {
        return Err(invalid("degree must be >= 1"));
    }
    Ok((0..=n)
        .map(|r| {
            (0..=n)
                .map(|s| {
                    let diag = if r == s { BigInt::one() } else { BigInt::zero() };
                    binomial(n - s, r) + diag
                })
                .collect()
        })
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NullspaceReport {
    pub degree: u64,
    #[serde(serialize_with = "json::int_matrix")]
    pub matrix: Vec<Vec<BigInt>>,
    pub rank: usize,
    pub nullity: usize,
    /// Primitive integer kernel vectors with positive leading entry.
    #[serde(serialize_with = "json::int_matrix")]
    pub basis: Vec<Vec<BigInt>>,
}

/// Exact rank and primitive kernel basis of a square integer matrix.
///
/// `degree` in the report is `size - 1`, matching [`build_matrix`].
pub fn nullspace(matrix: &[Vec<BigInt>]) -> Result<NullspaceReport> {
    let size = matrix.len();
    if size == 0 || matrix.iter().any(|row| row.len() != size) {
        return Err(invalid("nullspace expects a non-empty square matrix"));
    }
    let (reduced, pivots) = bareiss_gauss_jordan(matrix);
    let rank = pivots.len();
    let mut basis = Vec::new();
    let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
    for free in (0..size).filter(|c| !pivot_cols.contains(c)) {
        let mut v = vec![BigInt::zero(); size];
        // every pivot equals the same determinant-like value after reduction
        let scale = pivots
            .first()
            .map(|&(r, c)| reduced[r][c].clone())
            .unwrap_or_else(BigInt::one);
        v[free] = scale;
        for &(row, col) in &pivots {
            v[col] = -reduced[row][free].clone();
        }
        basis.push(primitive(v));
    }
    debug_assert!(basis.iter().all(|v| mat_vec(matrix, v).iter().all(Zero::is_zero)));
    Ok(NullspaceReport {
        degree: (size - 1) as u64,
        matrix: matrix.to_vec(),
        rank,
        nullity: size - rank,
        basis,
    })
}

/// Fraction-free Gauss-Jordan. Returns the reduced matrix and `(row, col)`
/// pivot positions; all pivot entries end up equal.
fn bareiss_gauss_jordan(matrix: &[Vec<BigInt>]) -> (Vec<Vec<BigInt>>, Vec<(usize, usize)>) {
    let rows = matrix.len();
    let cols = matrix[0].len();
    let mut m = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut row = 0;
    for col in 0..cols {
        if row == rows {
            break;
        }
        let Some(p) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let pivot = m[row][col].clone();
        for r in (0..rows).filter(|&r| r != row) {
            let factor = m[r][col].clone();
            for c in 0..cols {
                let numer = &pivot * &m[r][c] - &factor * &m[row][c];
                let (q, rem) = numer.div_rem(&prev);
                debug_assert!(rem.is_zero(), "inexact fraction-free division");
                m[r][c] = q;
            }
        }
        prev = pivot;
        pivots.push((row, col));
        row += 1;
    }
    (m, pivots)
}

fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if !content.is_zero() {
        for x in v.iter_mut() {
            *x /= &content;
        }
    }
    if v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in v.iter_mut() {
            *x = -&*x;
        }
    }
    v
}

pub fn mat_vec(matrix: &[Vec<BigInt>], v: &[BigInt]) -> Vec<BigInt> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(m, x)| m * x).sum())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanRow {
    pub degree: u64,
    pub rank: usize,
    pub nullity: usize,
    #[serde(serialize_with = "json::int_matrix")]
    pub basis: Vec<Vec<BigInt>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub rows: Vec<ScanRow>,
    /// Degrees other than 2 with a nontrivial kernel.
    pub unexpected_kernels: Vec<u64>,
    /// True iff the kernel is nontrivial exactly at degree 2 (within range).
    pub only_degree_two: bool,
}

/// Rank and kernel of the degree-n system for every `n` in `[1, n_max]`.
pub fn scan_degrees(n_max: u64, budget: &WorkBudget) -> Result<ScanReport> {
    if n_max == 0 {
        return Err(invalid("n_max must be >= 1"));
    }
    budget.check_degree("degree scan", n_max)?;
    let rows = (1..=n_max)
        .map(|n| {
            let report = nullspace(&build_matrix(n)?)?;
            Ok(ScanRow {
                degree: n,
                rank: report.rank,
                nullity: report.nullity,
                basis: report.basis,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let unexpected_kernels: Vec<u64> = rows
        .iter()
        .filter(|r| r.degree != 2 && r.nullity > 0)
        .map(|r| r.degree)
        .collect();
    let degree_two_ok = rows.iter().find(|r| r.degree == 2).is_none_or(|r| r.nullity == 1);
    Ok(ScanReport {
        only_degree_two: unexpected_kernels.is_empty() && degree_two_ok,
        unexpected_kernels,
        rows,
    })
}
