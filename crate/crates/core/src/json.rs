//! Serde helpers: big integers as decimal strings, rationals as `"num/den"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::ser::{SerializeSeq, Serializer};

pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn int<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(v)
}

pub fn opt_int<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

pub fn int_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(ToString::to_string))
}

pub fn int_matrix<S: Serializer>(m: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(m.len()))?;
    for row in m {
        let row: Vec<String> = row.iter().map(ToString::to_string).collect();
        seq.serialize_element(&row)?;
    }
    seq.end()
}

pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&rational_string(v))
}

/// Tuples of big integers, emitted as arrays of decimal strings.
pub fn int_tuples<S, const N: usize>(v: &[[BigInt; N]], s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
{
    s.collect_seq(v.iter().map(|t| t.iter().map(ToString::to_string).collect::<Vec<_>>()))
}

pub fn opt_int_tuple<S, const N: usize>(v: &Option<[BigInt; N]>, s: S) -> Result<S::Ok, S::Error>
where
    S: Serializer,
{
    match v {
        Some(t) => s.collect_seq(t.iter().map(ToString::to_string)),
        None => s.serialize_none(),
    }
}
