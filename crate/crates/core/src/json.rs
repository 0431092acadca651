//! Exact JSON integers for big values. `serde_json` is built with
//! `arbitrary_precision`, so a [`Number`] can carry any number of digits.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serializer;
use serde_json::{Number, Value};

pub fn number(v: &BigInt) -> Number {
    Number::from_str(&v.to_string()).expect("decimal integer is a JSON number")
}

pub fn value(v: &BigInt) -> Value {
    Value::Number(number(v))
}

/// Parse a JSON integer of any size. Floats and non-numbers are rejected.
pub fn parse(v: &Value) -> Option<BigInt> {
    match v {
        Value::Number(n) => BigInt::from_str(&n.to_string()).ok(),
        _ => None,
    }
}

pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    serde::Serialize::serialize(&number(v), s)
}

pub fn serialize_opt<S: Serializer>(v: &Option<BigInt>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => serialize(v, s),
        None => s.serialize_none(),
    }
}

pub fn serialize_vec<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(number))
}
