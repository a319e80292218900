//! Big integers as plain JSON numbers.

use std::str::FromStr;

use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub(crate) fn to_number(x: &BigInt) -> serde_json::Number {
    serde_json::Number::from_str(&x.to_string()).expect("integers are valid JSON numbers")
}

pub(crate) fn from_number(n: &serde_json::Number) -> Option<BigInt> {
    n.to_string().parse().ok()
}

pub(crate) fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    to_number(x).serialize(s)
}

pub(crate) fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
    let n = serde_json::Number::deserialize(d)?;
    from_number(&n).ok_or_else(|| serde::de::Error::custom(format!("not an integer: {}", n)))
}
