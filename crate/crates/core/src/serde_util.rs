//! Serde helpers for exact values.

use serde::{Deserialize, Deserializer, Serializer};

use crate::scalar::{format_rational, parse_rational, Rational};

pub fn rational_str<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

pub fn rational_from_str<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
    let s = String::deserialize(d)?;
    parse_rational(&s).map_err(serde::de::Error::custom)
}
