//! JSON wire formats shared by the library and the CLI.
//!
//! Colored partitions serialize as
//! `{"q": 2, "parts": [{"a": [1, 0], "mult": 2}, ...]}` with parts in
//! canonical order. Rationals serialize as lowest-terms `"p/q"` strings.

use num_rational::BigRational;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::partition::{ColorVector, ColoredPartition};
use crate::rational::{format_rational, parse_rational};
use crate::Error;

/// Version tag written at the top of every CLI document.
pub const SCHEMA: &str = "polyesf/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartJson {
    pub a: Vec<u32>,
    pub mult: u32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PartitionJson {
    pub q: usize,
    pub parts: Vec<PartJson>,
}

impl From<ColoredPartition> for PartitionJson {
    fn from(p: ColoredPartition) -> Self {
        PartitionJson {
            q: p.q(),
            parts: p
                .parts()
                .map(|(a, mult)| PartJson {
                    a: a.counts().to_vec(),
                    mult,
                })
                .collect(),
        }
    }
}

impl TryFrom<PartitionJson> for ColoredPartition {
    type Error = Error;

    fn try_from(j: PartitionJson) -> Result<Self, Error> {
        let parts = j
            .parts
            .into_iter()
            .map(|p| Ok((ColorVector::new(p.a)?, p.mult)))
            .collect::<Result<Vec<_>, Error>>()?;
        ColoredPartition::from_parts(j.q, parts)
    }
}

/// Compact string key for a partition, e.g. `"(1,1):1 (0,1):2"`; used as a
/// JSON object key where a map keyed by partitions is needed.
pub fn partition_key(p: &ColoredPartition) -> String {
    p.parts()
        .map(|(a, m)| format!("{a}:{m}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Serde adapter: a rational as a `"p/q"` string.
pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter for `Vec<BigRational>`.
pub mod rational_vec {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(format_rational))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter for a rational matrix given as rows.
pub mod rational_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &[Vec<BigRational>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(
            m.iter()
                .map(|row| row.iter().map(format_rational).collect::<Vec<_>>()),
        )
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(
        d: D,
    ) -> Result<Vec<Vec<BigRational>>, D::Error> {
        let m = Vec::<Vec<String>>::deserialize(d)?;
        m.iter()
            .map(|row| {
                row.iter()
                    .map(|s| parse_rational(s).map_err(serde::de::Error::custom))
                    .collect()
            })
            .collect()
    }
}
