//! JSON file schemas and serde adapters for arbitrary-precision integers.
//!
//! Integers up to 2^53 in magnitude are written as JSON numbers, larger ones
//! as decimal strings. Either form is accepted on input.

use num_bigint::BigInt;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::lattice::{Lattice, LatticeVector};
use crate::matrix::IntMatrix;

const SAFE_INT: i64 = 1 << 53;

fn to_value(x: &BigInt) -> Value {
    match i64::try_from(x) {
        Ok(v) if (-SAFE_INT..=SAFE_INT).contains(&v) => Value::from(v),
        _ => Value::String(x.to_string()),
    }
}

fn from_value(v: &Value) -> std::result::Result<BigInt, String> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.trim().to_string(),
        other => return Err(format!("expected integer, found {other}")),
    };
    text.parse::<BigInt>().map_err(|_| format!("not an integer: {text}"))
}

pub mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        to_value(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        from_value(&Value::deserialize(d)?).map_err(D::Error::custom)
    }
}

pub mod bigint_vec {
    use super::*;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        xs.iter().map(to_value).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let vals = Vec::<Value>::deserialize(d)?;
        vals.iter().map(from_value).collect::<std::result::Result<_, _>>().map_err(D::Error::custom)
    }
}

pub mod bigint_matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &IntMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        m.to_rows().iter().map(|r| r.iter().map(to_value).collect::<Vec<_>>()).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<IntMatrix, D::Error> {
        let rows = Vec::<Vec<Value>>::deserialize(d)?;
        let rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| r.iter().map(from_value).collect::<std::result::Result<_, _>>())
            .collect::<std::result::Result<_, _>>()
            .map_err(D::Error::custom)?;
        if rows.is_empty() {
            return Ok(IntMatrix::zeros(0, 0));
        }
        IntMatrix::from_rows(rows).ok_or_else(|| D::Error::custom("ragged matrix"))
    }
}

/// `{"rank": r, "gram": [[..], ..]}`, optionally with an explicit
/// positive-cone reference `"orientation": [..]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeJson {
    pub rank: usize,
    #[serde(with = "bigint_matrix")]
    pub gram: IntMatrix,
    #[serde(default, skip_serializing_if = "Option::is_none", with = "opt_vec")]
    pub orientation: Option<Vec<BigInt>>,
}

mod opt_vec {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Option<Vec<BigInt>>, s: S) -> std::result::Result<S::Ok, S::Error> {
        match x {
            Some(v) => v.iter().map(to_value).collect::<Vec<_>>().serialize(s),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Option<Vec<BigInt>>, D::Error> {
        let v = Option::<Vec<Value>>::deserialize(d)?;
        v.map(|xs| xs.iter().map(from_value).collect::<std::result::Result<_, _>>().map_err(D::Error::custom))
            .transpose()
    }
}

impl LatticeJson {
    pub fn from_lattice(l: &Lattice) -> Self {
        LatticeJson { rank: l.rank(), gram: l.gram().clone(), orientation: None }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let n = self.gram.rows();
        if n != self.rank || (n > 0 && self.gram.cols() != self.rank) {
            return Err(Error::DimensionMismatch { expected: self.rank, found: self.gram.rows() });
        }
        match &self.orientation {
            None => Lattice::new(self.gram.clone()),
            Some(x0) => Lattice::with_orientation(self.gram.clone(), LatticeVector::new(x0.clone())),
        }
    }
}

/// `{"coords": [..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorJson {
    #[serde(with = "bigint_vec")]
    pub coords: Vec<BigInt>,
}

/// `{"matrix": [[..], ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsometryJson {
    #[serde(with = "bigint_matrix")]
    pub matrix: IntMatrix,
}

/// `{"lattice": {..}, "generators": [{"matrix": ..}, ..]}`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub lattice: LatticeJson,
    pub generators: Vec<IsometryJson>,
}

pub fn parse<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

pub fn to_string_pretty<T: Serialize>(x: &T) -> String {
    serde_json::to_string_pretty(x).expect("serializable payload")
}
