//! JSON encoding of exact integers: a plain number when it fits in `i64`,
//! otherwise a decimal string. Both forms are accepted on input.

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub(crate) enum IntRepr {
    Small(i64),
    Big(String),
}

impl From<&BigInt> for IntRepr {
    fn from(n: &BigInt) -> Self {
        match n.to_i64() {
            Some(v) => IntRepr::Small(v),
            None => IntRepr::Big(n.to_string()),
        }
    }
}

impl IntRepr {
    pub(crate) fn into_bigint(self) -> Result<BigInt, String> {
        match self {
            IntRepr::Small(v) => Ok(BigInt::from(v)),
            IntRepr::Big(s) => s.parse().map_err(|_| format!("not an integer: {s:?}")),
        }
    }
}

/// `#[serde(with = "crate::json::bigint")]`
pub(crate) mod bigint {
    use super::*;

    pub fn serialize<S: Serializer>(n: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        IntRepr::from(n).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntRepr::deserialize(d)?
            .into_bigint()
            .map_err(serde::de::Error::custom)
    }
}
