//! Integer types that exact counts can be computed in.
//!
//! Counting code is generic over [`Count`]; fixed-width types report
//! overflow instead of wrapping. [`BigCount`](crate::BigCount) is the
//! default everywhere a caller does not choose.

use std::fmt::{Debug, Display};
use std::str::FromStr;

use num_traits::{CheckedAdd, CheckedMul, One, Zero};

use crate::error::{Error, Result};

pub trait Count: Clone + Debug + Display + FromStr + PartialEq + Zero + One + CheckedAdd + CheckedMul {}

impl<T> Count for T where T: Clone + Debug + Display + FromStr + PartialEq + Zero + One + CheckedAdd + CheckedMul {}

pub(crate) fn add<T: Count>(a: &T, b: &T) -> Result<T> {
    a.checked_add(b).ok_or(Error::Overflow)
}

pub(crate) fn mul<T: Count>(a: &T, b: &T) -> Result<T> {
    a.checked_mul(b).ok_or(Error::Overflow)
}

pub(crate) fn pow<T: Count>(base: &T, exp: u64) -> Result<T> {
    (0..exp).try_fold(T::one(), |acc, _| mul(&acc, base))
}

/// Serde adapter writing a count as a bare JSON number of any size.
pub(crate) mod decimal {
    use std::fmt::Display;
    use std::str::FromStr;

    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Display, S: Serializer>(value: &T, serializer: S) -> Result<S::Ok, S::Error> {
        let number = serde_json::Number::from_str(&value.to_string()).map_err(serde::ser::Error::custom)?;
        number.serialize(serializer)
    }

    pub fn deserialize<'de, T: FromStr, D: Deserializer<'de>>(deserializer: D) -> Result<T, D::Error> {
        let number = serde_json::Number::deserialize(deserializer)?;
        number
            .to_string()
            .parse()
            .map_err(|_| serde::de::Error::custom(format!("not a non-negative integer: {number}")))
    }
}
