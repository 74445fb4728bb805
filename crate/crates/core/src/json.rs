//! Serde helpers for exact numbers. Integers are written as JSON numbers when
//! they fit in 64 bits and as decimal strings otherwise.

use num_bigint::BigInt;
use serde::Deserialize;

#[derive(Deserialize)]
#[serde(untagged)]
enum Raw {
    Int(i64),
    Str(String),
}

impl Raw {
    fn into_big<E: serde::de::Error>(self) -> Result<BigInt, E> {
        match self {
            Raw::Int(v) => Ok(BigInt::from(v)),
            Raw::Str(s) => s.parse().map_err(E::custom),
        }
    }
}

fn ser_big<S: serde::Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
    use num_traits::ToPrimitive;
    match c.to_i64() {
        Some(v) => s.serialize_i64(v),
        None => s.serialize_str(&c.to_string()),
    }
}

pub mod big_int {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(c: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        ser_big(c, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        Raw::deserialize(d)?.into_big()
    }
}

/// Rationals as `[numerator, denominator]`.
pub mod rational {
    use super::*;
    use num_rational::BigRational;
    use num_traits::Zero;
    use serde::ser::SerializeTuple;
    use serde::{de::Error, Deserializer, Serializer};

    struct Int<'a>(&'a BigInt);

    impl serde::Serialize for Int<'_> {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            ser_big(self.0, s)
        }
    }

    pub fn serialize<S: Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        let mut t = s.serialize_tuple(2)?;
        t.serialize_element(&Int(q.numer()))?;
        t.serialize_element(&Int(q.denom()))?;
        t.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        let (n, m) = <(Raw, Raw)>::deserialize(d)?;
        let (n, m): (BigInt, BigInt) = (n.into_big()?, m.into_big()?);
        if m.is_zero() {
            return Err(D::Error::custom("zero denominator"));
        }
        Ok(BigRational::new(n, m))
    }
}
