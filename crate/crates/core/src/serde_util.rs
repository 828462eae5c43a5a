//! Serde helpers: big integers and rationals travel as decimal strings so
//! that values beyond 64 bits survive a JSON round trip.

use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serializer};

/// An integer accepted either as a JSON number or as a decimal string.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntLiteral(pub BigInt);

impl<'de> Deserialize<'de> for IntLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = IntLiteral;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("an integer or a decimal integer string")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<IntLiteral, E> {
                Ok(IntLiteral(v.into()))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<IntLiteral, E> {
                Ok(IntLiteral(v.into()))
            }
            fn visit_f64<E: de::Error>(self, v: f64) -> Result<IntLiteral, E> {
                if v.fract() == 0.0 && v.abs() < 9.0e15 {
                    Ok(IntLiteral((v as i64).into()))
                } else {
                    Err(E::custom(format!("{v} is not an integer")))
                }
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<IntLiteral, E> {
                BigInt::from_str(v.trim())
                    .map(IntLiteral)
                    .map_err(|_| E::custom(format!("invalid integer {v:?}")))
            }
        }
        d.deserialize_any(V)
    }
}

/// Parses `p`, `p/q` or a JSON integer into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, String> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num = BigInt::from_str(num).map_err(|_| format!("invalid rational {s:?}"))?;
    let den = BigInt::from_str(den).map_err(|_| format!("invalid rational {s:?}"))?;
    if den == BigInt::from(0) {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(BigRational::new(num, den))
}

pub fn format_rational(r: &BigRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A rational accepted as a string (`"1/3"`) or an integer.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalLiteral(pub BigRational);

impl<'de> Deserialize<'de> for RationalLiteral {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = RationalLiteral;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a rational such as \"1/3\" or an integer")
            }
            fn visit_i64<E: de::Error>(self, v: i64) -> Result<RationalLiteral, E> {
                Ok(RationalLiteral(BigRational::from_integer(v.into())))
            }
            fn visit_u64<E: de::Error>(self, v: u64) -> Result<RationalLiteral, E> {
                Ok(RationalLiteral(BigRational::from_integer(v.into())))
            }
            fn visit_str<E: de::Error>(self, v: &str) -> Result<RationalLiteral, E> {
                parse_rational(v).map(RationalLiteral).map_err(E::custom)
            }
        }
        d.deserialize_any(V)
    }
}

pub mod bigint_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&v.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        IntLiteral::deserialize(d).map(|x| x.0)
    }
}

pub mod bigint_vec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(ToString::to_string).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigInt>, D::Error> {
        Vec::<IntLiteral>::deserialize(d).map(|v| v.into_iter().map(|x| x.0).collect())
    }
}

pub mod bigint_vec_vec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[Vec<BigInt>], s: S) -> Result<S::Ok, S::Error> {
        v.iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>())
            .collect::<Vec<_>>()
            .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Vec<BigInt>>, D::Error> {
        Vec::<Vec<IntLiteral>>::deserialize(d)
            .map(|v| v.into_iter().map(|r| r.into_iter().map(|x| x.0).collect()).collect())
    }
}

pub mod rational_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(v))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigRational, D::Error> {
        RationalLiteral::deserialize(d).map(|x| x.0)
    }
}

pub mod rational_vec {
    use super::*;
    use serde::Serialize;

    pub fn serialize<S: Serializer>(v: &[BigRational], s: S) -> Result<S::Ok, S::Error> {
        v.iter().map(format_rational).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<BigRational>, D::Error> {
        Vec::<RationalLiteral>::deserialize(d).map(|v| v.into_iter().map(|x| x.0).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!(format_rational(&parse_rational(" 2/4 ").unwrap()), "1/2");
        assert_eq!(format_rational(&parse_rational("-3").unwrap()), "-3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn literal_accepts_numbers_and_strings() {
        let v: Vec<IntLiteral> = serde_json::from_str(r#"[3, "-123456789012345678901234"]"#).unwrap();
        assert_eq!(v[0].0, BigInt::from(3));
        assert_eq!(v[1].0.to_string(), "-123456789012345678901234");
        assert!(serde_json::from_str::<IntLiteral>("1.5").is_err());
    }
}
