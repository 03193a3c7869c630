//! Exact rationals and their string form.
//!
//! Rationals are `num_rational::BigRational`, which is always kept in lowest
//! terms with a positive denominator. In JSON they travel as `"p/q"`, or `"p"`
//! when the denominator is one.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::str::FromStr;

pub type Rational = num_rational::BigRational;

pub fn rat(p: i64, q: i64) -> Rational {
    Rational::new(BigInt::from(p), BigInt::from(q))
}

pub fn int(p: i64) -> Rational {
    Rational::from_integer(BigInt::from(p))
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Formats as `p/q`, or `p` for integers.
pub fn to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q.is_zero() {
                return None;
            }
            Some(Rational::new(p, q))
        }
        None => BigInt::from_str(s).ok().map(Rational::from_integer),
    }
}

pub fn factorial(k: u64) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

/// `#[serde(with = "crate::rational::serde_str")]`
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&super::to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}")))
    }
}

/// Same as [`serde_str`] for `Vec<Rational>`.
pub mod serde_str_vec {
    use super::Rational;
    use serde::{de::Error as _, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&super::to_string(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| super::parse(s).ok_or_else(|| D::Error::custom(format!("bad rational {s:?}"))))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_forms() {
        assert_eq!(to_string(&rat(6, 4)), "3/2");
        assert_eq!(to_string(&rat(-6, -3)), "2");
        assert_eq!(to_string(&rat(0, 7)), "0");
        assert_eq!(to_string(&rat(3, -9)), "-1/3");
        assert_eq!(rat(0, 5).denom(), &BigInt::one());
        assert!(parse("1/0").is_none());
        assert!(parse("x").is_none());
    }

    proptest! {
        #[test]
        fn string_round_trip(p in -10_000i64..10_000, q in 1i64..10_000) {
            let r = rat(p, q);
            prop_assert_eq!(parse(&to_string(&r)), Some(r));
        }

        // a/b + c/d checked against cross-multiplied integers.
        #[test]
        fn addition_matches_integer_arithmetic(a in -500i64..500, b in 1i64..500, c in -500i64..500, d in 1i64..500) {
            let sum = rat(a, b) + rat(c, d);
            let num = BigInt::from(a * d + c * b);
            let den = BigInt::from(b * d);
            prop_assert_eq!(sum.numer() * &den, num * sum.denom());
            prop_assert!(sum.denom() > &BigInt::zero());
        }
    }
}
