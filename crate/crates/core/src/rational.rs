//! Arbitrary-precision rational helpers shared by every module.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Rational = BigRational;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_biguint(n: &BigUint) -> Rational {
    Rational::from_integer(BigInt::from(n.clone()))
}

/// `base^exp` for a possibly negative exponent.
pub fn pow(base: &Rational, exp: i64) -> Rational {
    if exp >= 0 {
        num_traits::pow(base.clone(), exp as usize)
    } else {
        num_traits::pow(base.recip(), (-exp) as usize)
    }
}

/// `q^-e` as an exact rational.
pub fn inv_power(q: u64, e: u64) -> Rational {
    Rational::new(BigInt::one(), num_traits::pow(BigInt::from(q), e as usize))
}

/// Finite q-Pochhammer product `(1-t)(1-t^2)...(1-t^n)` evaluated at a rational.
pub fn pochhammer_at(t: &Rational, n: usize) -> Rational {
    let mut acc = Rational::one();
    let mut tp = Rational::one();
    for _ in 0..n {
        tp *= t;
        acc *= Rational::one() - &tp;
    }
    acc
}

/// Decimal rendering with twelve significant digits.
pub fn to_decimal(x: &Rational) -> String {
    if x.is_zero() {
        return "0".to_string();
    }
    match x.to_f64() {
        Some(f) if f.is_finite() => format!("{:.11e}", f),
        _ => {
            // Far outside f64 range; fall back to the sign only.
            if x.is_negative() { "-inf".into() } else { "inf".into() }
        }
    }
}

/// Serialize big integers as decimal strings.
pub fn ser_biguint_str<S: serde::Serializer>(n: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(n)
}

/// Serialize rationals as `"p/q"` strings (integers as `"p"`).
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(x: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(x)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        Rational::from_str(&s).map_err(D::Error::custom)
    }
}

pub mod serde_vec_str {
    use super::Rational;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};
    use std::str::FromStr;

    pub fn serialize<S: Serializer>(xs: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| Rational::from_str(s).map_err(D::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_at_half() {
        // (1/2)(3/4)(7/8)
        assert_eq!(pochhammer_at(&ratio(1, 2), 3), ratio(21, 64));
        assert_eq!(pochhammer_at(&ratio(1, 2), 0), int(1));
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(&ratio(2, 3), -2), ratio(9, 4));
        assert_eq!(inv_power(3, 2), ratio(1, 9));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(to_decimal(&ratio(1, 2)), "5.00000000000e-1");
        assert_eq!(to_decimal(&int(0)), "0");
    }
}
