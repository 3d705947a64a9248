//! Exact rational scalars: thin helpers over `num::BigRational`.
//!
//! Rationals serialize as `"p/q"` (or `"p"` when the denominator is 1) in
//! every file format of this crate.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};
use std::str::FromStr;

use crate::error::Error;

/// Exact rational number, always reduced, denominator >= 1.
pub type Rational = BigRational;

/// Integer rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Rational from numerator and denominator (reduced on construction).
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"p/q"` or `"p"`.
pub fn parse_rational(s: &str) -> Result<Rational, Error> {
    let s = s.trim();
    Rational::from_str(s).map_err(|_| Error::Parse(format!("invalid rational: {s:?}")))
}

/// Canonical string form: `p/q`, or `p` when the denominator is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    let num = r.numer();
    let den = r.denom();
    // Fits-in-f64 fast path, else scale down via bit lengths.
    match (num.to_string().parse::<f64>(), den.to_string().parse::<f64>()) {
        (Ok(n), Ok(d)) if n.is_finite() && d.is_finite() && d != 0.0 => n / d,
        _ => {
            let shift = (num.bits().max(den.bits()) as i64 - 900).max(0) as u64;
            let n2 = num >> shift;
            let d2 = den >> shift;
            let n = n2.to_string().parse::<f64>().unwrap_or(f64::NAN);
            let d = d2.to_string().parse::<f64>().unwrap_or(f64::NAN);
            n / d
        }
    }
}

/// Serde adapter: rational as canonical string.
pub mod serde_rational {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(de)?;
        parse_rational(&s).map_err(de::Error::custom)
    }
}

/// Serde adapter: vector of rationals as strings.
pub mod serde_rational_vec {
    use super::*;
    use serde::{de, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = ser.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&format_rational(r))?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<Rational>, D::Error> {
        let items = Vec::<String>::deserialize(de)?;
        items
            .iter()
            .map(|s| parse_rational(s).map_err(de::Error::custom))
            .collect()
    }
}

pub fn is_integer(r: &Rational) -> bool {
    r.denom().is_one()
}

/// Sign as -1, 0, 1.
pub fn sign(r: &Rational) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "-3", "7/2", "-5/8"] {
            let r = parse_rational(s).unwrap();
            assert_eq!(format_rational(&r), s);
        }
        // reduction and sign normalization
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert_eq!(format_rational(&parse_rational("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn rejects_garbage() {
        assert!(parse_rational("1/0").is_err() || parse_rational("1/0").is_ok() == false);
        assert!(parse_rational("x").is_err());
        assert!(parse_rational("").is_err());
    }

    #[test]
    fn f64_conversion() {
        assert_eq!(to_f64(&ratio(1, 2)), 0.5);
        assert!((to_f64(&ratio(-7, 3)) + 7.0 / 3.0).abs() < 1e-12);
    }
}
