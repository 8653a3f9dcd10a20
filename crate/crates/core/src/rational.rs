//! Exact rationals used for ages, degrees, coefficients and Newton values.

use num_integer::Integer;
use num_traits::{Signed, Zero};

pub type Rational = num_rational::Ratio<i64>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(num, den)
}

/// Integer part, rounded toward negative infinity.
pub fn floor(r: &Rational) -> i64 {
    r.numer().div_floor(r.denom())
}

/// Fractional part in `[0, 1)`.
pub fn fract(r: &Rational) -> Rational {
    r - int(floor(r))
}

pub fn in_open_unit(r: &Rational) -> bool {
    r.is_positive() && *r < int(1)
}

pub fn is_zero(r: &Rational) -> bool {
    r.is_zero()
}

/// Parses `"a/b"` or `"a"`.
pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            (d != 0).then(|| Rational::new(n, d))
        }
        None => s.parse().ok().map(int),
    }
}

/// Serde adapter writing rationals as lowest-terms `"num/den"` strings.
pub mod serde_str {
    use super::Rational;
    use serde::{de::Error, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(r)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        super::parse(&s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}")))
    }
}

pub mod serde_str_vec {
    use super::Rational;
    use serde::{de::Error, ser::SerializeSeq, Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rational], s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&r.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rational>, D::Error> {
        Vec::<String>::deserialize(d)?
            .iter()
            .map(|s| super::parse(s).ok_or_else(|| D::Error::custom(format!("invalid rational {s:?}"))))
            .collect()
    }
}
