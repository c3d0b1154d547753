//! Exact rational scalars extended with a point at infinity.
//!
//! Gauges and the dilation invariant of a polytope are exact rationals,
//! except in degenerate cases where no dilation works at all; those are
//! represented by [`ExtRat::Infinity`]. Serialized form is the string
//! `"num/den"` (always with an explicit denominator) or `"inf"`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::de::Error as DeError;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::cmp::Ordering;
use std::fmt;

/// A reduced rational number or infinity. Infinity compares greater than
/// every finite value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExtRat {
    Finite(BigRational),
    Infinity,
}

impl ExtRat {
    pub fn from_int(n: u64) -> Self {
        ExtRat::Finite(BigRational::from_integer(BigInt::from(n)))
    }

    /// `num/den` as a reduced rational. Panics if `den` is zero.
    pub fn ratio(num: i64, den: i64) -> Self {
        ExtRat::Finite(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, ExtRat::Infinity)
    }

    pub fn as_finite(&self) -> Option<&BigRational> {
        match self {
            ExtRat::Finite(r) => Some(r),
            ExtRat::Infinity => None,
        }
    }

    pub fn mul_int(&self, n: u64) -> Self {
        match self {
            ExtRat::Finite(r) => ExtRat::Finite(r * BigRational::from_integer(BigInt::from(n))),
            ExtRat::Infinity => ExtRat::Infinity,
        }
    }

    pub fn min(self, other: Self) -> Self {
        if self <= other {
            self
        } else {
            other
        }
    }

    /// Smallest integer ≥ self. Only meaningful for finite values.
    pub fn ceil_int(&self) -> Option<BigInt> {
        self.as_finite().map(|r| r.ceil().to_integer())
    }

    /// Parses the serialized form: `"inf"`, `"num/den"`, or a bare integer.
    pub fn parse(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if s == "inf" {
            return Ok(ExtRat::Infinity);
        }
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, d),
            None => (s, "1"),
        };
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad rational numerator in {s:?}"))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad rational denominator in {s:?}"))?;
        if den.is_zero() {
            return Err(format!("zero denominator in {s:?}"));
        }
        Ok(ExtRat::Finite(BigRational::new(num, den)))
    }
}

impl PartialOrd for ExtRat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ExtRat {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ExtRat::Infinity, ExtRat::Infinity) => Ordering::Equal,
            (ExtRat::Infinity, ExtRat::Finite(_)) => Ordering::Greater,
            (ExtRat::Finite(_), ExtRat::Infinity) => Ordering::Less,
            (ExtRat::Finite(a), ExtRat::Finite(b)) => a.cmp(b),
        }
    }
}

impl fmt::Display for ExtRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRat::Finite(r) => {
                // Always print an explicit denominator so the format is
                // unambiguous ("1/1" rather than "1").
                let num = r.numer();
                let den = r.denom();
                debug_assert!(den.is_positive());
                write!(f, "{num}/{den}")
            }
            ExtRat::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtRat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExtRat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        ExtRat::parse(&s).map_err(D::Error::custom)
    }
}

/// Formats a plain rational the same way `ExtRat` does.
pub fn rational_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordering_and_min() {
        let half = ExtRat::ratio(1, 2);
        let one = ExtRat::from_int(1);
        assert!(half < one);
        assert!(one < ExtRat::Infinity);
        assert_eq!(half.clone().min(ExtRat::Infinity), half);
        assert_eq!(ExtRat::ratio(2, 4), ExtRat::ratio(1, 2));
    }

    #[test]
    fn display_and_parse_roundtrip() {
        for v in [ExtRat::ratio(2, 4), ExtRat::from_int(7), ExtRat::Infinity] {
            let s = v.to_string();
            assert_eq!(ExtRat::parse(&s).unwrap(), v);
        }
        assert_eq!(ExtRat::ratio(1, 2).to_string(), "1/2");
        assert_eq!(ExtRat::from_int(1).to_string(), "1/1");
        assert_eq!(ExtRat::Infinity.to_string(), "inf");
    }

    #[test]
    fn ceil_int() {
        assert_eq!(ExtRat::ratio(3, 2).ceil_int().unwrap(), BigInt::from(2));
        assert_eq!(ExtRat::from_int(4).ceil_int().unwrap(), BigInt::from(4));
        assert_eq!(ExtRat::Infinity.ceil_int(), None);
    }
}
