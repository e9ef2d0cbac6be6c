//! Exact rational scalars: parsing, formatting and closed intervals.
//!
//! Every coefficient in this crate is a [`Rat`] (arbitrary-precision
//! rational, always in lowest terms with positive denominator). Rationals
//! cross serialization boundaries as `"p/q"` strings, never as floats.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ParseError;

/// Exact rational scalar. `BigRational` keeps values reduced with a
/// positive denominator, which is exactly the invariant we need.
pub type Rat = BigRational;

/// Shorthand for small integer-valued rationals.
pub fn rat_i(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Shorthand for `p/q` from machine integers. Panics on `q == 0`.
pub fn rat(p: i64, q: i64) -> Rat {
    Rat::new(BigInt::from(p), BigInt::from(q))
}

/// Parses `"p/q"` or `"p"` (optionally signed) into a reduced rational.
pub fn parse_rat(s: &str) -> Result<Rat, ParseError> {
    let t = s.trim();
    if t.is_empty() {
        return Err(ParseError::new("empty rational literal"));
    }
    if let Some((num, den)) = t.split_once('/') {
        let p: BigInt = num
            .trim()
            .parse()
            .map_err(|_| ParseError::new(format!("bad numerator in {t:?}")))?;
        let q: BigInt = den
            .trim()
            .parse()
            .map_err(|_| ParseError::new(format!("bad denominator in {t:?}")))?;
        if q.is_zero() {
            return Err(ParseError::new(format!("zero denominator in {t:?}")));
        }
        Ok(Rat::new(p, q))
    } else {
        let p: BigInt = t
            .parse()
            .map_err(|_| ParseError::new(format!("bad integer literal {t:?}")))?;
        Ok(Rat::from_integer(p))
    }
}

/// Formats a rational as `"p/q"`, or `"p"` when the denominator is one.
pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Serde adapter: a single rational as a `"p/q"` string.
pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rat, D::Error> {
        let raw = String::deserialize(d)?;
        parse_rat(&raw).map_err(serde::de::Error::custom)
    }
}

/// Serde adapter: a vector of rationals as `"p/q"` strings.
pub mod rat_vec_string {
    use super::*;

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_to_string).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// Serde adapter: an ordered set of rationals as `"p/q"` strings.
pub mod rat_set_string {
    use super::*;
    use std::collections::BTreeSet;

    pub fn serialize<S: Serializer>(v: &BTreeSet<Rat>, s: S) -> Result<S::Ok, S::Error> {
        let strings: Vec<String> = v.iter().map(rat_to_string).collect();
        strings.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeSet<Rat>, D::Error> {
        let raw = Vec::<String>::deserialize(d)?;
        raw.iter()
            .map(|s| parse_rat(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// A closed interval `[lo, hi]` with rational endpoints, `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rat_string")]
    pub lo: Rat,
    #[serde(with = "rat_string")]
    pub hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Result<Self, ParseError> {
        if lo > hi {
            return Err(ParseError::new(format!(
                "interval endpoints out of order: [{}, {}]",
                rat_to_string(&lo),
                rat_to_string(&hi)
            )));
        }
        Ok(Interval { lo, hi })
    }

    pub fn unit() -> Self {
        Interval {
            lo: Rat::zero(),
            hi: Rat::one(),
        }
    }

    pub fn contains(&self, t: &Rat) -> bool {
        self.lo <= *t && *t <= self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat_i(2)
    }
}

impl std::fmt::Display for Interval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[{}, {}]", rat_to_string(&self.lo), rat_to_string(&self.hi))
    }
}

/// Scales a list of rationals by the unique positive factor making all
/// entries coprime integers. Returns the scaled integer values (as `Rat`s).
/// A zero vector is returned unchanged.
pub fn primitive_integer_scale(values: &[Rat]) -> Vec<Rat> {
    use num_integer::Integer;
    if values.iter().all(|v| v.is_zero()) {
        return values.to_vec();
    }
    let mut denom_lcm = BigInt::one();
    for v in values {
        denom_lcm = denom_lcm.lcm(v.denom());
    }
    let ints: Vec<BigInt> = values
        .iter()
        .map(|v| v.numer() * (&denom_lcm / v.denom()))
        .collect();
    let mut g = BigInt::zero();
    for i in &ints {
        g = g.gcd(i);
    }
    ints.into_iter()
        .map(|i| Rat::from_integer(i / &g))
        .collect()
}

/// True when `r` is an integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom().is_one()
}

/// Largest integer `n` with `n <= r`.
pub fn floor_int(r: &Rat) -> BigInt {
    r.floor().to_integer()
}

/// Absolute value.
pub fn rat_abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["1/2", "-3/4", "0", "7", "-7", "10/4"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&rat_to_string(&r)).unwrap();
            assert_eq!(r, back);
        }
        // reduction and sign normalization
        assert_eq!(rat_to_string(&parse_rat("10/4").unwrap()), "5/2");
        assert_eq!(rat_to_string(&parse_rat("3/-6").unwrap()), "-1/2");
    }

    #[test]
    fn parse_rejects_garbage() {
        for s in ["", "1/0", "a/b", "1//2", "1.5"] {
            assert!(parse_rat(s).is_err(), "should reject {s:?}");
        }
    }

    #[test]
    fn primitive_scaling() {
        let v = vec![rat(1, 2), rat(-3, 4), rat_i(0)];
        let scaled = primitive_integer_scale(&v);
        assert_eq!(scaled, vec![rat_i(2), rat_i(-3), rat_i(0)]);
        let zero = vec![rat_i(0), rat_i(0)];
        assert_eq!(primitive_integer_scale(&zero), zero);
    }
}
