//! Exact scalar abstraction.
//!
//! Every invariant, inequality side and verdict in this crate is computed in a
//! type implementing [`Scalar`]. The trait is only implemented for exact
//! rationals (`Ratio<T>` over a signed integer type), so no floating point can
//! reach a decision path.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive};

use crate::error::Error;

/// An exact ordered field element with access to its reduced numerator and
/// denominator.
pub trait Scalar:
    Clone + Debug + Display + Ord + Hash + Send + Sync + 'static + Num + Signed
{
    /// Integer ring underlying the fraction.
    type Int: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + Send
        + Sync
        + FromPrimitive
        + ToPrimitive
        + 'static;

    /// `n / d` in lowest terms. Panics when `d == 0`.
    fn ratio(n: i64, d: i64) -> Self;

    fn integer(n: i64) -> Self {
        Self::ratio(n, 1)
    }

    fn from_int(n: Self::Int) -> Self;

    fn numer_int(&self) -> &Self::Int;

    /// Always positive.
    fn denom_int(&self) -> &Self::Int;

    /// Parses `"p"` or `"p/q"` with decimal integers. Anything else, including
    /// decimal points, exponents and a zero denominator, is rejected.
    fn parse_exact(s: &str) -> Result<Self, Error>;

    fn is_integral(&self) -> bool {
        self.denom_int().is_one()
    }

    /// Largest integer `<= self`.
    fn floor_int(&self) -> Self::Int {
        self.numer_int().div_floor(self.denom_int())
    }

    /// Smallest integer `>= self`.
    fn ceil_int(&self) -> Self::Int {
        self.numer_int().div_ceil(self.denom_int())
    }

    /// Lossy view for progress text only; never used in a comparison.
    fn approx(&self) -> f64 {
        let n = self.numer_int().to_f64().unwrap_or(f64::NAN);
        let d = self.denom_int().to_f64().unwrap_or(f64::NAN);
        n / d
    }

    fn from_u64(n: u64) -> Self {
        Self::from_int(Self::Int::from_u64(n).expect("count fits the integer type"))
    }
}

impl<T> Scalar for Ratio<T>
where
    T: Integer
        + Signed
        + Clone
        + Debug
        + Display
        + Hash
        + Send
        + Sync
        + FromPrimitive
        + ToPrimitive
        + 'static,
{
    type Int = T;

    fn ratio(n: i64, d: i64) -> Self {
        let n = T::from_i64(n).expect("numerator fits the integer type");
        let d = T::from_i64(d).expect("denominator fits the integer type");
        Ratio::new(n, d)
    }

    fn from_int(n: T) -> Self {
        Ratio::from_integer(n)
    }

    fn numer_int(&self) -> &T {
        self.numer()
    }

    fn denom_int(&self) -> &T {
        self.denom()
    }

    fn parse_exact(s: &str) -> Result<Self, Error> {
        let bad = || Error::Parse(format!("expected an exact rational \"p\" or \"p/q\", got {s:?}"));
        let digits = |t: &str, allow_sign: bool| {
            let body = if allow_sign { t.strip_prefix('-').unwrap_or(t) } else { t };
            !body.is_empty() && body.bytes().all(|b| b.is_ascii_digit())
        };
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n, Some(d)),
            None => (s, None),
        };
        if !digits(num, true) {
            return Err(bad());
        }
        let n = T::from_str_radix(num, 10).map_err(|_| bad())?;
        let d = match den {
            Some(d) if digits(d, false) => T::from_str_radix(d, 10).map_err(|_| bad())?,
            Some(_) => return Err(bad()),
            None => T::one(),
        };
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        Ok(Ratio::new(n, d))
    }
}

/// Least common multiple of the denominators of `values` (1 for none).
pub fn common_denominator<'a, Q: Scalar>(values: impl IntoIterator<Item = &'a Q>) -> Q::Int {
    values
        .into_iter()
        .fold(Q::Int::one(), |acc, v| acc.lcm(v.denom_int()))
}

/// Serde adapters writing scalars as `"p/q"` strings (integers as `"p"`).
pub mod exact {
    use std::collections::BTreeMap;

    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use super::Scalar;

    pub fn serialize<Q: Scalar, S: Serializer>(v: &Q, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, Q: Scalar, D: Deserializer<'de>>(d: D) -> Result<Q, D::Error> {
        let s = String::deserialize(d)?;
        Q::parse_exact(&s).map_err(D::Error::custom)
    }

    pub mod option {
        use super::*;

        pub fn serialize<Q: Scalar, S: Serializer>(v: &Option<Q>, s: S) -> Result<S::Ok, S::Error> {
            v.as_ref().map(|q| q.to_string()).serialize(s)
        }

        pub fn deserialize<'de, Q: Scalar, D: Deserializer<'de>>(
            d: D,
        ) -> Result<Option<Q>, D::Error> {
            Option::<String>::deserialize(d)?
                .map(|s| Q::parse_exact(&s).map_err(D::Error::custom))
                .transpose()
        }
    }

    pub mod map {
        use super::*;

        pub fn serialize<Q: Scalar, S: Serializer>(
            v: &BTreeMap<String, Q>,
            s: S,
        ) -> Result<S::Ok, S::Error> {
            v.iter()
                .map(|(k, q)| (k, q.to_string()))
                .collect::<BTreeMap<_, _>>()
                .serialize(s)
        }

        pub fn deserialize<'de, Q: Scalar, D: Deserializer<'de>>(
            d: D,
        ) -> Result<BTreeMap<String, Q>, D::Error> {
            BTreeMap::<String, String>::deserialize(d)?
                .into_iter()
                .map(|(k, s)| Ok((k, Q::parse_exact(&s).map_err(D::Error::custom)?)))
                .collect()
        }
    }
}

/// Serde adapters writing integers of the underlying ring as decimal strings.
pub mod int {
    use std::fmt::Display;

    use num_traits::Num;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<T: Display, S: Serializer>(v: &T, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn deserialize<'de, T: Num, D: Deserializer<'de>>(d: D) -> Result<T, D::Error> {
        let s = String::deserialize(d)?;
        T::from_str_radix(&s, 10).map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<T: Display, S: Serializer>(v: &[T], s: S) -> Result<S::Ok, S::Error> {
            v.iter().map(|x| x.to_string()).collect::<Vec<_>>().serialize(s)
        }

        pub fn deserialize<'de, T: Num, D: Deserializer<'de>>(d: D) -> Result<Vec<T>, D::Error> {
            Vec::<String>::deserialize(d)?
                .iter()
                .map(|s| {
                    T::from_str_radix(s, 10)
                        .map_err(|_| D::Error::custom(format!("bad integer {s:?}")))
                })
                .collect()
        }
    }
}
