//! Per-singularity invariants of simple (ADE) plane-curve singularities.
//!
//! Milnor and Tjurina numbers coincide with the index for every ADE type, the
//! multiplicity is 2 for `A_k` and 3 otherwise. Miyaoka-Kobayashi numbers split
//! as `m(p) / 3 = tau(p) + epsilon(p)` with `1/2 <= epsilon(p) < 1`.
//!
//! Local orbifold Euler numbers `e_orb(p, alpha)` are only known here for
//! `A1, A2, A3, D4` (closed forms on a window ending at the log canonical
//! threshold) and for `E6, E7, E8` at the threshold itself, where they vanish.
//! Everything else is reported as inapplicable and must never be read as a
//! satisfied inequality.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

/// An ADE singularity type. Invalid family/index combinations cannot be
/// constructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SingularityClass {
    family: Family,
    index: u32,
}

impl SingularityClass {
    pub const A1: Self = Self { family: Family::A, index: 1 };
    pub const A2: Self = Self { family: Family::A, index: 2 };
    pub const A3: Self = Self { family: Family::A, index: 3 };
    pub const A4: Self = Self { family: Family::A, index: 4 };
    pub const D4: Self = Self { family: Family::D, index: 4 };
    pub const E6: Self = Self { family: Family::E, index: 6 };
    pub const E7: Self = Self { family: Family::E, index: 7 };
    pub const E8: Self = Self { family: Family::E, index: 8 };

    pub fn new(family: Family, index: u32) -> Result<Self> {
        let ok = match family {
            Family::A => index >= 1,
            Family::D => index >= 4,
            Family::E => (6..=8).contains(&index),
        };
        if ok {
            Ok(Self { family, index })
        } else {
            Err(Error::InvalidClass(format!("{}{}", family.letter(), index)))
        }
    }

    pub fn a(k: u32) -> Result<Self> {
        Self::new(Family::A, k)
    }

    pub fn d(k: u32) -> Result<Self> {
        Self::new(Family::D, k)
    }

    pub fn e(k: u32) -> Result<Self> {
        Self::new(Family::E, k)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn index(&self) -> u32 {
        self.index
    }

    pub fn milnor(&self) -> u64 {
        u64::from(self.index)
    }

    /// Equal to the Milnor number: ADE singularities are weighted homogeneous.
    pub fn tjurina(&self) -> u64 {
        self.milnor()
    }

    pub fn multiplicity(&self) -> u64 {
        match self.family {
            Family::A => 2,
            Family::D | Family::E => 3,
        }
    }

    pub fn is_a1_or_a2(&self) -> bool {
        *self == Self::A1 || *self == Self::A2
    }

    pub fn mk_number<Q: Scalar>(&self) -> Q {
        let k = i64::from(self.index);
        match (self.family, self.index) {
            (Family::A, _) => Q::integer(3 * (k + 1)) - Q::ratio(3, k + 1),
            (Family::D, _) => Q::integer(3 * (k + 1)) - Q::ratio(3, 4 * (k - 2)),
            (Family::E, 6) => Q::ratio(167, 8),
            (Family::E, 7) => Q::ratio(383, 16),
            (Family::E, _) => Q::ratio(1079, 40),
        }
    }

    pub fn epsilon<Q: Scalar>(&self) -> Q {
        let k = i64::from(self.index);
        match (self.family, self.index) {
            (Family::A, _) => Q::ratio(k, k + 1),
            (Family::D, _) => Q::ratio(4 * k - 9, 4 * (k - 2)),
            (Family::E, 6) => Q::ratio(23, 24),
            (Family::E, 7) => Q::ratio(47, 48),
            (Family::E, _) => Q::ratio(119, 120),
        }
    }

    /// Log canonical threshold, where catalogued. `lct(E7) = 5/9` comes from
    /// the weights of `x^3 + x y^3` rather than a tabulated value; see
    /// [`SingularityClass::lct_is_derived`].
    pub fn lct<Q: Scalar>(&self) -> Result<Q> {
        match (self.family, self.index) {
            (Family::A, 1) => Ok(Q::one()),
            (Family::A, 2) => Ok(Q::ratio(5, 6)),
            (Family::A, 3) => Ok(Q::ratio(3, 4)),
            (Family::D, 4) => Ok(Q::ratio(2, 3)),
            (Family::E, 6) => Ok(Q::ratio(7, 12)),
            (Family::E, 7) => Ok(Q::ratio(5, 9)),
            (Family::E, 8) => Ok(Q::ratio(8, 15)),
            _ => Err(Error::Unavailable { what: "log canonical threshold", class: self.to_string() }),
        }
    }

    pub fn lct_is_derived(&self) -> bool {
        *self == Self::E7
    }

    pub fn eorb_formula<Q: Scalar>(&self) -> Option<EorbFormula<Q>> {
        let (constant, slope, scale, lo, lo_inclusive) = match (self.family, self.index) {
            (Family::A, 1) => (1, 1, 1, Q::zero(), false),
            (Family::A, 2) => (5, 6, 24, Q::ratio(1, 6), true),
            (Family::A, 3) => (3, 4, 8, Q::ratio(1, 4), true),
            (Family::D, 4) => (2, 3, 4, Q::zero(), false),
            _ => return None,
        };
        let constant = Q::integer(constant);
        let slope = Q::integer(slope);
        let hi = constant.clone() / slope.clone();
        Some(EorbFormula {
            constant,
            slope,
            scale: Q::integer(scale),
            window: AlphaWindow { lo, lo_inclusive, hi },
        })
    }

    /// Smallest and largest alpha at which `e_orb` is known for this class.
    pub fn eorb_window<Q: Scalar>(&self) -> Option<AlphaWindow<Q>> {
        if let Some(f) = self.eorb_formula::<Q>() {
            return Some(f.window);
        }
        match self.family {
            Family::E => {
                let t = self.lct::<Q>().ok()?;
                Some(AlphaWindow { lo: t.clone(), lo_inclusive: true, hi: t })
            }
            _ => None,
        }
    }

    /// Local orbifold Euler number `e_orb(p, P^2, alpha C)`.
    pub fn orbifold_euler<Q: Scalar>(&self, alpha: &Q) -> Result<Q> {
        let inapplicable = |reason: &str| Error::Inapplicable {
            class: self.to_string(),
            alpha: alpha.to_string(),
            reason: reason.to_string(),
        };
        if let Some(f) = self.eorb_formula::<Q>() {
            return if f.window.contains(alpha) {
                Ok(f.eval(alpha))
            } else {
                Err(inapplicable("alpha outside the validity window"))
            };
        }
        match self.lct::<Q>() {
            Ok(t) if self.family == Family::E && &t == alpha => Ok(Q::zero()),
            Ok(_) if self.family == Family::E => {
                Err(inapplicable("only the value at the log canonical threshold is known"))
            }
            _ => Err(inapplicable("no orbifold Euler data for this class")),
        }
    }

    pub fn data<Q: Scalar>(&self) -> SingularityData<Q> {
        SingularityData {
            class: *self,
            milnor: self.milnor(),
            tjurina: self.tjurina(),
            multiplicity: self.multiplicity(),
            mk_number: self.mk_number(),
            epsilon: self.epsilon(),
            lct: self.lct().ok(),
            lct_derived: self.lct_is_derived(),
            eorb_formula: self.eorb_formula(),
        }
    }
}

impl fmt::Display for SingularityClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family.letter(), self.index)
    }
}

impl FromStr for SingularityClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidClass(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next() {
            Some('A') => Family::A,
            Some('D') => Family::D,
            Some('E') => Family::E,
            _ => return Err(bad()),
        };
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) || rest.starts_with('0') {
            return Err(bad());
        }
        let index = rest.parse::<u32>().map_err(|_| bad())?;
        Self::new(family, index)
    }
}

impl Serialize for SingularityClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for SingularityClass {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Alpha interval `lo < alpha <= hi` (or `lo <= alpha` when `lo_inclusive`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlphaWindow<Q: Scalar> {
    #[serde(with = "crate::scalar::exact")]
    pub lo: Q,
    pub lo_inclusive: bool,
    #[serde(with = "crate::scalar::exact")]
    pub hi: Q,
}

impl<Q: Scalar> AlphaWindow<Q> {
    pub fn contains(&self, alpha: &Q) -> bool {
        let above = if self.lo_inclusive { alpha >= &self.lo } else { alpha > &self.lo };
        above && alpha <= &self.hi
    }
}

/// `e_orb(alpha) = (constant - slope * alpha)^2 / scale` on `window`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EorbFormula<Q: Scalar> {
    #[serde(with = "crate::scalar::exact")]
    pub constant: Q,
    #[serde(with = "crate::scalar::exact")]
    pub slope: Q,
    #[serde(with = "crate::scalar::exact")]
    pub scale: Q,
    pub window: AlphaWindow<Q>,
}

impl<Q: Scalar> EorbFormula<Q> {
    pub fn eval(&self, alpha: &Q) -> Q {
        let base = self.constant.clone() - self.slope.clone() * alpha.clone();
        base.clone() * base / self.scale.clone()
    }
}

/// All catalogued invariants of one class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SingularityData<Q: Scalar> {
    pub class: SingularityClass,
    pub milnor: u64,
    pub tjurina: u64,
    pub multiplicity: u64,
    #[serde(with = "crate::scalar::exact")]
    pub mk_number: Q,
    #[serde(with = "crate::scalar::exact")]
    pub epsilon: Q,
    #[serde(with = "crate::scalar::exact::option")]
    pub lct: Option<Q>,
    pub lct_derived: bool,
    pub eorb_formula: Option<EorbFormula<Q>>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Rational;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    #[test]
    fn class_construction_enforces_index_ranges() {
        assert!(SingularityClass::a(0).is_err());
        assert!(SingularityClass::d(3).is_err());
        assert!(SingularityClass::e(5).is_err());
        assert!(SingularityClass::e(9).is_err());
        assert_eq!(SingularityClass::a(1).unwrap(), SingularityClass::A1);
        assert_eq!(SingularityClass::d(4).unwrap(), SingularityClass::D4);
    }

    #[test]
    fn class_names_round_trip() {
        for name in ["A1", "A17", "D4", "D12", "E6", "E7", "E8"] {
            let c: SingularityClass = name.parse().unwrap();
            assert_eq!(c.to_string(), name);
        }
        for bad in ["", "A", "A0", "A01", "D3", "E9", "F4", "a1", "A-1", "A 1", "E6x"] {
            assert!(bad.parse::<SingularityClass>().is_err(), "{bad:?}");
        }
    }

    #[test]
    fn mk_numbers() {
        assert_eq!(SingularityClass::A2.mk_number::<Rational>(), q(8, 1));
        assert_eq!(SingularityClass::A1.mk_number::<Rational>(), q(9, 2));
        assert_eq!(SingularityClass::A3.mk_number::<Rational>(), q(45, 4));
        assert_eq!(SingularityClass::D4.mk_number::<Rational>(), q(117, 8));
        assert_eq!(SingularityClass::E6.mk_number::<Rational>(), q(167, 8));
        assert_eq!(SingularityClass::E7.mk_number::<Rational>(), q(383, 16));
        assert_eq!(SingularityClass::E8.mk_number::<Rational>(), q(1079, 40));
    }

    #[test]
    fn epsilons() {
        assert_eq!(SingularityClass::A1.epsilon::<Rational>(), q(1, 2));
        assert_eq!(SingularityClass::D4.epsilon::<Rational>(), q(7, 8));
        assert_eq!(SingularityClass::E8.epsilon::<Rational>(), q(119, 120));
        assert_eq!(SingularityClass::d(6).unwrap().epsilon::<Rational>(), q(15, 16));
    }

    #[test]
    fn milnor_tjurina_multiplicity() {
        assert_eq!(SingularityClass::A3.milnor(), 3);
        assert_eq!(SingularityClass::D4.milnor(), 4);
        assert_eq!(SingularityClass::E7.tjurina(), 7);
        for k in 1..30 {
            assert_eq!(SingularityClass::a(k).unwrap().multiplicity(), 2);
        }
        assert_eq!(SingularityClass::D4.multiplicity(), 3);
        assert_eq!(SingularityClass::E6.multiplicity(), 3);
    }

    #[test]
    fn lct_values_and_gaps() {
        assert_eq!(SingularityClass::E6.lct::<Rational>().unwrap(), q(7, 12));
        assert_eq!(SingularityClass::A3.lct::<Rational>().unwrap(), q(3, 4));
        assert_eq!(SingularityClass::E7.lct::<Rational>().unwrap(), q(5, 9));
        assert_eq!(SingularityClass::E8.lct::<Rational>().unwrap(), q(8, 15));
        assert!(SingularityClass::A4.lct::<Rational>().is_err());
        assert!(SingularityClass::d(5).unwrap().lct::<Rational>().is_err());
        assert!(SingularityClass::E7.lct_is_derived());
        assert!(!SingularityClass::E6.lct_is_derived());
    }

    #[test]
    fn orbifold_euler_values() {
        let e = |c: SingularityClass, a: Rational| c.orbifold_euler(&a);
        assert_eq!(e(SingularityClass::A2, q(3, 8)).unwrap(), q(121, 384));
        assert_eq!(e(SingularityClass::D4, q(2, 3)).unwrap(), Rational::zero());
        assert_eq!(e(SingularityClass::A1, q(11, 20)).unwrap(), q(81, 400));
        assert_eq!(e(SingularityClass::A1, q(3, 8)).unwrap(), q(25, 64));
        assert_eq!(e(SingularityClass::A3, q(3, 8)).unwrap(), q(9, 32));
        assert_eq!(e(SingularityClass::D4, q(3, 8)).unwrap(), q(49, 256));
        assert_eq!(e(SingularityClass::E6, q(7, 12)).unwrap(), Rational::zero());
    }

    #[test]
    fn orbifold_euler_inapplicable_outside_data() {
        let e = |c: SingularityClass, a: Rational| c.orbifold_euler(&a);
        assert!(matches!(e(SingularityClass::A2, q(1, 10)), Err(Error::Inapplicable { .. })));
        assert!(matches!(e(SingularityClass::A3, q(4, 5)), Err(Error::Inapplicable { .. })));
        assert!(e(SingularityClass::A1, Rational::zero()).is_err());
        assert!(e(SingularityClass::A1, Rational::one()).is_ok());
        assert!(e(SingularityClass::E6, q(1, 2)).is_err());
        assert!(e(SingularityClass::A4, q(1, 2)).is_err());
    }

    #[test]
    fn window_endpoints() {
        let w = SingularityClass::A2.eorb_window::<Rational>().unwrap();
        assert!(w.contains(&q(1, 6)));
        assert!(w.contains(&q(5, 6)));
        assert!(!w.contains(&q(6, 7)));
        let w = SingularityClass::A1.eorb_window::<Rational>().unwrap();
        assert!(!w.contains(&Rational::zero()));
        let w = SingularityClass::E8.eorb_window::<Rational>().unwrap();
        assert!(w.contains(&q(8, 15)));
        assert!(!w.contains(&q(1, 2)));
    }
}
