//! Singularity profiles of plane curves and their aggregate invariants.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::SingularityClass;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A degree plus a multiset of ADE singularity types.
///
/// Counts are strictly positive; zero entries are dropped on construction.
/// The total Milnor number must not exceed `(degree - 1)^2`, which holds for
/// every reduced plane curve. `irreducible` is a hypothesis asserted by the
/// caller and is never inferred.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProfileRecord", into = "ProfileRecord")]
pub struct SingularityProfile {
    degree: u32,
    counts: BTreeMap<SingularityClass, u64>,
    irreducible: bool,
}

/// Wire form: `{"degree": 6, "irreducible": true, "singularities": {"A2": 9}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProfileRecord {
    pub degree: u32,
    #[serde(default)]
    pub irreducible: bool,
    #[serde(default)]
    pub singularities: BTreeMap<SingularityClass, u64>,
}

impl TryFrom<ProfileRecord> for SingularityProfile {
    type Error = Error;

    fn try_from(r: ProfileRecord) -> Result<Self> {
        SingularityProfile::new(r.degree, r.singularities, r.irreducible)
    }
}

impl From<SingularityProfile> for ProfileRecord {
    fn from(p: SingularityProfile) -> Self {
        ProfileRecord { degree: p.degree, irreducible: p.irreducible, singularities: p.counts }
    }
}

impl SingularityProfile {
    pub fn new(
        degree: u32,
        counts: impl IntoIterator<Item = (SingularityClass, u64)>,
        irreducible: bool,
    ) -> Result<Self> {
        if degree < 1 {
            return Err(Error::InvalidProfile("degree must be at least 1".into()));
        }
        let mut merged: BTreeMap<SingularityClass, u64> = BTreeMap::new();
        for (c, k) in counts {
            let slot = merged.entry(c).or_default();
            *slot = slot
                .checked_add(k)
                .ok_or_else(|| Error::InvalidProfile("count overflow".into()))?;
        }
        merged.retain(|_, k| *k > 0);
        let p = Self { degree, counts: merged, irreducible };
        let bound = (u64::from(degree) - 1).pow(2);
        let milnor = p.checked_total_milnor()?;
        if milnor > bound {
            return Err(Error::InvalidProfile(format!(
                "total Milnor number {milnor} exceeds (n-1)^2 = {bound} for degree {degree}"
            )));
        }
        Ok(p)
    }

    /// Convenience for tests and fixtures.
    pub fn of(degree: u32, counts: &[(SingularityClass, u64)]) -> Result<Self> {
        Self::new(degree, counts.iter().copied(), false)
    }

    pub fn irreducible(mut self, flag: bool) -> Self {
        self.irreducible = flag;
        self
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn counts(&self) -> &BTreeMap<SingularityClass, u64> {
        &self.counts
    }

    pub fn count_of(&self, c: SingularityClass) -> u64 {
        self.counts.get(&c).copied().unwrap_or(0)
    }

    pub fn classes(&self) -> impl Iterator<Item = SingularityClass> + '_ {
        self.counts.keys().copied()
    }

    pub fn uses_only(&self, allowed: impl Fn(SingularityClass) -> bool) -> bool {
        self.classes().all(allowed)
    }

    /// Half the degree when it is even.
    pub fn half_degree(&self) -> Option<i64> {
        self.degree.is_multiple_of(2).then(|| i64::from(self.degree / 2))
    }

    /// Even degree at least 6, where the MK condition is defined.
    pub fn in_mk_domain(&self) -> bool {
        self.degree.is_multiple_of(2) && self.degree >= 6
    }

    fn checked_total_milnor(&self) -> Result<u64> {
        self.counts
            .iter()
            .try_fold(0u64, |acc, (c, k)| acc.checked_add(c.milnor().checked_mul(*k)?))
            .ok_or_else(|| Error::InvalidProfile("Milnor number overflow".into()))
    }

    pub fn total_milnor(&self) -> u64 {
        self.counts.iter().map(|(c, k)| c.milnor() * k).sum()
    }

    pub fn total_tjurina(&self) -> u64 {
        self.counts.iter().map(|(c, k)| c.tjurina() * k).sum()
    }

    /// `s(C)`, the number of singular points.
    pub fn singularity_count(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn total_mk<Q: Scalar>(&self) -> Q {
        self.weighted_sum(|c| c.mk_number())
    }

    pub fn total_epsilon<Q: Scalar>(&self) -> Q {
        self.weighted_sum(|c| c.epsilon())
    }

    fn weighted_sum<Q: Scalar>(&self, f: impl Fn(&SingularityClass) -> Q) -> Q {
        self.counts
            .iter()
            .fold(Q::zero(), |acc, (c, k)| acc + f(c) * Q::from_u64(*k))
    }

    /// `(n/2)(5n - 6)`, defined for even degree at least 6.
    pub fn mk_target<Q: Scalar>(&self) -> Option<Q> {
        self.in_mk_domain().then(|| mk_target(self.degree))
    }

    /// Freeness defect `3m^2 - 3m + 1 - tau(C)` for even degree `n = 2m`.
    pub fn freeness_defect(&self) -> Result<i64> {
        let m = self.half_degree().ok_or_else(|| Error::NotDefined {
            what: "freeness defect",
            reason: format!("degree {} is odd", self.degree),
        })?;
        Ok(3 * m * m - 3 * m + 1 - self.total_tjurina() as i64)
    }

    /// `epsilon(C) + 1 - m(m+3)/3`; agrees with [`Self::freeness_defect`] on
    /// MK profiles.
    pub fn freeness_defect_mk_form<Q: Scalar>(&self) -> Result<Q> {
        if !self.in_mk_domain() {
            return Err(Error::NotDefined {
                what: "MK form of the freeness defect",
                reason: format!("degree {} is not even and >= 6", self.degree),
            });
        }
        let m = i64::from(self.degree / 2);
        Ok(self.total_epsilon::<Q>() + Q::one() - Q::ratio(m * (m + 3), 3))
    }

    /// `sum (mu + mult - 1)` over singular points.
    pub fn class_sum_dual_defect(&self) -> u64 {
        self.counts
            .iter()
            .map(|(c, k)| (c.milnor() + c.multiplicity() - 1) * k)
            .sum()
    }

    /// Degree of the dual curve, `n(n-1) - sum (mu + mult - 1)`. Only defined
    /// under the irreducibility hypothesis; a non-positive value means no
    /// irreducible curve has this profile.
    pub fn dual_degree(&self) -> Result<i64> {
        if !self.irreducible {
            return Err(Error::NotDefined {
                what: "dual degree",
                reason: "profile is not flagged irreducible".into(),
            });
        }
        let n = i64::from(self.degree);
        Ok(n * (n - 1) - self.class_sum_dual_defect() as i64)
    }

    /// Sum of count maps at the same degree.
    pub fn merge(&self, other: &Self) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::InvalidProfile(format!(
                "cannot merge degree {} with degree {}",
                self.degree, other.degree
            )));
        }
        let counts = self.counts.iter().chain(other.counts.iter()).map(|(c, k)| (*c, *k));
        Self::new(self.degree, counts, self.irreducible && other.irreducible)
    }

    pub fn evaluate<Q: Scalar>(&self) -> ProfileEvaluation<Q> {
        let mut warnings = Vec::new();
        let total_mk: Q = self.total_mk();
        let mk_target: Option<Q> = self.mk_target();
        let mk_defect = mk_target.clone().map(|t| t - total_mk.clone());
        let is_mk = mk_defect.as_ref().map(Q::is_zero);
        if !self.in_mk_domain() {
            warnings.push(format!(
                "is_mk not defined: the MK condition needs even degree >= 6, got {}",
                self.degree
            ));
        }
        let dual_degree = self.dual_degree().ok();
        if let Some(d) = dual_degree {
            if d <= 0 {
                warnings.push(format!(
                    "dual degree {d} <= 0: no irreducible curve has this profile"
                ));
            }
        }
        ProfileEvaluation {
            degree: self.degree,
            total_mk,
            total_tjurina: self.total_tjurina(),
            total_epsilon: self.total_epsilon(),
            count: self.singularity_count(),
            mk_target,
            mk_defect,
            is_mk,
            freeness_defect: self.freeness_defect().ok(),
            freeness_defect_mk_form: self.freeness_defect_mk_form().ok(),
            dual_degree,
            warnings,
        }
    }
}

/// `(n/2)(5n - 6)` as an exact rational for any degree.
pub fn mk_target<Q: Scalar>(degree: u32) -> Q {
    let n = i64::from(degree);
    Q::ratio(n * (5 * n - 6), 2)
}

/// Smallest possible number of singular points of an MK-curve of even degree
/// `n = 2m >= 6`: the least integer strictly above `(m^2 + 3m - 3)/3`, or
/// above `(7m^2 - 3m)/9` when only `A1`/`A2` points occur.
pub fn min_singularity_bound(degree: u32, a1a2_only: bool) -> Result<u64> {
    if !degree.is_multiple_of(2) || degree < 6 {
        return Err(Error::NotDefined {
            what: "minimum singularity bound",
            reason: format!("degree {degree} is not even and >= 6"),
        });
    }
    let m = i64::from(degree / 2);
    let (num, den) = if a1a2_only { (7 * m * m - 3 * m, 9) } else { (m * m + 3 * m - 3, 3) };
    Ok((num.div_euclid(den) + 1) as u64)
}

/// Aggregate invariants of one profile.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct ProfileEvaluation<Q: Scalar> {
    pub degree: u32,
    #[serde(with = "crate::scalar::exact")]
    pub total_mk: Q,
    pub total_tjurina: u64,
    #[serde(with = "crate::scalar::exact")]
    pub total_epsilon: Q,
    pub count: u64,
    #[serde(with = "crate::scalar::exact::option")]
    pub mk_target: Option<Q>,
    #[serde(with = "crate::scalar::exact::option")]
    pub mk_defect: Option<Q>,
    /// `None` outside even degree >= 6.
    pub is_mk: Option<bool>,
    pub freeness_defect: Option<i64>,
    #[serde(with = "crate::scalar::exact::option")]
    pub freeness_defect_mk_form: Option<Q>,
    pub dual_degree: Option<i64>,
    pub warnings: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SingularityClass as C;
    use crate::Rational;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn p(degree: u32, counts: &[(C, u64)]) -> SingularityProfile {
        SingularityProfile::of(degree, counts).unwrap()
    }

    #[test]
    fn nine_cusp_sextic() {
        let e = p(6, &[(C::A2, 9)]).evaluate::<Rational>();
        assert_eq!(e.total_mk, q(72, 1));
        assert_eq!(e.is_mk, Some(true));
        assert_eq!(e.mk_defect, Some(q(0, 1)));
    }

    #[test]
    fn conic_and_four_tangent_lines() {
        let e = p(6, &[(C::A1, 6), (C::A3, 4)]).evaluate::<Rational>();
        assert_eq!(e.total_mk, q(72, 1));
        assert_eq!(e.is_mk, Some(true));
    }

    #[test]
    fn steiner_octic_misses_by_a_sixteenth() {
        let e = p(8, &[(C::E7, 3), (C::D4, 1), (C::A3, 2), (C::A1, 6)]).evaluate::<Rational>();
        assert_eq!(e.total_mk, q(2175, 16));
        assert_eq!(e.is_mk, Some(false));
        assert_eq!(e.mk_defect, Some(q(1, 16)));
    }

    #[test]
    fn e6_curve_of_degree_18() {
        let e = p(18, &[(C::E6, 36)]).evaluate::<Rational>();
        assert_eq!(e.mk_defect, Some(q(9, 2)));
        assert_eq!(e.freeness_defect, Some(1));
    }

    #[test]
    fn odd_degree_has_no_mk_verdict() {
        let e = p(7, &[(C::A1, 3)]).evaluate::<Rational>();
        assert_eq!(e.is_mk, None);
        assert_eq!(e.mk_defect, None);
        assert_eq!(e.freeness_defect, None);
        assert!(e.warnings.iter().any(|w| w.contains("not defined")));
    }

    #[test]
    fn freeness_defects() {
        assert_eq!(p(6, &[(C::A1, 3), (C::D4, 4)]).freeness_defect().unwrap(), 0);
        assert_eq!(p(18, &[(C::E6, 36)]).freeness_defect().unwrap(), 1);
        assert_eq!(p(18, &[(C::A2, 72), (C::D4, 12)]).freeness_defect().unwrap(), 25);
        assert!(p(7, &[]).freeness_defect().is_err());
    }

    #[test]
    fn freeness_defect_mk_form_values() {
        let f = |c: &[(C, u64)]| p(6, c).freeness_defect_mk_form::<Rational>().unwrap();
        assert_eq!(f(&[(C::A1, 3), (C::D4, 4)]), q(0, 1));
        assert_eq!(f(&[(C::A2, 9)]), q(1, 1));
        assert_eq!(f(&[(C::A1, 6), (C::A3, 4)]), q(1, 1));
        assert!(p(5, &[]).freeness_defect_mk_form::<Rational>().is_err());
    }

    #[test]
    fn dual_degrees() {
        assert_eq!(p(6, &[(C::A2, 9)]).irreducible(true).dual_degree().unwrap(), 3);
        assert_eq!(p(6, &[]).irreducible(true).dual_degree().unwrap(), 30);
        let bad = p(8, &[(C::A1, 16), (C::A2, 8)]).irreducible(true);
        assert_eq!(bad.dual_degree().unwrap(), 0);
        assert!(bad.evaluate::<Rational>().warnings.iter().any(|w| w.contains("dual degree")));
        assert!(p(6, &[(C::A2, 9)]).dual_degree().is_err());
    }

    #[test]
    fn min_singularity_bounds() {
        assert_eq!(min_singularity_bound(6, false).unwrap(), 6);
        assert_eq!(min_singularity_bound(6, true).unwrap(), 7);
        // (7*36 - 18)/9 = 26 exactly, so strictly above means 27.
        assert_eq!(min_singularity_bound(12, true).unwrap(), 27);
        // (36 + 18 - 3)/3 = 17 exactly.
        assert_eq!(min_singularity_bound(12, false).unwrap(), 18);
        assert!(min_singularity_bound(7, false).is_err());
        assert!(min_singularity_bound(4, false).is_err());
    }

    #[test]
    fn construction_checks() {
        assert!(SingularityProfile::of(0, &[]).is_err());
        // 5 cusps on a conic-degree curve: mu = 10 > 1.
        assert!(SingularityProfile::of(2, &[(C::A2, 5)]).is_err());
        // Exactly (n-1)^2 is allowed.
        assert!(SingularityProfile::of(4, &[(C::A1, 9)]).is_ok());
        let zero = SingularityProfile::of(8, &[(C::A1, 0), (C::A2, 17)]).unwrap();
        assert_eq!(zero.counts().len(), 1);
    }

    #[test]
    fn json_schema() {
        let p: SingularityProfile =
            serde_json::from_str(r#"{"degree":6,"irreducible":true,"singularities":{"A2":9}}"#)
                .unwrap();
        assert!(p.is_irreducible());
        assert_eq!(p.count_of(C::A2), 9);
        let p: SingularityProfile =
            serde_json::from_str(r#"{"degree":6,"singularities":{"A1":3,"D4":4}}"#).unwrap();
        assert!(!p.is_irreducible());
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(s, r#"{"degree":6,"irreducible":false,"singularities":{"A1":3,"D4":4}}"#);
        assert!(serde_json::from_str::<SingularityProfile>(r#"{"degree":6,"singularities":{"Q1":3}}"#).is_err());
        assert!(serde_json::from_str::<SingularityProfile>(r#"{"degree":3,"singularities":{"A1":30}}"#).is_err());
        assert!(serde_json::from_str::<SingularityProfile>(r#"{"degree":6,"singularities":{"A1":-1}}"#).is_err());
    }

    #[test]
    fn merge_requires_same_degree() {
        let a = p(8, &[(C::A1, 2)]);
        let b = p(8, &[(C::A1, 1), (C::A2, 3)]);
        let m = a.merge(&b).unwrap();
        assert_eq!(m.count_of(C::A1), 3);
        assert!(a.merge(&p(6, &[])).is_err());
    }
}
