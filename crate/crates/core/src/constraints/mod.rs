//! Named, citation-backed constraints on singularity profiles.
//!
//! Every check returns a [`ConstraintVerdict`]. Comparisons are always stated
//! as `lhs <= rhs`; a verdict is `Violated` exactly when `lhs > rhs` (or, for
//! literature facts, when a registered fact matches). `Inapplicable` means a
//! precondition failed: it excludes nothing and supports nothing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::catalog::SingularityClass;
use crate::profile::SingularityProfile;
use crate::scalar::Scalar;

pub mod bmy;
pub mod facts;

pub use bmy::{
    alpha_grid, bmy_rhs, bmy_window, check_langer_bmy, find_excluding_alpha, point_weight,
    relaxation_excluding_alpha, scaled_bmy, single_class_relaxation, sweep_langer_bmy, ScaledBmy,
    SingleClassRelaxation,
};
pub use facts::{CountCondition, FactPattern, FactRegistry, LiteratureFact};

pub const DEFAULT_ALPHA_DENOM_LIMIT: u32 = 100;

/// Constraint identifiers, declared in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintName {
    LiteratureFacts,
    TjurinaMax,
    #[serde(rename = "dpw_a1a2")]
    DpwA1A2,
    IrreducibleDual,
    #[serde(rename = "a1a2_gap")]
    A1A2Gap,
    LangerBmy,
}

impl ConstraintName {
    pub const ALL: [ConstraintName; 6] = [
        ConstraintName::LiteratureFacts,
        ConstraintName::TjurinaMax,
        ConstraintName::DpwA1A2,
        ConstraintName::IrreducibleDual,
        ConstraintName::A1A2Gap,
        ConstraintName::LangerBmy,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ConstraintName::LiteratureFacts => "literature_facts",
            ConstraintName::TjurinaMax => "tjurina_max",
            ConstraintName::DpwA1A2 => "dpw_a1a2",
            ConstraintName::IrreducibleDual => "irreducible_dual",
            ConstraintName::A1A2Gap => "a1a2_gap",
            ConstraintName::LangerBmy => "langer_bmy",
        }
    }
}

impl fmt::Display for ConstraintName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for ConstraintName {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Self::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| crate::Error::Parse(format!("unknown constraint {s:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Status {
    Satisfied,
    Violated,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct ConstraintVerdict<Q: Scalar> {
    pub constraint: ConstraintName,
    pub status: Status,
    #[serde(with = "crate::scalar::exact::option")]
    pub lhs: Option<Q>,
    #[serde(with = "crate::scalar::exact::option")]
    pub rhs: Option<Q>,
    #[serde(with = "crate::scalar::exact::map")]
    pub parameters: BTreeMap<String, Q>,
    pub citation: String,
    pub note: Option<String>,
}

impl<Q: Scalar> ConstraintVerdict<Q> {
    /// `Violated` iff `lhs > rhs`.
    pub fn compare(constraint: ConstraintName, lhs: Q, rhs: Q, citation: &str) -> Self {
        let status = if lhs > rhs { Status::Violated } else { Status::Satisfied };
        Self {
            constraint,
            status,
            lhs: Some(lhs),
            rhs: Some(rhs),
            parameters: BTreeMap::new(),
            citation: citation.to_string(),
            note: None,
        }
    }

    pub fn inapplicable(constraint: ConstraintName, reason: impl Into<String>, citation: &str) -> Self {
        Self {
            constraint,
            status: Status::Inapplicable,
            lhs: None,
            rhs: None,
            parameters: BTreeMap::new(),
            citation: citation.to_string(),
            note: Some(reason.into()),
        }
    }

    pub fn with_parameter(mut self, name: &str, value: Q) -> Self {
        self.parameters.insert(name.to_string(), value);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn is_violated(&self) -> bool {
        self.status == Status::Violated
    }

    pub fn alpha(&self) -> Option<&Q> {
        self.parameters.get("alpha")
    }
}

pub(crate) const CITE_TJURINA_MAX: &str =
    "du Plessis-Wall: an even-degree n = 2m curve with only ADE singularities has tau(C) <= 3m(m-1)+1";
pub(crate) const CITE_DPW_A1A2: &str =
    "du Plessis-Wall: with only A1 and A2 singularities, tau(C) <= (23m^2 - 15m)/9";
pub(crate) const CITE_DUAL: &str =
    "Class formula: an irreducible curve of degree n >= 8 has dual degree n(n-1) - sum(mu + mult - 1) >= 4";
pub(crate) const CITE_GAP: &str =
    "Irreducible MK-curves of degree n >= 8 with only A1, A2 points satisfy n2 - n1 >= 20 - n";

/// `tau(C) <= 3m(m-1) + 1`.
pub fn check_tjurina_max<Q: Scalar>(p: &SingularityProfile) -> ConstraintVerdict<Q> {
    let name = ConstraintName::TjurinaMax;
    let Some(m) = p.half_degree() else {
        return ConstraintVerdict::inapplicable(name, "odd degree", CITE_TJURINA_MAX);
    };
    ConstraintVerdict::compare(
        name,
        Q::from_u64(p.total_tjurina()),
        Q::integer(3 * m * (m - 1) + 1),
        CITE_TJURINA_MAX,
    )
}

/// `tau(C) <= (23m^2 - 15m)/9` for curves with only `A1`/`A2` points.
pub fn check_dpw_a1a2<Q: Scalar>(p: &SingularityProfile) -> ConstraintVerdict<Q> {
    let name = ConstraintName::DpwA1A2;
    let Some(m) = p.half_degree() else {
        return ConstraintVerdict::inapplicable(name, "odd degree", CITE_DPW_A1A2);
    };
    if !p.uses_only(|c| c.is_a1_or_a2()) {
        return ConstraintVerdict::inapplicable(name, "profile has classes other than A1, A2", CITE_DPW_A1A2);
    }
    ConstraintVerdict::compare(
        name,
        Q::from_u64(p.total_tjurina()),
        Q::ratio(23 * m * m - 15 * m, 9),
        CITE_DPW_A1A2,
    )
}

/// Dual degree at least 4, stated as `sum(mu + mult - 1) <= n(n-1) - 4`.
///
/// Only applied to irreducible profiles of degree at least 8: the nine-cusp
/// sextic has dual degree 3 and exists.
pub fn check_irreducible_dual<Q: Scalar>(p: &SingularityProfile) -> ConstraintVerdict<Q> {
    let name = ConstraintName::IrreducibleDual;
    if !p.is_irreducible() {
        return ConstraintVerdict::inapplicable(name, "profile is not flagged irreducible", CITE_DUAL);
    }
    if p.degree() < 8 {
        return ConstraintVerdict::inapplicable(name, "degree below 8", CITE_DUAL);
    }
    let n = i64::from(p.degree());
    let mut v = ConstraintVerdict::compare(
        name,
        Q::from_u64(p.class_sum_dual_defect()),
        Q::integer(n * (n - 1) - 4),
        CITE_DUAL,
    );
    if let Ok(d) = p.dual_degree() {
        v = v.with_parameter("dual_degree", Q::integer(d));
    }
    v
}

/// `n2 - n1 >= 20 - n`, stated as `20 - n <= n2 - n1`.
pub fn check_mk_a1a2_gap<Q: Scalar>(p: &SingularityProfile) -> ConstraintVerdict<Q> {
    let name = ConstraintName::A1A2Gap;
    if !p.is_irreducible() {
        return ConstraintVerdict::inapplicable(name, "profile is not flagged irreducible", CITE_GAP);
    }
    if !p.degree().is_multiple_of(2) || p.degree() < 8 {
        return ConstraintVerdict::inapplicable(name, "degree is not even and >= 8", CITE_GAP);
    }
    if !p.uses_only(|c| c.is_a1_or_a2()) {
        return ConstraintVerdict::inapplicable(name, "profile has classes other than A1, A2", CITE_GAP);
    }
    if p.evaluate::<Q>().is_mk != Some(true) {
        return ConstraintVerdict::inapplicable(name, "profile is not MK", CITE_GAP);
    }
    let n1 = p.count_of(SingularityClass::A1) as i64;
    let n2 = p.count_of(SingularityClass::A2) as i64;
    ConstraintVerdict::compare(
        name,
        Q::integer(20 - i64::from(p.degree())),
        Q::integer(n2 - n1),
        CITE_GAP,
    )
}

/// The full constraint pipeline in its fixed order: literature facts,
/// Tjurina maximum, A1/A2 Tjurina bound, irreducible dual, A1/A2 gap, BMY
/// alpha sweep.
#[derive(Debug, Clone)]
pub struct Pipeline {
    pub facts: FactRegistry,
    pub alpha_denom_limit: u32,
    pub enabled: BTreeSet<ConstraintName>,
    pub parallel: bool,
}

impl Default for Pipeline {
    fn default() -> Self {
        Self {
            facts: FactRegistry::bundled(),
            alpha_denom_limit: DEFAULT_ALPHA_DENOM_LIMIT,
            enabled: ConstraintName::ALL.into_iter().collect(),
            parallel: false,
        }
    }
}

impl Pipeline {
    pub fn run<Q: Scalar>(&self, p: &SingularityProfile) -> Vec<ConstraintVerdict<Q>> {
        ConstraintName::ALL
            .into_iter()
            .filter(|c| self.enabled.contains(c))
            .map(|c| match c {
                ConstraintName::LiteratureFacts => self.facts.check(p),
                ConstraintName::TjurinaMax => check_tjurina_max(p),
                ConstraintName::DpwA1A2 => check_dpw_a1a2(p),
                ConstraintName::IrreducibleDual => check_irreducible_dual(p),
                ConstraintName::A1A2Gap => check_mk_a1a2_gap(p),
                ConstraintName::LangerBmy => sweep_langer_bmy(p, self.alpha_denom_limit, self.parallel),
            })
            .collect()
    }
}
