//! Registry of external facts that rule out specific profiles.
//!
//! Facts are data, not computations: each one names the degree it applies to,
//! a pattern on the class counts, and the result it comes from. The bundled
//! set lives in `data/facts.json`; more can be appended from a file with the
//! same schema.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{ConstraintName, ConstraintVerdict, Status};
use crate::catalog::SingularityClass;
use crate::error::{Error, Result};
use crate::profile::SingularityProfile;
use crate::scalar::Scalar;

const BUNDLED: &str = include_str!("../../data/facts.json");

const CITE_FACTS: &str = "registered literature facts";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum CmpOp {
    #[serde(rename = "==")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CountCondition {
    pub class: SingularityClass,
    pub op: CmpOp,
    pub count: u64,
}

impl CountCondition {
    fn holds(&self, p: &SingularityProfile) -> bool {
        let k = p.count_of(self.class);
        match self.op {
            CmpOp::Eq => k == self.count,
            CmpOp::Ge => k >= self.count,
            CmpOp::Le => k <= self.count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum FactPattern {
    /// All conditions hold; with `exclusive`, no other class may occur.
    Counts {
        conditions: Vec<CountCondition>,
        #[serde(default)]
        exclusive: bool,
    },
    /// A complete classification of MK profiles at this degree: an MK profile
    /// outside `allowed` is impossible.
    MkClassification { allowed: Vec<BTreeMap<SingularityClass, u64>> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiteratureFact {
    pub degree: u32,
    pub pattern: FactPattern,
    pub citation: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl LiteratureFact {
    /// True when the fact rules the profile out.
    pub fn matches<Q: Scalar>(&self, p: &SingularityProfile) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        match &self.pattern {
            FactPattern::Counts { conditions, exclusive } => {
                conditions.iter().all(|c| c.holds(p))
                    && (!exclusive || p.classes().all(|k| conditions.iter().any(|c| c.class == k)))
            }
            FactPattern::MkClassification { allowed } => {
                p.evaluate::<Q>().is_mk == Some(true)
                    && !allowed.iter().any(|a| {
                        let a: BTreeMap<_, _> = a.iter().filter(|(_, k)| **k > 0).collect();
                        a.len() == p.counts().len()
                            && a.iter().all(|(c, k)| p.count_of(**c) == **k)
                    })
            }
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FactRegistry {
    facts: Vec<LiteratureFact>,
}

impl FactRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn bundled() -> Self {
        Self::from_json(BUNDLED).expect("bundled facts file is valid")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let facts = serde_json::from_str(s).map_err(|e| Error::Facts(e.to_string()))?;
        Ok(Self { facts })
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let s = std::fs::read_to_string(path)
            .map_err(|e| Error::Facts(format!("{}: {e}", path.display())))?;
        Self::from_json(&s)
    }

    pub fn extend(&mut self, other: FactRegistry) {
        self.facts.extend(other.facts);
    }

    pub fn push(&mut self, fact: LiteratureFact) {
        self.facts.push(fact);
    }

    pub fn facts(&self) -> &[LiteratureFact] {
        &self.facts
    }

    /// `Violated` iff some registered fact matches; the first match is cited.
    pub fn check<Q: Scalar>(&self, p: &SingularityProfile) -> ConstraintVerdict<Q> {
        let name = ConstraintName::LiteratureFacts;
        let Some((i, fact)) = self.facts.iter().enumerate().find(|(_, f)| f.matches::<Q>(p)) else {
            return ConstraintVerdict {
                constraint: name,
                status: Status::Satisfied,
                lhs: None,
                rhs: None,
                parameters: BTreeMap::new(),
                citation: CITE_FACTS.to_string(),
                note: None,
            };
        };
        let mut v = ConstraintVerdict {
            constraint: name,
            status: Status::Violated,
            lhs: None,
            rhs: None,
            parameters: BTreeMap::new(),
            citation: fact.citation.clone(),
            note: fact.note.clone(),
        }
        .with_parameter("fact_index", Q::integer(i as i64));
        if let FactPattern::Counts { conditions, .. } = &fact.pattern {
            for c in conditions {
                v = v.with_parameter(&c.class.to_string(), Q::from_u64(p.count_of(c.class)));
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SingularityClass as C;
    use crate::Rational;

    fn p(degree: u32, counts: &[(C, u64)]) -> SingularityProfile {
        SingularityProfile::of(degree, counts).unwrap()
    }

    fn status(p: &SingularityProfile) -> Status {
        FactRegistry::bundled().check::<Rational>(p).status
    }

    #[test]
    fn octic_cusp_bound() {
        assert_eq!(status(&p(8, &[(C::A2, 17)])), Status::Violated);
        assert_eq!(status(&p(8, &[(C::A2, 16)])), Status::Violated);
        assert_eq!(status(&p(8, &[(C::A2, 15)])), Status::Satisfied);
        assert_eq!(status(&p(10, &[(C::A2, 17)])), Status::Satisfied);
        let v = FactRegistry::bundled().check::<Rational>(&p(8, &[(C::A2, 17)]));
        assert!(v.citation.contains("Zariski"));
        assert_eq!(v.parameters["A2"], Rational::integer(17));
    }

    #[test]
    fn degree_ten_fact_is_exclusive() {
        let v = FactRegistry::bundled().check::<Rational>(&p(10, &[(C::A1, 8), (C::A2, 23)]));
        assert_eq!(v.status, Status::Violated);
        assert!(v.note.as_deref().unwrap().contains("23"));
        assert_eq!(status(&p(10, &[(C::A1, 8), (C::A2, 23), (C::A3, 1)])), Status::Satisfied);
        assert_eq!(status(&p(10, &[(C::A1, 8), (C::A2, 27)])), Status::Satisfied);
    }

    #[test]
    fn sextic_classification() {
        assert_eq!(status(&p(6, &[(C::A2, 9)])), Status::Satisfied);
        assert_eq!(status(&p(6, &[(C::A1, 6), (C::A3, 4)])), Status::Satisfied);
        assert_eq!(status(&p(6, &[(C::A1, 3), (C::D4, 4)])), Status::Satisfied);
        // MK but unlisted.
        assert_eq!(status(&p(6, &[(C::A1, 16)])), Status::Violated);
        assert_eq!(status(&p(6, &[(C::A1, 11), (C::A3, 2)])), Status::Violated);
        // Not MK: the classification says nothing.
        assert_eq!(status(&p(6, &[(C::A1, 5)])), Status::Satisfied);
    }

    #[test]
    fn user_facts_parse_and_extend() {
        let extra = r#"[{"degree": 12, "pattern": {"kind": "counts",
            "conditions": [{"class": "E6", "op": "<=", "count": 3}]}, "citation": "test"}]"#;
        let mut reg = FactRegistry::bundled();
        let n = reg.facts().len();
        reg.extend(FactRegistry::from_json(extra).unwrap());
        assert_eq!(reg.facts().len(), n + 1);
        assert_eq!(reg.check::<Rational>(&p(12, &[(C::E6, 2)])).status, Status::Violated);
        assert!(FactRegistry::from_json(r#"[{"degree": 8}]"#).is_err());
        assert!(FactRegistry::from_json(r#"[{"degree": 8, "pattern": {"kind": "counts",
            "conditions": [{"class": "A2", "op": ">", "count": 1}]}, "citation": "x"}]"#)
        .is_err());
    }

    #[test]
    fn bundled_facts_serialize_back() {
        let reg = FactRegistry::bundled();
        let s = serde_json::to_string(reg.facts()).unwrap();
        assert_eq!(FactRegistry::from_json(&s).unwrap(), reg);
    }
}
