//! Named curves and profiles with their expected invariants.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::catalog::SingularityClass as C;
use crate::error::{Error, Result};
use crate::profile::SingularityProfile;
use crate::scalar::Scalar;

/// An expected invariant value: exact rational or flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum Expected {
    Flag(bool),
    Exact(String),
}

impl Expected {
    fn exact(n: i64, d: i64) -> Self {
        Expected::Exact(crate::Rational::ratio(n, d).to_string())
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Flag(b) => write!(f, "{b}"),
            Expected::Exact(s) => f.write_str(s),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GalleryEntry {
    pub name: &'static str,
    pub profile: SingularityProfile,
    pub expected: BTreeMap<&'static str, Expected>,
    pub citation: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<&'static str>,
}

/// Invariant names an entry may list in `expected`.
pub const INVARIANTS: [&str; 7] = [
    "total_mk",
    "mk_defect",
    "is_mk",
    "total_tjurina",
    "freeness_defect",
    "freeness_defect_mk_form",
    "dual_degree",
];

impl GalleryEntry {
    /// Value of `invariant` as computed from the profile, `None` when it is
    /// not defined for this profile.
    pub fn compute<Q: Scalar>(&self, invariant: &str) -> Result<Option<Expected>> {
        let e = self.profile.evaluate::<Q>();
        let exact = |q: Q| Expected::Exact(q.to_string());
        Ok(match invariant {
            "total_mk" => Some(exact(e.total_mk)),
            "mk_defect" => e.mk_defect.map(exact),
            "is_mk" => e.is_mk.map(Expected::Flag),
            "total_tjurina" => Some(exact(Q::from_u64(e.total_tjurina))),
            "freeness_defect" => e.freeness_defect.map(|v| exact(Q::integer(v))),
            "freeness_defect_mk_form" => e.freeness_defect_mk_form.map(exact),
            "dual_degree" => e.dual_degree.map(|v| exact(Q::integer(v))),
            other => return Err(Error::UnknownEntry(format!("invariant {other:?}"))),
        })
    }

    /// `(invariant, expected, computed)` for every expected value that is not
    /// reproduced.
    pub fn mismatches<Q: Scalar>(&self) -> Result<Vec<(&'static str, Expected, Option<Expected>)>> {
        let mut out = Vec::new();
        for (name, want) in &self.expected {
            let got = self.compute::<Q>(name)?;
            if got.as_ref() != Some(want) {
                out.push((*name, want.clone(), got));
            }
        }
        Ok(out)
    }
}

fn entry(
    name: &'static str,
    degree: u32,
    counts: &[(C, u64)],
    irreducible: bool,
    expected: Vec<(&'static str, Expected)>,
    citation: &'static str,
    note: Option<&'static str>,
) -> GalleryEntry {
    let profile = SingularityProfile::of(degree, counts)
        .expect("gallery profiles are valid")
        .irreducible(irreducible);
    GalleryEntry { name, profile, expected: expected.into_iter().collect(), citation, note }
}

pub fn list_entries() -> Vec<GalleryEntry> {
    use Expected::Flag;
    let x = Expected::exact;
    vec![
        entry(
            "mk_sextic_A",
            6,
            &[(C::A1, 6), (C::A3, 4)],
            false,
            vec![
                ("total_mk", x(72, 1)),
                ("mk_defect", x(0, 1)),
                ("is_mk", Flag(true)),
                ("total_tjurina", x(18, 1)),
                ("freeness_defect", x(1, 1)),
            ],
            "Ivinskis type A: a smooth conic with four tangent lines, 6 A1 + 4 A3; nearly free",
            None,
        ),
        entry(
            "mk_sextic_B",
            6,
            &[(C::A2, 9)],
            true,
            vec![
                ("total_mk", x(72, 1)),
                ("mk_defect", x(0, 1)),
                ("is_mk", Flag(true)),
                ("total_tjurina", x(18, 1)),
                ("freeness_defect", x(1, 1)),
                ("dual_degree", x(3, 1)),
            ],
            "Ivinskis type B: an irreducible sextic with exactly 9 simple cusps, dual to a smooth cubic; nearly free",
            Some("one-parameter family"),
        ),
        entry(
            "mk_sextic_C",
            6,
            &[(C::A1, 3), (C::D4, 4)],
            false,
            vec![
                ("total_mk", x(72, 1)),
                ("mk_defect", x(0, 1)),
                ("is_mk", Flag(true)),
                ("total_tjurina", x(19, 1)),
                ("freeness_defect", x(0, 1)),
            ],
            "Ivinskis type C: six lines with 4 triple and 3 double points; free",
            None,
        ),
        entry(
            "steiner_octic",
            8,
            &[(C::E7, 3), (C::D4, 1), (C::A3, 2), (C::A1, 6)],
            false,
            vec![
                ("total_mk", x(2175, 16)),
                ("mk_defect", x(1, 16)),
                ("is_mk", Flag(false)),
                ("total_tjurina", x(37, 1)),
            ],
            "Steiner quartic with a bitangent line and the three cuspidal tangents, which meet at a triple point: m = 135.9375 < 136",
            None,
        ),
        entry(
            "bonnafe_C18",
            18,
            &[(C::E6, 36)],
            false,
            vec![
                ("total_mk", x(1503, 2)),
                ("mk_defect", x(9, 2)),
                ("is_mk", Flag(false)),
                ("total_tjurina", x(216, 1)),
                ("freeness_defect", x(1, 1)),
            ],
            "Bonnafe: a degree-18 curve with 36 E6 points, which is optimal for the BMY bound on E6 points; nearly free",
            None,
        ),
        entry(
            "bonnafe_C18p",
            18,
            &[(C::A2, 72), (C::D4, 12)],
            false,
            vec![
                ("total_mk", x(1503, 2)),
                ("mk_defect", x(9, 2)),
                ("is_mk", Flag(false)),
                ("total_tjurina", x(192, 1)),
                ("freeness_defect", x(25, 1)),
            ],
            "Bonnafe: a degree-18 curve with 72 A2 and 12 D4 points; no special freeness properties",
            None,
        ),
        entry(
            "fermat_type_lines",
            6,
            &[(C::A1, 3), (C::D4, 4)],
            false,
            vec![
                ("total_mk", x(72, 1)),
                ("mk_defect", x(0, 1)),
                ("is_mk", Flag(true)),
                ("freeness_defect", x(0, 1)),
            ],
            "Six lines (x^2 - y^2)(y^2 - z^2)(z^2 - x^2) = 0: 4 triple and 3 double points, the only MK line arrangement",
            Some("(x^2 - y^2)(y^2 - z^2)(z^2 - x^2)"),
        ),
    ]
}

pub fn get_entry(name: &str) -> Result<GalleryEntry> {
    list_entries()
        .into_iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownEntry(name.to_string()))
}
