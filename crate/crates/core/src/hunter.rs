//! Enumeration of MK profiles over a fixed alphabet of singularity types.
//!
//! For degree `n = 2m` and alphabet `t_1, ..., t_r` the MK condition reads
//! `sum_i m(t_i) c_i = m(10m - 6)`. Multiplying by the least common multiple
//! of the denominators of the `m(t_i)` gives an integer equation, solved by a
//! depth-first search over count vectors in lexicographic order. The total
//! Tjurina bound `tau <= 3m(m-1) + 1` holds for every even-degree ADE curve
//! and is enforced during the search. Each solution then goes through the
//! constraint [`Pipeline`].

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use num_integer::Integer;
use num_traits::{FromPrimitive, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::SingularityClass;
use crate::constraints::{
    relaxation_excluding_alpha, ConstraintName, ConstraintVerdict, FactRegistry, Pipeline,
    SingleClassRelaxation, DEFAULT_ALPHA_DENOM_LIMIT,
};
use crate::error::{Error, Result};
use crate::profile::{mk_target, SingularityProfile};
use crate::scalar::{common_denominator, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HuntRequest {
    pub degree: u32,
    pub alphabet: Vec<SingularityClass>,
    #[serde(default)]
    pub irreducible: bool,
    #[serde(default = "default_denom_limit")]
    pub alpha_denom_limit: u32,
    #[serde(default = "all_constraints")]
    pub enabled_constraints: BTreeSet<ConstraintName>,
}

fn default_denom_limit() -> u32 {
    DEFAULT_ALPHA_DENOM_LIMIT
}

fn all_constraints() -> BTreeSet<ConstraintName> {
    ConstraintName::ALL.into_iter().collect()
}

impl HuntRequest {
    pub fn new(degree: u32, alphabet: &[SingularityClass]) -> Self {
        Self {
            degree,
            alphabet: alphabet.to_vec(),
            irreducible: false,
            alpha_denom_limit: DEFAULT_ALPHA_DENOM_LIMIT,
            enabled_constraints: all_constraints(),
        }
    }

    pub fn irreducible(mut self, flag: bool) -> Self {
        self.irreducible = flag;
        self
    }

    pub fn alpha_denom_limit(mut self, limit: u32) -> Self {
        self.alpha_denom_limit = limit;
        self
    }

    pub fn constraints(mut self, enabled: impl IntoIterator<Item = ConstraintName>) -> Self {
        self.enabled_constraints = enabled.into_iter().collect();
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !self.degree.is_multiple_of(2) || self.degree < 6 {
            return Err(Error::InvalidRequest(format!(
                "degree must be even and >= 6, got {}",
                self.degree
            )));
        }
        if self.alphabet.is_empty() {
            return Err(Error::InvalidRequest("alphabet is empty".into()));
        }
        let mut seen = HashSet::new();
        if let Some(dup) = self.alphabet.iter().find(|c| !seen.insert(**c)) {
            return Err(Error::InvalidRequest(format!("class {dup} appears twice in the alphabet")));
        }
        if self.alpha_denom_limit == 0 {
            return Err(Error::InvalidRequest("alpha denominator limit must be positive".into()));
        }
        Ok(())
    }

    /// `3m(m-1) + 1` for `n = 2m`.
    pub fn tau_budget(&self) -> u64 {
        let m = u64::from(self.degree / 2);
        3 * m * (m - 1) + 1
    }
}

/// `sum coefficients[i] * c_i = target` after clearing denominators by `scale`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct ScaledEquation<Q: Scalar> {
    #[serde(with = "crate::scalar::int")]
    pub scale: Q::Int,
    #[serde(with = "crate::scalar::int::vec")]
    pub coefficients: Vec<Q::Int>,
    #[serde(with = "crate::scalar::int")]
    pub target: Q::Int,
    pub tau_budget: u64,
}

impl<Q: Scalar> ScaledEquation<Q> {
    pub fn new(degree: u32, alphabet: &[SingularityClass]) -> Self {
        let mk: Vec<Q> = alphabet.iter().map(|c| c.mk_number()).collect();
        let target_q: Q = mk_target(degree);
        let scale = common_denominator(mk.iter().chain([&target_q]));
        let s = Q::from_int(scale.clone());
        let clear = |v: &Q| (v.clone() * s.clone()).numer_int().clone();
        let m = u64::from(degree / 2);
        Self {
            coefficients: mk.iter().map(clear).collect(),
            target: clear(&target_q),
            tau_budget: 3 * m * (m.saturating_sub(1)) + 1,
            scale,
        }
    }

    /// Gcd of the coefficients.
    pub fn modulus(&self) -> Q::Int {
        self.coefficients
            .iter()
            .fold(Q::Int::zero(), |g, c| g.gcd(c))
    }
}

/// Why a hunt has no raw solutions, strongest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", bound = "Q: Scalar")]
pub enum Obstruction<Q: Scalar> {
    /// Single-class alphabet: even the rational count forced by the MK
    /// equation breaks the BMY inequality.
    BmyRelaxation(SingleClassRelaxation<Q>),
    /// The gcd of the scaled coefficients does not divide the target.
    Integrality {
        #[serde(with = "crate::scalar::int")]
        modulus: Q::Int,
        #[serde(with = "crate::scalar::int")]
        target: Q::Int,
        #[serde(with = "crate::scalar::int")]
        residue: Q::Int,
    },
    /// Integral solutions exist only outside the Tjurina budget.
    TjurinaBudget { tau_budget: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct SolutionOutcome<Q: Scalar> {
    pub counts: Vec<u64>,
    pub verdicts: Vec<ConstraintVerdict<Q>>,
    /// Index into `verdicts` of the first violated constraint.
    pub eliminator: Option<usize>,
}

impl<Q: Scalar> SolutionOutcome<Q> {
    pub fn eliminated_by(&self) -> Option<&ConstraintVerdict<Q>> {
        self.eliminator.map(|i| &self.verdicts[i])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct HuntReport<Q: Scalar> {
    pub request: HuntRequest,
    pub equation: ScaledEquation<Q>,
    pub raw_solutions: Vec<Vec<u64>>,
    pub outcomes: Vec<SolutionOutcome<Q>>,
    pub survivors: Vec<Vec<u64>>,
    pub obstructions: Vec<Obstruction<Q>>,
}

impl<Q: Scalar> HuntReport<Q> {
    pub fn profile_of(&self, counts: &[u64]) -> Result<SingularityProfile> {
        let pairs = self.request.alphabet.iter().copied().zip(counts.iter().copied());
        SingularityProfile::new(self.request.degree, pairs, self.request.irreducible)
    }
}

/// Runs hunts with a given fact registry, optionally in parallel. Parallel
/// and sequential runs produce identical reports.
#[derive(Debug, Clone)]
pub struct Hunter {
    pub facts: FactRegistry,
    pub parallel: bool,
}

impl Default for Hunter {
    fn default() -> Self {
        Self { facts: FactRegistry::bundled(), parallel: false }
    }
}

/// Hunt with the bundled facts, sequentially.
pub fn hunt<Q: Scalar>(req: &HuntRequest) -> Result<HuntReport<Q>> {
    Hunter::default().hunt(req)
}

impl Hunter {
    pub fn parallel(mut self, flag: bool) -> Self {
        self.parallel = flag;
        self
    }

    pub fn hunt<Q: Scalar>(&self, req: &HuntRequest) -> Result<HuntReport<Q>> {
        req.validate()?;
        let equation = ScaledEquation::<Q>::new(req.degree, &req.alphabet);
        let taus: Vec<u64> = req.alphabet.iter().map(|c| c.tjurina()).collect();
        let raw = solve(&equation, &taus, self.parallel);

        let pipeline = Pipeline {
            facts: self.facts.clone(),
            alpha_denom_limit: req.alpha_denom_limit,
            enabled: req.enabled_constraints.clone(),
            parallel: false,
        };
        let evaluate = |counts: &Vec<u64>| -> Result<SolutionOutcome<Q>> {
            let pairs = req.alphabet.iter().copied().zip(counts.iter().copied());
            let profile = SingularityProfile::new(req.degree, pairs, req.irreducible)?;
            let verdicts = pipeline.run::<Q>(&profile);
            let eliminator = verdicts.iter().position(|v| v.is_violated());
            Ok(SolutionOutcome { counts: counts.clone(), verdicts, eliminator })
        };
        let outcomes = if self.parallel {
            raw.par_iter().map(evaluate).collect::<Result<Vec<_>>>()?
        } else {
            raw.iter().map(evaluate).collect::<Result<Vec<_>>>()?
        };
        let survivors = outcomes
            .iter()
            .filter(|o| o.eliminator.is_none())
            .map(|o| o.counts.clone())
            .collect();
        let obstructions = if raw.is_empty() { obstructions(req, &equation) } else { Vec::new() };
        Ok(HuntReport {
            request: req.clone(),
            equation,
            raw_solutions: raw,
            outcomes,
            survivors,
            obstructions,
        })
    }
}

fn obstructions<Q: Scalar>(req: &HuntRequest, eq: &ScaledEquation<Q>) -> Vec<Obstruction<Q>> {
    let mut out = Vec::new();
    if let [class] = req.alphabet[..] {
        if let Some(r) = relaxation_excluding_alpha::<Q>(class, req.degree, req.alpha_denom_limit) {
            out.push(Obstruction::BmyRelaxation(r));
        }
    }
    let modulus = eq.modulus();
    let residue = eq.target.mod_floor(&modulus);
    if !residue.is_zero() {
        out.push(Obstruction::Integrality { modulus, target: eq.target.clone(), residue });
    }
    if out.is_empty() {
        out.push(Obstruction::TjurinaBudget { tau_budget: eq.tau_budget });
    }
    out
}

/// All non-negative integer vectors `c` with `sum coefficients[i] c_i = target`
/// and `sum taus[i] c_i <= tau_budget`, in lexicographic order.
pub fn solve<Q: Scalar>(eq: &ScaledEquation<Q>, taus: &[u64], parallel: bool) -> Vec<Vec<u64>> {
    let coeffs = &eq.coefficients;
    assert_eq!(coeffs.len(), taus.len());
    if coeffs.is_empty() {
        return Vec::new();
    }
    // suffix_gcd[i] = gcd(coeffs[i..]); a remainder not divisible by it cannot
    // be completed.
    let mut suffix_gcd = vec![Q::Int::zero(); coeffs.len() + 1];
    for i in (0..coeffs.len()).rev() {
        suffix_gcd[i] = suffix_gcd[i + 1].gcd(&coeffs[i]);
    }
    let search = Search { coeffs, taus, suffix_gcd: &suffix_gcd };
    let first_max = search.max_count(0, &eq.target, eq.tau_budget);
    let branch = |k: u64| {
        let mut out = Vec::new();
        let mut prefix = vec![k];
        let rem = eq.target.clone() - coeffs[0].clone() * int::<Q>(k);
        search.descend(1, rem, eq.tau_budget - k * taus[0], &mut prefix, &mut out);
        out
    };
    if parallel {
        (0..=first_max).into_par_iter().flat_map_iter(branch).collect()
    } else {
        (0..=first_max).flat_map(branch).collect()
    }
}

fn int<Q: Scalar>(k: u64) -> Q::Int {
    Q::Int::from_u64(k).expect("count fits the integer type")
}

struct Search<'a, I> {
    coeffs: &'a [I],
    taus: &'a [u64],
    suffix_gcd: &'a [I],
}

impl<I: Integer + Clone + FromPrimitive + ToPrimitive> Search<'_, I> {
    fn max_count(&self, i: usize, rem: &I, budget: u64) -> u64 {
        let by_target = (rem.clone() / self.coeffs[i].clone()).to_u64().unwrap_or(u64::MAX);
        by_target.min(budget / self.taus[i])
    }

    fn descend(&self, i: usize, rem: I, budget: u64, prefix: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if rem < I::zero() {
            return;
        }
        if i == self.coeffs.len() {
            if rem.is_zero() {
                out.push(prefix.clone());
            }
            return;
        }
        if !rem.is_multiple_of(&self.suffix_gcd[i]) {
            return;
        }
        if i + 1 == self.coeffs.len() {
            let (k, r) = rem.div_rem(&self.coeffs[i]);
            if r.is_zero() {
                if let Some(k) = k.to_u64() {
                    if k.checked_mul(self.taus[i]).is_some_and(|t| t <= budget) {
                        prefix.push(k);
                        out.push(prefix.clone());
                        prefix.pop();
                    }
                }
            }
            return;
        }
        let max = self.max_count(i, &rem, budget);
        for k in 0..=max {
            let used = I::from_u64(k).expect("count fits") * self.coeffs[i].clone();
            prefix.push(k);
            self.descend(i + 1, rem.clone() - used, budget - k * self.taus[i], prefix, out);
            prefix.pop();
        }
    }
}

/// Double and triple point counts `(n2, n3)` of an arrangement of `2m` lines
/// satisfying the MK equation, when both are non-negative integers. Uses
/// `n2 + 3 n3 = m(2m - 1)` (pairs of lines) together with the MK equation for
/// `A1` and `D4` points. `None` for `m < 3`.
pub fn solve_line_arrangement<Q: Scalar>(m: u32) -> Option<(u64, u64)> {
    if m < 3 {
        return None;
    }
    let mm = i64::from(m);
    let pairs = Q::integer(mm * (2 * mm - 1));
    let double: Q = SingularityClass::A1.mk_number();
    let triple: Q = SingularityClass::D4.mk_number();
    let target: Q = mk_target(2 * m);
    // Eliminate n2 from  n2 + 3 n3 = pairs  and  double n2 + triple n3 = target.
    let det = triple.clone() - Q::integer(3) * double.clone();
    let n3 = (target - double * pairs.clone()) / det;
    let n2 = pairs - Q::integer(3) * n3.clone();
    let as_count = |v: &Q| {
        (v.is_integral() && !v.is_negative()).then(|| v.numer_int().to_u64()).flatten()
    };
    Some((as_count(&n2)?, as_count(&n3)?))
}

/// Human- and machine-readable digest of a report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntSummary {
    pub degree: u32,
    pub alphabet: Vec<SingularityClass>,
    pub raw_count: usize,
    pub survivor_count: usize,
    pub rows: Vec<SummaryRow>,
    pub obstructions: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub counts: Vec<u64>,
    pub status: String,
    pub eliminator: Option<ConstraintName>,
    pub alpha: Option<String>,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub citation: Option<String>,
    pub note: Option<String>,
}

pub const CANDIDATE: &str = "candidate: not excluded by implemented constraints";

pub fn hunt_summary<Q: Scalar>(report: &HuntReport<Q>) -> HuntSummary {
    let rows = report
        .outcomes
        .iter()
        .map(|o| match o.eliminated_by() {
            Some(v) => SummaryRow {
                counts: o.counts.clone(),
                status: "eliminated".into(),
                eliminator: Some(v.constraint),
                alpha: v.alpha().map(|a| a.to_string()),
                lhs: v.lhs.as_ref().map(|x| x.to_string()),
                rhs: v.rhs.as_ref().map(|x| x.to_string()),
                citation: Some(v.citation.clone()),
                note: v.note.clone(),
            },
            None => SummaryRow {
                counts: o.counts.clone(),
                status: CANDIDATE.into(),
                eliminator: None,
                alpha: None,
                lhs: None,
                rhs: None,
                citation: None,
                note: None,
            },
        })
        .collect();
    HuntSummary {
        degree: report.request.degree,
        alphabet: report.request.alphabet.clone(),
        raw_count: report.raw_solutions.len(),
        survivor_count: report.survivors.len(),
        rows,
        obstructions: report.obstructions.iter().map(describe_obstruction).collect(),
    }
}

fn describe_obstruction<Q: Scalar>(o: &Obstruction<Q>) -> String {
    match o {
        Obstruction::BmyRelaxation(r) => {
            let threshold = match &r.threshold_m {
                Some(t) => format!("threshold m = {t}"),
                None => "equal leading coefficients".to_string(),
            };
            format!(
                "BMY at alpha = {}: the MK equation needs {} = {}m^2 - {}m points of type {} but at most {} = {}m^2 - {}m are allowed ({threshold})",
                r.alpha, r.needed, r.mk_m2, r.mk_m1, r.class, r.allowed, r.bound_m2, r.bound_m1
            )
        }
        Obstruction::Integrality { modulus, target, residue } => format!(
            "integrality: every scaled coefficient is divisible by {modulus} but the target {target} is {residue} mod {modulus}"
        ),
        Obstruction::TjurinaBudget { tau_budget } => format!(
            "no non-negative solution with total Tjurina number <= {tau_budget}"
        ),
    }
}

impl fmt::Display for HuntSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = self.alphabet.iter().map(|c| c.to_string()).collect();
        writeln!(
            f,
            "degree {} over [{}]: {} raw solution(s), {} survivor(s)",
            self.degree,
            names.join(","),
            self.raw_count,
            self.survivor_count
        )?;
        for row in &self.rows {
            let counts: Vec<String> = row.counts.iter().map(|c| c.to_string()).collect();
            write!(f, "  ({})  ", counts.join(","))?;
            match row.eliminator {
                None => writeln!(f, "{}", row.status)?,
                Some(name) => {
                    write!(f, "eliminated by {name}")?;
                    if let Some(a) = &row.alpha {
                        write!(f, " at alpha = {a}")?;
                    }
                    if let (Some(l), Some(r)) = (&row.lhs, &row.rhs) {
                        write!(f, ": {l} > {r}")?;
                    }
                    if let Some(c) = &row.citation {
                        write!(f, "  [{c}]")?;
                    }
                    writeln!(f)?;
                }
            }
        }
        for o in &self.obstructions {
            writeln!(f, "  no raw solutions: {o}")?;
        }
        Ok(())
    }
}
