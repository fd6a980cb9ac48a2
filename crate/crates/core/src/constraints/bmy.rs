//! Langer's orbifold Bogomolov-Miyaoka-Yau inequality for pairs `(P^2, alpha C)`:
//!
//! ```text
//! sum_p 3 (alpha (mu_p - 1) + 1 - e_orb(p, alpha)) <= (3 alpha - alpha^2) n^2 - 3 alpha n
//! ```
//!
//! valid for `3/n <= alpha` up to the log canonical threshold of every point.
//! All coefficients are derived here from the catalog; nothing is tabulated.

use num_integer::Integer;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{ConstraintName, ConstraintVerdict};
use crate::catalog::{AlphaWindow, SingularityClass};
use crate::error::Result;
use crate::profile::SingularityProfile;
use crate::scalar::{common_denominator, Scalar};

pub(crate) const CITE_BMY: &str =
    "Langer: orbifold Bogomolov-Miyaoka-Yau inequality for the log canonical pair (P^2, alpha C)";

/// Contribution `3(alpha(mu - 1) + 1 - e_orb(p, alpha))` of one point.
pub fn point_weight<Q: Scalar>(c: SingularityClass, alpha: &Q) -> Result<Q> {
    let e = c.orbifold_euler(alpha)?;
    let mu = Q::from_u64(c.milnor());
    Ok(Q::integer(3) * (alpha.clone() * (mu - Q::one()) + Q::one() - e))
}

/// `(3 alpha - alpha^2) n^2 - 3 alpha n`.
pub fn bmy_rhs<Q: Scalar>(degree: u32, alpha: &Q) -> Q {
    let n = Q::integer(i64::from(degree));
    let three = Q::integer(3);
    (three.clone() * alpha.clone() - alpha.clone() * alpha.clone()) * n.clone() * n.clone()
        - three * alpha.clone() * n
}

/// Admissible alpha range for a set of classes at `degree`: from `3/n` up to
/// the smallest threshold, intersected with every class's `e_orb` window.
/// `None` when a class has no orbifold data or the range is empty.
pub fn class_window<Q: Scalar>(
    degree: u32,
    classes: impl IntoIterator<Item = SingularityClass>,
) -> Option<AlphaWindow<Q>> {
    let mut w = AlphaWindow { lo: Q::ratio(3, i64::from(degree)), lo_inclusive: true, hi: Q::one() };
    for c in classes {
        let cw = c.eorb_window::<Q>()?;
        if cw.lo > w.lo || (cw.lo == w.lo && !cw.lo_inclusive) {
            w.lo = cw.lo;
            w.lo_inclusive = cw.lo_inclusive;
        }
        if cw.hi < w.hi {
            w.hi = cw.hi;
        }
    }
    let nonempty = if w.lo_inclusive { w.lo <= w.hi } else { w.lo < w.hi };
    nonempty.then_some(w)
}

pub fn bmy_window<Q: Scalar>(p: &SingularityProfile) -> Option<AlphaWindow<Q>> {
    class_window(p.degree(), p.classes())
}

pub fn check_langer_bmy<Q: Scalar>(p: &SingularityProfile, alpha: &Q) -> ConstraintVerdict<Q> {
    let name = ConstraintName::LangerBmy;
    let inapplicable = |reason: String| {
        ConstraintVerdict::inapplicable(name, reason, CITE_BMY).with_parameter("alpha", alpha.clone())
    };
    if alpha < &Q::ratio(3, i64::from(p.degree())) {
        return inapplicable(format!("alpha = {alpha} is below 3/n = 3/{}", p.degree()));
    }
    let mut lhs = Q::zero();
    for (c, k) in p.counts() {
        match c.lct::<Q>() {
            Ok(t) if alpha > &t => {
                return inapplicable(format!("alpha = {alpha} exceeds the log canonical threshold {t} of {c}"));
            }
            Err(e) => return inapplicable(e.to_string()),
            Ok(_) => {}
        }
        match point_weight(*c, alpha) {
            Ok(w) => lhs = lhs + w * Q::from_u64(*k),
            Err(e) => return inapplicable(e.to_string()),
        }
    }
    let mut v = ConstraintVerdict::compare(name, lhs, bmy_rhs(p.degree(), alpha), CITE_BMY)
        .with_parameter("alpha", alpha.clone());
    if p.classes().any(|c| c.lct_is_derived()) {
        v = v.with_note("uses the derived threshold lct(E7) = 5/9");
    }
    v
}

/// All reduced fractions with denominator at most `limit` inside `window`,
/// ascending.
pub fn alpha_grid<Q: Scalar>(window: &AlphaWindow<Q>, limit: u32) -> Vec<Q> {
    let mut grid = Vec::new();
    for q in 1..=i64::from(limit) {
        let qq = Q::integer(q);
        let from = to_i64((window.lo.clone() * qq.clone()).ceil_int());
        let to = to_i64((window.hi.clone() * qq).floor_int());
        for p in from.max(0)..=to {
            if p.gcd(&q) == 1 {
                let a = Q::ratio(p, q);
                if window.contains(&a) {
                    grid.push(a);
                }
            }
        }
    }
    grid.sort();
    grid
}

fn to_i64<T: num_traits::ToPrimitive>(v: T) -> i64 {
    v.to_i64().expect("grid bound fits i64")
}

/// Scans the alpha grid in ascending order and returns the first alpha at
/// which the inequality fails, with its verdict. The parallel scan returns
/// the same (smallest) alpha as the sequential one.
pub fn find_excluding_alpha<Q: Scalar>(
    p: &SingularityProfile,
    denom_limit: u32,
    parallel: bool,
) -> Option<(Q, ConstraintVerdict<Q>)> {
    let window = bmy_window::<Q>(p)?;
    let grid = alpha_grid(&window, denom_limit);
    let probe = |a: &Q| {
        let v = check_langer_bmy(p, a);
        v.is_violated().then(|| (a.clone(), v))
    };
    if parallel {
        grid.par_iter().find_map_first(probe)
    } else {
        grid.iter().find_map(probe)
    }
}

/// Pipeline form of the sweep: the first violating verdict, or a summary
/// verdict when the grid excludes nothing.
pub fn sweep_langer_bmy<Q: Scalar>(
    p: &SingularityProfile,
    denom_limit: u32,
    parallel: bool,
) -> ConstraintVerdict<Q> {
    let name = ConstraintName::LangerBmy;
    let Some(window) = bmy_window::<Q>(p) else {
        return ConstraintVerdict::inapplicable(
            name,
            "no admissible alpha: a class lacks orbifold Euler data or the window is empty",
            CITE_BMY,
        );
    };
    if let Some((_, v)) = find_excluding_alpha(p, denom_limit, parallel) {
        return v;
    }
    let grid_points = alpha_grid(&window, denom_limit).len();
    let mut v = ConstraintVerdict {
        constraint: name,
        status: super::Status::Satisfied,
        lhs: None,
        rhs: None,
        parameters: Default::default(),
        citation: CITE_BMY.to_string(),
        note: Some(format!(
            "no alpha with denominator <= {denom_limit} in the window excludes the profile"
        )),
    };
    v = v
        .with_parameter("alpha_lo", window.lo)
        .with_parameter("alpha_hi", window.hi)
        .with_parameter("denom_limit", Q::integer(i64::from(denom_limit)))
        .with_parameter("grid_points", Q::integer(grid_points as i64));
    v
}

/// The inequality at a fixed alpha with denominators cleared:
/// `sum_t coefficients[t] * n_t <= rhs_n2 * n^2 - rhs_n1 * n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledBmy<Q: Scalar> {
    pub scale: Q::Int,
    pub coefficients: Vec<Q::Int>,
    pub rhs_n2: Q::Int,
    pub rhs_n1: Q::Int,
}

/// Clears denominators of the per-class weights and both right-hand side
/// coefficients with their least common multiple.
pub fn scaled_bmy<Q: Scalar>(alphabet: &[SingularityClass], alpha: &Q) -> Result<ScaledBmy<Q>> {
    let weights = alphabet
        .iter()
        .map(|c| point_weight::<Q>(*c, alpha))
        .collect::<Result<Vec<_>>>()?;
    let three = Q::integer(3);
    let n2 = three.clone() * alpha.clone() - alpha.clone() * alpha.clone();
    let n1 = three * alpha.clone();
    let scale = common_denominator(weights.iter().chain([&n2, &n1]));
    let s = Q::from_int(scale.clone());
    let to_int = |v: &Q| {
        let scaled = v.clone() * s.clone();
        debug_assert!(scaled.is_integral());
        scaled.numer_int().clone()
    };
    Ok(ScaledBmy {
        coefficients: weights.iter().map(to_int).collect(),
        rhs_n2: to_int(&n2),
        rhs_n1: to_int(&n1),
        scale,
    })
}

/// Single-class MK equation relaxed to rational counts and compared with the
/// BMY count bound at one alpha, both as quadratics in `m = n/2` with zero
/// constant term:
///
/// ```text
/// count needed  = mk_m2 * m^2 - mk_m1 * m      (m(10m - 6) / m(t))
/// count allowed = bound_m2 * m^2 - bound_m1 * m  (rhs / point weight)
/// ```
///
/// The relaxation fails when needed > allowed. `threshold_m` is the root of
/// needed = allowed other than 0, when the leading coefficients differ.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(bound = "Q: Scalar")]
pub struct SingleClassRelaxation<Q: Scalar> {
    pub class: SingularityClass,
    pub degree: u32,
    #[serde(with = "crate::scalar::exact")]
    pub alpha: Q,
    #[serde(with = "crate::scalar::exact")]
    pub point_weight: Q,
    #[serde(with = "crate::scalar::exact")]
    pub mk_m2: Q,
    #[serde(with = "crate::scalar::exact")]
    pub mk_m1: Q,
    #[serde(with = "crate::scalar::exact")]
    pub bound_m2: Q,
    #[serde(with = "crate::scalar::exact")]
    pub bound_m1: Q,
    #[serde(with = "crate::scalar::exact::option")]
    pub threshold_m: Option<Q>,
    /// Rational count forced by the MK equation at this degree.
    #[serde(with = "crate::scalar::exact")]
    pub needed: Q,
    /// Largest count the inequality allows at this degree.
    #[serde(with = "crate::scalar::exact")]
    pub allowed: Q,
    pub violated: bool,
}

pub fn single_class_relaxation<Q: Scalar>(
    class: SingularityClass,
    degree: u32,
    alpha: &Q,
) -> Result<SingleClassRelaxation<Q>> {
    let w = point_weight::<Q>(class, alpha)?;
    let mk = class.mk_number::<Q>();
    let mk_m2 = Q::integer(10) / mk.clone();
    let mk_m1 = Q::integer(6) / mk;
    let bound_m2 = Q::integer(4) * (Q::integer(3) * alpha.clone() - alpha.clone() * alpha.clone())
        / w.clone();
    let bound_m1 = Q::integer(6) * alpha.clone() / w.clone();
    let lead = mk_m2.clone() - bound_m2.clone();
    let threshold_m =
        (!lead.is_zero()).then(|| (mk_m1.clone() - bound_m1.clone()) / lead);
    let m = Q::ratio(i64::from(degree), 2);
    let needed = mk_m2.clone() * m.clone() * m.clone() - mk_m1.clone() * m.clone();
    let allowed = bound_m2.clone() * m.clone() * m.clone() - bound_m1.clone() * m;
    Ok(SingleClassRelaxation {
        class,
        degree,
        alpha: alpha.clone(),
        point_weight: w,
        mk_m2,
        mk_m1,
        bound_m2,
        bound_m1,
        threshold_m,
        violated: needed > allowed,
        needed,
        allowed,
    })
}

/// First grid alpha at which the single-class relaxation fails.
pub fn relaxation_excluding_alpha<Q: Scalar>(
    class: SingularityClass,
    degree: u32,
    denom_limit: u32,
) -> Option<SingleClassRelaxation<Q>> {
    let window = class_window::<Q>(degree, [class])?;
    alpha_grid(&window, denom_limit)
        .iter()
        .filter_map(|a| single_class_relaxation(class, degree, a).ok())
        .find(|r| r.violated)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::SingularityClass as C;
    use crate::constraints::Status;
    use crate::Rational;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> Rational {
        Rational::ratio(n, d)
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn p(degree: u32, counts: &[(C, u64)]) -> SingularityProfile {
        SingularityProfile::of(degree, counts).unwrap()
    }

    #[test]
    fn octic_case_h_at_three_eighths() {
        let v = check_langer_bmy(&p(8, &[(C::A1, 16), (C::A2, 8)]), &q(3, 8));
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.lhs.unwrap() * q(256, 1), q(14000, 1));
        assert_eq!(v.rhs.unwrap() * q(256, 1), q(13824, 1));
    }

    #[test]
    fn octic_mixed_at_twelve_over_twentyfive() {
        let v = check_langer_bmy(&p(8, &[(C::A1, 2), (C::A2, 8), (C::A3, 3), (C::D4, 2)]), &q(12, 25));
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.lhs.unwrap() * q(5000, 1), q(329503, 1));
        assert_eq!(v.rhs.unwrap() * q(5000, 1), q(329472, 1));
    }

    #[test]
    fn dodecic_a1_a2_at_one_quarter() {
        let v = check_langer_bmy(&p(12, &[(C::A1, 8), (C::A2, 36)]), &q(1, 4));
        assert_eq!(v.status, Status::Violated);
        assert_eq!(v.lhs.unwrap() * q(32, 1), q(2892, 1));
        assert_eq!(v.rhs.unwrap() * q(32, 1), q(2880, 1));
    }

    #[test]
    fn e6_bound_at_threshold() {
        let alpha = q(7, 12);
        let w = point_weight(C::E6, &alpha).unwrap();
        assert_eq!(w, q(47, 4));
        // rhs / w as a quadratic in n.
        let n2 = (q(3, 1) * alpha.clone() - alpha.clone() * alpha.clone()) / w.clone();
        let n1 = q(3, 1) * alpha / w;
        assert_eq!((n2, n1), (q(203, 1692), q(7, 47)));
        let v = check_langer_bmy(&p(18, &[(C::E6, 36)]), &q(7, 12));
        assert_eq!(v.status, Status::Satisfied);
        assert_eq!(v.rhs.clone().unwrap() / q(47, 4), q(1701, 47));
    }

    #[test]
    fn window_failures_are_inapplicable() {
        let prof = p(8, &[(C::A1, 16), (C::A2, 8)]);
        assert_eq!(check_langer_bmy(&prof, &q(1, 4)).status, Status::Inapplicable);
        assert_eq!(check_langer_bmy(&prof, &q(6, 7)).status, Status::Inapplicable);
        let prof = p(8, &[(C::D4, 2)]);
        assert_eq!(check_langer_bmy(&prof, &q(7, 10)).status, Status::Inapplicable);
        let prof = p(24, &[(C::E6, 10)]);
        assert_eq!(check_langer_bmy(&prof, &q(1, 2)).status, Status::Inapplicable);
        assert_ne!(check_langer_bmy(&prof, &q(7, 12)).status, Status::Inapplicable);
        let prof = p(12, &[(C::A4, 2)]);
        assert_eq!(check_langer_bmy(&prof, &q(1, 2)).status, Status::Inapplicable);
    }

    #[test]
    fn scaled_coefficients() {
        let abc = [C::A1, C::A2, C::A3, C::D4];
        let s = scaled_bmy::<Rational>(&abc, &q(3, 8)).unwrap();
        assert_eq!(s.scale, BigInt::from(256));
        assert_eq!(s.coefficients, ints(&[468, 814, 1128, 1485]));
        assert_eq!((s.rhs_n2, s.rhs_n1), (BigInt::from(252), BigInt::from(288)));

        let s = scaled_bmy::<Rational>(&abc, &q(12, 25)).unwrap();
        assert_eq!(s.coefficients, ints(&[10944, 19391, 27213, 35424]));
        assert_eq!((s.rhs_n2, s.rhs_n1), (BigInt::from(6048), BigInt::from(7200)));

        let s = scaled_bmy::<Rational>(&abc, &q(11, 20)).unwrap();
        assert_eq!(s.coefficients, ints(&[3828, 6862, 9696, 12573]));
        assert_eq!((s.rhs_n2, s.rhs_n1), (BigInt::from(2156), BigInt::from(2640)));

        let s = scaled_bmy::<Rational>(&[C::A1, C::A2], &q(1, 4)).unwrap();
        assert_eq!(s.coefficients, ints(&[42, 71]));
        assert_eq!((s.rhs_n2, s.rhs_n1), (BigInt::from(22), BigInt::from(24)));
    }

    #[test]
    fn grid_is_sorted_reduced_and_inside() {
        let w = AlphaWindow { lo: q(3, 8), lo_inclusive: true, hi: q(2, 3) };
        let g = alpha_grid(&w, 12);
        assert_eq!(g.first().unwrap(), &q(3, 8));
        assert_eq!(g.last().unwrap(), &q(2, 3));
        assert!(g.windows(2).all(|x| x[0] < x[1]));
        assert!(g.iter().all(|a| w.contains(a) && a.denom() <= &BigInt::from(12)));
        let open = AlphaWindow { lo: q(0, 1), lo_inclusive: false, hi: q(1, 3) };
        assert!(!alpha_grid(&open, 5).contains(&q(0, 1)));
    }

    #[test]
    fn sweep_examples() {
        let (a, v) = find_excluding_alpha::<Rational>(&p(8, &[(C::A1, 1), (C::A2, 8), (C::A3, 6)]), 100, false)
            .expect("case b is excluded");
        assert!(v.is_violated());
        assert!(a > q(3, 8));
        let (a, v) = find_excluding_alpha::<Rational>(&p(10, &[(C::A1, 8), (C::A2, 23)]), 100, false).unwrap();
        assert!(v.is_violated() && a <= q(3, 10));
        // 814 * 17 = 13838 > 13824: the octic cusp bound also follows from BMY.
        let (a, _) = find_excluding_alpha::<Rational>(&p(8, &[(C::A2, 17)]), 100, false).unwrap();
        assert_eq!(a, q(3, 8));
        assert!(find_excluding_alpha::<Rational>(&p(8, &[(C::A2, 16)]), 100, false).is_none());
        let v = sweep_langer_bmy::<Rational>(&p(8, &[(C::A2, 16)]), 100, false);
        assert_eq!(v.status, Status::Satisfied);
        assert!(v.parameters["grid_points"] > Rational::integer(100));
    }

    #[test]
    fn parallel_sweep_matches_sequential() {
        for prof in [
            p(8, &[(C::A1, 1), (C::A2, 8), (C::A3, 6)]),
            p(8, &[(C::A1, 2), (C::A2, 8), (C::A3, 3), (C::D4, 2)]),
            p(8, &[(C::A2, 17)]),
        ] {
            let s = find_excluding_alpha::<Rational>(&prof, 100, false);
            let par = find_excluding_alpha::<Rational>(&prof, 100, true);
            assert_eq!(s, par);
        }
    }

    #[test]
    fn e6_relaxation_threshold() {
        let r = single_class_relaxation::<Rational>(C::E6, 24, &q(7, 12)).unwrap();
        assert_eq!(r.threshold_m, Some(q(738, 61)));
        assert_eq!((r.bound_m2.clone(), r.bound_m1.clone()), (q(203, 423), q(14, 47)));
        assert_eq!((r.mk_m2.clone(), r.mk_m1.clone()), (q(80, 167), q(48, 167)));
        assert!(r.violated);
        let r = single_class_relaxation::<Rational>(C::E6, 26, &q(7, 12)).unwrap();
        assert!(!r.violated);
    }

    #[test]
    fn e8_relaxation_never_holds() {
        let r = single_class_relaxation::<Rational>(C::E8, 6, &q(8, 15)).unwrap();
        assert_eq!((r.bound_m2.clone(), r.bound_m1.clone()), (q(1184, 3195), q(16, 71)));
        assert_eq!((r.mk_m2.clone(), r.mk_m1.clone()), (q(400, 1079), q(240, 1079)));
        assert!(r.mk_m2 > r.bound_m2 && r.mk_m1 < r.bound_m1);
        for n in (6..=400).step_by(2) {
            assert!(single_class_relaxation::<Rational>(C::E8, n, &q(8, 15)).unwrap().violated);
        }
    }
}
