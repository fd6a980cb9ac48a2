use mkhunt::catalog::SingularityClass as C;
use mkhunt::constraints::{check_dpw_a1a2, check_irreducible_dual, check_langer_bmy, check_tjurina_max, Pipeline};
use mkhunt::hunter::{HuntRequest, Hunter};
use mkhunt::profile::min_singularity_bound;
use mkhunt::{HuntReport, Rational, Scalar, SingularityProfile, Status};
use proptest::prelude::*;

fn q(n: i64, d: i64) -> Rational {
    Rational::ratio(n, d)
}

fn any_class() -> impl Strategy<Value = C> {
    prop_oneof![
        (1u32..=60).prop_map(|k| C::a(k).unwrap()),
        (4u32..=60).prop_map(|k| C::d(k).unwrap()),
        (6u32..=8).prop_map(|k| C::e(k).unwrap()),
    ]
}

fn small_class() -> impl Strategy<Value = C> {
    prop::sample::select(vec![C::A1, C::A2, C::A3, C::A4, C::D4, C::E6, C::E7, C::E8])
}

/// Profiles that satisfy the Milnor bound, of degree 3..=14.
fn any_profile() -> impl Strategy<Value = SingularityProfile> {
    (3u32..=14, prop::collection::vec((small_class(), 0u64..6), 0..4), any::<bool>())
        .prop_filter_map("Milnor bound", |(n, counts, irr)| {
            SingularityProfile::new(n, counts, irr).ok()
        })
}

/// MK profiles, taken from hunts over small alphabets.
fn mk_profiles() -> impl Strategy<Value = Vec<SingularityProfile>> {
    (3u32..=5, prop::sample::subsequence(vec![C::A1, C::A2, C::A3, C::D4, C::E6], 1..=3)).prop_map(
        |(m, alphabet)| {
            let req = HuntRequest::new(2 * m, &alphabet).constraints([]);
            let r: HuntReport<Rational> = Hunter::default().hunt(&req).unwrap();
            r.raw_solutions.iter().map(|s| r.profile_of(s).unwrap()).collect()
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn catalog_identity_and_epsilon_range(c in any_class()) {
        let m: Rational = c.mk_number();
        let e: Rational = c.epsilon();
        prop_assert_eq!(m / q(3, 1) - Rational::from_u64(c.tjurina()), e.clone());
        prop_assert!(e >= q(1, 2) && e < q(1, 1));
        prop_assert_eq!(c.milnor(), c.tjurina());
    }

    #[test]
    fn mk_numbers_increase_with_index(k in 1u32..200) {
        prop_assert!(C::a(k + 1).unwrap().mk_number::<Rational>() > C::a(k).unwrap().mk_number());
        if k >= 4 {
            prop_assert!(C::d(k + 1).unwrap().mk_number::<Rational>() > C::d(k).unwrap().mk_number());
        }
    }

    #[test]
    fn eorb_decreasing_to_zero_at_lct(
        c in prop::sample::select(vec![C::A1, C::A2, C::A3, C::D4]),
        samples in prop::collection::vec((1i64..1000, 1i64..1000), 200),
    ) {
        let lct: Rational = c.lct().unwrap();
        let w = c.eorb_window::<Rational>().unwrap();
        prop_assert_eq!(c.orbifold_euler(&lct).unwrap(), q(0, 1));
        let mut alphas: Vec<Rational> = samples
            .iter()
            .map(|(a, b)| w.lo.clone() + (lct.clone() - w.lo.clone()) * q(*a.min(b), *a.max(b)))
            .filter(|a| w.contains(a))
            .collect();
        alphas.sort();
        alphas.dedup();
        let values: Vec<Rational> = alphas.iter().map(|a| c.orbifold_euler(a).unwrap()).collect();
        for v in &values {
            prop_assert!(v >= &q(0, 1));
        }
        for pair in values.windows(2) {
            prop_assert!(pair[0] > pair[1]);
        }
    }

    #[test]
    fn sandwich_nu_and_minimum_bound_on_mk_profiles(profiles in mk_profiles()) {
        for p in profiles {
            let e = p.evaluate::<Rational>();
            prop_assert_eq!(e.is_mk, Some(true));
            let n = i64::from(p.degree());
            let mid = q(n * (5 * n - 6), 6);
            let tau = Rational::from_u64(p.total_tjurina());
            let s = Rational::from_u64(p.singularity_count());
            prop_assert!(tau.clone() + s.clone() / q(2, 1) <= mid);
            prop_assert!(mid < tau + s);
            prop_assert_eq!(p.freeness_defect_mk_form::<Rational>().unwrap(), q(p.freeness_defect().unwrap(), 1));
            let only_a1a2 = p.uses_only(|c| c.is_a1_or_a2());
            prop_assert!(p.singularity_count() >= min_singularity_bound(p.degree(), only_a1a2).unwrap());
            if only_a1a2 {
                prop_assert!(p.singularity_count() >= min_singularity_bound(p.degree(), false).unwrap());
            }
        }
    }

    #[test]
    fn evaluation_is_additive(a in any_profile(), b in any_profile()) {
        let b = SingularityProfile::new(a.degree(), b.counts().clone(), false).ok();
        if let Some(b) = b {
            if let Ok(sum) = a.merge(&b) {
                let (ea, eb, es) = (a.evaluate::<Rational>(), b.evaluate::<Rational>(), sum.evaluate::<Rational>());
                prop_assert_eq!(es.total_mk, ea.total_mk + eb.total_mk);
                prop_assert_eq!(es.total_tjurina, ea.total_tjurina + eb.total_tjurina);
                prop_assert_eq!(es.total_epsilon, ea.total_epsilon + eb.total_epsilon);
                prop_assert_eq!(es.count, ea.count + eb.count);
            }
        }
    }

    #[test]
    fn dual_degree_of_a_only_profiles(
        n in 3u32..=14,
        counts in prop::collection::vec((1u32..=6, 0u64..5), 0..4),
    ) {
        let pairs = counts.into_iter().map(|(k, c)| (C::a(k).unwrap(), c));
        if let Ok(p) = SingularityProfile::new(n, pairs, true) {
            let n = i64::from(n);
            let expected = n * (n - 1) - p.total_tjurina() as i64 - p.singularity_count() as i64;
            prop_assert_eq!(p.dual_degree().unwrap(), expected);
        }
    }

    #[test]
    fn verdicts_invariant_under_scaling(p in any_profile(), k in 1i64..1000, a in 1i64..100, b in 1i64..100) {
        let scale = q(k, 1);
        let mut verdicts = Pipeline::default().run::<Rational>(&p);
        verdicts.push(check_langer_bmy(&p, &q(a.min(b), a.max(b))));
        for v in verdicts {
            if let (Some(l), Some(r)) = (v.lhs.clone(), v.rhs.clone()) {
                let scaled = l * scale.clone() > r * scale.clone();
                prop_assert_eq!(scaled, v.status == Status::Violated);
            }
        }
    }

    #[test]
    fn adding_a_point_never_repairs_tjurina_max(p in any_profile(), c in small_class()) {
        let before = check_tjurina_max::<Rational>(&p).status;
        let extra = SingularityProfile::new(p.degree(), [(c, 1)], false).unwrap();
        if let Ok(more) = p.merge(&extra) {
            if before == Status::Violated {
                prop_assert_eq!(check_tjurina_max::<Rational>(&more).status, Status::Violated);
            }
        }
    }

    #[test]
    fn inapplicable_exactly_when_preconditions_fail(p in any_profile(), a in 1i64..60, b in 1i64..60) {
        let odd = p.degree() % 2 == 1;
        prop_assert_eq!(check_tjurina_max::<Rational>(&p).status == Status::Inapplicable, odd);
        let not_a1a2 = !p.uses_only(|c| c.is_a1_or_a2());
        prop_assert_eq!(check_dpw_a1a2::<Rational>(&p).status == Status::Inapplicable, odd || not_a1a2);
        let dual_pre = p.is_irreducible() && p.degree() >= 8;
        prop_assert_eq!(check_irreducible_dual::<Rational>(&p).status == Status::Inapplicable, !dual_pre);

        // BMY: alpha >= 3/n, alpha <= every lct, and e_orb known at alpha for
        // every class present.
        let alpha = q(a.min(b), a.max(b));
        let known = |c: C| -> bool {
            let (lo, lo_incl, hi) = if c == C::A1 {
                (q(0, 1), false, q(1, 1))
            } else if c == C::A2 {
                (q(1, 6), true, q(5, 6))
            } else if c == C::A3 {
                (q(1, 4), true, q(3, 4))
            } else if c == C::D4 {
                (q(0, 1), false, q(2, 3))
            } else if c == C::E6 {
                return alpha == q(7, 12);
            } else if c == C::E7 {
                return alpha == q(5, 9);
            } else if c == C::E8 {
                return alpha == q(8, 15);
            } else {
                return false;
            };
            (if lo_incl { alpha >= lo } else { alpha > lo }) && alpha <= hi
        };
        let applicable = alpha >= q(3, i64::from(p.degree())) && p.classes().all(known);
        let v = check_langer_bmy::<Rational>(&p, &alpha);
        prop_assert_eq!(v.status != Status::Inapplicable, applicable);
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn survivors_are_mk_and_hunts_are_deterministic(
        m in 3u32..=5,
        alphabet in prop::sample::subsequence(vec![C::A1, C::A2, C::A3, C::D4, C::E6], 1..=3),
        irreducible in any::<bool>(),
    ) {
        let req = HuntRequest::new(2 * m, &alphabet).irreducible(irreducible).alpha_denom_limit(30);
        let seq: HuntReport<Rational> = Hunter::default().hunt(&req).unwrap();
        let again: HuntReport<Rational> = Hunter::default().hunt(&req).unwrap();
        let par: HuntReport<Rational> = Hunter::default().parallel(true).hunt(&req).unwrap();
        prop_assert_eq!(&seq, &again);
        prop_assert_eq!(&seq, &par);
        for s in &seq.survivors {
            prop_assert_eq!(seq.profile_of(s).unwrap().evaluate::<Rational>().is_mk, Some(true));
        }
        let eliminated = seq.outcomes.iter().filter(|o| o.eliminator.is_some()).count();
        prop_assert_eq!(eliminated + seq.survivors.len(), seq.raw_solutions.len());
        let json = serde_json::to_string(&seq).unwrap();
        let back: HuntReport<Rational> = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, seq);
    }

    #[test]
    fn profile_json_round_trip(p in any_profile()) {
        let s = serde_json::to_string(&p).unwrap();
        let back: SingularityProfile = serde_json::from_str(&s).unwrap();
        prop_assert_eq!(&back, &p);
        let e = p.evaluate::<Rational>();
        let es = serde_json::to_string(&e).unwrap();
        prop_assert_eq!(serde_json::to_string(&back.evaluate::<Rational>()).unwrap(), es);
    }
}
