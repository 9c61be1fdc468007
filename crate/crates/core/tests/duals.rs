use mackey_field::duals::{
    equivalent_by_search, normalize_motion, normalize_tempered, scaling_action, DualsError, ParamJson, TemperedParam,
};
use mackey_field::root_datum::RootDatum;
use mackey_field::weight::{NuVector, Rational, WeightVec};
use proptest::prelude::*;

fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn param() -> impl Strategy<Value = (RootDatum, WeightVec, NuVector)> {
    prop_oneof![Just("A1"), Just("A2"), Just("C2"), Just("G2"), Just("A2+T1")].prop_flat_map(|name| {
        let d = RootDatum::named(name).unwrap();
        let n = d.dim();
        let nu = prop::collection::vec(
            prop_oneof![Just(0i64), -3i64..=3].prop_flat_map(|k| (Just(k), 1i64..=3)),
            n,
        )
        .prop_map(|v| NuVector::new(v.into_iter().map(|(k, q)| rat(k, q)).collect()));
        (Just(d), prop::collection::vec(-4i64..=4, n).prop_map(WeightVec::new), nu)
    })
}

#[test]
fn canonical_form_on_a_wall() {
    // ν on the s1 wall of A2: σ is dominated by s1 only.
    let a2 = RootDatum::named("A2").unwrap();
    let p = normalize_tempered(&a2, &WeightVec::new(vec![-2, 1]), &NuVector::from_ints(&[0, 1])).unwrap();
    assert_eq!(p.nu(), &NuVector::from_ints(&[0, 1]));
    assert_eq!(p.sigma(), &WeightVec::new(vec![2, -1]));
}

#[test]
fn json_round_trip_and_mismatch() {
    let a2 = RootDatum::named("A2").unwrap();
    let p = normalize_tempered(&a2, &WeightVec::new(vec![1, 0]), &NuVector::new(vec![rat(-1, 2), rat(1, 3)])).unwrap();
    let text = serde_json::to_string(&p.to_json()).unwrap();
    let back: ParamJson = serde_json::from_str(&text).unwrap();
    assert_eq!(TemperedParam::from_json(&a2, &back).unwrap(), p);
    let a1 = RootDatum::named("A1").unwrap();
    let q = normalize_tempered(&a1, &WeightVec::new(vec![1]), &NuVector::from_ints(&[0])).unwrap();
    assert_eq!(p.equivalent(&q), Err(DualsError::DatumMismatch));
    assert!(normalize_tempered(&a1, &WeightVec::new(vec![1, 2]), &NuVector::from_ints(&[0])).is_err());
    assert_eq!(scaling_action(rat(0, 1), &q), Err(DualsError::ZeroScale));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn normalize_is_weyl_invariant((d, sigma, nu) in param(), k in 0usize..1000) {
        let ws = d.weyl_elements().unwrap();
        let w = &ws[k % ws.len()];
        let p = normalize_tempered(&d, &sigma, &nu).unwrap();
        let q = normalize_tempered(&d, &w.apply(&sigma), &w.apply(&nu)).unwrap();
        prop_assert_eq!(&p, &q);
        prop_assert_eq!(normalize_motion(&d, &sigma, &nu).unwrap(), normalize_motion(&d, &w.apply(&sigma), &w.apply(&nu)).unwrap());
        // The canonical point is in the same orbit.
        prop_assert!(equivalent_by_search(&d, (&sigma, &nu), (p.sigma(), p.nu())).unwrap());
    }

    #[test]
    fn equivalence_matches_search((d, s1, n1) in param(), s2 in prop::collection::vec(-2i64..=2, 3), k in 0usize..1000) {
        let ws = d.weyl_elements().unwrap();
        let w = &ws[k % ws.len()];
        let s2 = WeightVec::new(s2.into_iter().take(d.dim()).chain(std::iter::repeat(0)).take(d.dim()).collect());
        // A partner that is equivalent about half the time.
        let (s2, n2) = if k % 2 == 0 { (w.apply(&s1), w.apply(&n1)) } else { (s2, w.apply(&n1)) };
        let a = normalize_tempered(&d, &s1, &n1).unwrap();
        let b = normalize_tempered(&d, &s2, &n2).unwrap();
        prop_assert_eq!(a.equivalent(&b).unwrap(), equivalent_by_search(&d, (&s1, &n1), (&s2, &n2)).unwrap());
    }

    #[test]
    fn scaling_group_law((d, sigma, nu) in param(), a in (-4i64..=4, 1i64..=4), b in (-4i64..=4, 1i64..=4)) {
        prop_assume!(a.0 != 0 && b.0 != 0);
        let (t1, t2) = (rat(a.0, a.1), rat(b.0, b.1));
        let p = normalize_tempered(&d, &sigma, &nu).unwrap();
        let lhs = scaling_action(t1, &scaling_action(t2, &p).unwrap()).unwrap();
        let rhs = scaling_action(t1 * t2, &p).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(scaling_action(rat(1, 1), &p).unwrap(), p);
    }
}
