use mackey_field::root_datum::{RootDatum, RootDatumError};
use mackey_field::weight::WeightVec;
use proptest::prelude::*;

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

#[test]
fn weyl_orders_and_root_counts() {
    // (name, |W|, |Φ⁺|) from the classical formulas.
    let table = [
        ("A1", 2, 1),
        ("A2", factorial(3), 3),
        ("A3", factorial(4), 6),
        ("A4", factorial(5), 10),
        ("B2", 4 * factorial(2), 4),
        ("C2", 4 * factorial(2), 4),
        ("B3", 8 * factorial(3), 9),
        ("C3", 8 * factorial(3), 9),
        ("D4", 8 * factorial(4), 12),
        ("G2", 12, 6),
        ("A1xA1", 4, 2),
    ];
    for (name, order, roots) in table {
        let d = RootDatum::named(name).unwrap();
        assert_eq!(d.weyl_order(), order, "{name}");
        assert_eq!(d.positive_roots().len(), roots, "{name}");
        assert_eq!(d.weyl_elements().unwrap().len(), order, "{name}");
    }
}

#[test]
fn highest_root_heights() {
    // Coxeter number minus one.
    for (name, h) in [("A2", 2), ("A4", 4), ("B3", 5), ("C3", 5), ("D4", 5), ("G2", 5)] {
        let d = RootDatum::named(name).unwrap();
        assert_eq!(d.positive_roots().iter().map(|r| r.height()).max(), Some(h), "{name}");
    }
}

#[test]
fn cap_and_axioms() {
    let err = RootDatum::with_cap(RootDatum::named("D4").unwrap().cartan().to_vec(), 0, 100);
    assert!(matches!(err, Err(RootDatumError::OrderCapExceeded { cap: 100 })));
    assert!(matches!(RootDatum::new(vec![vec![2, 1], vec![1, 2]], 0), Err(RootDatumError::NotCartan(_))));
    assert!(matches!(RootDatum::new(vec![vec![2, -1], vec![0, 2]], 0), Err(RootDatumError::NotCartan(_))));
    // Affine A1: infinite Weyl group.
    assert!(RootDatum::new(vec![vec![2, -2], vec![-2, 2]], 0).is_err());
}

#[test]
fn central_coordinates_are_fixed() {
    let d = RootDatum::named("A2+T1").unwrap();
    let v = WeightVec::new(vec![1, -2, 5]);
    for (p, _) in d.weyl_orbit(&v).unwrap() {
        assert_eq!(p.coords()[2], 5);
    }
}

fn datum_and_weight() -> impl Strategy<Value = (RootDatum, WeightVec)> {
    prop_oneof![Just("A2"), Just("C2"), Just("G2"), Just("A3"), Just("B3")].prop_flat_map(|name| {
        let d = RootDatum::named(name).unwrap();
        let n = d.dim();
        (Just(d), prop::collection::vec(-4i64..=4, n).prop_map(WeightVec::new))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn reflections_are_involutions((d, v) in datum_and_weight(), i in 0usize..3) {
        let i = i % d.rank();
        let once = d.reflect(i, &v).unwrap();
        prop_assert_eq!(d.reflect(i, &once).unwrap(), v.clone());
        if v.coords()[i] != 0 {
            prop_assert_ne!(once, v);
        }
    }

    #[test]
    fn orbit_stabilizer((d, v) in datum_and_weight()) {
        let orbit = d.weyl_orbit(&v).unwrap();
        let stab = d.stabilizer(&v).weyl_order().unwrap();
        prop_assert_eq!(orbit.len() * stab, d.weyl_order());
        for (p, w) in &orbit {
            prop_assert_eq!(&w.apply(&v), p);
        }
        let dominant: Vec<_> = orbit.iter().filter(|(p, _)| d.is_dominant(p)).collect();
        prop_assert_eq!(dominant.len(), 1);
    }

    #[test]
    fn dominant_rep_witness((d, v) in datum_and_weight()) {
        let (plus, w) = d.dominant_rep(&v);
        prop_assert!(d.is_dominant(&plus));
        prop_assert_eq!(w.apply(&v), plus.clone());
        prop_assert_eq!(w.inverse(&d).apply(&plus), v);
    }

    #[test]
    fn stabilizer_fixes((d, v) in datum_and_weight()) {
        for w in d.stabilizer(&v).weyl_elements().unwrap() {
            prop_assert_eq!(w.apply(&v), v.clone());
        }
    }
}
